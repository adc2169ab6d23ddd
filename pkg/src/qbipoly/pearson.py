"""q-Pearson data, Pearson-equivalent rational identities, and lattice
evaluation of the orthogonality weight and its derivative weights.

With the sqrt(q)-absorbed coefficient convention the Pearson polynomials are

    omega1(x,y) = y C11(x) - q x A12d(x,y)      phi1 = y C11 - x A12a + (q-1) x y B1
    omega2(x,y) = x C22(y) - q y A12d(x,y)      phi2 = x C22 - y A12a + (q-1) x y B2

and G1 = phi1(x,y)/omega1(qx,y), G2 = phi2(x,y)/omega2(x,qy) are the one-step
weight ratios rho(qx,y)/rho(x,y) and rho(x,qy)/rho(x,y).

General-equation weights are defined per q-commensurate lattice component,
relative to one anchor with rho(anchor) = 1; the derivative weights
rho^{(k,l)} carry the relative normalization fixed by the product identity

    rho^{(k,l)}(x,y) = rho(q^k x, q^l y)
                       * prod_{i=1..k} omega1(q^i x, q^l y)
                       * prod_{s=1..l} omega2(q^k x, q^s y),

the lattice form of the Rodrigues bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .bipoly import BiPoly, RationalFn
from .equation import DerivedCoeffs, EquationCoeffs, derived_coeffs
from .qcalc import QParam, dq1_ratfn, dq2_ratfn


class DegenerateEquationError(ValueError):
    pass


class LatticePoleError(ArithmeticError):
    def __init__(self, which: str, index: int, point):
        super().__init__(f"{which} pole at product index {index}, lattice point {point}")
        self.which = which
        self.index = index
        self.point = point


@dataclass(frozen=True)
class PearsonData:
    order: tuple
    phi1: BiPoly
    phi2: BiPoly
    omega1: BiPoly
    omega2: BiPoly
    g1: RationalFn
    g2: RationalFn


def build_pearson(E) -> PearsonData:
    """Pearson polynomials and ratio functions of an EquationCoeffs or
    DerivedCoeffs; exact."""
    qp = E.qp
    q = E.field.of(qp.q)
    x = BiPoly.x(E.field)
    y = BiPoly.y(E.field)
    omega1 = y * E.c11 - x * E.a12d * q
    omega2 = x * E.c22 - y * E.a12d * q
    phi1 = y * E.c11 - x * E.a12a + x * y * E.b1 * (q - 1)
    phi2 = x * E.c22 - y * E.a12a + x * y * E.b2 * (q - 1)
    if omega1.is_zero() or omega2.is_zero():
        raise DegenerateEquationError("omega vanishes identically; no Pearson system")
    order = E.order if isinstance(E, DerivedCoeffs) else (0, 0)
    g1 = RationalFn(phi1, omega1.scale_args(q, 1))
    g2 = RationalFn(phi2, omega2.scale_args(1, q))
    return PearsonData(order, phi1, phi2, omega1, omega2, g1, g2)


def verify_pearson_identities(E: EquationCoeffs, k_max: int = 0, l_max: int = 0) -> dict:
    """Exact verification report.

    For every order (k,l) up to the bounds: both equalities of the
    a12a/a12d ratio identity and the mixed-ratio (key) identity, as exact
    rational-function identities on the derived coefficients; plus the
    coupling condition linking omega's of neighbouring orders.
    """
    qp = E.qp
    q = E.field.of(qp.q)
    report = {"ratio_left": {}, "ratio_right": {}, "key": {}, "coupling": {}}
    pearson = {}
    for k in range(k_max + 2):
        for l in range(l_max + 2):
            pearson[(k, l)] = build_pearson(derived_coeffs(E, k, l))

    for k in range(k_max + 1):
        for l in range(l_max + 1):
            P = pearson[(k, l)]
            D = derived_coeffs(E, k, l)
            a12a = RationalFn.from_poly(D.a12a)
            a12d_qq = D.a12d.scale_args(q, q)
            lhs_l = P.g1 * P.g2.scale_args(q, 1) * a12d_qq * q**2
            lhs_r = P.g1.scale_args(1, q) * P.g2 * a12d_qq * q**2
            report["ratio_left"][(k, l)] = lhs_l.ratfn_equal(a12a)
            report["ratio_right"][(k, l)] = lhs_r.ratfn_equal(a12a)

            x = BiPoly.x(E.field)
            y = BiPoly.y(E.field)
            key_lhs = P.g2 * y * dq2_ratfn(P.g1, qp)
            key_rhs = P.g1 * x * dq1_ratfn(P.g2, qp)
            report["key"][(k, l)] = key_lhs.ratfn_equal(key_rhs)

            w1_up = pearson[(k, l + 1)].omega1.scale_args(q, 1)      # omega1^{(k,l+1)}(qx,y)
            w2_kl = pearson[(k, l)].omega2.scale_args(q, q)          # omega2^{(k,l)}(qx,qy)
            w2_up = pearson[(k + 1, l)].omega2.scale_args(1, q)      # omega2^{(k+1,l)}(x,qy)
            w1_kl = pearson[(k, l)].omega1.scale_args(q, q)          # omega1^{(k,l)}(qx,qy)
            report["coupling"][(k, l)] = (w1_up * w2_kl) == (w2_up * w1_kl)

    report["ok"] = all(v for sub in ("ratio_left", "ratio_right", "key", "coupling")
                       for v in report[sub].values())
    return report


@dataclass
class WeightEvaluator:
    """Exact lattice weight: rho(q^s x0, q^t y0) as a finite product of ratio
    values relative to rho(x0, y0) = scale.

    The canonical path steps y first (t applications of G2 at x0), then x at
    the final y level; value_xfirst walks the other way for path-independence
    checks.  Poles along a path raise LatticePoleError with the offending
    index.
    """

    pearson: PearsonData
    anchor: tuple
    qp: QParam
    scale: object = 1
    closed_form: object = None  # optional callable (x, y) -> scalar, float lane
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def _g(self, which: str, xv, yv, index: int):
        g = self.pearson.g1 if which == "G1" else self.pearson.g2
        try:
            return g.eval(xv, yv)
        except ZeroDivisionError:
            raise LatticePoleError(which, index, (xv, yv)) from None

    def value(self, s: int, t: int):
        """rho at (q^s x0, q^t y0), s, t >= 0; exact on the exact backend."""
        if s < 0 or t < 0:
            raise ValueError("lattice exponents must be nonnegative")
        key = (s, t)
        if key in self._cache:
            return self._cache[key]
        q = self.qp.q
        x0, y0 = self.anchor
        if s == 0 and t == 0:
            val = self.scale * 1
        elif s == 0:
            val = self.value(0, t - 1) * self._g("G2", x0, y0 * q ** (t - 1), t - 1)
        else:
            val = self.value(s - 1, t) * self._g("G1", x0 * q ** (s - 1), y0 * q**t, s - 1)
        self._cache[key] = val
        return val

    def value_xfirst(self, s: int, t: int):
        """Same weight walked x-first; equality with value() is the lattice
        form of the mixed-ratio identity."""
        q = self.qp.q
        x0, y0 = self.anchor
        val = self.scale * 1
        for j in range(s):
            val *= self._g("G1", x0 * q**j, y0, j)
        for i in range(t):
            val *= self._g("G2", x0 * q**s, y0 * q**i, i)
        return val

    def point(self, s: int, t: int):
        q = self.qp.q
        return (self.anchor[0] * q**s, self.anchor[1] * q**t)


def base_weight(E: EquationCoeffs, anchor) -> WeightEvaluator:
    return WeightEvaluator(build_pearson(E), tuple(anchor), E.qp)


def omega_product_at(E: EquationCoeffs, k: int, l: int, xv, yv):
    """prod_{i=1..k} omega1(q^i x, q^l y) * prod_{s=1..l} omega2(q^k x, q^s y)."""
    P = build_pearson(E)
    q = E.field.of(E.qp.q)
    val = E.field.of(1)
    for i in range(1, k + 1):
        val *= P.omega1.eval(xv * q**i, yv * q**l)
    for s in range(1, l + 1):
        val *= P.omega2.eval(xv * q**k, yv * q**s)
    return val


def rho_kl(E: EquationCoeffs, k: int, l: int, anchor, base: WeightEvaluator | None = None) -> WeightEvaluator:
    """WeightEvaluator of the derivative weight rho^{(k,l)}, built from the
    Pearson data of the (k,l) derived coefficients.

    The scale is fixed by the product identity at the anchor, so the
    evaluator agrees with rho(q^k x, q^l y) * omega-products at every lattice
    point (not only up to a constant).
    """
    anchor = tuple(anchor)
    if base is None:
        base = base_weight(E, anchor)
    D = derived_coeffs(E, k, l)
    P = build_pearson(D)
    scale = base.value(k, l) * omega_product_at(E, k, l, *anchor)
    return WeightEvaluator(P, anchor, E.qp, scale=scale)


def weight_closed_form(preset_params, x, y, field, truncation=None, variant: str = "W"):
    """Closed-form weight of the named preset at a point, float backend.

    variant "W" is the explicit two-variable weight; variant "rho" is the
    lattice-product normalization, which differs from W by the constant -d/c.
    """
    from .bigqjacobi import closed_form_weight

    return closed_form_weight(preset_params, x, y, field, truncation=truncation, variant=variant)


def weight_table_rows(W: WeightEvaluator, s_max: int, t_max: int) -> list:
    """CSV-ready rows (s, t, x, y, numerator, denominator) of exact lattice
    weight values; rows are ordered by (s, t)."""
    from fractions import Fraction

    rows = []
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            xv, yv = W.point(s, t)
            val = Fraction(W.value(s, t))
            rows.append((s, t, str(xv), str(yv), str(val.numerator), str(val.denominator)))
    return rows

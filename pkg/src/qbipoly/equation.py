"""The canonical hypergeometric-type partial q-difference equation.

Coefficient convention: the two pure second-order coefficients are stored
with the sqrt(q) factor absorbed,

    C11(x) = q (a1 x^2 + b1 x + c1),     C22(y) = q (a2 y^2 + b2 y + c2),

so every stored quantity is rational in q and the full operator reads

    D f = C11 Dq1 Dq^-1_1 f + C22 Dq2 Dq^-1_2 f
        + A12a Dq1 Dq2 f + A12d Dq^-1_1 Dq^-1_2 f + B1 Dq1 f + B2 Dq2 f.

Same-axis compositions apply the backward operator first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .qcalc import QParam, dq1, dq2, dqm1, dqm2, qnum

_BILINEAR = {(0, 0), (1, 0), (0, 1), (1, 1)}


class ShapeViolation(ValueError):
    pass


@dataclass(frozen=True)
class EquationCoeffs:
    qp: QParam
    c11: BiPoly
    c22: BiPoly
    a12a: BiPoly
    a12d: BiPoly
    b1: BiPoly
    b2: BiPoly

    @property
    def field(self):
        return self.c11.field

    def polys(self):
        return (self.c11, self.c22, self.a12a, self.a12d, self.b1, self.b2)

    # -- named scalar extractors (sigma/tau coefficients) -------------------

    def _univariate_coeffs(self, p: BiPoly, axis: str, max_deg: int, name: str):
        for (i, j) in p.coeffs:
            if axis == "x" and j != 0:
                raise ShapeViolation(f"{name} must not depend on y")
            if axis == "y" and i != 0:
                raise ShapeViolation(f"{name} must not depend on x")
            if (i if axis == "x" else j) > max_deg:
                raise ShapeViolation(f"{name} has degree above {max_deg}")
        get = (lambda d: p.coeff(d, 0)) if axis == "x" else (lambda d: p.coeff(0, d))
        return [get(d) for d in range(max_deg + 1)]

    def sigma1(self):
        """(a1, b1, c1) with C11 = q (a1 x^2 + b1 x + c1)."""
        q = self.qp.q
        c0, c1, c2 = self._univariate_coeffs(self.c11, "x", 2, "C11")
        return c2 / q, c1 / q, c0 / q

    def sigma2(self):
        q = self.qp.q
        c0, c1, c2 = self._univariate_coeffs(self.c22, "y", 2, "C22")
        return c2 / q, c1 / q, c0 / q

    def cross_a(self):
        """(a3a, b3a, c3a, d3a) from A12a = a3a xy + b3a x + c3a y + d3a."""
        for m in self.a12a.coeffs:
            if m not in _BILINEAR:
                raise ShapeViolation(f"A12a carries a non-bilinear monomial {m}")
        p = self.a12a
        return p.coeff(1, 1), p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)

    def cross_d(self):
        for m in self.a12d.coeffs:
            if m not in _BILINEAR:
                raise ShapeViolation(f"A12d carries a non-bilinear monomial {m}")
        p = self.a12d
        return p.coeff(1, 1), p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)

    def tau1(self):
        """(f1, g1) with B1 = f1 x + g1."""
        c0, c1 = self._univariate_coeffs(self.b1, "x", 1, "B1")
        return c1, c0

    def tau2(self):
        c0, c1 = self._univariate_coeffs(self.b2, "y", 1, "B2")
        return c1, c0


@dataclass(frozen=True)
class DerivedCoeffs:
    """Coefficients of the equation satisfied by the order-(k, l) generalized
    difference of a solution, with its shifted spectral value mu."""

    qp: QParam
    order: tuple
    c11: BiPoly
    c22: BiPoly
    a12a: BiPoly
    a12d: BiPoly
    b1: BiPoly
    b2: BiPoly
    mu: Fraction

    @property
    def field(self):
        return self.c11.field

    def polys(self):
        return (self.c11, self.c22, self.a12a, self.a12d, self.b1, self.b2)


def check_hypergeometric_form(E: EquationCoeffs) -> dict:
    """Degree/shape report; every entry True means the equation is of the
    propagating (hypergeometric) class."""
    report = {}

    def probe(name, fn):
        try:
            fn()
            report[name] = True
        except ShapeViolation as exc:
            report[name] = False
            report.setdefault("violations", []).append(str(exc))

    probe("c11_quadratic_in_x", E.sigma1)
    probe("c22_quadratic_in_y", E.sigma2)
    probe("a12a_bilinear", E.cross_a)
    probe("a12d_bilinear", E.cross_d)
    probe("b1_affine_in_x", E.tau1)
    probe("b2_affine_in_y", E.tau2)
    report["ok"] = all(report.get(k, False) for k in (
        "c11_quadratic_in_x", "c22_quadratic_in_y", "a12a_bilinear",
        "a12d_bilinear", "b1_affine_in_x", "b2_affine_in_y"))
    return report


# ---------------------------------------------------------------------------
# operator application
# ---------------------------------------------------------------------------

def apply_operator(E, f: BiPoly) -> BiPoly:
    """Apply the second-order partial q-difference operator of E (an
    EquationCoeffs or DerivedCoeffs) to a polynomial; exact."""
    qp = E.qp
    return (E.c11 * dq1(dqm1(f, qp), qp)
            + E.c22 * dq2(dqm2(f, qp), qp)
            + E.a12a * dq1(dq2(f, qp), qp)
            + E.a12d * dqm1(dqm2(f, qp), qp)
            + E.b1 * dq1(f, qp)
            + E.b2 * dq2(f, qp))


def apply_adjoint(E, f: BiPoly) -> BiPoly:
    """The adjoint operator; multiplication by the coefficient happens inside
    the differences, with the same sqrt(q)-absorbed convention."""
    qp = E.qp
    q = E.field.of(qp.q)
    return (dq1(dqm1(E.c11 * f, qp), qp)
            + dq2(dqm2(E.c22 * f, qp), qp)
            + dq1(dq2(E.a12d * f, qp), qp) * q**2
            + dqm1(dqm2(E.a12a * f, qp), qp) * (1 / q**2)
            - (dqm1(E.b1 * f, qp) + dqm2(E.b2 * f, qp)) * (1 / q))


def bilinear_selfadjoint_check(E, functional, f: BiPoly, g: BiPoly):
    """Return (<Df, g>, <f, Dg>) under a weighted moment functional
    (BiPoly -> scalar); potential self-adjointness makes these agree."""
    return functional(apply_operator(E, f) * g), functional(f * apply_operator(E, g))


# ---------------------------------------------------------------------------
# admissibility and eigenvalues
# ---------------------------------------------------------------------------

@dataclass
class Admissibility:
    admissible: bool
    failures: list
    f1: Fraction
    a1: Fraction
    qp: QParam

    def eigenvalue(self, n: int) -> Fraction:
        """lambda_n = -[n]_q (f1 - a1 q [1-n]_q)."""
        return -qnum(n, self.qp) * (self.f1 - self.a1 * self.qp.q * qnum(1 - n, self.qp))


def admissibility(E: EquationCoeffs, spectral_bound: int = 64, distinct_bound: int = 20) -> Admissibility:
    """Check the admissibility conditions and build the eigenvalue sequence.

    The universally quantified spectral condition f1 - a1 q [1-m] != 0 is
    checked for m up to spectral_bound and, in addition, structurally: the
    only way it can vanish is f1/(a1 q) = [1-m], i.e. 1 + (q-1) f1/(a1 q)
    equal to an exact power q^{1-m}.
    """
    failures = []
    a1, _, _ = E.sigma1()
    a2, _, _ = E.sigma2()
    f1, _ = E.tau1()
    f2, _ = E.tau2()
    a3a = E.cross_a()[0]
    a3d = E.cross_d()[0]
    q = E.qp.q

    if f2 != f1:
        failures.append(f"f2 != f1 ({f2} vs {f1})")
    if a2 != a1:
        failures.append(f"a2 != a1 ({a2} vs {a1})")
    if a3a != a1 * q + f1 * (q - 1):
        failures.append(f"a3a != a1*q + f1*(q-1) ({a3a} vs {a1 * q + f1 * (q - 1)})")
    if a3d != a1:
        failures.append(f"a3d != a1 ({a3d} vs {a1})")

    for m in range(spectral_bound + 1):
        if f1 - a1 * q * qnum(1 - m, E.qp) == 0:
            failures.append(f"spectral condition fails at m={m}")
            break
    else:
        if a1 == 0:
            if f1 == 0:
                failures.append("degenerate: a1 = f1 = 0")
        else:
            val = 1 + (q - 1) * f1 / (a1 * q)  # must equal q^{1-m}, m >= 0, for failure
            if val > 0:
                j, p = 1, q
                while p < val:
                    j -= 1
                    p /= q
                if p == val:
                    failures.append(f"spectral condition fails structurally at m={1 - j}")

    adm = Admissibility(not failures, failures, f1, a1, E.qp)
    if adm.admissible:
        seen = {}
        for n in range(distinct_bound + 1):
            lam = adm.eigenvalue(n)
            if lam in seen:
                failures.append(f"eigenvalues collide: lambda_{seen[lam]} = lambda_{n}")
                adm.admissible = False
                break
            seen[lam] = n
    return adm


# ---------------------------------------------------------------------------
# coefficient propagation to generalized differences
# ---------------------------------------------------------------------------

def _xstep(qp: QParam, c11, c22, a12a, a12d, b1, b2, mu):
    q = qp.q
    y = BiPoly.y(c11.field)
    return (c11 / q,
            c22 + y * dq1(a12d, qp) * (1 - q),
            a12a.scale_args(q, 1),
            a12d / q,
            b1.scale_args(q, 1) + dq1(c11, qp) / q,
            b2 + dq1(a12a, qp) + dq1(a12d, qp),
            mu + dq1(b1, qp).coeff(0, 0))


def _ystep(qp: QParam, c11, c22, a12a, a12d, b1, b2, mu):
    q = qp.q
    x = BiPoly.x(c11.field)
    return (c11 + x * dq2(a12d, qp) * (1 - q),
            c22 / q,
            a12a.scale_args(1, q),
            a12d / q,
            b1 + dq2(a12a, qp) + dq2(a12d, qp),
            b2.scale_args(1, q) + dq2(c22, qp) / q,
            mu + dq2(b2, qp).coeff(0, 0))


def _closed_forms(E: EquationCoeffs, k: int, l: int, lam: Fraction):
    """Closed-form coefficients of the (k, l) derived equation (second route)."""
    qp = E.qp
    q = qp.q
    field = E.field
    x = BiPoly.x(field)
    y = BiPoly.y(field)
    one = BiPoly.const(1, field)
    a1, b1s, _ = E.sigma1()
    a2, b2s, _ = E.sigma2()
    a3a, b3a, c3a, _ = E.cross_a()
    a3d, b3d, c3d, _ = E.cross_d()
    f1, _ = E.tau1()
    f2, _ = E.tau2()
    nk, nl = qnum(k, qp), qnum(l, qp)

    c11 = E.c11 / q**k + x * (x * a3d + c3d) * ((1 - q**l) / q ** (k + l - 1))
    c22 = E.c22 / q**l + y * (y * a3d + b3d) * ((1 - q**k) / q ** (k + l - 1))
    a12a = E.a12a.scale_args(q**k, q**l)
    a12d = E.a12d / q ** (k + l)
    b1 = (E.b1.scale_args(q**k, 1)
          + (one * c3d + x * (a3d - a3a * q ** (k + l - 1))) * ((1 - q) * nk * nl / q ** (k + l - 1))
          + (one * b1s + x * (a1 * (q**k + 1))) * (nk / q ** (k - 1))
          + (one * c3d + x * a3d + (one * c3a + x * a3a) * q ** (l - 1)) * (nl / q ** (l - 1)))
    b2 = (E.b2.scale_args(1, q**l)
          + (one * b3d + y * (a3d - a3a * q ** (k + l - 1))) * ((1 - q) * nk * nl / q ** (k + l - 1))
          + (one * b2s + y * (a2 * (q**l + 1))) * (nl / q ** (l - 1))
          + (one * b3d + y * a3d + (one * b3a + y * a3a) * q ** (k - 1)) * (nk / q ** (k - 1)))
    mu = (lam + nk * (f1 * q ** (k - 2) + a1 * qnum(k - 1, qp)) / q ** (k - 2)
          + nl * (f2 * q ** (l - 2) + a2 * qnum(l - 1, qp)) / q ** (l - 2)
          + nk * nl * (a3d + a3a * q ** (k + l - 2)) / q ** (k + l - 2))
    return c11, c22, a12a, a12d, b1, b2, mu


class PropagationMismatch(AssertionError):
    pass


def derived_coeffs(E: EquationCoeffs, k: int, l: int, lam: Fraction | None = None) -> DerivedCoeffs:
    """Coefficients of the equation for the order-(k, l) generalized difference,
    computed by iterating the one-step recurrences AND by the closed forms;
    the two routes must agree exactly (the recurrence is authoritative)."""
    if k < 0 or l < 0:
        raise ValueError("orders must be nonnegative")
    if lam is None:
        lam = E.field.of(0)
    state = (E.c11, E.c22, E.a12a, E.a12d, E.b1, E.b2, lam)
    for _ in range(k):
        state = _xstep(E.qp, *state)
    for _ in range(l):
        state = _ystep(E.qp, *state)
    closed = _closed_forms(E, k, l, lam)
    names = ("C11", "C22", "A12a", "A12d", "B1", "B2", "mu")
    for name, rec, clo in zip(names, state, closed):
        if rec != clo:
            raise PropagationMismatch(
                f"closed form for {name} at order ({k},{l}) disagrees with the recurrence"
            )
    return DerivedCoeffs(E.qp, (k, l), *state)

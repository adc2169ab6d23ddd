"""The bivariate big q-Jacobi preset: equation coefficients, the explicit
non-monic family, explicit recurrence matrices, the monic hypergeometric
representation, the orthogonality weight with its Jackson moment engine, and
the q -> 1 classical targets (Appell-type monic family, Jacobi-product
family, classical Rodrigues, classical operator)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .equation import EquationCoeffs
from .linalg import Mat, interpolate_2d
from .monic import MonicFamily, generate_monic_oracle
from .qcalc import (QDomain, QParam, gauss_2f1_terminating, kampe_de_feriet,
                    phi_bivariate, phi_rs, pochhammer_rising, qbinomial, qnum,
                    qpochhammer, qpochhammer_inf)
from .rodrigues import RodriguesSpec, rodrigues_poly
from .scalars import QQ, FloatField


@dataclass(frozen=True)
class BigQJacobiParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    qp: QParam

    def __post_init__(self):
        q = self.qp.q
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not 0 < v * q < 1:
                raise ValueError(f"need 0 < {name}q < 1, got {name}={v}, q={q}")
        if not self.d < 0:
            raise ValueError(f"need d < 0, got d={self.d}")


#: The fixed rational test instance used throughout the suites.
TEST_PARAMS = BigQJacobiParams(
    Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(-1, 2), QParam(Fraction(1, 2))
)


def preset_equation(p: BigQJacobiParams) -> EquationCoeffs:
    """Equation coefficients of the bivariate big q-Jacobi family (sqrt(q)
    absorbed into the pure second-order coefficients)."""
    q = p.qp.q
    a, b, c, d = p.a, p.b, p.c, p.d
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)

    c11 = (one * (d * q) - x) * (one * (a * c * q**2) - x) * q
    c22 = (one * (a * q) - y) * (one * (d * q) - y) * q
    a12a = (one * d - x * b) * (one - y) * (a * c * q**4)
    a12d = (one * (d * q) - x) * (one * (a * q) - y)
    inner1 = one * (d - a * c * d * q**2 + a * c * q - a * b * c * q**2) + x * (a * b * c * q**2)
    b1 = (inner1 * q - x) * (q / (q - 1))
    inner2 = one * (d * q + a * q * (1 - d * q) - a * b * c * q**3) + y * (a * b * c * q**3 - 1)
    b2 = inner2 * (q / (q - 1))
    return EquationCoeffs(p.qp, c11, c22, a12a, a12d, b1, b2)


def lambda_explicit(p: BigQJacobiParams, n: int) -> Fraction:
    """The explicit eigenvalue product q^{2-n} [n]_q (1 - abc q^{n+2})/(q-1)."""
    q = p.qp.q
    return q ** (2 - n) * qnum(n, p.qp) * (1 - p.a * p.b * p.c * q ** (n + 2)) / (q - 1)


# ---------------------------------------------------------------------------
# the explicit non-monic solution
# ---------------------------------------------------------------------------

def univariate_value(m: int, t, A, B, C, qp: QParam):
    """Univariate big q-Jacobi value P_m(t; A, B; C; q) via 3-phi-2."""
    q = qp.q
    return phi_rs([q**-m, A * B * q ** (m + 1), t], [A * q, C * q], qp, q)


def nonmonic_value(p: BigQJacobiParams, n: int, k: int, xv, yv):
    """Value of the explicit bivariate big q-Jacobi product P_{n,k}(x, y)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    q = p.qp.q
    a, b, c, d = p.a, p.b, p.c, p.d
    f1 = univariate_value(n - k, yv, a, b * c * q ** (2 * k + 1), d * q**k, p.qp)
    bridge = Fraction(1)
    for j in range(k):
        bridge *= yv - d * q ** (1 + j)
    f2 = univariate_value(k, xv / yv, c, b, d / yv, p.qp)
    return f1 * bridge * f2


def nonmonic_poly(p: BigQJacobiParams, n: int, k: int) -> BiPoly:
    """The same solution as an exact BiPoly, recovered by interpolation on a
    generic integer grid (total degree n)."""
    nodes = [Fraction(v) for v in range(1, n + 2)]
    values = Mat([[nonmonic_value(p, n, k, xv, yv) for yv in nodes] for xv in nodes], QQ)
    return interpolate_2d(nodes, nodes, values)


# ---------------------------------------------------------------------------
# explicit three-term recurrence matrices (closed-form entries)
# ---------------------------------------------------------------------------

def explicit_BC(p: BigQJacobiParams, n: int) -> dict:
    """The closed-form entries of B_{n,1}, B_{n,2} ((n+1)x(n+1)) and
    C_{n,1}, C_{n,2} ((n+1)xn); 1-based case labels."""
    if n < 1:
        raise ValueError("explicit matrices start at n = 1")
    q = p.qp.q
    a, b, c, d = p.a, p.b, p.c, p.d
    qp = p.qp

    def qpoch(k):
        return qpochhammer(q, qp, k)

    den_b = (a * b * c * q ** (2 * n + 1) - 1) * (a * b * c * q ** (2 * n + 3) - 1)
    den_c = ((a * b * c * q ** (2 * n) - 1) * (a * b * c * q ** (2 * n + 1) - 1) ** 2
             * (a * b * c * q ** (2 * n + 2) - 1))

    B1 = Mat.zeros(n + 1, n + 1, QQ)
    B2 = Mat.zeros(n + 1, n + 1, QQ)
    C1 = Mat.zeros(n + 1, n, QQ)
    C2 = Mat.zeros(n + 1, n, QQ)

    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if i == j:
                t1 = (d * q ** (-i + n + 2)
                      * (a * c * q ** (2 * i - 1)
                         * (q ** (-i + n + 1)
                            * (b * (a * c * q ** (i + n + 1) + q ** (-i + n + 2) - q - 1) - q - 1)
                            + 1)
                         + 1)) / den_b
                t2 = (a * c * q ** (n + 2)
                      * (-b * (q + 1) * q ** (n - i) * (a * c * q ** (2 * i) + q)
                         + a * b * (b + 1) * c * q ** (2 * n + 2) + b + 1)) / den_b
                B1.rows[i - 1][j - 1] = t1 + t2
                B2.rows[i - 1][j - 1] = q**-i * (
                    q * qnum(i, qp) * (a * q**i - 1) * (d * q ** (n + 1) - 1)
                    / (a * b * c * q ** (2 * n + 3) - 1)
                    + q * qnum(i - 1, qp) * (q - a * q**i) * (d * q**n - 1)
                    / (a * b * c * q ** (2 * n + 1) - 1)
                    + q)
            elif i == j + 1:
                B1.rows[i - 1][j - 1] = -(
                    (q ** (i - 1) - 1) * (a * q ** (i - 1) - 1) * q ** (-i + n + 2)
                    * (a * b * c * d * q ** (2 * n + 2) - a * b * c * (q + 1) * q ** (n + 1) + d)
                ) / den_b
            elif i == j - 1:
                B2.rows[i - 1][j - 1] = -(
                    a * c * q ** (i + 1) * (q ** (-i + n + 1) - 1) * (b * q ** (-i + n + 1) - 1)
                    * (a * b * c * q ** (2 * (n + 1)) - d * (q + 1) * q**n + 1)
                ) / den_b

    for i in range(1, n + 2):
        for j in range(1, n + 1):
            if i == j:
                C1.rows[i - 1][j - 1] = -(
                    a * c * q ** (n + 2) * (d * q**n - 1)
                    * (q ** (-i + n + 1) - 1) * (b * q ** (-i + n + 1) - 1)
                    * (a * c * q ** (i + n) - 1) * (a * b * c * q ** (n + 1) - d)
                    * (a * b * c * q ** (i + n) - 1)
                ) / den_c
                C2.rows[i - 1][j - 1] = -(
                    a * c * (q - 1) * (d * q**n - 1) * q ** (n - i)
                    * qnum(-i + n + 1, qp) * (b * q ** (n + 1) - q**i)
                    * (a * b * c * q ** (n + 1) - d)
                    * ((a + 1) * q ** (i + 1) * (a * b * c * q ** (2 * n + 1) + 1)
                       - a * b * c * (q + 1) * q ** (2 * n + 2) - a * (q + 1) * q ** (2 * i))
                ) / den_c
            elif i == j + 1:
                C1.rows[i - 1][j - 1] = -(
                    a * c * (q ** (i - 1) - 1) * (a * q ** (i - 1) - 1) * (d * q**n - 1)
                    * q ** (-i + 2 * n + 3) * (a * b * c * q ** (n + 1) - d)
                    * (-b * (q + 1) * q ** (-i + n - 1) * (a * c * q ** (2 * i) + q**2)
                       + a * b * (b + 1) * c * q ** (2 * n + 1) + b + 1)
                ) / den_c
                C2.rows[i - 1][j - 1] = -(
                    a * (q ** (i - 1) - 1) * q ** (n + 1) * (a * q ** (i - 1) - 1)
                    * (d * q**n - 1) * (b * c * q ** (-i + 2 * n + 2) - 1)
                    * (a * b * c * q ** (n + 1) - d) * (a * b * c * q ** (-i + 2 * n + 2) - 1)
                ) / den_c
            elif i == j + 2:
                C1.rows[i - 1][j - 1] = -(
                    a * b * c * (a * q**i - q) * (a * q**i - q**2) * (d * q**n - 1)
                    * q ** (-2 * i + 3 * n + 2) * qpoch(i - 1)
                    * (a * b * c * q ** (n + 1) - d)
                ) / (qpoch(i - 3) * den_c)
            elif i == j - 1:
                C2.rows[i - 1][j - 1] = -(
                    a**2 * c**2 * q ** (n + 2) * (d * q**n - 1)
                    * (q**i - b * q**n) * (q**i - b * q ** (n + 1))
                    * qpoch(n - i + 1) * (a * b * c * q ** (n + 1) - d)
                ) / (qpoch(n - i - 1) * den_c)

    return {"B1": B1, "B2": B2, "C1": C1, "C2": C2}


# ---------------------------------------------------------------------------
# monic hypergeometric representation
# ---------------------------------------------------------------------------

def monic_hypergeometric(p: BigQJacobiParams, n: int, m: int, check: bool = True) -> BiPoly:
    """The monic solution with leading monomial x^n y^m, assembled exactly
    from the explicit double sum in (bx/d; q)_i (y; q)_j products.

    With check=True the result is validated against the bivariate Phi series
    at sample points and for monicity.
    """
    q = p.qp.q
    qp = p.qp
    a, b, c, d = p.a, p.b, p.c, p.d
    abc = a * b * c
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)

    pref = ((d / b) ** n * qpochhammer(a * q, qp, m) * qpochhammer(b * q, qp, n)
            * qpochhammer(d * q ** (n + 1), qp, m) * qpochhammer(abc * q ** (m + 2) / d, qp, n)
            / qpochhammer(abc * q ** (m + n + 2), qp, n + m))

    total = BiPoly.zero(QQ)
    for i in range(n + 1):
        for j in range(m + 1):
            expo = (i * (i - 2 * n + 1) + j * (j - 2 * m + 1)) // 2
            coef = ((-1) ** (i + j) * qbinomial(n, i, qp) * qbinomial(m, j, qp)
                    * q**expo * qpochhammer(abc * q ** (m + n + 2), qp, i + j)
                    / (qpochhammer(a * q, qp, j) * qpochhammer(b * q, qp, i)
                       * qpochhammer(d * q ** (n + 1), qp, j)
                       * qpochhammer(abc * q ** (m + 2) / d, qp, i)))
            pochx = qpochhammer(x * (b / d), qp, i)
            pochy = qpochhammer(y, qp, j)
            total = total + pochx * pochy * coef
    poly = total * pref

    if check:
        if poly.coeff(n, m) != 1:
            raise AssertionError(f"hypergeometric monic form is not monic at ({n},{m})")
        for xv, yv in ((Fraction(2, 7), Fraction(3, 5)), (Fraction(-1, 3), Fraction(1, 6))):
            phi = phi_bivariate(
                [abc * q ** (n + m + 2)],
                [q**-n, b * xv / d], [q**-m, yv],
                [], [b * q, abc * q ** (m + 2) / d], [a * q, d * q ** (n + 1)],
                qp, q, q,
            )
            if poly.eval(xv, yv) != pref * phi:
                raise AssertionError("explicit double sum disagrees with the Phi series")
    return poly


def monic_entry(family: MonicFamily, n: int, m: int) -> BiPoly:
    """Family entry with leading monomial x^n y^m (vector degree n+m, slot m)."""
    return family.vectors[n + m][m]


# ---------------------------------------------------------------------------
# weight function, orthogonality domain, Jackson moments
# ---------------------------------------------------------------------------

def ortstan_domain(p: BigQJacobiParams) -> QDomain:
    """Outer y from dq to aq; inner x from dq to c q y."""
    q = p.qp.q
    return QDomain(p.d * q, p.a * q, (p.d * q, Fraction(0)), (Fraction(0), p.c * q))


def closed_form_weight(p: BigQJacobiParams, xv, yv, field: FloatField,
                       truncation=None, variant: str = "W"):
    """Pointwise closed-form weight by infinite q-Pochhammers (float lane).

    variant "W": the explicit weight; variant "rho": the lattice-product
    normalization, equal to W times the constant -d/c.
    """
    qp = p.qp
    a, b, c, d = p.a, p.b, p.c, p.d
    with field.workprec():
        xf = field.of(xv)
        yf = field.of(yv)
        if yf == 0:
            raise ZeroDivisionError("weight undefined at y = 0")
        q = field.of(qp.q)

        def poch(z):
            return qpochhammer_inf(z, qp, field, max_terms=truncation)

        if variant == "W":
            num = poch(d * q / yf) * poch(xf / (c * yf)) * poch(xf / field.of(d)) \
                * poch(yf / field.of(a)) * poch(yf / field.of(d))
            den = yf * poch(field.of(d) / (c * yf)) * poch(c * q * yf / field.of(d)) \
                * poch(xf / yf) * poch(b * xf / field.of(d)) * poch(yf)
        elif variant == "rho":
            num = poch(yf / field.of(a)) * poch(xf / field.of(d)) * poch(d * q / yf) \
                * poch(xf / (c * yf)) * poch(yf / field.of(d))
            den = poch(yf) * poch(xf / yf) * poch(b * xf / field.of(d)) \
                * poch(d * q / (c * yf)) * poch(c * yf / field.of(d))
        else:
            raise ValueError(f"unknown weight variant {variant!r}")
        if den == 0:
            raise ZeroDivisionError("vanishing denominator factor in the closed-form weight")
        return num / den


class MomentTable:
    """All Jackson moments of the orthogonality functional up to a total
    degree, in one pass over the lattice.

    The double q-integral runs y over (dq -> aq) and x over (dq -> c q y),
    both as differences of one-sided Jackson sums truncated at `truncation`.
    On the positive outer branch (y = a q^{1+t}) the weight is the plain
    infinite-product formula.  On the negative outer branch (y = d q^{1+t})
    the infinite products sit at 0/0: the numerator factor (dq/y; q)_inf
    vanishes at every node while the denominator factor (x/y; q)_inf
    vanishes at the inner nodes x = d q^{1+r}, r <= t; the weight's node
    values are the continuous limits, obtained by dropping the single
    vanishing factor from both (all other nodes of that branch carry no
    mass).  Infinite q-Pochhammers start from direct evaluations and advance
    along each branch by one-factor ladder updates; summation order is fixed.
    """

    def __init__(self, p: BigQJacobiParams, max_degree: int = 8,
                 truncation: int = 200, prec: int = 192):
        self.params = p
        self.max_degree = max_degree
        self.truncation = truncation
        self.field = FloatField(prec)
        self.weight_min_positive = None
        self._moments = self._build()

    def _build(self):
        p = self.params
        fld = self.field
        with fld.workprec():
            M = [[fld.of(0)] * (self.max_degree + 1) for _ in range(self.max_degree + 1)]
            self._positive_branch(M)
            self._negative_branch(M)
            return M

    def _track_weight(self, w):
        if w != 0 and (self.weight_min_positive is None or w < self.weight_min_positive):
            self.weight_min_positive = w

    def _positive_branch(self, M):
        p = self.params
        fld = self.field
        N, D = self.truncation, self.max_degree
        q = fld.of(p.qp.q)
        a, b, c, d = (fld.of(v) for v in (p.a, p.b, p.c, p.d))

        def poch(z):
            return qpochhammer_inf(z, p.qp, fld)

        ystart = a * q
        n1 = poch(d * q / ystart)    # (dq/ystart) q^{-t}: negative-power ladder
        n4 = poch(ystart / a)        # (ystart/a) q^{t}
        n5 = poch(ystart / d)
        d1 = poch(d / (c * ystart))  # negative-power ladder
        d2 = poch(c * q * ystart / d)
        d5 = poch(ystart)
        yv = ystart
        for t in range(N + 1):
            yfac = n1 * n4 * n5 / (yv * d1 * d2 * d5)
            inner = self._inner_positive(fld, q, b, c, d, yv, N, D, yfac)
            ypow = fld.one
            wt = (1 - q) * ystart * q**t
            for j in range(D + 1):
                acc = wt * ypow
                for i in range(D + 1):
                    M[i][j] += acc * inner[i]
                ypow *= yv
            n1 *= 1 - d * q / (ystart * q ** (t + 1))
            n4 /= 1 - (ystart / a) * q**t
            n5 /= 1 - (ystart / d) * q**t
            d1 *= 1 - d / (c * ystart * q ** (t + 1))
            d2 /= 1 - (c * q * ystart / d) * q**t
            d5 /= 1 - ystart * q**t
            yv *= q

    def _inner_positive(self, fld, q, b, c, d, yv, N, D, yfac):
        """Inner Jackson interval at fixed positive-branch y: [I_0 .. I_D]."""
        out = [fld.of(0)] * (D + 1)
        for xstart, xsign in ((c * q * yv, 1), (d * q, -1)):
            n2 = qpochhammer_inf(xstart / (c * yv), self.params.qp, fld)
            n3 = qpochhammer_inf(xstart / d, self.params.qp, fld)
            d3 = qpochhammer_inf(xstart / yv, self.params.qp, fld)
            d4 = qpochhammer_inf(b * xstart / d, self.params.qp, fld)
            xv = xstart
            sums = [fld.of(0)] * (D + 1)
            wq = fld.one
            for r in range(N + 1):
                w = yfac * n2 * n3 / (d3 * d4)
                self._track_weight(w)
                base = wq * w
                for i in range(D + 1):
                    sums[i] += base
                    base *= xv
                n2 /= 1 - (xstart / (c * yv)) * wq
                n3 /= 1 - (xstart / d) * wq
                d3 /= 1 - (xstart / yv) * wq
                d4 /= 1 - (b * xstart / d) * wq
                xv *= q
                wq *= q
            for i in range(D + 1):
                out[i] += xsign * (1 - q) * xstart * sums[i]
        return out

    def _negative_branch(self, M):
        """y = d q^{1+t} nodes: mass only at x = d q^{1+r}, r <= t, with the
        regularized 0/0 weight values."""
        p = self.params
        fld = self.field
        N, D = self.truncation, self.max_degree
        q = fld.of(p.qp.q)
        a, b, c, d = (fld.of(v) for v in (p.a, p.b, p.c, p.d))

        def poch(z):
            return qpochhammer_inf(z, p.qp, fld)

        qq_inf = poch(q)
        # dropped-factor Pochhammer: drop(k) = prod_{j != k} (1 - q^{j-k})
        # ladder: drop(k) = drop(k-1) * (-q^{-k}) * (1 - q^k)
        drop = [qq_inf]
        for k in range(1, N + 1):
            drop.append(drop[k - 1] * (-(q ** -k)) * (1 - q**k))

        ystart = d * q
        n4 = poch(ystart / a)        # y/a = (d/a) q^{1+t}
        n5 = poch(ystart / d)        # y/d = q^{1+t}
        d1 = poch(d / (c * ystart))  # (1/(cq)) q^{-t}: negative-power ladder
        d2 = poch(c * q * ystart / d)
        d5 = poch(ystart)
        g_xcy0 = poch(1 / c)         # x/(cy) at r=0: (1/c) q^{-t} laddered in t
        xd0 = poch(q)                # x/d = q^{1+r}
        bxd0 = poch(b * q)           # bx/d = b q^{1+r}
        yv = ystart
        for t in range(N + 1):
            # y-only part with the vanishing (dq/y; q)_inf replaced by drop(t)
            yfac = drop[t] * n4 * n5 / (yv * d1 * d2 * d5)
            sums = [fld.of(0)] * (D + 1)
            n2 = g_xcy0    # x/(cy) = (1/c) q^{r-t}
            n3 = xd0
            d4 = bxd0
            xv = d * q
            wq = fld.one
            for r in range(t + 1):
                w = yfac * n2 * n3 / (drop[t - r] * d4)
                self._track_weight(w)
                base = wq * w
                for i in range(D + 1):
                    sums[i] += base
                    base *= xv
                n2 /= 1 - (1 / c) * q ** (r - t)
                n3 /= 1 - q ** (1 + r)
                d4 /= 1 - b * q ** (1 + r)
                xv *= q
                wq *= q
            # inner interval: the c q y branch carries no mass; only -int_0^{dq}
            inner = [-(1 - q) * d * q * s for s in sums]
            ypow = fld.one
            wt = -(1 - q) * ystart * q**t
            for j in range(D + 1):
                acc = wt * ypow
                for i in range(D + 1):
                    M[i][j] += acc * inner[i]
                ypow *= yv
            n4 /= 1 - (ystart / a) * q**t
            n5 /= 1 - (ystart / d) * q**t
            d1 *= 1 - d / (c * ystart * q ** (t + 1))
            d2 /= 1 - (c * q * ystart / d) * q**t
            d5 /= 1 - ystart * q**t
            g_xcy0 *= 1 - (1 / c) * q ** (-(t + 1))
            yv *= q

    def moment(self, i: int, j: int):
        return self._moments[i][j]

    def integrate(self, poly: BiPoly):
        """The moment functional applied to a polynomial (exact or float)."""
        with self.field.workprec():
            total = self.field.of(0)
            for (i, j), cf in sorted(poly.coeffs.items()):
                if i > self.max_degree or j > self.max_degree:
                    raise ValueError(f"moment table only covers degrees <= {self.max_degree}")
                total += self.field.of(cf) * self._moments[i][j]
            return total

    __call__ = integrate


# ---------------------------------------------------------------------------
# classical (q -> 1) targets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalParams:
    alpha: int
    beta: int
    gamma: int
    delta: int = 1

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if getattr(self, name) <= -1:
                raise ValueError(f"{name} must exceed -1")


def appell_monic(cp: ClassicalParams, n: int, m: int) -> BiPoly:
    """Monic bivariate Jacobi (Appell-type) polynomial via the Kampe de
    Feriet double sum; exact rational coefficients."""
    al, be, ga = Fraction(cp.alpha), Fraction(cp.beta), Fraction(cp.gamma)
    s = al + be + ga + m + n + 2
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)
    half = Fraction(1, 2)
    series = kampe_de_feriet([s], [Fraction(-n)], [Fraction(-m)], [], [be + 1], [al + 1],
                             (x + one) * half, (one - y) * half)
    lead = (Fraction(-1) ** n * Fraction(2) ** (n + m) * pochhammer_rising(al + 1, m)
            * pochhammer_rising(be + 1, n) / pochhammer_rising(s, n + m))
    return series * lead


def jnm(cp: ClassicalParams, n: int, m: int) -> BiPoly:
    """The q -> 1 limit of the explicit non-monic family: a product of a
    (y+1)-folded 2F1 in (y-x)/(y+1) and a terminating 2F1 in y."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    al, be, ga = Fraction(cp.alpha), Fraction(cp.beta), Fraction(cp.gamma)
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)
    half = Fraction(1, 2)

    first = BiPoly.zero(QQ)
    for r in range(m + 1):
        coef = (pochhammer_rising(Fraction(-m), r) * pochhammer_rising(be + ga + m + 1, r)
                / (pochhammer_rising(ga + 1, r) * pochhammer_rising(Fraction(1), r)))
        first = first + ((y - x) ** r) * ((y + one) ** (m - r)) * coef
    second = gauss_2f1_terminating(Fraction(m - n), al + be + ga + m + n + 2, al + 1,
                                   (one - y) * half)
    return first * second


def classical_weight(cp: ClassicalParams) -> BiPoly:
    """(1-y)^alpha (x+1)^beta (y-x)^gamma for integer exponents."""
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)
    return ((one - y) ** cp.alpha) * ((x + one) ** cp.beta) * ((y - x) ** cp.gamma)


def classical_rodrigues(cp: ClassicalParams, n: int, m: int) -> BiPoly:
    """d^{n+m}/dx^n dy^m of (x+1)^{beta+n} (1-y)^{alpha+m} (y-x)^{gamma+n+m},
    divided exactly by the classical weight (zero remainder required)."""
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)
    bracket = ((x + one) ** (cp.beta + n)) * ((one - y) ** (cp.alpha + m)) \
        * ((y - x) ** (cp.gamma + n + m))
    for _ in range(n):
        bracket = bracket.diff_x()
    for _ in range(m):
        bracket = bracket.diff_y()
    for divisor, power in (((one - y), cp.alpha), ((x + one), cp.beta), ((y - x), cp.gamma)):
        for _ in range(power):
            bracket = bracket.div_exact(divisor)
    return bracket


def classical_pde_residual(cp: ClassicalParams, u: BiPoly, total_degree: int) -> BiPoly:
    """Residual of u under the q -> 1 limit operator with eigenvalue
    -n (alpha+beta+gamma+n+2), n = total degree."""
    al, be, ga = Fraction(cp.alpha), Fraction(cp.beta), Fraction(cp.gamma)
    x = BiPoly.x(QQ)
    y = BiPoly.y(QQ)
    one = BiPoly.const(1, QQ)
    s3 = al + be + ga + 3
    uxx = u.diff_x().diff_x()
    uyy = u.diff_y().diff_y()
    uxy = u.diff_x().diff_y()
    ux = u.diff_x()
    uy = u.diff_y()
    nn = Fraction(total_degree)
    return ((x * x - one) * uxx + (y * y - one) * uyy
            + (x + one) * (y - one) * uxy * 2
            + (x * s3 + one * (al - be + ga + 1)) * ux
            + (y * s3 + one * (al - be - ga - 1)) * uy
            - u * (nn * (al + be + ga + nn + 2)))


# ---------------------------------------------------------------------------
# q -> 1 convergence study
# ---------------------------------------------------------------------------

def limit_params(cp: ClassicalParams, eps: Fraction) -> BigQJacobiParams:
    """a = q^alpha, b = q^beta, c = q^gamma, d = -q^delta at q = 1 - eps."""
    q = 1 - Fraction(eps)
    qp = QParam(q)
    return BigQJacobiParams(q**cp.alpha, q**cp.beta, q**cp.gamma, -(q**cp.delta), qp)


def limit_check(cp: ClassicalParams, eps_list, nm_list, points,
                include_rodrigues: bool = True) -> list:
    """Convergence table rows for the monic pair (and optionally the
    Rodrigues pair) at q = 1 - eps; everything on the q side is exact.

    Each row: {kind, n, m, point, eps, error (Fraction), const}.  The
    reported constant is the coefficient ratio used to align the Rodrigues
    pair; the monic pair needs none.
    """
    rows = []
    for n, m in nm_list:
        target = appell_monic(cp, n, m)
        rod_target = classical_rodrigues(cp, n, m) if include_rodrigues else None
        for eps in eps_list:
            eps = Fraction(eps)
            p = limit_params(cp, eps)
            E = preset_equation(p)
            fam = generate_monic_oracle(E, n + m)
            phat = monic_entry(fam, n, m)
            for pt in points:
                err = abs(phat.eval(*pt) - target.eval(*pt))
                rows.append({"kind": "monic", "n": n, "m": m, "point": pt,
                             "eps": eps, "error": err, "const": Fraction(1)})
            if include_rodrigues:
                ptil = rodrigues_poly(RodriguesSpec(E, n, m))
                cstar = ptil.coeff(n, m) / rod_target.coeff(n, m)
                for pt in points:
                    err = abs(ptil.eval(*pt) - cstar * rod_target.eval(*pt))
                    rows.append({"kind": "rodrigues", "n": n, "m": m, "point": pt,
                                 "eps": eps, "error": err, "const": cstar})
    return rows


def error_ratios(rows) -> list:
    """Pair consecutive eps entries per (kind, n, m, point): ratio column."""
    keyed = {}
    for row in rows:
        keyed.setdefault((row["kind"], row["n"], row["m"], row["point"]), []).append(row)
    out = []
    for key, group in sorted(keyed.items(), key=lambda kv: str(kv[0])):
        group = sorted(group, key=lambda r: -r["eps"])
        for prev, cur in zip(group, group[1:]):
            ratio = None if prev["error"] == 0 else cur["error"] / prev["error"]
            out.append({"kind": key[0], "n": key[1], "m": key[2], "point": key[3],
                        "eps_from": prev["eps"], "eps_to": cur["eps"], "ratio": ratio})
    return out


def weight_limit_ratio(cp: ClassicalParams, eps, point, prec: int = 64):
    """W(x, y; q = 1-eps) / classical weight at an interior point (float)."""
    p = limit_params(cp, Fraction(eps))
    fld = FloatField(prec)
    wq = closed_form_weight(p, point[0], point[1], fld, truncation=None, variant="W")
    wc = classical_weight(cp).eval(*point)
    with fld.workprec():
        return wq / fld.of(wc)

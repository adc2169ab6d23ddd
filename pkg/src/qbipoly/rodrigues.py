"""Rodrigues-representation solutions by exact lattice evaluation.

The polynomial of index (n, m) is recovered from

    u = Lambda * q^{n(1-n)/2 + m(1-m)/2} / rho(x,y)
        * [Dq1]^n [Dq2]^m [ rho(x,y) * Omega(x,y) ],

    Omega(x,y) = prod_{k=0..n-1} omega1(q^-k x, y) * prod_{s=0..m-1} omega2(x, q^-s y),

sampled on a backward lattice grid: all rho ratios entering the quotient are
finite products of Pearson ratio values, hence exact rationals, and the
samples interpolate to the unique polynomial of total degree n + m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .equation import EquationCoeffs, admissibility, apply_operator
from .linalg import Mat, interpolate_2d
from .pearson import LatticePoleError, base_weight, build_pearson, rho_kl
from .qcalc import dq_nm_table

#: Base points tried in order when a lattice path hits a Pearson pole.
DEFAULT_BASES = (
    (Fraction(3, 7), Fraction(5, 11)),
    (Fraction(2, 5), Fraction(3, 7)),
    (Fraction(5, 9), Fraction(4, 7)),
    (Fraction(4, 11), Fraction(6, 13)),
    (Fraction(7, 13), Fraction(3, 11)),
    (Fraction(5, 13), Fraction(7, 9)),
    (Fraction(8, 15), Fraction(5, 7)),
    (Fraction(9, 17), Fraction(4, 13)),
)


class RodriguesError(ValueError):
    pass


@dataclass(frozen=True)
class RodriguesSpec:
    equation: EquationCoeffs
    n: int
    m: int
    normalization: Fraction = Fraction(1)
    base: tuple | None = None  # interpolation base point; scanned when None

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("degrees must be nonnegative")


def _omega_bracket(E: EquationCoeffs, n: int, m: int) -> BiPoly:
    """The polynomial factor of the Rodrigues bracket."""
    P = build_pearson(E)
    q = E.qp.q
    out = BiPoly.const(1, E.field)
    for k in range(n):
        out = out * P.omega1.scale_args(q**-k, 1)
    for s in range(m):
        out = out * P.omega2.scale_args(1, q**-s)
    return out


def _grid_values(E: EquationCoeffs, n: int, m: int, base) -> tuple:
    """Sample u on the (n+m+1)^2 backward grid from `base`; exact rationals.

    Every lattice point touched lives at nonnegative shifts from the far
    anchor (q^-(G-1) base), so rho ratios are finite Pearson products; the
    anchor constant cancels between the bracket and the outer division.
    """
    qp = E.qp
    q = qp.q
    G = n + m + 1
    xb, yb = base
    anchor = (xb * q ** -(G - 1), yb * q ** -(G - 1))
    rho = base_weight(E, anchor)
    omega = _omega_bracket(E, n, m)
    pref = E.field.of(q) ** ((n * (1 - n)) // 2 + (m * (1 - m)) // 2)

    nodes_x = [xb * q**-i for i in range(G)]
    nodes_y = [yb * q**-j for j in range(G)]
    values = []
    for i in range(G):
        row = []
        s0 = G - 1 - i
        for j in range(G):
            t0 = G - 1 - j
            fvals = [
                [rho.value(s0 + r, t0 + s) * omega.eval(nodes_x[i] * q**r, nodes_y[j] * q**s)
                 for s in range(m + 1)]
                for r in range(n + 1)
            ]
            dval = dq_nm_table(fvals, nodes_x[i], nodes_y[j], qp, n, m)
            rho_here = rho.value(s0, t0)
            if rho_here == 0:
                raise LatticePoleError("rho", s0, (nodes_x[i], nodes_y[j]))
            row.append(pref * dval / rho_here)
        values.append(row)
    return nodes_x, nodes_y, values


def rodrigues_poly(spec: RodriguesSpec, monic: bool = False, verify: bool = True) -> BiPoly:
    """Construct the degree-(n+m) Rodrigues polynomial exactly.

    Raises RodriguesError when the interpolant carries total degree above
    n + m or fails the eigen-equation (non-admissible input or a bug), and
    when no pole-free base point is found.
    """
    E = spec.equation
    n, m = spec.n, spec.m
    bases = (spec.base,) if spec.base is not None else DEFAULT_BASES
    last_pole = None
    for base in bases:
        try:
            nodes_x, nodes_y, values = _grid_values(E, n, m, base)
        except (LatticePoleError, ZeroDivisionError) as exc:
            last_pole = exc
            continue
        poly = interpolate_2d(nodes_x, nodes_y, Mat(values, E.field))
        poly = poly * spec.normalization
        break
    else:
        raise RodriguesError(f"no pole-free base point among {len(bases)} candidates: {last_pole}")

    if verify:
        for (i, j), c in poly.coeffs.items():
            if i + j > n + m:
                raise RodriguesError(
                    f"interpolant has coefficient at ({i},{j}) beyond total degree {n + m}: {c}"
                )
        adm = admissibility(E)
        if not adm.admissible:
            raise RodriguesError(f"equation not admissible: {adm.failures}")
        lam = adm.eigenvalue(n + m)
        residual = apply_operator(E, poly) + poly * lam
        if not residual.is_zero():
            raise RodriguesError(f"Rodrigues output violates the eigen-equation at (n,m)=({n},{m})")

    if monic and not poly.is_zero():
        lead = poly.homogeneous_part(poly.total_degree()).leading_term()
        poly = poly / lead[1]
    return poly


def rodrigues_line1_values(E: EquationCoeffs, n: int, m: int, base) -> tuple:
    """First-line evaluation: backward differences of rho^{(n,m)} divided by
    rho, on the same grid rodrigues_poly interpolates over.

    Shares the far anchor with the forward construction so the two routes
    are comparable; they differ by the constant q^{n^2 + m^2} (the forward
    route carries the q^{n(1-n)/2+m(1-m)/2} prefactor).
    """
    qp = E.qp
    q = qp.q
    G = n + m + 1
    xb, yb = base
    # backward stencil reaches n (resp. m) extra backward steps past the grid
    anchor = (xb * q ** -(G - 1 + n), yb * q ** -(G - 1 + m))
    rho = base_weight(E, anchor)
    rkl = rho_kl(E, n, m, anchor, base=rho)

    values = []
    for i in range(G):
        row = []
        s0 = G - 1 + n - i  # shift of grid node from the far anchor
        for j in range(G):
            t0 = G - 1 + m - j
            # backward differences on rho^{(n,m)} samples at (q^{-r} X, q^{-s} Y)
            fvals = [[rkl.value(s0 - r, t0 - s) for s in range(m + 1)] for r in range(n + 1)]
            X = xb * q ** -(i)
            Y = yb * q ** -(j)
            work = fvals
            for _ in range(n):
                nr = len(work) - 1
                new = []
                for r in range(nr):
                    xr = X / q**r
                    new.append([q * (work[r][s] - work[r + 1][s]) / ((q - 1) * xr)
                                for s in range(len(work[0]))])
                work = new
            for _ in range(m):
                ns = len(work[0]) - 1
                for r in range(len(work)):
                    rw = work[r]
                    work[r] = [q * (rw[s] - rw[s + 1]) / ((q - 1) * Y / q**s) for s in range(ns)]
            row.append(work[0][0] / rho.value(s0, t0))
        values.append(row)
    return values


def rodrigues_orthogonality_check(spec: RodriguesSpec, functional, max_lower_degree: int | None = None) -> dict:
    """Weighted moments of the Rodrigues polynomial against all monomials of
    lower total degree; `functional` maps BiPoly -> scalar (float lane)."""
    n, m = spec.n, spec.m
    bound = n + m if max_lower_degree is None else max_lower_degree
    poly = rodrigues_poly(spec)
    out = {}
    for d in range(bound):
        for i in range(d + 1):
            mono = BiPoly.monomial(d - i, i, 1, poly.field)
            out[(d - i, i)] = functional(poly * mono)
    return out

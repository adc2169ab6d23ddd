"""Sparse bivariate polynomials and rational functions over a scalar backend.

A ``BiPoly`` is a map from exponent pairs ``(i, j)`` (for ``x**i * y**j``) to
nonzero scalar coefficients.  Construction strips zeros, so the zero
polynomial is the empty map.  All operations are pure; instances are treated
as immutable after construction.

``RationalFn`` is a quotient of two BiPolys with equality decided by cross
multiplication; no gcd normalization is ever attempted.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QQ, BackendMismatch, Field


class BiPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs=None, field: Field = QQ):
        self.field = field
        clean = {}
        if coeffs:
            for (i, j), cval in coeffs.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent ({i},{j})")
                if isinstance(cval, (int, str)) or (not field.exact and isinstance(cval, Fraction)):
                    cval = field.of(cval)
                if not field.is_zero(cval):
                    clean[(int(i), int(j))] = cval
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field = QQ):
        return cls({}, field)

    @classmethod
    def const(cls, value, field: Field = QQ):
        return cls({(0, 0): field.of(value)}, field)

    @classmethod
    def x(cls, field: Field = QQ):
        return cls({(1, 0): field.of(1)}, field)

    @classmethod
    def y(cls, field: Field = QQ):
        return cls({(0, 1): field.of(1)}, field)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, field: Field = QQ):
        return cls({(i, j): field.of(coeff)}, field)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def coeff(self, i: int, j: int):
        return self.coeffs.get((i, j), self.field.of(0))

    def terms(self):
        """Terms sorted by graded lexicographic order (x-major), descending."""
        return sorted(self.coeffs.items(), key=lambda t: (t[0][0] + t[0][1], t[0][0]), reverse=True)

    def leading_term(self):
        """(monomial, coeff) largest in grlex order; None for zero."""
        if not self.coeffs:
            return None
        mono = max(self.coeffs, key=lambda m: (m[0] + m[1], m[0]))
        return mono, self.coeffs[mono]

    def homogeneous_part(self, degree: int) -> "BiPoly":
        return BiPoly({m: c for m, c in self.coeffs.items() if m[0] + m[1] == degree}, self.field)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            self.field.check_same(other.field)
            return other
        if isinstance(other, (int, Fraction)) or not self.field.exact:
            return BiPoly.const(self.field.of(other), self.field)
        raise BackendMismatch(f"cannot combine BiPoly with {other!r}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        zero = self.field.of(0)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, zero) + c
        return BiPoly(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            self.field.check_same(other.field)
            out = {}
            zero = self.field.of(0)
            for (i1, j1), c1 in self.coeffs.items():
                for (i2, j2), c2 in other.coeffs.items():
                    m = (i1 + i2, j1 + j2)
                    out[m] = out.get(m, zero) + c1 * c2
            return BiPoly(out, self.field)
        c = self.field.of(other)
        return BiPoly({m: v * c for m, v in self.coeffs.items()}, self.field)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = self.field.of(scalar)
        if self.field.is_zero(c):
            raise ZeroDivisionError("division of BiPoly by zero scalar")
        return BiPoly({m: v / c for m, v in self.coeffs.items()}, self.field)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a BiPoly")
        out = BiPoly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            if self.field.exact and other.field.exact:
                return self.coeffs == other.coeffs
            return (self - other).is_zero()
        if isinstance(other, (int, Fraction)):
            return self == BiPoly.const(self.field.of(other), self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items())))

    # -- substitution and evaluation ---------------------------------------

    def scale_args(self, alpha=1, beta=1) -> "BiPoly":
        """Substitute x -> alpha*x, y -> beta*y."""
        alpha = self.field.of(alpha)
        beta = self.field.of(beta)
        return BiPoly(
            {(i, j): c * alpha**i * beta**j for (i, j), c in self.coeffs.items()},
            self.field,
        )

    def eval(self, xv, yv):
        xv = self.field.of(xv) if isinstance(xv, (int, str)) else xv
        yv = self.field.of(yv) if isinstance(yv, (int, str)) else yv
        total = self.field.of(0)
        for (i, j), c in self.coeffs.items():
            total += c * xv**i * yv**j
        return total

    # -- calculus on polynomials -------------------------------------------

    def diff_x(self) -> "BiPoly":
        """Classical partial derivative in x."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if i:
                out[(i - 1, j)] = c * i
        return BiPoly(out, self.field)

    def diff_y(self) -> "BiPoly":
        out = {}
        for (i, j), c in self.coeffs.items():
            if j:
                out[(i, j - 1)] = c * j
        return BiPoly(out, self.field)

    def div_exact(self, divisor: "BiPoly") -> "BiPoly":
        """Exact division; raises ValueError when the remainder is nonzero.

        Greedy grlex reduction by a single divisor: valid whenever the
        quotient exists in the ring, which is the only case callers rely on.
        """
        self.field.check_same(divisor.field)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.leading_term()
        (di, dj), dc = lead
        rem = self
        quot = {}
        zero = self.field.of(0)
        while not rem.is_zero():
            (ri, rj), rc = rem.leading_term()
            if ri < di or rj < dj:
                raise ValueError("nonzero remainder in exact polynomial division")
            qm = (ri - di, rj - dj)
            qc = rc / dc
            quot[qm] = quot.get(qm, zero) + qc
            rem = rem - divisor * BiPoly.monomial(qm[0], qm[1], qc, self.field)
        return BiPoly(quot, self.field)

    def to_field(self, field: Field) -> "BiPoly":
        """Re-express over another backend (exact -> float is the useful one)."""
        return BiPoly({m: field.of(c) for m, c in self.coeffs.items()}, field)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.terms():
            mono = "".join(s for s in (f"x^{i}" if i else "", f"y^{j}" if j else "") if s)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class RationalFn:
    """Quotient num/den of BiPolys, compared by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly):
        num.field.check_same(den.field)
        if den.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: BiPoly):
        return cls(p, BiPoly.const(1, p.field))

    @property
    def field(self):
        return self.num.field

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        if isinstance(other, BiPoly):
            return RationalFn(self.num * other, self.den)
        return RationalFn(self.num * other, self.den)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn.from_poly(other if isinstance(other, BiPoly) else BiPoly.const(self.field.of(other), self.field))
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn.from_poly(other if isinstance(other, BiPoly) else BiPoly.const(self.field.of(other), self.field))
        return RationalFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def scale_args(self, alpha=1, beta=1) -> "RationalFn":
        return RationalFn(self.num.scale_args(alpha, beta), self.den.scale_args(alpha, beta))

    def eval(self, xv, yv):
        dv = self.den.eval(xv, yv)
        if self.field.is_zero(dv):
            raise ZeroDivisionError(f"RationalFn denominator vanishes at ({xv},{yv})")
        return self.num.eval(xv, yv) / dv

    def ratfn_equal(self, other: "RationalFn") -> bool:
        """True iff self == other as rational functions (exact backend)."""
        if not self.field.exact:
            raise BackendMismatch("rational-function identity checks need the exact backend")
        return (self.num * other.den - other.num * self.den).is_zero()

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def ratfn_equal(f: RationalFn, g: RationalFn) -> bool:
    return f.ratfn_equal(g)

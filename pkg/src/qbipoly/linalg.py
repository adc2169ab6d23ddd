"""Dense scalar matrices, polynomial column vectors, exact solving,
and tensor-product Vandermonde interpolation.

Sizes here are tiny (O(degree)), so everything is plain rational Gaussian
elimination with partial pivoting on exact scalars; in the exact backend the
results, ranks and singularity reports are exact.
"""

from __future__ import annotations

from .bipoly import BiPoly
from .scalars import QQ, Field


class SingularMatrixError(ValueError):
    def __init__(self, pivot_col: int):
        super().__init__(f"singular system: rank deficiency at pivot column {pivot_col}")
        self.pivot_col = pivot_col


class Mat:
    __slots__ = ("rows", "ncols", "field")

    def __init__(self, rows, field: Field = QQ):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = [[field.of(v) if isinstance(v, (int, str)) else v for v in r] for r in rows]
        self.ncols = ncols
        self.field = field

    @classmethod
    def zeros(cls, n: int, m: int, field: Field = QQ):
        z = field.of(0)
        return cls([[z] * m for _ in range(n)], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        z, o = field.of(0), field.of(1)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self) -> "Mat":
        return Mat([r[:] for r in self.rows], self.field)

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.field)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat([[-v for v in r] for r in self.rows], self.field)

    def scaled(self, c) -> "Mat":
        c = self.field.of(c) if isinstance(c, (int, str)) else c
        return Mat([[v * c for v in r] for r in self.rows], self.field)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            bt = other.transpose().rows
            return Mat([[_dot(r, c) for c in bt] for r in self.rows], self.field)
        if isinstance(other, PolyVec):
            if self.ncols != len(other):
                raise ValueError(f"shape mismatch {self.shape} @ vec({len(other)})")
            out = []
            for r in self.rows:
                acc = BiPoly.zero(self.field)
                for coef, p in zip(r, other.entries):
                    if not self.field.is_zero(coef):
                        acc = acc + p * coef
                out.append(acc)
            return PolyVec(out)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            self.field.eq(a, b) for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return "Mat(" + "; ".join(" ".join(str(v) for v in r) for r in self.rows) + ")"

    def rank(self) -> int:
        """Exact rank by Gaussian elimination (exact backend)."""
        work = [r[:] for r in self.rows]
        n, m = self.nrows, self.ncols
        rank = 0
        for col in range(m):
            piv = next((i for i in range(rank, n) if not self.field.is_zero(work[i][col])), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            pval = work[rank][col]
            for i in range(rank + 1, n):
                f = work[i][col] / pval
                if not self.field.is_zero(f):
                    work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
            rank += 1
            if rank == n:
                break
        return rank


def _dot(r, c):
    acc = None
    for a, b in zip(r, c):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def solve_exact(A: Mat, B: Mat) -> Mat:
    """Solve A @ X = B by rational Gaussian elimination; exact on the exact backend.

    Raises SingularMatrixError naming the pivot column where rank collapses.
    """
    A.field.check_same(B.field)
    n = A.nrows
    if A.ncols != n:
        raise ValueError("solve_exact needs a square matrix")
    if B.nrows != n:
        raise ValueError("right-hand side row count mismatch")
    field = A.field
    m = B.ncols
    work = [A.rows[i][:] + B.rows[i][:] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if not field.is_zero(work[i][col])), None)
        if piv is None:
            raise SingularMatrixError(col)
        work[col], work[piv] = work[piv], work[col]
        pval = work[col][col]
        work[col] = [v / pval for v in work[col]]
        for i in range(n):
            if i != col:
                f = work[i][col]
                if not field.is_zero(f):
                    work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return Mat([row[n : n + m] for row in work], field)


class PolyVec:
    """Column vector of BiPolys (degree-n vectors have n+1 entries, grlex order)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = list(entries)
        if not entries:
            raise ValueError("empty polynomial vector")
        f = entries[0].field
        for e in entries:
            f.check_same(e.field)
        self.entries = entries

    @property
    def field(self):
        return self.entries[0].field

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k) -> BiPoly:
        return self.entries[k]

    def __add__(self, other: "PolyVec") -> "PolyVec":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        return PolyVec([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        return PolyVec([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyVec([-a for a in self.entries])

    def scaled(self, c) -> "PolyVec":
        return PolyVec([p * c for p in self.entries])

    def mul_poly(self, p: BiPoly) -> "PolyVec":
        return PolyVec([e * p for e in self.entries])

    def apply(self, fn) -> "PolyVec":
        return PolyVec([fn(e) for e in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, PolyVec):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self.entries, other.entries))

    def __repr__(self):
        return "PolyVec[" + "; ".join(repr(e) for e in self.entries) + "]"


def monomial_vec(n: int, field: Field = QQ) -> PolyVec:
    """The graded-lex monomial column (x^n, x^{n-1}y, ..., y^n)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return PolyVec([BiPoly.monomial(n - k, k, 1, field) for k in range(n + 1)])


def graded_coeff_block(vec: PolyVec, degree: int) -> Mat:
    """Matrix of total-degree-`degree` coefficients of a PolyVec.

    Row k holds the coefficients of entry k against the monomials
    (x^degree, x^{degree-1}y, ..., y^degree).
    """
    field = vec.field
    rows = []
    for p in vec.entries:
        rows.append([p.coeff(degree - c, c) for c in range(degree + 1)])
    return Mat(rows, field)


def interpolate_2d(nodes_x, nodes_y, values: Mat) -> BiPoly:
    """Recover the unique BiPoly with deg_x < len(nodes_x), deg_y < len(nodes_y)
    matching values[r][s] = p(nodes_x[r], nodes_y[s]), by exact tensor-product
    Vandermonde solves."""
    field = values.field
    nodes_x = [field.of(v) if isinstance(v, (int, str)) else v for v in nodes_x]
    nodes_y = [field.of(v) if isinstance(v, (int, str)) else v for v in nodes_y]
    nx, ny = len(nodes_x), len(nodes_y)
    if values.shape != (nx, ny):
        raise ValueError(f"values shape {values.shape} does not match node counts ({nx},{ny})")
    for nodes, label in ((nodes_x, "x"), (nodes_y, "y")):
        seen = set()
        for v in nodes:
            if v in seen:
                raise ValueError(f"repeated {label} interpolation node {v}")
            seen.add(v)
    vx = Mat([[xv**i for i in range(nx)] for xv in nodes_x], field)
    vy = Mat([[yv**j for j in range(ny)] for yv in nodes_y], field)
    # values = Vx @ C @ Vy^T; solve for C in two steps
    half = solve_exact(vx, values)                       # C @ Vy^T
    coeff = solve_exact(vy, half.transpose()).transpose()  # C
    return BiPoly({(i, j): coeff[i, j] for i in range(nx) for j in range(ny)}, field)

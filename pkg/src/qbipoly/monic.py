"""Monic orthogonal polynomial vectors and three-term recurrence matrices.

Two independent routes produce the monic coefficient blocks G_{n,j}:

* ghat_oracle: expand D(x^{j-k} y^k) in the graded monomial basis, giving the
  exact degree blocks of the operator, and solve the triangular chain of
  linear systems that the eigen-equation imposes.  This is the authoritative
  construction (its output is re-verified against the eigen-equation).
* ghat_closed_form: the explicit closed-form entries (bidiagonal S_n,
  matrix T_n, scalar resolvent F_n).  These are kept verbatim as a
  cross-check layer; the discrepancy report surfaces any disagreement
  instead of patching it.

The recurrence layer (structure matrices, the explicit generalized inverse,
and the recursive generator) is built on oracle blocks throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import BiPoly
from .equation import EquationCoeffs, admissibility, apply_operator
from .linalg import Mat, PolyVec, monomial_vec, solve_exact
from .qcalc import QParam, qnum


def mat_E(n: int, j: int, qp: QParam, field) -> Mat:
    """Forward-difference structure matrix: Dq^j x^n = E_{n,j} x^{n-1}."""
    M = Mat.zeros(n + 1, n, field)
    if j == 1:
        for k in range(n):
            M.rows[k][k] = field.of(qnum(n - k, qp))
    elif j == 2:
        for k in range(1, n + 1):
            M.rows[k][k - 1] = field.of(qnum(k, qp))
    else:
        raise ValueError("axis must be 1 or 2")
    return M


def mat_K(n: int, j: int, qp: QParam, field) -> Mat:
    """Backward-difference structure matrix: Dq^{-1,j} x^n = K_{n,j} x^{n-1}."""
    q = qp.q
    M = Mat.zeros(n + 1, n, field)
    if j == 1:
        for k in range(n):
            M.rows[k][k] = field.of(q ** (1 - (n - k)) * qnum(n - k, qp))
    elif j == 2:
        for k in range(1, n + 1):
            M.rows[k][k - 1] = field.of(q ** (1 - k) * qnum(k, qp))
    else:
        raise ValueError("axis must be 1 or 2")
    return M


def mat_L(n: int, j: int, field) -> Mat:
    """Multiplication embedding: x_j x^n = L_{n,j} x^{n+1}; size (n+1)x(n+2)."""
    M = Mat.zeros(n + 1, n + 2, field)
    off = 0 if j == 1 else 1
    for k in range(n + 1):
        M.rows[k][k + off] = field.of(1)
    return M


def structure_matrices(n: int, qp: QParam, field) -> dict:
    return {
        "E1": mat_E(n, 1, qp, field), "E2": mat_E(n, 2, qp, field),
        "K1": mat_K(n, 1, qp, field), "K2": mat_K(n, 2, qp, field),
        "L1": mat_L(n, 1, field), "L2": mat_L(n, 2, field),
    }


# ---------------------------------------------------------------------------
# operator degree blocks and the coefficient-matching oracle
# ---------------------------------------------------------------------------

def operator_blocks(E: EquationCoeffs, j: int):
    """(M_jj, M_{j,j-1}, M_{j,j-2}): graded blocks of D on degree-j monomials.

    Row k of each block holds the coefficients of D(x^{j-k} y^k) against the
    monomial vector of the corresponding degree; the operator drops total
    degree by at most 2.
    """
    field = E.field
    rows_same, rows_m1, rows_m2 = [], [], []
    for k in range(j + 1):
        img = apply_operator(E, BiPoly.monomial(j - k, k, 1, field))
        for (i1, i2) in img.coeffs:
            if i1 + i2 > j or i1 + i2 < j - 2:
                raise AssertionError("operator moved a monomial outside the expected degrees")
        rows_same.append([img.coeff(j - c, c) for c in range(j + 1)])
        rows_m1.append([img.coeff(j - 1 - c, c) for c in range(j)])
        rows_m2.append([img.coeff(j - 2 - c, c) for c in range(j - 1)])
    same = Mat(rows_same, field)
    m1 = Mat(rows_m1, field) if j >= 1 else None
    m2 = Mat(rows_m2, field) if j >= 2 else None
    return same, m1, m2


class OracleError(ValueError):
    pass


def ghat_oracle(E: EquationCoeffs, n: int, verify: bool = True) -> list:
    """All monic coefficient blocks [G_{n,0}, ..., G_{n,n}] (G_{n,n} = I) by
    coefficient matching in the eigen-equation; exact."""
    field = E.field
    adm = admissibility(E)
    if not adm.admissible:
        raise OracleError(f"equation not admissible: {adm.failures}")
    lam_n = field.of(adm.eigenvalue(n))
    blocks = {j: operator_blocks(E, j) for j in range(n + 1)}
    ghat = [None] * (n + 1)
    ghat[n] = Mat.identity(n + 1, field)
    for d in range(n - 1, -1, -1):
        rhs = ghat[d + 1] @ blocks[d + 1][1]
        if d + 2 <= n:
            rhs = rhs + ghat[d + 2] @ blocks[d + 2][2]
        system = blocks[d][0] + Mat.identity(d + 1, field).scaled(lam_n)
        try:
            sol = solve_exact(system.transpose(), (-rhs).transpose())
        except ValueError as exc:
            raise OracleError(f"singular block at degree {d} (non-admissible equation?): {exc}")
        ghat[d] = sol.transpose()
    if verify:
        vec = assemble_vector(ghat, field)
        lam_vec = vec.scaled(lam_n)
        for k, p in enumerate(vec.entries):
            if not (apply_operator(E, p) + lam_vec.entries[k]).is_zero():
                raise OracleError(f"oracle vector entry {k} violates the eigen-equation at n={n}")
    return ghat


def assemble_vector(ghat: list, field) -> PolyVec:
    """P_n = sum_j G_{n,j} x^j from its coefficient blocks."""
    n = len(ghat) - 1
    total = None
    for j, G in enumerate(ghat):
        part = G @ monomial_vec(j, field)
        total = part if total is None else total + part
    return total


# ---------------------------------------------------------------------------
# explicit closed-form entries (cross-check layer)
# ---------------------------------------------------------------------------

def s_matrix_closed_form(E: EquationCoeffs, n: int) -> Mat:
    """The closed-form lower-bidiagonal S_n, entries s_{i,i} and s_{i+1,i}
    (1-based), size (n+1) x n; kept verbatim for the discrepancy report."""
    if n < 1:
        raise ValueError("S_n needs n >= 1")
    field = E.field
    qp = E.qp
    q = qp.q
    _, b1s, _ = E.sigma1()
    _, b2s, _ = E.sigma2()
    _, b3a, c3a, _ = E.cross_a()
    _, b3d, c3d, _ = E.cross_d()
    _, g1 = E.tau1()
    _, g2 = E.tau2()
    S = Mat.zeros(n + 1, n, field)
    for i in range(1, n + 1):
        S.rows[i - 1][i - 1] = field.of(
            qnum(n - i + 1, qp) * (g1 + q ** (1 + i - n) * b1s * qnum(n - i, qp)
                                   + c3a * qnum(i - 1, qp) + q ** (2 - n) * c3d * qnum(i - 1, qp))
        )
        S.rows[i][i - 1] = field.of(
            qnum(i - 1, qp) * (b2s * q ** (3 - i) * qnum(i - 2, qp)
                               + qnum(n + 1 - i, qp) * (b3a + b3d * q ** (2 - n)) + g2)
        )
    return S


def t_matrix_closed_form(E: EquationCoeffs, n: int) -> Mat:
    """The closed-form T_n (degree-drop-2 block), size (n+1) x (n-1)."""
    if n < 2:
        raise ValueError("T_n needs n >= 2")
    field = E.field
    qp = E.qp
    q = qp.q
    _, _, c1s = E.sigma1()
    _, _, c2s = E.sigma2()
    d3a = E.cross_a()[3]
    d3d = E.cross_d()[3]
    return (mat_E(n, 2, qp, field) @ mat_E(n - 1, 1, qp, field)).scaled(d3a) \
        + (mat_K(n, 1, qp, field) @ mat_E(n - 1, 1, qp, field)).scaled(c1s * q) \
        + (mat_K(n, 2, qp, field) @ mat_E(n - 1, 2, qp, field)).scaled(c2s * q) \
        + (mat_K(n, 2, qp, field) @ mat_K(n - 1, 1, qp, field)).scaled(d3d)


def s_matrix_operator(E: EquationCoeffs, n: int) -> Mat:
    """The true degree-drop-1 block of D on degree-n monomials (what the
    closed-form S_n is meant to express)."""
    return operator_blocks(E, n)[1]


def ghat_closed_form(E: EquationCoeffs, n: int, gn1_override: Mat | None = None,
               s_source: str = "closed-form") -> dict:
    """G_{n,n-1} and (n >= 2) G_{n,n-2} from the resolvent formulas.

    gn1_override feeds a different G_{n,n-1} (e.g. the oracle's) into the
    G_{n,n-2} formula; s_source chooses between the closed-form S entries
    and the operator-derived block, separating the resolvent check from the
    subdiagonal-entry question.
    """
    field = E.field
    adm = admissibility(E)
    lam = adm.eigenvalue
    smat = s_matrix_closed_form if s_source == "closed-form" else s_matrix_operator
    out = {}
    gn1 = smat(E, n).scaled(field.of(1 / (lam(n - 1) - lam(n))))
    out["G_n_nm1"] = gn1
    if n >= 2:
        use = gn1 if gn1_override is None else gn1_override
        inner = t_matrix_closed_form(E, n) + use @ smat(E, n - 1)
        out["G_n_nm2"] = inner.scaled(field.of(1 / (lam(n - 2) - lam(n))))
    return out


def ghat_discrepancy_report(E: EquationCoeffs, n_max: int) -> dict:
    """Entry-by-entry comparison of the closed-form blocks against the
    oracle blocks; agreement is measured, never presumed."""
    report = {}
    cache = {n: ghat_oracle(E, n, verify=False) for n in range(1, n_max + 2)}
    for n in range(1, n_max + 1):
        oracle_gn1 = cache[n][n - 1]
        closed = ghat_closed_form(E, n)
        diffs = _mat_diff(closed["G_n_nm1"], oracle_gn1)
        entry = {"G_n_nm1_matches": not diffs, "G_n_nm1_diffs": diffs}
        entry["S_operator_matches"] = not _mat_diff(
            ghat_closed_form(E, n, s_source="operator")["G_n_nm1"], oracle_gn1)
        if n >= 2:
            oracle_gn2 = cache[n][n - 2]
            paper_fed = ghat_closed_form(E, n)["G_n_nm2"]
            oracle_fed = ghat_closed_form(E, n, gn1_override=oracle_gn1)["G_n_nm2"]
            formula = ghat_closed_form(E, n, gn1_override=oracle_gn1, s_source="operator")["G_n_nm2"]
            entry["G_n_nm2_closedform_fed_matches"] = not _mat_diff(paper_fed, oracle_gn2)
            entry["G_n_nm2_closedformS_oraclefed_matches"] = not _mat_diff(oracle_fed, oracle_gn2)
            entry["G_n_nm2_formula_matches"] = not _mat_diff(formula, oracle_gn2)
            entry["G_n_nm2_formula_diffs"] = _mat_diff(formula, oracle_gn2)
        report[n] = entry
    return report


def _mat_diff(A: Mat, B: Mat) -> list:
    if A.shape != B.shape:
        return [("shape", A.shape, B.shape)]
    out = []
    for i in range(A.nrows):
        for j in range(A.ncols):
            if A[i, j] != B[i, j]:
                out.append(((i + 1, j + 1), A[i, j], B[i, j]))
    return out


# ---------------------------------------------------------------------------
# family container, recurrence matrices, recursive generation
# ---------------------------------------------------------------------------

@dataclass
class MonicFamily:
    equation: EquationCoeffs
    vectors: list  # PolyVec for degrees 0..N
    ghat: dict     # (n, j) -> Mat

    @property
    def N(self):
        return len(self.vectors) - 1

    def entry(self, n: int, k: int) -> BiPoly:
        """The monic solution with leading monomial x^{n-k} y^k."""
        return self.vectors[n][k]

    def block(self, n: int, j: int) -> Mat:
        return self.ghat[(n, j)]


def generate_monic_oracle(E: EquationCoeffs, N: int, extra_blocks: int = 0) -> MonicFamily:
    """Oracle family for degrees 0..N (blocks cached through N + extra)."""
    ghat = {}
    vectors = []
    field = E.field
    for n in range(N + 1 + extra_blocks):
        blocks = ghat_oracle(E, n)
        for j, G in enumerate(blocks):
            ghat[(n, j)] = G
        if n <= N:
            vectors.append(assemble_vector(blocks, field))
    return MonicFamily(E, vectors, ghat)


def ttr_matrices(family: MonicFamily, n: int, j: int) -> dict:
    """Recurrence matrices A_{n,j}, B_{n,j}, C_{n,j} from the coefficient
    blocks (explicit closed formulas, including the n = 0, 1 special cases)."""
    E = family.equation
    field = E.field
    A = mat_L(n, j, field)
    if n == 0:
        B = -(mat_L(0, j, field) @ family.block(1, 0))
        C = None
    else:
        B = family.block(n, n - 1) @ mat_L(n - 1, j, field) - mat_L(n, j, field) @ family.block(n + 1, n)
        if n == 1:
            C = -(mat_L(1, j, field) @ family.block(2, 0) + B @ family.block(1, 0))
        else:
            C = (family.block(n, n - 2) @ mat_L(n - 2, j, field)
                 - mat_L(n, j, field) @ family.block(n + 1, n - 1)
                 - B @ family.block(n, n - 1))
    return {"A": A, "B": B, "C": C}


def joint_L(n: int, field) -> Mat:
    return Mat(mat_L(n, 1, field).rows + mat_L(n, 2, field).rows, field)


def generalized_inverse_L(n: int, field) -> Mat:
    """The explicit left inverse D_n of the stacked L_n: first and last rows
    are unit, interior rows average the two blocks with halves."""
    D = Mat.zeros(n + 2, 2 * n + 2, field)
    half = field.of(1) / field.of(2)
    D.rows[0][0] = field.of(1)
    for i in range(1, n + 1):
        D.rows[i][i] = half
        D.rows[i][n + i] = half
    D.rows[n + 1][2 * n + 1] = field.of(1)
    return D


class RecurrenceMismatch(AssertionError):
    pass


def generate_monic_rf(E: EquationCoeffs, N: int, check_oracle: bool = True) -> MonicFamily:
    """Generate the family through the recursive formula driven by the joint
    recurrence stacks; asserts D_n L_n = I and (optionally) exact agreement
    with the oracle construction."""
    field = E.field
    oracle = generate_monic_oracle(E, N, extra_blocks=1)
    x = BiPoly.x(field)
    y = BiPoly.y(field)
    vectors = [PolyVec([BiPoly.const(1, field)])]
    prev = None
    for n in range(N):
        D = generalized_inverse_L(n, field)
        L = joint_L(n, field)
        if not (D @ L) == Mat.identity(n + 2, field):
            raise RecurrenceMismatch(f"generalized inverse fails D_n L_n = I at n={n}")
        tb = ttr_matrices(oracle, n, 1)
        tb2 = ttr_matrices(oracle, n, 2)
        Bn = Mat(tb["B"].rows + tb2["B"].rows, field)
        cur = vectors[n]
        stacked = PolyVec([p * x for p in cur.entries] + [p * y for p in cur.entries])
        rhs = stacked - (Bn @ cur)
        nxt = D @ rhs
        if n >= 1:
            Cn = Mat(tb["C"].rows + tb2["C"].rows, field)
            nxt = nxt - (D @ (Cn @ prev))
        prev = cur
        vectors.append(nxt)
    family = MonicFamily(E, vectors, oracle.ghat)
    if check_oracle:
        for n in range(N + 1):
            if not vectors[n] == oracle.vectors[n]:
                for k in range(n + 1):
                    if vectors[n][k] != oracle.vectors[n][k]:
                        delta = vectors[n][k] - oracle.vectors[n][k]
                        mono, coeff = delta.leading_term()
                        raise RecurrenceMismatch(
                            f"recursive formula disagrees with oracle at degree {n}, entry {k}: "
                            f"first differing coefficient at {mono}: {coeff}"
                        )
    return family


def gram_matrix(family: MonicFamily, n: int, m: int, functional) -> Mat:
    """Moment matrix L(x^m P_n^T): entry (r, c) integrates monomial r of
    degree m against entry c of the degree-n vector (float lane)."""
    E = family.equation
    vec = family.vectors[n]
    rows = []
    for r in range(m + 1):
        mono = BiPoly.monomial(m - r, r, 1, E.field)
        rows.append([functional(mono * p) for p in vec.entries])
    out_field = getattr(functional, "field", E.field)
    return Mat(rows, out_field)

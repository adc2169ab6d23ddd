import random
from fractions import Fraction

import pytest

from qbipoly.bipoly import BiPoly
from qbipoly.qcalc import (QDomain, QParam, SeriesError, dq1, dq2, dq_nm_at,
                           dq_nm_table, dq_poly, dqm1, dqm2, dqm_nm_at,
                           gauss_2f1_terminating, jackson_integral_1d,
                           jackson_integral_double, jackson_integral_interval,
                           jacobi_poly, kampe_de_feriet, phi_bivariate, phi_rs,
                           pochhammer_rising, qbinomial, qnum, qpochhammer,
                           qpochhammer_inf, verify_operator_relations)
from qbipoly.scalars import QQ, BackendMismatch, FloatField

x = BiPoly.x()
y = BiPoly.y()
F = Fraction


def test_qparam_validation():
    with pytest.raises(ValueError):
        QParam(F(3, 2))
    with pytest.raises(ValueError):
        QParam(F(0))


def test_qnum(qp):
    assert qnum(0, qp) == 0
    assert qnum(3, qp) == F(7, 4)
    assert qnum(-1, qp) == -2


def test_qpochhammer(qp):
    assert qpochhammer(F(1, 3), qp, 0) == 1
    assert qpochhammer(F(1, 2), qp, 2) == F(3, 8)
    assert qpochhammer(F(2), qp, 2) == 0  # second factor (1 - 2q) vanishes
    with pytest.raises(ValueError):
        qpochhammer(F(1), qp, -1)


def test_qpochhammer_polynomial_argument(qp):
    p = qpochhammer(x, qp, 2)  # (1 - x)(1 - x/2)
    assert p == (1 - x) * (BiPoly.const(1) - x * F(1, 2))


def test_qpochhammer_inf(qp):
    fld = FloatField(96)
    v = qpochhammer_inf(F(1, 2), qp, fld)
    ref = qpochhammer(F(1, 2), qp, 120)  # geometric tail below 2^-100
    assert fld.close(v, fld.of(ref))
    with pytest.raises(BackendMismatch):
        qpochhammer_inf(F(1, 2), qp, QQ)


def test_qbinomial(qp):
    assert qbinomial(5, 0, qp) == 1
    assert qbinomial(5, 5, qp) == 1
    assert qbinomial(2, 1, qp) == F(3, 2)
    with pytest.raises(ValueError):
        qbinomial(2, 3, qp)


def test_dq_on_monomials(qp):
    assert dq1(x * x, qp) == x * F(3, 2)           # [2]_q x
    assert dq1(BiPoly.const(5), qp).is_zero()
    assert dqm1(x * x, qp) == x * 3                 # (q+1)/q x
    assert dq2(y ** 3, qp) == y * y * F(7, 4)
    assert dqm2(y, qp) == BiPoly.const(1)


def test_dq_dispatch(qp):
    assert dq_poly(1, "forward", x * x, qp) == dq1(x * x, qp)
    assert dq_poly(2, "backward", y * y, qp) == dqm2(y * y, qp)
    with pytest.raises(ValueError):
        dq_poly(3, "forward", x, qp)


def test_grid_forms_match_polynomial_operators(qp):
    p = x * x * y + x * y * y * 3 + 7
    for n, m in [(1, 0), (0, 1), (2, 1), (1, 2)]:
        target = p
        for _ in range(n):
            target = dq1(target, qp)
        for _ in range(m):
            target = dq2(target, qp)
        got = dq_nm_at(lambda a, b: p.eval(a, b), F(2, 3), F(5, 7), qp, n, m)
        assert got == target.eval(F(2, 3), F(5, 7))

        back = p
        for _ in range(n):
            back = dqm1(back, qp)
        for _ in range(m):
            back = dqm2(back, qp)
        gotb = dqm_nm_at(lambda a, b: p.eval(a, b), F(2, 3), F(5, 7), qp, n, m)
        assert gotb == back.eval(F(2, 3), F(5, 7))


def test_grid_table_too_small(qp):
    with pytest.raises(ValueError):
        dq_nm_table([[F(1)]], F(1), F(1), qp, 1, 0)


def test_operator_relations_specific(qp):
    rep = verify_operator_relations(qp, x * x * y + 3)
    assert all(rep.values())
    rep = verify_operator_relations(qp, BiPoly.const(1))
    assert all(rep.values())


def test_operator_relations_random(qp):
    rng = random.Random(2024)
    for _ in range(20):
        coeffs = {(rng.randint(0, 2), rng.randint(0, 2)): F(rng.randint(-9, 9), rng.randint(1, 7))
                  for _ in range(4)}
        f = BiPoly(coeffs)
        g = BiPoly({(rng.randint(0, 2), rng.randint(0, 2)): F(rng.randint(-5, 5))
                    for _ in range(3)})
        assert all(verify_operator_relations(qp, f, g).values())


def test_backward_forward_duality(qp):
    f = x ** 3 * y + x * y * y - 2
    lhs = dqm1(f, qp)
    rhs = dq1(f, qp) + x * dq1(dqm1(f, qp), qp) * (1 - qp.q)
    assert lhs == rhs


# Jackson integration ---------------------------------------------------------

def test_jackson_constant(qp):
    N = 40
    v = jackson_integral_1d(lambda t: F(1), 1, qp, N, QQ)
    assert v == 1 - qp.q ** (N + 1)


def test_jackson_linear(qp):
    # int_0^1 t d_q t = 1/(1+q) = 2/3 up to the geometric tail
    N = 80
    v = jackson_integral_1d(lambda t: t, 1, qp, N, QQ)
    assert abs(v - F(2, 3)) < F(1, 10) ** 20


def test_jackson_odd_symmetric(qp):
    assert jackson_integral_interval(lambda t: t, -1, 1, qp, 30, QQ) == 0


def test_jackson_telescopes_q_derivative(qp):
    # int_0^a (Dq F) d_q t telescopes exactly to F(a) - F(a q^{N+1})
    Fpoly = x ** 3 + x * 2 + 1
    dF = dq1(Fpoly, qp)
    a = F(3, 4)
    N = 50
    v = jackson_integral_1d(lambda t: dF.eval(t, F(0)), a, qp, N, QQ)
    assert v == Fpoly.eval(a, F(0)) - Fpoly.eval(a * qp.q ** (N + 1), F(0))
    assert abs(v - (Fpoly.eval(a, F(0)) - Fpoly.eval(F(0), F(0)))) < F(1, 10) ** 12


def test_jackson_double_rectangle(qp):
    # constant over ([0,1] x [0,1]) with affine-in-y inner limits turned off
    dom = QDomain(F(0), F(1), (F(0), F(0)), (F(1), F(0)))
    N = 60
    v = jackson_integral_double(lambda a, b: F(1), dom, qp, N, QQ)
    assert abs(v - 1) < F(1, 10) ** 15


def test_jackson_double_affine_inner_limit(qp):
    # int_0^1 int_0^{2y} 1 d_qx d_qy = int_0^1 2y d_qy = 2/(1+q) = 4/3
    dom = QDomain(F(0), F(1), (F(0), F(0)), (F(0), F(2)))
    v = jackson_integral_double(lambda a, b: F(1), dom, qp, 60, QQ)
    assert abs(v - F(4, 3)) < F(1, 10) ** 14


# terminating series ----------------------------------------------------------

def brute_phi_rs(num, den, qp, z, kmax):
    """Independent term-by-term reference for r-phi-s (r = s + 1)."""
    total = F(0)
    for k in range(kmax + 1):
        t = F(1)
        for a in num:
            t *= qpochhammer(a, qp, k)
        for b in den:
            t = t / qpochhammer(b, qp, k)
        t = t / qpochhammer(qp.q, qp, k)
        total += t * z ** k
    return total


def test_phi_rs_single_term(qp):
    q = qp.q
    assert phi_rs([q ** 0, F(1, 3), F(1, 7)], [F(1, 5), F(1, 11)], qp, q) == 1


def test_phi_rs_two_term_expansion(qp):
    # 3phi2(q^-1, ABq^2, t; Aq, Cq; q, q) = 1 + q(1-1/q)(1-ABq^2)(1-t)/((1-Aq)(1-Cq)(1-q))
    q = qp.q
    A, B, C, t = F(1, 3), F(1, 5), F(-1, 2), F(2, 7)
    got = phi_rs([1 / q, A * B * q ** 2, t], [A * q, C * q], qp, q)
    expect = 1 + q * (1 - 1 / q) * (1 - A * B * q ** 2) * (1 - t) / ((1 - A * q) * (1 - C * q) * (1 - q))
    assert got == expect


def test_phi_rs_matches_brute_force(qp):
    rng = random.Random(5)
    q = qp.q
    for _ in range(10):
        m = rng.randint(0, 4)
        a2 = F(rng.randint(1, 9), rng.randint(10, 19))
        a3 = F(rng.randint(-9, 9), rng.randint(7, 15))
        b1 = F(rng.randint(1, 5), rng.randint(11, 19))
        b2 = F(rng.randint(-7, -1), rng.randint(9, 17))
        got = phi_rs([q ** -m, a2, a3], [b1, b2], qp, q)
        assert got == brute_phi_rs([q ** -m, a2, a3], [b1, b2], qp, q, m)


def test_phi_rs_denominator_pole(qp):
    q = qp.q
    with pytest.raises(SeriesError):
        phi_rs([q ** -3, F(1, 3), F(1, 7)], [1 / q, F(1, 5)], qp, q)


def test_phi_rs_nonterminating_rejected(qp):
    with pytest.raises(SeriesError):
        phi_rs([F(1, 3)], [F(1, 5)], qp, qp.q, max_terms=50)


def test_phi_bivariate_trivial(qp):
    q = qp.q
    v = phi_bivariate([F(1, 7)], [q ** 0], [q ** 0], [], [F(1, 3)], [F(1, 5)], qp, q, q)
    assert v == 1


def test_phi_bivariate_collapses_to_phi_rs(qp):
    q = qp.q
    n = 3
    a, b, c = F(1, 3), F(1, 5), F(-2, 7)
    # y-direction terminates immediately (q^0 parameter): double sum == single sum
    v2 = phi_bivariate([a], [q ** -n, b], [q ** 0], [], [c], [F(1, 11)], qp, q, q)
    # single-variable reference with the joint parameter folded in: (a;q)_{m}
    total = F(0)
    for m in range(n + 1):
        t = qpochhammer(a, qp, m) * qpochhammer(q ** -n, qp, m) * qpochhammer(b, qp, m)
        t = t / (qpochhammer(c, qp, m) * qpochhammer(q, qp, m))
        total += t * q ** m
    assert v2 == total


def test_phi_bivariate_brute_force(qp):
    q = qp.q
    n, m = 2, 3
    joint = F(1, 7)
    xz, yz = F(2, 3), F(3, 5)
    got = phi_bivariate([joint], [q ** -n], [q ** -m], [], [F(1, 3)], [F(1, 5)], qp,
                        xz, yz, tags=(1, 0, 2))
    total = F(0)
    for mm in range(n + 1):
        for nn in range(m + 1):
            t = qpochhammer(joint, qp, mm + nn) * qpochhammer(q ** -n, qp, mm) \
                * qpochhammer(q ** -m, qp, nn)
            t = t / (qpochhammer(F(1, 3), qp, mm) * qpochhammer(F(1, 5), qp, nn)
                     * qpochhammer(q, qp, mm) * qpochhammer(q, qp, nn))
            t *= xz ** mm * yz ** nn * q ** (1 * (mm * (mm - 1) // 2) + 2 * mm * nn)
            total += t
    assert got == total


# classical terminating series -------------------------------------------------

def test_pochhammer_rising():
    assert pochhammer_rising(F(3), 0) == 1
    assert pochhammer_rising(F(2), 3) == 24
    assert pochhammer_rising(F(-2), 3) == 0


def test_gauss_2f1_terminating():
    # 2F1(-2, 1; 1; z) = (1 - z)^2
    z = F(1, 3)
    assert gauss_2f1_terminating(F(-2), F(1), F(1), z) == (1 - z) ** 2
    with pytest.raises(SeriesError):
        gauss_2f1_terminating(F(1, 2), F(1, 3), F(1), z)


def test_jacobi_poly_degree_one():
    a, b = F(2), F(3)
    xv = F(1, 4)
    assert jacobi_poly(1, a, b, xv) == ((a + b + 2) * xv + a - b) / 2


def test_jacobi_poly_at_one():
    a, b = F(1), F(2)
    for n in range(5):
        expect = pochhammer_rising(a + 1, n) / pochhammer_rising(F(1), n)
        assert jacobi_poly(n, a, b, F(1)) == expect


def test_jacobi_poly_polynomial_argument():
    a, b = F(1), F(1)
    p = jacobi_poly(2, a, b, x)
    xv = F(2, 5)
    assert p.eval(xv, F(0)) == jacobi_poly(2, a, b, xv)


def test_kampe_de_feriet_trivial():
    assert kampe_de_feriet([F(5)], [F(0)], [F(0)], [], [F(2)], [F(3)], F(1, 3), F(1, 5)) == 1


def test_kampe_de_feriet_factorizes_without_joint_params():
    # no joint parameters: F = 1F0-style product of the two directions
    xv, yv = F(1, 3), F(1, 7)
    v = kampe_de_feriet([], [F(-2)], [F(-1)], [], [F(2)], [F(3)], xv, yv)
    fx = gauss_2f1_terminating(F(-2), F(1), F(2), xv * 0 + xv)  # 1F1-style via 2F1 with b=1
    # direct reference
    ref_x = sum(pochhammer_rising(F(-2), r) / (pochhammer_rising(F(2), r) * pochhammer_rising(F(1), r)) * xv ** r
                for r in range(3))
    ref_y = sum(pochhammer_rising(F(-1), s) / (pochhammer_rising(F(3), s) * pochhammer_rising(F(1), s)) * yv ** s
                for s in range(2))
    assert v == ref_x * ref_y

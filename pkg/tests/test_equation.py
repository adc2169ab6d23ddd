from fractions import Fraction

import pytest

from qbipoly.bipoly import BiPoly
from qbipoly.equation import (EquationCoeffs, ShapeViolation,
                              admissibility, apply_adjoint, apply_operator,
                              bilinear_selfadjoint_check,
                              check_hypergeometric_form, derived_coeffs)
from qbipoly.qcalc import dq1, qnum

F = Fraction
x = BiPoly.x()
y = BiPoly.y()


def test_preset_passes_form_check(equation):
    assert check_hypergeometric_form(equation)["ok"]


def test_zero_equation_is_well_formed(qp):
    z = BiPoly.zero()
    E = EquationCoeffs(qp, z, z, z, z, z, z)
    assert check_hypergeometric_form(E)["ok"]


def test_form_check_flags_quadratic_cross_term(equation):
    bad = EquationCoeffs(equation.qp, equation.c11, equation.c22,
                         equation.a12a + x * x, equation.a12d,
                         equation.b1, equation.b2)
    rep = check_hypergeometric_form(bad)
    assert not rep["ok"]
    assert not rep["a12a_bilinear"]
    assert any("A12a" in v for v in rep["violations"])
    with pytest.raises(ShapeViolation):
        bad.cross_a()


def test_extractors(equation, qp):
    a1, b1s, c1s = equation.sigma1()
    assert a1 == 1
    a2 = equation.sigma2()[0]
    assert a2 == 1
    f1, g1 = equation.tau1()
    q = qp.q
    abc = F(1, 3) * F(1, 4) * F(1, 5)
    assert f1 == q * (abc * q ** 3 - 1) / (q - 1)
    a3a = equation.cross_a()[0]
    assert a3a == a1 * q + f1 * (q - 1)
    assert equation.cross_d()[0] == a1


# admissibility ---------------------------------------------------------------

def test_admissibility_passes(adm):
    assert adm.admissible and not adm.failures


def test_eigenvalues(adm):
    assert adm.eigenvalue(0) == 0
    assert adm.eigenvalue(1) == F(-479, 480)
    values = [adm.eigenvalue(n) for n in range(21)]
    assert len(set(values)) == 21  # injective on the tested range


def test_admissibility_fails_on_perturbed_cross_term(equation):
    bad = EquationCoeffs(equation.qp, equation.c11, equation.c22, equation.a12a,
                         equation.a12d + x * y * F(1, 7), equation.b1, equation.b2)
    res = admissibility(bad)
    assert not res.admissible
    assert any("a3d" in msg for msg in res.failures)


def test_admissibility_structural_spectral_check(qp):
    # a1 = 1, f1 = q [1-m] at m = 2 makes the spectral condition fail
    q = qp.q
    f1 = q * qnum(-1, qp)
    a3a = q + f1 * (q - 1)
    E = EquationCoeffs(
        qp,
        BiPoly({(2, 0): q}),
        BiPoly({(0, 2): q}),
        BiPoly({(1, 1): a3a}),
        BiPoly({(1, 1): F(1)}),
        BiPoly({(1, 0): f1}),
        BiPoly({(0, 1): f1}),
    )
    res = admissibility(E, spectral_bound=0)  # bound too small to catch m=2
    assert not res.admissible
    assert any("structurally at m=2" in msg for msg in res.failures)


# operator application ---------------------------------------------------------

def test_operator_on_constant(equation):
    assert apply_operator(equation, BiPoly.const(1)).is_zero()


def test_operator_on_y(equation):
    f2, g2 = equation.tau2()
    assert apply_operator(equation, y) == y * f2 + BiPoly.const(g2)


def test_operator_degree_nonincrease(equation):
    for p in (x ** 3, x * x * y, x * y * y + x, y ** 4):
        img = apply_operator(equation, p)
        assert img.total_degree() <= p.total_degree()


def test_adjoint_of_zero(equation):
    assert apply_adjoint(equation, BiPoly.zero()).is_zero()


def test_adjoint_nontrivial(equation):
    # spot value: the adjoint is a different operator than D
    f = x * y
    assert apply_adjoint(equation, f) != apply_operator(equation, f)


# propagation ------------------------------------------------------------------

def test_derived_identity_at_origin(equation):
    D = derived_coeffs(equation, 0, 0, lam=F(5, 7))
    assert D.polys() == equation.polys()
    assert D.mu == F(5, 7)


def test_derived_a12d_scaling(equation, qp):
    q = qp.q
    for k, l in [(1, 0), (0, 2), (2, 3)]:
        D = derived_coeffs(equation, k, l)
        assert D.a12d == equation.a12d / q ** (k + l)


def test_derived_mu_one_step(equation, adm):
    lam1 = adm.eigenvalue(1)
    D = derived_coeffs(equation, 1, 0, lam=lam1)
    f1 = equation.tau1()[0]
    assert D.mu == lam1 + f1


def test_derived_both_routes_agree_6x6(equation):
    for k in range(7):
        for l in range(7):
            derived_coeffs(equation, k, l)  # internal mismatch would raise


def test_derived_equation_governs_derived_solutions(equation, adm, oracle5):
    # Dq-differentiating a solution gives a solution of the derived equation
    # with spectral value mu^{(k,l)}
    lam3 = adm.eigenvalue(3)
    u = oracle5.entry(3, 1)
    for k, l in [(1, 0), (0, 1), (1, 1)]:
        D = derived_coeffs(equation, k, l, lam=lam3)
        v = u
        for _ in range(k):
            v = dq1(v, equation.qp)
        from qbipoly.qcalc import dq2

        for _ in range(l):
            v = dq2(v, equation.qp)
        assert (apply_operator(D, v) + v * D.mu).is_zero()


# weighted bilinear form --------------------------------------------------------

def test_bilinear_selfadjointness(equation, moments):
    left, right = bilinear_selfadjoint_check(equation, moments.integrate, x, y)
    with moments.field.workprec():
        scale = max(1, abs(left), abs(right))
        assert abs(left - right) / scale < moments.field.of(F(1, 10 ** 20))


def test_eigen_rayleigh_relation(equation, adm, moments, oracle5):
    # D u = -lambda u pointwise, so <D u, u> = -lambda <u, u>
    u = oracle5.entry(2, 1)
    lam = adm.eigenvalue(2)
    with moments.field.workprec():
        du_u = moments.integrate(apply_operator(equation, u) * u)
        uu = moments.integrate(u * u)
        assert abs(du_u + moments.field.of(lam) * uu) / abs(uu) < moments.field.of(F(1, 10 ** 20))

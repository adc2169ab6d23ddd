from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbipoly.bipoly import BiPoly, RationalFn, ratfn_equal
from qbipoly.scalars import BackendMismatch, FloatField

x = BiPoly.x()
y = BiPoly.y()


def rand_poly(rng, max_deg=3, max_terms=5):
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        coeffs[(i, j)] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return BiPoly(coeffs)


coeff_st = st.fractions(min_value=-10, max_value=10, max_denominator=9)
poly_st = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff_st, min_size=0, max_size=6
).map(BiPoly)


def test_difference_of_squares():
    assert (x + y) * (x - y) == x * x - y * y


def test_scaling_substitution():
    p = x * y
    assert p.scale_args(Fraction(1, 2), 1) == x * y * Fraction(1, 2)


def test_evaluation():
    p = x * x * y
    assert p.eval(2, 3) == 12


def test_zero_polynomial_has_empty_support():
    assert (x - x).coeffs == {}
    assert BiPoly.zero().total_degree() == -1


def test_no_stored_zero_coefficients():
    p = BiPoly({(1, 0): Fraction(0), (0, 1): Fraction(2)})
    assert (1, 0) not in p.coeffs


@settings(max_examples=40, deadline=None)
@given(poly_st, poly_st, poly_st)
def test_ring_axioms(p, r, s):
    assert (p + r) + s == p + (r + s)
    assert p * (r + s) == p * r + p * s
    assert (p * r) * s == p * (r * s)
    assert p * r == r * p


def test_power_and_division():
    p = (x + 1) ** 3
    assert p.coeff(2, 0) == 3
    assert (p / Fraction(3)).coeff(2, 0) == 1


def test_div_exact():
    p = (x + 1) * (y - x) * (y - x)
    q1 = p.div_exact(y - x)
    assert q1 == (x + 1) * (y - x)
    with pytest.raises(ValueError):
        (x * x + 1).div_exact(x + 1)


def test_classical_derivatives():
    p = x * x * y + y
    assert p.diff_x() == x * y * 2
    assert p.diff_y() == x * x + 1


def test_backend_mismatch_rejected():
    f64 = FloatField(64)
    pf = BiPoly({(1, 0): f64.of(1)}, f64)
    with pytest.raises(BackendMismatch):
        _ = pf + x


def test_float_backend_arithmetic():
    f = FloatField(96)
    p = BiPoly({(1, 0): f.of("0.5"), (0, 0): f.of(2)}, f)
    q2 = p * p
    assert f.close(q2.eval(f.of(2), f.of(0)), f.of(9))


def test_leading_term_grlex():
    p = x * y + y * y * y + x
    assert p.leading_term() == ((0, 3), Fraction(1))
    assert (x * y + x * x).leading_term()[0] == (2, 0)


# rational functions ---------------------------------------------------------

def test_ratfn_common_factor():
    z = x + 1
    f = RationalFn(x, y)
    g = RationalFn(x * z, y * z)
    assert ratfn_equal(f, g)


def test_ratfn_unequal():
    assert not ratfn_equal(RationalFn(x, y), RationalFn(y, x))


def test_ratfn_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFn(x, BiPoly.zero())


def test_ratfn_eval_and_arith():
    f = RationalFn(x + y, x - y)
    assert f.eval(Fraction(3), Fraction(1)) == 2
    g = f * (x - y)
    assert ratfn_equal(g, RationalFn.from_poly(x + y))
    h = f - f
    assert h.num.is_zero()


def test_ratfn_difference_quotients(qp):
    from qbipoly.qcalc import dq1_ratfn, dq2_ratfn

    f = RationalFn.from_poly(x * x)
    d = dq1_ratfn(f, qp)
    assert ratfn_equal(d, RationalFn.from_poly(x * Fraction(3, 2)))
    g = RationalFn(BiPoly.const(1), y)
    dg = dq2_ratfn(g, qp)
    # Dq (1/y) = (1/(qy) - 1/y)/((q-1)y) = -1/(q y^2)
    assert ratfn_equal(dg, RationalFn(BiPoly.const(-2), y * y))

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from equitoric.laurent import LaurentError, LaurentMatrix, LaurentPoly


def poly_strategy(nvars=2):
    term = st.tuples(
        st.tuples(*([st.integers(-3, 3)] * nvars)),
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
    )
    return st.lists(term, max_size=5).map(lambda terms: LaurentPoly(nvars, dict(terms)))


def make_poly(nvars, terms):
    return LaurentPoly(nvars, {tuple(e): Fraction(c) for e, c in terms})


def test_canonical_form_prunes_zeros():
    p = (
        LaurentPoly.monomial((1, 0), 1)
        + LaurentPoly.monomial((1, 0), -1)
        + LaurentPoly.monomial((0, 1), 2)
    )
    assert p.terms == {(0, 1): Fraction(2)}
    assert LaurentPoly.zero(2).is_zero
    assert (p - p).is_zero


def test_monomial_term():
    p = LaurentPoly.monomial((2, -1), Fraction(3, 2))
    assert p.monomial_term() == ((2, -1), Fraction(3, 2))
    q = p + LaurentPoly.constant(2, 1)
    assert q.monomial_term() is None


def test_arithmetic_examples():
    t0 = LaurentPoly.variable(2, 0)
    t1 = LaurentPoly.variable(2, 1)
    p = (t0 + t1) * (t0 - t1)
    assert p == make_poly(2, [((2, 0), 1), ((0, 2), -1)])
    assert t0 * LaurentPoly.monomial((-1, 0)) == LaurentPoly.constant(2, 1)


def test_scalar_multiplication():
    t0 = LaurentPoly.variable(1, 0)
    assert 2 * t0 == make_poly(1, [((1,), 2)])
    assert (t0 * Fraction(1, 2)).coefficient((1,)) == Fraction(1, 2)
    assert (t0 * 0).is_zero


def test_rejects_floats():
    with pytest.raises(LaurentError):
        LaurentPoly(1, {(1,): 0.5})


def test_evaluate():
    p = make_poly(2, [((1, -1), 2), ((0, 0), 1)])
    assert p.evaluate((Fraction(3), Fraction(2))) == 2 * Fraction(3, 2) + 1
    with pytest.raises(LaurentError):
        make_poly(1, [((-1,), 1)]).evaluate((Fraction(0),))


def test_divide_by_monomial():
    p = make_poly(1, [((2,), 4), ((1,), 2)])
    q = p.divide_by_monomial((1,), 2)
    assert q == make_poly(1, [((1,), 2), ((0,), 1)])


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def test_matrix_identity_and_product():
    i2 = LaurentMatrix.identity(2, 2)
    d = LaurentMatrix.diagonal_monomials([(1, 0), (0, 1)])
    assert i2 * d == d
    assert d * i2 == d


def test_matrix_determinant_and_adjugate():
    one = LaurentPoly.constant(1, 1)
    z = LaurentPoly.variable(1, 0)
    zero = LaurentPoly.zero(1)
    f = LaurentMatrix(1, [[one, z], [zero, one]])
    assert f.determinant() == one
    adj = f.adjugate()
    assert adj.rows[0][1] == -z
    # adjugate * matrix = det * identity
    prod = adj * f
    assert prod.rows[0][0] == one
    assert prod.rows[0][1].is_zero


def test_matrix_determinant_diag():
    d = LaurentMatrix.diagonal_monomials([(1,), (-1,)])
    assert d.determinant() == LaurentPoly.constant(1, 1)
    d2 = LaurentMatrix.diagonal_monomials([(1,), (1,)])
    assert d2.determinant() == LaurentPoly.monomial((2,))


def test_matrix_evaluate():
    d = LaurentMatrix.diagonal_monomials([(1, 0), (1, 1)])
    vals = d.evaluate((Fraction(2), Fraction(3)))
    assert vals == [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(6)]]


def test_matrix_shape_validation():
    one = LaurentPoly.constant(1, 1)
    with pytest.raises(LaurentError):
        LaurentMatrix(1, [[one, one]])
    with pytest.raises(LaurentError):
        LaurentMatrix(2, [[one]])

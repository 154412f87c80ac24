"""Ring axioms and substitution behavior of the sparse polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kr2kh.poly import (
    INHOMOGENEOUS,
    ONE,
    ZERO,
    MultiPoly,
    NotLinearIn,
    ZeroPolynomial,
    q_degree,
    solve_linear,
    substitute,
)

coeffs = st.one_of(
    st.integers(min_value=-9, max_value=9),
    st.fractions(min_value=-9, max_value=9, max_denominator=6),
)
monos = st.lists(
    st.tuples(st.integers(min_value=1, max_value=4), st.integers(1, 3)),
    max_size=3,
).map(lambda ps: tuple(sorted(dict(ps).items())))
polys = st.dictionaries(monos, coeffs, max_size=5).map(MultiPoly)


@given(polys, polys, polys)
@settings(max_examples=200, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p
    assert p * ONE == p
    assert p - p == ZERO


@given(polys, polys)
@settings(max_examples=100, deadline=None)
def test_subs_is_a_ring_map(p, q):
    image = {1: MultiPoly.var(5) - 2, 2: MultiPoly.const(3)}
    assert (p + q).subs(image) == p.subs(image) + q.subs(image)
    assert (p * q).subs(image) == p.subs(image) * q.subs(image)


@given(polys)
@settings(max_examples=100, deadline=None)
def test_scalar_and_negation(p):
    assert -(-p) == p
    assert p * 2 + p == p * 3
    assert p * Fraction(1, 2) * 2 == p
    assert p * 0 == ZERO


def test_zero_terms_are_dropped():
    p = MultiPoly({((1, 1),): 1, ((2, 1),): 0})
    assert p.terms == {((1, 1),): 1}
    assert MultiPoly.var(1) - MultiPoly.var(1) == ZERO
    assert not (ZERO).terms


def test_monomials_stay_sorted_and_merged():
    p = MultiPoly.var(3) * MultiPoly.var(1) * MultiPoly.var(3)
    assert list(p.terms) == [((1, 1), (3, 2))]


def test_division_deflates_to_integers():
    p = (MultiPoly.var(1) * 6 + 3) / 3
    assert p.terms == {((1, 1),): 2, (): 1}
    q = (MultiPoly.var(1) * 2) / 4
    assert q.terms == {((1, 1),): Fraction(1, 2)}
    assert p / 1 is p


def test_deflated():
    p = MultiPoly({(): Fraction(4, 2), ((1, 1),): Fraction(1, 3)})
    out = p.deflated()
    assert out.terms[()] == 2 and isinstance(out.terms[()], int)
    assert out.terms[((1, 1),)] == Fraction(1, 3)


def test_pow():
    x = MultiPoly.var(1)
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert (x + 1) ** 0 == ONE
    with pytest.raises(ValueError):
        (x + 1) ** -1


def test_as_univariate_regroups():
    x, y = MultiPoly.var(1), MultiPoly.var(2)
    p = x * x * y + x * 3 + y + 5
    parts = p.as_univariate(1)
    assert parts[2] == y
    assert parts[1] == MultiPoly.const(3)
    assert parts[0] == y + 5


def test_mod_squares():
    x, y = MultiPoly.var(1), MultiPoly.var(2)
    p = x * x * y + x * y + 7
    assert p.mod_squares() == x * y + 7


def test_q_degree():
    x, y = MultiPoly.var(1), MultiPoly.var(2)
    assert q_degree(x * y) == 4
    assert q_degree(x * x + x * y) == 4
    assert q_degree(MultiPoly.const(5)) == 0
    assert q_degree(x + 1) is INHOMOGENEOUS
    with pytest.raises(ZeroPolynomial):
        q_degree(ZERO)


def test_solve_linear():
    x, y = MultiPoly.var(1), MultiPoly.var(2)
    sol = solve_linear(x * 2 - y * 4 + 6, 1)
    assert sol[1] == y * 2 - 3
    assert substitute(x * 2 - y * 4 + 6, sol) == ZERO

    with pytest.raises(NotLinearIn):
        solve_linear(y + 1, 1)  # variable absent
    with pytest.raises(NotLinearIn):
        solve_linear(x * x + y, 1)  # quadratic
    with pytest.raises(NotLinearIn):
        solve_linear(x * y + y, 1)  # polynomial coefficient


def test_printing():
    x, y = MultiPoly.var(1), MultiPoly.var(2)
    assert str(ZERO) == "0"
    assert str(x - y) in ("z1 - z2", "-z2 + z1")
    assert str(x * x * 3) == "3*z1^2"
    assert str(ONE * -1) == "-1"

"""Exact rational matrices, ranks, complexes, and Laurent helpers."""

from fractions import Fraction

import pytest

from kr2kh.linalg import (
    BigradedComplex,
    BigradedDimTable,
    NotAComplex,
    QMatrix,
    homology,
    laurent_add,
    laurent_invert_var,
    laurent_mul,
    laurent_pow,
    laurent_str,
    rank,
)


def test_qmatrix_basics():
    m = QMatrix(2, 2)
    m.add(0, 0, 1)
    m.add(0, 0, 2)
    m.add(1, 1, Fraction(1, 2))
    m.add(0, 1, 5)
    m.add(0, 1, -5)  # cancels away
    assert m[0, 0] == 3
    assert m[0, 1] == 0
    assert (0, 1) not in m.entries
    assert m.transpose()[1, 1] == Fraction(1, 2)
    assert not m.is_zero()
    assert QMatrix(3, 4).is_zero()


def test_qmatrix_compose_and_scale():
    a = QMatrix.from_rows([[1, 2], [0, 1]])
    b = QMatrix.from_rows([[1, 0], [3, 1]])
    assert a.compose(b) == QMatrix.from_rows([[7, 2], [3, 1]])
    assert b.compose(a) == QMatrix.from_rows([[1, 2], [3, 7]])
    assert a.scale(2) == QMatrix.from_rows([[2, 4], [0, 2]])
    assert a.scale(0).is_zero()
    with pytest.raises(ValueError):
        a.compose(QMatrix(3, 3))


def test_rank():
    assert rank(QMatrix(5, 7)) == 0
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(QMatrix.from_rows([[1, 2], [2, 5]])) == 2
    frac = QMatrix.from_rows(
        [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 2), 1]]
    )
    assert rank(frac) == 1
    big = QMatrix(4, 4)
    for i in range(4):
        big.add(i, (i + 1) % 4, Fraction(i + 1, 7))
    assert rank(big) == 4


def test_two_term_complex_is_acyclic():
    # 0 -> Q -> Q -> 0 with the identity differential: empty table
    dims = {(0, 0): 1, (1, 0): 1}
    diffs = {(0, 0): QMatrix.from_rows([[1]])}
    table = homology(BigradedComplex(dims, diffs))
    assert table.data == {}
    assert table.poincare() == "0"


def test_check_rejects_nonsquaring_differential():
    dims = {(0, 0): 1, (1, 0): 1, (2, 0): 1}
    diffs = {
        (0, 0): QMatrix.from_rows([[1]]),
        (1, 0): QMatrix.from_rows([[1]]),
    }
    with pytest.raises(NotAComplex):
        BigradedComplex(dims, diffs).check()


def test_block_shape_validation():
    dims = {(0, 0): 2, (1, 0): 1}
    with pytest.raises(ValueError):
        BigradedComplex(dims, {(0, 0): QMatrix.from_rows([[1]])})


def test_dim_table_summaries():
    t = BigradedDimTable({(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1})
    assert t.rows() == [[0, 1, 1], [0, 3, 1], [2, 5, 1], [3, 9, 1]]
    assert t.euler() == {1: 1, 3: 1, 5: 1, 9: -1}
    assert t.poincare() == "q + q^3 + t^2*q^5 + t^3*q^9"
    assert t.mirror_q().data == {(0, -1): 1, (0, -3): 1, (2, -5): 1, (3, -9): 1}
    assert t == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1, (5, 5): 0}


def test_laurent_helpers():
    qplus = {1: 1, -1: 1}  # q + 1/q
    assert laurent_mul(qplus, qplus) == {2: 1, 0: 2, -2: 1}
    assert laurent_add(qplus, {1: -1}) == {-1: 1}
    assert laurent_pow(qplus, 0) == {0: 1}
    assert laurent_pow(qplus, 2) == laurent_mul(qplus, qplus)
    assert laurent_invert_var({3: 2, -1: 5}) == {-3: 2, 1: 5}
    assert laurent_str(qplus) == "q^-1 + q"
    assert laurent_str({}) == "0"
    assert laurent_str({0: -2, 2: 1}, "t") == "-2 + t^2"

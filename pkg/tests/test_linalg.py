from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nijenhuis import linalg
from nijenhuis.errors import InvariantError

ints = st.integers(-4, 4)
square3 = st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3)


def test_determinant_small():
    assert linalg.determinant([[1, 2], [3, 4]]) == -2
    assert linalg.determinant([[2, 0, 0], [0, Fraction(1, 2), 0], [0, 0, 3]]) == 3
    assert linalg.determinant([]) == 1


def test_inverse_of_singular_raises():
    with pytest.raises(InvariantError):
        linalg.inverse([[1, 2], [2, 4]])


def test_rank_and_span():
    assert linalg.rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert linalg.in_span([[1, 0, 1], [0, 1, 0]], [2, 3, 2])
    assert not linalg.in_span([[1, 0, 1]], [0, 0, 1])


def test_scalar_multiple_of_identity():
    assert linalg.scalar_multiple_of_identity([[3, 0], [0, 3]]) == 3
    assert linalg.scalar_multiple_of_identity([[3, 0], [0, 2]]) is None
    assert linalg.scalar_multiple_of_identity([[0, 1], [0, 0]]) is None


@given(square3)
def test_inverse_round_trip(m):
    if linalg.determinant(m) == 0:
        assert linalg.rank(m) < 3
        return
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(3)
    assert linalg.matmul(inv, m) == linalg.identity(3)


@given(square3, square3)
def test_determinant_is_multiplicative(a, b):
    assert linalg.determinant(linalg.matmul(a, b)) == linalg.determinant(a) * linalg.determinant(b)

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from quivpush.fields import PrimeField
from quivpush.linalg import matmul, rank, rank_field, rank_int


def test_rank_basics():
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=1, max_size=5), min_size=1, max_size=5)
       .filter(lambda rows: len({len(r) for r in rows}) == 1))
def test_bareiss_matches_field_elimination(rows):
    got = rank_int(rows)
    expect = rank_field([[Fraction(x) for x in row] for row in rows],
                        Fraction(0))
    assert got == expect


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=4),
                min_size=1, max_size=4)
       .filter(lambda rows: len({len(r) for r in rows}) == 1))
def test_big_prime_rank_matches_rational_rank(rows):
    # 0/1 matrices: any prime beyond the max minor magnitude is safe
    f = PrimeField(32003)
    modular = rank_field([[f.from_int(x) for x in row] for row in rows],
                         f.zero)
    assert modular == rank_int(rows)


def test_matmul():
    assert matmul([[1, 2]], [[3], [4]]) == [[11]]
    assert matmul([], [[1]]) == []

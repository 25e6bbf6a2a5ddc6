import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from assignbench import Assignment, CostMatrix, assignment_cost, new_cost_matrix, permutations, validate_assignment
from assignbench.errors import (
    CostOverflowError,
    DimensionMismatchError,
    NegativeCostError,
    NonIntegerCostError,
    NonSquareError,
    PermutationInvalidError,
)
from assignbench.model import INT64_MAX

from conftest import EXAMPLE_ROWS

square = st.integers(1, 6).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 1000), min_size=k, max_size=k), min_size=k, max_size=k)
)


def test_example_matrix_builds():
    m = new_cost_matrix(EXAMPLE_ROWS)
    assert m.size == 3
    assert m.entry(0, 2) == 7
    assert m.rows == ((9, 8, 7), (6, 5, 4), (3, 2, 1))


def test_single_cell():
    assert new_cost_matrix([[5]]).size == 1


def test_empty_matrix_is_allowed():
    assert new_cost_matrix([]).size == 0


@pytest.mark.parametrize("rows", [[[1, 2], [3, 4, 5]], [[1, 2, 3]], [[1], [2]]])
def test_non_square_rejected(rows):
    with pytest.raises(NonSquareError):
        new_cost_matrix(rows)


def test_negative_rejected():
    with pytest.raises(NegativeCostError):
        new_cost_matrix([[1, -1], [0, 0]])
    with pytest.raises(NegativeCostError):
        new_cost_matrix(np.array([[1, -1], [0, 0]]))


@pytest.mark.parametrize("bad", [1.5, 2.0, "3", True, None])
def test_non_integer_rejected(bad):
    with pytest.raises(NonIntegerCostError):
        new_cost_matrix([[bad, 0], [0, 0]])


def test_float_array_rejected():
    with pytest.raises(NonIntegerCostError):
        new_cost_matrix(np.zeros((2, 2)))


def test_entry_beyond_int64_rejected():
    with pytest.raises(CostOverflowError):
        new_cost_matrix([[INT64_MAX + 1]])


def test_input_is_copied():
    grid = [[1, 2], [3, 4]]
    m = new_cost_matrix(grid)
    grid[0][0] = 99
    assert m.entry(0, 0) == 1
    arr = np.array([[1, 2], [3, 4]])
    m2 = new_cost_matrix(arr)
    arr[0, 0] = 99
    assert m2.entry(0, 0) == 1
    with pytest.raises(ValueError):
        m2.array[0, 0] = 5


def test_equality_and_hash():
    a = new_cost_matrix([[1, 2], [3, 4]])
    b = CostMatrix(np.array([[1, 2], [3, 4]], dtype=np.uint8))
    assert a == b and hash(a) == hash(b)
    assert a != new_cost_matrix([[1, 2], [3, 5]])


@pytest.mark.parametrize("mapping,expected", [((0, 1, 2), 15), ((2, 0, 1), 15)])
def test_assignment_cost_example(example_matrix, mapping, expected):
    assert assignment_cost(example_matrix, Assignment(mapping)) == expected


def test_assignment_cost_zero():
    assert assignment_cost(new_cost_matrix([[0]]), [0]) == 0


def test_assignment_cost_errors(example_matrix):
    with pytest.raises(DimensionMismatchError):
        assignment_cost(example_matrix, [0, 1])
    with pytest.raises(PermutationInvalidError):
        assignment_cost(example_matrix, [0, 0, 1])


def test_assignment_cost_overflow():
    big = 2**62
    m = new_cost_matrix([[big, big], [big, big]])
    with pytest.raises(CostOverflowError):
        assignment_cost(m, [0, 1])


def test_validate_assignment():
    validate_assignment([1, 0, 2], 3)
    with pytest.raises(PermutationInvalidError) as e:
        validate_assignment([0, 0, 2], 3)
    assert e.value.kind == "duplicate"
    with pytest.raises(PermutationInvalidError) as e:
        validate_assignment([0, 1], 3)
    assert e.value.kind == "length"
    with pytest.raises(PermutationInvalidError) as e:
        validate_assignment([0, 3, 1], 3)
    assert e.value.kind == "out-of-range"


def test_assignment_rejects_non_permutation():
    with pytest.raises(PermutationInvalidError):
        Assignment((1, 1))


def _next_permutation(p):
    # Textbook successor in lexicographic order; independent of itertools.
    p = list(p)
    i = len(p) - 2
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return None
    j = len(p) - 1
    while p[j] <= p[i]:
        j -= 1
    p[i], p[j] = p[j], p[i]
    p[i + 1:] = reversed(p[i + 1:])
    return p


def test_permutations_k3():
    perms = [a.mapping for a in permutations(3)]
    assert len(perms) == 6
    assert perms[0] == (0, 1, 2)
    assert perms[-1] == (2, 1, 0)


def test_permutations_k1_and_k0():
    assert [a.mapping for a in permutations(1)] == [(0,)]
    assert [a.mapping for a in permutations(0)] == [()]


def test_permutations_k4_distinct():
    perms = [a.mapping for a in permutations(4)]
    assert len(perms) == 24
    assert len(set(perms)) == 24
    assert all(sorted(p) == [0, 1, 2, 3] for p in perms)


@pytest.mark.parametrize("k", range(8))
def test_permutations_count_and_order(k):
    perms = [a.mapping for a in permutations(k)]
    assert len(perms) == math.factorial(k)
    assert len(set(perms)) == len(perms)
    expected = list(range(k))
    for p in perms:
        assert list(p) == expected
        expected = _next_permutation(expected)
    assert expected is None or k == 0


def test_permutations_is_lazy():
    gen = permutations(20)
    assert next(gen).mapping == tuple(range(20))


@given(square, st.randoms(use_true_random=False))
def test_cost_independent_of_visit_order(rows, rnd):
    m = new_cost_matrix(rows)
    mapping = list(range(m.size))
    rnd.shuffle(mapping)
    order = list(range(m.size))
    rnd.shuffle(order)
    assert assignment_cost(m, mapping) == sum(rows[i][mapping[i]] for i in order)


@given(square, st.randoms(use_true_random=False))
def test_cost_bounds(rows, rnd):
    m = new_cost_matrix(rows)
    mapping = list(range(m.size))
    rnd.shuffle(mapping)
    assert 0 <= assignment_cost(m, mapping) <= m.size * m.max_entry()


def test_report_to_dict(example_matrix):
    from assignbench import solve_hungarian

    d = solve_hungarian(example_matrix).to_dict()
    assert set(d) == {"optimal_cost", "assignment", "nodes_expanded", "edges_generated",
                      "elapsed_ns", "certificate", "tree_stats"}
    assert d["certificate"] == {"row_potentials": [7, 4, 1], "col_potentials": [2, 1, 0]}


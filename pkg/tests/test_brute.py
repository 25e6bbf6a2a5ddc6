import math

import numpy as np
import pytest

from assignbench import assignment_cost, new_cost_matrix, permutations, solve_brute_force
from assignbench.brute import best_completion
from assignbench.errors import CostOverflowError, InstanceTooLargeError


def _all_costs(rows):
    k = len(rows)
    return [sum(rows[i][p[i]] for i in range(k)) for p in
            sorted({(a, b, c) for a in range(k) for b in range(k) for c in range(k) if len({a, b, c}) == 3})]


def test_example_matrix_picks_first_of_six_ties(example_matrix):
    r = solve_brute_force(example_matrix)
    assert r.optimal_cost == 15
    assert r.assignment.mapping == (0, 1, 2)
    assert r.nodes_expanded == 6


@pytest.mark.parametrize("c", [0, 7, 123456])
def test_single_cell(c):
    r = solve_brute_force(new_cost_matrix([[c]]))
    assert (r.optimal_cost, r.assignment.mapping, r.nodes_expanded) == (c, (0,), 1)


def test_small_instance(small_matrix):
    # enumeration oracle: lexicographic permutation costs
    assert _all_costs(small_matrix.rows) == [6, 11, 5, 9, 7, 6]
    r = solve_brute_force(small_matrix)
    assert r.optimal_cost == 5
    assert r.assignment.mapping == (1, 0, 2)


def test_empty_matrix():
    r = solve_brute_force(new_cost_matrix([]))
    assert r.optimal_cost == 0 and r.assignment.mapping == () and r.nodes_expanded == 1


def test_cap():
    m = new_cost_matrix(np.zeros((13, 13), dtype=int))
    with pytest.raises(InstanceTooLargeError):
        solve_brute_force(m)
    small = new_cost_matrix(np.zeros((4, 4), dtype=int))
    with pytest.raises(InstanceTooLargeError):
        solve_brute_force(small, max_size=3)
    assert solve_brute_force(small, max_size=None).optimal_cost == 0


def test_overflow():
    big = 2**62
    with pytest.raises(CostOverflowError):
        solve_brute_force(new_cost_matrix([[big, big], [big, big]]))


@pytest.mark.parametrize("seed", range(20))
def test_matches_enumeration_stream(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 7))
    m = new_cost_matrix(rng.integers(0, 20, (k, k)))
    costs = [assignment_cost(m, a) for a in permutations(k)]
    r = solve_brute_force(m)
    assert r.optimal_cost == min(costs)
    assert r.assignment == list(permutations(k))[costs.index(min(costs))]


@pytest.mark.parametrize("k", range(1, 8))
def test_factorial_scaling_of_counter(k):
    m1 = new_cost_matrix(np.ones((k, k), dtype=int))
    m2 = new_cost_matrix(np.ones((k + 1, k + 1), dtype=int))
    assert solve_brute_force(m1).nodes_expanded == math.factorial(k)
    assert solve_brute_force(m2).nodes_expanded == (k + 1) * solve_brute_force(m1).nodes_expanded


def test_deterministic(small_matrix):
    a, b = solve_brute_force(small_matrix), solve_brute_force(small_matrix)
    assert (a.optimal_cost, a.assignment) == (b.optimal_cost, b.assignment)


def test_best_completion(example_matrix, small_matrix):
    assert best_completion(example_matrix, (0,)) == 15
    assert best_completion(small_matrix, ()) == 5
    assert best_completion(small_matrix, (0,)) == 6
    assert best_completion(small_matrix, (0, 2, 1)) == 11

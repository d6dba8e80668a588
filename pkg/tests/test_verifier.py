"""
Tests de la validation adverse exhaustive
"""

import pytest

from eggdrop.models.schemas import BranchCapacities, Cap, DropOutcome, ProblemInstance
from eggdrop.services import capacity_core, verifier
from eggdrop.services.analytic_solver import solve_analytic
from eggdrop.services.verifier import (
    check_capacity_grid,
    check_optimality,
    check_oracle_grid,
    check_policy_trees,
    check_random_agreement,
    check_split_grid,
    check_trace_agreement,
    map_policy_tree,
    run_verification_suite,
    simulate,
)


def instance(n, k):
    return ProblemInstance(floors=n, items=k)


def floors(trace):
    return [drop.floor for drop in trace.drops]


def test_simulate_lowest_threshold():
    trace = simulate(instance(100, 2), 0)
    assert trace.identified == 0
    assert floors(trace) == [14, 1]
    assert trace.tests_used == 2
    assert trace.breaks_used == 2


def test_simulate_worst_case_of_break_branch():
    trace = simulate(instance(100, 2), 13)
    assert trace.identified == 13
    assert floors(trace) == [14] + list(range(1, 14))
    assert trace.tests_used == 14
    assert trace.breaks_used == 1


def test_simulate_top_floor():
    trace = simulate(instance(100, 2), 100)
    assert trace.identified == 100
    assert floors(trace) == [14, 27, 39, 50, 60, 69, 77, 84, 90, 95, 99, 100]
    assert all(drop.outcome == DropOutcome.SURVIVED for drop in trace.drops)
    assert trace.tests_used == 12


def test_simulate_single_floor():
    trace = simulate(instance(1, 1), 0)
    assert floors(trace) == [1]
    assert trace.drops[0].outcome == DropOutcome.BROKE
    assert trace.identified == 0


def test_simulate_rejects_out_of_range_threshold():
    with pytest.raises(ValueError):
        simulate(instance(10, 2), 11)


@pytest.mark.parametrize("n, k, leaves, max_tests", [(100, 2, 101, 14), (7, 3, 8, 3), (1, 4, 2, 1)])
def test_map_policy_tree_examples(n, k, leaves, max_tests):
    report = map_policy_tree(instance(n, k))
    assert report.violations == []
    assert report.total_leaves == leaves
    assert report.max_tests == max_tests
    assert report.nodes_visited <= 2 * (n + 1)


def test_perfect_tree_leaves_share_depth():
    assert map_policy_tree(instance(7, 3)).per_depth == {3: 8}


def test_worst_threshold_attains_budget():
    report = map_policy_tree(instance(100, 2))
    assert simulate(instance(100, 2), report.worst_h).tests_used == 14


@pytest.mark.parametrize("n, k", [(100, 2), (300, 4), (1, 1), (64, 1)])
def test_check_optimality(n, k):
    assert check_optimality(instance(n, k))


def test_check_optimality_guard():
    with pytest.raises(ValueError):
        check_optimality(instance(10 ** 6, 2))


def test_soundness_and_tightness_small_grid():
    for n in range(1, 41):
        for k in range(1, 7):
            problem = instance(n, k)
            t_star = solve_analytic(problem).t_star
            worst = 0
            for h in range(n + 1):
                trace = simulate(problem, h)
                assert trace.identified == h
                assert trace.tests_used <= t_star
                assert trace.breaks_used <= k
                worst = max(worst, trace.tests_used)
            assert worst == t_star


def test_tree_and_trace_histograms_agree():
    assert check_trace_agreement(32, 5).passed


def test_verification_suite_passes_on_small_grid():
    summary = run_verification_suite(max_floors=40, max_items=4, seed=7, samples=50)
    assert summary.passed
    assert [check.name for check in summary.checks] == [
        "capacity_grid", "split_grid", "oracle_grid", "random_agreement", "policy_tree", "trace_agreement",
    ]


def test_capacity_grid_passes():
    result = check_capacity_grid()
    assert result.passed, result.violations
    assert result.cases > 0


def test_capacity_grid_detects_broken_full_row(monkeypatch):
    monkeypatch.setattr(capacity_core, "capacity_full_row", lambda t, clamp=None: Cap(value=1 << t))
    result = check_capacity_grid()
    assert not result.passed
    assert any("capacity_full_row" in message for message in result.violations)


def test_capacity_grid_detects_broken_recurrence(monkeypatch):
    advance = capacity_core.advance_state

    def off_by_one(e, b, t, k):
        next_e, next_b, next_t = advance(e, b, t, k)
        return Cap(value=next_e.value + 1), next_b, next_t

    monkeypatch.setattr(capacity_core, "advance_state", off_by_one)
    assert not check_capacity_grid().passed


def test_split_grid_passes():
    result = check_split_grid()
    assert result.passed, result.violations


def test_split_grid_detects_swapped_branches(monkeypatch):
    split = verifier.split_state

    def swapped(e, b, t, k):
        branches = split(e, b, t, k)
        return BranchCapacities(
            e_stay=branches.e_break, b_stay=branches.b_break,
            e_break=branches.e_stay, b_break=branches.b_stay,
        )

    monkeypatch.setattr(verifier, "split_state", swapped)
    assert not check_split_grid().passed


def test_verification_suite_fails_when_a_capacity_grid_fails(monkeypatch):
    monkeypatch.setattr(capacity_core, "capacity_full_row", lambda t, clamp=None: Cap(value=1 << t))
    summary = run_verification_suite(max_floors=10, max_items=2, seed=0, samples=5)
    assert not summary.passed
    assert [check.name for check in summary.checks if not check.passed] == ["capacity_grid"]


@pytest.mark.slow
def test_acceptance_oracle_grid():
    result = check_oracle_grid(500, 8)
    assert result.passed, result.violations


@pytest.mark.slow
def test_acceptance_random_agreement():
    result = check_random_agreement(1000, seed=0)
    assert result.passed, result.violations


@pytest.mark.slow
def test_acceptance_policy_trees():
    result = check_policy_trees(300, 6)
    assert result.passed, result.violations


@pytest.mark.slow
def test_policy_trees_full_grid():
    result = check_policy_trees(512, 10)
    assert result.passed, result.violations
    assert result.cases == 512 * 10

"""
Validation adverse exhaustive de la politique
Simulation par seuil, cartographie O(N) de l'arbre de décision et suite
de vérifications contre les oracles
"""

import logging
import math
import random
import time
from collections import Counter
from typing import Dict, List, Optional

from eggdrop.config import Config
from eggdrop.models.schemas import (
    Cap,
    CheckResult,
    DropOutcome,
    PolicyMode,
    PolicyState,
    ProblemInstance,
    SimulationReport,
    SolvePhase,
    ThresholdTrace,
    VerificationSummary,
)
from eggdrop.services import capacity_core
from eggdrop.services.analytic_solver import minimal_certificate, solve_analytic
from eggdrop.services.baseline_solvers import (
    capacity_table,
    dp_slow_table,
    solve_binomial_bsearch,
    solve_dp_capacity,
    solve_dp_slow,
)
from eggdrop.services.capacity_core import ideal_tests
from eggdrop.services.policy_engine import (
    apply_outcome,
    init_policy,
    next_drop,
    resolved_threshold,
    run_policy,
    split_state,
)
from eggdrop.utils.contracts import ContractViolation
from eggdrop.utils.output_helper import format_duration

logger = logging.getLogger(__name__)

# clamp hors d'atteinte : les capacités de la grille restent exactes
EXACT_CLAMP = 1 << 512


def simulate(instance: ProblemInstance, h: int) -> ThresholdTrace:
    """Joue la politique contre le seuil h (un lâcher à f casse ssi f > h)"""
    if not 0 <= h <= instance.floors:
        raise ValueError(f"simulate exige 0 <= h <= N (h={h}, N={instance.floors})")

    def adversary(state: PolicyState, floor: int) -> DropOutcome:
        return DropOutcome.BROKE if floor > h else DropOutcome.SURVIVED

    final, drops = run_policy(instance, adversary)
    return ThresholdTrace(
        h=h,
        drops=drops,
        tests_used=len(drops),
        breaks_used=sum(1 for drop in drops if drop.outcome == DropOutcome.BROKE),
        identified=resolved_threshold(final),
    )


def map_policy_tree(instance: ProblemInstance) -> SimulationReport:
    """
    Parcours en profondeur de l'arbre de décision, chaque nœud visité une fois.

    La branche casse est explorée avant la branche survie, donc les feuilles
    apparaissent par seuil croissant : la contiguïté 0..N se vérifie sans table.
    """
    n, k = instance.floors, instance.items
    if n < 1:
        raise ValueError("map_policy_tree exige N >= 1")

    t_star = solve_analytic(instance).t_star
    report = SimulationReport(n=n, k=k, t_star=t_star)
    per_depth: Counter = Counter()
    expected_h = 0

    stack = [(init_policy(instance), 0, 0)]
    while stack:
        state, depth, breaks = stack.pop()
        report.nodes_visited += 1

        if state.mode == PolicyMode.RESOLVED:
            h = state.f_safe
            if h != expected_h:
                report.violations.append(f"feuille h={h} inattendue (attendu {expected_h})")
            expected_h = h + 1
            per_depth[depth] += 1
            report.total_leaves += 1
            if depth > report.max_tests:
                report.max_tests, report.worst_h = depth, h
            report.max_breaks = max(report.max_breaks, breaks)
            continue

        try:
            floor = next_drop(state)
            survived = apply_outcome(state, floor, DropOutcome.SURVIVED)
            broke = apply_outcome(state, floor, DropOutcome.BROKE)
        except ContractViolation as e:
            report.violations.append(f"nœud ({state.f_safe}, {state.f_break}) à profondeur {depth}: {e}")
            continue
        stack.append((survived, depth + 1, breaks))
        stack.append((broke, depth + 1, breaks + 1))

    report.per_depth = dict(sorted(per_depth.items()))
    if report.total_leaves != n + 1:
        report.violations.append(f"{report.total_leaves} feuilles au lieu de {n + 1}")
    if report.nodes_visited > 2 * (n + 1):
        report.violations.append(f"{report.nodes_visited} nœuds visités > {2 * (n + 1)}")
    if report.max_tests != t_star:
        report.violations.append(f"profondeur maximale {report.max_tests} != T*={t_star}")
    if report.max_breaks > k:
        report.violations.append(f"{report.max_breaks} casses sur un chemin > K={k}")
    return report


def check_optimality(instance: ProblemInstance) -> bool:
    """Vrai si l'arbre atteint exactement T* et si l'oracle lent est d'accord"""
    if instance.floors > Config.OPTIMALITY_MAX_FLOORS:
        raise ValueError(f"check_optimality limité à N <= {Config.OPTIMALITY_MAX_FLOORS}")

    t_star = solve_analytic(instance).t_star
    report = map_policy_tree(instance)
    if report.violations or report.max_tests != t_star:
        return False
    if Config.within_dp_slow_guard(instance.floors, instance.items):
        return solve_dp_slow(instance) == t_star
    return True


class _CheckRecorder:
    """Accumule les violations d'une vérification"""

    def __init__(self, name: str):
        self.result = CheckResult(name=name)

    def case(self) -> None:
        self.result.cases += 1

    def violation(self, message: str) -> None:
        self.result.violation_count += 1
        if len(self.result.violations) < Config.MAX_REPORTED_VIOLATIONS:
            self.result.violations.append(message)
        logger.warning(f"⚠️ {self.result.name}: {message}")

    def expect(self, condition: bool, message: str) -> None:
        if not condition:
            self.violation(message)


def _check_solver_bounds(recorder: _CheckRecorder, instance: ProblemInstance) -> int:
    """Bornes des phases et certificat de minimalité ; retourne T*"""
    n, k = instance.floors, instance.items
    outcome = solve_analytic(instance)
    recorder.expect(outcome.phase3_steps <= k, f"N={n} K={k}: {outcome.phase3_steps} pas en phase 3 > K")
    if n >= 1:
        envelope = -(-ideal_tests(n) // k)
        recorder.expect(
            outcome.phase2_splits <= envelope,
            f"N={n} K={k}: {outcome.phase2_splits} coupes en phase 2 > {envelope}",
        )
    if outcome.phase == SolvePhase.PHASE1:
        recorder.expect(2 ** outcome.t_star > n, f"N={n} K={k}: phase 1 avec 2^T* <= N")
    recorder.expect(minimal_certificate(instance, outcome.t_star), f"N={n} K={k}: T*={outcome.t_star} non minimal")
    return outcome.t_star


def _naive_capacity(t: int, k: int) -> int:
    """Somme directe des coefficients binomiaux, sans récurrence ni saturation"""
    return sum(math.comb(t, i) for i in range(1, k + 1))


def _capacity_monotonicity(recorder: _CheckRecorder) -> None:
    max_tests, max_items = Config.CAPACITY_GRID_MAX_TESTS, Config.CAPACITY_GRID_MAX_ITEMS
    rows = [
        [capacity_core.capacity_with_term(t, k, EXACT_CLAMP)[0].value for k in range(1, max_items + 2)]
        for t in range(max_tests + 2)
    ]
    for t in range(max_tests + 1):
        for k in range(1, max_items + 1):
            recorder.case()
            recorder.expect(rows[t + 1][k - 1] >= rows[t][k - 1], f"E({t + 1}, {k}) < E({t}, {k})")
            recorder.expect(rows[t][k] >= rows[t][k - 1], f"E({t}, {k + 1}) < E({t}, {k})")


def _full_row_collapse(recorder: _CheckRecorder) -> None:
    for t in range(Config.FULL_ROW_MAX_TESTS + 1):
        recorder.case()
        expected = (1 << t) - 1
        row = capacity_core.capacity_full_row(t)
        recorder.expect(row == Cap(value=expected), f"capacity_full_row({t}) = {row} != 2^{t} - 1")
        for k in sorted({max(t, 1), t + 1, 2 * t + 1}):
            capacity, _ = capacity_core.capacity_with_term(t, k, EXACT_CLAMP)
            recorder.expect(capacity.value == expected, f"E({t}, {k}) = {capacity.value} != 2^{t} - 1")


def _recurrence_equivalence(recorder: _CheckRecorder) -> None:
    for k in range(1, Config.CAPACITY_GRID_MAX_ITEMS + 1):
        capacity, boundary = capacity_core.capacity_with_term(k, k, EXACT_CLAMP)
        t = k
        for m in range(Config.CAPACITY_GRID_MAX_TESTS + 1):
            recorder.case()
            exact_capacity, exact_boundary = capacity_core.capacity_with_term(k + m, k, EXACT_CLAMP)
            recorder.expect(
                (capacity.value, boundary.value) == (exact_capacity.value, exact_boundary.value),
                f"K={k} après {m} avances: ({capacity.value}, {boundary.value}) != "
                f"({exact_capacity.value}, {exact_boundary.value})",
            )
            capacity, boundary, t = capacity_core.advance_state(capacity, boundary, t, k)


def _saturation_soundness(recorder: _CheckRecorder) -> None:
    for t in range(Config.CAPACITY_GRID_MAX_TESTS + 1):
        for k in range(1, Config.CAPACITY_GRID_MAX_ITEMS + 1):
            exact = _naive_capacity(t, k)
            for clamp in Config.SATURATION_CLAMPS:
                recorder.case()
                capacity, _ = capacity_core.capacity_with_term(t, k, clamp)
                recorder.expect(
                    capacity.saturated == (exact >= clamp),
                    f"E({t}, {k}) clamp={clamp}: saturé={capacity.saturated}, valeur exacte {exact}",
                )
                if capacity.saturated:
                    recorder.expect(capacity.value >= clamp, f"E({t}, {k}) saturé sous clamp={clamp}")
                else:
                    recorder.expect(capacity.value == exact, f"E({t}, {k}) = {capacity.value} != {exact}")


def _capacity_table_consistency(recorder: _CheckRecorder) -> None:
    table = capacity_table(Config.TABLE_GRID_MAX_TESTS, Config.TABLE_GRID_MAX_ITEMS)
    for t, row in enumerate(table):
        for k in range(1, Config.TABLE_GRID_MAX_ITEMS + 1):
            recorder.case()
            recorder.expect(row[k] == _naive_capacity(t, k), f"table de capacité: E[{t}][{k}] = {row[k]}")


def check_capacity_grid() -> CheckResult:
    """Monotonie, ligne complète, récurrence incrémentale, saturation et table de capacité"""
    recorder = _CheckRecorder("capacity_grid")
    for grid in (
        _capacity_monotonicity,
        _full_row_collapse,
        _recurrence_equivalence,
        _saturation_soundness,
        _capacity_table_consistency,
    ):
        try:
            grid(recorder)
        except ContractViolation as e:
            recorder.violation(f"{grid.__name__.lstrip('_')}: {e}")
    return recorder.result


def check_split_grid() -> CheckResult:
    """Identités des branches et parité de la division par deux à chaque séparation"""
    recorder = _CheckRecorder("split_grid")
    for t in range(1, Config.SPLIT_GRID_MAX_TESTS + 1):
        for k in range(1, min(t, Config.SPLIT_GRID_MAX_ITEMS) + 1):
            recorder.case()
            capacity, boundary = capacity_core.capacity_with_term(t, k, EXACT_CLAMP)
            b_stay = math.comb(t - 1, k)
            recorder.expect((capacity.value + b_stay - 1) % 2 == 0, f"t={t} k={k}: E + B_stay - 1 impair")
            try:
                split = split_state(capacity, boundary, t, k)
            except ContractViolation as e:
                recorder.violation(f"t={t} k={k}: {e}")
                continue
            expected = (
                _naive_capacity(t - 1, k),
                b_stay,
                _naive_capacity(t - 1, k - 1),
                math.comb(t - 1, k - 1),
            )
            actual = (split.e_stay.value, split.b_stay.value, split.e_break.value, split.b_break.value)
            recorder.expect(actual == expected, f"t={t} k={k}: séparation {actual} != {expected}")
    return recorder.result


def check_oracle_grid(max_floors: int, max_items: int) -> CheckResult:
    """Égalité des quatre solveurs sur 0 <= N <= max_floors, 1 <= K <= max_items"""
    recorder = _CheckRecorder("oracle_grid")
    slow_floors = min(max_floors, Config.DP_SLOW_MAX_FLOORS)
    slow_items = min(max_items, Config.DP_SLOW_MAX_ITEMS)
    slow = dp_slow_table(slow_floors, slow_items)

    for n in range(max_floors + 1):
        for k in range(1, max_items + 1):
            recorder.case()
            instance = ProblemInstance(floors=n, items=k)
            try:
                t_star = _check_solver_bounds(recorder, instance)
            except ContractViolation as e:
                recorder.violation(f"N={n} K={k}: {e}")
                continue
            answers = {"binomial-bsearch": solve_binomial_bsearch(instance)}
            if Config.within_dp_capacity_guard(n):
                answers["dp-capacity"] = solve_dp_capacity(instance)
            if n <= slow_floors and k <= slow_items:
                answers["dp"] = slow[k][n]
            for algo, value in answers.items():
                recorder.expect(value == t_star, f"N={n} K={k}: {algo}={value} != analytic={t_star}")
    return recorder.result


def check_random_agreement(samples: int, seed: int) -> CheckResult:
    """Analytique contre recherche binaire binomiale sur des instances aléatoires"""
    recorder = _CheckRecorder("random_agreement")
    rng = random.Random(seed)
    for _ in range(samples):
        recorder.case()
        # N log-uniforme pour couvrir toutes les échelles
        n = min(rng.randint(1, 10 ** rng.randint(1, 18)), Config.VERIFY_SAMPLE_MAX_FLOORS)
        k = rng.randint(1, Config.VERIFY_SAMPLE_MAX_ITEMS)
        instance = ProblemInstance(floors=n, items=k)
        try:
            t_star = _check_solver_bounds(recorder, instance)
        except ContractViolation as e:
            recorder.violation(f"N={n} K={k}: {e}")
            continue
        baseline = solve_binomial_bsearch(instance)
        recorder.expect(baseline == t_star, f"N={n} K={k}: binomial-bsearch={baseline} != analytic={t_star}")
    return recorder.result


def check_policy_trees(max_floors: int, max_items: int) -> CheckResult:
    """Arbre complet correct, serré et linéaire pour chaque (N, K) de la grille"""
    recorder = _CheckRecorder("policy_tree")
    for n in range(1, max_floors + 1):
        for k in range(1, max_items + 1):
            recorder.case()
            report = map_policy_tree(ProblemInstance(floors=n, items=k))
            for message in report.violations:
                recorder.violation(f"N={n} K={k}: {message}")
    return recorder.result


def check_trace_agreement(max_floors: int, max_items: int) -> CheckResult:
    """Simulations indépendantes par seuil contre l'histogramme de l'arbre"""
    recorder = _CheckRecorder("trace_agreement")
    for n in range(1, max_floors + 1):
        for k in range(1, max_items + 1):
            recorder.case()
            instance = ProblemInstance(floors=n, items=k)
            t_star = solve_analytic(instance).t_star
            histogram: Dict[int, int] = Counter()
            try:
                for h in range(n + 1):
                    trace = simulate(instance, h)
                    histogram[trace.tests_used] += 1
                    recorder.expect(trace.identified == h, f"N={n} K={k}: h={h} identifié comme {trace.identified}")
                    recorder.expect(trace.tests_used <= t_star, f"N={n} K={k} h={h}: {trace.tests_used} tests > T*={t_star}")
                    recorder.expect(trace.breaks_used <= k, f"N={n} K={k} h={h}: {trace.breaks_used} casses > K")
            except ContractViolation as e:
                recorder.violation(f"N={n} K={k}: {e}")
                continue
            recorder.expect(max(histogram) == t_star, f"N={n} K={k}: pire cas {max(histogram)} != T*={t_star}")
            tree = map_policy_tree(instance)
            recorder.expect(dict(histogram) == tree.per_depth, f"N={n} K={k}: histogrammes arbre/traces différents")
    return recorder.result


def run_verification_suite(
    max_floors: int = Config.VERIFY_MAX_FLOORS,
    max_items: int = Config.VERIFY_MAX_ITEMS,
    seed: Optional[int] = None,
    samples: int = Config.VERIFY_SAMPLES,
) -> VerificationSummary:
    """Exécute toutes les vérifications et retourne la synthèse"""
    if max_floors < 1 or max_items < 1 or samples < 0:
        raise ValueError("verify exige max_floors >= 1, max_items >= 1 et samples >= 0")
    seed = Config.VERIFY_SEED if seed is None else seed

    logger.info(f"🚀 Vérification: N <= {max_floors}, K <= {max_items}, {samples} tirages (graine {seed})")
    started = time.perf_counter()
    checks: List[CheckResult] = []
    for check in (
        check_capacity_grid,
        check_split_grid,
        lambda: check_oracle_grid(max_floors, max_items),
        lambda: check_random_agreement(samples, seed),
        lambda: check_policy_trees(max_floors, max_items),
        lambda: check_trace_agreement(min(max_floors, Config.TRACE_GRID_MAX_FLOORS), max_items),
    ):
        result = check()
        status = "✅" if result.passed else "❌"
        logger.info(f"{status} {result.name}: {result.cases} cas, {result.violation_count} violations")
        checks.append(result)

    elapsed = time.perf_counter() - started
    logger.info(f"📊 Vérification terminée en {format_duration(elapsed)}")
    return VerificationSummary(checks=checks, elapsed_seconds=elapsed)

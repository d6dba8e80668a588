"""
Reconstruction en espace constant de la politique de lâcher optimale
À partir de (t, k, E, B) et des bornes F_safe / F_break, chaque nœud de l'arbre
de décision se calcule algébriquement depuis son parent
"""

import logging
from typing import Callable, List, Optional, Tuple

from eggdrop.models.schemas import (
    BranchCapacities,
    Cap,
    DropOutcome,
    DropRecord,
    PolicyMode,
    PolicyState,
    ProblemInstance,
)
from eggdrop.services.analytic_solver import solve_analytic
from eggdrop.services.capacity_core import ceil_log2, ideal_tests
from eggdrop.utils.contracts import ContractViolation, exact_div, require

logger = logging.getLogger(__name__)

OutcomeOracle = Callable[[PolicyState, int], DropOutcome]
StepObserver = Callable[[PolicyState, int, DropOutcome, PolicyState], None]


def init_policy(instance: ProblemInstance) -> PolicyState:
    """État racine : analytique si K contraint la recherche, bisect sinon"""
    n, k = instance.floors, instance.items
    if n < 1:
        raise ValueError("init_policy exige N >= 1 (aucun seuil à localiser)")

    outcome = solve_analytic(instance)
    if k >= ideal_tests(n):
        return PolicyState(t=outcome.t_star, k=k, f_safe=0, f_break=n + 1, mode=PolicyMode.BISECT)

    if outcome.terminal is not None:
        terminal = outcome.terminal
        return PolicyState(
            t=terminal.t, k=terminal.k, e=terminal.e, b=terminal.b,
            f_safe=0, f_break=n + 1, mode=PolicyMode.ANALYTIC,
        )

    # K = 1 : E(N, 1) = C(N, 1) = N
    return PolicyState(
        t=n, k=1, e=Cap(value=n), b=Cap(value=n),
        f_safe=0, f_break=n + 1, mode=PolicyMode.ANALYTIC,
    )


def split_state(e: Cap, b: Cap, t: int, k: int) -> BranchCapacities:
    """Isole les capacités des branches survie (t-1, k) et casse (t-1, k-1)"""
    if t < 1 or k < 1:
        raise ContractViolation(f"split_state exige t >= 1 et k >= 1 (t={t}, k={k})")
    if e.saturated or b.saturated:
        raise ContractViolation(f"split_state: état saturé (t={t}, k={k})")

    b_break = exact_div(b.value * k, t, "split_state.b_break")
    b_stay = b.value - b_break
    e_stay = exact_div(e.value + b_stay - 1, 2, "split_state.parity")
    e_break = e.value - e_stay - 1
    return BranchCapacities(
        e_stay=Cap(value=e_stay),
        b_stay=Cap(value=b_stay),
        e_break=Cap(value=e_break),
        b_break=Cap(value=b_break),
    )


def next_drop(state: PolicyState) -> int:
    """Prochain étage à tester, strictement dans (F_safe, F_break)"""
    if state.mode == PolicyMode.RESOLVED:
        raise ValueError("next_drop: état déjà résolu")
    require(state.gap >= 2, f"next_drop: intervalle épuisé ({state.f_safe}, {state.f_break})")

    if state.mode == PolicyMode.BISECT:
        return (state.f_safe + state.f_break) // 2

    branches = split_state(state.e, state.b, state.t, state.k)
    return min(state.f_break - 1, state.f_safe + branches.e_break.value + 1)


def _settle_mode(state: PolicyState) -> PolicyState:
    """Résolu si une seule issue reste, bisect si k couvre l'intervalle"""
    if state.gap == 1:
        return state.model_copy(update={"mode": PolicyMode.RESOLVED})
    if state.mode == PolicyMode.ANALYTIC and state.k >= ceil_log2(state.gap):
        return state.model_copy(update={"mode": PolicyMode.BISECT, "e": None, "b": None})
    return state


def apply_outcome(state: PolicyState, floor: int, outcome: DropOutcome) -> PolicyState:
    """Transition pure après le lâcher à `floor`"""
    if state.mode == PolicyMode.RESOLVED:
        raise ValueError("apply_outcome: état déjà résolu")
    if not state.f_safe < floor < state.f_break:
        raise ContractViolation(
            f"apply_outcome: étage {floor} hors de ({state.f_safe}, {state.f_break})"
        )
    require(state.t >= 1, f"apply_outcome: budget de tests épuisé à l'étage {floor}")

    broke = outcome == DropOutcome.BROKE
    update = {
        "t": state.t - 1,
        "k": state.k - 1 if broke else state.k,
        "f_safe": state.f_safe if broke else floor,
        "f_break": floor if broke else state.f_break,
    }
    if state.mode == PolicyMode.ANALYTIC:
        branches = split_state(state.e, state.b, state.t, state.k)
        update["e"] = branches.e_break if broke else branches.e_stay
        update["b"] = branches.b_break if broke else branches.b_stay

    child = _settle_mode(state.model_copy(update=update))
    if child.mode != PolicyMode.RESOLVED:
        require(child.k >= 1, f"apply_outcome: plus d'objets, intervalle ({child.f_safe}, {child.f_break})")
    if child.mode == PolicyMode.ANALYTIC:
        require(
            child.e.value >= child.gap - 1,
            f"apply_outcome: capacité {child.e.value} < {child.gap - 1} étages inconnus",
        )
    return child


def resolved_threshold(state: PolicyState) -> Optional[int]:
    """Plus haut étage sûr une fois la politique résolue"""
    if state.mode == PolicyMode.RESOLVED:
        return state.f_safe
    return None


def run_policy(
    instance: ProblemInstance,
    decide: OutcomeOracle,
    on_step: Optional[StepObserver] = None,
) -> Tuple[PolicyState, List[DropRecord]]:
    """Déroule la politique jusqu'à résolution avec les résultats fournis par `decide`"""
    state = init_policy(instance)
    drops: List[DropRecord] = []
    while state.mode != PolicyMode.RESOLVED:
        floor = next_drop(state)
        outcome = decide(state, floor)
        child = apply_outcome(state, floor, outcome)
        drops.append(DropRecord(floor=floor, outcome=outcome, t=child.t, k=child.k))
        if on_step is not None:
            on_step(state, floor, outcome, child)
        state = child
    return state, drops


def survival_schedule(instance: ProblemInstance) -> List[int]:
    """Étages visités quand chaque lâcher survit (14, 27, 39, ... pour N=100, K=2)"""
    _, drops = run_policy(instance, lambda state, floor: DropOutcome.SURVIVED)
    return [drop.floor for drop in drops]

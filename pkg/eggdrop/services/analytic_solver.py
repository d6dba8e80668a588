"""
Solveur analytique en trois phases pour T* = min{T : E(T, K) >= N}
Phase 1 : borne d'information, Phase 2 : recherche binaire bornée sur T = K·M,
Phase 3 : recherche linéaire incrémentale depuis l'état mis en cache
"""

import logging
from typing import Tuple

from eggdrop.models.schemas import (
    Algorithm,
    ProblemInstance,
    SolveOutcome,
    SolvePhase,
    TerminalState,
)
from eggdrop.services import baseline_solvers
from eggdrop.services.capacity_core import advance_state, capacity_with_term, ideal_tests
from eggdrop.utils.contracts import ContractViolation, require

logger = logging.getLogger(__name__)


def phase2_bound(n: int, k: int) -> int:
    """M_max = 2^⌈T_ideal / K⌉, par décalage de bits"""
    t_ideal = ideal_tests(n)
    if k >= t_ideal:
        raise ValueError(f"phase2_bound exige K < T_ideal (K={k}, T_ideal={t_ideal})")
    return 1 << -(-t_ideal // k)


def phase2_search(n: int, k: int) -> Tuple[TerminalState, int, int]:
    """
    Recherche binaire du plus petit M tel que E(K·M, K) >= N.

    Retourne (état caché exact pour T = K·(M*-1), M*, nombre de coupes).
    """
    low, high = 1, phase2_bound(n, k)
    cached = None
    splits = 0

    while low < high:
        mid = low + (high - low) // 2
        t_mid = k * mid
        e_mid, term = capacity_with_term(t_mid, k, n)
        splits += 1
        if e_mid.reaches(n):
            high = mid
        else:
            low = mid + 1
            # plus grande borne inférieure valide
            cached = TerminalState(t=t_mid, k=k, e=e_mid, b=term)

    if cached is None:
        raise ContractViolation(f"phase2_search: cache jamais alimenté (N={n}, K={k})")
    require(cached.t == k * (low - 1), f"phase2_search: cache incohérent (T={cached.t}, M*={low})")
    return cached, low, splits


def phase3_scan(n: int, k: int, cached: TerminalState) -> Tuple[TerminalState, int]:
    """Avance l'état caché pas à pas jusqu'à E >= N (au plus K pas)"""
    e, b, t = cached.e, cached.b, cached.t
    steps = 0
    while e.value < n:
        e, b, t = advance_state(e, b, t, k)
        steps += 1
        if steps > k:
            raise ContractViolation(f"phase3_scan: {steps} pas dépassent K={k} (N={n})")
    return TerminalState(t=t, k=k, e=e, b=b), steps


def solve_analytic(instance: ProblemInstance) -> SolveOutcome:
    """Calcule T* en O(log N) et exporte l'état terminal pour la politique"""
    n, k = instance.floors, instance.items

    if n <= 1 or k == 1:
        return SolveOutcome(t_star=n, phase=SolvePhase.TRIVIAL)

    t_ideal = ideal_tests(n)
    if k >= t_ideal:
        logger.debug(f"🔍 Phase 1: K={k} >= T_ideal={t_ideal}, recherche binaire classique")
        return SolveOutcome(t_star=t_ideal, phase=SolvePhase.PHASE1)

    cached, m_star, splits = phase2_search(n, k)
    terminal, steps = phase3_scan(n, k, cached)
    logger.debug(
        f"🔍 N={n} K={k}: M*={m_star}, {splits} coupes, {steps} pas, T*={terminal.t}"
    )
    return SolveOutcome(
        t_star=terminal.t,
        terminal=terminal,
        phase=SolvePhase.PHASE3,
        phase2_splits=splits,
        phase3_steps=steps,
    )


def solve_with(instance: ProblemInstance, algo: Algorithm) -> int:
    """T* par le solveur demandé"""
    if algo == Algorithm.ANALYTIC:
        return solve_analytic(instance).t_star
    if algo == Algorithm.BINOMIAL_BSEARCH:
        return baseline_solvers.solve_binomial_bsearch(instance)
    if algo == Algorithm.DP:
        return baseline_solvers.solve_dp_slow(instance)
    if algo == Algorithm.DP_CAPACITY:
        return baseline_solvers.solve_dp_capacity(instance)
    raise ValueError(f"Algorithme inconnu: {algo}")


def minimal_certificate(instance: ProblemInstance, t_star: int) -> bool:
    """Vérifie E(T*-1, K) < N <= E(T*, K) par appels directs"""
    n, k = instance.floors, instance.items
    if n == 0:
        return t_star == 0
    upper, _ = capacity_with_term(t_star, k, n)
    if not upper.reaches(n):
        return False
    if t_star == 0:
        return True
    lower, _ = capacity_with_term(t_star - 1, k, n)
    return not lower.reaches(n)

"""
Évaluation entière exacte de la capacité E(T, K) = somme_{i=1..K} C(T, i)
et de ses récurrences incrémentales, avec saturation contre une cible N
"""

import logging
from typing import Optional, Tuple

from eggdrop.config import Config
from eggdrop.models.schemas import Cap
from eggdrop.utils.contracts import ContractViolation, exact_div

logger = logging.getLogger(__name__)


def ceil_log2(n: int) -> int:
    """⌈log2(n)⌉ pour n >= 1, par longueur binaire"""
    if n < 1:
        raise ValueError(f"ceil_log2 exige n >= 1 (reçu {n})")
    return (n - 1).bit_length()


def ideal_tests(n: int) -> int:
    """Borne d'information ⌈log2(N+1)⌉, sans flottant"""
    if n < 1:
        raise ValueError(f"ideal_tests exige N >= 1 (reçu {n})")
    return n.bit_length()


def capacity_with_term(t: int, k: int, clamp: int) -> Tuple[Cap, Cap]:
    """
    Retourne (E(T, K), C(T, K)) exacts, ou E saturé dès que la somme atteint clamp.

    Sur sortie anticipée, le terme renvoyé est le dernier coefficient calculé,
    marqué saturé (le coefficient demandé n'a pas été calculé).
    """
    if t < 0 or k < 1 or clamp < 1:
        raise ValueError(f"capacity_with_term: entrées invalides (T={t}, K={k}, clamp={clamp})")

    total = 0
    term = 1
    for i in range(1, k + 1):
        # multiplier avant de diviser
        term = exact_div(term * (t - i + 1), i, "capacity_with_term")
        if term == 0:
            break
        total += term
        if total >= clamp:
            if i < k:
                return Cap(value=total, saturated=True), Cap(value=term, saturated=True)
            return Cap(value=total, saturated=True), Cap(value=term)
    return Cap(value=total), Cap(value=term)


def capacity_full_row(t: int, clamp: Optional[int] = None) -> Cap:
    """E(T, K) pour K >= T, soit 2^T - 1"""
    if t < 0:
        raise ValueError(f"capacity_full_row exige T >= 0 (reçu {t})")
    if clamp is not None and t >= clamp.bit_length():
        # 2^T - 1 >= 2^bit_length(clamp) - 1 >= clamp
        return Cap(value=clamp, saturated=True)
    if t > Config.CAP_PRECISION_BITS:
        return Cap(value=Config.cap_ceiling(), saturated=True)
    value = (1 << t) - 1
    if clamp is not None and value >= clamp:
        return Cap(value=value, saturated=True)
    return Cap(value=value)


def advance_state(e: Cap, b: Cap, t: int, k: int) -> Tuple[Cap, Cap, int]:
    """
    Avance (E(T, K), C(T, K), T) vers T+1.

    E' = 2E - B + 1 et B' = B + (B·K)/(T+1-K), division exacte.
    """
    if e.saturated or b.saturated:
        raise ContractViolation(f"advance_state: état saturé à T={t}")
    if k < 1 or t < 0:
        raise ValueError(f"advance_state: entrées invalides (T={t}, K={k})")

    next_e = 2 * e.value - b.value + 1
    if t >= k:
        next_b = b.value + exact_div(b.value * k, t + 1 - k, "advance_state")
    else:
        if b.value != 0:
            raise ContractViolation(f"advance_state: C({t}, {k}) doit valoir 0 (reçu {b.value})")
        next_b = 1 if t + 1 == k else 0
    return Cap(value=next_e), Cap(value=next_b), t + 1

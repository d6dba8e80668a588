"""
Solveurs de référence : DP minimax standard, récurrence de capacité, et
recherche binaire sur T avec évaluation binomiale en O(K)
Ils servent d'oracles de correction et de points de comparaison du benchmark
"""

import logging
from typing import Iterator, List, Optional

from eggdrop.config import Config
from eggdrop.models.schemas import ProblemInstance
from eggdrop.services.capacity_core import capacity_with_term, ideal_tests

logger = logging.getLogger(__name__)


def dp_slow_table(max_floors: int, max_items: int) -> List[List[int]]:
    """
    Table minimax complète W[k][n], 0 <= n <= max_floors, 0 <= k <= max_items.

    W(n, k) = 1 + min_{1<=x<=n} max(W(x-1, k-1), W(n-x, k)), W(0, .) = 0, W(n, 1) = n.
    La ligne k = 0 n'est définie qu'en n = 0.
    """
    if max_floors < 0 or max_items < 1:
        raise ValueError(f"dp_slow_table: bornes invalides ({max_floors}, {max_items})")

    table = [[0] * (max_floors + 1) for _ in range(max_items + 1)]
    table[1] = list(range(max_floors + 1))
    for k in range(2, max_items + 1):
        below, row = table[k - 1], table[k]
        for n in range(1, max_floors + 1):
            row[n] = 1 + min(max(below[x - 1], row[n - x]) for x in range(1, n + 1))
    return table


def solve_dp_slow(instance: ProblemInstance) -> int:
    """Oracle minimax en O(K·N²), réservé aux petites instances"""
    n, k = instance.floors, instance.items
    if not Config.within_dp_slow_guard(n, k):
        raise ValueError(
            f"solve_dp_slow limité à N <= {Config.DP_SLOW_MAX_FLOORS}, "
            f"K <= {Config.DP_SLOW_MAX_ITEMS} (reçu N={n}, K={k})"
        )
    return dp_slow_table(n, k)[k][n]


def iter_capacity_rows(max_items: int, clamp: Optional[int] = None) -> Iterator[List[int]]:
    """
    Lignes successives [E(t, 0), ..., E(t, max_items)] pour t = 0, 1, 2, ...

    E(t, k) = E(t-1, k) + E(t-1, k-1) + 1 ; avec clamp, les valeurs sont plafonnées.
    """
    row = [0] * (max_items + 1)
    while True:
        yield list(row)
        for k in range(max_items, 0, -1):
            value = row[k] + row[k - 1] + 1
            row[k] = value if clamp is None else min(value, clamp)


def capacity_table(max_tests: int, max_items: int) -> List[List[int]]:
    """Table exacte E[t][k] pour t <= max_tests, k <= max_items"""
    rows = iter_capacity_rows(max_items)
    return [next(rows) for _ in range(max_tests + 1)]


def solve_dp_capacity(instance: ProblemInstance) -> int:
    """Plus petit t avec E(t, K) >= N, par la récurrence de capacité"""
    n, k = instance.floors, instance.items
    if not Config.within_dp_capacity_guard(n):
        raise ValueError(
            f"solve_dp_capacity limité à N <= {Config.DP_CAPACITY_MAX_FLOORS} (reçu N={n})"
        )
    if n == 0:
        return 0
    # au-delà de T_ideal objets, la capacité ne change plus
    width = min(k, ideal_tests(n))
    for t, row in enumerate(iter_capacity_rows(width, clamp=n)):
        if row[width] >= n:
            return t
    raise AssertionError("unreachable")


def solve_binomial_bsearch(instance: ProblemInstance) -> int:
    """Recherche binaire de T dans [1, N] avec évaluation de E(T, K) en O(K)"""
    n, k = instance.floors, instance.items
    if n == 0:
        return 0

    low, high = 1, n
    while low < high:
        mid = low + (high - low) // 2
        e_mid, _ = capacity_with_term(mid, k, n)
        if e_mid.reaches(n):
            high = mid
        else:
            low = mid + 1
    return low

"""
Benchmark des solveurs : médiane de R répétitions en horloge monotone
"""

import logging
import statistics
import time
from typing import Iterable, List, Optional

from eggdrop.config import Config
from eggdrop.models.schemas import Algorithm, BenchRow, ProblemInstance
from eggdrop.services.analytic_solver import solve_with

logger = logging.getLogger(__name__)


def is_benchable(algo: Algorithm, instance: ProblemInstance) -> bool:
    """Écarte les solveurs dont le coût explose sur cette instance"""
    if algo == Algorithm.DP:
        return (
            instance.floors <= Config.BENCH_DP_MAX_FLOORS
            and Config.within_dp_slow_guard(instance.floors, instance.items)
        )
    if algo == Algorithm.DP_CAPACITY:
        return Config.within_dp_capacity_guard(instance.floors)
    return True


def time_solver(algo: Algorithm, instance: ProblemInstance, repeat: int) -> int:
    """Médiane des durées d'exécution en nanosecondes"""
    samples = []
    for _ in range(repeat):
        started = time.perf_counter_ns()
        solve_with(instance, algo)
        samples.append(time.perf_counter_ns() - started)
    return int(statistics.median(samples))


def run_bench(
    floors_list: Iterable[int],
    items_list: Iterable[int],
    repeat: int = Config.BENCH_REPEAT,
    algos: Optional[Iterable[Algorithm]] = None,
) -> List[BenchRow]:
    """Mesure chaque solveur sur chaque (N, K)"""
    if repeat < 1:
        raise ValueError("bench exige repeat >= 1")
    algos = list(algos or Algorithm)
    items_list = list(items_list)

    rows = []
    for floors in floors_list:
        for items in items_list:
            instance = ProblemInstance(floors=floors, items=items)
            for algo in algos:
                if not is_benchable(algo, instance):
                    logger.warning(f"⚠️ {algo.value} ignoré pour N={floors} K={items} (trop coûteux)")
                    continue
                median_ns = time_solver(algo, instance, repeat)
                logger.info(f"📊 {algo.value} N={floors} K={items}: {median_ns} ns")
                rows.append(BenchRow(algo=algo, floors=floors, items=items, median_ns=median_ns))
    return rows

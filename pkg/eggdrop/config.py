"""
Configuration centralisée pour eggdrop
Seuls les réglages ambiants (logs, garde-fous des oracles) viennent de l'environnement
"""

import os
from typing import List

from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration centralisée du solveur et de ses outils de vérification"""

    # Logs
    LOG_LEVEL = os.getenv('EGGDROP_LOG_LEVEL', 'WARNING').upper()

    # Domaine du problème
    MAX_FLOORS = 2 ** 63 - 1
    MAX_ITEMS = 2 ** 16
    CAP_PRECISION_BITS = 128

    # Garde-fous des oracles (coût quadratique)
    DP_SLOW_MAX_FLOORS = int(os.getenv('EGGDROP_DP_SLOW_MAX_FLOORS', 5000))
    DP_SLOW_MAX_ITEMS = int(os.getenv('EGGDROP_DP_SLOW_MAX_ITEMS', 16))
    OPTIMALITY_MAX_FLOORS = 10 ** 5

    # Vérification
    VERIFY_MAX_FLOORS = 300
    VERIFY_MAX_ITEMS = 6
    VERIFY_SAMPLES = 1000
    VERIFY_SEED = 0
    VERIFY_SAMPLE_MAX_FLOORS = 10 ** 18
    VERIFY_SAMPLE_MAX_ITEMS = 128
    TRACE_GRID_MAX_FLOORS = 64
    MAX_REPORTED_VIOLATIONS = 20
    CAPACITY_GRID_MAX_TESTS = 200
    CAPACITY_GRID_MAX_ITEMS = 20
    FULL_ROW_MAX_TESTS = 100
    TABLE_GRID_MAX_TESTS = 100
    TABLE_GRID_MAX_ITEMS = 16
    SATURATION_CLAMPS = (1, 10, 10 ** 6)
    SPLIT_GRID_MAX_TESTS = 60
    SPLIT_GRID_MAX_ITEMS = 12

    # Garde-fou de la récurrence de capacité (T* lignes)
    DP_CAPACITY_MAX_FLOORS = int(os.getenv('EGGDROP_DP_CAPACITY_MAX_FLOORS', 10 ** 6))

    # Benchmark
    BENCH_REPEAT = 5
    BENCH_DP_MAX_FLOORS = int(os.getenv('EGGDROP_BENCH_DP_MAX_FLOORS', 500))

    @classmethod
    def validate(cls) -> List[str]:
        """Valide la configuration et retourne les erreurs"""
        errors = []

        if cls.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"EGGDROP_LOG_LEVEL invalide: {cls.LOG_LEVEL}")
        if cls.DP_SLOW_MAX_FLOORS < 1:
            errors.append("EGGDROP_DP_SLOW_MAX_FLOORS doit être >= 1")
        if cls.DP_SLOW_MAX_ITEMS < 1:
            errors.append("EGGDROP_DP_SLOW_MAX_ITEMS doit être >= 1")
        if cls.DP_CAPACITY_MAX_FLOORS < 1:
            errors.append("EGGDROP_DP_CAPACITY_MAX_FLOORS doit être >= 1")
        if cls.BENCH_DP_MAX_FLOORS < 1:
            errors.append("EGGDROP_BENCH_DP_MAX_FLOORS doit être >= 1")

        return errors

    @classmethod
    def cap_ceiling(cls) -> int:
        """Plus grande valeur représentable d'une capacité non saturée"""
        return (1 << cls.CAP_PRECISION_BITS) - 1

    @classmethod
    def within_dp_slow_guard(cls, floors: int, items: int) -> bool:
        """Vérifie si une instance reste à l'échelle de l'oracle lent"""
        return floors <= cls.DP_SLOW_MAX_FLOORS and items <= cls.DP_SLOW_MAX_ITEMS

    @classmethod
    def within_dp_capacity_guard(cls, floors: int) -> bool:
        """Vérifie si la récurrence de capacité reste à une échelle raisonnable"""
        return floors <= cls.DP_CAPACITY_MAX_FLOORS

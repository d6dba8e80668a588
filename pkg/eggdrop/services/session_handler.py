"""
Sessions de politique pour la ligne de commande
Trace en lot contre un seuil connu, ou session interactive pilotée par l'utilisateur
"""

import logging
import sys
from typing import Callable, List, Optional, TextIO, Tuple

from eggdrop.models.schemas import DropOutcome, DropRecord, PolicyState, ProblemInstance
from eggdrop.services.policy_engine import resolved_threshold, run_policy
from eggdrop.services.verifier import simulate
from eggdrop.utils.output_helper import format_drop

logger = logging.getLogger(__name__)

YES_ANSWERS = ("y", "yes", "o", "oui")
NO_ANSWERS = ("n", "no", "non")


class SessionAborted(Exception):
    """Fin d'entrée avant la résolution du seuil"""


class PolicySessionHandler:
    """Pilote le moteur de politique un lâcher à la fois"""

    def __init__(self, input_fn: Optional[Callable[[str], str]] = None, output: Optional[TextIO] = None):
        self.input_fn = input_fn or input
        self.output = output or sys.stdout

        logger.debug("✅ PolicySessionHandler initialisé")

    def batch_trace(self, instance: ProblemInstance, crit: int) -> Tuple[int, List[DropRecord]]:
        """Trace complète contre le plus haut étage sûr `crit`"""
        logger.info(f"🚀 Trace en lot: N={instance.floors} K={instance.items} h={crit}")
        trace = simulate(instance, crit)
        for index, drop in enumerate(trace.drops, start=1):
            self._write(format_drop(index, drop))
        self._write(f"highest safe floor: {trace.identified}")
        return trace.identified, trace.drops

    def interactive_session(self, instance: ProblemInstance) -> int:
        """Demande le résultat de chaque lâcher et retourne le seuil identifié"""
        logger.info(f"🚀 Session interactive: N={instance.floors} K={instance.items}")
        final, drops = run_policy(instance, self._ask)
        threshold = resolved_threshold(final)
        self._write(f"highest safe floor: {threshold} (identified in {len(drops)} drops)")
        return threshold

    def _ask(self, state: PolicyState, floor: int) -> DropOutcome:
        self._write(f"remaining budget: t={state.t}, k={state.k}")
        while True:
            try:
                answer = self.input_fn(f"Drop from floor {floor} — did it break? [y/n] ")
            except EOFError:
                logger.error("❌ Fin d'entrée avant résolution")
                raise SessionAborted(f"entrée terminée au lâcher de l'étage {floor}")
            answer = answer.strip().lower()
            if answer in YES_ANSWERS:
                return DropOutcome.BROKE
            if answer in NO_ANSWERS:
                return DropOutcome.SURVIVED
            self._write("please answer y or n")

    def _write(self, line: str) -> None:
        self.output.write(line + "\n")

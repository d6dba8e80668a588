"""
Schémas de données du solveur eggdrop
Instances, capacités exactes, états de politique et rapports de vérification
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from eggdrop.config import Config


class SolvePhase(str, Enum):
    """Phase qui a produit T*"""
    TRIVIAL = "trivial"
    PHASE1 = "phase1"
    PHASE3 = "phase3"


class Algorithm(str, Enum):
    """Solveurs disponibles"""
    ANALYTIC = "analytic"
    BINOMIAL_BSEARCH = "binomial-bsearch"
    DP = "dp"
    DP_CAPACITY = "dp-capacity"


class PolicyMode(str, Enum):
    """Mode courant de la politique de lâcher"""
    ANALYTIC = "analytic"
    BISECT = "bisect"
    RESOLVED = "resolved"


class DropOutcome(str, Enum):
    """Résultat adverse d'un lâcher"""
    BROKE = "Broke"
    SURVIVED = "Survived"


class ProblemInstance(BaseModel):
    """Une instance (N étages, K objets)"""
    model_config = ConfigDict(frozen=True)

    floors: int = Field(..., ge=0, le=Config.MAX_FLOORS, description="Nombre d'étages N")
    items: int = Field(..., ge=1, le=Config.MAX_ITEMS, description="Nombre d'objets K")


class Cap(BaseModel):
    """Capacité entière exacte, éventuellement saturée contre une cible"""
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0, description="Valeur entière (exacte si non saturée)")
    saturated: bool = Field(False, description="Vrai si la valeur réelle est >= la cible de comparaison")

    def reaches(self, target: int) -> bool:
        """Vrai si la capacité couvre la cible"""
        return self.saturated or self.value >= target


class TerminalState(BaseModel):
    """État final (T, K, E, B) transmis au moteur de politique"""
    model_config = ConfigDict(frozen=True)

    t: int = Field(..., ge=0, description="Budget de tests T")
    k: int = Field(..., ge=1, description="Nombre d'objets K")
    e: Cap = Field(..., description="Capacité exacte E(T, K)")
    b: Cap = Field(..., description="Coefficient de bord exact C(T, K)")


class SolveOutcome(BaseModel):
    """Résultat du solveur analytique avec compteurs d'instrumentation"""
    t_star: int = Field(..., ge=0, description="Budget minimal T*")
    terminal: Optional[TerminalState] = Field(None, description="État terminal (phase 3 uniquement)")
    phase: SolvePhase = Field(..., description="Phase de sortie")
    phase2_splits: int = Field(0, ge=0, description="Nombre de coupes binaires en phase 2")
    phase3_steps: int = Field(0, ge=0, description="Nombre de pas incrémentaux en phase 3")


class BranchCapacities(BaseModel):
    """Capacités des sous-arbres survie / casse d'un nœud de décision"""
    model_config = ConfigDict(frozen=True)

    e_stay: Cap = Field(..., description="E(t-1, k)")
    b_stay: Cap = Field(..., description="C(t-1, k)")
    e_break: Cap = Field(..., description="E(t-1, k-1)")
    b_break: Cap = Field(..., description="C(t-1, k-1)")


class PolicyState(BaseModel):
    """État vivant de la politique de lâcher"""
    model_config = ConfigDict(frozen=True)

    t: int = Field(..., ge=0, description="Tests restants")
    k: int = Field(..., ge=0, description="Objets restants")
    e: Optional[Cap] = Field(None, description="E(t, k), absent en mode bisect")
    b: Optional[Cap] = Field(None, description="C(t, k), absent en mode bisect")
    f_safe: int = Field(..., ge=0, description="Plus haut étage connu sûr")
    f_break: int = Field(..., ge=1, description="Plus bas étage connu cassant")
    mode: PolicyMode = Field(..., description="Mode courant")

    @property
    def gap(self) -> int:
        """Nombre d'issues encore possibles"""
        return self.f_break - self.f_safe


class DropRecord(BaseModel):
    """Un lâcher et son résultat"""
    floor: int = Field(..., ge=1, description="Étage testé")
    outcome: DropOutcome = Field(..., description="Résultat observé")
    t: int = Field(..., ge=0, description="Tests restants après le lâcher")
    k: int = Field(..., ge=0, description="Objets restants après le lâcher")


class ThresholdTrace(BaseModel):
    """Trace complète d'une simulation pour un seuil h"""
    h: int = Field(..., ge=0, description="Plus haut étage sûr réel")
    drops: List[DropRecord] = Field(default_factory=list, description="Lâchers dans l'ordre")
    tests_used: int = Field(0, ge=0, description="Tests consommés")
    breaks_used: int = Field(0, ge=0, description="Objets cassés")
    identified: Optional[int] = Field(None, description="Seuil identifié par la politique")


class SimulationReport(BaseModel):
    """Cartographie complète de l'arbre de décision"""
    n: int = Field(..., description="Nombre d'étages")
    k: int = Field(..., description="Nombre d'objets")
    t_star: int = Field(..., description="Budget minimal calculé")
    max_tests: int = Field(0, description="Profondeur maximale de l'arbre")
    worst_h: int = Field(0, description="Un seuil atteignant max_tests")
    total_leaves: int = Field(0, description="Nombre de feuilles")
    per_depth: Dict[int, int] = Field(default_factory=dict, description="Histogramme des feuilles par profondeur")
    nodes_visited: int = Field(0, description="Nœuds visités par le parcours")
    max_breaks: int = Field(0, description="Casses maximales sur un chemin")
    violations: List[str] = Field(default_factory=list, description="Violations structurelles détectées")


class CheckResult(BaseModel):
    """Résultat d'une vérification de la suite"""
    name: str = Field(..., description="Nom de la vérification")
    cases: int = Field(0, description="Nombre de cas examinés")
    violations: List[str] = Field(default_factory=list, description="Violations (tronquées)")
    violation_count: int = Field(0, description="Nombre total de violations")

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


class VerificationSummary(BaseModel):
    """Synthèse de la commande verify"""
    checks: List[CheckResult] = Field(default_factory=list, description="Vérifications exécutées")
    elapsed_seconds: float = Field(0.0, description="Durée totale")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class BenchRow(BaseModel):
    """Une ligne du CSV de benchmark"""
    algo: Algorithm = Field(..., description="Solveur mesuré")
    floors: int = Field(..., description="N")
    items: int = Field(..., description="K")
    median_ns: int = Field(..., description="Médiane des durées en nanosecondes")


class CliConfig(BaseModel):
    """Arguments de la ligne de commande"""
    subcommand: str = Field(..., description="Sous-commande")
    floors: Optional[int] = Field(None, description="N")
    items: Optional[int] = Field(None, description="K")
    tests: Optional[int] = Field(None, description="T (sous-commande capacity)")
    algo: Algorithm = Field(Algorithm.ANALYTIC, description="Solveur")
    crit: Optional[int] = Field(None, description="Plus haut étage sûr pour une trace en lot")
    interactive: bool = Field(False, description="Session interactive")
    schedule: bool = Field(False, description="Affiche le calendrier de survie")
    json_output: bool = Field(False, description="Sortie JSON")
    max_floors: int = Field(Config.VERIFY_MAX_FLOORS, description="Borne N de la grille verify")
    max_items: int = Field(Config.VERIFY_MAX_ITEMS, description="Borne K de la grille verify")
    samples: int = Field(Config.VERIFY_SAMPLES, description="Instances aléatoires de verify")
    seed: Optional[int] = Field(None, description="Graine aléatoire")
    floors_list: List[int] = Field(default_factory=list, description="Valeurs N du benchmark")
    items_list: List[int] = Field(default_factory=list, description="Valeurs K du benchmark")
    repeat: int = Field(Config.BENCH_REPEAT, ge=1, description="Répétitions du benchmark")

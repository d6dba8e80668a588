"""
Helpers de sortie pour la ligne de commande
JSON et CSV sur la sortie standard, diagnostics sur la sortie d'erreur
"""

import csv
import json
import sys
from typing import Any, Dict, Iterable, List, Optional, TextIO

from pydantic import BaseModel

from eggdrop.models.schemas import BenchRow, DropOutcome, DropRecord, SimulationReport, VerificationSummary

BENCH_COLUMNS = ["algo", "floors", "items", "median_ns"]


def create_json_output(data: Any, stream: Optional[TextIO] = None) -> None:
    """Écrit un objet (dict ou modèle pydantic) en JSON sur la sortie standard"""
    stream = stream or sys.stdout
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    stream.write(json.dumps(data, ensure_ascii=False, indent=2) + "\n")


def create_error_output(message: str, exit_code: int, stream: Optional[TextIO] = None) -> int:
    """Écrit un message d'erreur sur la sortie d'erreur et retourne le code de sortie"""
    stream = stream or sys.stderr
    stream.write(f"error: {message}\n")
    return exit_code


def write_bench_csv(rows: Iterable[BenchRow], stream: Optional[TextIO] = None) -> None:
    """CSV algo,floors,items,median_ns"""
    writer = csv.writer(stream or sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for row in rows:
        writer.writerow([row.algo.value, row.floors, row.items, row.median_ns])


def format_drop(index: int, drop: DropRecord) -> str:
    """Ligne de trace d'un lâcher"""
    verdict = "broke" if drop.outcome == DropOutcome.BROKE else "survived"
    return f"drop {index}: floor {drop.floor} {verdict} (t={drop.t}, k={drop.k})"


def format_report(report: SimulationReport) -> List[str]:
    """Rendu texte d'un rapport de cartographie"""
    lines = [
        f"floors: {report.n}",
        f"items: {report.k}",
        f"t_star: {report.t_star}",
        f"max_tests: {report.max_tests}",
        f"worst_h: {report.worst_h}",
        f"total_leaves: {report.total_leaves}",
        f"nodes_visited: {report.nodes_visited}",
        f"max_breaks: {report.max_breaks}",
    ]
    lines.extend(f"depth {depth}: {count}" for depth, count in report.per_depth.items())
    lines.extend(f"violation: {message}" for message in report.violations)
    return lines


def summary_payload(summary: VerificationSummary) -> Dict[str, Any]:
    """Synthèse de vérification sérialisable, avec le verdict global"""
    payload = summary.model_dump(mode="json")
    payload["passed"] = summary.passed
    for check, dumped in zip(summary.checks, payload["checks"]):
        dumped["passed"] = check.passed
    return payload


def format_summary(summary: VerificationSummary) -> List[str]:
    """Rendu texte de la synthèse de vérification"""
    lines = []
    for check in summary.checks:
        status = "ok" if check.passed else "FAILED"
        lines.append(f"{check.name}: {status} ({check.cases} cases, {check.violation_count} violations)")
        lines.extend(f"  - {message}" for message in check.violations)
    lines.append(f"verify: {'PASSED' if summary.passed else 'FAILED'} in {format_duration(summary.elapsed_seconds)}")
    return lines


def format_duration(seconds: float) -> str:
    """
    Formate une durée en format lisible
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.1f}s"
    else:
        minutes = seconds / 60
        return f"{minutes:.1f}min"

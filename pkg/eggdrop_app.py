"""
Point d'entrée en ligne de commande d'eggdrop
Sous-commandes solve, capacity, policy, map, verify et bench
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from eggdrop.config import Config

# Configuration du logging (sortie d'erreur)
logging.basicConfig(level=Config.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

from eggdrop.models.schemas import Algorithm, CliConfig, ProblemInstance
from eggdrop.services.analytic_solver import solve_analytic, solve_with
from eggdrop.services.bench_handler import run_bench
from eggdrop.services.capacity_core import capacity_with_term
from eggdrop.services.policy_engine import survival_schedule
from eggdrop.services.session_handler import PolicySessionHandler, SessionAborted
from eggdrop.services.verifier import map_policy_tree, run_verification_suite, simulate
from eggdrop.utils.contracts import ContractViolation
from eggdrop.utils.output_helper import (
    create_error_output,
    create_json_output,
    format_report,
    format_summary,
    summary_payload,
    write_bench_csv,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

THRESHOLD_RULE = (
    "Thresholds are reported as the highest safe floor h in 0..N: "
    "an item dropped from floor f breaks iff f > h."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eggdrop",
        description="Exact minimax test budgets and optimal drop policies for the egg dropping problem.",
        epilog=THRESHOLD_RULE,
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    solve = subparsers.add_parser("solve", help="compute the minimum worst-case test budget T*")
    _add_instance_arguments(solve)
    solve.add_argument("--algo", choices=[a.value for a in Algorithm], default=Algorithm.ANALYTIC.value)
    solve.add_argument("--json", dest="json_output", action="store_true")

    capacity = subparsers.add_parser("capacity", help="evaluate the capacity E(T, K)")
    capacity.add_argument("--tests", type=int, required=True)
    capacity.add_argument("--items", type=int, required=True)
    capacity.add_argument("--json", dest="json_output", action="store_true")

    policy = subparsers.add_parser("policy", help="replay the optimal drop policy", epilog=THRESHOLD_RULE)
    _add_instance_arguments(policy)
    mode = policy.add_mutually_exclusive_group(required=True)
    mode.add_argument("--crit", type=int, help="highest safe floor h to play against")
    mode.add_argument("--interactive", action="store_true", help="answer each drop by hand")
    mode.add_argument("--schedule", action="store_true", help="print the all-survive drop schedule")
    policy.add_argument("--json", dest="json_output", action="store_true")

    tree = subparsers.add_parser("map", help="map the full decision tree")
    _add_instance_arguments(tree)
    tree.add_argument("--json", dest="json_output", action="store_true")

    verify = subparsers.add_parser("verify", help="run every invariant verification grid")
    verify.add_argument("--max-floors", type=int, default=Config.VERIFY_MAX_FLOORS)
    verify.add_argument("--max-items", type=int, default=Config.VERIFY_MAX_ITEMS)
    verify.add_argument("--samples", type=int, default=Config.VERIFY_SAMPLES)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--json", dest="json_output", action="store_true")

    bench = subparsers.add_parser("bench", help="time every solver and emit CSV")
    bench.add_argument("--floors-list", type=int, nargs="+", required=True)
    bench.add_argument("--items-list", type=int, nargs="+", required=True)
    bench.add_argument("--repeat", type=int, default=Config.BENCH_REPEAT)

    return parser


def _add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--floors", type=int, required=True, help="number of floors N")
    parser.add_argument("--items", type=int, required=True, help="number of items K")


def handle_solve(config: CliConfig) -> int:
    instance = ProblemInstance(floors=config.floors, items=config.items)
    if config.algo == Algorithm.ANALYTIC:
        outcome = solve_analytic(instance)
        t_star, phase = outcome.t_star, outcome.phase.value
        splits, steps = outcome.phase2_splits, outcome.phase3_steps
    else:
        t_star, phase, splits, steps = solve_with(instance, config.algo), None, None, None

    if config.json_output:
        create_json_output({
            "floors": instance.floors,
            "items": instance.items,
            "algo": config.algo.value,
            "t_star": t_star,
            "phase": phase,
            "phase2_splits": splits,
            "phase3_steps": steps,
        })
    else:
        print(t_star)
    return EXIT_OK


def handle_capacity(config: CliConfig) -> int:
    if config.tests < 0 or config.items < 1:
        raise ValueError("capacity exige --tests >= 0 et --items >= 1")
    e, term = capacity_with_term(config.tests, config.items, Config.cap_ceiling())
    if config.json_output:
        create_json_output({
            "tests": config.tests,
            "items": config.items,
            "capacity": e.value,
            "saturated": e.saturated,
            "boundary": None if term.saturated else term.value,
        })
    else:
        print(e.value if not e.saturated else f">= {Config.cap_ceiling()}")
    return EXIT_OK


def handle_policy(config: CliConfig) -> int:
    instance = ProblemInstance(floors=config.floors, items=config.items)
    if instance.floors < 1:
        raise ValueError("policy exige --floors >= 1")

    if config.schedule:
        floors = survival_schedule(instance)
        if config.json_output:
            create_json_output({"floors": instance.floors, "items": instance.items, "schedule": floors})
        else:
            print(" ".join(str(floor) for floor in floors))
        return EXIT_OK

    if config.interactive:
        PolicySessionHandler().interactive_session(instance)
        return EXIT_OK

    if config.json_output:
        create_json_output(simulate(instance, config.crit))
    else:
        PolicySessionHandler().batch_trace(instance, config.crit)
    return EXIT_OK


def handle_map(config: CliConfig) -> int:
    report = map_policy_tree(ProblemInstance(floors=config.floors, items=config.items))
    if config.json_output:
        create_json_output(report)
    else:
        print("\n".join(format_report(report)))
    return EXIT_OK if not report.violations else EXIT_VERIFICATION_FAILED


def handle_verify(config: CliConfig) -> int:
    summary = run_verification_suite(config.max_floors, config.max_items, config.seed, config.samples)
    if config.json_output:
        create_json_output(summary_payload(summary))
    else:
        print("\n".join(format_summary(summary)))
    return EXIT_OK if summary.passed else EXIT_VERIFICATION_FAILED


def handle_bench(config: CliConfig) -> int:
    rows = run_bench(config.floors_list, config.items_list, config.repeat)
    write_bench_csv(rows)
    return EXIT_OK


HANDLERS: Dict[str, Callable[[CliConfig], int]] = {
    "solve": handle_solve,
    "capacity": handle_capacity,
    "policy": handle_policy,
    "map": handle_map,
    "verify": handle_verify,
    "bench": handle_bench,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Exécute une sous-commande et retourne le code de sortie"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    for error in Config.validate():
        logger.warning(f"⚠️ {error}")

    try:
        config = CliConfig(**{key: value for key, value in vars(args).items() if value is not None})
        return HANDLERS[config.subcommand](config)
    except SessionAborted as e:
        return create_error_output(str(e), EXIT_USAGE)
    except ContractViolation as e:
        logger.error(f"❌ Contrat violé: {str(e)}")
        return create_error_output(f"contract violation: {e}", EXIT_VERIFICATION_FAILED)
    except ValueError as e:
        logger.error(f"❌ Arguments invalides: {str(e)}")
        parser.print_usage(sys.stderr)
        return create_error_output(str(e), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))

"""
Tests de la ligne de commande
"""

import io
import json

import pytest

from eggdrop.models.schemas import ProblemInstance
from eggdrop.services.analytic_solver import solve_analytic
from eggdrop.services.session_handler import PolicySessionHandler, SessionAborted
from eggdrop_app import run


class ScriptedInput:
    """Réponses préenregistrées, avec mémoire des invites"""

    def __init__(self, answers):
        self.answers = iter(answers)
        self.prompts = []

    def __call__(self, prompt):
        self.prompts.append(prompt)
        try:
            return next(self.answers)
        except StopIteration:
            raise EOFError


class ThresholdInput(ScriptedInput):
    """Répond comme un adversaire de seuil h"""

    def __init__(self, h):
        super().__init__([])
        self.h = h

    def __call__(self, prompt):
        self.prompts.append(prompt)
        floor = int(prompt.split("floor ")[1].split(" ")[0])
        return "y" if floor > self.h else "n"


def prompted_floors(scripted):
    return [int(prompt.split("floor ")[1].split(" ")[0]) for prompt in scripted.prompts]


def test_solve_prints_t_star(capsys):
    assert run(["solve", "--floors", "100", "--items", "2"]) == 0
    assert capsys.readouterr().out.strip() == "14"


def test_solve_json(capsys):
    assert run(["solve", "--floors", "1", "--items", "9", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t_star"] == 1
    assert payload["phase"] == "trivial"


def test_solve_json_round_trips_library_values(capsys):
    assert run(["solve", "--floors", str(10 ** 18), "--items", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"floors", "items", "algo", "t_star", "phase", "phase2_splits", "phase3_steps"}
    outcome = solve_analytic(ProblemInstance(floors=10 ** 18, items=3))
    assert payload == {
        "floors": 10 ** 18,
        "items": 3,
        "algo": "analytic",
        "t_star": outcome.t_star,
        "phase": outcome.phase.value,
        "phase2_splits": outcome.phase2_splits,
        "phase3_steps": outcome.phase3_steps,
    }
    assert payload["phase"] == "phase3"
    assert payload["phase3_steps"] <= 3


@pytest.mark.parametrize("algo", ["binomial-bsearch", "dp-capacity"])
def test_solve_json_baselines_carry_no_phase_counters(algo, capsys):
    assert run(["solve", "--floors", "1000", "--items", "2", "--algo", algo, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t_star"] == solve_analytic(ProblemInstance(floors=1000, items=2)).t_star == 45
    assert payload["phase"] is None
    assert payload["phase2_splits"] is None
    assert payload["phase3_steps"] is None


@pytest.mark.parametrize("algo", ["analytic", "binomial-bsearch", "dp", "dp-capacity"])
def test_solve_every_algorithm(algo, capsys):
    assert run(["solve", "--floors", "100", "--items", "2", "--algo", algo]) == 0
    assert capsys.readouterr().out.strip() == "14"


def test_capacity(capsys):
    assert run(["capacity", "--tests", "14", "--items", "2"]) == 0
    assert capsys.readouterr().out.strip() == "105"


def test_policy_batch_trace(capsys):
    assert run(["policy", "--floors", "100", "--items", "2", "--crit", "0"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("drop 1: floor 14 broke")
    assert lines[-1] == "highest safe floor: 0"


def test_policy_schedule(capsys):
    assert run(["policy", "--floors", "100", "--items", "2", "--schedule"]) == 0
    assert capsys.readouterr().out.strip() == "14 27 39 50 60 69 77 84 90 95 99 100"


def test_map_report(capsys):
    assert run(["map", "--floors", "100", "--items", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["total_leaves"] == 101
    assert payload["max_tests"] == 14


def test_verify_passes(capsys):
    code = run(["verify", "--max-floors", "20", "--max-items", "3", "--samples", "20", "--seed", "1", "--json"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_bench_csv(capsys):
    assert run(["bench", "--floors-list", "100", "--items-list", "2", "--repeat", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "algo,floors,items,median_ns"
    assert {line.split(",")[0] for line in lines[1:]} == {"analytic", "binomial-bsearch", "dp", "dp-capacity"}


@pytest.mark.parametrize("argv", [
    ["solve", "--floors", "100"],
    ["solve", "--floors", "100", "--items", "0"],
    ["policy", "--floors", "10", "--items", "2", "--crit", "3", "--interactive"],
    ["policy", "--floors", "10", "--items", "2", "--crit", "11"],
    ["bench", "--floors-list", "10", "--items-list", "2", "--repeat", "0"],
    ["solve", "--floors", str(10 ** 18), "--items", "2", "--algo", "dp-capacity"],
])
def test_argument_errors_exit_2(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_interactive_session_identifies_threshold():
    scripted = ScriptedInput(["n", "n", "y", "y"])
    handler = PolicySessionHandler(input_fn=scripted, output=io.StringIO())
    assert handler.interactive_session(ProblemInstance(floors=100, items=2)) == 27
    assert prompted_floors(scripted) == [14, 27, 39, 28]
    assert scripted.prompts[0] == "Drop from floor 14 — did it break? [y/n] "


def test_interactive_session_reports_budget_before_each_drop():
    scripted = ScriptedInput(["n", "n", "y", "y"])
    output = io.StringIO()
    PolicySessionHandler(input_fn=scripted, output=output).interactive_session(ProblemInstance(floors=100, items=2))
    budget_lines = [line for line in output.getvalue().splitlines() if line.startswith("remaining budget")]
    assert len(budget_lines) == len(scripted.prompts) == 4
    assert budget_lines == [
        "remaining budget: t=14, k=2",
        "remaining budget: t=13, k=2",
        "remaining budget: t=12, k=2",
        "remaining budget: t=11, k=1",
    ]
    assert output.getvalue().splitlines()[-1] == "highest safe floor: 27 (identified in 4 drops)"


def test_interactive_session_single_floor(capsys):
    scripted = ScriptedInput(["y"])
    assert PolicySessionHandler(input_fn=scripted).interactive_session(ProblemInstance(floors=1, items=1)) == 0
    assert prompted_floors(scripted) == [1]


def test_interactive_session_all_survive(capsys):
    scripted = ScriptedInput(["n", "n", "n"])
    assert PolicySessionHandler(input_fn=scripted).interactive_session(ProblemInstance(floors=7, items=3)) == 7
    assert len(scripted.prompts) == 3


def test_interactive_session_reprompts_on_malformed_answer(capsys):
    scripted = ScriptedInput(["maybe", "y"])
    assert PolicySessionHandler(input_fn=scripted).interactive_session(ProblemInstance(floors=1, items=1)) == 0
    assert prompted_floors(scripted) == [1, 1]
    assert "please answer y or n" in capsys.readouterr().out


def test_interactive_session_aborts_on_end_of_input(capsys):
    with pytest.raises(SessionAborted):
        PolicySessionHandler(input_fn=ScriptedInput([])).interactive_session(ProblemInstance(floors=5, items=2))


def test_interactive_end_of_input_exits_2(monkeypatch, capsys):
    monkeypatch.setattr("builtins.input", ScriptedInput([]))
    assert run(["policy", "--floors", "5", "--items", "2", "--interactive"]) == 2


@pytest.mark.parametrize("h", [0, 13, 27, 64, 100])
def test_interactive_and_batch_sequences_match(h, capsys):
    scripted = ThresholdInput(h)
    problem = ProblemInstance(floors=100, items=2)
    handler = PolicySessionHandler(input_fn=scripted)
    assert handler.interactive_session(problem) == h
    _, drops = handler.batch_trace(problem, h)
    assert prompted_floors(scripted) == [drop.floor for drop in drops]

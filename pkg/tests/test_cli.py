"""Command line behavior: output shapes, exit codes, error mapping."""

import json

import pytest

import qelim.cli as cli
from qelim import EngineError, STEP, decide, parse, Yes
from qelim.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


SAMPLE0 = "exists x. exists y. x+3 = y+1 & 8 = y+4"
SAMPLE1 = "forall x. x = 0 | exists y. x = y+1"


# --- decide ---------------------------------------------------------------------


def test_decide_json_payload(capsys):
    code, out, _ = run(capsys, "decide", SAMPLE0, "--json")
    assert code == 0
    assert json.loads(out) == {
        "qf_equivalent": "true",
        "result": "yes",
        "witnesses": [2, 4],
    }


def test_decide_text_and_evidence(capsys):
    code, out, _ = run(capsys, "decide", SAMPLE0)
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "decide", SAMPLE0, "--evidence")
    assert code == 0
    assert out == "yes\nwitnesses: 2 4\n"


def test_decide_universal_with_instantiations(capsys):
    code, out, _ = run(
        capsys, "decide", SAMPLE1, "--evidence", "--instantiate", "0", "--instantiate", "5"
    )
    assert code == 0
    assert out.splitlines() == [
        "yes",
        "universal evidence: instantiable at any value",
        "at 0: holds",
        "at 5: holds (witnesses: 4)",
    ]


def test_decide_failed_universal(capsys):
    code, out, _ = run(capsys, "decide", "forall x. x = 0", "--json")
    assert code == 1
    assert json.loads(out) == {
        "qf_equivalent": "~true",
        "result": "no",
        "counterexample": 1,
    }
    code, out, _ = run(capsys, "decide", "forall x. x = 0", "--evidence")
    assert code == 1
    assert out == "no\ncounterexample: 1\n"


def test_decide_open_formula_under_env(capsys):
    code, out, _ = run(capsys, "decide", "x = 0 | x = 2", "--env", "x=1", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["result"] == "no"
    assert "counterexample" not in payload
    code, out, _ = run(capsys, "decide", "x = 0 | x = 2", "--env", "x=2")
    assert (code, out) == (0, "yes\n")


def test_decide_qf_equivalent_reparses_and_agrees(capsys):
    cases = [
        (SAMPLE0, []),
        (SAMPLE1, []),
        ("exists y. x = y+2", ["x=1"]),
        ("forall y. y = x", ["x=0"]),
    ]
    for text, env in cases:
        argv = ["decide", text, "--json"]
        for pair in env:
            argv += ["--env", pair]
        code, out, _ = run(capsys, *argv)
        payload = json.loads(out)
        names = [p.split("=")[0] for p in env]
        values = tuple(int(p.split("=")[1]) for p in env)
        reparsed = parse(payload["qf_equivalent"], names)
        verdict = isinstance(decide(STEP, reparsed, values), Yes)
        assert verdict == (payload["result"] == "yes")
        assert (code == 0) == verdict


# --- eliminate -------------------------------------------------------------------


def test_eliminate_text_and_json(capsys):
    code, out, _ = run(capsys, "eliminate", "exists x. x+5 = y+3", "--env", "y=0")
    assert (code, out) == (0, "(y != 0) & (y != 1)\n")
    code, out, _ = run(capsys, "eliminate", "exists x. x+5 = y+3", "--env", "y=0", "--json")
    assert code == 0
    assert json.loads(out) == {"qf_equivalent": "(y != 0) & (y != 1)"}


# --- oracle -----------------------------------------------------------------------


def test_oracle_agreement(capsys):
    code, out, _ = run(capsys, "oracle", "exists x. x = 5")
    assert code == 0
    assert out.splitlines() == ["oracle: yes", "decide: yes", "agreement: yes"]
    code, out, _ = run(capsys, "oracle", "false")
    assert code == 1
    assert out.splitlines() == ["oracle: no", "decide: no", "agreement: yes"]


def test_oracle_disagreement_is_internal(monkeypatch, capsys):
    monkeypatch.setattr(cli, "oracle_decide", lambda phi, env: False)
    code, out, err = run(capsys, "oracle", "exists x. x = 5")
    assert code == 3
    assert "internal inconsistency" in err
    assert out.splitlines()[-1] == "agreement: no"


# --- split -------------------------------------------------------------------------


def test_split_counterexample(capsys):
    code, out, _ = run(capsys, "split", "x = 0 | exists y. x = y+2")
    assert (code, out) == (1, "counterexample: 1\n")
    code, out, _ = run(capsys, "split", "x = 0 | exists y. x = y+2", "--json")
    assert json.loads(out) == {"result": "counterexample", "counterexample": 1}
    assert code == 1


def test_split_tautology(capsys):
    code, out, _ = run(capsys, "split", "x = 0 | x != 0")
    assert (code, out) == (0, "forall: holds for all values\n")
    code, out, _ = run(capsys, "split", "x = 0 | x != 0", "--json")
    assert json.loads(out) == {"result": "forall"}
    assert code == 0


def test_split_needs_exactly_one_free_name(capsys):
    code, _, err = run(capsys, "split", "x = y")
    assert code == 2
    assert "one free variable" in err
    code, _, err = run(capsys, "split", "3 = 3")
    assert code == 2
    assert "one free variable" in err


# --- errors and exit codes -----------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("decide", "x = 0", "--env", "x"),
        ("decide", "x = 0", "--env", "x=-1"),
        ("decide", "x = 0", "--env", "x=1", "--env", "x=2"),
        ("decide", "3 = 3", "--env", "z=1"),
        ("decide", "x = 0"),
        ("decide", "x = ", "--env", "x=0"),
        ("decide", "forall x. forall x = 0",),
    ],
)
def test_usage_and_parse_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


def test_dnf_limit_exit_2(capsys):
    phi = "exists x. (x = 1 | x = 2) & (x = 3 | x = 4) & (x = 5 | x = 6)"
    code, out, _ = run(capsys, "decide", phi)
    assert (code, out) == (1, "no\n")
    code, _, err = run(capsys, "decide", phi, "--dnf-limit", "3")
    assert code == 2
    assert "error:" in err


def test_no_arguments_and_help(capsys):
    assert run(capsys, )[0] == 2
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "decide" in out


def test_internal_error_exit_3(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise EngineError("boom")

    monkeypatch.setattr(cli, "decide", boom)
    code, _, err = run(capsys, "decide", "false")
    assert code == 3
    assert "internal error" in err


def test_entry_raises_system_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli.sys, "argv", ["qelim", "decide", "false"])
    with pytest.raises(SystemExit) as info:
        cli.entry()
    capsys.readouterr()
    assert info.value.code == 1

import json

import pytest

from tools.cli import (
    EXIT_AXIOM_FAILURE,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNSUPPORTED,
    build_parser,
    main,
)
from tools.set_runtime import resolve_path


def fixture(stem: str) -> str:
    return resolve_path(f"data/fixtures/{stem}.json")


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.setenv("CLEFT_USE_CACHE", "0")


def test_verify_passes_on_group_algebra(capsys):
    assert main(["verify", fixture("qc2"), "--nmax", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "res hom" in out


def test_broken_counit_is_reported(capsys):
    assert main(["verify", fixture("broken_eps")]) == EXIT_CHECK_FAILED
    assert "propiedad de epsilon" in capsys.readouterr().out


def test_broken_counit_aborts_other_commands(capsys):
    assert main(["hh", fixture("broken_eps"), "--nmax", "1"]) == EXIT_AXIOM_FAILURE
    assert "axiom failure" in capsys.readouterr().err


@pytest.mark.parametrize(
    "stem, check",
    [("noninvertible_f", "invertible cocycle: f*f⁻¹ = u₂"), ("unstable_K", "estable bajo rho")],
)
def test_load_failures_exit_with_axiom_code(stem, check, capsys):
    assert main(["build", fixture(stem), "--nmax", "1"]) == EXIT_AXIOM_FAILURE
    err = capsys.readouterr().err
    assert err.startswith("axiom failure")
    assert check in err


def test_general_cocycle_is_unsupported(capsys):
    assert main(["hh", fixture("twisted_c2"), "--nmax", "1"]) == EXIT_UNSUPPORTED
    assert "unsupported cocycle" in capsys.readouterr().err


def test_parse_errors(tmp_path, capsys):
    assert main(["hh", str(tmp_path / "missing.json")]) == EXIT_PARSE_ERROR
    assert "parse error" in capsys.readouterr().err
    assert main(["hh", fixture("qc2"), "--nmax", "-1"]) == EXIT_PARSE_ERROR


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate", fixture("qc2")])


def test_hh_json_to_stdout(capsys):
    assert main(["hh", fixture("qc2"), "--nmax", "1", "--json", "-"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["instance"] == "qc2"
    assert payload["command"] == "hh"
    assert payload["passed"]
    assert payload["reports"][0]["tables"]["H_n"] == {"0": 2, "1": 0}


def test_whh_writes_json_file(tmp_path, capsys):
    target = tmp_path / "whh.json"
    assert main(["whh", fixture("f2c2"), "--nmax", "2", "--json", str(target)]) == EXIT_OK
    assert "H_n" in capsys.readouterr().out
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["reports"][0]["tables"]["H_n"] == {"0": 1, "1": 1, "2": 1}


def test_whcoh_regular_module():
    assert main(["whcoh", fixture("qc2"), "--nmax", "1", "--module", "regular"]) == EXIT_OK


def test_build_reports_dimensions(capsys):
    assert main(["build", fixture("qc2_smash"), "--nmax", "1", "--json", "-"]) == EXIT_OK
    dims = json.loads(capsys.readouterr().out)["reports"][0]["tables"]["dims"]
    assert dims["E"] == 4
    assert dims["K"] == 1


def test_cup_on_group_algebra():
    assert main(["cup", fixture("qc2"), "--nmax", "1"]) == EXIT_OK


def test_unwritable_json_target_is_a_parse_error(tmp_path, capsys):
    assert main(["whh", fixture("qc2"), "--nmax", "1", "--json", str(tmp_path)]) == EXIT_PARSE_ERROR
    assert "cannot write" in capsys.readouterr().err
    assert main(["whh", fixture("qc2"), "--nmax", "1", "--json", str(tmp_path / "no" / "dir.json")]) == EXIT_PARSE_ERROR

from __future__ import annotations

import subprocess
import sys

import pytest

from xmod.battery import standard_battery
from xmod.cli import main
from xmod.crossed import FiniteCrossedModule, format_crossed_module_text
from xmod.fixtures import fixture_text


@pytest.fixture(scope="session")
def cli_files(tmp_path_factory):
    """Battery modules, fixture movies, and a small presentation on disk."""
    root = tmp_path_factory.mktemp("cli")
    paths = {}
    for name, cm in standard_battery():
        path = root / f"{name}.xmod"
        path.write_text(format_crossed_module_text(cm), encoding="utf-8")
        paths[name] = str(path)
    for name in ("trivial1", "spun_hopf", "spun_trefoil"):
        path = root / f"{name}.movie"
        path.write_text(fixture_text(name), encoding="utf-8")
        paths[name] = str(path)

    broken = standard_battery()[1][1]
    action = [list(row) for row in broken.action]
    action[1][1] = (action[1][1] + 1) % broken.fiber.order
    corrupt = FiniteCrossedModule(
        broken.base, broken.fiber, broken.boundary,
        tuple(tuple(row) for row in action),
    )
    path = root / "corrupt.xmod"
    path.write_text(format_crossed_module_text(corrupt), encoding="utf-8")
    paths["corrupt"] = str(path)

    path = root / "sphere.pres"
    path.write_text("pres v1\ngens X\ncells e\nbnd e = X\n", encoding="utf-8")
    paths["sphere.pres"] = str(path)

    path = root / "bad.pres"
    path.write_text("pres v1\ngens X\ncells e\nbnd e = Q\n", encoding="utf-8")
    paths["bad.pres"] = str(path)
    return paths


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_ok(cli_files, capsys):
    code, out, err = run_cli(capsys, "validate", cli_files["conj_s3"])
    assert code == 0
    assert out == "ok\n"
    assert err == ""


def test_validate_violation(cli_files, capsys):
    code, out, _ = run_cli(capsys, "validate", cli_files["corrupt"])
    assert code == 1
    lines = out.splitlines()
    assert lines and all(line.startswith("violation ") for line in lines)
    # Witness indices are spelled out after the axiom name.
    assert any(len(line.split()) >= 3 for line in lines)


def test_validate_parse_error(cli_files, tmp_path, capsys):
    path = tmp_path / "garbage.xmod"
    path.write_text("xmod v1\nbase 2\n0 1\n1 zebra\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "validate", str(path))
    assert code == 2
    assert out == ""
    assert "line 4" in err


def test_validate_missing_file(capsys):
    code, _, err = run_cli(capsys, "validate", "/nonexistent/file.xmod")
    assert code == 2
    assert "cannot read" in err


# ---------------------------------------------------------------------------
# compile
# ---------------------------------------------------------------------------


def test_compile_golden(cli_files, capsys, tmp_path):
    path = tmp_path / "tube.movie"
    path.write_text(
        "birth X\nbirth Y\n"
        "saddle cell=e u=X^-1 v=Y^-1 band=b merged=c1,c2\n"
        "death circle=c1,c2 spanner=[]\nend\n",
        encoding="utf-8",
    )
    code, out, err = run_cli(capsys, "compile", str(path))
    assert code == 0
    assert out == (
        "pres v1\n"
        "gens X Y\n"
        "cells e\n"
        "bnd e = X^-1 Y\n"
        "one_handles 2\n"
    )
    assert err == ""


def test_compile_replay_error_exit_1(capsys, tmp_path):
    path = tmp_path / "dup.movie"
    path.write_text("birth X\nbirth X\nend\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "compile", str(path))
    assert code == 1
    assert "already" in err


def test_compile_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "noend.movie"
    path.write_text("birth X\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "compile", str(path))
    assert code == 2
    assert "missing 'end'" in err


# ---------------------------------------------------------------------------
# invariant / count
# ---------------------------------------------------------------------------


def report_lines(out: str) -> list[str]:
    lines = out.splitlines()
    assert lines[-1].startswith("elapsed_ms ")
    return lines[:-1]


def test_invariant_spun_hopf(cli_files, capsys):
    code, out, _ = run_cli(
        capsys, "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"]
    )
    assert code == 0
    assert report_lines(out) == [
        "count 640",
        "one_handles 2",
        "invariant 40/1",
        "method linear",
    ]


def test_count_is_an_alias(cli_files, capsys):
    code_a, out_a, _ = run_cli(
        capsys, "count", cli_files["spun_trefoil"], cli_files["ga_z3_p2"]
    )
    code_b, out_b, _ = run_cli(
        capsys, "invariant", cli_files["spun_trefoil"], cli_files["ga_z3_p2"]
    )
    assert code_a == code_b == 0
    assert report_lines(out_a) == report_lines(out_b)
    assert "invariant 9/8" in out_a


def test_methods_agree_through_cli(cli_files, capsys):
    reports = []
    for method in ("backtracking", "naive", "linear"):
        code, out, _ = run_cli(
            capsys,
            "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"],
            "--method", method,
        )
        assert code == 0
        lines = report_lines(out)
        assert lines[3] == f"method {method}"
        reports.append(lines[:3])
    assert reports[0] == reports[1] == reports[2]


def test_invariant_on_presentation_file(cli_files, capsys):
    code, out, _ = run_cli(
        capsys, "invariant", cli_files["sphere.pres"], cli_files["conj_s3"]
    )
    assert code == 0
    # Default one_handles for a pres file is its generator count.
    assert report_lines(out) == [
        "count 6",
        "one_handles 1",
        "invariant 1/1",
        "method backtracking",
    ]


def test_invariant_one_handles_override(cli_files, capsys):
    code, out, _ = run_cli(
        capsys,
        "invariant", cli_files["sphere.pres"], cli_files["conj_s3"],
        "--one-handles", "3",
    )
    assert code == 0
    assert "invariant 1/36" in out


def test_invariant_rejects_negative_one_handles(cli_files, capsys):
    code, _, err = run_cli(
        capsys,
        "invariant", cli_files["sphere.pres"], cli_files["conj_s3"],
        "--one-handles", "-1",
    )
    assert code == 2
    assert "nonnegative" in err


def test_invariant_invalid_presentation_exit_1(cli_files, capsys):
    code, _, err = run_cli(
        capsys, "invariant", cli_files["bad.pres"], cli_files["conj_s3"]
    )
    assert code == 1
    assert "violates" in err


def test_linear_method_unavailable_exit_2(cli_files, capsys):
    code, _, err = run_cli(
        capsys,
        "invariant", cli_files["sphere.pres"], cli_files["conj_s3"],
        "--method", "linear",
    )
    assert code == 2
    assert "abelian" in err or "boundary" in err


def test_work_cap_flag_exit_3(cli_files, capsys):
    code, _, err = run_cli(
        capsys,
        "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"],
        "--method", "backtracking", "--work-cap", "10",
    )
    assert code == 3
    assert "work cap" in err


def test_work_cap_env(cli_files, capsys, monkeypatch):
    monkeypatch.setenv("XMOD_WORK_CAP", "10")
    code, _, _ = run_cli(
        capsys,
        "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"],
        "--method", "backtracking",
    )
    assert code == 3
    # An explicit flag beats the environment.
    code, out, _ = run_cli(
        capsys,
        "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"],
        "--method", "backtracking", "--work-cap", "1000000",
    )
    assert code == 0
    assert "count 640" in out


def test_work_cap_env_must_be_numeric(cli_files, capsys, monkeypatch):
    monkeypatch.setenv("XMOD_WORK_CAP", "plenty")
    code, _, err = run_cli(
        capsys, "invariant", cli_files["spun_hopf"], cli_files["ga_z2_p2"]
    )
    assert code == 2
    assert "XMOD_WORK_CAP" in err


# ---------------------------------------------------------------------------
# examples / selftest
# ---------------------------------------------------------------------------


def test_examples_subset_golden(capsys):
    code, out, _ = run_cli(capsys, "examples", "trivial1")
    assert code == 0
    assert out == (
        "fixture module invariant\n"
        "trivial1 conj_s3 1/1\n"
        "trivial1 ga_z2_p2 1/2\n"
        "trivial1 ga_z3_p2 3/8\n"
    )


def test_examples_rejects_unknown_fixture(capsys):
    code, _, err = run_cli(capsys, "examples", "mystery")
    assert code == 2
    assert "unknown fixture" in err


def test_examples_full_battery(capsys):
    code, out, _ = run_cli(capsys, "examples")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "fixture module invariant"
    assert len(lines) == 1 + 8 * 3
    assert "spun_hopf ga_z2_p2 40/1" in lines
    assert "two_tori ga_z2_p2 64/1" in lines
    assert "spun_trefoil ga_z3_p2 9/8" in lines


def test_selftest_passes(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("ok ") for line in lines)


def test_usage_error_exit_2(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["invariant"]) == 2
    capsys.readouterr()


def test_module_entry_point(cli_files):
    result = subprocess.run(
        [sys.executable, "-m", "xmod", "examples", "trivial1"],
        capture_output=True, text=True, check=False,
    )
    assert result.returncode == 0
    assert "trivial1 ga_z3_p2 3/8" in result.stdout

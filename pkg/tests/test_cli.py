from __future__ import annotations

import pytest

from tileworks.cli import main
from tileworks.corpus import fixture_path


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "tileworks" in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate", "elbow"]) == 2


def test_explore_builtin_name(capsys):
    assert main(["explore", "elbow", "--bound", "6"]) == 0
    out = capsys.readouterr().out
    assert "assemblies: 5" in out
    assert "terminal assemblies: 1" in out
    assert "truncated at bound 6: no" in out
    assert "tD@(1, 1)" in out


def test_explore_file_path(capsys):
    assert main(["explore", str(fixture_path("elbow")), "--bound", "6"]) == 0
    assert "assemblies: 5" in capsys.readouterr().out


def test_run_reports_terminal(capsys):
    assert main(["run", "elbow", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "step 1:" in out
    assert "final assembly: 4 tiles (terminal)" in out


def test_check_lc_pass_and_fail(capsys):
    assert main(["check-lc", "elbow", "--bound", "12"]) == 0
    assert "locally consistent: yes" in capsys.readouterr().out
    assert main(["check-lc", "elbow_mismatch", "--bound", "12"]) == 1
    out = capsys.readouterr().out
    assert "locally consistent: NO" in out
    assert "witness:" in out


def test_compile_artifact_is_reproducible(tmp_path, capsys):
    one, two = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["compile", "elbow", "--out", str(one)]) == 0
    assert main(["compile", "elbow", "--out", str(two)]) == 0
    assert one.read_bytes() == two.read_bytes()
    assert "entries" in capsys.readouterr().out
    text = one.read_text()
    assert text.startswith("tileworks compiled system v1\n")
    assert "resolution 15944" in text


def test_compile_to_stdout(capsys):
    assert main(["compile", "elbow"]) == 0
    assert "GLUES" in capsys.readouterr().out


def test_compile_rejects_inconsistent_system(capsys):
    assert main(["compile", "elbow_bad_sum"]) == 1
    err = capsys.readouterr().err
    assert "not locally consistent" in err
    assert "--force" in err


def test_compile_force_overrides(tmp_path, capsys):
    out = tmp_path / "forced.txt"
    assert main(["compile", "elbow_bad_sum", "--force", "--out", str(out)]) == 0
    assert out.exists()


def test_missing_file_is_usage_error(capsys):
    assert main(["explore", "no/such/file.tas"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_parse_error_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.tas"
    bad.write_text("tile t N=g:9 E=-:0 S=-:0 W=-:0\nseed t\n")
    assert main(["explore", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_lookup_known_address(capsys):
    assert main(["lookup", "elbow", "--addr", "15", "--bits", "0"]) == 0
    out = capsys.readouterr().out
    assert "-> tR" in out
    assert "output N: c:1" in out


def test_lookup_trace_render(capsys):
    assert main(["lookup", "elbow", "--addr", "15", "--bits", "0", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "addr=15 bits=0 n=1 m=1933 p=0 selected_index=0" in out


def test_lookup_bare_entry_fails_check(capsys):
    # address 0 exists in every table but holds no sub-entries
    assert main(["lookup", "elbow", "--addr", "0", "--bits", "0"]) == 1
    assert "lookup failed" in capsys.readouterr().out


def test_lookup_out_of_range_is_usage_error(capsys):
    assert main(["lookup", "elbow", "--addr", "99999", "--bits", "0"]) == 2
    assert "lookup failed" in capsys.readouterr().err


def test_unknown_kernel_env_fails_cleanly(monkeypatch, capsys):
    monkeypatch.setenv("TILEWORKS_KERNEL", "bogus")
    assert main(["lookup", "elbow", "--addr", "15", "--bits", "0"]) == 1
    assert "unknown kernel 'bogus'" in capsys.readouterr().err


def test_simulate_decodes_growth(capsys):
    assert main(["simulate", "elbow", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("kernel: ")
    assert "decoded assembly: 4 tiles" in out
    assert "final: 4 blocks" in out


def test_simulate_writes_svg(tmp_path, capsys):
    target = tmp_path / "macro.svg"
    code = main(["simulate", "elbow", "--seed", "1", "--svg", str(target)])
    assert code == 0
    assert target.read_text().startswith("<svg ")


def test_verify_pass_writes_report(tmp_path, capsys):
    report = tmp_path / "report.txt"
    code = main(["verify", "elbow", "--bound", "6", "--report", str(report)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.endswith("overall: PASS\n")
    assert report.read_text() == out


def test_verify_nondet_passes(capsys):
    assert main(["verify", "nondet_elbow", "--bound", "6"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_render_writes_svg(tmp_path, capsys):
    target = tmp_path / "grown.svg"
    code = main(
        ["render", "sierpinski", "--svg", str(target), "--seed", "5", "--max-steps", "30"]
    )
    assert code == 0
    assert "wrote" in capsys.readouterr().out
    assert target.read_text().count('class="cell"') == 31  # seed + 30 steps


def test_unwritable_output_is_usage_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.svg"
    assert main(["render", "elbow", "--svg", str(target)]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_three_input_growth_fails_cleanly(tmp_path, capsys):
    # three strength-1 pads converge on (1,1); a forced compile must die in
    # the macro engine with a domain error, not a traceback
    text = (
        "temperature 2\n"
        "tile seed N=a:2 E=b:2 S=-:0 W=-:0\n"
        "tile t1 N=x1:1 E=-:0 S=-:0 W=b:2\n"
        "tile t2 N=c:2 E=x2:1 S=a:2 W=-:0\n"
        "tile t3 N=-:0 E=d:2 S=c:2 W=-:0\n"
        "tile t4 N=-:0 E=-:0 S=x3:1 W=d:2\n"
        "seed seed\n"
    )
    path = tmp_path / "three.tas"
    path.write_text(text)
    code = main(["verify", str(path), "--force", "--bound", "8"])
    assert code == 1
    assert "third input pad" in capsys.readouterr().err

import json
import os

import pytest

from equicheck.cli import main
from equicheck.parser import parse

from conftest import fixture_path


def test_analyze_reduction(capsys):
    code = main(["analyze", fixture_path("sum2_seq")])
    out = capsys.readouterr().out
    assert code == 0
    assert "segment 1" in out
    assert "modified={j,sum}" in out
    assert "used_before_def={N}" in out
    assert "live_after={sum}" in out


def test_analyze_json_schema(capsys):
    code = main(["analyze", fixture_path("sum2_par"), "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    [seg] = payload["segments"]
    assert seg["id"] == 1
    assert seg["vars"] == ["N", "i", "sum"]
    assert seg["modified"] == ["i", "sum"]


def test_analyze_no_segments(tmp_path, capsys):
    path = tmp_path / "plain.peq"
    path.write_text("#outputs x;\nx := 1;\n")
    code = main(["analyze", str(path)])
    assert code == 0
    assert "0 segments" in capsys.readouterr().out


def test_analyze_segment_inside_par_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.peq"
    path.write_text("par { #segment 1 { x := 1; } } { y := 2; }\n")
    code = main(["analyze", str(path)])
    assert code == 2
    assert "segment" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.peq"
    path.write_text("x := ;\n")
    assert main(["analyze", str(path)]) == 2


def test_missing_file_exits_2(capsys):
    assert main(["analyze", "/nonexistent/nope.peq"]) == 2


def test_usage_error_exits_2(capsys):
    assert main(["analyze", fixture_path("sum2_seq"),
                 "--domain", "3..1"]) == 2


def test_encode_writes_task_files(tmp_path, capsys):
    code = main(["encode", fixture_path("sum2_seq"), fixture_path("sum2_par"),
                 "--out", str(tmp_path), "--emit-c"])
    assert code == 0
    names = sorted(os.listdir(tmp_path))
    assert names == ["task_1.c", "task_1.json", "task_1.peq"]
    meta = json.loads((tmp_path / "task_1.json").read_text())
    assert meta["segment_id"] == 1
    assert meta["duplicates"]["sum"] == "sum_s"
    task_src = (tmp_path / "task_1.peq").read_text()
    assert "assert (sum_s == sum);" in task_src
    parse(task_src)  # the emitted task is valid source
    c_src = (tmp_path / "task_1.c").read_text()
    assert "long long" in c_src and "assert(" in c_src


def test_encode_no_segments_exits_2(tmp_path, capsys):
    a = tmp_path / "a.peq"
    b = tmp_path / "b.peq"
    a.write_text("x := 1;\n")
    b.write_text("x := 1;\n")
    assert main(["encode", str(a), str(b), "--out", str(tmp_path)]) == 2


def test_check_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.peq"
    good.write_text("x := 1; assert (x == 1);\n")
    bad = tmp_path / "bad.peq"
    bad.write_text("assert (0 == 1);\n")
    assert main(["check", str(good)]) == 0
    assert main(["check", str(bad)]) == 1


def test_check_json_includes_trace(tmp_path, capsys):
    bad = tmp_path / "bad.peq"
    bad.write_text("x := n; assert (x != 1);\n")
    code = main(["check", str(bad), "--json"])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "Violation"
    assert payload["initial_state"] == {"n": 1}
    assert isinstance(payload["trace"], list)


def test_oracle_exit_codes(capsys):
    assert main(["oracle", fixture_path("foo_orig"),
                 fixture_path("foo_mod")]) == 0
    assert main(["oracle", fixture_path("par_orig"),
                 fixture_path("par_mod"), "--domain", "1..1"]) == 1


def test_verify_exit_codes(capsys):
    assert main(["verify", fixture_path("sum2_seq"), fixture_path("sum2_par"),
                 "--domain", "0..3"]) == 0
    assert main(["verify", fixture_path("foo_orig"),
                 fixture_path("foo_mod")]) == 1


def test_verify_json_byte_identical(capsys):
    args = ["verify", fixture_path("foo_orig"), fixture_path("foo_mod"),
            "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert set(payload) == {"verdict", "segments", "config", "generator_seed"}


def test_outputs_override(capsys):
    # Overriding outputs to exclude y makes the branch pair trivially pass:
    # nothing is live after the segment, so there is nothing to check.
    code = main(["verify", fixture_path("foo_orig"), fixture_path("foo_mod"),
                 "--outputs", "z"])
    assert code == 0


def test_warning_when_no_outputs(tmp_path, capsys):
    a = tmp_path / "a.peq"
    a.write_text("#segment 1 { x := 1; }\n")
    main(["analyze", str(a)])
    assert "warning" in capsys.readouterr().err

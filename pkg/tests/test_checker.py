import pytest

from equicheck.checker import (CheckConfig, Equivalent, Inequivalent,
                               NoViolation, ResourceExhausted, Unknown,
                               Violation, check_program, check_task,
                               build_tasks, oracle_partial_equiv, verify_pair)
from equicheck.parser import parse_program
from equicheck.semantics import step, violates_assertion

import props

CFG = CheckConfig(-2, 2)


def test_config_invariants():
    with pytest.raises(ValueError):
        CheckConfig(2, -2)
    with pytest.raises(ValueError):
        CheckConfig(max_steps=0)
    assert list(CheckConfig(0, 3).domain) == [0, 1, 2, 3]


def test_immediate_violation_has_empty_trace():
    verdict = check_program(parse_program("assert (0 == 1);"), CFG)
    assert isinstance(verdict, Violation)
    assert len(verdict.trace.steps) == 0


def test_no_violation_complete():
    verdict = check_program(parse_program("x := 1; assert (x == 1);"), CFG)
    assert verdict == NoViolation(complete=True)


def test_violation_found_across_initial_states():
    verdict = check_program(parse_program("assert (n != 2);"), CFG)
    assert isinstance(verdict, Violation)
    assert verdict.initial["n"] == 2


def test_minimal_trace_and_replay():
    prog = parse_program("x := n + 1; y := x * x; assert (y != 4);")
    verdict = check_program(prog, CFG)
    assert isinstance(verdict, Violation)
    # Replay: every step of the reported trace is derivable, and the final
    # configuration violates the assertion.
    current = (verdict.trace.initial_program, verdict.trace.initial_state)
    for op, prog2, sigma2 in verdict.trace.steps:
        assert (op, prog2, sigma2) in step(*current)
        current = (prog2, sigma2)
    assert violates_assertion(*current)


def test_nontermination_yields_incomplete():
    prog = parse_program("while (x == x) { y := y + 1; }")
    verdict = check_program(prog, CheckConfig(0, 0, max_steps=20,
                                              max_states=100000))
    assert verdict == NoViolation(complete=False)


def test_state_budget_exhaustion():
    prog = parse_program("while (x == x) { y := y + 1; }")
    verdict = check_program(prog, CheckConfig(0, 0, max_steps=1000,
                                              max_states=50))
    assert isinstance(verdict, ResourceExhausted)


def test_oracle_reflexivity():
    prog = parse_program("x := y * y; y := x - 1;")
    verdict = oracle_partial_equiv(prog, prog, {"x", "y"}, CFG)
    assert verdict == Equivalent(complete=True)


def test_oracle_detects_difference():
    s1 = parse_program("x := 1;")
    s2 = parse_program("x := 2;")
    verdict = oracle_partial_equiv(s1, s2, {"x"}, CFG)
    assert isinstance(verdict, Inequivalent)
    assert verdict.witness_var == "x"
    assert {verdict.terminal1["x"], verdict.terminal2["x"]} == {1, 2}


def test_oracle_ignores_nonterminating_runs():
    # S1 loops forever over a finite state space: exploration completes,
    # and with no terminating S1 run the equivalence holds vacuously.
    s1 = parse_program("while (x == x) { x := x; }")
    s2 = parse_program("x := 7;")
    verdict = oracle_partial_equiv(s1, s2, {"x"},
                                   CheckConfig(0, 0, max_steps=30))
    assert verdict == Equivalent(complete=True)


def test_oracle_unknown_on_truncation():
    # Here the state space grows without bound, so the step budget bites
    # and certainty drops to Unknown.
    s1 = parse_program("while (x >= 0) { x := x + 1; }")
    s2 = parse_program("x := 7;")
    verdict = oracle_partial_equiv(s1, s2, {"x"},
                                   CheckConfig(0, 0, max_steps=30))
    assert isinstance(verdict, Unknown)


def test_racy_par_witness():
    s1 = parse_program("par { x := x + 1; } { x := 2 * x; }")
    s2 = parse_program("x := 2 * x + 1;")
    verdict = oracle_partial_equiv(s1, s2, {"x"}, CheckConfig(1, 1))
    assert isinstance(verdict, Inequivalent)
    assert verdict.initial["x"] == 1


def test_verify_pair_report_schema(fixtures):
    report = verify_pair(fixtures("sum2_seq"), fixtures("sum2_par"),
                         CheckConfig(0, 3))
    payload = report.as_dict()
    assert set(payload) == {"verdict", "segments", "config", "generator_seed"}
    [seg] = payload["segments"]
    assert set(seg) == {"id", "verdict", "complete", "initial_state", "trace",
                        "sets"}
    assert payload["verdict"] == "Equivalent"
    assert seg["complete"] is True


def test_verify_pair_deterministic(fixtures):
    a = verify_pair(fixtures("foo_orig"), fixtures("foo_mod"), CFG).to_json()
    b = verify_pair(fixtures("foo_orig"), fixtures("foo_mod"), CFG).to_json()
    assert a == b


def test_verify_pair_violation_trace_recorded(fixtures):
    report = verify_pair(fixtures("foo_orig"), fixtures("foo_mod"), CFG)
    [seg] = report.segments
    assert isinstance(seg.verdict, Violation)
    entry = seg.as_dict()
    assert entry["initial_state"] is not None
    assert entry["trace"]


@pytest.mark.parametrize("seed", range(30))
def test_segment_task_soundness_sample(seed):
    props.check_segment_task_soundness(seed)


@pytest.mark.parametrize("seed", range(30))
def test_pipeline_soundness_sample(seed):
    props.check_pipeline_soundness(seed)

"""Bounded-exhaustive verification of tasks and a brute-force equivalence
oracle over a finite domain of initial values.

All searches are deterministic: initial states are enumerated in sorted
variable order with ascending values, and successors follow the fixed
order of the step relation (parallel branch index, then rule order), so
identical inputs always produce identical reports.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .dataflow import summarize_segment, used_before_def
from .encoder import EquivalenceTask, build_task
from .errors import EquicheckError
from .parser import SourceFile
from .segments import validate_replacement
from .semantics import (DataState, Execution, step, violates_assertion)
from .syntax import Empty, Program, pretty_print, vars_of


@dataclass(frozen=True)
class CheckConfig:
    domain_lo: int = -2
    domain_hi: int = 2
    max_steps: int = 2000
    max_states: int = 200000

    def __post_init__(self):
        if self.domain_lo > self.domain_hi:
            raise ValueError("empty domain [%d..%d]" % (self.domain_lo, self.domain_hi))
        if self.max_steps < 1 or self.max_states < 1:
            raise ValueError("budgets must be at least 1")

    @property
    def domain(self) -> range:
        return range(self.domain_lo, self.domain_hi + 1)

    def as_dict(self) -> dict:
        return {"domain": [self.domain_lo, self.domain_hi],
                "max_steps": self.max_steps, "max_states": self.max_states}


# ---------------------------------------------------------------------------
# Verdicts

@dataclass(frozen=True)
class NoViolation:
    complete: bool


@dataclass(frozen=True)
class Violation:
    initial: DataState
    trace: Execution


@dataclass(frozen=True)
class ResourceExhausted:
    pass


Verdict = NoViolation | Violation | ResourceExhausted


@dataclass(frozen=True)
class Equivalent:
    complete: bool


@dataclass(frozen=True)
class Inequivalent:
    initial: DataState
    terminal1: DataState
    terminal2: DataState
    witness_var: str


@dataclass(frozen=True)
class Unknown:
    pass


EquivVerdict = Equivalent | Inequivalent | Unknown


def _initial_states(names, domain):
    names = sorted(set(names))
    if not names:
        yield DataState()
        return
    import itertools
    for combo in itertools.product(domain, repeat=len(names)):
        yield DataState(dict(zip(names, combo)))


# ---------------------------------------------------------------------------
# Task checking

class _BudgetExceeded(Exception):
    pass


class _StateBudget:
    def __init__(self, limit: int):
        self.remaining = limit

    def spend(self, n: int = 1):
        self.remaining -= n
        if self.remaining < 0:
            raise _BudgetExceeded()


def _search_violation(prog: Program, sigma0: DataState, cfg: CheckConfig,
                      budget: _StateBudget):
    """Breadth-first search from one initial state.

    Returns (trace | None, truncated).  The trace, if any, is the
    minimal-length execution reaching a violating configuration.
    """
    start = (prog, sigma0)
    if violates_assertion(prog, sigma0):
        return Execution(prog, sigma0), False
    parents: dict = {start: None}
    budget.spend()
    queue = deque([(start, 0)])
    truncated = False
    while queue:
        config, depth = queue.popleft()
        if depth >= cfg.max_steps:
            if step(*config):
                truncated = True
            continue
        for op, prog2, sigma2 in step(*config):
            succ = (prog2, sigma2)
            if succ in parents:
                continue
            parents[succ] = (config, op)
            budget.spend()
            if violates_assertion(prog2, sigma2):
                return _rebuild_trace(prog, sigma0, succ, parents), truncated
            queue.append((succ, depth + 1))
    return None, truncated


def _rebuild_trace(prog, sigma0, config, parents) -> Execution:
    steps = []
    while parents[config] is not None:
        prev, op = parents[config]
        steps.append((op, config[0], config[1]))
        config = prev
    return Execution(prog, sigma0, tuple(reversed(steps)))


def check_program(prog: Program, cfg: CheckConfig) -> Verdict:
    """Verdict for a bare task program: enumerate initial values for its
    used-before-definition variables (others pinned to 0) and explore every
    reachable configuration."""
    inputs = used_before_def(prog)
    budget = _StateBudget(cfg.max_states)
    complete = True
    for sigma0 in _initial_states(inputs, cfg.domain):
        try:
            trace, truncated = _search_violation(prog, sigma0, cfg, budget)
        except _BudgetExceeded:
            return ResourceExhausted()
        if trace is not None:
            return Violation(initial=sigma0, trace=trace)
        if truncated:
            complete = False
    return NoViolation(complete=complete)


def check_task(task: EquivalenceTask, cfg: CheckConfig) -> Verdict:
    return check_program(task.task, cfg)


# ---------------------------------------------------------------------------
# Brute-force partial-equivalence oracle

def _terminal_states(prog: Program, sigma0: DataState, cfg: CheckConfig):
    """(terminal states of normally terminating runs, truncated flag)."""
    visited = {(prog, sigma0)}
    queue = deque([((prog, sigma0), 0)])
    terminals = set()
    truncated = False
    while queue:
        config, depth = queue.popleft()
        if isinstance(config[0], Empty):
            terminals.add(config[1])
            continue
        successors = step(*config)
        if depth >= cfg.max_steps and successors:
            truncated = True
            continue
        for _, prog2, sigma2 in successors:
            succ = (prog2, sigma2)
            if succ not in visited:
                visited.add(succ)
                if len(visited) > cfg.max_states:
                    return terminals, True
                queue.append((succ, depth + 1))
    return terminals, truncated


def oracle_partial_equiv(s1: Program, s2: Program, outputs,
                         cfg: CheckConfig) -> EquivVerdict:
    """Exhaustive check of partial equivalence w.r.t. the output variables:
    for every initial state over the domain, all pairs of normally
    terminating runs must agree on every output variable."""
    outputs = sorted(set(outputs))
    names = vars_of(s1) | vars_of(s2) | set(outputs)
    any_truncated = False
    for sigma0 in _initial_states(names, cfg.domain):
        t1, trunc1 = _terminal_states(s1, sigma0, cfg)
        t2, trunc2 = _terminal_states(s2, sigma0, cfg)
        any_truncated = any_truncated or trunc1 or trunc2
        for var in outputs:
            values1 = sorted({sigma[var] for sigma in t1})
            values2 = sorted({sigma[var] for sigma in t2})
            if not values1 or not values2:
                continue
            if len(set(values1) | set(values2)) > 1:
                term1 = min(t1, key=lambda s: (s[var], sorted(s.as_dict().items())))
                term2 = min((s for s in t2 if s[var] != term1[var]),
                            key=lambda s: (s[var], sorted(s.as_dict().items())),
                            default=None)
                if term2 is None:
                    # All of t2 equals term1 on var; the disagreement is
                    # within t1, pick the other side there.
                    term2 = sorted(t2, key=lambda s: s[var])[0]
                    term1 = next(s for s in t1 if s[var] != term2[var])
                return Inequivalent(initial=sigma0, terminal1=term1,
                                    terminal2=term2, witness_var=var)
    if any_truncated:
        return Unknown()
    return Equivalent(complete=True)


# ---------------------------------------------------------------------------
# Whole-pair pipeline

@dataclass(frozen=True)
class SegmentResult:
    segment_id: int
    task: EquivalenceTask
    verdict: Verdict

    def as_dict(self) -> dict:
        entry = {
            "id": self.segment_id,
            "verdict": _verdict_name(self.verdict),
            "complete": isinstance(self.verdict, NoViolation) and self.verdict.complete,
            "initial_state": None,
            "trace": None,
            "sets": {
                "init_set": sorted(self.task.init_set),
                "check_set": sorted(self.task.check_set),
                "shared": sorted(self.task.shared),
                "duplicates": dict(sorted(self.task.duplicates.items())),
                "summary_original": self.task.summary_original.as_dict(),
                "summary_modified": self.task.summary_modified.as_dict(),
            },
        }
        if isinstance(self.verdict, Violation):
            entry["initial_state"] = self.verdict.initial.as_dict()
            entry["trace"] = trace_as_dicts(self.verdict.trace)
        return entry


@dataclass(frozen=True)
class PipelineReport:
    verdict: str  # "Equivalent" | "PossiblyInequivalent" | "Unknown"
    segments: tuple[SegmentResult, ...]
    config: CheckConfig
    generator_seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "segments": [seg.as_dict() for seg in self.segments],
            "config": self.config.as_dict(),
            "generator_seed": self.generator_seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _verdict_name(verdict: Verdict) -> str:
    if isinstance(verdict, NoViolation):
        return "NoViolation"
    if isinstance(verdict, Violation):
        return "Violation"
    return "ResourceExhausted"


def trace_as_dicts(trace: Execution) -> list[dict]:
    out = []
    for op, prog, sigma in trace.steps:
        entry = {"op": op.kind, "state": sigma.as_dict()}
        if op.kind == "assign":
            entry["var"] = op.var
        out.append(entry)
    return out


def build_tasks(original: SourceFile, modified: SourceFile,
                outputs=None) -> list[EquivalenceTask]:
    """Validate the replacement and build one task per segment pair."""
    if outputs is None:
        outputs = frozenset(original.outputs) | frozenset(modified.outputs)
    outputs = frozenset(outputs)
    replacement = validate_replacement(original, modified)
    tasks = []
    for pair in replacement.pairs:
        summary1 = summarize_segment(original, pair.segment_id, outputs)
        summary2 = summarize_segment(modified, pair.segment_id, outputs)
        tasks.append(build_task(pair.original, pair.modified, summary1, summary2,
                                segment_id=pair.segment_id))
    return tasks


def verify_pair(original: SourceFile, modified: SourceFile, cfg: CheckConfig,
                outputs=None, generator_seed: int | None = None) -> PipelineReport:
    """End-to-end pipeline: segments, summaries, tasks, bounded checking."""
    tasks = build_tasks(original, modified, outputs)
    results = []
    for task in tasks:
        verdict = check_task(task, cfg)
        results.append(SegmentResult(task.segment_id, task, verdict))
    if any(isinstance(r.verdict, Violation) for r in results):
        overall = "PossiblyInequivalent"
    elif all(isinstance(r.verdict, NoViolation) and r.verdict.complete
             for r in results):
        overall = "Equivalent"
    else:
        overall = "Unknown"
    return PipelineReport(verdict=overall, segments=tuple(results), config=cfg,
                          generator_seed=generator_seed)

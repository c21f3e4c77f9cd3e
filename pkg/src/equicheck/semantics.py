"""Small-step operational semantics and bounded execution enumeration.

A configuration pairs a program with a data state.  The step relation is
deterministic except for the choice of parallel branch; assertion
statements only step when their guard holds, so a failed assertion leaves
the configuration stuck (and flagged by `violates_assertion`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .syntax import (AExpr, Assert, Assign, BExpr, BinOp, BoolLit, BoolOp,
                     Cmp, Empty, EMPTY, If, IntLit, Neg, Not, Par, Program,
                     RenamingFn, Seq, Var, While, rename_expr, rename_program,
                     vars_of_expr)


# ---------------------------------------------------------------------------
# Data states

class DataState:
    """Total mapping from variable names to integers; unset variables are 0."""

    __slots__ = ("_dict", "_items")

    def __init__(self, values=None):
        if isinstance(values, DataState):
            self._dict = values._dict
            self._items = values._items
            return
        items = {}
        if values:
            for var, val in dict(values).items():
                if val != 0:
                    items[var] = val
        self._dict = items
        self._items = frozenset(items.items())

    def __getitem__(self, var: str) -> int:
        return self._dict.get(var, 0)

    def set(self, var: str, value: int) -> "DataState":
        items = dict(self._dict)
        if value != 0:
            items[var] = value
        else:
            items.pop(var, None)
        return DataState(items)

    def support(self) -> frozenset[str]:
        return frozenset(self._dict)

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self._dict.items()))

    def agrees_with(self, other: "DataState", vars: Iterable[str]) -> bool:
        return all(self[v] == other[v] for v in vars)

    def __eq__(self, other):
        return isinstance(other, DataState) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return "DataState(%r)" % (self.as_dict(),)


EMPTY_STATE = DataState()


def rename_state(sigma: DataState, rho: RenamingFn) -> DataState:
    """rho(sigma): the renamed state satisfies rho(sigma)(v) = sigma(rho^-1(v))."""
    return DataState({rho(name): val for name, val in sigma.as_dict().items()})


# ---------------------------------------------------------------------------
# Expression evaluation

def eval_aexpr(sigma: DataState, expr: AExpr) -> int:
    if isinstance(expr, IntLit):
        return expr.value
    if isinstance(expr, Var):
        return sigma[expr.name]
    if isinstance(expr, Neg):
        return -eval_aexpr(sigma, expr.operand)
    if isinstance(expr, BinOp):
        left = eval_aexpr(sigma, expr.left)
        right = eval_aexpr(sigma, expr.right)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        raise ValueError("unknown operator %r" % expr.op)
    raise TypeError("not an arithmetic expression: %r" % (expr,))


_CMP = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_bexpr(sigma: DataState, expr: BExpr) -> bool:
    if isinstance(expr, BoolLit):
        return expr.value
    if isinstance(expr, Cmp):
        return _CMP[expr.op](eval_aexpr(sigma, expr.left), eval_aexpr(sigma, expr.right))
    if isinstance(expr, Not):
        return not eval_bexpr(sigma, expr.operand)
    if isinstance(expr, BoolOp):
        if expr.op == "&&":
            return eval_bexpr(sigma, expr.left) and eval_bexpr(sigma, expr.right)
        return eval_bexpr(sigma, expr.left) or eval_bexpr(sigma, expr.right)
    raise TypeError("not a boolean expression: %r" % (expr,))


# ---------------------------------------------------------------------------
# Execution steps

@dataclass(frozen=True)
class ExecStep:
    """Operation labelling one transition: an assignment, a guard, or a nop."""
    kind: str  # "assign" | "guard" | "nop"
    var: str | None = None
    aexpr: AExpr | None = None
    bexpr: BExpr | None = None
    negated: bool = False

    def used_vars(self) -> frozenset[str]:
        if self.kind == "assign":
            return vars_of_expr(self.aexpr)
        if self.kind == "guard":
            return vars_of_expr(self.bexpr)
        return frozenset()

    def assigned_var(self) -> str | None:
        return self.var if self.kind == "assign" else None

    def renamed(self, rho: RenamingFn) -> "ExecStep":
        if self.kind == "assign":
            return ExecStep("assign", var=rho(self.var),
                            aexpr=rename_expr(self.aexpr, rho))
        if self.kind == "guard":
            return ExecStep("guard", bexpr=rename_expr(self.bexpr, rho),
                            negated=self.negated)
        return self


NOP = ExecStep("nop")


def step(prog: Program, sigma: DataState) -> list[tuple[ExecStep, Program, DataState]]:
    """All successors of (prog, sigma); empty for terminal or stuck configurations."""
    if isinstance(prog, Empty):
        return []
    if isinstance(prog, Assign):
        value = eval_aexpr(sigma, prog.expr)
        op = ExecStep("assign", var=prog.var, aexpr=prog.expr)
        return [(op, EMPTY, sigma.set(prog.var, value))]
    if isinstance(prog, Assert):
        if eval_bexpr(sigma, prog.cond):
            return [(ExecStep("guard", bexpr=prog.cond), EMPTY, sigma)]
        return []  # stuck: assertion violated
    if isinstance(prog, If):
        if eval_bexpr(sigma, prog.cond):
            return [(ExecStep("guard", bexpr=prog.cond), prog.then_branch, sigma)]
        return [(ExecStep("guard", bexpr=prog.cond, negated=True),
                 prog.else_branch, sigma)]
    if isinstance(prog, While):
        if eval_bexpr(sigma, prog.cond):
            return [(ExecStep("guard", bexpr=prog.cond), Seq(prog.body, prog), sigma)]
        return [(ExecStep("guard", bexpr=prog.cond, negated=True), EMPTY, sigma)]
    if isinstance(prog, Seq):
        if isinstance(prog.first, Empty):
            return [(NOP, prog.rest, sigma)]
        return [(op, Seq(first2, prog.rest), sigma2)
                for op, first2, sigma2 in step(prog.first, sigma)]
    if isinstance(prog, Par):
        if all(isinstance(b, Empty) for b in prog.branches):
            return [(NOP, EMPTY, sigma)]
        successors = []
        for i, branch in enumerate(prog.branches):
            for op, branch2, sigma2 in step(branch, sigma):
                branches = prog.branches[:i] + (branch2,) + prog.branches[i + 1:]
                successors.append((op, Par(branches), sigma2))
        return successors
    raise TypeError("not a program: %r" % (prog,))


def violates_assertion(prog: Program, sigma: DataState) -> bool:
    """True iff an assert with a false guard heads the program, possibly
    inside sequential composition or a parallel branch."""
    if isinstance(prog, Assert):
        return not eval_bexpr(sigma, prog.cond)
    if isinstance(prog, Seq):
        return violates_assertion(prog.first, sigma)
    if isinstance(prog, Par):
        return any(violates_assertion(b, sigma) for b in prog.branches)
    return False


# ---------------------------------------------------------------------------
# Execution enumeration

@dataclass(frozen=True)
class Execution:
    """A finite execution: initial configuration plus the steps taken."""
    initial_program: Program
    initial_state: DataState
    steps: tuple[tuple[ExecStep, Program, DataState], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def final_program(self) -> Program:
        return self.steps[-1][1] if self.steps else self.initial_program

    @property
    def final_state(self) -> DataState:
        return self.steps[-1][2] if self.steps else self.initial_state

    def terminated_normally(self) -> bool:
        return isinstance(self.final_program, Empty)

    def extend(self, op: ExecStep, prog: Program, sigma: DataState) -> "Execution":
        return Execution(self.initial_program, self.initial_state,
                         self.steps + ((op, prog, sigma),))

    def renamed(self, rho: RenamingFn) -> "Execution":
        return Execution(
            rename_program(self.initial_program, rho),
            rename_state(self.initial_state, rho),
            tuple((op.renamed(rho), rename_program(p, rho), rename_state(s, rho))
                  for op, p, s in self.steps))


def executions(prog: Program, sigma0: DataState,
               max_steps: int) -> tuple[list[Execution], bool]:
    """All executions from (prog, sigma0) of length <= max_steps.

    The returned list is prefix-closed (every prefix of an execution is an
    execution).  The flag is True iff no execution was cut off by the bound,
    i.e. every maximal execution ended terminal or stuck within it.
    """
    results: list[Execution] = []
    complete = True

    def walk(execution: Execution):
        nonlocal complete
        results.append(execution)
        successors = step(execution.final_program, execution.final_state)
        if not successors:
            return
        if len(execution) >= max_steps:
            complete = False
            return
        for op, prog2, sigma2 in successors:
            walk(execution.extend(op, prog2, sigma2))

    walk(Execution(prog, sigma0))
    return results, complete


# ---------------------------------------------------------------------------
# Syntactic paths

def _const_bool(expr: BExpr) -> bool | None:
    """Evaluate a variable-free boolean expression; None if it has variables."""
    if vars_of_expr(expr):
        return None
    return eval_bexpr(EMPTY_STATE, expr)


def syntactic_step(prog: Program) -> list[tuple[ExecStep, Program]]:
    """Successors quantified existentially over data states.

    A guard with variables is treated as satisfiable in both polarities;
    variable-free guards are decided exactly.  This overapproximates the
    ideal relation for guards that contain variables but are unsatisfiable,
    which is sound for the analyses that consume syntactic paths.
    """
    if isinstance(prog, Empty):
        return []
    if isinstance(prog, Assign):
        return [(ExecStep("assign", var=prog.var, aexpr=prog.expr), EMPTY)]
    if isinstance(prog, Assert):
        if _const_bool(prog.cond) is False:
            return []
        return [(ExecStep("guard", bexpr=prog.cond), EMPTY)]
    if isinstance(prog, If):
        value = _const_bool(prog.cond)
        successors = []
        if value is not False:
            successors.append((ExecStep("guard", bexpr=prog.cond), prog.then_branch))
        if value is not True:
            successors.append((ExecStep("guard", bexpr=prog.cond, negated=True),
                               prog.else_branch))
        return successors
    if isinstance(prog, While):
        value = _const_bool(prog.cond)
        successors = []
        if value is not False:
            successors.append((ExecStep("guard", bexpr=prog.cond), Seq(prog.body, prog)))
        if value is not True:
            successors.append((ExecStep("guard", bexpr=prog.cond, negated=True), EMPTY))
        return successors
    if isinstance(prog, Seq):
        if isinstance(prog.first, Empty):
            return [(NOP, prog.rest)]
        return [(op, Seq(first2, prog.rest))
                for op, first2 in syntactic_step(prog.first)]
    if isinstance(prog, Par):
        if all(isinstance(b, Empty) for b in prog.branches):
            return [(NOP, EMPTY)]
        successors = []
        for i, branch in enumerate(prog.branches):
            for op, branch2 in syntactic_step(branch):
                branches = prog.branches[:i] + (branch2,) + prog.branches[i + 1:]
                successors.append((op, Par(branches)))
        return successors
    raise TypeError("not a program: %r" % (prog,))


@dataclass(frozen=True)
class SyntacticPath:
    initial_program: Program
    steps: tuple[tuple[ExecStep, Program], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def final_program(self) -> Program:
        return self.steps[-1][1] if self.steps else self.initial_program

    def extend(self, op: ExecStep, prog: Program) -> "SyntacticPath":
        return SyntacticPath(self.initial_program, self.steps + ((op, prog),))


def syntactic_paths(prog: Program, max_steps: int) -> tuple[list[SyntacticPath], bool]:
    """All syntactic paths of length <= max_steps, prefix-closed, plus a
    completeness flag (False iff some path was cut off by the bound)."""
    results: list[SyntacticPath] = []
    complete = True

    def walk(path: SyntacticPath):
        nonlocal complete
        results.append(path)
        successors = syntactic_step(path.final_program)
        if not successors:
            return
        if len(path) >= max_steps:
            complete = False
            return
        for op, prog2 in successors:
            walk(path.extend(op, prog2))

    walk(SyntacticPath(prog))
    return results, complete

"""Abstract syntax for the toy imperative language.

Programs are immutable trees.  A program is either the empty program,
a basic statement (assignment or assertion), a compound statement
(if/while/parallel), or a sequential composition of two programs.
Every basic statement and compound head carries an integer label that is
unique within the program it was parsed into; labels let us identify
subprograms unambiguously and survive variable renaming.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Union


# ---------------------------------------------------------------------------
# Expressions

@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "AExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: "AExpr"
    right: "AExpr"


AExpr = Union[IntLit, Var, Neg, BinOp]


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Cmp:
    op: str  # "==", "!=", "<", "<=", ">", ">="
    left: AExpr
    right: AExpr


@dataclass(frozen=True)
class Not:
    operand: "BExpr"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "&&", "||"
    left: "BExpr"
    right: "BExpr"


BExpr = Union[BoolLit, Cmp, Not, BoolOp]


# ---------------------------------------------------------------------------
# Programs

@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Assign:
    label: int
    var: str
    expr: AExpr


@dataclass(frozen=True)
class Assert:
    label: int
    cond: BExpr


@dataclass(frozen=True)
class If:
    label: int
    cond: BExpr
    then_branch: "Program"
    else_branch: "Program"


@dataclass(frozen=True)
class While:
    label: int
    cond: BExpr
    body: "Program"


@dataclass(frozen=True)
class Seq:
    first: "Program"
    rest: "Program"


@dataclass(frozen=True)
class Par:
    branches: tuple["Program", ...]

    def __post_init__(self):
        if len(self.branches) < 1:
            raise ValueError("parallel statement needs at least one branch")


Program = Union[Empty, Assign, Assert, If, While, Seq, Par]

EMPTY = Empty()


def seq_of(stmts) -> Program:
    """Right-nested sequence ending in the empty program."""
    prog: Program = EMPTY
    for stmt in reversed(list(stmts)):
        prog = Seq(stmt, prog)
    return prog


def stmts_of(prog: Program) -> list[Program]:
    """Flatten nested sequential composition into a statement list."""
    out: list[Program] = []

    def walk(p: Program):
        if isinstance(p, Empty):
            return
        if isinstance(p, Seq):
            walk(p.first)
            walk(p.rest)
        else:
            out.append(p)

    walk(prog)
    return out


# ---------------------------------------------------------------------------
# Variable collection

def vars_of_expr(expr) -> frozenset[str]:
    if isinstance(expr, (IntLit, BoolLit)):
        return frozenset()
    if isinstance(expr, Var):
        return frozenset({expr.name})
    if isinstance(expr, (Neg, Not)):
        return vars_of_expr(expr.operand)
    if isinstance(expr, (BinOp, Cmp, BoolOp)):
        return vars_of_expr(expr.left) | vars_of_expr(expr.right)
    raise TypeError("not an expression: %r" % (expr,))


def vars_of(prog: Program) -> frozenset[str]:
    """All variables occurring in expressions or assignment targets."""
    if isinstance(prog, Empty):
        return frozenset()
    if isinstance(prog, Assign):
        return frozenset({prog.var}) | vars_of_expr(prog.expr)
    if isinstance(prog, Assert):
        return vars_of_expr(prog.cond)
    if isinstance(prog, If):
        return (vars_of_expr(prog.cond)
                | vars_of(prog.then_branch) | vars_of(prog.else_branch))
    if isinstance(prog, While):
        return vars_of_expr(prog.cond) | vars_of(prog.body)
    if isinstance(prog, Seq):
        return vars_of(prog.first) | vars_of(prog.rest)
    if isinstance(prog, Par):
        result: frozenset[str] = frozenset()
        for branch in prog.branches:
            result |= vars_of(branch)
        return result
    raise TypeError("not a program: %r" % (prog,))


def labels_of(prog: Program) -> list[int]:
    if isinstance(prog, Empty):
        return []
    if isinstance(prog, (Assign, Assert)):
        return [prog.label]
    if isinstance(prog, If):
        return [prog.label] + labels_of(prog.then_branch) + labels_of(prog.else_branch)
    if isinstance(prog, While):
        return [prog.label] + labels_of(prog.body)
    if isinstance(prog, Seq):
        return labels_of(prog.first) + labels_of(prog.rest)
    if isinstance(prog, Par):
        out: list[int] = []
        for branch in prog.branches:
            out.extend(labels_of(branch))
        return out
    raise TypeError("not a program: %r" % (prog,))


# ---------------------------------------------------------------------------
# Renaming

class RenamingFn:
    """Bijection on variable names with finite support; identity elsewhere."""

    def __init__(self, pairs: Mapping[str, str] | None = None):
        mapping = dict(pairs or {})
        # Drop identity pairs so support is minimal.
        mapping = {v: w for v, w in mapping.items() if v != w}
        inverse: dict[str, str] = {}
        for v, w in mapping.items():
            if w in inverse:
                raise ValueError("renaming is not injective: %s and %s both map to %s"
                                 % (inverse[w], v, w))
            inverse[w] = v
        if set(mapping) != set(inverse):
            missing = sorted(set(inverse) - set(mapping) | set(mapping) - set(inverse))
            raise ValueError("renaming is not bijective on its support: %s" % missing)
        self._map = mapping
        self._inv = inverse

    @classmethod
    def identity(cls) -> "RenamingFn":
        return cls({})

    @classmethod
    def involution(cls, pairs: Mapping[str, str]) -> "RenamingFn":
        """Swap each (v, w) pair in both directions."""
        mapping = {}
        for v, w in pairs.items():
            mapping[v] = w
            mapping[w] = v
        return cls(mapping)

    def __call__(self, name: str) -> str:
        return self._map.get(name, name)

    def inverse(self, name: str) -> str:
        return self._inv.get(name, name)

    def inverted(self) -> "RenamingFn":
        return RenamingFn(self._inv)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._map)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self._map.items())

    def __eq__(self, other):
        return isinstance(other, RenamingFn) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return "RenamingFn(%r)" % (self._map,)


def rename_expr(expr, rho: RenamingFn):
    if isinstance(expr, (IntLit, BoolLit)):
        return expr
    if isinstance(expr, Var):
        return Var(rho(expr.name))
    if isinstance(expr, Neg):
        return Neg(rename_expr(expr.operand, rho))
    if isinstance(expr, Not):
        return Not(rename_expr(expr.operand, rho))
    if isinstance(expr, BinOp):
        return BinOp(expr.op, rename_expr(expr.left, rho), rename_expr(expr.right, rho))
    if isinstance(expr, Cmp):
        return Cmp(expr.op, rename_expr(expr.left, rho), rename_expr(expr.right, rho))
    if isinstance(expr, BoolOp):
        return BoolOp(expr.op, rename_expr(expr.left, rho), rename_expr(expr.right, rho))
    raise TypeError("not an expression: %r" % (expr,))


def rename_program(prog: Program, rho: RenamingFn) -> Program:
    """Replace every variable occurrence v by rho(v); labels are preserved."""
    if isinstance(prog, Empty):
        return prog
    if isinstance(prog, Assign):
        return Assign(prog.label, rho(prog.var), rename_expr(prog.expr, rho))
    if isinstance(prog, Assert):
        return Assert(prog.label, rename_expr(prog.cond, rho))
    if isinstance(prog, If):
        return If(prog.label, rename_expr(prog.cond, rho),
                  rename_program(prog.then_branch, rho),
                  rename_program(prog.else_branch, rho))
    if isinstance(prog, While):
        return While(prog.label, rename_expr(prog.cond, rho),
                     rename_program(prog.body, rho))
    if isinstance(prog, Seq):
        return Seq(rename_program(prog.first, rho), rename_program(prog.rest, rho))
    if isinstance(prog, Par):
        return Par(tuple(rename_program(b, rho) for b in prog.branches))
    raise TypeError("not a program: %r" % (prog,))


# ---------------------------------------------------------------------------
# Relabeling and label-insensitive comparison

def relabel(prog: Program, start: int = 1) -> Program:
    """Assign fresh labels in preorder."""
    counter = [start]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def walk(p: Program) -> Program:
        if isinstance(p, Empty):
            return p
        if isinstance(p, Assign):
            return Assign(fresh(), p.var, p.expr)
        if isinstance(p, Assert):
            return Assert(fresh(), p.cond)
        if isinstance(p, If):
            label = fresh()
            return If(label, p.cond, walk(p.then_branch), walk(p.else_branch))
        if isinstance(p, While):
            label = fresh()
            return While(label, p.cond, walk(p.body))
        if isinstance(p, Seq):
            return Seq(walk(p.first), walk(p.rest))
        if isinstance(p, Par):
            return Par(tuple(walk(b) for b in p.branches))
        raise TypeError("not a program: %r" % (p,))

    return walk(prog)


def skeleton(prog: Program):
    """Canonical label-free form: nested sequences flattened, labels dropped.

    Two programs are label-isomorphic iff their skeletons are equal.
    """
    if isinstance(prog, Assign):
        return ("assign", prog.var, prog.expr)
    if isinstance(prog, Assert):
        return ("assert", prog.cond)
    if isinstance(prog, If):
        return ("if", prog.cond, skeleton(prog.then_branch), skeleton(prog.else_branch))
    if isinstance(prog, While):
        return ("while", prog.cond, skeleton(prog.body))
    if isinstance(prog, Par):
        return ("par", tuple(skeleton(b) for b in prog.branches))
    if isinstance(prog, (Empty, Seq)):
        return ("seq", tuple(skeleton(s) for s in stmts_of(prog)))
    raise TypeError("not a program: %r" % (prog,))


def label_isomorphic(a: Program, b: Program) -> bool:
    return skeleton(a) == skeleton(b)


def substitute(prog: Program, target: Program, replacement: Program) -> Program:
    """Replace every subprogram equal to `target` by `replacement`."""
    if prog == target:
        return replacement
    if isinstance(prog, (Empty, Assign, Assert)):
        return prog
    if isinstance(prog, If):
        return If(prog.label, prog.cond,
                  substitute(prog.then_branch, target, replacement),
                  substitute(prog.else_branch, target, replacement))
    if isinstance(prog, While):
        return While(prog.label, prog.cond,
                     substitute(prog.body, target, replacement))
    if isinstance(prog, Seq):
        return Seq(substitute(prog.first, target, replacement),
                   substitute(prog.rest, target, replacement))
    if isinstance(prog, Par):
        return Par(tuple(substitute(b, target, replacement) for b in prog.branches))
    raise TypeError("not a program: %r" % (prog,))


def contains(prog: Program, target: Program) -> bool:
    if prog == target:
        return True
    if isinstance(prog, (Empty, Assign, Assert)):
        return False
    if isinstance(prog, If):
        return contains(prog.then_branch, target) or contains(prog.else_branch, target)
    if isinstance(prog, While):
        return contains(prog.body, target)
    if isinstance(prog, Seq):
        return contains(prog.first, target) or contains(prog.rest, target)
    if isinstance(prog, Par):
        return any(contains(b, target) for b in prog.branches)
    raise TypeError("not a program: %r" % (prog,))


# ---------------------------------------------------------------------------
# Pretty printing

_AEXPR_PREC = {"+": 1, "-": 1, "*": 2}


def format_aexpr(expr, parent_prec: int = 0) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Neg):
        inner = format_aexpr(expr.operand, 3)
        return "-%s" % inner
    if isinstance(expr, BinOp):
        prec = _AEXPR_PREC[expr.op]
        # Left-associative: right child of same precedence needs parens.
        text = "%s %s %s" % (format_aexpr(expr.left, prec), expr.op,
                             format_aexpr(expr.right, prec + 1))
        if prec < parent_prec:
            text = "(%s)" % text
        return text
    raise TypeError("not an arithmetic expression: %r" % (expr,))


def format_bexpr(expr, parent_prec: int = 0) -> str:
    # Precedence: || (1) < && (2) < ! (3) < atoms.
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, Cmp):
        return "%s %s %s" % (format_aexpr(expr.left), expr.op, format_aexpr(expr.right))
    if isinstance(expr, Not):
        inner = expr.operand
        if isinstance(inner, (BoolLit, Not)):
            return "!%s" % format_bexpr(inner, 3)
        return "!(%s)" % format_bexpr(inner)
    if isinstance(expr, BoolOp):
        prec = 1 if expr.op == "||" else 2
        text = "%s %s %s" % (format_bexpr(expr.left, prec), expr.op,
                             format_bexpr(expr.right, prec + 1))
        if prec < parent_prec:
            text = "(%s)" % text
        return text
    raise TypeError("not a boolean expression: %r" % (expr,))


def pretty_print(prog: Program, indent: int = 0) -> str:
    """Canonical concrete syntax; parses back to a label-isomorphic program."""
    lines = _pp_stmts(prog, indent)
    return "".join(line + "\n" for line in lines)


def _pp_block(prog: Program, indent: int) -> list[str]:
    inner = _pp_stmts(prog, indent + 1)
    pad = "  " * indent
    if not inner:
        return [pad + "{", pad + "}"]
    return [pad + "{"] + inner + [pad + "}"]


def _pp_stmts(prog: Program, indent: int) -> list[str]:
    lines: list[str] = []
    pad = "  " * indent
    for stmt in stmts_of(prog):
        if isinstance(stmt, Assign):
            lines.append("%s%s := %s;" % (pad, stmt.var, format_aexpr(stmt.expr)))
        elif isinstance(stmt, Assert):
            lines.append("%sassert (%s);" % (pad, format_bexpr(stmt.cond)))
        elif isinstance(stmt, If):
            lines.append("%sif (%s)" % (pad, format_bexpr(stmt.cond)))
            lines.extend(_pp_block(stmt.then_branch, indent))
            lines.append("%selse" % pad)
            lines.extend(_pp_block(stmt.else_branch, indent))
        elif isinstance(stmt, While):
            lines.append("%swhile (%s)" % (pad, format_bexpr(stmt.cond)))
            lines.extend(_pp_block(stmt.body, indent))
        elif isinstance(stmt, Par):
            lines.append("%spar" % pad)
            for branch in stmt.branches:
                lines.extend(_pp_block(branch, indent))
        else:
            raise TypeError("not a statement: %r" % (stmt,))
    return lines

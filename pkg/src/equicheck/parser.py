"""Recursive-descent parser for the toy concrete syntax.

    program  := (stmt | directive)*
    stmt     := IDENT ":=" aexpr ";" | "assert" bexpr ";"
              | "if" "(" bexpr ")" block "else" block
              | "while" "(" bexpr ")" block
              | "par" block block+
              | "#segment" INT block
    block    := "{" stmt* "}"
    directive:= "#outputs" IDENT ("," IDENT)* ";"

"//" starts a comment that runs to end of line.  Labels are assigned to
basic statements in preorder; "#outputs" and "#segment" are recorded as
metadata on the returned SourceFile.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DuplicateSegmentId, ParseError, SegmentInsidePar
from .syntax import (Assert, Assign, BinOp, BoolLit, BoolOp, Cmp, If, IntLit,
                     Neg, Not, Par, Program, Seq, Var, While, relabel, seq_of)

KEYWORDS = {"assert", "if", "else", "while", "par", "true", "false"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<directive>\#[A-Za-z]+)
  | (?P<op>:=|==|!=|<=|>=|&&|\|\||[+\-*<>!(){},;])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "directive" | "op" | "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = match.lastgroup
        value = match.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = match.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass(frozen=True)
class RawSegment:
    """A #segment marker as encountered by the parser."""
    segment_id: int
    body: Program
    nesting_depth: int  # number of enclosing #segment markers


@dataclass(frozen=True)
class SourceFile:
    program: Program
    outputs: tuple[str, ...]
    segments: tuple[RawSegment, ...]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.outputs: list[str] = []
        self.segments: list[RawSegment] = []
        self.segment_ids: set[int] = set()
        self.par_depth = 0
        self.segment_depth = 0

    # -- token helpers ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError("expected %r, found %r" % (want, tok.text or "end of input"),
                             tok.line, tok.column)
        return self.advance()

    def at_op(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    # -- grammar ----------------------------------------------------------

    def parse_program(self) -> Program:
        stmts = []
        while self.peek().kind != "eof":
            if self.peek().kind == "directive" and self.peek().text == "#outputs":
                self.parse_outputs()
            else:
                stmts.append(self.parse_stmt())
        return seq_of(stmts)

    def parse_outputs(self):
        self.expect("directive", "#outputs")
        self.outputs.append(self.expect("ident").text)
        while self.at_op(","):
            self.advance()
            self.outputs.append(self.expect("ident").text)
        self.expect("op", ";")

    def parse_block(self) -> Program:
        self.expect("op", "{")
        stmts = []
        while not self.at_op("}"):
            if self.peek().kind == "eof":
                tok = self.peek()
                raise ParseError("unterminated block", tok.line, tok.column)
            stmts.append(self.parse_stmt())
        self.expect("op", "}")
        return seq_of(stmts)

    def parse_stmt(self) -> Program:
        tok = self.peek()
        if tok.kind == "directive":
            if tok.text == "#segment":
                return self.parse_segment()
            raise ParseError("unknown directive %r" % tok.text, tok.line, tok.column)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            self.expect("op", ":=")
            expr = self.parse_aexpr()
            self.expect("op", ";")
            return Assign(0, tok.text, expr)
        if tok.kind == "ident" and tok.text == "assert":
            self.advance()
            cond = self.parse_bexpr()
            self.expect("op", ";")
            return Assert(0, cond)
        if tok.kind == "ident" and tok.text == "if":
            self.advance()
            self.expect("op", "(")
            cond = self.parse_bexpr()
            self.expect("op", ")")
            then_branch = self.parse_block()
            self.expect("ident", "else")
            else_branch = self.parse_block()
            return If(0, cond, then_branch, else_branch)
        if tok.kind == "ident" and tok.text == "while":
            self.advance()
            self.expect("op", "(")
            cond = self.parse_bexpr()
            self.expect("op", ")")
            body = self.parse_block()
            return While(0, cond, body)
        if tok.kind == "ident" and tok.text == "par":
            self.advance()
            self.par_depth += 1
            branches = [self.parse_block()]
            while self.at_op("{"):
                branches.append(self.parse_block())
            self.par_depth -= 1
            return Par(tuple(branches))
        raise ParseError("expected a statement, found %r" % (tok.text or "end of input"),
                         tok.line, tok.column)

    def parse_segment(self) -> Program:
        tok = self.expect("directive", "#segment")
        seg_id = int(self.expect("int").text)
        if self.par_depth > 0:
            raise SegmentInsidePar("segment %d occurs inside a parallel statement "
                                   "(line %d)" % (seg_id, tok.line))
        if seg_id in self.segment_ids:
            raise DuplicateSegmentId("segment id %d used more than once (line %d)"
                                     % (seg_id, tok.line))
        self.segment_ids.add(seg_id)
        self.segment_depth += 1
        body = self.parse_block()
        self.segment_depth -= 1
        self.segments.append(RawSegment(seg_id, body, self.segment_depth))
        # The body stays a self-contained subprogram node in the tree so
        # that downstream passes can locate it by value (labels are unique).
        return body

    # -- expressions ------------------------------------------------------

    def parse_aexpr(self):
        return self.parse_additive()

    def parse_additive(self):
        left = self.parse_multiplicative()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().text
            left = BinOp(op, left, self.parse_multiplicative())
        return left

    def parse_multiplicative(self):
        left = self.parse_aatom()
        while self.at_op("*"):
            self.advance()
            left = BinOp("*", left, self.parse_aatom())
        return left

    def parse_aatom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return IntLit(int(tok.text))
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            return Var(tok.text)
        if self.at_op("-"):
            self.advance()
            operand = self.parse_aatom()
            # Fold negated literals so "-3" round-trips as the literal -3.
            if isinstance(operand, IntLit):
                return IntLit(-operand.value)
            return Neg(operand)
        if self.at_op("("):
            self.advance()
            expr = self.parse_aexpr()
            self.expect("op", ")")
            return expr
        raise ParseError("expected an arithmetic expression, found %r"
                         % (tok.text or "end of input"), tok.line, tok.column)

    _CMP_OPS = ("==", "!=", "<=", ">=", "<", ">")

    def parse_bexpr(self):
        left = self.parse_conjunction()
        while self.at_op("||"):
            self.advance()
            left = BoolOp("||", left, self.parse_conjunction())
        return left

    def parse_conjunction(self):
        left = self.parse_batom()
        while self.at_op("&&"):
            self.advance()
            left = BoolOp("&&", left, self.parse_batom())
        return left

    def parse_batom(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("true", "false"):
            self.advance()
            return BoolLit(tok.text == "true")
        if self.at_op("!"):
            self.advance()
            return Not(self.parse_batom())
        if self.at_op("("):
            # Ambiguous: "(" may open a parenthesized bexpr or the left
            # aexpr of a comparison.  Try the bexpr reading first.
            saved = self.pos
            self.advance()
            try:
                inner = self.parse_bexpr()
                self.expect("op", ")")
                return inner
            except ParseError:
                self.pos = saved
        return self.parse_comparison()

    def parse_comparison(self):
        left = self.parse_aexpr()
        tok = self.peek()
        if tok.kind == "op" and tok.text in self._CMP_OPS:
            self.advance()
            return Cmp(tok.text, left, self.parse_aexpr())
        raise ParseError("expected a comparison operator, found %r"
                         % (tok.text or "end of input"), tok.line, tok.column)


def parse(text: str) -> SourceFile:
    """Parse source text into a program plus directive metadata."""
    parser = _Parser(tokenize(text))
    program = parser.parse_program()
    labeled = relabel(program)
    # Relabeling rebuilds the tree; recover each segment body inside it so
    # the recorded subprograms carry the final labels.
    segments = tuple(
        RawSegment(seg.segment_id, _find_relabeled(program, labeled, seg.body),
                   seg.nesting_depth)
        for seg in parser.segments
    )
    return SourceFile(labeled, tuple(dict.fromkeys(parser.outputs)), segments)


def parse_program(text: str) -> Program:
    """Parse source text that carries no directives and return the program."""
    return parse(text).program


def _find_relabeled(original: Program, labeled: Program, target: Program) -> Program:
    """Locate in `labeled` the node at the same position as `target` in `original`."""
    if original is target:
        return labeled
    for attr in ("first", "rest", "then_branch", "else_branch", "body"):
        if hasattr(original, attr):
            found = _find_relabeled(getattr(original, attr), getattr(labeled, attr), target)
            if found is not None:
                return found
    if isinstance(original, Par):
        for orig_branch, lab_branch in zip(original.branches, labeled.branches):
            found = _find_relabeled(orig_branch, lab_branch, target)
            if found is not None:
                return found
    return None

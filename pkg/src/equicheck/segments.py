"""Segment extraction and replacement validation.

Two program versions are related by pairing their #segment markers by id.
Validation replaces each segment body by a placeholder and requires the
remaining context of both files to agree up to labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (ContextMismatch, DuplicateSegmentId, EmptySegment,
                     NestedSegments, SegmentIdMismatch, SegmentInsidePar)
from .parser import SourceFile
from .syntax import (Assert, Assign, Empty, If, Par, Program, Seq, While,
                     contains, pretty_print, stmts_of, substitute)


@dataclass(frozen=True)
class SegmentTable:
    """Segment id -> body for one file; invariants checked on construction."""
    source: SourceFile
    bodies: dict[int, Program]

    def ids(self) -> list[int]:
        return sorted(self.bodies)


@dataclass(frozen=True)
class ReplacementPair:
    segment_id: int
    original: Program
    modified: Program


@dataclass(frozen=True)
class ReplacementMap:
    pairs: tuple[ReplacementPair, ...]


def extract_segments(source: SourceFile) -> SegmentTable:
    bodies: dict[int, Program] = {}
    for seg in source.segments:
        if seg.segment_id in bodies:
            raise DuplicateSegmentId("segment id %d used more than once" % seg.segment_id)
        if seg.nesting_depth > 0:
            raise NestedSegments("segment %d is nested inside another segment"
                                 % seg.segment_id)
        if isinstance(seg.body, Empty) or not stmts_of(seg.body):
            raise EmptySegment("segment %d has an empty body" % seg.segment_id)
        if _inside_par(source.program, seg.body):
            raise SegmentInsidePar("segment %d occurs inside a parallel statement"
                                   % seg.segment_id)
        bodies[seg.segment_id] = seg.body
    return SegmentTable(source, bodies)


def _inside_par(prog: Program, target: Program) -> bool:
    if isinstance(prog, (Empty, Assign, Assert)):
        return False
    if isinstance(prog, Par):
        return any(contains(b, target) for b in prog.branches)
    if isinstance(prog, If):
        return _inside_par(prog.then_branch, target) or _inside_par(prog.else_branch, target)
    if isinstance(prog, While):
        return _inside_par(prog.body, target)
    if isinstance(prog, Seq):
        return _inside_par(prog.first, target) or _inside_par(prog.rest, target)
    raise TypeError("not a program: %r" % (prog,))


def _residue(prog: Program, bodies: dict[int, Program]):
    """Label-free structure with segment bodies collapsed to their ids."""
    for seg_id, body in bodies.items():
        if prog == body:
            return ("segment", seg_id)
    if isinstance(prog, Empty):
        return ("empty",)
    if isinstance(prog, Assign):
        return ("assign", prog.var, prog.expr)
    if isinstance(prog, Assert):
        return ("assert", prog.cond)
    if isinstance(prog, If):
        return ("if", prog.cond, _residue(prog.then_branch, bodies),
                _residue(prog.else_branch, bodies))
    if isinstance(prog, While):
        return ("while", prog.cond, _residue(prog.body, bodies))
    if isinstance(prog, Seq):
        return ("seq", _residue(prog.first, bodies), _residue(prog.rest, bodies))
    if isinstance(prog, Par):
        return ("par", tuple(_residue(b, bodies) for b in prog.branches))
    raise TypeError("not a program: %r" % (prog,))


def validate_replacement(original: SourceFile, modified: SourceFile) -> ReplacementMap:
    """Check that pairing segments by id induces a legal replacement and
    return the validated pairing."""
    table1 = extract_segments(original)
    table2 = extract_segments(modified)
    if table1.ids() != table2.ids():
        raise SegmentIdMismatch("segment ids differ: %s vs %s"
                                % (table1.ids(), table2.ids()))
    # Strip labels from residues by comparing label-free structures.
    res1 = _strip_labels(_residue(original.program, table1.bodies))
    res2 = _strip_labels(_residue(modified.program, table2.bodies))
    if res1 != res2:
        raise ContextMismatch("programs differ outside the marked segments: %s"
                              % _first_difference(res1, res2))
    pairs = tuple(ReplacementPair(i, table1.bodies[i], table2.bodies[i])
                  for i in table1.ids())
    return ReplacementMap(pairs)


def _strip_labels(residue):
    # Residues embed expressions, which carry no labels; sequences may nest
    # differently only through segment bodies, already collapsed.  Normalize
    # seq nesting so "a; (b; c)" and "(a; b); c" compare equal.
    if isinstance(residue, tuple) and residue and residue[0] == "seq":
        flat = []
        for part in residue[1:]:
            part = _strip_labels(part)
            if isinstance(part, tuple) and part and part[0] == "seq":
                flat.extend(part[1:])
            elif part != ("empty",):
                flat.append(part)
        return ("seq", *flat)
    if isinstance(residue, tuple):
        return tuple(_strip_labels(p) if isinstance(p, tuple) else p for p in residue)
    return residue


def _first_difference(res1, res2) -> str:
    if isinstance(res1, tuple) and isinstance(res2, tuple) and res1[:1] == res2[:1]:
        for part1, part2 in zip(res1[1:], res2[1:]):
            if part1 != part2:
                return _first_difference(part1, part2)
        if len(res1) != len(res2):
            return "statement counts differ (%d vs %d)" % (len(res1) - 1, len(res2) - 1)
    return "%r vs %r" % (res1, res2)


def apply_replacement(original: SourceFile, replacement: ReplacementMap) -> Program:
    """Substitute each modified segment body into the original's context."""
    prog = original.program
    for pair in replacement.pairs:
        prog = substitute(prog, pair.original, pair.modified)
    return prog

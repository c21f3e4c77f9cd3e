import pytest

from equicheck.errors import (DuplicateSegmentId, ParseError, SegmentInsidePar)
from equicheck.parser import parse, parse_program
from equicheck.syntax import (Assert, Assign, BinOp, Cmp, Empty, If, IntLit,
                              Par, Seq, Var, While, label_isomorphic,
                              labels_of, pretty_print, stmts_of, vars_of)


def test_assign_roundtrip():
    prog = parse_program("x := 1;")
    stmt = prog.first
    assert isinstance(stmt, Assign)
    assert stmt.var == "x"
    assert stmt.expr == IntLit(1)
    assert isinstance(prog.rest, Empty)


def test_operator_precedence():
    prog = parse_program("x := 1 + 2 * 3;")
    expr = prog.first.expr
    assert expr == BinOp("+", IntLit(1), BinOp("*", IntLit(2), IntLit(3)))


def test_unary_minus_and_parens():
    prog = parse_program("x := -(y + 1) * 2;")
    assert vars_of(prog) == {"x", "y"}


def test_if_else_and_while():
    prog = parse_program("""
        if (x < 1) { y := 0; } else { y := 1; }
        while (y > 0) { y := y - 1; }
    """)
    stmts = stmts_of(prog)
    assert isinstance(stmts[0], If)
    assert isinstance(stmts[1], While)
    assert stmts[0].cond == Cmp("<", Var("x"), IntLit(1))


def test_par_branches():
    prog = parse_program("par { x := 1; } { y := 2; } { z := 3; }")
    par = prog.first
    assert isinstance(par, Par)
    assert len(par.branches) == 3


def test_assert_statement():
    prog = parse_program("assert (x == 0);")
    assert isinstance(prog.first, Assert)


def test_boolean_operators():
    prog = parse_program("assert (x < 1 && !(y > 2) || x == y);")
    assert vars_of(prog) == {"x", "y"}


def test_labels_unique_and_preorder():
    prog = parse_program("""
        x := 1;
        while (x > 0) { x := x - 1; y := y + 1; }
        assert (y >= 0);
    """)
    labels = labels_of(prog)
    assert labels == sorted(labels)
    assert len(labels) == len(set(labels))


def test_comments_ignored():
    prog = parse_program("// leading comment\nx := 1; // trailing\n")
    assert isinstance(prog.first, Assign)


def test_outputs_directive():
    source = parse("#outputs a, b;\na := 1;\nb := 2;\n")
    assert source.outputs == ("a", "b")


def test_segment_directive():
    source = parse("#outputs x;\n#segment 7 { x := 1; }\nx := x + 1;\n")
    assert len(source.segments) == 1
    assert source.segments[0].segment_id == 7
    body = source.segments[0].body
    assert stmts_of(body) == [Assign(body.first.label, "x", IntLit(1))]


def test_duplicate_segment_id_rejected():
    with pytest.raises(DuplicateSegmentId):
        parse("#segment 1 { x := 1; }\n#segment 1 { x := 2; }\n")


def test_segment_inside_par_rejected():
    with pytest.raises(SegmentInsidePar):
        parse("par { #segment 1 { x := 1; } } { y := 2; }")


@pytest.mark.parametrize("bad", [
    "x := ;",
    "x = 1;",
    "if x < 1 { }",
    "while (x) { }",
    "assert x == 1;;;(",
    "par x := 1;",
])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_program(bad)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_program("x := 1;\ny := ;\n")
    assert info.value.line == 2


def test_pretty_print_roundtrip(fixtures):
    for name in ["sum2_seq", "sum2_par", "foo_orig", "two_loops_orig",
                 "par_orig"]:
        prog = fixtures(name).program
        reparsed = parse_program(pretty_print(prog))
        # Segment bodies parse as nested blocks; compare modulo sequence
        # nesting and labels.
        assert label_isomorphic(reparsed, prog)


def test_empty_program():
    prog = parse_program("")
    assert isinstance(prog, Empty) or stmts_of(prog) == []

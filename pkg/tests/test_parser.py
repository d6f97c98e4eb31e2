import math

import numpy as np
import pytest

from clifflog import functions as fn
from clifflog.core import Multivector, Signature, approx_eq, format_mv, mv
from clifflog.errors import (
    BasisOutOfDimension,
    CliffordError,
    LexError,
    NoLogarithm,
    ParseError,
    SingularDivision,
)
from clifflog.parser import BinOp, Call, Literal, Neg, Pow, evaluate, parse, tokenize


def kinds(src):
    return [(t.kind, t.text) for t in tokenize(src)]


def test_tokenize_example():
    assert kinds("2+4e1-5e2-e12") == [
        ("Number", "2"), ("Plus", "+"), ("Number", "4"), ("Basis", "e1"), ("Minus", "-"),
        ("Number", "5"), ("Basis", "e2"), ("Minus", "-"), ("Basis", "e12"),
    ]


def test_tokenize_calls_and_positions():
    toks = tokenize("exp(log(x))")
    assert [t.kind for t in toks] == ["Ident", "LParen", "Ident", "LParen", "Ident", "RParen", "RParen"]
    positions = [t.position for t in toks]
    assert positions == sorted(set(positions))


def test_lex_error_position():
    with pytest.raises(LexError) as info:
        tokenize("2 $ 3")
    assert info.value.position == 2


def test_scientific_notation_needs_sign():
    assert kinds("1e-05") == [("Number", "1e-05")]
    assert kinds("2E3") == [("Number", "2E3")]
    assert kinds("4e1") == [("Number", "4"), ("Basis", "e1")]


def test_parse_shapes():
    ast = parse("2+4e1-5e2-e12")
    assert isinstance(ast, BinOp) and ast.op == "-"
    call = parse("sqrt(2-e1+2e12)")
    assert isinstance(call, Call) and call.name == "sqrt"
    assert isinstance(parse("-e1^2"), Pow)
    assert isinstance(parse("-e1^2").base, Neg)
    assert isinstance(parse("3"), Literal)


def test_unclosed_paren():
    with pytest.raises(ParseError) as info:
        parse("exp(")
    assert info.value.position == 4
    with pytest.raises(ParseError, match="unclosed"):
        parse("(1+e1")


@pytest.mark.parametrize("src, pos", [("2+", 2), ("2 3", 2), ("foo(1)", 0), ("exp(1, 2)", 5), ("e1^0.5", 3), (")", 0)])
def test_parse_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.position == pos
    assert info.value.expected


def test_precedence_fixture():
    assert evaluate("2*e1+3*e2^2", Signature.CL20).value == mv(Signature.CL20, 3, 2)


def test_unary_minus_binds_tighter_than_power():
    assert evaluate("-e1^2", Signature.CL02).value == mv(Signature.CL02, -1)
    assert evaluate("-(e1^2)", Signature.CL02).value == mv(Signature.CL02, 1)


def test_implicit_multiplication_only_number_basis():
    assert evaluate("4e1", Signature.CL11).value == mv(Signature.CL11, 0, 4)
    with pytest.raises(ParseError):
        parse("4 (e1)")


def test_eval_exp_log_example1():
    ev = evaluate("exp(log(3+2e1))", Signature.CL10)
    assert approx_eq(ev.value, mv(Signature.CL10, 3, 2), 1e-12)
    assert ev.notes and "principal" in ev.notes[0]


def test_eval_sqrt_returns_structured():
    ev = evaluate("sqrt(2-e1+2e12)", Signature.CL20)
    assert isinstance(ev.value, fn.SqrtResult) and len(ev.value.isolated) == 2


def test_eval_log_returns_structured():
    ev = evaluate("log(2+4e1-5e2-e12)", Signature.CL11)
    assert isinstance(ev.value, fn.LogResult)
    assert ev.value.kind is fn.LogKind.WINDING


def test_basis_out_of_dimension():
    with pytest.raises(BasisOutOfDimension) as info:
        evaluate("2+e2", Signature.CL01)
    assert info.value.position == 2


def test_singular_division_position():
    with pytest.raises(SingularDivision) as info:
        evaluate("1/(2+2e1)", Signature.CL10)
    assert info.value.position == 1


def test_no_logarithm_propagates_when_nested():
    with pytest.raises(NoLogarithm) as info:
        evaluate("exp(log(2+5e1-4e2-7e12))", Signature.CL11)
    assert info.value.position is not None


def test_unary_calls():
    sig = Signature.CL02
    x = "(2+4e1-5e2-e12)"
    assert evaluate(f"conj{x}", sig).value == mv(sig, 2, -4, 5, 1)
    assert evaluate(f"rev{x}", sig).value == mv(sig, 2, 4, -5, 1)
    assert evaluate(f"gradeinv{x}", sig).value == mv(sig, 2, -4, 5, -1)
    assert evaluate(f"det{x}", sig).value == mv(sig, 46)
    assert evaluate(f"norm{x}", sig).value == mv(sig, math.sqrt(46))
    assert approx_eq(evaluate(f"inv{x} * {x}", sig).value, mv(sig, 1), 1e-15)


def test_pi_constant():
    assert approx_eq(evaluate("exp(pi*e12)", Signature.CL02).value, mv(Signature.CL02, -1), 1e-15)


def test_errors_are_typed_with_position():
    bad = ["", "+", "e3", "1/0", "log(0)", "sqrt(", "((1)", "2**3", "exp()", "1e", "e1^-1", "1..2"]
    for src in bad:
        with pytest.raises(CliffordError) as info:
            evaluate(src, Signature.CL11)
        assert info.value.position is not None, src


def test_format_parse_round_trip():
    rng = np.random.default_rng(51)
    for _ in range(10_000):
        sig = list(Signature)[rng.integers(5)]
        c = rng.uniform(-1e3, 1e3, 4) * (rng.random(4) < 0.8)
        if sig.n == 1:
            c[2:] = 0
        x = Multivector(sig, *map(float, c))
        assert evaluate(format_mv(x), sig).value == x

import random

import pytest

from hypermc import syntax as S
from hypermc.errors import ArityError, BindingError, ParseError
from hypermc.oracle import eval_formula
from hypermc.syntax import (criticality, format_formula, format_program,
                            formula_size, parse_formula, parse_program,
                            to_nnf)

from helpers import sized_qf_formula, trace_assignment


def test_parse_basic_shapes():
    f = parse_formula("exists p1. a@p1")
    assert isinstance(f, S.Exists)
    assert f.var == "p1"
    assert f.body == S.Atom("a", "p1", 1)

    f = parse_formula("forall p1. exists p2. <(s,_)> (a@p1 & !b@p2)")
    assert isinstance(f, S.Forall)
    dia = f.body.body
    assert isinstance(dia, S.Diamond)
    assert dia.prog == S.Tup(("s", None))


def test_parse_program_constructs():
    p = parse_program("(s) + eps ; {a@p1}? ; (_)*", 1)
    # '+' binds looser than ';', ';' associates left, '*' is postfix
    assert p == S.Sum(
        S.Tup(("s",)),
        S.Seq(S.Seq(S.Eps(), S.Test(S.Atom("a", "p1", 1))),
              S.Star(S.Tup((None,)))))


def test_any_is_all_wildcards():
    f = parse_formula("exists p1. exists p2. <any> true")
    assert f.body.body.prog == S.Tup((None, None))


def test_iff_desugars():
    f = parse_formula("exists p1. a@p1 <-> b@p1")
    g = parse_formula("exists p1. (a@p1 -> b@p1) & (b@p1 -> a@p1)")
    assert f == g


def test_arity_mismatch_rejected():
    with pytest.raises(ArityError):
        parse_formula("exists p1. <(s,t)> a@p1")


def test_unbound_variable_rejected():
    with pytest.raises(BindingError):
        parse_formula("exists p1. a@p2")


def test_modality_outside_quantifier_rejected():
    with pytest.raises(ParseError):
        parse_formula("<(s)> true")


def test_free_vars_open_formula():
    f = parse_formula("a@p2 & <any> b@p1", free_vars=["p1", "p2"])
    assert f.left == S.Atom("a", "p2", 2)
    assert f.right.prog == S.Tup((None, None))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_formula("exists p1. a@@p1")
    with pytest.raises(ParseError):
        parse_formula("exists p1. (a@p1")


def test_print_parse_round_trip():
    rng = random.Random(401)
    for trial in range(150):
        n = rng.randint(1, 2)
        f = sized_qf_formula(rng, n, max_size=10)
        text = format_formula(f)
        again = parse_formula(text, free_vars=["p%d" % (i + 1)
                                               for i in range(n)])
        assert again == f, (trial, text)


def test_print_parse_round_trip_closed():
    cases = [
        "exists p1. forall p2. (a@p1 | !b@p2) & <(s,_) + eps> delta (_,t)",
        "forall p1. [({a@p1}? ; (s))*] !delta (s)",
        "exists p1. <eps> true | [(s)] false",
    ]
    for text in cases:
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f


def test_nnf_idempotent():
    rng = random.Random(402)
    for trial in range(200):
        f = sized_qf_formula(rng, rng.randint(1, 2), max_size=10)
        once = to_nnf(f)
        assert to_nnf(once) == once, trial


def test_nnf_pushes_negation():
    f = parse_formula("forall p1. !(a@p1 & <(s)> b@p1)")
    g = to_nnf(f)
    assert isinstance(g, S.NotExists)
    body = g.body  # !(...) under the dualized quantifier stays positive
    assert isinstance(body, S.And)


def test_nnf_preserves_oracle_semantics():
    rng = random.Random(403)
    agree = 0
    for trial in range(300):
        n = rng.randint(1, 2)
        f = sized_qf_formula(rng, n, max_size=8)
        asg = trace_assignment(rng, n)
        want = eval_formula(asg, 0, f, trace=True)
        got = eval_formula(asg, 0, to_nnf(f), trace=True)
        assert want == got, (trial, format_formula(f))
        agree += 1
    assert agree == 300


def test_nnf_negation_flips_oracle():
    rng = random.Random(404)
    for trial in range(200):
        n = rng.randint(1, 2)
        f = sized_qf_formula(rng, n, max_size=8)
        asg = trace_assignment(rng, n)
        want = eval_formula(asg, 0, f, trace=True)
        got = eval_formula(asg, 0, to_nnf(f, negate=True), trace=True)
        assert want != got, (trial, format_formula(f))


def test_formula_size_counts_programs():
    f = parse_formula("exists p1. <(s) ; (t)> a@p1")
    # exists + diamond + seq + two tuples + atom
    assert formula_size(f) == 6


def test_criticality_quantifier_free_prefix():
    assert criticality(parse_formula("exists p1. exists p2. a@p1")) == 0
    assert criticality(parse_formula("forall p1. forall p2. a@p1")) == 0
    assert criticality(parse_formula("exists p1. forall p2. a@p1")) == 1
    assert criticality(parse_formula("forall p1. exists p2. a@p1")) == 1


def test_criticality_modal_context():
    # diamond bodies chain without blowup, box bodies do not
    f = parse_formula("exists p1. <(s)*> exists p2. a@p2")
    assert criticality(f) == 0
    g = parse_formula("exists p1. [(s)*] exists p2. a@p2")
    assert criticality(g) == 1
    # a quantifier heading a test is critical
    h = parse_formula("exists p1. <({exists p2. a@p2}? ; (s))*> true")
    assert criticality(h) == 1


def test_program_printer_round_trips():
    rng = random.Random(405)
    from helpers import sized_program
    for trial in range(120):
        n = rng.randint(1, 2)
        p = sized_program(rng, n, max_size=10)
        text = format_program(p)
        assert parse_program(text, n) == p, (trial, text)

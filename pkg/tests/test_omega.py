import random

import pytest

from hypermc.errors import ArityError, ParseError
from hypermc.lasso import LassoAssignment, LassoWord
from hypermc.omega import (RAlt, RCat, REps, RStar, RSym, compile_spec,
                           parse_omega_spec, reference_accepts)
from hypermc.oracle import eval_formula
from hypermc.syntax import Delta, Diamond, Eps, Or, Seq, Star, Sum, to_nnf
from hypermc.syntax import Test as ProgTest

EVEN = parse_omega_spec("""
aps a
programs s
pair:
  stem: eps
  loop: [{a}]|(s) [{}]|(s)
""")

AB_STEM = parse_omega_spec("""
aps a b
programs s
pair:
  stem: ([{a}]|(s))*
  loop: [{b}]|(s)
""")

STEP_ALT = parse_omega_spec("""
aps
programs s t
pair:
  stem: eps
  loop: [{}]|(s) [{}]|(t)
""")

TWO_PATHS = parse_omega_spec("""
aps a
programs s t
pair:
  stem: [{a},{}]|(s,t)
  loop: [{},{}]|(s,s) + [{a},{a}]|(t,t)
pair:
  stem: eps
  loop: [{},{a}]|(t,s)
""")

BURSTS = parse_omega_spec("""
aps a b
programs s
pair:
  stem: eps
  loop: [{a}]|(s) ([{b}]|(s))*
""")


def sym(worlds, steps):
    return (tuple(frozenset(w) for w in worlds), tuple(steps))


def compiled_accepts(spec, stem_syms, period_syms, formula=None):
    if formula is None:
        formula = compile_spec(spec)
    paths = []
    for i in range(spec.arity):
        stem = [(s[0][i], s[1][i]) for s in stem_syms]
        period = [(s[0][i], s[1][i]) for s in period_syms]
        paths.append(LassoWord(stem, period))
    return eval_formula(LassoAssignment(paths), 0, to_nnf(formula),
                        trace=True)


def both_accept(spec, stem_syms, period_syms):
    ref = reference_accepts(spec, stem_syms, period_syms)
    got = compiled_accepts(spec, stem_syms, period_syms)
    assert ref == got, (stem_syms, period_syms)
    return ref


def test_even_positions_language():
    on, off = sym([["a"]], ["s"]), sym([[]], ["s"])
    assert both_accept(EVEN, [], [on, off])
    assert both_accept(EVEN, [on], [off, on])          # rotated member
    assert both_accept(EVEN, [on, off, on, off], [on, off])
    assert not both_accept(EVEN, [], [on])
    assert not both_accept(EVEN, [], [off, on])
    assert not both_accept(EVEN, [on], [on, off])
    assert not both_accept(EVEN, [], [on, on])


def test_finite_stem_then_loop_forever():
    a, b = sym([["a"]], ["s"]), sym([["b"]], ["s"])
    assert both_accept(AB_STEM, [], [b])
    assert both_accept(AB_STEM, [a, a, a], [b, b])
    assert not both_accept(AB_STEM, [a], [a, b])       # a returns later
    assert not both_accept(AB_STEM, [b], [a])
    assert not both_accept(AB_STEM, [], [a])


def test_programs_alone_can_separate():
    s, t = sym([[]], ["s"]), sym([[]], ["t"])
    assert both_accept(STEP_ALT, [], [s, t])
    assert both_accept(STEP_ALT, [s], [t, s])
    assert not both_accept(STEP_ALT, [], [s, s])
    assert not both_accept(STEP_ALT, [], [t, s])


def test_two_paths_two_pairs():
    first = sym([["a"], []], ["s", "t"])
    quiet = sym([[], []], ["s", "s"])
    loud = sym([["a"], ["a"]], ["t", "t"])
    other = sym([[], ["a"]], ["t", "s"])
    assert both_accept(TWO_PATHS, [first], [quiet])
    assert both_accept(TWO_PATHS, [first], [loud, quiet])
    assert both_accept(TWO_PATHS, [], [other])
    assert not both_accept(TWO_PATHS, [], [quiet])
    assert not both_accept(TWO_PATHS, [first], [other])


def test_starred_tail_inside_a_loop():
    # every round is one a followed by any number of b's
    a, b = sym([["a"]], ["s"]), sym([["b"]], ["s"])
    assert both_accept(BURSTS, [], [a])
    assert both_accept(BURSTS, [], [a, b, b])
    assert both_accept(BURSTS, [a, b], [b, a])          # rotated split
    assert not both_accept(BURSTS, [b], [a])
    assert not both_accept(BURSTS, [a], [b])            # a never returns
    assert not both_accept(BURSTS, [], [b, a])


def test_compiled_shape_is_match_then_loop():
    f = compile_spec(EVEN)
    assert isinstance(f, Diamond)
    assert isinstance(f.prog, Eps)
    assert isinstance(f.body, Delta)
    two = compile_spec(TWO_PATHS)
    assert isinstance(two, Or)
    assert isinstance(two.left, Diamond) and isinstance(two.right, Diamond)
    stem_prog = two.left.prog
    assert isinstance(stem_prog, Seq) and isinstance(stem_prog.left, ProgTest)
    assert isinstance(compile_spec(AB_STEM).prog, Star)
    assert isinstance(two.left.body.prog, Sum)


def test_rejects_nullable_loop():
    with pytest.raises(ParseError) as err:
        parse_omega_spec("""
aps a
programs s
pair:
  stem: eps
  loop: ([{a}]|(s))*
""")
    assert "empty word" in str(err.value)


def test_rejects_mixed_arity_and_undeclared_names():
    with pytest.raises(ArityError):
        parse_omega_spec("""
aps a
programs s
pair:
  stem: [{a}]|(s)
  loop: [{a},{a}]|(s,s)
""")
    with pytest.raises(ParseError):
        parse_omega_spec("""
aps a
programs s
pair:
  stem: eps
  loop: [{b}]|(s)
""")
    with pytest.raises(ParseError):
        parse_omega_spec("""
aps a
programs s
pair:
  stem: eps
  loop: [{a}]|(t)
""")


def test_rejects_structural_mistakes():
    with pytest.raises(ParseError):
        parse_omega_spec("aps a\nprograms s\n  stem: eps\n")
    with pytest.raises(ParseError):
        parse_omega_spec("aps a\nprograms s\n")
    with pytest.raises(ParseError):
        parse_omega_spec("""
aps a
programs s
pair:
  stem: eps
""")


def sample_word(rng, regex):
    if isinstance(regex, RSym):
        return [(regex.worlds, regex.steps)]
    if isinstance(regex, REps):
        return []
    if isinstance(regex, RCat):
        return sample_word(rng, regex.left) + sample_word(rng, regex.right)
    if isinstance(regex, RAlt):
        return sample_word(rng, rng.choice([regex.left, regex.right]))
    out = []
    for _ in range(rng.randrange(3)):
        out.extend(sample_word(rng, regex.body))
    return out


def spec_alphabet(spec):
    worlds = [frozenset(c) for c in
              ([], ["a"], ["b"], ["a", "b"]) if frozenset(c) <= set(spec.aps)]
    return [(tuple(ws), tuple(ps))
            for ws in _tuples(worlds, spec.arity)
            for ps in _tuples(spec.programs, spec.arity)]


def _tuples(pool, n):
    if n == 0:
        return [()]
    return [(x,) + rest for x in pool for rest in _tuples(pool, n - 1)]


def test_reference_and_compiled_agree_on_random_lassos():
    rng = random.Random(611)
    for spec in (EVEN, AB_STEM, STEP_ALT, TWO_PATHS, BURSTS):
        formula = compile_spec(spec)
        alphabet = spec_alphabet(spec)
        members = 0
        for _ in range(60):
            if rng.random() < 0.5:
                stem_r, loop_r = rng.choice(spec.pairs)
                stem = sample_word(rng, stem_r)
                period = sample_word(rng, loop_r)
                if rng.random() < 0.3 and period:
                    # rotate the split without changing the word
                    stem = stem + period[:1]
                    period = period[1:] + period[:1]
                if rng.random() < 0.3:
                    # random corruption, may or may not leave the language
                    where = rng.randrange(len(stem) + len(period))
                    repl = rng.choice(alphabet)
                    if where < len(stem):
                        stem[where] = repl
                    else:
                        period[where - len(stem)] = repl
            else:
                stem = [rng.choice(alphabet)
                        for _ in range(rng.randrange(3))]
                period = [rng.choice(alphabet)
                          for _ in range(1 + rng.randrange(2))]
            ref = reference_accepts(spec, stem, period)
            got = compiled_accepts(spec, stem, period, formula)
            assert ref == got, (spec.aps, stem, period)
            members += ref
        assert members >= 15

import random

import pytest

from hypermc.lasso import (LassoAssignment, LassoWord, align_lassos,
                           assignment_letters, format_lasso_file,
                           parse_lasso_file)

from helpers import rand_trace_word, trace_assignment

W = LassoWord([("q0", "s")], [("q1", "s"), ("q2", "t")])


def test_entry_indexing_wraps():
    assert W.entry(0) == ("q0", "s")
    assert W.entry(1) == ("q1", "s")
    assert W.entry(2) == ("q2", "t")
    assert W.entry(3) == ("q1", "s")
    assert W.world(4) == "q2" and W.program(4) == "t"


def test_normalize():
    assert W.normalize(0) == 0
    assert W.normalize(5) == 1
    assert W.normalize(6) == 2


def test_suffix_denotes_shifted_word():
    rng = random.Random(421)
    for _ in range(80):
        w = rand_trace_word(rng)
        i = rng.randint(0, 6)
        shifted = w.suffix(i)
        for j in range(8):
            assert shifted.entry(j) == w.entry(i + j)


def test_alignment_preserves_words():
    a = LassoWord([], [("x", "s")])
    b = LassoWord([("y", "s")], [("z", "s"), ("w", "t")])
    aligned = align_lassos([a, b])
    assert len(aligned[0].stem) == 1 and len(aligned[0].period) == 2
    for orig, new in zip([a, b], aligned):
        for j in range(10):
            assert orig.entry(j) == new.entry(j)


def test_misaligned_assignment_rejected():
    a = LassoWord([], [("x", "s")])
    b = LassoWord([("y", "s")], [("z", "s")])
    with pytest.raises(ValueError):
        LassoAssignment([a, b])


def test_empty_assignment_has_unit_positions():
    asg = LassoAssignment([])
    assert list(asg.positions()) == [0]
    assert asg.next_pos(0) == 0
    stem, period = assignment_letters(asg)
    assert stem == [] and period == [((), ())]


def test_assignment_letters_pair_worlds_and_programs():
    asg = LassoAssignment(align_lassos([
        LassoWord([("q0", "s")], [("q1", "t")]),
        LassoWord([("r0", "t")], [("r1", "s")]),
    ]))
    stem, period = assignment_letters(asg)
    assert stem == [(("q0", "r0"), ("s", "t"))]
    assert period == [(("q1", "r1"), ("t", "s"))]


def test_parse_format_round_trip_states():
    text = "path p1: (q0 s) | (q1 s) (q2 t)\npath p2: (r0 t) | (r1 s) (r1 s)\n"
    asg = parse_lasso_file(text)
    assert asg.names == ("p1", "p2")
    assert asg.paths[0].stem == ((("q0"), "s"),)
    again = parse_lasso_file(format_lasso_file(asg))
    assert again.paths == asg.paths and again.names == asg.names


def test_parse_format_round_trip_traces():
    rng = random.Random(422)
    for trial in range(50):
        asg = trace_assignment(rng, rng.randint(1, 3))
        text = format_lasso_file(asg, trace=True)
        again = parse_lasso_file(text, trace=True)
        assert again.paths == asg.paths, (trial, text)


def test_parse_rejects_empty_period():
    with pytest.raises(Exception):
        parse_lasso_file("path p1: (q0 s) |\n")

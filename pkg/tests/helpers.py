"""Shared generators and search routines for the test suite.

Every generator takes an explicit random.Random so a failing trial can be
replayed from the seed named in the test.
"""

from hypermc import syntax as S
from hypermc.kts import Kts
from hypermc.lasso import LassoAssignment, LassoWord, align_lassos
from hypermc.marked import eps_reach, tau_reach
from hypermc.oracle import eval_formula
from hypermc.syntax import formula_size, prog_size

APS = ("a", "b")
PROGS = ("s", "t")


# ---------------------------------------------------------------- systems

def rand_kts(rng, max_states=4):
    nstates = rng.randint(2, max_states)
    states = ["q%d" % i for i in range(nstates)]
    aps = APS[:rng.randint(1, 2)]
    programs = PROGS[:rng.randint(1, 2)]
    labels = {q: frozenset(ap for ap in aps if rng.random() < 0.5)
              for q in states}
    edges = {}

    def add(src, prog, dst):
        key = (src, prog)
        if dst not in edges.get(key, ()):
            edges[key] = edges.get(key, ()) + (dst,)

    for q in states:
        add(q, rng.choice(programs), rng.choice(states))
    for _ in range(rng.randint(0, 2 * nstates)):
        add(rng.choice(states), rng.choice(programs), rng.choice(states))
    # one self-loop keeps short-period lassos reachable from everywhere
    loop = rng.choice(states)
    add(loop, rng.choice(programs), loop)
    return Kts(aps, programs, labels, states[0], edges)


def kts_lasso(rng, kts, start=None, period_lens=None, tries=60):
    """A lasso-shaped path of the system: stem <= 3, period <= 3, and the
    period length restricted to period_lens when given.  None if sampling
    keeps missing (pathological edge layouts)."""
    for _ in range(tries):
        current = start if start is not None else rng.choice(kts.states)
        entries = []
        index = {}
        while current not in index and len(entries) < 8:
            index[current] = len(entries)
            prog, dst = rng.choice(list(kts.out_edges(current)))
            entries.append((current, prog))
            current = dst
        if current not in index:
            continue
        cut = index[current]
        stem, period = entries[:cut], entries[cut:]
        if len(stem) > 3 or len(period) > 3:
            continue
        if period_lens is not None and len(period) not in period_lens:
            continue
        return LassoWord(stem, period)
    return None


def kts_assignment(rng, kts, n):
    """n aligned path lassos; aligned period kept <= 3 by sampling every
    path with a period length dividing one common target."""
    if n == 0:
        return LassoAssignment([])
    for target in rng.sample((1, 2, 3), 3):
        lens = {d for d in (1, 2, 3) if target % d == 0}
        words = []
        for _ in range(n):
            w = kts_lasso(rng, kts, period_lens=lens)
            if w is None:
                break
            words.append(w)
        if len(words) == n:
            return LassoAssignment(align_lassos(words))
    return None


# ---------------------------------------------------------------- traces

def rand_world(rng, aps=APS):
    return frozenset(ap for ap in aps if rng.random() < 0.5)


def rand_trace_word(rng, aps=APS, programs=PROGS, smax=2, pmax=3):
    stem = [(rand_world(rng, aps), rng.choice(programs))
            for _ in range(rng.randint(0, smax))]
    period = [(rand_world(rng, aps), rng.choice(programs))
              for _ in range(rng.randint(1, pmax))]
    return LassoWord(stem, period)


def trace_assignment(rng, n, aps=APS, programs=PROGS, smax=2, pmax=3):
    return LassoAssignment(align_lassos(
        [rand_trace_word(rng, aps, programs, smax, pmax) for _ in range(n)]))


# ---------------------------------------------------------------- formulas

def rand_atom(rng, nvars, aps):
    idx = rng.randint(1, nvars)
    return S.Atom(rng.choice(aps), "p%d" % idx, idx)


def rand_test_formula(rng, nvars, aps=APS):
    atom = rand_atom(rng, nvars, aps)
    roll = rng.random()
    if roll < 0.4:
        return atom
    if roll < 0.6:
        return S.Not(atom)
    pair = (atom, rand_atom(rng, nvars, aps))
    return S.And(*pair) if rng.random() < 0.5 else S.Or(*pair)


def rand_program(rng, nvars, depth=3, programs=PROGS, aps=APS):
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        return S.Tup(tuple(rng.choice((None,) + tuple(programs))
                           for _ in range(nvars)))
    if roll < 0.45:
        return S.Eps()
    if roll < 0.6:
        return S.Test(rand_test_formula(rng, nvars, aps))

    def sub():
        return rand_program(rng, nvars, depth - 1, programs, aps)

    if roll < 0.72:
        return S.Sum(sub(), sub())
    if roll < 0.88:
        return S.Seq(sub(), sub())
    return S.Star(sub())


def sized_program(rng, nvars, max_size=8, programs=PROGS, aps=APS):
    while True:
        p = rand_program(rng, nvars, programs=programs, aps=aps)
        if prog_size(p) <= max_size:
            return p


def rand_qf_formula(rng, nvars, depth=2, aps=APS, programs=PROGS):
    """Quantifier-free formula in negation normal form."""
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        atom = rand_atom(rng, nvars, aps)
        return S.Not(atom) if rng.random() < 0.4 else atom

    def sub():
        return rand_qf_formula(rng, nvars, depth - 1, aps, programs)

    def prog():
        return rand_program(rng, nvars, depth=2, programs=programs, aps=aps)

    if roll < 0.48:
        return S.And(sub(), sub())
    if roll < 0.62:
        return S.Or(sub(), sub())
    if roll < 0.76:
        return S.Diamond(prog(), sub())
    if roll < 0.9:
        return S.Box(prog(), sub())
    if roll < 0.96:
        return S.Delta(prog())
    return S.NotDelta(prog())


def sized_qf_formula(rng, nvars, max_size=8, aps=APS, programs=PROGS):
    while True:
        f = rand_qf_formula(rng, nvars, aps=aps, programs=programs)
        if formula_size(f) <= max_size:
            return f


# ---------------------------------------------------------------- automata

ABA_LETTERS = [("a",), ("b",)]


def rand_aba(rng, max_states=6, letters=ABA_LETTERS):
    """Random alternating automaton over plain letters, rho shapes mixing
    disjunction, conjunction and constants."""
    from hypermc.aba import Aba
    from hypermc.posbool import FALSE, TRUE, BVar, band, bor

    states = list(range(rng.randint(2, max_states)))
    table = {}
    for q in states:
        for letter in letters:
            roll = rng.random()
            picks = [BVar(rng.choice(states))
                     for _ in range(rng.randint(1, 3))]
            if roll < 0.08:
                pb = TRUE if rng.random() < 0.5 else FALSE
            elif roll < 0.55:
                pb = bor(picks)
            elif roll < 0.85:
                pb = band(picks)
            else:
                pb = bor([band(picks), BVar(rng.choice(states))])
            table[(q, letter)] = pb
    accepting = frozenset(q for q in states if rng.random() < 0.4)
    return Aba(states, 0, lambda q, a: table[(q, a)], accepting,
               list(letters))


def rand_letter_lasso(rng, letters=ABA_LETTERS, smax=3, pmax=3):
    stem = [rng.choice(letters) for _ in range(rng.randint(0, smax))]
    period = [rng.choice(letters) for _ in range(rng.randint(1, pmax))]
    return stem, period


# ------------------------------------------------------------ run search

def segment_matches(m, asg, i, k, kts=None, trace=False):
    """Whether some state sequence of the step automaton m consumes the
    assignment from position i to position k.

    Search over (node, position) pairs: a tuple edge consumes one step,
    the tests collected along the epsilon prefix must hold at the current
    position, and acceptance needs an epsilon path to the final node with
    its tests holding at k.  Positions are normalized, so wrapped
    segments terminate against the seen set.
    """
    def tests_hold(ids, pos):
        return all(eval_formula(asg, pos, m.tests[t], kts=kts, trace=trace)
                   for t in ids)

    seen = set()
    frontier = [(m.initial, i)]
    while frontier:
        node, pos = frontier.pop()
        if (node, pos) in seen:
            continue
        seen.add((node, pos))
        if pos == k:
            for marks, end in eps_reach(m, node):
                if end == m.final and tests_hold(marks, pos):
                    return True
        for marks, dst in tau_reach(m, node, asg.programs_at(pos)):
            if tests_hold(marks, pos):
                frontier.append((dst, asg.next_pos(pos)))
    return False

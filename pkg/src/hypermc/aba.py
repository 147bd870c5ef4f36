"""Alternating and nondeterministic Buchi automata.

Transition conditions are positive boolean formulas over states,
produced on demand by a callable so the alphabet never has to be
enumerated to build an automaton.  Operations that do enumerate
(dealternation, emptiness) use the letters attached to the automaton.

Every automaton carries the two reserved sink states: the accepting
sink with condition true and the rejecting sink with condition false.

  miyano_hayashi  breakpoint dealternation, pairs (S, O) where O are the
                  branches still owing an accepting visit
  complement      dualize (co-Buchi) then rank-based translation back to
                  Buchi; ranks 0..2(n-1), odd ranks own the co-Buchi
                  obligation, so states in the original accepting set
                  never take an odd rank
  is_empty        reachable accepting cycle search, returns a witness
  accepts_lasso   membership of an ultimately periodic word, decided on
                  the product of the breakpoint construction with the
                  word positions
"""

from .posbool import (FALSE, TRUE, BVar, band, bor, dual, minimal_models,
                      substitute)


class _Sink:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


SINK_TRUE = _Sink("sink_true")
SINK_FALSE = _Sink("sink_false")


class Aba:
    def __init__(self, states, initial, rho, accepting, letters):
        self.states = frozenset(states) | {SINK_TRUE, SINK_FALSE}
        self.initial = initial
        self._rho = rho
        self.accepting = frozenset(accepting) | {SINK_TRUE}
        self.letters = tuple(letters)
        if SINK_FALSE in self.accepting:
            raise ValueError("rejecting sink cannot be accepting")

    def rho(self, state, letter):
        if state is SINK_TRUE:
            return TRUE
        if state is SINK_FALSE:
            return FALSE
        return self._rho(state, letter)

    def size(self):
        return len(self.states)


class Nba(Aba):
    """Aba whose conditions are disjunctions of single states."""

    def __init__(self, states, initial, succ, accepting, letters):
        self._succ = succ
        super().__init__(states, initial, self._rho_from_succ, accepting, letters)

    def _rho_from_succ(self, state, letter):
        return bor([BVar(q) for q in sorted(self._succ(state, letter), key=repr)])

    def successors(self, state, letter):
        if state is SINK_TRUE:
            return frozenset([SINK_TRUE])
        if state is SINK_FALSE:
            return frozenset()
        return frozenset(self._succ(state, letter))


# ------------------------------------------------------------ dealternation

def mh_successors(aba, pair, letter):
    """Successor pairs of the breakpoint construction, built from minimal
    models; on a breakpoint (no owing branches) every non-accepting
    successor starts owing again."""
    current, owing = pair
    if owing:
        owing_models = minimal_models(
            band([aba.rho(q, letter) for q in sorted(owing, key=repr)]))
        rest_models = minimal_models(
            band([aba.rho(q, letter) for q in sorted(current - owing, key=repr)]))
        out = set()
        for u in owing_models:
            for v in rest_models:
                out.add((u | v, frozenset(u - aba.accepting)))
        return out
    out = set()
    for m in minimal_models(
            band([aba.rho(q, letter) for q in sorted(current, key=repr)])):
        out.add((m, frozenset(m - aba.accepting)))
    return out


def mh_initial(aba):
    first = frozenset([aba.initial])
    return (first, frozenset(first - aba.accepting))


def miyano_hayashi(aba):
    """Equivalent nondeterministic automaton over the same letters; states
    are the reachable (current, owing) pairs, accepting iff owing is empty."""
    init = mh_initial(aba)
    table = {}
    seen = {init}
    frontier = [init]
    while frontier:
        pair = frontier.pop()
        for letter in aba.letters:
            succs = frozenset(mh_successors(aba, pair, letter))
            table[(pair, letter)] = succs
            for nxt in succs:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    assert len(seen) <= 3 ** len(aba.states)
    accepting = frozenset(p for p in seen if not p[1])
    return Nba(seen, init, lambda q, a: table.get((q, a), frozenset()),
               accepting, aba.letters)


# ------------------------------------------------------------ complement

def complement(aba):
    """Language complement over the same letters.

    The dual automaton (swapped connectives and sinks) accepts the
    complement under co-Buchi acceptance on the original accepting set;
    ranks turn that back into a Buchi condition.  Runs of the dual never
    contain the original accepting sink (its dual condition is false), so
    run dags have width at most n-1 and ranks 0..2(n-1) suffice.

    Transitions drop ranks one step at a time.  That loses no words: runs
    are trees, and any branch ranking can be replayed as a delayed
    descent, pausing at the current rank wherever the one-lower rank
    would be odd on a state that must not take odd ranks.
    """
    n = len(aba.states)
    top = 2 * (n - 1)
    blocked = aba.accepting

    def valid(q, r):
        return r % 2 == 0 or q not in blocked

    states = [(q, r) for q in aba.states for r in range(top + 1) if valid(q, r)]

    def ranked(q, r):
        def lower(v):
            return bor([BVar((v, r2)) for r2 in (r, r - 1)
                        if r2 >= 0 and valid(v, r2)])
        return lower

    def rho(state, letter):
        q, r = state
        return substitute(dual(aba.rho(q, letter)), ranked(q, r))

    accepting = frozenset(s for s in states if s[1] % 2 == 1)
    result = Aba(states, (aba.initial, top), rho, accepting, aba.letters)
    assert result.size() <= 2 * n * n + 2
    return result


# ------------------------------------------------------------ emptiness

class Witness:
    """Accepting lasso of a nonempty automaton: letters and the state run,
    aligned so states[j] reads letters[j]."""

    def __init__(self, stem_letters, period_letters, stem_states, period_states):
        self.stem_letters = tuple(stem_letters)
        self.period_letters = tuple(period_letters)
        self.stem_states = tuple(stem_states)
        self.period_states = tuple(period_states)

    def __repr__(self):
        return "Witness(stem=%r, period=%r)" % (self.stem_letters,
                                                self.period_letters)


def _nba_successors(nba, state, letter):
    if isinstance(nba, Nba):
        return nba.successors(state, letter)
    succs = set()
    for model in minimal_models(nba.rho(state, letter)):
        if not model:
            succs.add(SINK_TRUE)
        elif len(model) == 1:
            succs.add(next(iter(model)))
        else:
            raise ValueError("automaton is not nondeterministic")
    return succs


def is_empty(nba):
    """None if the language is empty, otherwise a Witness."""
    edges = {}
    parent = {nba.initial: None}
    frontier = [nba.initial]
    while frontier:
        state = frontier.pop()
        out = []
        for letter in nba.letters:
            for nxt in _nba_successors(nba, state, letter):
                out.append((letter, nxt))
                if nxt not in parent:
                    parent[nxt] = (state, letter)
                    frontier.append(nxt)
        edges[state] = out

    for target in sorted(parent, key=repr):
        if target not in nba.accepting:
            continue
        cycle = _find_cycle(edges, target)
        if cycle is None:
            continue
        stem = []
        state = target
        while parent[state] is not None:
            prev, letter = parent[state]
            stem.append((prev, letter))
            state = prev
        stem.reverse()
        return Witness([letter for _, letter in stem],
                       [letter for _, letter in cycle],
                       [s for s, _ in stem],
                       [s for s, _ in cycle])
    return None


def _find_cycle(edges, target):
    """A nonempty path target -> target as [(state, letter), ...], where
    each entry is a state together with the letter read there."""
    back = {}
    frontier = [target]
    while frontier:
        nxt_frontier = []
        for state in frontier:
            for letter, nxt in edges.get(state, ()):
                if nxt == target:
                    path = [(state, letter)]
                    while state != target:
                        state, plet = back[state]
                        path.append((state, plet))
                    path.reverse()
                    return path
                if nxt not in back and nxt != target:
                    back[nxt] = (state, letter)
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
    return None


def accepts_lasso(aba, stem_letters, period_letters):
    """Membership of stem . period^omega.

    Solved as an acceptance game over (state, position) nodes: at each
    node the automaton picks a minimal model of its condition and every
    member advances to the next position.  Winning nodes are those from
    which accepting states can be forced onto every infinite branch,
    computed by the usual nested fixpoint for Buchi objectives.  No
    determinization happens, so ranked complements stay cheap to test.
    """
    stem_letters = tuple(stem_letters)
    period_letters = tuple(period_letters)
    if not period_letters:
        raise ValueError("period must be nonempty")
    if isinstance(aba.initial, _Sink):
        return aba.initial is SINK_TRUE

    letters = stem_letters + period_letters
    total = len(letters)
    wrap = len(stem_letters)

    def next_pos(pos):
        pos += 1
        return wrap if pos == total else pos

    start = (aba.initial, 0)
    moves = {}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        if node in moves:
            continue
        q, pos = node
        opts = []
        for model in minimal_models(aba.rho(q, letters[pos])):
            if SINK_FALSE in model:
                continue
            opts.append(frozenset(model) - {SINK_TRUE})
        moves[node] = opts
        pos2 = next_pos(pos)
        for model in opts:
            for q2 in model:
                if (q2, pos2) not in moves:
                    frontier.append((q2, pos2))
    nodes = set(moves)
    acc = {v for v in nodes if v[0] in aba.accepting}

    def cpre(target):
        # nodes with a model whose members all sit in target next round
        found = set()
        for node in nodes:
            pos2 = next_pos(node[1])
            for model in moves[node]:
                if all((q2, pos2) in target for q2 in model):
                    found.add(node)
                    break
        return found

    # nu Z. mu Y. cpre(Y) | (acc & cpre(Z))
    z = set(nodes)
    while True:
        seed = acc & cpre(z)
        y = set()
        while True:
            grown = seed | cpre(y)
            if grown == y:
                break
            y = grown
        if y == z:
            break
        z = y
    return (aba.initial, 0) in z


# ------------------------------------------------------------ display

def format_letter(letter):
    if not (isinstance(letter, tuple) and len(letter) == 2
            and all(isinstance(part, tuple) for part in letter)):
        return str(letter)
    worlds, progs = letter
    if not worlds and not progs:
        return "."
    w = ",".join(_format_world(x) for x in worlds)
    return "(%s|%s)" % (w, ",".join(progs))


def _format_world(world):
    if isinstance(world, frozenset):
        return "{%s}" % " ".join(sorted(world))
    return str(world)


def to_dot(aut):
    """DOT text; conjunctive branching is drawn through small and-nodes."""
    states = sorted(aut.states, key=repr)
    index = {q: i for i, q in enumerate(states)}
    lines = ["digraph automaton {", "  rankdir=LR;"]
    for q in states:
        shape = "doublecircle" if q in aut.accepting else "circle"
        lines.append('  n%d [label="%s", shape=%s];' % (index[q], repr(q), shape))
    lines.append("  start [shape=point];")
    lines.append("  start -> n%d;" % index[aut.initial])
    joint = 0
    for q in states:
        for letter in aut.letters:
            label = format_letter(letter)
            for model in minimal_models(aut.rho(q, letter)):
                if not model:
                    lines.append('  n%d -> n%d [label="%s"];'
                                 % (index[q], index[SINK_TRUE], label))
                elif len(model) == 1:
                    dst = next(iter(model))
                    lines.append('  n%d -> n%d [label="%s"];'
                                 % (index[q], index[dst], label))
                else:
                    lines.append('  j%d [shape=point, label=""];' % joint)
                    lines.append('  n%d -> j%d [label="%s", arrowhead=none];'
                                 % (index[q], joint, label))
                    for dst in sorted(model, key=repr):
                        lines.append("  j%d -> n%d;" % (joint, index[dst]))
                    joint += 1
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Compilation of formulas into alternating Buchi automata.

Letters are pairs (worlds, steps): the current world of every bound path
and the program each path takes next, both tuples indexed by binding
order.  Over a transition system worlds are its states; in trace mode
worlds are sets of atomic propositions and path quantifiers are refused.

Program modalities run the marked automaton of the program inside the
state space, spawning one automaton per test at every position where an
epsilon path crosses the test's marking.  Two transition builders exist:

  mode="succinct"   guard formulas from the precomputed reachability
                    tables, tests substituted in symbolically
  mode="enumerate"  explicit sums over the reachability pairs

Both produce the same language; the enumerating builder exists as the
differential check for the tables.

The loop modality keeps a hub state that is the only accepting core
state: every completed match of the program jumps back to the hub, so
accepting runs are exactly those that complete matches forever (or fall
into an epsilon self-match, which discharges the core outright).
Negations of quantifiers and of the loop modality go through language
complement of the compiled subautomaton.
"""

import itertools
import warnings

from .aba import SINK_FALSE, SINK_TRUE, Aba, Nba, complement, miyano_hayashi
from .config import Config
from .errors import BindingError, CapExceededError, ModeError
from .marked import (build_marked_nfa, eps_formula, eps_reach, guard_matches,
                     tau_reach)
from .posbool import FALSE, TRUE, BVar, band, bor, dual, substitute
from .syntax import (And, Atom, Box, Delta, Diamond, Exists, FalseF, Not,
                     NotDelta, NotExists, Or, TrueF, to_nnf)


class KtsInterp:
    """Worlds are the states of a transition system."""

    trace = False

    def __init__(self, kts):
        self.kts = kts
        self.programs = kts.programs

    def holds(self, ap, world):
        return self.kts.holds(ap, world)

    def worlds(self):
        return self.kts.states

    def successors(self, world, program):
        return self.kts.successors(world, program)

    def initial(self):
        return self.kts.init


class TraceInterp:
    """Worlds are sets of atomic propositions; no underlying system."""

    trace = True

    def __init__(self, aps, programs):
        self.aps = tuple(sorted(aps))
        self.programs = tuple(programs)

    def holds(self, ap, world):
        return ap in world

    def worlds(self):
        out = []
        for k in range(len(self.aps) + 1):
            for combo in itertools.combinations(self.aps, k):
                out.append(frozenset(combo))
        return tuple(out)

    def successors(self, world, program):
        raise ModeError("path quantifier requires a transition system")

    def initial(self):
        raise ModeError("path quantifier requires a transition system")


def letters_for(interp, nvars, config):
    """The full alphabet at nvars bound paths, as (worlds, steps) pairs."""
    worlds = interp.worlds()
    progs = interp.programs
    total = (len(worlds) * max(len(progs), 1)) ** nvars
    if interp.trace and total > config.trace_alphabet_cap:
        raise CapExceededError(
            "alphabet has %d letters, over the configured cap of %d"
            % (total, config.trace_alphabet_cap))
    return tuple((ws, ps)
                 for ws in itertools.product(worlds, repeat=nvars)
                 for ps in itertools.product(progs, repeat=nvars))


def build_aba(formula, nvars=0, kts=None, aps=None, programs=None,
              trace=False, mode="succinct", config=None):
    """Automaton accepting exactly the encoded path assignments that
    satisfy the formula.  The formula must be in negation normal form and
    must not bind more than the free indices 1..nvars at the top."""
    if config is None:
        config = Config()
    if trace:
        if aps is None or programs is None:
            raise ValueError("trace mode needs explicit aps and programs")
        interp = TraceInterp(aps, programs)
    else:
        if kts is None:
            raise ValueError("a transition system is required outside trace mode")
        interp = KtsInterp(kts)
    builder = _Builder(interp, mode, config)
    init = builder.build(formula, nvars)
    aut = builder.finalize(init, letters_for(interp, nvars, config))
    aut.build_stats = builder.stats
    return aut


class _Builder:
    def __init__(self, interp, mode, config, notdelta_depth=0):
        if mode not in ("succinct", "enumerate"):
            raise ValueError("unknown transition mode %r" % mode)
        self.interp = interp
        self.mode = mode
        self.config = config
        self.notdelta_depth = notdelta_depth
        self.rho_funcs = {}
        self.accepting = set()
        self.count = 0
        self.origin = {}
        self.stats = {"states": 0, "stages": []}

    # ------------------------------------------------------------ plumbing

    def fresh(self, rho_func, accepting=False):
        state = self.count
        self.count += 1
        self.rho_funcs[state] = rho_func
        if accepting:
            self.accepting.add(state)
        return state

    def rho(self, state, letter):
        if state is SINK_TRUE:
            return TRUE
        if state is SINK_FALSE:
            return FALSE
        return self.rho_funcs[state](letter)

    def finalize(self, init, letters):
        self.stats["states"] = self.count
        aut = Aba(range(self.count), init, self.rho_funcs_dispatch,
                  frozenset(self.accepting), letters)
        aut.state_origin = dict(self.origin)
        return aut

    def rho_funcs_dispatch(self, state, letter):
        return self.rho_funcs[state](letter)

    def embed(self, aut):
        """Copy a finished automaton into this builder's state space."""
        mapping = {}
        for q in sorted(aut.states, key=repr):
            if q is SINK_TRUE or q is SINK_FALSE:
                continue
            mapping[q] = self.fresh(None, accepting=q in aut.accepting)
            self.origin[mapping[q]] = q

        def remap(var):
            return BVar(mapping.get(var, var))

        for q, i in mapping.items():
            def make(q=q):
                return lambda letter: substitute(aut.rho(q, letter), remap)
            self.rho_funcs[i] = make()
        if aut.initial is SINK_TRUE or aut.initial is SINK_FALSE:
            return aut.initial
        return mapping[aut.initial]

    # ------------------------------------------------------------ cases

    def build(self, f, n):
        if isinstance(f, TrueF):
            return SINK_TRUE
        if isinstance(f, FalseF):
            return SINK_FALSE
        if isinstance(f, Atom):
            return self._atom(f, n, positive=True)
        if isinstance(f, Not):
            if not isinstance(f.body, Atom):
                raise ValueError("negation must sit on atoms; normalize first")
            return self._atom(f.body, n, positive=False)
        if isinstance(f, (And, Or)):
            left = self.build(f.left, n)
            right = self.build(f.right, n)
            combine = band if isinstance(f, And) else bor
            return self.fresh(
                lambda letter: combine([self.rho(left, letter),
                                        self.rho(right, letter)]))
        if isinstance(f, Diamond):
            return self._modality(f.prog, f.body, n, existential=True)
        if isinstance(f, Box):
            return self._modality(f.prog, f.body, n, existential=False)
        if isinstance(f, Delta):
            return self._delta(f.prog, n)
        if isinstance(f, NotDelta):
            return self._not_delta(f.prog, n)
        if isinstance(f, Exists):
            return self.embed(self._exists_nba(f.body, n))
        if isinstance(f, NotExists):
            inner = self._exists_nba(f.body, n)
            comp = complement(inner)
            self.stats["stages"].append(("complement", comp.size()))
            return self.embed(comp)
        raise ValueError("cannot compile %r" % type(f).__name__)

    def _atom(self, atom, n, positive):
        if atom.idx > n:
            raise BindingError("path %r is not bound here" % atom.var)
        interp = self.interp

        def rho_atom(letter, ap=atom.ap, idx=atom.idx):
            hit = interp.holds(ap, letter[0][idx - 1])
            return TRUE if hit == positive else FALSE

        return self.fresh(rho_atom)

    # -------------------------------------------------- program modalities

    def _tests_for(self, m, n, negated):
        inits = []
        for psi in m.tests:
            inits.append(self.build(to_nnf(psi, negate=negated), n))
        return inits

    def _modality(self, prog, body, n, existential):
        m = build_marked_nfa(prog)
        test_inits = self._tests_for(m, n, negated=not existential)
        body_init = self.build(body, n)
        node_state = {node: self.fresh(None, accepting=not existential)
                      for node in m.nodes}
        for node in m.nodes:
            self.rho_funcs[node_state[node]] = self._modality_rho(
                m, node, node_state, test_inits, body_init, existential)
        return node_state[m.initial]

    def _modality_rho(self, m, q, node_state, test_inits, body_init,
                      existential):
        outer = bor if existential else band
        inner = band if existential else bor

        def tests_now(letter, ids):
            return [self.rho(test_inits[t], letter) for t in sorted(ids)]

        if self.mode == "enumerate":
            def rho(letter):
                parts = []
                for marks, dst in sorted(tau_reach(m, q, letter[1]),
                                         key=lambda p: (sorted(p[0]), p[1])):
                    parts.append(inner([BVar(node_state[dst])]
                                       + tests_now(letter, marks)))
                for marks, dst in sorted(eps_reach(m, q),
                                         key=lambda p: (sorted(p[0]), p[1])):
                    if dst == m.final:
                        parts.append(inner([self.rho(body_init, letter)]
                                           + tests_now(letter, marks)))
                return outer(parts)
            return rho

        def guard_sub(letter):
            return lambda t: self.rho(test_inits[t], letter)

        def rho(letter):
            sub = guard_sub(letter)
            parts = []
            for src in m.nodes:
                ep = eps_formula(m, q, src)
                if ep is FALSE:
                    continue
                ep = ep if existential else dual(ep)
                for guard, dst in m.tups.get(src, ()):
                    if guard_matches(guard, letter[1]):
                        parts.append(inner([substitute(ep, sub),
                                            BVar(node_state[dst])]))
            ef = eps_formula(m, q, m.final)
            if ef is not FALSE:
                ef = ef if existential else dual(ef)
                parts.append(inner([substitute(ef, sub),
                                    self.rho(body_init, letter)]))
            return outer(parts)
        return rho

    # ----------------------------------------------------- loop modality

    def _delta(self, prog, n):
        m = build_marked_nfa(prog)
        test_inits = self._tests_for(m, n, negated=False)
        hub = self.fresh(None, accepting=True)
        node_state = {node: self.fresh(None) for node in m.nodes}
        for node in m.nodes:
            self.rho_funcs[node_state[node]] = self._delta_rho(
                m, node, hub, node_state, test_inits, with_die=False)
        self.rho_funcs[hub] = self._delta_rho(
            m, m.initial, hub, node_state, test_inits, with_die=True)
        return hub

    def _delta_rho(self, m, q, hub, node_state, test_inits, with_die):
        def tests_now(letter, ids):
            return [self.rho(test_inits[t], letter) for t in sorted(ids)]

        def tests_waiting(ids):
            return [BVar(test_inits[t]) for t in sorted(ids)]

        if self.mode == "enumerate":
            def rho(letter):
                parts = []
                reach = sorted(tau_reach(m, q, letter[1]),
                               key=lambda p: (sorted(p[0]), p[1]))
                for marks, dst in reach:
                    parts.append(band([BVar(node_state[dst])]
                                      + tests_now(letter, marks)))
                    for wmarks, wdst in eps_reach(m, dst):
                        if wdst == m.final:
                            parts.append(band([BVar(hub)]
                                              + tests_now(letter, marks)
                                              + tests_waiting(wmarks)))
                if with_die:
                    for marks, dst in sorted(eps_reach(m, q),
                                             key=lambda p: (sorted(p[0]), p[1])):
                        if dst == m.final:
                            parts.append(band(tests_now(letter, marks)))
                return bor(parts)
            return rho

        def rho(letter):
            sub_now = lambda t: self.rho(test_inits[t], letter)
            sub_wait = lambda t: BVar(test_inits[t])
            parts = []
            for src in m.nodes:
                ep = eps_formula(m, q, src)
                if ep is FALSE:
                    continue
                for guard, dst in m.tups.get(src, ()):
                    if not guard_matches(guard, letter[1]):
                        continue
                    parts.append(band([substitute(ep, sub_now),
                                       BVar(node_state[dst])]))
                    wrap = eps_formula(m, dst, m.final)
                    if wrap is not FALSE:
                        parts.append(band([substitute(ep, sub_now),
                                           substitute(wrap, sub_wait),
                                           BVar(hub)]))
            if with_die:
                die = eps_formula(m, q, m.final)
                if die is not FALSE:
                    parts.append(substitute(die, sub_now))
            return bor(parts)
        return rho

    def _not_delta(self, prog, n):
        depth = self.notdelta_depth + 1
        if depth > self.config.notdelta_nesting_cap:
            warnings.warn(
                "negated loop modality nested %d deep, over the configured "
                "cap of %d; expect a large automaton"
                % (depth, self.config.notdelta_nesting_cap))
        sub = _Builder(self.interp, self.mode, self.config, notdelta_depth=depth)
        inner_init = sub._delta(prog, n)
        inner = sub.finalize(inner_init,
                             letters_for(self.interp, n, self.config))
        comp = complement(inner)
        self.stats["stages"].append(("complement", comp.size()))
        return self.embed(comp)

    # -------------------------------------------------------- quantifiers

    def _exists_nba(self, body, n):
        if self.interp.trace:
            raise ModeError("path quantifier requires a transition system")
        sub = _Builder(self.interp, self.mode, self.config,
                       notdelta_depth=self.notdelta_depth)
        body_init = sub.build(body, n + 1)
        body_aba = sub.finalize(
            body_init, letters_for(self.interp, n + 1, self.config))
        self.stats["stages"].append(("body", body_aba.size()))
        body_nba = miyano_hayashi(body_aba)
        self.stats["stages"].append(("dealternated", body_nba.size()))
        nba = _exists_product(body_nba, self.interp, n,
                              letters_for(self.interp, n, self.config))
        self.stats["stages"].append(("quantified", nba.size()))
        return nba


def _exists_product(body_nba, interp, n, letters):
    """Nondeterministic automaton for the existential quantifier: guess a
    path of the system and the program it takes each step, feed both to
    the dealternated body as the innermost component."""
    progs = interp.programs
    init = ("start", n)

    def successors(state, letter):
        worlds, steps = letter
        out = set()
        if state == init:
            branch = worlds[n - 1] if n >= 1 else interp.initial()
            pre = [(body_nba.initial, branch, sigma) for sigma in progs]
        else:
            pre = [state]
        for q, world, sigma in pre:
            body_letter = (worlds + (world,), steps + (sigma,))
            for q2 in body_nba.successors(q, body_letter):
                for world2 in interp.successors(world, sigma):
                    for sigma2 in progs:
                        out.add((q2, world2, sigma2))
        return out

    table = {}
    seen = {init}
    frontier = [init]
    while frontier:
        state = frontier.pop()
        for letter in letters:
            succs = frozenset(successors(state, letter))
            table[(state, letter)] = succs
            for nxt in succs:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)

    accepting = frozenset(s for s in seen
                          if s != init and s[0] in body_nba.accepting)
    return Nba(seen, init, lambda q, a: table.get((q, a), frozenset()),
               accepting, letters)

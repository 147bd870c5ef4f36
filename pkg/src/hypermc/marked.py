"""Step automata for programs: NFAs over synchronous step tuples whose
states may be marked with test formulas.

One automaton node per construction rule, at most 3 per program node.
Epsilon edges carry no input; tuple edges consume one step and are
guarded by a tuple of program names and wildcards.  Star constructions
add a backwards epsilon edge from their fresh final to their fresh
initial node.

Besides the explicit closure relations (eps_reach / tau_reach) the
builder maintains a table of guard formulas over test ids:

  dp(q, q')  -- reachability by epsilon edges ignoring all backwards
                edges, as a positive formula whose variables are the
                tests that must hold along the way;
  eps_formula(q, q') -- full epsilon reachability; one use of the
                innermost common star's backwards edge is enough, so the
                formula is dp(q,q') | (dp(q,qf) & dp(q0,q')) for that
                star's fresh nodes.

The closure relations serve as the testing oracle for the tables; the
formula construction consumes the tables.
"""

from .posbool import FALSE, TRUE, BVar, band, bor
from . import posbool
from .syntax import Eps, Seq, Star, Sum, Test, Tup, prog_size


class MarkedNfa:
    def __init__(self, prog, nodes, initial, final, eps, tups, marks,
                 tests, star_scope, star_info, backwards, dp):
        self.prog = prog
        self.nodes = tuple(nodes)
        self.initial = initial
        self.final = final
        self.eps = eps                  # node -> tuple of nodes
        self.tups = tups                # node -> tuple of (guard, node)
        self.marks = marks              # node -> test id
        self.tests = tuple(tests)       # test id -> formula
        self.star_scope = star_scope    # node -> tuple of star ids, outermost first
        self.star_info = star_info      # star id -> (fresh initial, fresh final)
        self.backwards = backwards      # frozenset of (src, dst) eps edges
        self.dp = dp                    # (node, node) -> guard formula, FALSE absent
        self._eps_cache = {}
        self._eps_nb_cache = {}

    def mark_ids(self, node):
        if node in self.marks:
            return frozenset([self.marks[node]])
        return frozenset()


def build_marked_nfa(prog):
    builder = _Builder()
    initial, final, nodes = builder.build(prog)
    m = MarkedNfa(prog, sorted(nodes), initial, final,
                  {q: tuple(v) for q, v in builder.eps.items()},
                  {q: tuple(v) for q, v in builder.tups.items()},
                  builder.marks, builder.tests, builder.scope,
                  builder.star_info, frozenset(builder.backwards), builder.dp)
    assert len(m.nodes) <= 3 * prog_size(prog)
    assert not m.mark_ids(m.initial) and not m.mark_ids(m.final)
    return m


class _Builder:
    def __init__(self):
        self.counter = 0
        self.eps = {}
        self.tups = {}
        self.marks = {}
        self.tests = []
        self.test_ids = {}
        self.scope = {}
        self.star_info = {}
        self.backwards = set()
        self.dp = {}

    def fresh(self):
        self.counter += 1
        return self.counter - 1

    def edge(self, src, dst):
        self.eps.setdefault(src, []).append(dst)

    def intern_test(self, f):
        if f not in self.test_ids:
            self.test_ids[f] = len(self.tests)
            self.tests.append(f)
        return self.test_ids[f]

    def put(self, q, q2, guard):
        if not isinstance(guard, posbool.BFalse):
            self.dp[(q, q2)] = guard

    def get(self, q, q2):
        return self.dp.get((q, q2), FALSE)

    def build(self, prog):
        if isinstance(prog, Tup):
            a, b = self.fresh(), self.fresh()
            self.tups.setdefault(a, []).append((prog.entries, b))
            self.put(a, a, TRUE)
            self.put(b, b, TRUE)
            return a, b, {a, b}
        if isinstance(prog, Eps):
            a, b = self.fresh(), self.fresh()
            self.edge(a, b)
            self.put(a, a, TRUE)
            self.put(a, b, TRUE)
            self.put(b, b, TRUE)
            return a, b, {a, b}
        if isinstance(prog, Test):
            tid = self.intern_test(prog.formula)
            a, b, c = self.fresh(), self.fresh(), self.fresh()
            self.edge(a, b)
            self.edge(b, c)
            self.marks[b] = tid
            v = BVar(tid)
            self.put(a, a, TRUE)
            self.put(c, c, TRUE)
            for pair in ((a, b), (b, b), (b, c), (a, c)):
                self.put(pair[0], pair[1], v)
            return a, c, {a, b, c}
        if isinstance(prog, Sum):
            l0, lf, ln = self.build(prog.left)
            r0, rf, rn = self.build(prog.right)
            a, b = self.fresh(), self.fresh()
            self.edge(a, l0)
            self.edge(a, r0)
            self.edge(lf, b)
            self.edge(rf, b)
            for q in ln:
                self.put(a, q, self.get(l0, q))
                self.put(q, b, self.get(q, lf))
            for q in rn:
                self.put(a, q, self.get(r0, q))
                self.put(q, b, self.get(q, rf))
            self.put(a, b, bor([self.get(l0, lf), self.get(r0, rf)]))
            self.put(a, a, TRUE)
            self.put(b, b, TRUE)
            return a, b, ln | rn | {a, b}
        if isinstance(prog, Seq):
            l0, lf, ln = self.build(prog.left)
            r0, rf, rn = self.build(prog.right)
            self.edge(lf, r0)
            for q in ln:
                into = self.get(q, lf)
                if isinstance(into, posbool.BFalse):
                    continue
                for q2 in rn:
                    self.put(q, q2, band([into, self.get(r0, q2)]))
            return l0, rf, ln | rn
        if isinstance(prog, Star):
            b0, bf, bn = self.build(prog.body)
            a, b = self.fresh(), self.fresh()
            self.edge(a, b0)
            self.edge(a, b)
            self.edge(b, a)
            self.backwards.add((b, a))
            self.edge(bf, b)
            sid = len(self.star_info)
            self.star_info[sid] = (a, b)
            for q in bn | {a, b}:
                self.scope[q] = (sid,) + self.scope.get(q, ())
            for q in bn:
                self.put(a, q, self.get(b0, q))
                self.put(q, b, self.get(q, bf))
            self.put(a, b, TRUE)
            self.put(a, a, TRUE)
            self.put(b, b, TRUE)
            return a, b, bn | {a, b}
        raise TypeError(prog)


# ---------------------------------------------------------------- closures

def eps_reach(m, q, ignore_backwards=False):
    """All pairs (X, q') with an epsilon path q to q' encountering exactly
    the test markings X (start and end included)."""
    cache = m._eps_nb_cache if ignore_backwards else m._eps_cache
    if q in cache:
        return cache[q]
    start = (q, m.mark_ids(q))
    seen = {start}
    frontier = [start]
    while frontier:
        node, marks = frontier.pop()
        for dst in m.eps.get(node, ()):
            if ignore_backwards and (node, dst) in m.backwards:
                continue
            nxt = (dst, marks | m.mark_ids(dst))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    result = frozenset((marks, node) for node, marks in seen)
    cache[q] = result
    return result


def guard_matches(guard, progs):
    return all(g is None or g == progs[i] for i, g in enumerate(guard))


def tau_reach(m, q, progs):
    """Pairs (X, q') reachable by an epsilon path followed by one tuple edge
    whose guard matches the given step programs."""
    out = set()
    for marks, mid in eps_reach(m, q):
        for guard, dst in m.tups.get(mid, ()):
            if guard_matches(guard, progs):
                out.add((marks, dst))
    return frozenset(out)


def tau_reach_symbolic(m, q):
    """Triples (X, guard, q'): the tuple edges reachable from q by epsilon
    paths with markings X, guards left symbolic."""
    out = []
    for marks, mid in sorted(eps_reach(m, q), key=lambda p: (sorted(p[0]), p[1])):
        for guard, dst in m.tups.get(mid, ()):
            out.append((marks, guard, dst))
    return tuple(out)


# ---------------------------------------------------------------- guard table

def dp_guard(m, q, q2):
    return m.dp.get((q, q2), FALSE)


def eps_formula(m, q, q2):
    """Full epsilon reachability as a guard formula over test ids."""
    plain = dp_guard(m, q, q2)
    common = _common_scope(m, q, q2)
    if common is None:
        return plain
    q0, qf = m.star_info[common]
    return bor([plain, band([dp_guard(m, q, qf), dp_guard(m, q0, q2)])])


def _common_scope(m, q, q2):
    a = m.star_scope.get(q, ())
    b = m.star_scope.get(q2, ())
    common = None
    for x, y in zip(a, b):
        if x != y:
            break
        common = x
    return common


# ---------------------------------------------------------------- queries

def guard_alphabet(m):
    """Concrete step tuples that distinguish the automaton's guards: per
    position, every program named by some guard plus one fresh symbol."""
    guards = [g for edges in m.tups.values() for g, _ in edges]
    if not guards:
        return []
    arity = len(guards[0])
    options = []
    for i in range(arity):
        named = sorted({g[i] for g in guards if g[i] is not None})
        options.append(named + ["#fresh%d" % i])
    letters = [()]
    for opts in options:
        letters = [tup + (o,) for tup in letters for o in opts]
    return letters


def is_deterministic(m):
    """At most one distinct tuple-step target per node and concrete letter."""
    letters = guard_alphabet(m)
    for q in m.nodes:
        for letter in letters:
            targets = {dst for _, dst in tau_reach(m, q, letter)}
            if len(targets) > 1:
                return False
    return True


def to_dot(m):
    lines = ["digraph marked_nfa {", "  rankdir=LR;"]
    for q in m.nodes:
        shape = "doublecircle" if q == m.final else "circle"
        label = "q%d" % q
        if q in m.marks:
            label += "\\n{%s}?" % m.tests[m.marks[q]]
        lines.append('  n%d [label="%s", shape=%s];' % (q, label, shape))
    lines.append('  start [shape=point];')
    lines.append("  start -> n%d;" % m.initial)
    for src, dsts in sorted(m.eps.items()):
        for dst in dsts:
            style = "dashed"
            if (src, dst) in m.backwards:
                style = "dashed, color=gray"
            lines.append('  n%d -> n%d [style="%s", label="&epsilon;"];'
                         % (src, dst, style))
    for src, edges in sorted(m.tups.items()):
        for guard, dst in edges:
            text = "(" + ",".join(g if g is not None else "_" for g in guard) + ")"
            lines.append('  n%d -> n%d [label="%s"];' % (src, dst, text))
    lines.append("}")
    return "\n".join(lines) + "\n"

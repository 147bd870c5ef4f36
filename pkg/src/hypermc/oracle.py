"""Direct semantic evaluation on ultimately periodic path assignments.

This is the ground truth the automata pipeline is tested against: a
structural interpreter for formulas and programs over LassoAssignments.
Segment relations R(alpha) are computed as relations over the finitely
many normalized positions (suffixes at positions with equal fold are
identical words, so membership only depends on the fold); stars become
reflexive-transitive closures, Delta becomes reachability of a cycle in
the segment relation.

Quantifiers need a transition system to range over.  Two modes:
"deterministic" follows the unique path of a deterministic system,
"bounded" enumerates every lasso up to a length bound (exploratory; the
bound makes it an under/over-approximation in general).
"""

from . import syntax as S
from .errors import ModeError
from .kts import deterministic_path
from .lasso import LassoAssignment, LassoWord


def eval_formula(asg, pos, f, kts=None, trace=False,
                 quantifier_mode="deterministic", bound=4, memo=True):
    ev = Evaluator(asg, kts=kts, trace=trace,
                   quantifier_mode=quantifier_mode, bound=bound, memo=memo)
    return ev.eval(asg.normalize(pos) if asg.paths else 0, f)


def eval_segments(asg, pos, prog, kts=None, trace=False,
                  quantifier_mode="deterministic", bound=4, memo=True):
    ev = Evaluator(asg, kts=kts, trace=trace,
                   quantifier_mode=quantifier_mode, bound=bound, memo=memo)
    return ev.segments(asg.normalize(pos), prog)


def eval_delta(asg, pos, prog, kts=None, trace=False,
               quantifier_mode="deterministic", bound=4, memo=True):
    ev = Evaluator(asg, kts=kts, trace=trace,
                   quantifier_mode=quantifier_mode, bound=bound, memo=memo)
    return ev.delta(asg.normalize(pos), prog)


class Evaluator:
    def __init__(self, asg, kts=None, trace=False,
                 quantifier_mode="deterministic", bound=4, memo=True):
        self.asg = asg
        self.kts = kts
        self.trace = trace
        self.quantifier_mode = quantifier_mode
        self.bound = bound
        self.memo = memo
        self._fmemo = {}
        self._rmemo = {}

    # ------------------------------------------------------------ formulas

    def eval(self, pos, f):
        key = (pos, f)
        if self.memo and key in self._fmemo:
            return self._fmemo[key]
        value = self._eval(pos, f)
        if self.memo:
            self._fmemo[key] = value
        return value

    def _eval(self, pos, f):
        if isinstance(f, S.TrueF):
            return True
        if isinstance(f, S.FalseF):
            return False
        if isinstance(f, S.Atom):
            return self._holds(f.ap, f.idx, pos)
        if isinstance(f, S.Not):
            return not self.eval(pos, f.body)
        if isinstance(f, S.And):
            return self.eval(pos, f.left) and self.eval(pos, f.right)
        if isinstance(f, S.Or):
            return self.eval(pos, f.left) or self.eval(pos, f.right)
        if isinstance(f, S.Exists):
            return any(self._branches(pos, f.body))
        if isinstance(f, S.NotExists):
            return not any(self._branches(pos, f.body))
        if isinstance(f, S.Forall):
            return all(self._branches(pos, f.body))
        if isinstance(f, S.Diamond):
            return any(self.eval(k, f.body) for k in self.segments(pos, f.prog))
        if isinstance(f, S.Box):
            return all(self.eval(k, f.body) for k in self.segments(pos, f.prog))
        if isinstance(f, S.Delta):
            return self.delta(pos, f.prog)
        if isinstance(f, S.NotDelta):
            return not self.delta(pos, f.prog)
        raise TypeError(f)

    def _holds(self, ap, idx, pos):
        world = self.asg.paths[idx - 1].world(pos)
        if self.trace:
            return ap in world
        return self.kts.holds(ap, world)

    def _branches(self, pos, body):
        """Truth of body under each candidate path for a fresh quantifier."""
        if self.trace:
            raise ModeError("quantifiers cannot be evaluated over bare traces")
        if self.kts is None:
            raise ModeError("quantifier evaluation needs a transition system")
        if self.asg.paths:
            branch = self.asg.paths[-1].world(pos)
        else:
            branch = self.kts.init
        if self.quantifier_mode == "deterministic":
            stem, period = deterministic_path(self.kts, branch)
            candidates = [LassoWord(stem, period)]
        elif self.quantifier_mode == "bounded":
            candidates = bounded_lassos(self.kts, branch, self.bound)
        else:
            raise ModeError("unknown quantifier mode %r" % self.quantifier_mode)
        for cand in candidates:
            shifted = LassoAssignment(
                [w.suffix(pos) for w in self.asg.paths], names=self.asg.names)
            sub = Evaluator(shifted.extended(cand), kts=self.kts,
                            trace=self.trace,
                            quantifier_mode=self.quantifier_mode,
                            bound=self.bound, memo=self.memo)
            yield sub.eval(0, body)

    # ------------------------------------------------------------ programs

    def segments(self, pos, prog):
        """Normalized positions k with (suffix word, pos, k) in R(prog)."""
        return self.relation(prog).get(pos, frozenset())

    def relation(self, prog):
        if self.memo and prog in self._rmemo:
            return self._rmemo[prog]
        rel = self._relation(prog)
        if self.memo:
            self._rmemo[prog] = rel
        return rel

    def _relation(self, prog):
        positions = list(self.asg.positions())
        if isinstance(prog, S.Tup):
            rel = {}
            for p in positions:
                progs = self.asg.programs_at(p)
                if all(e is None or e == progs[l]
                       for l, e in enumerate(prog.entries)):
                    rel[p] = frozenset([self.asg.next_pos(p)])
            return rel
        if isinstance(prog, S.Eps):
            return {p: frozenset([p]) for p in positions}
        if isinstance(prog, S.Test):
            return {p: frozenset([p]) for p in positions
                    if self.eval(p, prog.formula)}
        if isinstance(prog, S.Sum):
            left = self.relation(prog.left)
            right = self.relation(prog.right)
            return {p: left.get(p, frozenset()) | right.get(p, frozenset())
                    for p in positions
                    if p in left or p in right}
        if isinstance(prog, S.Seq):
            left = self.relation(prog.left)
            right = self.relation(prog.right)
            rel = {}
            for p, mids in left.items():
                ends = frozenset().union(
                    *[right.get(m, frozenset()) for m in mids]) if mids else frozenset()
                if ends:
                    rel[p] = ends
            return rel
        if isinstance(prog, S.Star):
            step = self.relation(prog.body)
            rel = {p: frozenset([p]) for p in positions}
            changed = True
            while changed:
                changed = False
                for p in positions:
                    extra = frozenset().union(
                        *[step.get(m, frozenset()) for m in rel[p]]) if rel[p] else frozenset()
                    if not extra <= rel[p]:
                        rel[p] = rel[p] | extra
                        changed = True
            return rel
        raise TypeError(prog)

    def delta(self, pos, prog):
        """True iff pos reaches a cycle (self-loops included) in R(prog)."""
        rel = self.relation(prog)
        seen = set()
        frontier = {pos}
        while frontier:
            nxt = set()
            for p in frontier:
                if p in seen:
                    continue
                seen.add(p)
                nxt |= rel.get(p, frozenset())
            frontier = nxt - seen
        for p in seen:
            if _reaches(rel, p, p):
                return True
        return False


def _reaches(rel, src, dst):
    """At least one step from src to dst following rel."""
    seen = set()
    frontier = set(rel.get(src, frozenset()))
    while frontier:
        if dst in frontier:
            return True
        seen |= frontier
        nxt = set()
        for p in frontier:
            nxt |= rel.get(p, frozenset())
        frontier = nxt - seen
    return False


def bounded_lassos(kts, start, bound):
    """Every lasso from start with total length at most bound."""
    found = []
    seen = set()
    seq = []

    def rec(current):
        for cut in range(len(seq)):
            last_state, last_prog = seq[-1]
            if seq[cut][0] in kts.successors(last_state, last_prog):
                word = LassoWord(seq[:cut], seq[cut:])
                if word not in seen:
                    seen.add(word)
                    found.append(word)
        if len(seq) < bound:
            for prog, nxt in kts.out_edges(current):
                seq.append((current, prog))
                rec(nxt)
                seq.pop()

    rec(start)
    return found

"""Positive boolean formulas over arbitrary hashable variables.

Used both for transition conditions of alternating automata (variables
are states) and for the guard tables of marked NFAs (variables are test
ids).  No negation; True and False are explicit leaves.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class BTrue:
    def __repr__(self):
        return "T"


@dataclass(frozen=True)
class BFalse:
    def __repr__(self):
        return "F"


@dataclass(frozen=True)
class BVar:
    var: object

    def __repr__(self):
        return "v(%r)" % (self.var,)


@dataclass(frozen=True)
class BAnd:
    items: tuple

    def __repr__(self):
        return "(" + " & ".join(map(repr, self.items)) + ")"


@dataclass(frozen=True)
class BOr:
    items: tuple

    def __repr__(self):
        return "(" + " | ".join(map(repr, self.items)) + ")"


TRUE = BTrue()
FALSE = BFalse()


def band(items):
    """Conjunction with constant folding and flattening of nested ands."""
    flat = []
    for it in items:
        if isinstance(it, BFalse):
            return FALSE
        if isinstance(it, BTrue):
            continue
        if isinstance(it, BAnd):
            flat.extend(it.items)
        else:
            flat.append(it)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return BAnd(tuple(flat))


def bor(items):
    flat = []
    for it in items:
        if isinstance(it, BTrue):
            return TRUE
        if isinstance(it, BFalse):
            continue
        if isinstance(it, BOr):
            flat.extend(it.items)
        else:
            flat.append(it)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return BOr(tuple(flat))


def evaluate(pb, true_vars):
    if isinstance(pb, BTrue):
        return True
    if isinstance(pb, BFalse):
        return False
    if isinstance(pb, BVar):
        return pb.var in true_vars
    if isinstance(pb, BAnd):
        return all(evaluate(it, true_vars) for it in pb.items)
    if isinstance(pb, BOr):
        return any(evaluate(it, true_vars) for it in pb.items)
    raise TypeError(pb)


def substitute(pb, fn):
    """Replace every variable v by the positive formula fn(v)."""
    if isinstance(pb, (BTrue, BFalse)):
        return pb
    if isinstance(pb, BVar):
        return fn(pb.var)
    if isinstance(pb, BAnd):
        return band([substitute(it, fn) for it in pb.items])
    if isinstance(pb, BOr):
        return bor([substitute(it, fn) for it in pb.items])
    raise TypeError(pb)


def dual(pb):
    """Swap conjunction with disjunction and true with false."""
    if isinstance(pb, BTrue):
        return FALSE
    if isinstance(pb, BFalse):
        return TRUE
    if isinstance(pb, BVar):
        return pb
    if isinstance(pb, BAnd):
        return bor([dual(it) for it in pb.items])
    if isinstance(pb, BOr):
        return band([dual(it) for it in pb.items])
    raise TypeError(pb)


def size(pb):
    """Leaves plus operators."""
    if isinstance(pb, (BTrue, BFalse, BVar)):
        return 1
    if isinstance(pb, (BAnd, BOr)):
        return 1 + sum(size(it) for it in pb.items)
    raise TypeError(pb)


def vars_of(pb):
    if isinstance(pb, (BTrue, BFalse)):
        return frozenset()
    if isinstance(pb, BVar):
        return frozenset([pb.var])
    if isinstance(pb, (BAnd, BOr)):
        out = frozenset()
        for it in pb.items:
            out |= vars_of(it)
        return out
    raise TypeError(pb)


def minimal_models(pb):
    """The antichain of minimal variable sets satisfying pb.

    Recursive descent: disjunction unions the children's antichains,
    conjunction crosses them; subsumed sets are pruned at each join.
    Empty list means unsatisfiable, [frozenset()] means valid.
    """
    if isinstance(pb, BTrue):
        return [frozenset()]
    if isinstance(pb, BFalse):
        return []
    if isinstance(pb, BVar):
        return [frozenset([pb.var])]
    if isinstance(pb, BOr):
        models = []
        for it in pb.items:
            models.extend(minimal_models(it))
        return prune_subsumed(models)
    if isinstance(pb, BAnd):
        models = [frozenset()]
        for it in pb.items:
            part = minimal_models(it)
            models = prune_subsumed([m | q for m in models for q in part])
            if not models:
                return []
        return models
    raise TypeError(pb)


def prune_subsumed(models):
    """Keep only inclusion-minimal sets; deduplicates."""
    out = []
    for m in sorted(set(models), key=len):
        if not any(o <= m for o in out):
            out.append(m)
    return out

"""Satisfiability over trace sets, for the decidable quantifier prefixes.

A formula in prefix form is classified by its quantifier pattern:

  exists*            compile the body over trace letters, nonemptiness
  forall*            satisfiable iff some single trace satisfies the body
                     with every path collapsed onto it
  exists* forall*    expand the universals into a conjunction over all
                     choices of existential paths, then as exists*

A universal quantifier ahead of an existential one is refused.  The
alphabet is taken from the formula (plus whatever the caller supplies);
since guards mention programs by name, the answer is relative to that
alphabet, and a formula like [(s)]false flips from unsatisfiable to
satisfiable when a second program exists.  Callers wanting the larger
alphabet pass it in.
"""

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from .aba import is_empty, miyano_hayashi
from .build import build_aba
from .config import Config
from .errors import UnsupportedFragmentError
from .lasso import LassoAssignment, LassoWord, format_lasso_file
from .syntax import (And, Atom, Box, Delta, Diamond, Eps, Exists, FalseF,
                     Forall, Not, NotDelta, NotExists, Or, Seq, Star, Sum,
                     Test, TrueF, Tup, format_formula, to_nnf)


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    fragment: str
    transformed: Optional[object]      # rewritten body or expanded formula
    witness: Optional[LassoAssignment]
    aps: tuple
    programs: tuple

    def to_json(self):
        return json.dumps({
            "schema": "hypermc.sat/1",
            "satisfiable": self.satisfiable,
            "fragment": self.fragment,
            "transformed": (format_formula(self.transformed)
                            if self.transformed is not None else None),
            "witness": (format_lasso_file(self.witness, trace=True)
                        if self.witness is not None else None),
            "aps": list(self.aps),
            "programs": list(self.programs),
        }, indent=2)


def satisfiable(formula, aps=(), programs=(), config=None, mode="succinct"):
    if config is None:
        config = Config()
    fragment, prefix, body = classify_fragment(formula)
    all_aps = tuple(sorted(set(aps) | _formula_aps(formula)))
    all_programs = tuple(dict.fromkeys(
        tuple(programs) + tuple(sorted(_formula_programs(formula)))))
    if not all_programs:
        all_programs = ("s",)

    if fragment == "forall":
        merged = _onto_one_path(body, len(prefix))
        sat, witness = _exists_check(merged, 1, ("p",), all_aps,
                                     all_programs, config, mode)
        return SatResult(sat, fragment, merged, witness, all_aps, all_programs)

    if fragment == "exists_forall":
        n = sum(1 for kind, _ in prefix if kind == "exists")
        names = tuple(var for _, var in prefix[:n])
        expanded = _expand_universals(body, n, len(prefix) - n, names)
        closed = expanded
        for name in reversed(names):
            closed = Exists(name, closed)
        sat, witness = _exists_check(expanded, n, names, all_aps,
                                     all_programs, config, mode)
        return SatResult(sat, fragment, closed, witness, all_aps, all_programs)

    names = tuple(var for _, var in prefix)
    sat, witness = _exists_check(body, len(prefix), names, all_aps,
                                 all_programs, config, mode)
    return SatResult(sat, fragment, None, witness, all_aps, all_programs)


def classify_fragment(formula):
    """(fragment, prefix, body): fragment is one of exists / forall /
    exists_forall, prefix lists (kind, var) outermost first, body is the
    quantifier-free matrix (negated back into positive position if the
    prefix ended under an odd number of negations)."""
    prefix = []
    sign = True
    g = formula
    while True:
        if isinstance(g, Exists):
            prefix.append(("exists" if sign else "forall", g.var))
        elif isinstance(g, Forall):
            prefix.append(("forall" if sign else "exists", g.var))
        elif isinstance(g, NotExists):
            prefix.append(("forall" if sign else "exists", g.var))
            sign = not sign
        else:
            break
        g = g.body
    body = g if sign else to_nnf(g, negate=True)
    if _has_quantifier(body):
        raise UnsupportedFragmentError(
            "quantifiers must form one linear prefix")
    kinds = [kind for kind, _ in prefix]
    if "forall" in kinds and "exists" in kinds[kinds.index("forall"):]:
        raise UnsupportedFragmentError(
            "an existential quantifier after a universal one is out of "
            "reach for this decision procedure")
    if "forall" not in kinds:
        return "exists", prefix, body
    if "exists" not in kinds:
        return "forall", prefix, body
    return "exists_forall", prefix, body


def _exists_check(body, nvars, names, aps, programs, config, mode):
    aut = build_aba(to_nnf(body), nvars=nvars, trace=True, aps=aps,
                    programs=programs, config=config, mode=mode)
    nba = miyano_hayashi(aut)
    found = is_empty(nba)
    if found is None or nvars == 0:
        return found is not None, None
    paths = []
    for i in range(nvars):
        stem = [(letter[0][i], letter[1][i]) for letter in found.stem_letters]
        period = [(letter[0][i], letter[1][i]) for letter in found.period_letters]
        paths.append(LassoWord(stem, period))
    return True, LassoAssignment(paths, list(names))


# ------------------------------------------------------------- rewriting

def _onto_one_path(body, nvars):
    """Collapse every path onto a single fresh one named p."""
    return _substitute_paths(body, (1,) * nvars, ("p",), 1)


def _expand_universals(body, n, m, names):
    """Conjunction over every way of merging the m universal paths into
    the n existential ones."""
    conj = None
    for combo in itertools.product(range(1, n + 1), repeat=m):
        target = tuple(range(1, n + 1)) + combo
        inst = _substitute_paths(body, target, names, n)
        conj = inst if conj is None else And(conj, inst)
    return conj if conj is not None else body


def _substitute_paths(f, target, names, arity):
    """Remap path index i to target[i-1]; tuple entries of merged paths
    must agree, a clash turns the whole tuple into an impossible step."""
    def on_formula(g):
        if isinstance(g, (TrueF, FalseF)):
            return g
        if isinstance(g, Atom):
            j = target[g.idx - 1]
            return Atom(g.ap, names[j - 1], j)
        if isinstance(g, Not):
            return Not(on_formula(g.body))
        if isinstance(g, (And, Or)):
            return type(g)(on_formula(g.left), on_formula(g.right))
        if isinstance(g, (Diamond, Box)):
            return type(g)(on_program(g.prog), on_formula(g.body))
        if isinstance(g, (Delta, NotDelta)):
            return type(g)(on_program(g.prog))
        raise UnsupportedFragmentError(
            "quantifiers must form one linear prefix")

    def on_program(p):
        if isinstance(p, Tup):
            merged = []
            for i in range(1, arity + 1):
                vals = {e for k, e in enumerate(p.entries, start=1)
                        if target[k - 1] == i and e is not None}
                if len(vals) > 1:
                    return Seq(Test(FalseF()), Tup((None,) * arity))
                merged.append(vals.pop() if vals else None)
            return Tup(tuple(merged))
        if isinstance(p, Eps):
            return p
        if isinstance(p, (Sum, Seq)):
            return type(p)(on_program(p.left), on_program(p.right))
        if isinstance(p, Star):
            return Star(on_program(p.body))
        if isinstance(p, Test):
            return Test(on_formula(p.formula))
        raise AssertionError(type(p).__name__)

    return on_formula(f)


# ------------------------------------------------------------- inspection

def _has_quantifier(f):
    found = []
    _walk(f, lambda g: found.append(g)
          if isinstance(g, (Exists, Forall, NotExists)) else None)
    return bool(found)


def _formula_aps(f):
    out = set()
    _walk(f, lambda g: out.add(g.ap) if isinstance(g, Atom) else None)
    return out


def _formula_programs(f):
    out = set()

    def visit(g):
        if isinstance(g, Tup):
            out.update(e for e in g.entries if e is not None)
    _walk(f, visit)
    return out


def _walk(node, visit):
    visit(node)
    if isinstance(node, (Not, Exists, Forall, NotExists)):
        _walk(node.body, visit)
    elif isinstance(node, (And, Or, Sum, Seq)):
        _walk(node.left, visit)
        _walk(node.right, visit)
    elif isinstance(node, (Diamond, Box)):
        _walk(node.prog, visit)
        _walk(node.body, visit)
    elif isinstance(node, (Delta, NotDelta)):
        _walk(node.prog, visit)
    elif isinstance(node, Star):
        _walk(node.body, visit)
    elif isinstance(node, Test):
        _walk(node.formula, visit)

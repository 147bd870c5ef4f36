"""Model checking of closed formulas over a transition system.

The formula is normalized and split at its outermost boolean skeleton
into maximal quantified subformulas.  Each of those compiles to an
automaton over the empty assignment, where the verdict is language
nonemptiness; a negated block reuses the automaton of the block it
negates, flipping the verdict, so the top level never pays for a
complement.  Leaf verdicts are cached by subformula and can be computed
concurrently.

Witnesses come from accepting lassos.  Only the outermost path of a
block is recovered from the product states (inner paths are folded into
breakpoint sets during dealternation and are not tracked back); when
the first step's program is not determined by the run, the earliest
declared program that fits is reported.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .aba import is_empty
from .build import build_aba
from .config import Config
from .errors import BindingError
from .lasso import LassoAssignment, LassoWord, format_lasso_file
from .syntax import (And, Exists, FalseF, NotExists, Or, TrueF, criticality,
                     format_formula, to_nnf)


@dataclass(frozen=True)
class LeafReport:
    formula: str
    negated: bool
    holds: bool
    states: int
    stages: tuple
    seconds: float
    witness_var: Optional[str]
    witness: Optional[str]        # lasso file text for the outermost path
    witness_states: Optional[str]  # raw accepting lasso of the automaton


@dataclass(frozen=True)
class Report:
    formula: str
    verdict: bool
    criticality: int
    leaves: tuple
    seconds: float

    def to_json(self):
        return json.dumps({
            "schema": "hypermc.check/1",
            "formula": self.formula,
            "verdict": self.verdict,
            "criticality": self.criticality,
            "seconds": round(self.seconds, 6),
            "leaves": [{
                "formula": leaf.formula,
                "negated": leaf.negated,
                "holds": leaf.holds,
                "states": leaf.states,
                "stages": [list(s) for s in leaf.stages],
                "seconds": round(leaf.seconds, 6),
                "witness_var": leaf.witness_var,
                "witness": leaf.witness,
                "witness_states": leaf.witness_states,
            } for leaf in self.leaves],
        }, indent=2)


def model_check(formula, kts, config=None, mode="succinct"):
    if config is None:
        config = Config()
    started = time.perf_counter()
    nnf = to_nnf(formula)
    leaves = []
    _collect_leaves(nnf, leaves)
    unique = list(dict.fromkeys(leaves))

    results = {}
    if config.concurrency and len(unique) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(unique))) as pool:
            for leaf, rep in zip(unique, pool.map(
                    lambda g: _check_leaf(g, kts, config, mode), unique)):
                results[leaf] = rep
    else:
        for leaf in unique:
            results[leaf] = _check_leaf(leaf, kts, config, mode)

    verdict = _eval_skeleton(nnf, results)
    return Report(format_formula(formula), verdict, criticality(formula),
                  tuple(results[leaf] for leaf in unique),
                  time.perf_counter() - started)


def _collect_leaves(f, out):
    if isinstance(f, (TrueF, FalseF)):
        return
    if isinstance(f, (And, Or)):
        _collect_leaves(f.left, out)
        _collect_leaves(f.right, out)
        return
    if isinstance(f, (Exists, NotExists)):
        out.append(f)
        return
    raise BindingError("formula is not closed: %s" % format_formula(f))


def _eval_skeleton(f, results):
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, And):
        return _eval_skeleton(f.left, results) and _eval_skeleton(f.right, results)
    if isinstance(f, Or):
        return _eval_skeleton(f.left, results) or _eval_skeleton(f.right, results)
    return results[f].holds


def _check_leaf(leaf, kts, config, mode):
    started = time.perf_counter()
    negated = isinstance(leaf, NotExists)
    block = Exists(leaf.var, leaf.body) if negated else leaf
    aut = build_aba(block, nvars=0, kts=kts, mode=mode, config=config)
    witness = is_empty(aut)
    nonempty = witness is not None
    holds = nonempty != negated
    var_name = None
    lasso_text = None
    states_text = None
    if witness is not None:
        states_text = "%r / %r" % (witness.stem_states, witness.period_states)
        decoded = _decode_outer_path(witness, aut, kts)
        if decoded is not None:
            var_name = block.var
            lasso_text = format_lasso_file(
                LassoAssignment([decoded], [block.var]))
    return LeafReport(
        formula=format_formula(leaf), negated=negated, holds=holds,
        states=aut.size(), stages=tuple(aut.build_stats["stages"]),
        seconds=time.perf_counter() - started,
        witness_var=var_name, witness=lasso_text, witness_states=states_text)


def _decode_outer_path(witness, aut, kts):
    """Rebuild the outermost quantified path from the product components
    of the accepting run; None when the run shape is not recognized."""
    origin = getattr(aut, "state_origin", None)
    if origin is None:
        return None
    run = list(witness.stem_states) + list(witness.period_states)
    entries = []
    for j, state in enumerate(run):
        src = origin.get(state, state)
        if j == 0:
            if not (isinstance(src, tuple) and src and src[0] == "start"):
                return None
            continue
        if not (isinstance(src, tuple) and len(src) == 3):
            return None
        entries.append((src[1], src[2]))
    if not entries:
        return None
    first_world = entries[0][0]
    first_prog = None
    for prog in kts.programs:
        if first_world in kts.successors(kts.init, prog):
            first_prog = prog
            break
    if first_prog is None:
        return None
    stem = [(kts.init, first_prog)] + entries[:len(witness.stem_states) - 1]
    period = entries[len(witness.stem_states) - 1:]
    return LassoWord(stem, period)

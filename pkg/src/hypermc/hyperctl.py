"""Linear-temporal hyperlogic embedding.

Formulas built from next/until/release and path quantifiers translate
into the program modalities: next is one wildcard step, until iterates
a test of its first argument before wildcard steps, release is the dual
box.  The translation is given on syntax trees; the result may contain
raw negations and should be normalized before compilation.

alternation_depth counts the quantifier alternations that force
complementation when the translated formula is compiled, matching the
criticality of the translation: a quantifier costs one level when it is
effectively negated or trapped under a modality, except an effectively
negated quantifier in a box test, where the test is negated again and
the two cancel.
"""

from dataclasses import dataclass

from .errors import BindingError
from .syntax import (Atom, Box, Diamond, Exists, FalseF, Forall, Not, Or,
                     And, Seq, Star, Test, TrueF, Tup)


@dataclass(frozen=True)
class HTrue:
    pass


@dataclass(frozen=True)
class HFalse:
    pass


@dataclass(frozen=True)
class HAtom:
    ap: str
    var: str


@dataclass(frozen=True)
class HNot:
    body: object


@dataclass(frozen=True)
class HAnd:
    left: object
    right: object


@dataclass(frozen=True)
class HOr:
    left: object
    right: object


@dataclass(frozen=True)
class HNext:
    body: object


@dataclass(frozen=True)
class HUntil:
    left: object
    right: object


@dataclass(frozen=True)
class HRelease:
    left: object
    right: object


@dataclass(frozen=True)
class HExists:
    var: str
    body: object


@dataclass(frozen=True)
class HForall:
    var: str
    body: object


def translate(f):
    """The equivalent formula over program modalities."""
    return _tr(f, [])


def _tr(f, env):
    if isinstance(f, HTrue):
        return TrueF()
    if isinstance(f, HFalse):
        return FalseF()
    if isinstance(f, HAtom):
        for depth in range(len(env) - 1, -1, -1):
            if env[depth] == f.var:
                return Atom(f.ap, f.var, depth + 1)
        raise BindingError("path %r is not bound" % f.var)
    if isinstance(f, HNot):
        return Not(_tr(f.body, env))
    if isinstance(f, HAnd):
        return And(_tr(f.left, env), _tr(f.right, env))
    if isinstance(f, HOr):
        return Or(_tr(f.left, env), _tr(f.right, env))
    if isinstance(f, HExists):
        return Exists(f.var, _tr(f.body, env + [f.var]))
    if isinstance(f, HForall):
        return Forall(f.var, _tr(f.body, env + [f.var]))
    if not env:
        raise BindingError("temporal operator outside any path quantifier")
    step = Tup((None,) * len(env))
    if isinstance(f, HNext):
        return Diamond(step, _tr(f.body, env))
    if isinstance(f, HUntil):
        return Diamond(Star(Seq(Test(_tr(f.left, env)), step)),
                       _tr(f.right, env))
    if isinstance(f, HRelease):
        return Box(Star(Seq(Test(Not(_tr(f.left, env))), step)),
                   _tr(f.right, env))
    raise ValueError("not a formula: %r" % (f,))


# ------------------------------------------------------- alternation depth

_PLAIN, _TDIA, _TBOX, _BBODY = range(4)


def alternation_depth(f):
    """Quantifier alternations of the formula as translated: the number of
    complementations the compiled automaton stack will contain."""
    return _alt(f, True, 0, _PLAIN)


def _alt(f, positive, depth, pos):
    if isinstance(f, (HTrue, HFalse, HAtom)):
        return 0
    if isinstance(f, HNot):
        return _alt(f.body, not positive, depth, pos)
    if isinstance(f, (HAnd, HOr)):
        return max(_alt(f.left, positive, depth, pos),
                   _alt(f.right, positive, depth, pos))
    if isinstance(f, HNext):
        return _alt(f.body, positive, depth, _PLAIN)
    if isinstance(f, HUntil):
        if positive:
            return max(_alt(f.left, True, depth, _TDIA),
                       _alt(f.right, True, depth, _PLAIN))
        return max(_alt(f.left, True, depth, _TBOX),
                   _alt(f.right, False, depth, _BBODY))
    if isinstance(f, HRelease):
        if positive:
            return max(_alt(f.left, False, depth, _TBOX),
                       _alt(f.right, True, depth, _BBODY))
        return max(_alt(f.left, False, depth, _TDIA),
                   _alt(f.right, False, depth, _PLAIN))
    if isinstance(f, (HExists, HForall)):
        negated = positive != isinstance(f, HExists)
        own = 1 if (depth >= 1 and (negated or pos != _PLAIN)
                    and not (negated and pos == _TBOX)) else 0
        child_sign = isinstance(f, HExists)
        return own + _alt(f.body, child_sign, depth + 1, _PLAIN)
    raise ValueError("not a formula: %r" % (f,))

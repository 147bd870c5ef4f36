"""Omega-regular properties over tuples of traces.

A property file names the proposition and program universes and lists
lasso pairs; each pair has a stem and a loop regex over symbols that fix
every path's world and step at one position:

    aps a b
    programs s t
    pair:
      stem: [{a},{a b}]|(s,s) ( [{},{}]|(t,t) + [{a},{}]|(s,t) )*
      loop: [{b},{}]|(t,s)

A word belongs to the property if some pair matches it as stem.loop^w.
Regexes use juxtaposition, +, *, eps and parentheses; a loop matching
the empty word is refused.

compile_spec turns the property into a formula: each symbol becomes a
guarded step (an exact description of every path's world, then the step
tuple), each pair the modality chain <stem> loop-forever.  The translated
formula holds on a trace tuple iff the symbol word it spells belongs to
the property.

reference_accepts decides membership directly on a lasso automaton of
the regex pair, with no shared machinery past the parsed file, as an
independent second route.
"""

import re
from dataclasses import dataclass

from .errors import ArityError, ParseError
from .syntax import (And, Atom, Delta, Diamond, Eps, Not, Or, Seq, Star, Sum,
                     Test, TrueF, Tup)


# regex AST over symbols
@dataclass(frozen=True)
class RSym:
    worlds: tuple
    steps: tuple


@dataclass(frozen=True)
class REps:
    pass


@dataclass(frozen=True)
class RCat:
    left: object
    right: object


@dataclass(frozen=True)
class RAlt:
    left: object
    right: object


@dataclass(frozen=True)
class RStar:
    body: object


@dataclass(frozen=True)
class OmegaSpec:
    aps: tuple
    programs: tuple
    arity: int
    pairs: tuple   # of (stem regex, loop regex)


# ------------------------------------------------------------------ parsing

_SYMBOL = re.compile(r"\[(?P<worlds>[^]]*)\]\|\((?P<steps>[^)]*)\)")
_TOKEN = re.compile(r"\s*(?:(?P<sym>\[[^]]*\]\|\([^)]*\))"
                    r"|(?P<op>[()+*])|(?P<eps>eps)|(?P<bad>\S))")


def parse_omega_spec(text):
    aps = None
    programs = None
    pairs = []
    pending = None   # [stem, loop] of the open pair
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("aps"):
            aps = tuple(line.split()[1:])
        elif line.startswith("programs"):
            programs = tuple(line.split()[1:])
        elif line == "pair:":
            if pending is not None:
                _close_pair(pending, pairs, lineno)
            pending = [None, None]
        elif line.startswith("stem:") or line.startswith("loop:"):
            if pending is None:
                raise ParseError("stem/loop outside a pair", line=lineno)
            slot = 0 if line.startswith("stem:") else 1
            if pending[slot] is not None:
                raise ParseError("duplicate %s in pair" % line[:4], line=lineno)
            pending[slot] = _parse_regex(line.split(":", 1)[1], lineno)
        else:
            raise ParseError("unrecognized line %r" % line, line=lineno)
    if pending is not None:
        _close_pair(pending, pairs, None)
    if aps is None or programs is None:
        raise ParseError("file must declare aps and programs")
    if not pairs:
        raise ParseError("file declares no pairs")
    arity = _check_arity(pairs, aps, programs)
    return OmegaSpec(aps, programs, arity, tuple(pairs))


def _close_pair(pending, pairs, lineno):
    stem, loop = pending
    if stem is None or loop is None:
        raise ParseError("pair needs both stem and loop", line=lineno)
    if _nullable(loop):
        raise ParseError("loop may not match the empty word", line=lineno)
    pairs.append((stem, loop))


def _parse_regex(text, lineno):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        pos = match.end()
        if match.group("bad"):
            raise ParseError("stray %r in regex" % match.group("bad"),
                             line=lineno)
        if match.group("sym"):
            tokens.append(("sym", _parse_symbol(match.group("sym"), lineno)))
        elif match.group("eps"):
            tokens.append(("eps", None))
        elif match.group("op"):
            tokens.append((match.group("op"), None))
    tokens.append(("end", None))

    state = {"i": 0}

    def peek():
        return tokens[state["i"]][0]

    def take():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def alt():
        node = cat()
        while peek() == "+":
            take()
            node = RAlt(node, cat())
        return node

    def cat():
        node = post()
        while peek() in ("sym", "eps", "("):
            node = RCat(node, post())
        return node

    def post():
        node = prim()
        while peek() == "*":
            take()
            node = RStar(node)
        return node

    def prim():
        kind, value = take()
        if kind == "sym":
            return value
        if kind == "eps":
            return REps()
        if kind == "(":
            node = alt()
            if peek() != ")":
                raise ParseError("expected )", line=lineno)
            take()
            return node
        raise ParseError("regex ended unexpectedly", line=lineno)

    node = alt()
    if peek() != "end":
        raise ParseError("trailing %r in regex" % peek(), line=lineno)
    return node


def _parse_symbol(text, lineno):
    match = _SYMBOL.fullmatch(text)
    if match is None:
        raise ParseError("malformed symbol %r" % text, line=lineno)
    worlds_part = match.group("worlds").strip()
    sets = re.findall(r"\{([^}]*)\}", worlds_part)
    rebuilt = ",".join("{%s}" % s for s in sets)
    if rebuilt.replace(" ", "") != worlds_part.replace(" ", ""):
        raise ParseError("malformed worlds in %r" % text, line=lineno)
    worlds = tuple(frozenset(s.split()) for s in sets)
    steps = tuple(p.strip() for p in match.group("steps").split(","))
    if len(worlds) != len(steps):
        raise ArityError("symbol %r has %d worlds but %d steps"
                         % (text, len(worlds), len(steps)))
    return RSym(worlds, steps)


def _check_arity(pairs, aps, programs):
    arity = None
    for stem, loop in pairs:
        for regex in (stem, loop):
            for sym in _symbols(regex):
                if arity is None:
                    arity = len(sym.worlds)
                elif len(sym.worlds) != arity:
                    raise ArityError("symbols mix %d and %d paths"
                                     % (arity, len(sym.worlds)))
                for world in sym.worlds:
                    missing = world - set(aps)
                    if missing:
                        raise ParseError("undeclared aps %s"
                                         % " ".join(sorted(missing)))
                for step in sym.steps:
                    if step not in programs:
                        raise ParseError("undeclared program %r" % step)
    if arity is None:
        raise ParseError("property has no symbols")
    return arity


def _symbols(regex):
    if isinstance(regex, RSym):
        yield regex
    elif isinstance(regex, (RCat, RAlt)):
        yield from _symbols(regex.left)
        yield from _symbols(regex.right)
    elif isinstance(regex, RStar):
        yield from _symbols(regex.body)


def _nullable(regex):
    if isinstance(regex, (REps, RStar)):
        return True
    if isinstance(regex, RSym):
        return False
    if isinstance(regex, RCat):
        return _nullable(regex.left) and _nullable(regex.right)
    return _nullable(regex.left) or _nullable(regex.right)


# ---------------------------------------------------------------- compiling

def compile_spec(spec, var_names=None):
    """Open formula over arity paths holding exactly on the trace tuples
    whose symbol word the property contains."""
    names = tuple(var_names) if var_names else tuple(
        "p%d" % (i + 1) for i in range(spec.arity))
    if len(names) != spec.arity:
        raise ArityError("expected %d path names, got %d"
                         % (spec.arity, len(names)))
    formula = None
    for stem, loop in spec.pairs:
        part = Diamond(_program_of(stem, spec, names),
                       Delta(_program_of(loop, spec, names)))
        formula = part if formula is None else Or(formula, part)
    return formula


def _program_of(regex, spec, names):
    if isinstance(regex, RSym):
        return Seq(Test(_describe(regex, spec, names)), Tup(regex.steps))
    if isinstance(regex, REps):
        return Eps()
    if isinstance(regex, RCat):
        return Seq(_program_of(regex.left, spec, names),
                   _program_of(regex.right, spec, names))
    if isinstance(regex, RAlt):
        return Sum(_program_of(regex.left, spec, names),
                   _program_of(regex.right, spec, names))
    return Star(_program_of(regex.body, spec, names))


def _describe(sym, spec, names):
    """Exact description of one symbol's worlds, over the declared aps."""
    conj = None
    for idx, world in enumerate(sym.worlds, start=1):
        for ap in spec.aps:
            atom = Atom(ap, names[idx - 1], idx)
            lit = atom if ap in world else Not(atom)
            conj = lit if conj is None else And(conj, lit)
    return conj if conj is not None else TrueF()


# ---------------------------------------------------------------- reference

def reference_accepts(spec, stem_symbols, period_symbols):
    """Direct membership of the symbol lasso, through position automata of
    the regex pairs; symbols are (worlds, steps) tuples."""
    return any(_pair_accepts(stem, loop, tuple(stem_symbols),
                             tuple(period_symbols))
               for stem, loop in spec.pairs)


class _Nfa:
    def __init__(self):
        self.count = 0
        self.eps = {}
        self.sym = {}

    def fresh(self):
        self.count += 1
        return self.count - 1

    def add_eps(self, src, dst):
        self.eps.setdefault(src, []).append(dst)

    def add_sym(self, src, sym, dst):
        self.sym.setdefault(src, []).append((sym, dst))


def _thompson(nfa, regex):
    if isinstance(regex, RSym):
        i, f = nfa.fresh(), nfa.fresh()
        nfa.add_sym(i, (regex.worlds, regex.steps), f)
        return i, f
    if isinstance(regex, REps):
        i, f = nfa.fresh(), nfa.fresh()
        nfa.add_eps(i, f)
        return i, f
    if isinstance(regex, RCat):
        li, lf = _thompson(nfa, regex.left)
        ri, rf = _thompson(nfa, regex.right)
        nfa.add_eps(lf, ri)
        return li, rf
    if isinstance(regex, RAlt):
        i, f = nfa.fresh(), nfa.fresh()
        li, lf = _thompson(nfa, regex.left)
        ri, rf = _thompson(nfa, regex.right)
        nfa.add_eps(i, li)
        nfa.add_eps(i, ri)
        nfa.add_eps(lf, f)
        nfa.add_eps(rf, f)
        return i, f
    i, f = nfa.fresh(), nfa.fresh()
    bi, bf = _thompson(nfa, regex.body)
    nfa.add_eps(i, bi)
    nfa.add_eps(i, f)
    nfa.add_eps(bf, i)
    return i, f


def _pair_accepts(stem_regex, loop_regex, stem, period):
    nfa = _Nfa()
    si, sf = _thompson(nfa, stem_regex)
    li, lf = _thompson(nfa, loop_regex)
    nfa.add_eps(sf, li)
    nfa.add_eps(lf, li)

    total = len(stem) + len(period)

    def letter(pos):
        return stem[pos] if pos < len(stem) else period[pos - len(stem)]

    def next_pos(pos):
        pos += 1
        return len(stem) if pos == total else pos

    def successors(node):
        state, pos = node
        for dst in nfa.eps.get(state, ()):
            yield (dst, pos)
        want = letter(pos)
        for sym, dst in nfa.sym.get(state, ()):
            if sym == want:
                yield (dst, next_pos(pos))

    start = (si, 0)
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for nxt in successors(node):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)

    for node in seen:
        if node[0] != li:
            continue
        # cycle through this accepting node
        visited = set()
        stack = list(successors(node))
        while stack:
            cur = stack.pop()
            if cur == node:
                return True
            if cur in visited:
                continue
            visited.add(cur)
            stack.extend(successors(cur))
    return False

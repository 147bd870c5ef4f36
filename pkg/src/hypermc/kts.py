"""Labeled transition systems with atomic propositions on states.

File format, one declaration per line, '#' starts a comment:

    aps a b
    programs s t
    state q0 { a }
    init q0
    edge q0 s q1

Kripke structures and plain LTSs are ingested as degenerate instances:
mode="kripke" supplies a single implicit program ("step", edges written
`edge SRC DST`), mode="lts" allows unlabeled states (`state q0`).
"""

from .errors import KtsError, ParseError


class Kts:
    def __init__(self, aps, programs, labels, init, edges):
        self.aps = tuple(aps)
        self.programs = tuple(programs)
        self.labels = dict(labels)          # state -> frozenset of aps
        self.states = tuple(labels.keys())  # declaration order
        self.init = init
        self.edges = dict(edges)            # (state, program) -> tuple of states
        validate(self)

    def successors(self, state, program):
        return self.edges.get((state, program), ())

    def holds(self, ap, state):
        return ap in self.labels[state]

    def out_edges(self, state):
        for prog in self.programs:
            for dst in self.successors(state, prog):
                yield prog, dst


def validate(kts):
    if kts.init is None:
        raise KtsError("no init state declared")
    if kts.init not in kts.labels:
        raise KtsError("init state %r not declared" % kts.init)
    for (src, prog), dsts in kts.edges.items():
        if src not in kts.labels:
            raise KtsError("edge source %r not declared" % src)
        if prog not in kts.programs:
            raise KtsError("edge program %r not declared" % prog)
        for dst in dsts:
            if dst not in kts.labels:
                raise KtsError("edge target %r not declared" % dst)
    for state in kts.labels:
        if not any(True for _ in kts.out_edges(state)):
            raise KtsError("state %r has no outgoing edge; paths must be infinite"
                           % state)


def parse_kts(text, mode="kts"):
    if mode not in ("kts", "kripke", "lts"):
        raise ValueError("unknown mode %r" % mode)
    aps = []
    programs = ["step"] if mode == "kripke" else []
    labels = {}
    init = None
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, rest = parts[0], parts[1:]
        if head == "aps":
            aps.extend(rest)
        elif head == "programs":
            if mode == "kripke":
                raise ParseError("kripke mode has an implicit program", line=lineno)
            programs.extend(rest)
        elif head == "state":
            name, labelset = _parse_state(rest, mode, lineno)
            for ap in labelset:
                if ap not in aps:
                    raise ParseError("state %r uses undeclared ap %r" % (name, ap),
                                     line=lineno)
            if name in labels:
                raise ParseError("state %r declared twice" % name, line=lineno)
            labels[name] = frozenset(labelset)
        elif head == "init":
            if len(rest) != 1:
                raise ParseError("init takes one state name", line=lineno)
            init = rest[0]
        elif head == "edge":
            if mode == "kripke":
                if len(rest) != 2:
                    raise ParseError("edge SRC DST expected", line=lineno)
                src, prog, dst = rest[0], "step", rest[1]
            else:
                if len(rest) != 3:
                    raise ParseError("edge SRC PROG DST expected", line=lineno)
                src, prog, dst = rest
            if prog not in programs:
                raise ParseError("edge uses undeclared program %r" % prog,
                                 line=lineno)
            key = (src, prog)
            if dst not in edges.get(key, ()):
                edges[key] = edges.get(key, ()) + (dst,)
        else:
            raise ParseError("unknown declaration %r" % head, line=lineno)
    try:
        return Kts(aps, programs, labels, init, edges)
    except KtsError as exc:
        raise ParseError(str(exc))


def _parse_state(rest, mode, lineno):
    if len(rest) == 1 and mode == "lts":
        return rest[0], []
    if len(rest) >= 2 and rest[1] == "{" and rest[-1] == "}":
        return rest[0], rest[2:-1]
    raise ParseError("state NAME { ap ... } expected", line=lineno)


def format_kts(kts):
    """Canonical text form; parse_kts(format_kts(k)) reproduces k."""
    lines = []
    if kts.aps:
        lines.append("aps " + " ".join(kts.aps))
    if kts.programs:
        lines.append("programs " + " ".join(kts.programs))
    for state in kts.states:
        inner = " ".join(sorted(kts.labels[state]))
        lines.append("state %s { %s }" % (state, inner) if inner
                     else "state %s { }" % state)
    lines.append("init %s" % kts.init)
    for state in kts.states:
        for prog in kts.programs:
            for dst in kts.successors(state, prog):
                lines.append("edge %s %s %s" % (state, prog, dst))
    return "\n".join(lines) + "\n"


def is_deterministic_kts(kts):
    """Exactly one outgoing (program, successor) per state."""
    for state in kts.states:
        if sum(1 for _ in kts.out_edges(state)) != 1:
            return False
    return True


def deterministic_path(kts, state):
    """The unique path from state, folded at the first revisit.

    Returns (stem, period) as lists of (state, program) entries; requires a
    deterministic system.
    """
    if not is_deterministic_kts(kts):
        raise KtsError("deterministic_path needs a deterministic system")
    entries = []
    seen = {}
    current = state
    while current not in seen:
        seen[current] = len(entries)
        prog, nxt = next(iter(kts.out_edges(current)))
        entries.append((current, prog))
        current = nxt
    cut = seen[current]
    return entries[:cut], entries[cut:]

"""Ultimately periodic words over (world, program) entries.

A LassoWord denotes the infinite word stem . period^omega.  Worlds are
state names when the word tracks a transition system and frozensets of
atomic propositions when it tracks a trace.  A LassoAssignment packs one
word per quantified path, all cut to a common stem and period length so
that positions can be compared across paths.

File format, one line per path, stem and period split by '|':

    path p1: (q0 s) (q1 t) | (q1 t)

Trace mode replaces state names by proposition sets: ({a b} s), ({} t).
"""

from math import lcm

from .errors import ParseError


class LassoWord:
    def __init__(self, stem, period):
        if not period:
            raise ValueError("period must be nonempty")
        self.stem = tuple(tuple(e) for e in stem)
        self.period = tuple(tuple(e) for e in period)

    def __len__(self):
        return len(self.stem) + len(self.period)

    def __eq__(self, other):
        return (isinstance(other, LassoWord)
                and self.stem == other.stem and self.period == other.period)

    def __hash__(self):
        return hash((self.stem, self.period))

    def __repr__(self):
        return "LassoWord(%r, %r)" % (self.stem, self.period)

    def normalize(self, pos):
        """Fold an arbitrary position into the representative range."""
        s, p = len(self.stem), len(self.period)
        if pos < s:
            return pos
        return s + (pos - s) % p

    def entry(self, pos):
        pos = self.normalize(pos)
        if pos < len(self.stem):
            return self.stem[pos]
        return self.period[pos - len(self.stem)]

    def world(self, pos):
        return self.entry(pos)[0]

    def program(self, pos):
        return self.entry(pos)[1]

    def suffix(self, i):
        """The lasso denoting the same word with the first i entries dropped."""
        s, p = len(self.stem), len(self.period)
        if i <= s:
            return LassoWord(self.stem[i:], self.period)
        k = (i - s) % p
        return LassoWord((), self.period[k:] + self.period[:k])


class LassoAssignment:
    """Aligned words for paths 1..n; paths[i] belongs to quantifier i+1."""

    def __init__(self, paths, names=None):
        paths = tuple(paths)
        if paths:
            s = len(paths[0].stem)
            p = len(paths[0].period)
            for w in paths:
                if len(w.stem) != s or len(w.period) != p:
                    raise ValueError("paths are not aligned")
        self.paths = paths
        self.names = tuple(names) if names else tuple("p%d" % (i + 1)
                                                      for i in range(len(paths)))

    @property
    def stem_len(self):
        return len(self.paths[0].stem) if self.paths else 0

    @property
    def period_len(self):
        return len(self.paths[0].period) if self.paths else 1

    def positions(self):
        return range(self.stem_len + self.period_len)

    def normalize(self, pos):
        if pos < self.stem_len:
            return pos
        return self.stem_len + (pos - self.stem_len) % self.period_len

    def next_pos(self, pos):
        pos = pos + 1
        return self.stem_len if pos == self.stem_len + self.period_len else pos

    def programs_at(self, pos):
        return tuple(w.program(pos) for w in self.paths)

    def extended(self, extra, names=None):
        """A new assignment with extra appended, re-aligned; entries of the
        existing paths are preserved pointwise."""
        return LassoAssignment(
            align_lassos(list(self.paths) + [extra]),
            names=names or self.names + ("p%d" % (len(self.paths) + 1),))


def align_lassos(words):
    """Cut every word to a common stem length and period length (the max and
    the lcm) without changing any denoted word."""
    if not words:
        return []
    stem = max(len(w.stem) for w in words)
    period = lcm(*[len(w.period) for w in words])
    out = []
    for w in words:
        entries = [w.entry(i) for i in range(stem + period)]
        out.append(LassoWord(entries[:stem], entries[stem:]))
    return out


def assignment_letters(asg):
    """Flatten an assignment into one lasso of letters.

    Letter j pairs the worlds at step j with the programs taken from step
    j to j+1, one component per path in quantifier order.  Automata over
    assignments read exactly this word.
    """
    stem, period = [], []
    for j in asg.positions():
        letter = (tuple(w.world(j) for w in asg.paths),
                  tuple(w.program(j) for w in asg.paths))
        (stem if j < asg.stem_len else period).append(letter)
    return stem, period


# ---------------------------------------------------------------- files

def parse_lasso_file(text, trace=False):
    """Parse `path NAME: entries | entries` lines into a LassoAssignment.

    Path order in the file is quantifier order.  Words are aligned on the
    way in.
    """
    names = []
    words = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("path "):
            raise ParseError("expected 'path NAME: ...'", line=lineno)
        head, _, body = line[5:].partition(":")
        name = head.strip()
        if not name:
            raise ParseError("missing path name", line=lineno)
        halves = body.split("|")
        if len(halves) != 2:
            raise ParseError("expected one '|' between stem and period",
                             line=lineno)
        stem = _parse_entries(halves[0], trace, lineno)
        period = _parse_entries(halves[1], trace, lineno)
        if not period:
            raise ParseError("period must have at least one entry", line=lineno)
        names.append(name)
        words.append(LassoWord(stem, period))
    return LassoAssignment(align_lassos(words), names=names)


_ENTRY_END = object()


def _parse_entries(text, trace, lineno):
    tokens = text.replace("(", " ( ").replace(")", " ) ") \
                 .replace("{", " { ").replace("}", " } ").split()
    entries = []
    i = 0
    while i < len(tokens):
        if tokens[i] != "(":
            raise ParseError("expected '(' starting an entry", line=lineno)
        i += 1
        if trace:
            if tokens[i] != "{":
                raise ParseError("expected '{' world set", line=lineno)
            i += 1
            aps = []
            while tokens[i] != "}":
                aps.append(tokens[i])
                i += 1
            i += 1
            world = frozenset(aps)
        else:
            world = tokens[i]
            i += 1
        prog = tokens[i]
        i += 1
        if tokens[i] != ")":
            raise ParseError("expected ')' closing an entry", line=lineno)
        i += 1
        entries.append((world, prog))
    return entries


def format_lasso_file(asg, trace=False):
    lines = []
    for name, word in zip(asg.names, asg.paths):
        fmt = lambda e: ("({%s} %s)" % (" ".join(sorted(e[0])), e[1]) if trace
                        else "(%s %s)" % e)
        stem = " ".join(fmt(e) for e in word.stem)
        period = " ".join(fmt(e) for e in word.period)
        lines.append("path %s: %s | %s" % (name, stem, period))
    return "\n".join(lines) + "\n"

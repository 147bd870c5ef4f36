"""Formula and program syntax: AST, parser, printer, negation normal form.

Concrete grammar (ASCII):

    formula   := 'exists' VAR '.' formula | 'forall' VAR '.' formula
               | formula '<->' formula            (lowest precedence)
               | formula '->' formula             (right associative)
               | formula '|' formula
               | formula '&' formula
               | '!' formula
               | '<' program '>' formula | '[' program ']' formula
               | 'delta' program
               | AP '@' VAR | 'true' | 'false' | '(' formula ')'

    program   := program '+' program
               | program ';' program
               | program '*'                      (postfix)
               | '(' entry ',' ... ')' | 'any' | 'eps'
               | '{' formula '}?' | '(' program ')'

Quantifier bodies extend maximally to the right.  A tuple entry is a
program name or '_' (wildcard); tuple arity must equal the number of
quantifiers in scope.  'any' is the all-wildcard tuple of that arity.
'->' and '<->' are desugared during parsing, so printed formulas never
contain them.
"""

import re
from dataclasses import dataclass

from .errors import ArityError, BindingError, ParseError


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class TrueF:
    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class FalseF:
    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Atom:
    """Proposition `ap` on the path bound by the idx-th quantifier (1-based)."""
    ap: str
    var: str
    idx: int

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class NotExists:
    """Negated existential; the body is kept positive.  Survives NNF."""
    var: str
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Diamond:
    prog: "Program"
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Box:
    prog: "Program"
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Delta:
    prog: "Program"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class NotDelta:
    """Negated repetition operator.  Survives NNF."""
    prog: "Program"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Tup:
    """Synchronous step: one program name or None (wildcard) per path."""
    entries: tuple

    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Eps:
    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Sum:
    left: "Program"
    right: "Program"

    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Seq:
    left: "Program"
    right: "Program"

    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Star:
    body: "Program"

    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Test:
    formula: "Formula"

    def __str__(self):
        return format_program(self)


Formula = (TrueF, FalseF, Atom, Not, And, Or, Exists, Forall, NotExists,
           Diamond, Box, Delta, NotDelta)
Program = (Tup, Eps, Sum, Seq, Star, Test)


def prog_size(p):
    """Number of program AST nodes; tests count once, their formula not at all."""
    if isinstance(p, (Tup, Eps, Test)):
        return 1
    if isinstance(p, (Sum, Seq)):
        return 1 + prog_size(p.left) + prog_size(p.right)
    if isinstance(p, Star):
        return 1 + prog_size(p.body)
    raise TypeError(p)


def formula_size(f):
    if isinstance(f, (TrueF, FalseF, Atom)):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.body)
    if isinstance(f, (And, Or)):
        return 1 + formula_size(f.left) + formula_size(f.right)
    if isinstance(f, (Exists, Forall, NotExists)):
        return 1 + formula_size(f.body)
    if isinstance(f, (Diamond, Box)):
        return 1 + prog_size(f.prog) + formula_size(f.body)
    if isinstance(f, (Delta, NotDelta)):
        return 1 + prog_size(f.prog)
    raise TypeError(f)


def tests_of(p):
    """Test formulas occurring directly in p, left to right, duplicates kept."""
    if isinstance(p, (Tup, Eps)):
        return []
    if isinstance(p, (Sum, Seq)):
        return tests_of(p.left) + tests_of(p.right)
    if isinstance(p, Star):
        return tests_of(p.body)
    if isinstance(p, Test):
        return [p.formula]
    raise TypeError(p)


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<sym>[(){}\[\]<>.,;+*!&|@?_])
""", re.VERBOSE)

_KEYWORDS = {"exists", "forall", "delta", "any", "eps", "true", "false"}


def _tokenize(text):
    tokens = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], line=line)
        if m.lastgroup == "ws":
            line += m.group().count("\n")
        elif m.lastgroup == "ident":
            word = m.group()
            kind = word if word in _KEYWORDS else "ident"
            tokens.append((kind, word, line))
        else:
            tokens.append((m.group(), m.group(), line))
        pos = m.end()
    tokens.append(("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r, got %r" % (kind, tok[1]), line=tok[2])
        return tok

    def fail(self, message):
        tok = self.tokens[self.i]
        raise ParseError(message + " (at %r)" % tok[1], line=tok[2])

    # formulas; env is the stack of quantified variable names, outermost first

    def formula(self, env):
        return self.iff(env)

    def iff(self, env):
        left = self.imp(env)
        while self.peek() == "<->":
            self.next()
            right = self.imp(env)
            left = And(Or(_negate(left), right), Or(_negate(right), left))
        return left

    def imp(self, env):
        left = self.or_(env)
        if self.peek() == "->":
            self.next()
            right = self.imp(env)
            return Or(_negate(left), right)
        return left

    def or_(self, env):
        left = self.and_(env)
        while self.peek() == "|":
            self.next()
            left = Or(left, self.and_(env))
        return left

    def and_(self, env):
        left = self.unary(env)
        while self.peek() == "&":
            self.next()
            left = And(left, self.unary(env))
        return left

    def unary(self, env):
        kind = self.peek()
        if kind == "!":
            self.next()
            return _negate(self.unary(env))
        if kind in ("exists", "forall"):
            self.next()
            var = self.expect("ident")[1]
            self.expect(".")
            body = self.iff(env + [var])
            return Exists(var, body) if kind == "exists" else Forall(var, body)
        if kind == "<":
            self._require_scope(env)
            self.next()
            prog = self.prog_sum(env)
            self.expect(">")
            return Diamond(prog, self.unary(env))
        if kind == "[":
            self._require_scope(env)
            self.next()
            prog = self.prog_sum(env)
            self.expect("]")
            return Box(prog, self.unary(env))
        if kind == "delta":
            self._require_scope(env)
            self.next()
            return Delta(self.prog_post(env))
        return self.atom(env)

    def atom(self, env):
        kind, value, line = self.next()
        if kind == "true":
            return TrueF()
        if kind == "false":
            return FalseF()
        if kind == "(":
            f = self.iff(env)
            self.expect(")")
            return f
        if kind == "ident":
            self.expect("@")
            var = self.expect("ident")[1]
            if var not in env:
                raise BindingError("unbound path variable %r in %s@%s" % (var, value, var))
            # innermost binding wins on shadowing
            idx = len(env) - 1 - env[::-1].index(var) + 1
            return Atom(value, var, idx)
        raise ParseError("expected a formula, got %r" % value, line=line)

    def _require_scope(self, env):
        if not env:
            self.fail("modalities need at least one quantifier in scope")

    # programs

    def prog_sum(self, env):
        left = self.prog_cat(env)
        while self.peek() == "+":
            self.next()
            left = Sum(left, self.prog_cat(env))
        return left

    def prog_cat(self, env):
        left = self.prog_post(env)
        while self.peek() == ";":
            self.next()
            left = Seq(left, self.prog_post(env))
        return left

    def prog_post(self, env):
        p = self.prog_prim(env)
        while self.peek() == "*":
            self.next()
            p = Star(p)
        return p

    def prog_prim(self, env):
        kind, value, line = self.next()
        if kind == "any":
            return Tup((None,) * len(env))
        if kind == "eps":
            return Eps()
        if kind == "{":
            f = self.iff(env)
            self.expect("}")
            self.expect("?")
            return Test(f)
        if kind == "(":
            if self.peek() in ("ident", "_"):
                return self.prog_tuple(env)
            p = self.prog_sum(env)
            self.expect(")")
            return p
        raise ParseError("expected a program, got %r" % value, line=line)

    def prog_tuple(self, env):
        entries = []
        while True:
            kind, value, line = self.next()
            if kind == "ident":
                entries.append(value)
            elif kind == "_":
                entries.append(None)
            else:
                raise ParseError("expected a program name or '_', got %r" % value,
                                 line=line)
            kind, value, line = self.next()
            if kind == ")":
                break
            if kind != ",":
                raise ParseError("expected ',' or ')' in tuple, got %r" % value,
                                 line=line)
        if len(entries) != len(env):
            raise ArityError("tuple %s has arity %d but %d quantifier(s) are in scope"
                             % ("(" + ",".join(e or "_" for e in entries) + ")",
                                len(entries), len(env)))
        return Tup(tuple(entries))


def _negate(f):
    """Parse-time '!': fuse with quantifiers and delta so NNF forms round-trip."""
    if isinstance(f, Exists):
        return NotExists(f.var, f.body)
    if isinstance(f, NotExists):
        return Exists(f.var, f.body)
    if isinstance(f, Delta):
        return NotDelta(f.prog)
    if isinstance(f, NotDelta):
        return Delta(f.prog)
    if isinstance(f, Not):
        return f.body
    return Not(f)


def parse_formula(text, free_vars=None):
    """Parse a formula; raises ParseError / BindingError / ArityError.

    free_vars names paths already in scope (binding order), for parsing
    open formulas; by default the formula must be closed.
    """
    parser = _Parser(_tokenize(text))
    f = parser.formula(list(free_vars) if free_vars else [])
    if parser.peek() != "eof":
        parser.fail("trailing input after formula")
    return f


def parse_program(text, nvars, var_names=None):
    """Parse a standalone program with nvars quantified paths in scope.

    Tests inside the program may refer to the paths as p1..p<nvars>
    unless var_names supplies different names.
    """
    env = list(var_names) if var_names is not None else ["p%d" % (i + 1) for i in range(nvars)]
    if len(env) != nvars:
        raise ArityError("var_names length %d != nvars %d" % (len(env), nvars))
    parser = _Parser(_tokenize(text))
    p = parser.prog_sum(env)
    if parser.peek() != "eof":
        parser.fail("trailing input after program")
    return p


# ---------------------------------------------------------------- printer

_QUANT, _OR, _AND, _UNARY, _ATOM = 0, 1, 2, 3, 4


def _fp(f, parent):
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Atom):
        return "%s@%s" % (f.ap, f.var)
    if isinstance(f, Not):
        return "!" + _fp(f.body, _ATOM)
    if isinstance(f, And):
        s = "%s & %s" % (_fp(f.left, _AND), _fp(f.right, _UNARY))
        return "(" + s + ")" if parent > _AND else s
    if isinstance(f, Or):
        s = "%s | %s" % (_fp(f.left, _OR), _fp(f.right, _AND))
        return "(" + s + ")" if parent > _OR else s
    if isinstance(f, (Exists, Forall, NotExists)):
        neg = "!" if isinstance(f, NotExists) else ""
        word = "forall" if isinstance(f, Forall) else "exists"
        s = "%s%s %s. %s" % (neg, word, f.var, _fp(f.body, _QUANT))
        return "(" + s + ")" if parent > _QUANT else s
    if isinstance(f, Diamond):
        s = "<%s> %s" % (_pp(f.prog, _P_SUM), _fp(f.body, _UNARY))
        return "(" + s + ")" if parent > _UNARY else s
    if isinstance(f, Box):
        s = "[%s] %s" % (_pp(f.prog, _P_SUM), _fp(f.body, _UNARY))
        return "(" + s + ")" if parent > _UNARY else s
    if isinstance(f, (Delta, NotDelta)):
        neg = "!" if isinstance(f, NotDelta) else ""
        s = "%sdelta %s" % (neg, _pp(f.prog, _P_PRIM))
        return "(" + s + ")" if parent > _UNARY else s
    raise TypeError(f)


_P_SUM, _P_SEQ, _P_POST, _P_PRIM = 0, 1, 2, 3


def _pp(p, parent):
    if isinstance(p, Tup):
        return "(" + ",".join(e if e is not None else "_" for e in p.entries) + ")"
    if isinstance(p, Eps):
        return "eps"
    if isinstance(p, Sum):
        s = "%s + %s" % (_pp(p.left, _P_SUM), _pp(p.right, _P_SEQ))
        return "(" + s + ")" if parent > _P_SUM else s
    if isinstance(p, Seq):
        s = "%s ; %s" % (_pp(p.left, _P_SEQ), _pp(p.right, _P_POST))
        return "(" + s + ")" if parent > _P_SEQ else s
    if isinstance(p, Star):
        return _pp(p.body, _P_POST) + "*"
    if isinstance(p, Test):
        return "{" + _fp(p.formula, _QUANT) + "}?"
    raise TypeError(p)


def format_formula(f):
    return _fp(f, _QUANT)


def format_program(p):
    return _pp(p, _P_SUM)


# ---------------------------------------------------------------- NNF

def to_nnf(f, negate=False):
    """Push negations to atoms.  The result contains Not only on atoms and
    uses NotExists / NotDelta for negated quantifiers and repetitions;
    Forall, '->' and '<->' do not survive.  Test bodies are normalized in
    place without being negated (the program is part of the modality and
    is never dualized)."""
    if isinstance(f, TrueF):
        return FalseF() if negate else f
    if isinstance(f, FalseF):
        return TrueF() if negate else f
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return to_nnf(f.body, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(to_nnf(f.left, negate), to_nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(to_nnf(f.left, negate), to_nnf(f.right, negate))
    if isinstance(f, Exists):
        if negate:
            return NotExists(f.var, to_nnf(f.body))
        return Exists(f.var, to_nnf(f.body))
    if isinstance(f, NotExists):
        if negate:
            return Exists(f.var, to_nnf(f.body))
        return NotExists(f.var, to_nnf(f.body))
    if isinstance(f, Forall):
        # forall v. b == !exists v. !b
        if negate:
            return Exists(f.var, to_nnf(f.body, True))
        return NotExists(f.var, to_nnf(f.body, True))
    if isinstance(f, Diamond):
        cls = Box if negate else Diamond
        return cls(nnf_prog(f.prog), to_nnf(f.body, negate))
    if isinstance(f, Box):
        cls = Diamond if negate else Box
        return cls(nnf_prog(f.prog), to_nnf(f.body, negate))
    if isinstance(f, Delta):
        cls = NotDelta if negate else Delta
        return cls(nnf_prog(f.prog))
    if isinstance(f, NotDelta):
        cls = Delta if negate else NotDelta
        return cls(nnf_prog(f.prog))
    raise TypeError(f)


def nnf_prog(p):
    if isinstance(p, (Tup, Eps)):
        return p
    if isinstance(p, Sum):
        return Sum(nnf_prog(p.left), nnf_prog(p.right))
    if isinstance(p, Seq):
        return Seq(nnf_prog(p.left), nnf_prog(p.right))
    if isinstance(p, Star):
        return Star(nnf_prog(p.body))
    if isinstance(p, Test):
        return Test(to_nnf(p.formula))
    raise TypeError(p)


def is_nnf(f):
    if isinstance(f, (TrueF, FalseF, Atom)):
        return True
    if isinstance(f, Not):
        return isinstance(f.body, Atom)
    if isinstance(f, (And, Or)):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, (Exists, NotExists)):
        return is_nnf(f.body)
    if isinstance(f, (Diamond, Box)):
        return all(is_nnf(t) for t in tests_of(f.prog)) and is_nnf(f.body)
    if isinstance(f, (Delta, NotDelta)):
        return all(is_nnf(t) for t in tests_of(f.prog))
    return False


# ---------------------------------------------------------------- criticality

# position of a quantifier relative to the nearest enclosing quantifier
_PLAIN, _TEST, _BOXTEST, _BOXBODY = 0, 1, 2, 3


def criticality(f):
    """Nesting measure that bounds the number of exponential construction
    steps: the maximum, over syntax tree paths of the NNF, of the number of
    critical quantifiers.  A quantifier is critical iff it is in scope of
    another quantifier and is negated, or heads a test of some program, or
    heads the body of a box; negated quantifiers heading a test of a box
    whose step automaton is deterministic are exempt.
    """
    return _crit(to_nnf(f), 0, _PLAIN)


def _crit(f, depth, pos):
    if isinstance(f, (TrueF, FalseF, Atom, Not)):
        return 0
    if isinstance(f, (And, Or)):
        return max(_crit(f.left, depth, pos), _crit(f.right, depth, pos))
    if isinstance(f, (Exists, NotExists)):
        negated = isinstance(f, NotExists)
        own = 0
        if depth >= 1 and (negated or pos != _PLAIN):
            own = 1
            if negated and pos == _BOXTEST:
                own = 0
        return own + _crit(f.body, depth + 1, _PLAIN)
    if isinstance(f, (Diamond, Box, Delta, NotDelta)):
        if isinstance(f, Box):
            test_pos = _BOXTEST if _deterministic_steps(f.prog) else _TEST
        else:
            test_pos = _TEST
        best = 0
        prog = f.prog
        for t in tests_of(prog):
            best = max(best, _crit(t, depth, test_pos))
        if isinstance(f, Diamond):
            best = max(best, _crit(f.body, depth, _PLAIN))
        elif isinstance(f, Box):
            best = max(best, _crit(f.body, depth, _BOXBODY))
        return best
    raise TypeError(f)


def _deterministic_steps(prog):
    from .marked import build_marked_nfa, is_deterministic
    return is_deterministic(build_marked_nfa(prog))

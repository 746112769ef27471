"""A small first-order graph language and its almost-everywhere decision.

Grammar::

    sentence := quant | expr
    quant    := ("forall" | "exists") ident ":" ("V" | "E") sentence
    expr     := expr ("and" | "or" | "->") expr | "not" expr | "(" sentence ")" | atom
    atom     := ident "in" ident | ident "=" ident | "adj(" ident "," ident ")"
              | "connected()" | "eulerian()" | "deg_even(" ident ")"
              | "deg_ge(" ident "," nat ")" | "hamiltonian_dirac()"

``not`` binds tighter than ``and``, then ``or``, then ``->`` (right
associative).  A quantifier body extends as far right as possible.

Transfer is carried out the way the ultrapower does it: evaluate the sentence
on each standard ``G_n`` and decide the resulting index set.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from math import lcm
from typing import Callable

from . import graph_core as gc
from .errors import InfiniteGraph, NSGraphError
from .graph_core import Criterion, FiniteGraph
from .graph_families import ConstantFamily, ExplicitPeriodicFamily, GraphFamily
from .up_algebra import AnchoredUltrafilter, UPSet

__all__ = [
    "DSLSyntaxError",
    "SortError",
    "UnboundVariable",
    "Sentence",
    "Quant",
    "Not",
    "BinOp",
    "In",
    "Eq",
    "Adj",
    "Builtin",
    "Mode",
    "Verdict",
    "parse_sentence",
    "to_text",
    "eval_on_graph",
    "decide_ae",
]


class DSLSyntaxError(NSGraphError, SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SortError(NSGraphError, TypeError):
    pass


class UnboundVariable(NSGraphError, NameError):
    pass


# ---------------------------------------------------------------------------
# syntax tree

V, E = "V", "E"


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall" | "exists"
    var: str
    sort: str
    body: "Sentence"


@dataclass(frozen=True)
class Not:
    arg: "Sentence"


@dataclass(frozen=True)
class BinOp:
    op: str  # "and" | "or" | "->"
    left: "Sentence"
    right: "Sentence"


@dataclass(frozen=True)
class In:
    vertex: str
    edge: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Adj:
    left: str
    right: str


@dataclass(frozen=True)
class Builtin:
    name: str
    args: tuple = ()


Sentence = Quant | Not | BinOp | In | Eq | Adj | Builtin

# name -> argument shape ("v" vertex variable, "k" natural literal)
BUILTINS = {
    "connected": "",
    "eulerian": "",
    "hamiltonian_dirac": "",
    "deg_even": "v",
    "deg_ge": "vk",
}
KEYWORDS = {"forall", "exists", "and", "or", "not", "in", "adj"} | set(BUILTINS)

_ALIASES = {"∀": "forall", "∃": "exists", "∧": "and", "∨": "or", "¬": "not",
            "→": "->", "∈": "in"}
_TOKEN = re.compile(r"\s*(?:(->|[(),:=∀∃∧∨¬→∈])|([A-Za-z_][A-Za-z0-9_]*)|(\d+))")


# ---------------------------------------------------------------------------
# parser


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                 len(text) - len(text[pos:].lstrip()))
        if m.group(1):
            sym = _ALIASES.get(m.group(1), m.group(1))
            out.append(("kw" if sym.isalpha() else "sym", sym, m.start(1)))
        elif m.group(2):
            word = m.group(2)
            out.append(("kw" if word in KEYWORDS else "ident", word, m.start(2)))
        else:
            out.append(("nat", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("eof", "", end))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.scope: list[tuple[str, str]] = []

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise DSLSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] in ("kw", "sym")

    def parse(self) -> Sentence:
        s = self.sentence()
        self.take("eof")
        return s

    def sentence(self) -> Sentence:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return BinOp("->", left, self.sentence())
        return left

    def disj(self) -> Sentence:
        s = self.conj()
        while self.at("or"):
            self.i += 1
            s = BinOp("or", s, self.conj())
        return s

    def conj(self) -> Sentence:
        s = self.unary()
        while self.at("and"):
            self.i += 1
            s = BinOp("and", s, self.unary())
        return s

    def unary(self) -> Sentence:
        if self.at("not"):
            self.i += 1
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quant()
        if self.at("("):
            self.i += 1
            s = self.sentence()
            self.take("sym", ")")
            return s
        return self.atom()

    def quant(self) -> Quant:
        kind = self.take("kw")[1]
        var = self.take("ident")[1]
        self.take("sym", ":")
        tok = self.take("ident")
        if tok[1] not in (V, E):
            raise DSLSyntaxError(f"sort must be V or E, found {tok[1]!r}", tok[2])
        self.scope.append((var, tok[1]))
        try:
            body = self.sentence()
        finally:
            self.scope.pop()
        return Quant(kind, var, tok[1], body)

    def sort_of(self, tok) -> str:
        for name, sort in reversed(self.scope):
            if name == tok[1]:
                return sort
        raise UnboundVariable(f"variable {tok[1]!r} at position {tok[2]} is not bound")

    def var(self, want: str | None = None):
        tok = self.take("ident")
        sort = self.sort_of(tok)
        if want and sort != want:
            raise SortError(f"{tok[1]!r} at position {tok[2]} has sort {sort}, expected {want}")
        return tok[1], sort

    def atom(self) -> Sentence:
        tok = self.peek()
        if tok[0] == "kw" and (tok[1] in BUILTINS or tok[1] == "adj"):
            self.i += 1
            self.take("sym", "(")
            if tok[1] == "adj":
                x, _ = self.var(V)
                self.take("sym", ",")
                y, _ = self.var(V)
                self.take("sym", ")")
                return Adj(x, y)
            args = []
            for j, shape in enumerate(BUILTINS[tok[1]]):
                if j:
                    self.take("sym", ",")
                args.append(self.var(V)[0] if shape == "v" else int(self.take("nat")[1]))
            self.take("sym", ")")
            return Builtin(tok[1], tuple(args))
        if tok[0] != "ident":
            raise DSLSyntaxError(f"expected an atom, found {tok[1] or 'end of input'!r}", tok[2])
        left, lsort = self.var()
        if self.at("in"):
            if lsort != V:
                raise SortError(f"left of 'in' must be a vertex, {left!r} is an edge")
            self.i += 1
            right, _ = self.var(E)
            return In(left, right)
        if self.at("="):
            self.i += 1
            rtok = self.peek()
            right, rsort = self.var()
            if rsort != lsort:
                raise SortError(f"cannot compare {left!r}:{lsort} with {right!r}:{rsort} "
                                f"at position {rtok[2]}")
            return Eq(left, right)
        nxt = self.peek()
        raise DSLSyntaxError(f"expected 'in' or '=', found {nxt[1] or 'end of input'!r}", nxt[2])


def parse_sentence(text: str) -> Sentence:
    """Parse and sort-check a closed sentence."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# canonical printer

_PREC = {"->": 1, "or": 2, "and": 3}


def _prec(s: Sentence) -> int:
    if isinstance(s, Quant):
        return 0
    if isinstance(s, BinOp):
        return _PREC[s.op]
    if isinstance(s, Not):
        return 4
    return 5


def to_text(s: Sentence) -> str:
    if isinstance(s, Quant):
        body = to_text(s.body)
        if not isinstance(s.body, Quant):
            body = f"({body})"
        return f"{s.kind} {s.var}:{s.sort} {body}"
    if isinstance(s, Not):
        inner = to_text(s.arg)
        return f"not ({inner})" if _prec(s.arg) < 4 else f"not {inner}"
    if isinstance(s, BinOp):
        p = _PREC[s.op]
        right_assoc = s.op == "->"
        lt, rt = to_text(s.left), to_text(s.right)
        if _prec(s.left) < p or (right_assoc and _prec(s.left) == p):
            lt = f"({lt})"
        if _prec(s.right) < p or (not right_assoc and _prec(s.right) == p):
            rt = f"({rt})"
        return f"{lt} {s.op} {rt}"
    if isinstance(s, In):
        return f"{s.vertex} in {s.edge}"
    if isinstance(s, Eq):
        return f"{s.left} = {s.right}"
    if isinstance(s, Adj):
        return f"adj({s.left}, {s.right})"
    return f"{s.name}({', '.join(str(a) for a in s.args)})"


# ---------------------------------------------------------------------------
# standard evaluation


def eval_on_graph(phi: Sentence, g: FiniteGraph) -> bool:
    """Standard satisfaction, quantifiers ranging over the vertices and edges of ``g``."""
    return _compiled(phi)(g, {})


@functools.lru_cache(maxsize=256)
def _compiled(s: Sentence) -> Callable[[FiniteGraph, dict], bool]:
    return _compile(s)


def _compile(s: Sentence) -> Callable[[FiniteGraph, dict], bool]:
    # closures over the syntax tree; env is mutated in place and restored
    if isinstance(s, Quant):
        body, var, vertex_sort = _compile(s.body), s.var, s.sort == V
        forall = s.kind == "forall"

        def quant(g, env):
            missing = object()
            saved = env.get(var, missing)
            result = forall
            for d in (range(g.p) if vertex_sort else g.sorted_edges()):
                env[var] = d
                if body(g, env) != forall:
                    result = not forall
                    break
            if saved is missing:
                env.pop(var, None)
            else:
                env[var] = saved
            return result
        return quant
    if isinstance(s, Not):
        arg = _compile(s.arg)
        return lambda g, env: not arg(g, env)
    if isinstance(s, BinOp):
        left, right = _compile(s.left), _compile(s.right)
        if s.op == "and":
            return lambda g, env: left(g, env) and right(g, env)
        if s.op == "or":
            return lambda g, env: left(g, env) or right(g, env)
        return lambda g, env: not left(g, env) or right(g, env)
    if isinstance(s, In):
        x, b = s.vertex, s.edge
        return lambda g, env: env[x] in env[b]
    if isinstance(s, Eq):
        x, y = s.left, s.right
        return lambda g, env: env[x] == env[y]
    if isinstance(s, Adj):
        x, y = s.left, s.right
        return lambda g, env: g.has_edge(env[x], env[y])
    if s.name == "connected":
        return lambda g, env: gc.is_connected(g)
    if s.name == "eulerian":
        return lambda g, env: gc.is_eulerian(g)
    if s.name == "hamiltonian_dirac":
        return lambda g, env: gc.holds(g, Criterion.DIRAC)
    x = s.args[0]
    if s.name == "deg_even":
        return lambda g, env: g.degree(env[x]) % 2 == 0
    k = s.args[1]
    return lambda g, env: g.degree(env[x]) >= k


# ---------------------------------------------------------------------------
# almost-everywhere decision


class Mode(enum.Enum):
    DECIDED = "decided"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`decide_ae`.

    ``decision`` is None when sampling was inconclusive.  Only decided
    verdicts carry the exact truth set.
    """

    mode: Mode
    decision: bool | None
    truth_set: UPSet | None = None
    samples: tuple = ()  # (n, truth) pairs

    @property
    def inconclusive(self) -> bool:
        return self.decision is None

    @property
    def sample_summary(self) -> str:
        truths = {t for _, t in self.samples}
        if truths == {True}:
            return "all-true"
        if truths == {False}:
            return "all-false"
        return "mixed" if truths else "none"


def decide_ae(phi: Sentence | str, fam: GraphFamily, F: AnchoredUltrafilter,
              samples: int = 12) -> Verdict:
    """Is ``{n : G_n satisfies phi}`` in F?

    Tabulated families get an exact answer.  Other families are probed on
    ``samples`` indices of the anchor progression past the description
    threshold; only a unanimous probe yields a decision.
    """
    if isinstance(phi, str):
        phi = parse_sentence(phi)
    if not fam.hyperfinite:
        raise InfiniteGraph("sentences are evaluated on finite graphs only")
    if samples < 1:
        raise ValueError("need at least one sample")
    t, m = fam.description_period()
    if isinstance(fam, (ConstantFamily, ExplicitPeriodicFamily)):
        truth = fam._tabulate(lambda g: eval_on_graph(phi, g), boolean=True)
        probe = F.progression(t, m, min(samples, 5))
        return Verdict(Mode.DECIDED, F.decide(truth), truth.canonical(),
                       tuple((n, n in truth) for n in probe))
    # parity-sensitive facts (Euler) need both parities distinguished
    indices = F.progression(t, lcm(m, 2), samples)
    seen = tuple((n, eval_on_graph(phi, fam.graph_at(n))) for n in indices)
    truths = {v for _, v in seen}
    decision = truths.pop() if len(truths) == 1 else None
    return Verdict(Mode.SAMPLED, decision, None, seen)

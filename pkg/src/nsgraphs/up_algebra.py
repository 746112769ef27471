"""Ultimately periodic index sets, polynomial sequences and hypernaturals.

Every "almost everywhere" question in this package reduces to membership of
an ultimately periodic subset of N in an anchored ultrafilter trace: a set is
large iff, beyond its threshold, it contains the residue class of the anchor
modulo the set's modulus.  That rule is an ultrafilter on the Boolean algebra
of ultimately periodic sets, contains every cofinite set, and agrees with any
nonprincipal ultrafilter extending the filter of tails of the anchor's
progressions.

Sequences are ultimately periodic lists of integer-valued polynomials.  Their
truth sets under ``=``/``<``/``<=`` are computed exactly, class by class: a
nonzero difference polynomial has a fixed sign past a computable bound, and
the finitely many earlier indices are folded into an explicit prefix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    EmptySet,
    NegativeAlmostEverywhere,
    NotIntegerValued,
    NotNaturalValued,
)
from .poly import Poly

__all__ = [
    "UPSet",
    "AnchoredUltrafilter",
    "UPPSeq",
    "Hypernatural",
    "Ordering",
    "Parity",
    "upset_decide",
    "upset_complement",
    "upset_intersect",
    "upset_union",
    "upp_relate",
    "upp_where",
    "upp_min",
    "upp_max",
    "upp_abs_diff",
    "upp_clamp",
    "upp_mod",
    "upp_floor_div",
    "hn_add",
    "hn_mul",
    "hn_sub",
    "hn_div_exact",
    "hn_cmp",
    "hn_eq",
    "hn_is_limited",
    "hn_identify_standard",
    "hn_parity",
    "hn_min",
    "hn_max",
]


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _bits(prefix: Iterable[bool]) -> str:
    return "[" + ", ".join("1" if b else "0" for b in prefix) + "]"


# ---------------------------------------------------------------------------
# Ultimately periodic sets


@dataclass(frozen=True, eq=False)
class UPSet:
    """Ultimately periodic subset of N.

    ``n`` is a member iff ``prefix[n]`` for ``n < threshold`` and
    ``n % modulus in pattern`` otherwise.  Equality and hashing are semantic
    (pointwise), via the canonical form.
    """

    threshold: int
    modulus: int
    pattern: frozenset
    prefix: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pattern", frozenset(int(r) for r in self.pattern))
        object.__setattr__(self, "prefix", tuple(bool(b) for b in self.prefix))
        if self.threshold < 0:
            raise ValueError("threshold must be a natural number")
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if len(self.prefix) != self.threshold:
            raise ValueError(
                f"prefix has {len(self.prefix)} bits, threshold is {self.threshold}"
            )
        bad = [r for r in self.pattern if not 0 <= r < self.modulus]
        if bad:
            raise ValueError(f"residues {sorted(bad)} outside 0..{self.modulus - 1}")

    # constructors

    @classmethod
    def everything(cls) -> UPSet:
        return cls(0, 1, {0})

    @classmethod
    def nothing(cls) -> UPSet:
        return cls(0, 1, set())

    @classmethod
    def tail(cls, start: int) -> UPSet:
        """The cofinite set ``{n : n >= start}``."""
        return cls(start, 1, {0}, [False] * start)

    @classmethod
    def finite(cls, members: Iterable[int]) -> UPSet:
        members = set(members)
        top = max(members) + 1 if members else 0
        return cls(top, 1, set(), [n in members for n in range(top)])

    @classmethod
    def residues(cls, modulus: int, residues: Iterable[int], threshold: int = 0) -> UPSet:
        """``{n >= threshold : n % modulus in residues}``."""
        return cls(threshold, modulus, {r % modulus for r in residues}, [False] * threshold)

    @classmethod
    def from_predicate(cls, threshold: int, modulus: int, pred: Callable[[int], bool]) -> UPSet:
        """Tabulate a predicate known to be periodic with ``modulus`` from ``threshold`` on."""
        pattern = {n % modulus for n in range(threshold, threshold + modulus) if pred(n)}
        return cls(threshold, modulus, pattern, [pred(n) for n in range(threshold)])

    # membership

    def __contains__(self, n: int) -> bool:
        if n < 0:
            raise ValueError("index sets live in N")
        if n < self.threshold:
            return self.prefix[n]
        return n % self.modulus in self.pattern

    def members_below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    def is_finite(self) -> bool:
        return not self.pattern

    def is_cofinite(self) -> bool:
        return len(self.pattern) == self.modulus

    # Boolean algebra

    def complement(self) -> UPSet:
        return UPSet(
            self.threshold,
            self.modulus,
            set(range(self.modulus)) - self.pattern,
            [not b for b in self.prefix],
        )

    def _combine(self, other: UPSet, op: Callable[[bool, bool], bool]) -> UPSet:
        t = max(self.threshold, other.threshold)
        m = math.lcm(self.modulus, other.modulus)
        pattern = {
            r for r in range(m)
            if op(r % self.modulus in self.pattern, r % other.modulus in other.pattern)
        }
        prefix = [op(n in self, n in other) for n in range(t)]
        return UPSet(t, m, pattern, prefix)

    def intersect(self, other: UPSet) -> UPSet:
        return self._combine(other, lambda a, b: a and b)

    def union(self, other: UPSet) -> UPSet:
        return self._combine(other, lambda a, b: a or b)

    __invert__ = complement
    __and__ = intersect
    __or__ = union

    def refine(self, threshold: int, modulus: int) -> UPSet:
        """Same set, written with a larger threshold and a multiple of the modulus."""
        if threshold < self.threshold or modulus % self.modulus:
            raise ValueError("refinement must raise the threshold and multiply the modulus")
        pattern = {r for r in range(modulus) if r % self.modulus in self.pattern}
        return UPSet(threshold, modulus, pattern, [n in self for n in range(threshold)])

    def canonical(self) -> UPSet:
        """Minimal modulus, then minimal threshold."""
        m, pattern = self.modulus, self.pattern
        for d in _divisors(m):
            if all((r in pattern) == ((r + d) % m in pattern) for r in range(m)):
                m, pattern = d, frozenset(r % d for r in pattern)
                break
        t = self.threshold
        while t > 0 and self.prefix[t - 1] == ((t - 1) % m in pattern):
            t -= 1
        return UPSet(t, m, pattern, self.prefix[:t])

    def _key(self):
        c = self.canonical()
        return (c.threshold, c.modulus, c.pattern, c.prefix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        parts = [
            f"t={self.threshold}",
            f"m={self.modulus}",
            "P={" + ",".join(str(r) for r in sorted(self.pattern)) + "}",
        ]
        if self.threshold:
            parts.append(f"prefix={_bits(self.prefix)}")
        return "SET{" + "; ".join(parts) + "}"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> UPSet:
        body = _unwrap(text, "SET")
        fields = _fields(body)
        try:
            t = int(fields.pop("t"))
            m = int(fields.pop("m"))
            pat = fields.pop("P").strip()
        except KeyError as exc:
            raise ValueError(f"SET literal missing field {exc}") from None
        if not (pat.startswith("{") and pat.endswith("}")):
            raise ValueError(f"malformed pattern {pat!r}")
        residues = [int(x) for x in pat[1:-1].split(",") if x.strip()]
        prefix = _int_list(fields.pop("prefix", "[]"))
        if fields:
            raise ValueError(f"unknown SET fields {sorted(fields)}")
        if any(b not in (0, 1) for b in prefix):
            raise ValueError("prefix bits must be 0 or 1")
        return cls(t, m, residues, [bool(b) for b in prefix])


def _unwrap(text: str, tag: str) -> str:
    s = text.strip()
    if not (s.startswith(tag + "{") and s.endswith("}")):
        raise ValueError(f"expected {tag}{{...}}, got {text!r}")
    return s[len(tag) + 1:-1]


def _fields(body: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for i, part in enumerate(p.strip() for p in body.split(";")):
        if not part:
            continue
        if part.startswith("["):
            out["cycle"] = part
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"malformed field {part!r}")
        out[key.strip()] = value.strip()
    return out


def _int_list(text: str) -> list[int]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected a bracketed list, got {text!r}")
    return [int(x) for x in s[1:-1].split(",") if x.strip()]


@dataclass(frozen=True)
class AnchoredUltrafilter:
    """Decidable trace of a nonprincipal ultrafilter on ultimately periodic sets."""

    anchor: int = 0

    def __post_init__(self):
        if self.anchor < 0:
            raise ValueError("anchor must be a natural number")

    def decide(self, s: UPSet) -> bool:
        return self.anchor % s.modulus in s.pattern

    __contains__ = decide

    def progression(self, start: int, modulus: int, count: int) -> list[int]:
        """First ``count`` indices ``n >= start`` with ``n = anchor (mod modulus)``."""
        first = start + (self.anchor - start) % modulus
        return [first + k * modulus for k in range(count)]

    def samples_for(self, seq: UPPSeq, count: int) -> list[int]:
        return self.progression(seq.threshold, seq.period, count)


def upset_decide(s: UPSet, F: AnchoredUltrafilter) -> bool:
    return F.decide(s)


def upset_complement(s: UPSet) -> UPSet:
    return s.complement()


def upset_intersect(s: UPSet, t: UPSet) -> UPSet:
    return s.intersect(t)


def upset_union(s: UPSet, t: UPSet) -> UPSet:
    return s.union(t)


# ---------------------------------------------------------------------------
# Ultimately periodic polynomial sequences

SeqLike = Union["UPPSeq", int, str, Poly]


@dataclass(frozen=True, eq=False)
class UPPSeq:
    """Integer sequence: ``prefix[n]`` below the threshold, then
    ``cycle[(n - threshold) % len(cycle)](n)``.

    Equality and hashing are pointwise, via the canonical form.
    """

    threshold: int
    cycle: tuple
    prefix: tuple = ()

    def __post_init__(self):
        cycle = tuple(p if isinstance(p, Poly) else Poly.parse(p) if isinstance(p, str)
                      else Poly.const(p) for p in self.cycle)
        object.__setattr__(self, "cycle", cycle)
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if not cycle:
            raise ValueError("cycle must be nonempty")
        if self.threshold < 0:
            raise ValueError("threshold must be a natural number")
        if len(self.prefix) != self.threshold:
            raise ValueError(
                f"prefix has {len(self.prefix)} values, threshold is {self.threshold}"
            )
        if any(not isinstance(v, int) or isinstance(v, bool) for v in self.prefix):
            raise NotIntegerValued("prefix values must be integers")
        c = len(cycle)
        for j, p in enumerate(cycle):
            if not p.is_integer_valued_on(self.threshold + j, c):
                raise NotIntegerValued(
                    f"cycle polynomial {p} is not integer-valued on "
                    f"n = {(self.threshold + j) % c} (mod {c}), n >= {self.threshold}"
                )

    # constructors

    @classmethod
    def _trusted(cls, threshold: int, cycle: tuple, prefix: tuple) -> UPPSeq:
        # skips validation; only for rewritings of an already valid sequence
        seq = object.__new__(cls)
        object.__setattr__(seq, "threshold", threshold)
        object.__setattr__(seq, "cycle", cycle)
        object.__setattr__(seq, "prefix", prefix)
        return seq

    @classmethod
    def constant(cls, value: int) -> UPPSeq:
        return cls(0, (Poly.const(value),))

    @classmethod
    def identity(cls) -> UPPSeq:
        return cls(0, (Poly.var(),))

    @classmethod
    def of(cls, value: SeqLike) -> UPPSeq:
        if isinstance(value, UPPSeq):
            return value
        if isinstance(value, Hypernatural):
            return value.rep
        if isinstance(value, bool):
            raise TypeError("booleans are not sequences")
        if isinstance(value, int):
            return cls.constant(value)
        if isinstance(value, Poly):
            return cls(0, (value,))
        if isinstance(value, str):
            s = value.strip()
            if s.startswith("HN{"):
                return cls.parse(s)
            return cls(0, (Poly.parse(s),))
        raise TypeError(f"cannot build a sequence from {type(value).__name__}")

    @classmethod
    def periodic(cls, values: Sequence[int], prefix: Sequence[int] = ()) -> UPPSeq:
        """Ultimately periodic constant sequence."""
        return cls(len(prefix), tuple(Poly.const(v) for v in values), tuple(prefix))

    # access

    @property
    def period(self) -> int:
        return len(self.cycle)

    def poly_at(self, n: int) -> Poly:
        if n < self.threshold:
            raise IndexError(f"index {n} lies in the explicit prefix")
        return self.cycle[(n - self.threshold) % self.period]

    def class_poly(self, anchor: int) -> Poly:
        """Polynomial governing the tail of ``anchor``'s residue class."""
        return self.cycle[(anchor - self.threshold) % self.period]

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("sequences are indexed by N")
        if n < self.threshold:
            return self.prefix[n]
        return self.cycle[(n - self.threshold) % len(self.cycle)].int_at(n)

    def values(self, indices: Iterable[int]) -> list[int]:
        return [self[n] for n in indices]

    def max_degree(self) -> int:
        return max(p.degree for p in self.cycle)

    def refine(self, threshold: int, period: int) -> UPPSeq:
        """Same sequence, written with a larger threshold and a multiple of the period."""
        if threshold < self.threshold or period % self.period:
            raise ValueError("refinement must raise the threshold and multiply the period")
        if threshold == self.threshold and period == self.period:
            return self
        cycle = tuple(self.poly_at(threshold + j) for j in range(period))
        return UPPSeq._trusted(threshold, cycle, tuple(self[n] for n in range(threshold)))

    def canonical(self) -> UPPSeq:
        """Minimal period, then minimal threshold."""
        cyc = self.cycle
        c = len(cyc)
        for d in _divisors(c):
            if all(cyc[j] == cyc[(j + d) % c] for j in range(c)):
                cyc = cyc[:d]
                break
        t = self.threshold
        while t > 0:
            rotated = (cyc[-1],) + cyc[:-1]
            if rotated[0](t - 1) != self.prefix[t - 1]:
                break
            cyc, t = rotated, t - 1
        return UPPSeq._trusted(t, cyc, self.prefix[:t])

    def _key(self):
        c = self.canonical()
        return (c.threshold, c.cycle, c.prefix)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = UPPSeq.constant(other)
        if not isinstance(other, UPPSeq):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # arithmetic

    def _pointwise(self, other: SeqLike, op) -> UPPSeq:
        other = UPPSeq.of(other)
        t, m, (a, b) = align(self, other)
        cycle = tuple(op(p, q) for p, q in zip(a.cycle, b.cycle))
        prefix = tuple(op(x, y) for x, y in zip(a.prefix, b.prefix))
        return UPPSeq(t, cycle, prefix)

    def __add__(self, other: SeqLike) -> UPPSeq:
        return self._pointwise(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other: SeqLike) -> UPPSeq:
        return self._pointwise(other, lambda x, y: x - y)

    def __rsub__(self, other: SeqLike) -> UPPSeq:
        return UPPSeq.of(other) - self

    def __mul__(self, other: SeqLike) -> UPPSeq:
        return self._pointwise(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self) -> UPPSeq:
        return UPPSeq(self.threshold, tuple(-p for p in self.cycle),
                      tuple(-v for v in self.prefix))

    def div_exact(self, k: int) -> UPPSeq:
        """Exact division by a nonzero integer; raises if any term is not divisible."""
        if k == 0:
            raise ZeroDivisionError("division by zero")
        bad = [n for n, v in enumerate(self.prefix) if v % k]
        if bad:
            raise NotIntegerValued(f"prefix value at n={bad[0]} is not divisible by {k}")
        return UPPSeq(self.threshold, tuple(p.scale(Fraction(1, k)) for p in self.cycle),
                      tuple(v // k for v in self.prefix))

    def is_natural_valued(self) -> bool:
        if any(v < 0 for v in self.prefix):
            return False
        c = self.period
        for j, p in enumerate(self.cycle):
            if p.is_zero():
                continue
            if p.lead < 0:
                return False
            for n in range(self.threshold + j, p.sign_bound(), c):
                if p(n) < 0:
                    return False
        return True

    def first_negative(self) -> int | None:
        """Smallest index with a negative term, or None; assumes eventual nonnegativity."""
        for n, v in enumerate(self.prefix):
            if v < 0:
                return n
        c = self.period
        hits = []
        for j, p in enumerate(self.cycle):
            if p.is_zero():
                continue
            if p.lead < 0:
                hits.append(next(n for n in range(self.threshold + j, 1 << 62, c) if p(n) < 0))
                continue
            for n in range(self.threshold + j, p.sign_bound(), c):
                if p(n) < 0:
                    hits.append(n)
                    break
        return min(hits) if hits else None

    # text form

    def __str__(self) -> str:
        parts = [f"t={self.threshold}", f"c={self.period}",
                 "[" + ", ".join(str(p) for p in self.cycle) + "]"]
        if self.threshold:
            parts.append("prefix=[" + ", ".join(str(v) for v in self.prefix) + "]")
        return "HN{" + "; ".join(parts) + "}"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> UPPSeq:
        fields = _fields(_unwrap(text, "HN"))
        try:
            t = int(fields.pop("t"))
            c = int(fields.pop("c"))
            cyc = fields.pop("cycle")
        except KeyError as exc:
            raise ValueError(f"HN literal missing field {exc}") from None
        polys = [Poly.parse(s) for s in cyc[1:-1].split(",") if s.strip()]
        if len(polys) != c:
            raise ValueError(f"c={c} but {len(polys)} cycle polynomials given")
        prefix = _int_list(fields.pop("prefix", "[]"))
        if fields:
            raise ValueError(f"unknown HN fields {sorted(fields)}")
        return cls(t, tuple(polys), tuple(prefix))


def align(*seqs: UPPSeq, threshold: int = 0, period: int = 1) -> tuple[int, int, list[UPPSeq]]:
    """Rewrite sequences over a common threshold and common period."""
    t = max([threshold] + [s.threshold for s in seqs])
    m = math.lcm(period, *[s.period for s in seqs])
    return t, m, [s.refine(t, m) for s in seqs]


def _assemble(t: int, m: int, polys: Sequence[Poly], new_threshold: int,
              value: Callable[[int], int]) -> UPPSeq:
    """Build a sequence whose class polynomials are ``polys`` (positions relative
    to threshold ``t``), with every index below ``new_threshold`` tabulated."""
    cycle = tuple(polys[(new_threshold + j - t) % m] for j in range(m))
    return UPPSeq(new_threshold, cycle, tuple(value(n) for n in range(new_threshold)))


_RELS = {
    "=": "=", "==": "=", "<": "<", "<=": "<=", "≤": "<=",
    ">": ">", ">=": ">=", "≥": ">=", "!=": "!=", "≠": "!=",
}


def _holds(a: int, b: int, rel: str) -> bool:
    return a == b if rel == "=" else a < b if rel == "<" else a <= b


def upp_relate(x: SeqLike, y: SeqLike, rel: str) -> UPSet:
    """Exact truth set ``{n : rel(x_n, y_n)}``."""
    try:
        rel = _RELS[rel]
    except KeyError:
        raise ValueError(f"unknown relation {rel!r}") from None
    x, y = UPPSeq.of(x), UPPSeq.of(y)
    if rel == ">":
        return upp_relate(y, x, "<")
    if rel == ">=":
        return upp_relate(y, x, "<=")
    if rel == "!=":
        return upp_relate(x, y, "=").complement()
    t, m, (xa, ya) = align(x, y)
    diffs = [Poly() if p == q else p - q for p, q in zip(xa.cycle, ya.cycle)]
    bound = max([t] + [d.sign_bound() for d in diffs])
    pattern = set()
    for j, d in enumerate(diffs):
        if d.is_zero():
            truth = rel in ("=", "<=")
        else:
            truth = rel != "=" and d.lead < 0
        if truth:
            pattern.add((t + j) % m)
    prefix = [_holds(x[n], y[n], rel) for n in range(bound)]
    return UPSet(bound, m, pattern, prefix)


def upp_where(cond: UPSet, a: SeqLike, b: SeqLike) -> UPPSeq:
    """Pointwise ``a_n if n in cond else b_n``."""
    a, b = UPPSeq.of(a), UPPSeq.of(b)
    t, m, (ar, br) = align(a, b, threshold=cond.threshold, period=cond.modulus)
    cycle = tuple(
        ar.cycle[j] if (t + j) % cond.modulus in cond.pattern else br.cycle[j]
        for j in range(m)
    )
    prefix = tuple(a[n] if n in cond else b[n] for n in range(t))
    return UPPSeq(t, cycle, prefix)


def _extremum(a: UPPSeq, b: UPPSeq, want_min: bool) -> UPPSeq:
    t, m, (ar, br) = align(a, b)
    bound = t
    polys = []
    for p, q in zip(ar.cycle, br.cycle):
        d = p - q
        bound = max(bound, d.sign_bound())
        p_smaller = d.is_zero() or d.lead < 0
        polys.append(p if p_smaller == want_min else q)
    pick = min if want_min else max
    return _assemble(t, m, polys, bound, lambda n: pick(a[n], b[n]))


def upp_min(a: SeqLike, b: SeqLike) -> UPPSeq:
    return _extremum(UPPSeq.of(a), UPPSeq.of(b), want_min=True)


def upp_max(a: SeqLike, b: SeqLike) -> UPPSeq:
    return _extremum(UPPSeq.of(a), UPPSeq.of(b), want_min=False)


def upp_abs_diff(a: SeqLike, b: SeqLike) -> UPPSeq:
    a, b = UPPSeq.of(a), UPPSeq.of(b)
    return upp_max(a - b, b - a)


def upp_clamp(a: SeqLike) -> UPPSeq:
    """Pointwise ``max(a_n, 0)``."""
    return upp_max(a, 0)


def upp_mod(a: SeqLike, k: int) -> UPPSeq:
    """Pointwise ``a_n mod k`` as an ultimately periodic constant sequence.

    For an integer-valued polynomial of degree d sampled along a progression,
    the values mod k repeat with period dividing ``k * d!``.
    """
    if k < 1:
        raise ValueError("modulus must be positive")
    a = UPPSeq.of(a)
    period = a.period * k * math.factorial(max(a.max_degree(), 0))
    t = a.threshold
    cycle = tuple(Poly.const(a[t + j] % k) for j in range(period))
    return UPPSeq(t, cycle, tuple(v % k for v in a.prefix)).canonical()


def upp_floor_div(a: SeqLike, k: int) -> UPPSeq:
    a = UPPSeq.of(a)
    return (a - upp_mod(a, k)).div_exact(k).canonical()


# ---------------------------------------------------------------------------
# Hypernaturals


class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


class Parity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"


@dataclass(frozen=True)
class Hypernatural:
    """A natural-valued representative of an element of *N.

    ``==`` compares representatives pointwise; equality in *N depends on the
    ultrafilter and is :func:`hn_eq`.
    """

    rep: UPPSeq

    def __post_init__(self):
        if not isinstance(self.rep, UPPSeq):
            object.__setattr__(self, "rep", UPPSeq.of(self.rep))
        if not self.rep.is_natural_valued():
            n = self.rep.first_negative()
            raise NotNaturalValued(f"{self.rep} is negative at n={n}")

    @classmethod
    def of(cls, value: SeqLike) -> Hypernatural:
        if isinstance(value, Hypernatural):
            return value
        return cls(UPPSeq.of(value))

    def __getitem__(self, n: int) -> int:
        return self.rep[n]

    def canonical(self) -> Hypernatural:
        return Hypernatural(self.rep.canonical())

    def __str__(self) -> str:
        return str(self.rep)

    @classmethod
    def parse(cls, text: str) -> Hypernatural:
        return cls(UPPSeq.parse(text))


HNLike = Union[Hypernatural, UPPSeq, int, str, Poly]


def _hn(x: HNLike) -> Hypernatural:
    return Hypernatural.of(x)


def hn_add(a: HNLike, b: HNLike) -> Hypernatural:
    return Hypernatural((_hn(a).rep + _hn(b).rep).canonical())


def hn_mul(a: HNLike, b: HNLike) -> Hypernatural:
    return Hypernatural((_hn(a).rep * _hn(b).rep).canonical())


def hn_sub(a: HNLike, b: HNLike, F: AnchoredUltrafilter) -> Hypernatural:
    """Truncated subtraction; exact wherever ``a_n >= b_n``, zero elsewhere."""
    a, b = _hn(a), _hn(b)
    if not F.decide(upp_relate(a.rep, b.rep, ">=")):
        raise NegativeAlmostEverywhere(f"{a} < {b} almost everywhere")
    return Hypernatural(upp_clamp(a.rep - b.rep).canonical())


def hn_div_exact(a: HNLike, k: int) -> Hypernatural:
    return Hypernatural(_hn(a).rep.div_exact(k).canonical())


def hn_cmp(a: HNLike, b: HNLike, F: AnchoredUltrafilter) -> Ordering:
    a, b = _hn(a), _hn(b)
    if F.decide(upp_relate(a.rep, b.rep, "<")):
        return Ordering.LESS
    if F.decide(upp_relate(a.rep, b.rep, "=")):
        return Ordering.EQUAL
    return Ordering.GREATER


def hn_eq(a: HNLike, b: HNLike, F: AnchoredUltrafilter) -> bool:
    return hn_cmp(a, b, F) is Ordering.EQUAL


def hn_is_limited(a: HNLike, F: AnchoredUltrafilter) -> bool:
    return _hn(a).rep.class_poly(F.anchor).is_constant()


def hn_identify_standard(a: HNLike, F: AnchoredUltrafilter) -> int | None:
    """The standard natural ``a`` equals a.e., or None when ``a`` is unlimited."""
    p = _hn(a).rep.class_poly(F.anchor)
    if not p.is_constant():
        return None
    return int(p.constant_value())


def hn_parity(a: HNLike, F: AnchoredUltrafilter) -> Parity:
    even = upp_relate(upp_mod(_hn(a).rep, 2), 0, "=")
    return Parity.EVEN if F.decide(even) else Parity.ODD


def _fold(items: Sequence[HNLike], fn) -> Hypernatural:
    if not items:
        raise EmptySet("min/max of an empty collection")
    acc = _hn(items[0]).rep
    for x in items[1:]:
        acc = fn(acc, _hn(x).rep)
    return Hypernatural(acc.canonical())


def hn_min(items: Sequence[HNLike], F: AnchoredUltrafilter | None = None) -> Hypernatural:
    """Pointwise minimum; a.e. below every input and a.e. equal to one of them."""
    return _fold(list(items), upp_min)


def hn_max(items: Sequence[HNLike], F: AnchoredUltrafilter | None = None) -> Hypernatural:
    return _fold(list(items), upp_max)

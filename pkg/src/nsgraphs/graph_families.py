"""Finitely described graph sequences and their exact symbolic evaluators.

A family describes ``G_n`` for every ``n``.  Two flavours exist:

* tabulated families (:class:`ConstantFamily`, :class:`ExplicitPeriodicFamily`)
  list finitely many concrete graphs; every evaluator runs the standard
  algorithm once per prefix index and once per cycle position;
* indexed families (path, cycle, complete, star) are parameterised by an
  ultimately periodic size sequence; evaluators are closed forms built from
  the sequence algebra.

:class:`InfinitePathFamily` is the constant sequence of the one-way infinite
path.  It has no finite materialization, only windows.

Vertex selectors are index sequences for every kind.  Path and cycle vertices
are ``0..f-1`` in order, the star hub is vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import graph_core as gc
from .errors import InfiniteGraph, InvalidFamily, InvalidSelector, DisconnectedAlmostEverywhere
from .graph_core import Criterion, DegreesBoundedBy, FiniteGraph
from .poly import Poly
from .up_algebra import (
    AnchoredUltrafilter,
    SeqLike,
    UPPSeq,
    UPSet,
    align,
    upp_abs_diff,
    upp_floor_div,
    upp_max,
    upp_min,
    upp_mod,
    upp_relate,
    upp_where,
)

__all__ = [
    "GraphFamily",
    "ConstantFamily",
    "ExplicitPeriodicFamily",
    "PathFamily",
    "CycleFamily",
    "CompleteFamily",
    "StarFamily",
    "PatchedFamily",
    "InfinitePathFamily",
    "VertexSelector",
    "graph_at",
    "window_at",
    "size_sequences",
    "edge_set",
    "degree_seq",
    "distance_seq",
    "reachable_set",
    "property_set",
    "max_degree_seq",
    "eccentricity_seq",
    "radius_seq",
    "diameter_seq",
]

_ALL = UPSet.everything()
_NONE = UPSet.nothing()


def _eq(a: SeqLike, b: SeqLike) -> UPSet:
    return upp_relate(a, b, "=")


class GraphFamily:
    """A finitely described sequence ``<G_n : n in N>``."""

    hyperfinite = True
    kind = "family"

    def graph_at(self, n: int) -> FiniteGraph:
        raise NotImplementedError

    def vertex_count(self) -> UPPSeq:
        return self.sizes()[0]

    def sizes(self) -> tuple[UPPSeq, UPPSeq]:
        raise NotImplementedError

    def description_period(self) -> tuple[int, int]:
        """(threshold, period) of the family's own description."""
        raise NotImplementedError

    def _require_finite(self, what: str) -> None:
        if not self.hyperfinite:
            raise InfiniteGraph(f"{what} needs finite graphs; {self.kind} is infinite")


# ---------------------------------------------------------------------------
# tabulated families


class _Tabulated(GraphFamily):
    graph_prefix: tuple
    graph_cycle: tuple

    def graph_at(self, n: int) -> FiniteGraph:
        if n < len(self.graph_prefix):
            return self.graph_prefix[n]
        return self.graph_cycle[(n - len(self.graph_prefix)) % len(self.graph_cycle)]

    def description_period(self) -> tuple[int, int]:
        return len(self.graph_prefix), len(self.graph_cycle)

    def _tabulate(self, fn: Callable, *sels: UPPSeq, boolean: bool = False):
        # Valid selectors are bounded, hence constant on each residue class
        # past their threshold; one evaluation per class position suffices.
        t0, c0 = self.description_period()
        t, m, _ = align(*sels, threshold=t0, period=c0)

        def at(n):
            return fn(self.graph_at(n), *[s[n] for s in sels])

        prefix = [at(n) for n in range(t)]
        cyc = [at(t + j) for j in range(m)]
        if boolean:
            return UPSet(t, m, {(t + j) % m for j in range(m) if cyc[j]}, prefix)
        return UPPSeq(t, tuple(Poly.const(v) for v in cyc), tuple(prefix)).canonical()

    def sizes(self):
        return (self._tabulate(lambda g: g.p), self._tabulate(lambda g: g.q))

    def edge_set(self, x, y):
        return self._tabulate(lambda g, u, v: u != v and g.has_edge(u, v), x, y, boolean=True)

    def degree(self, x):
        return self._tabulate(lambda g, u: g.degree(u), x)

    def reachable(self, x, y):
        return self._tabulate(lambda g, u, v: gc.bfs_distances(g, u)[v] is not None, x, y,
                              boolean=True)

    def distance(self, x, y):
        # unreachable pairs read as 0; callers gate on reachable()
        return self._tabulate(lambda g, u, v: gc.bfs_distances(g, u)[v] or 0, x, y)

    def eccentricity(self, x):
        def ecc(g, u):
            d = gc.bfs_distances(g, u)
            return 0 if None in d else max(d)
        return self._tabulate(ecc, x)

    def radius(self):
        return self._tabulate(lambda g: _safe_erd(g)[1])

    def diameter(self):
        return self._tabulate(lambda g: _safe_erd(g)[2])

    def max_degree(self):
        return self._tabulate(lambda g: g.max_degree())

    def tree_edges(self):
        return self._tabulate(lambda g: gc.spanning_tree(g).q if gc.is_connected(g) else 0)

    def property(self, prop):
        return self._tabulate(lambda g: gc.holds(g, prop), boolean=True)

    def coloring_at(self, n: int) -> list[int]:
        g = self.graph_at(n)
        col = gc.greedy_coloring(g)
        return [col[v] for v in range(g.p)]

    def color_seq(self, x):
        return self._tabulate(lambda g, u: gc.greedy_coloring(g)[u], x)


def _safe_erd(g: FiniteGraph):
    if not gc.is_connected(g):
        return [], 0, 0
    return gc.eccentricity_radius_diameter(g)


@dataclass(frozen=True)
class ConstantFamily(_Tabulated):
    """``G_n = graph`` for every n (the enlargement of a finite graph)."""

    graph: FiniteGraph
    kind = "constant"

    @property
    def graph_prefix(self):
        return ()

    @property
    def graph_cycle(self):
        return (self.graph,)


@dataclass(frozen=True)
class ExplicitPeriodicFamily(_Tabulated):
    """``G_n = prefix[n]`` below ``len(prefix)``, then the cycle repeats."""

    prefix: tuple
    cycle: tuple
    kind = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise InvalidFamily("explicit family needs a nonempty cycle")
        if not all(isinstance(g, FiniteGraph) for g in self.prefix + self.cycle):
            raise InvalidFamily("explicit family members must be FiniteGraph")

    @property
    def graph_prefix(self):
        return self.prefix

    @property
    def graph_cycle(self):
        return self.cycle


# ---------------------------------------------------------------------------
# indexed families


class _Indexed(GraphFamily):
    minimum = 1
    param: UPPSeq

    def _check_param(self, name: str):
        seq = UPPSeq.of(getattr(self, name))
        object.__setattr__(self, name, seq)
        low = upp_relate(seq, self.minimum, "<")
        if low != _NONE:
            raise InvalidFamily(
                f"{self.kind} {name} {seq} drops below {self.minimum} "
                f"(e.g. at n={_first_member(low)}); materialize those indices in the prefix"
            )

    @classmethod
    def with_floor(cls, param: SeqLike):
        """Raise the finitely many undersized terms to the kind minimum."""
        seq = UPPSeq.of(param)
        low = upp_relate(seq, cls.minimum, "<")
        if not low.is_finite():
            raise InvalidFamily(f"{seq} is below {cls.minimum} on infinitely many indices")
        return cls(upp_max(seq, cls.minimum).canonical())

    def description_period(self):
        return self.param.threshold, self.param.period

    def coloring_at(self, n: int) -> list[int]:
        raise NotImplementedError

    def reachable(self, x, y):
        return _ALL


def _first_member(s: UPSet) -> int:
    for n in range(s.threshold + s.modulus):
        if n in s:
            return n
    raise ValueError("empty set")


@dataclass(frozen=True)
class PathFamily(_Indexed):
    size: UPPSeq
    kind = "path"
    minimum = 2

    def __post_init__(self):
        self._check_param("size")

    @property
    def param(self):
        return self.size

    def graph_at(self, n):
        return gc.path_graph(self.size[n])

    def sizes(self):
        return self.size, self.size - 1

    def edge_set(self, x, y):
        return _path_adjacency(x, y)

    def degree(self, x):
        f = self.size
        return upp_where(_eq(x, 0) | _eq(x, f - 1), 1, 2)

    def distance(self, x, y):
        return upp_abs_diff(x, y)

    def eccentricity(self, x):
        return upp_max(x, self.size - 1 - x)

    def radius(self):
        return upp_floor_div(self.size, 2)

    def diameter(self):
        return self.size - 1

    def max_degree(self):
        return upp_where(_eq(self.size, 2), 1, 2)

    def tree_edges(self):
        return self.size - 1

    def property(self, prop):
        if isinstance(prop, DegreesBoundedBy):
            return upp_relate(self.max_degree(), prop.k, "<=")
        return _ALL if prop is Criterion.CONNECTED else _NONE

    def coloring_at(self, n):
        return [i % 2 + 1 for i in range(self.size[n])]

    def color_seq(self, x):
        return upp_mod(x, 2) + 1


@dataclass(frozen=True)
class CycleFamily(_Indexed):
    size: UPPSeq
    kind = "cycle"
    minimum = 3

    def __post_init__(self):
        self._check_param("size")

    @property
    def param(self):
        return self.size

    def graph_at(self, n):
        return gc.cycle_graph(self.size[n])

    def sizes(self):
        return self.size, self.size

    def edge_set(self, x, y):
        d, f = x - y, self.size
        return _eq(d, 1) | _eq(d, -1) | _eq(d, f - 1) | _eq(d, 1 - f)

    def degree(self, x):
        return UPPSeq.constant(2)

    def distance(self, x, y):
        gap = upp_abs_diff(x, y)
        return upp_min(gap, self.size - gap)

    def eccentricity(self, x):
        return upp_floor_div(self.size, 2)

    def radius(self):
        return upp_floor_div(self.size, 2)

    diameter = radius

    def max_degree(self):
        return UPPSeq.constant(2)

    def tree_edges(self):
        return self.size - 1

    def property(self, prop):
        if isinstance(prop, DegreesBoundedBy):
            return _ALL if prop.k >= 2 else _NONE
        if prop in (Criterion.CONNECTED, Criterion.EULERIAN):
            return _ALL
        # all three criteria reduce to p <= 4 on a cycle
        return upp_relate(self.size, 4, "<=")

    def coloring_at(self, n):
        f = self.size[n]
        cols = [i % 2 + 1 for i in range(f)]
        if f % 2:
            cols[-1] = 3
        return cols

    def color_seq(self, x):
        odd_last = _eq(upp_mod(self.size, 2), 1) & _eq(x, self.size - 1)
        return upp_where(odd_last, 3, upp_mod(x, 2) + 1)


@dataclass(frozen=True)
class CompleteFamily(_Indexed):
    size: UPPSeq
    kind = "complete"
    minimum = 2

    def __post_init__(self):
        self._check_param("size")

    @property
    def param(self):
        return self.size

    def graph_at(self, n):
        return gc.complete_graph(self.size[n])

    def sizes(self):
        f = self.size
        return f, (f * (f - 1)).div_exact(2).canonical()

    def edge_set(self, x, y):
        return _eq(x, y).complement()

    def degree(self, x):
        return self.size - 1

    def distance(self, x, y):
        return upp_where(_eq(x, y), 0, 1)

    def eccentricity(self, x):
        return UPPSeq.constant(1)

    def radius(self):
        return UPPSeq.constant(1)

    diameter = radius

    def max_degree(self):
        return self.size - 1

    def tree_edges(self):
        return self.size - 1

    def property(self, prop):
        f = self.size
        if isinstance(prop, DegreesBoundedBy):
            return upp_relate(f - 1, prop.k, "<=")
        if prop is Criterion.CONNECTED:
            return _ALL
        if prop is Criterion.EULERIAN:
            return _eq(upp_mod(f, 2), 1)
        return upp_relate(f, 3, ">=")

    def coloring_at(self, n):
        return [i + 1 for i in range(self.size[n])]

    def color_seq(self, x):
        return x + 1


@dataclass(frozen=True)
class StarFamily(_Indexed):
    leaves: UPPSeq
    kind = "star"
    minimum = 1

    def __post_init__(self):
        self._check_param("leaves")

    @property
    def param(self):
        return self.leaves

    def graph_at(self, n):
        return gc.star_graph(self.leaves[n])

    def sizes(self):
        return self.leaves + 1, self.leaves

    def edge_set(self, x, y):
        hx, hy = _eq(x, 0), _eq(y, 0)
        return (hx & ~hy) | (hy & ~hx)

    def degree(self, x):
        return upp_where(_eq(x, 0), self.leaves, 1)

    def distance(self, x, y):
        return upp_where(_eq(x, y), 0, upp_where(_eq(x, 0) | _eq(y, 0), 1, 2))

    def eccentricity(self, x):
        return upp_where(_eq(x, 0), 1, self.diameter())

    def radius(self):
        return UPPSeq.constant(1)

    def diameter(self):
        return upp_where(_eq(self.leaves, 1), 1, 2)

    def max_degree(self):
        return self.leaves

    def tree_edges(self):
        return self.leaves

    def property(self, prop):
        if isinstance(prop, DegreesBoundedBy):
            return upp_relate(self.leaves, prop.k, "<=")
        return _ALL if prop is Criterion.CONNECTED else _NONE

    def coloring_at(self, n):
        return [1] + [2] * self.leaves[n]

    def color_seq(self, x):
        return upp_where(_eq(x, 0), 1, 2)


@dataclass(frozen=True)
class PatchedFamily(_Tabulated):
    """``G_n = head[n]`` below ``len(head)``, then ``base``.

    Lets a closed-form family absorb finitely many indices that fall outside
    its kind (e.g. a one-vertex graph where a path needs two).
    """

    base: GraphFamily
    head: tuple

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        if not self.base.hyperfinite:
            raise InvalidFamily("only hyperfinite families can be patched")
        if not all(isinstance(g, FiniteGraph) for g in self.head):
            raise InvalidFamily("patched graphs must be FiniteGraph")

    @property
    def kind(self):
        return self.base.kind

    def graph_at(self, n):
        return self.head[n] if n < len(self.head) else self.base.graph_at(n)

    def description_period(self):
        t, m = self.base.description_period()
        return max(t, len(self.head)), m

    def _tabulate(self, fn, *sels, boolean=False):
        return [fn(self.head[n], *[s[n] for s in sels]) for n in range(len(self.head))]

    def _merge(self, base_value, head_values):
        t = len(self.head)
        if isinstance(base_value, UPSet):
            r = base_value.refine(max(t, base_value.threshold), base_value.modulus)
            bits = [bool(b) for b in head_values] + list(r.prefix[t:])
            return UPSet(r.threshold, r.modulus, r.pattern, bits)
        r = base_value.refine(max(t, base_value.threshold), base_value.period)
        return UPPSeq(r.threshold, r.cycle, tuple(head_values) + r.prefix[t:]).canonical()

    def sizes(self):
        p, q = self.base.sizes()
        hp, hq = _Tabulated.sizes(self)
        return self._merge(p, hp), self._merge(q, hq)

    def coloring_at(self, n):
        return _Tabulated.coloring_at(self, n) if n < len(self.head) else self.base.coloring_at(n)


def _patched(name):
    def method(self, *args):
        return self._merge(getattr(self.base, name)(*args),
                           getattr(_Tabulated, name)(self, *args))
    method.__name__ = name
    return method


for _name in ("edge_set", "degree", "reachable", "distance", "eccentricity", "radius",
              "diameter", "max_degree", "tree_edges", "property", "color_seq"):
    setattr(PatchedFamily, _name, _patched(_name))


@dataclass(frozen=True)
class InfinitePathFamily(GraphFamily):
    """``G_n`` is the one-way infinite path ``x_0, b_0, x_1, ...`` for every n."""

    hyperfinite = False
    kind = "infinite_path"

    def graph_at(self, n):
        raise InfiniteGraph("the infinite path has no finite materialization; use window_at")

    def window(self, lo: int, hi: int) -> FiniteGraph:
        if lo > hi:
            raise ValueError("window needs lo <= hi")
        return gc.path_graph(hi - lo + 1)

    def description_period(self):
        return 0, 1

    def sizes(self):
        raise InfiniteGraph("the infinite path has infinitely many vertices")

    def edge_set(self, x, y):
        return _path_adjacency(x, y)

    def distance(self, x, y):
        return upp_abs_diff(x, y)

    def reachable(self, x, y):
        return _ALL


def _path_adjacency(x: UPPSeq, y: UPPSeq) -> UPSet:
    return _eq(x + 1, y) | _eq(y + 1, x)


# ---------------------------------------------------------------------------
# selectors


@dataclass(frozen=True)
class VertexSelector:
    """A representative ``<x_n>`` of a nonstandard vertex: ``x_n`` indexes ``X_n``."""

    family: GraphFamily
    seq: UPPSeq
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "seq", UPPSeq.of(self.seq))
        validate_selector(self.family, self.seq, self.name)

    def __getitem__(self, n: int) -> int:
        return self.seq[n]

    def __str__(self) -> str:
        return str(self.seq)


def validate_selector(fam: GraphFamily, seq: UPPSeq, name: str = "") -> None:
    label = f"selector {name!r}" if name else f"selector {seq}"
    if not seq.is_natural_valued():
        raise InvalidSelector(f"{label} is negative at n={seq.first_negative()}")
    if not fam.hyperfinite:
        return
    bad = upp_relate(seq, fam.vertex_count(), ">=").canonical()
    if bad == _NONE:
        return
    if bad.pattern:
        r = min(bad.pattern)
        raise InvalidSelector(
            f"{label} is out of range on residue class n = {r} (mod {bad.modulus}), "
            f"n >= {bad.threshold}"
        )
    n = bad.prefix.index(True)
    raise InvalidSelector(f"{label} is out of range at n={n}")


def _seq(fam: GraphFamily, x) -> UPPSeq:
    if isinstance(x, VertexSelector):
        if x.family != fam:
            raise InvalidSelector(f"selector {x.name or x.seq} belongs to another family")
        return x.seq
    seq = UPPSeq.of(x)
    validate_selector(fam, seq)
    return seq


# ---------------------------------------------------------------------------
# module-level evaluators


def graph_at(fam: GraphFamily, n: int) -> FiniteGraph:
    return fam.graph_at(n)


def window_at(fam: GraphFamily, n: int, lo: int, hi: int) -> FiniteGraph:
    """Subpath of the infinite path on vertex indices ``lo..hi`` (relabelled from 0)."""
    if not isinstance(fam, InfinitePathFamily):
        raise InvalidFamily("window_at applies to the infinite path family")
    return fam.window(lo, hi)


def size_sequences(fam: GraphFamily) -> tuple[UPPSeq, UPPSeq]:
    fam._require_finite("size_sequences")
    return fam.sizes()


def edge_set(fam: GraphFamily, x, y) -> UPSet:
    """``{n : {x_n, y_n} in B_n}``."""
    return fam.edge_set(_seq(fam, x), _seq(fam, y))


def degree_seq(fam: GraphFamily, x) -> UPPSeq:
    fam._require_finite("degree_seq")
    return fam.degree(_seq(fam, x)).canonical()


def reachable_set(fam: GraphFamily, x, y) -> UPSet:
    return fam.reachable(_seq(fam, x), _seq(fam, y))


def distance_seq(fam: GraphFamily, x, y, F: AnchoredUltrafilter | None = None) -> UPPSeq:
    """Shortest-path lengths ``d(x_n, y_n)``.

    Indices where the pair is disconnected read as 0.  With ``F`` given, the
    pair must be connected almost everywhere.
    """
    xs, ys = _seq(fam, x), _seq(fam, y)
    if F is not None and not F.decide(fam.reachable(xs, ys)):
        raise DisconnectedAlmostEverywhere("the two vertices are disconnected almost everywhere")
    return fam.distance(xs, ys).canonical()


def property_set(fam: GraphFamily, prop) -> UPSet:
    """``{n : G_n has prop}``."""
    fam._require_finite("property_set")
    return fam.property(prop)


def max_degree_seq(fam: GraphFamily) -> UPPSeq:
    fam._require_finite("max_degree_seq")
    return fam.max_degree().canonical()


def eccentricity_seq(fam: GraphFamily, x) -> UPPSeq:
    fam._require_finite("eccentricity_seq")
    return fam.eccentricity(_seq(fam, x)).canonical()


def radius_seq(fam: GraphFamily) -> UPPSeq:
    fam._require_finite("radius_seq")
    return fam.radius().canonical()


def diameter_seq(fam: GraphFamily) -> UPPSeq:
    fam._require_finite("diameter_seq")
    return fam.diameter().canonical()


def tree_edge_seq(fam: GraphFamily) -> UPPSeq:
    """Edge counts of the per-index BFS spanning trees."""
    fam._require_finite("tree_edge_seq")
    return fam.tree_edges().canonical()


def coloring_at(fam: GraphFamily, n: int) -> list[int]:
    fam._require_finite("coloring_at")
    return fam.coloring_at(n)


def color_seq(fam: GraphFamily, x) -> UPPSeq:
    fam._require_finite("color_seq")
    return fam.color_seq(_seq(fam, x)).canonical()


def standard_panel(fam: GraphFamily) -> list[UPPSeq]:
    """A few always-valid selectors: first vertex, last vertex, middle vertex."""
    p = fam.vertex_count()
    return [UPPSeq.constant(0), (p - 1).canonical(), upp_floor_div(p - 1, 2)]

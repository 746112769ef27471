"""The nonstandard graph ``*G = [G_n]`` and its decided properties.

Every predicate here reduces to a truth set in N computed by
:mod:`nsgraphs.graph_families` and decided by an explicit
:class:`~nsgraphs.up_algebra.AnchoredUltrafilter`.  Nothing is ambient: the
ultrafilter is always passed in.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable

from . import graph_core as gc
from . import graph_families as gf
from .errors import (
    FamilyMismatch,
    FewerThanThreeVerticesAE,
    InvalidRange,
    NoPath,
    NotConstantFamily,
    NotHyperfinite,
    NotHyperfiniteConnected,
    TransferInconsistency,
)
from .graph_core import Criterion, Trail
from .graph_families import (
    CompleteFamily,
    ConstantFamily,
    CycleFamily,
    ExplicitPeriodicFamily,
    GraphFamily,
    InfinitePathFamily,
    PatchedFamily,
    PathFamily,
    StarFamily,
    VertexSelector,
)
from .up_algebra import (
    AnchoredUltrafilter,
    Hypernatural,
    Ordering,
    Parity,
    SeqLike,
    UPPSeq,
    UPSet,
    hn_add,
    hn_cmp,
    hn_div_exact,
    hn_identify_standard,
    hn_is_limited,
    hn_mul,
    hn_parity,
    hn_sub,
    upp_relate,
)

__all__ = [
    "NSVertex",
    "NSEdge",
    "NSPath",
    "NSGraphSummary",
    "StrongColoring",
    "WeakColoring",
    "ns_vertex",
    "ns_vertex_eq",
    "vertex_eq_set",
    "mk_ns_edge",
    "ns_edge_eq",
    "incident",
    "adjacent_v",
    "adjacent_e",
    "ns_path_between",
    "ns_distance",
    "ns_connected",
    "induced_subfamily",
    "ns_summary",
    "ns_degree",
    "limitedly_distant",
    "ns_eulerian",
    "ns_hamiltonian",
    "ns_coloring",
    "identify_standard_vertex",
]


@dataclass(frozen=True)
class NSVertex:
    selector: VertexSelector

    @property
    def family(self) -> GraphFamily:
        return self.selector.family

    @property
    def seq(self) -> UPPSeq:
        return self.selector.seq

    def __str__(self) -> str:
        return self.selector.name or str(self.selector.seq)


def ns_vertex(fam: GraphFamily, seq: SeqLike, name: str = "") -> NSVertex:
    return NSVertex(VertexSelector(fam, UPPSeq.of(seq), name))


def _same_family(*items) -> GraphFamily:
    fams = [it.family for it in items]
    if any(f != fams[0] for f in fams[1:]):
        raise FamilyMismatch("operands come from different families")
    return fams[0]


def vertex_eq_set(x: NSVertex, y: NSVertex) -> UPSet:
    """``{n : x_n = y_n}``."""
    return upp_relate(x.seq, y.seq, "=")


_eq_set = vertex_eq_set


def ns_vertex_eq(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> bool:
    _same_family(x, y)
    return F.decide(_eq_set(x, y))


@dataclass(frozen=True)
class NSEdge:
    """``[{x_n, y_n}]``; only built by :func:`mk_ns_edge` once ``N_xy`` is large."""

    x: NSVertex
    y: NSVertex

    @property
    def family(self) -> GraphFamily:
        return self.x.family

    def __str__(self) -> str:
        return f"{{{self.x}, {self.y}}}"


def mk_ns_edge(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> NSEdge | None:
    """The nonstandard edge ``{x, y}``, or None when ``N_xy`` is small."""
    fam = _same_family(x, y)
    if F.decide(gf.edge_set(fam, x.selector, y.selector)):
        return NSEdge(x, y)
    return None


def ns_edge_eq(b: NSEdge, c: NSEdge, F: AnchoredUltrafilter) -> bool:
    """``{n : {x_n, y_n} = {v_n, w_n}}`` is large."""
    _same_family(b, c)
    same = (_eq_set(b.x, c.x) & _eq_set(b.y, c.y)) | (_eq_set(b.x, c.y) & _eq_set(b.y, c.x))
    return F.decide(same)


def _incidence_set(x: NSVertex, b: NSEdge) -> UPSet:
    return _eq_set(x, b.x) | _eq_set(x, b.y)


def incident(x: NSVertex, b: NSEdge, F: AnchoredUltrafilter) -> bool:
    _same_family(x, b)
    return F.decide(_incidence_set(x, b))


def adjacent_v(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> bool:
    return mk_ns_edge(x, y, F) is not None


def adjacent_e(b: NSEdge, c: NSEdge, F: AnchoredUltrafilter) -> bool:
    """Some nonstandard vertex lies on both edges, i.e. ``{n : b_n meets c_n}`` is large."""
    _same_family(b, c)
    meet = UPSet.nothing()
    for u in (b.x, b.y):
        for v in (c.x, c.y):
            meet = meet | _eq_set(u, v)
    return F.decide(meet)


# ---------------------------------------------------------------------------
# paths and distances


@dataclass(frozen=True)
class NSPath:
    """A hyperfinite path: exact length plus a per-index witness generator."""

    start: NSVertex
    end: NSVertex
    length: Hypernatural

    def witness(self, n: int) -> Trail:
        """Canonical shortest path in ``G_n`` between ``x_n`` and ``y_n``."""
        fam = self.start.family
        u, v = self.start.seq[n], self.end.seq[n]
        if isinstance(fam, InfinitePathFamily):
            lo = min(u, v)
            window = fam.window(lo, max(u, v))
            inner = gc.shortest_path(window, u - lo, v - lo)
            return Trail(tuple(w + lo for w in inner.vertices))
        return gc.shortest_path(fam.graph_at(n), u, v)


def ns_distance(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> Hypernatural:
    fam = _same_family(x, y)
    if not F.decide(gf.reachable_set(fam, x.selector, y.selector)):
        raise NoPath(f"{x} and {y} are disconnected almost everywhere")
    return Hypernatural(gf.distance_seq(fam, x.selector, y.selector))


def ns_path_between(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> NSPath:
    if ns_vertex_eq(x, y, F):
        raise NoPath("a path needs distinct endpoints; these coincide almost everywhere")
    return NSPath(x, y, ns_distance(x, y, F))


def limitedly_distant(x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> bool:
    return hn_is_limited(ns_distance(x, y, F), F)


def ns_degree(x: NSVertex, F: AnchoredUltrafilter) -> Hypernatural:
    if not x.family.hyperfinite:
        raise NotHyperfinite("degrees are defined here for hyperfinite families only")
    return Hypernatural(gf.degree_seq(x.family, x.selector))


# ---------------------------------------------------------------------------
# whole-graph properties


def ns_connected(fam: GraphFamily, F: AnchoredUltrafilter) -> bool:
    if isinstance(fam, InfinitePathFamily):
        return True
    return F.decide(gf.property_set(fam, Criterion.CONNECTED))


def _require_hyperfinite(fam: GraphFamily) -> None:
    if not fam.hyperfinite:
        raise NotHyperfinite(f"{fam.kind} is not hyperfinite")


def ns_eulerian(fam: GraphFamily, F: AnchoredUltrafilter,
                panel: Iterable[SeqLike] | None = None) -> bool:
    """Decided Euler property, cross-checked by the transferred degree-parity criterion
    on a panel of vertices (default: first, last and middle vertex)."""
    _require_hyperfinite(fam)
    verdict = F.decide(gf.property_set(fam, Criterion.EULERIAN))
    if verdict:
        seqs = gf.standard_panel(fam) if panel is None else [UPPSeq.of(s) for s in panel]
        for s in seqs:
            d = ns_degree(ns_vertex(fam, s), F)
            if hn_parity(d, F) is not Parity.EVEN:
                raise TransferInconsistency(f"Eulerian, yet vertex {s} has odd degree {d}")
    return verdict


_CRITERIA = {"dirac": Criterion.DIRAC, "ore": Criterion.ORE, "posa": Criterion.POSA}


def ns_hamiltonian(fam: GraphFamily, criterion, F: AnchoredUltrafilter) -> bool:
    """True iff the chosen sufficient criterion holds a.e. (hence ``*G`` is Hamiltonian).

    False only says the criterion fails; it is not a proof of non-Hamiltonicity.
    """
    _require_hyperfinite(fam)
    if isinstance(criterion, str):
        criterion = _CRITERIA[criterion.lower()]
    p, _ = gf.size_sequences(fam)
    if not F.decide(upp_relate(p, 3, ">=")):
        raise FewerThanThreeVerticesAE("Hamiltonicity needs at least three vertices a.e.")
    return F.decide(gf.property_set(fam, criterion))


# ---------------------------------------------------------------------------
# subgraphs


def induced_subfamily(fam: GraphFamily, lo: SeqLike, hi: SeqLike) -> GraphFamily:
    """Family whose n-th graph is ``G_n`` induced on indices ``lo(n)..hi(n)``,
    relabelled so that ``lo(n)`` becomes vertex 0."""
    lo, hi = UPPSeq.of(lo), UPPSeq.of(hi)
    if not lo.is_natural_valued() or upp_relate(lo, hi, ">") != UPSet.nothing():
        raise InvalidRange(f"need 0 <= lo <= hi everywhere, got lo={lo}, hi={hi}")
    if fam.hyperfinite:
        over = upp_relate(hi, fam.vertex_count(), ">=")
        if over != UPSet.nothing():
            raise InvalidRange(f"hi={hi} reaches past the last vertex")
    width = (hi - lo + 1).canonical()
    single = upp_relate(width, 1, "=")

    if isinstance(fam, (ConstantFamily, ExplicitPeriodicFamily, PatchedFamily)):
        return _induced_tabulated(fam, lo, hi)
    if single == UPSet.everything():
        return ConstantFamily(gc.empty_graph(1))
    if isinstance(fam, (InfinitePathFamily, PathFamily)):
        return _need(PathFamily, width, fam, lo, hi)
    if isinstance(fam, CompleteFamily):
        return _need(CompleteFamily, width, fam, lo, hi)
    if isinstance(fam, CycleFamily):
        if upp_relate(width, fam.size, "=") == UPSet.everything():
            return fam
        if upp_relate(width, fam.size, "<") == UPSet.everything():
            return _need(PathFamily, width, fam, lo, hi)
        raise InvalidRange("range covers the whole cycle on some indices only")
    if isinstance(fam, StarFamily):
        if lo == UPPSeq.constant(0):
            return _need(StarFamily, hi.canonical(), fam, lo, hi)
        raise InvalidRange("a range avoiding the hub induces an edgeless graph, "
                           "which is outside the family vocabulary")
    raise InvalidRange(f"unsupported family kind {fam.kind}")


def _need(cls, param: UPPSeq, fam, lo: UPPSeq, hi: UPPSeq) -> GraphFamily:
    low = upp_relate(param, cls.minimum, "<")
    if low == UPSet.nothing():
        return cls(param)
    if not low.is_finite():
        raise InvalidRange(f"induced {cls.kind} would drop below {cls.minimum} vertices "
                           f"on infinitely many indices")
    # finitely many undersized indices: list them explicitly
    t = low.canonical().threshold
    head = tuple(_induced_at(fam, n, lo, hi) for n in range(t))
    return PatchedFamily(cls.with_floor(param), head)


def _induced_at(fam, n: int, lo: UPPSeq, hi: UPPSeq):
    if isinstance(fam, InfinitePathFamily):
        return fam.window(lo[n], hi[n])
    return gc.induced_subgraph(fam.graph_at(n), range(lo[n], hi[n] + 1))


def _induced_tabulated(fam, lo: UPPSeq, hi: UPPSeq) -> GraphFamily:
    t0, c0 = fam.description_period()
    t = max(t0, lo.threshold, hi.threshold)
    m = lcm(c0, lo.period, hi.period)

    return ExplicitPeriodicFamily(tuple(_induced_at(fam, n, lo, hi) for n in range(t)),
                                  tuple(_induced_at(fam, t + j, lo, hi) for j in range(m)))


# ---------------------------------------------------------------------------
# numerical summary


@dataclass(frozen=True)
class NSGraphSummary:
    p: Hypernatural
    q: Hypernatural
    r: Hypernatural
    tree_edges: Hypernatural
    radius: Hypernatural
    diameter: Hypernatural
    connected: bool
    eulerian: bool
    dirac: bool
    ore: bool
    posa: bool
    cyclomatic_identity: bool
    edge_bounds: bool
    radius_bounds: bool


def ns_summary(fam: GraphFamily, F: AnchoredUltrafilter) -> NSGraphSummary:
    """Counts, cyclomatic number, radius, diameter and the decided inequality chains."""
    if not fam.hyperfinite:
        raise NotHyperfiniteConnected(f"{fam.kind} is not hyperfinite")
    p_seq, q_seq = gf.size_sequences(fam)
    p, q = Hypernatural(p_seq), Hypernatural(q_seq)
    if not ns_connected(fam, F):
        raise NotHyperfiniteConnected("family is not connected almost everywhere")
    if not F.decide(upp_relate(p_seq, 2, ">=")) or not F.decide(upp_relate(q_seq, 1, ">=")):
        raise NotHyperfiniteConnected("need |X| >= 2 and |B| >= 1 almost everywhere")

    one = Hypernatural.of(1)
    tree = Hypernatural(gf.tree_edge_seq(fam))
    r = hn_sub(q, tree, F)                       # |B| - |B_T|
    r_formula = hn_sub(hn_add(q, one), p, F)     # q - p + 1
    p_minus_1 = hn_sub(p, one, F)
    cyclomatic = (hn_cmp(r, r_formula, F) is Ordering.EQUAL
                  and hn_cmp(tree, p_minus_1, F) is Ordering.EQUAL)
    cap = hn_div_exact(hn_mul(p, p_minus_1), 2)
    edge_bounds = (hn_cmp(p_minus_1, q, F) is not Ordering.GREATER
                   and hn_cmp(q, cap, F) is not Ordering.GREATER)

    R = Hypernatural(gf.radius_seq(fam))
    D = Hypernatural(gf.diameter_seq(fam))
    radius_bounds = (hn_cmp(R, D, F) is not Ordering.GREATER
                     and hn_cmp(D, hn_add(R, R), F) is not Ordering.GREATER)

    def decided(c):
        return F.decide(gf.property_set(fam, c))

    return NSGraphSummary(
        p=p, q=q, r=r, tree_edges=tree, radius=R, diameter=D,
        connected=True,
        eulerian=decided(Criterion.EULERIAN),
        dirac=decided(Criterion.DIRAC),
        ore=decided(Criterion.ORE),
        posa=decided(Criterion.POSA),
        cyclomatic_identity=cyclomatic,
        edge_bounds=edge_bounds,
        radius_bounds=radius_bounds,
    )


# ---------------------------------------------------------------------------
# coloring


@dataclass(frozen=True)
class StrongColoring:
    """Palette ``1..k+1`` with standard k; ``at(n)`` colors ``G_n``."""

    family: GraphFamily
    k: int

    @property
    def palette_size(self) -> int:
        return self.k + 1

    def at(self, n: int) -> list[int]:
        return gf.coloring_at(self.family, n)

    def color_of(self, x: NSVertex) -> Hypernatural:
        return Hypernatural(gf.color_seq(self.family, x.selector))


@dataclass(frozen=True)
class WeakColoring:
    """Palette of hypernatural size ``*k + 1`` where ``*k`` is the max-degree sequence."""

    family: GraphFamily
    palette: Hypernatural

    def at(self, n: int) -> list[int]:
        return gf.coloring_at(self.family, n)

    def color_of(self, x: NSVertex) -> Hypernatural:
        return Hypernatural(gf.color_seq(self.family, x.selector))


def ns_coloring(fam: GraphFamily, F: AnchoredUltrafilter) -> StrongColoring | WeakColoring:
    _require_hyperfinite(fam)
    k_star = Hypernatural(gf.max_degree_seq(fam))
    k = hn_identify_standard(k_star, F)
    if k is not None:
        return StrongColoring(fam, k)
    return WeakColoring(fam, hn_add(k_star, 1))


def colors_differ(coloring, x: NSVertex, y: NSVertex, F: AnchoredUltrafilter) -> bool:
    return F.decide(upp_relate(coloring.color_of(x).rep, coloring.color_of(y).rep, "!="))


# ---------------------------------------------------------------------------
# enlargements


def identify_standard_vertex(x: NSVertex, F: AnchoredUltrafilter) -> int | None:
    """The standard vertex ``x`` equals a.e., or None for a vertex of ``*X \\ X``."""
    fam = x.family
    if not isinstance(fam, (ConstantFamily, InfinitePathFamily)):
        raise NotConstantFamily(f"{fam.kind} family is not an enlargement")
    return hn_identify_standard(Hypernatural(x.seq), F)

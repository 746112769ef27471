"""Finite simple graphs and the per-index algorithms run on each ``G_n``.

Vertices are ``0..p-1``; edges are sorted pairs ``(u, v)`` with ``u < v``.
Everything here is deterministic: neighbor lists are scanned in ascending
order, which fixes BFS trees, shortest-path tie-breaking, Hierholzer circuits
and greedy colorings.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .errors import (
    Disconnected,
    FewerThanThreeVertices,
    GraphFormatError,
    NotEulerian,
    TooLargeForBruteForce,
    Unreachable,
)

BRUTE_FORCE_LIMIT = 10


@dataclass(frozen=True)
class FiniteGraph:
    p: int
    edges: frozenset

    def __post_init__(self):
        if self.p < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.p):
                raise GraphFormatError(f"edge {e} is not a sorted pair of vertices below {self.p}")

    @classmethod
    def from_edges(cls, p: int, edges: Iterable[tuple[int, int]]) -> FiniteGraph:
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        return cls(p, frozenset(seen))

    @property
    def q(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.p)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(ns) for ns in self.adjacency]

    def max_degree(self) -> int:
        return max(self.degrees())

    @cached_property
    def _edge_order(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return list(self._edge_order)

    def __repr__(self) -> str:
        return f"FiniteGraph(p={self.p}, edges={self.sorted_edges()})"


# standard shapes

def path_graph(m: int) -> FiniteGraph:
    return FiniteGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> FiniteGraph:
    if m < 3:
        raise GraphFormatError("a cycle needs at least three vertices")
    return FiniteGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def complete_graph(m: int) -> FiniteGraph:
    return FiniteGraph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def star_graph(leaves: int) -> FiniteGraph:
    """Hub 0 joined to leaves ``1..leaves``."""
    return FiniteGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty_graph(m: int) -> FiniteGraph:
    return FiniteGraph(m, frozenset())


def induced_subgraph(g: FiniteGraph, vertices: Iterable[int]) -> FiniteGraph:
    """Subgraph on ``vertices`` keeping edges with both ends inside; vertex
    ``vertices[i]`` (in ascending order) becomes ``i``."""
    keep = sorted(set(vertices))
    if not keep:
        raise GraphFormatError("induced subgraph needs at least one vertex")
    index = {v: i for i, v in enumerate(keep)}
    return FiniteGraph.from_edges(
        len(keep), [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    )


# text format

def parse_graph(text: str) -> FiniteGraph:
    """Read ``p q`` followed by ``q`` lines ``u v`` (``#`` comments, blank lines ignored)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("empty graph file")
    lineno, head = rows[0]
    try:
        p, q = (int(x) for x in head)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected 'p q'") from None
    body = rows[1:]
    if len(body) != q:
        raise GraphFormatError(f"header announces {q} edges, found {len(body)}")
    edges = []
    for lineno, fields in body:
        try:
            u, v = (int(x) for x in fields)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'u v'") from None
        if not (0 <= u < v < p):
            raise GraphFormatError(f"line {lineno}: need 0 <= u < v < {p}, got {u} {v}")
        edges.append((u, v))
    try:
        return FiniteGraph.from_edges(p, edges)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{exc}") from None


def format_graph(g: FiniteGraph) -> str:
    lines = [f"{g.p} {g.q}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> FiniteGraph:
    return parse_graph(Path(path).read_text())


# walks

@dataclass(frozen=True)
class Trail:
    """Alternating walk ``vertices[0], edges[0], vertices[1], ...``."""

    vertices: tuple[int, ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vs = self.vertices
        return tuple((min(a, b), max(a, b)) for a, b in zip(vs, vs[1:]))

    @property
    def closed(self) -> bool:
        return len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices) - 1


def is_trail(g: FiniteGraph, t: Trail) -> bool:
    es = t.edges
    return all(e in g.edges for e in es) and len(set(es)) == len(es)


def is_path(g: FiniteGraph, t: Trail) -> bool:
    return is_trail(g, t) and len(set(t.vertices)) == len(t.vertices)


def is_loop(g: FiniteGraph, t: Trail) -> bool:
    inner = t.vertices[:-1]
    return (t.closed and len(t) >= 3 and is_trail(g, t)
            and len(set(inner)) == len(inner))


# distances

def bfs_distances(g: FiniteGraph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.p
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def shortest_distance(g: FiniteGraph, u: int, v: int) -> int:
    _check_vertex(g, u)
    _check_vertex(g, v)
    d = bfs_distances(g, u)[v]
    if d is None:
        raise Unreachable(f"no path from {u} to {v}")
    return d


def shortest_path(g: FiniteGraph, u: int, v: int) -> Trail:
    """BFS shortest path; among equal-length paths the first-discovered parents win,
    so lower-indexed vertices are preferred."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    parent: dict[int, int | None] = {u: None}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for w in g.adjacency[x]:
            if w not in parent:
                parent[w] = x
                queue.append(w)
    if v not in parent:
        raise Unreachable(f"no path from {u} to {v}")
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return Trail(tuple(reversed(out)))


def is_connected(g: FiniteGraph) -> bool:
    return all(d is not None for d in bfs_distances(g, 0))


def eccentricity_radius_diameter(g: FiniteGraph) -> tuple[list[int], int, int]:
    ecc = []
    for v in range(g.p):
        dist = bfs_distances(g, v)
        if any(d is None for d in dist):
            raise Disconnected("eccentricity needs a connected graph")
        ecc.append(max(dist))
    return ecc, min(ecc), max(ecc)


def spanning_tree(g: FiniteGraph) -> FiniteGraph:
    """BFS tree from vertex 0."""
    seen = {0}
    queue = deque([0])
    edges = []
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                edges.append((u, w))
                queue.append(w)
    if len(seen) != g.p:
        raise Disconnected("spanning tree needs a connected graph")
    return FiniteGraph.from_edges(g.p, edges)


def cyclomatic_number(g: FiniteGraph) -> int:
    """Edges outside a spanning tree: ``|B| - |B_T|``."""
    return g.q - spanning_tree(g).q


def is_acyclic(g: FiniteGraph) -> bool:
    parent = list(range(g.p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# Euler

def is_eulerian(g: FiniteGraph) -> bool:
    return is_connected(g) and all(d % 2 == 0 for d in g.degrees())


def eulerian_circuit(g: FiniteGraph) -> Trail:
    """Hierholzer's algorithm from vertex 0, always taking the smallest unused edge."""
    if not is_connected(g):
        raise NotEulerian("graph is disconnected")
    odd = [v for v, d in enumerate(g.degrees()) if d % 2]
    if odd:
        raise NotEulerian(f"vertices of odd degree: {odd}")
    remaining = [list(reversed(ns)) for ns in g.adjacency]
    used: set[tuple[int, int]] = set()
    stack = [0]
    circuit = []
    while stack:
        u = stack[-1]
        nbrs = remaining[u]
        while nbrs and (min(u, nbrs[-1]), max(u, nbrs[-1])) in used:
            nbrs.pop()
        if nbrs:
            w = nbrs.pop()
            used.add((min(u, w), max(u, w)))
            stack.append(w)
        else:
            circuit.append(stack.pop())
    return Trail(tuple(reversed(circuit)))


# Hamilton

@dataclass(frozen=True)
class HamiltonCriteria:
    dirac: bool
    ore: bool
    posa: bool


def hamiltonian_criteria(g: FiniteGraph) -> HamiltonCriteria:
    """Dirac, Ore and Posa sufficient conditions.

    Posa is taken in the form: for every j with 1 <= j < p/2 the number of
    vertices of degree at most j is less than j.
    """
    p = g.p
    if p < 3:
        raise FewerThanThreeVertices(f"criteria need p >= 3, got {p}")
    deg = g.degrees()
    dirac = all(2 * d >= p for d in deg)
    ore = all(
        deg[x] + deg[y] >= p
        for x in range(p) for y in range(x + 1, p)
        if not g.has_edge(x, y)
    )
    posa = all(
        sum(1 for d in deg if d <= j) < j
        for j in range(1, (p + 1) // 2)
    )
    return HamiltonCriteria(dirac, ore, posa)


def brute_force_hamiltonian(g: FiniteGraph) -> bool:
    """Exhaustive Hamiltonian-cycle search (bitmask dynamic programming)."""
    p = g.p
    if p < 3:
        raise FewerThanThreeVertices(f"Hamiltonicity needs p >= 3, got {p}")
    if p > BRUTE_FORCE_LIMIT:
        raise TooLargeForBruteForce(f"p = {p} exceeds {BRUTE_FORCE_LIMIT}")
    nbr_mask = [sum(1 << w for w in g.adjacency[v]) for v in range(p)]
    full = (1 << p) - 1
    # reach[mask] = set of end vertices of paths from 0 covering mask
    reach = [0] * (1 << p)
    reach[1] = 1
    for mask in range(1, full + 1):
        if not mask & 1 or not reach[mask]:
            continue
        ends = reach[mask]
        v = 0
        while ends:
            if ends & 1:
                free = nbr_mask[v] & ~mask
                w = 0
                while free:
                    if free & 1:
                        reach[mask | (1 << w)] |= 1 << w
                    free >>= 1
                    w += 1
            ends >>= 1
            v += 1
    return bool(reach[full] & nbr_mask[0])


# coloring

def greedy_coloring(g: FiniteGraph) -> dict[int, int]:
    """Ascending vertex order, smallest free color from 1."""
    colors: dict[int, int] = {}
    for v in range(g.p):
        taken = {colors[w] for w in g.adjacency[v] if w in colors}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def verify_coloring(g: FiniteGraph, coloring, palette_size: int) -> bool:
    """``coloring`` maps (or indexes) every vertex to a color in ``1..palette_size``."""
    try:
        cs = [coloring[v] for v in range(g.p)]
    except (KeyError, IndexError):
        return False
    if any(not 1 <= c <= palette_size for c in cs):
        return False
    return all(cs[u] != cs[v] for u, v in g.edges)


# named properties, shared with the family evaluators

class Criterion(enum.Enum):
    CONNECTED = "connected"
    EULERIAN = "eulerian"
    DIRAC = "dirac"
    ORE = "ore"
    POSA = "posa"


@dataclass(frozen=True)
class DegreesBoundedBy:
    k: int



def holds(g: FiniteGraph, prop) -> bool:
    """Truth of a named property on one graph.

    The Hamilton criteria count as false on graphs with fewer than three
    vertices, where they are not defined.
    """
    if isinstance(prop, DegreesBoundedBy):
        return g.max_degree() <= prop.k
    if prop is Criterion.CONNECTED:
        return is_connected(g)
    if prop is Criterion.EULERIAN:
        return is_eulerian(g)
    if g.p < 3:
        return False
    crit = hamiltonian_criteria(g)
    return {Criterion.DIRAC: crit.dirac, Criterion.ORE: crit.ore, Criterion.POSA: crit.posa}[prop]


def _check_vertex(g: FiniteGraph, v: int) -> None:
    if not 0 <= v < g.p:
        raise IndexError(f"vertex {v} not in 0..{g.p - 1}")


def components(g: FiniteGraph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in range(g.p):
        if s in seen:
            continue
        comp = [v for v, d in enumerate(bfs_distances(g, s)) if d is not None]
        seen.update(comp)
        out.append(comp)
    return out


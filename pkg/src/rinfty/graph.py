"""Finite simple graphs, domination, coherent components and the quotient graph.

Conventions: vertices are 0..n-1, coherent classes are ordered by their
smallest member and each class lists its vertices ascending.  A loop in the
quotient graph is stored as a one-element frozenset.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import DomainError, InputError, ResourceError

DEFAULT_AUT_LIMIT = 10


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset
    vertex_labels: tuple = ()

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InputError("negative vertex count")
        norm = set()
        for e in self.edges:
            a, b = tuple(e) if len(e) == 2 else (next(iter(e)),) * 2
            if a == b:
                raise InputError("self-loop at vertex %d" % a)
            if not (0 <= a < n and 0 <= b < n):
                raise InputError("edge (%d, %d) out of range" % (a, b))
            norm.add(frozenset((a, b)))
        object.__setattr__(self, "edges", frozenset(norm))
        labels = tuple(self.vertex_labels) or tuple("v%d" % (i + 1) for i in range(n))
        if len(labels) != n:
            raise InputError("expected %d labels, got %d" % (n, len(labels)))
        if len(set(labels)) != n:
            raise InputError("duplicate vertex label")
        object.__setattr__(self, "vertex_labels", labels)
        adj = [set() for _ in range(n)]
        for e in norm:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] = ()) -> "Graph":
        edges = list(edges)
        for e in edges:
            if len(e) == 2 and e[0] == e[1]:
                raise InputError("self-loop at vertex %d" % e[0])
        return cls(n, frozenset(frozenset(e) for e in edges), tuple(labels))

    def adjacent(self, v: int, w: int) -> bool:
        return w in self._adj[v]

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def sorted_edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def non_edges(self) -> list:
        return [(v, w) for v, w in combinations(range(self.vertex_count), 2)
                if not self.adjacent(v, w)]

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = {v: i for i, v in enumerate(vertices)}
        es = [(idx[a], idx[b]) for a, b in self.sorted_edges() if a in idx and b in idx]
        return Graph.from_edges(len(vertices), es, [self.vertex_labels[v] for v in vertices])


def complete_graph(r: int) -> Graph:
    return Graph.from_edges(r, combinations(range(r), 2))


def path_graph(r: int) -> Graph:
    return Graph.from_edges(r, [(i, i + 1) for i in range(r - 1)])


def cycle_graph(r: int) -> Graph:
    if r < 3:
        raise InputError("a cycle graph needs at least 3 vertices")
    return Graph.from_edges(r, [(i, (i + 1) % r) for i in range(r)])


def edgeless_graph(r: int) -> Graph:
    return Graph.from_edges(r, [])


def _check_vertex(g: Graph, v: int) -> None:
    if not (isinstance(v, int) and 0 <= v < g.vertex_count):
        raise InputError("vertex %r out of range for %d vertices" % (v, g.vertex_count))


def open_neighborhood(g: Graph, v: int) -> frozenset:
    _check_vertex(g, v)
    return g.neighbors(v)


def closed_neighborhood(g: Graph, v: int) -> frozenset:
    _check_vertex(g, v)
    return g.neighbors(v) | {v}


def dominates(g: Graph, v: int, w: int) -> bool:
    """True iff the open neighbourhood of v lies in the closed neighbourhood of w."""
    return open_neighborhood(g, v) <= closed_neighborhood(g, w)


def equivalent(g: Graph, v: int, w: int) -> bool:
    return dominates(g, v, w) and dominates(g, w, v)


@dataclass(frozen=True)
class CoherentPartition:
    classes: tuple
    class_of: tuple

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class QuotientGraph:
    partition: CoherentPartition
    qedges: frozenset
    sizes: tuple

    @property
    def classes(self):
        return self.partition.classes

    def has_loop(self, lam: int) -> bool:
        return frozenset((lam,)) in self.qedges

    def adjacent(self, lam: int, mu: int) -> bool:
        return frozenset((lam, mu)) in self.qedges

    def sorted_qedges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.qedges)


def coherent_components(g: Graph) -> CoherentPartition:
    n = g.vertex_count
    class_of = [-1] * n
    classes = []
    for v in range(n):
        if class_of[v] >= 0:
            continue
        members = [w for w in range(v, n) if class_of[w] < 0 and equivalent(g, v, w)]
        for w in members:
            class_of[w] = len(classes)
        classes.append(tuple(members))
    return CoherentPartition(tuple(classes), tuple(class_of))


def quotient_graph(g: Graph) -> QuotientGraph:
    part = coherent_components(g)
    qedges = set()
    for e in g.edges:
        a, b = tuple(e)
        qedges.add(frozenset((part.class_of[a], part.class_of[b])))
    return QuotientGraph(part, frozenset(qedges), tuple(len(c) for c in part.classes))


def _qedge_pairs(q: QuotientGraph) -> list:
    if not q.qedges:
        raise DomainError("xi undefined for empty graph")
    out = []
    for e in q.sorted_qedges():
        lam, mu = (e[0], e[0]) if len(e) == 1 else e
        out.append((lam, mu))
    return out


def edge_cost_lower(q: QuotientGraph, lam: int, mu: int) -> int:
    return q.sizes[lam] + q.sizes[mu]


def edge_cost_upper(q: QuotientGraph, lam: int, mu: int) -> int:
    a, b = q.sizes[lam], q.sizes[mu]
    if lam == mu:
        return 2 * a
    return max(2 * a + b, a + 2 * b)


def xi(g: Graph) -> int:
    q = quotient_graph(g)
    return min(edge_cost_lower(q, a, b) for a, b in _qedge_pairs(q))


def Xi(g: Graph) -> int:
    q = quotient_graph(g)
    return min(edge_cost_upper(q, a, b) for a, b in _qedge_pairs(q))


def is_transposition_free(g: Graph) -> bool:
    return all(len(c) == 1 for c in coherent_components(g).classes)


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return all(frozenset((perm[a], perm[b])) in g.edges for a, b in map(tuple, g.edges))


def graph_automorphisms(g: Graph, limit: int = DEFAULT_AUT_LIMIT) -> list:
    """All edge-preserving vertex permutations, in lexicographic order.

    Backtracking assigns images vertex by vertex, pruning on degree and on
    adjacency to the already placed vertices.
    """
    n = g.vertex_count
    if n > limit:
        raise ResourceError("automorphism enumeration limited to %d vertices, got %d" % (limit, n))
    deg = [len(g.neighbors(v)) for v in range(n)]
    image = [-1] * n
    used = [False] * n
    out = []

    def extend(v):
        if v == n:
            out.append(tuple(image))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if any(g.adjacent(u, v) != g.adjacent(image[u], w) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        image[v] = -1

    extend(0)
    return out


def quotient_automorphisms(q: QuotientGraph) -> list:
    """Bijections of the classes preserving quotient edges, loops and sizes."""
    k = len(q.sizes)
    out = []
    for perm in permutations(range(k)):
        if any(q.sizes[perm[i]] != q.sizes[i] for i in range(k)):
            continue
        if all(frozenset(perm[x] for x in e) in q.qedges for e in q.qedges):
            out.append(tuple(perm))
    return out


def is_quotient_automorphism(q: QuotientGraph, psi: Sequence[int]) -> bool:
    k = len(q.sizes)
    if sorted(psi) != list(range(k)):
        return False
    if any(q.sizes[psi[i]] != q.sizes[i] for i in range(k)):
        return False
    return all(frozenset(psi[x] for x in e) in q.qedges for e in q.qedges)


def section_r(q: QuotientGraph, psi: Sequence[int]) -> tuple:
    """Lift a quotient automorphism to a vertex permutation, matching i-th members."""
    psi = tuple(psi)
    k = len(q.sizes)
    if sorted(psi) != list(range(k)):
        raise InputError("psi is not a permutation of the %d classes" % k)
    if any(q.sizes[psi[i]] != q.sizes[i] for i in range(k)):
        raise InputError("psi does not preserve class sizes")
    n = sum(q.sizes)
    perm = [0] * n
    for lam, members in enumerate(q.classes):
        for a, b in zip(members, q.classes[psi[lam]]):
            perm[a] = b
    return tuple(perm)


def project_to_quotient(q: QuotientGraph, perm: Sequence[int]) -> tuple:
    """The class permutation induced by a graph automorphism."""
    cls = q.partition.class_of
    return tuple(cls[perm[members[0]]] for members in q.classes)


def compose(p: Sequence[int], r: Sequence[int]) -> tuple:
    """(p o r)(x) = p[r[x]]."""
    return tuple(p[x] for x in r)


def inverse(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles_of(perm: Sequence[int]) -> list:
    """Disjoint cycles including fixed points, each starting at its least element."""
    seen = set()
    out = []
    for s in range(len(perm)):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        x = perm[s]
        while x != s:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def is_connected_set(g: Graph, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    if not vs:
        return False
    start = next(iter(vs))
    stack, seen = [start], {start}
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == vs

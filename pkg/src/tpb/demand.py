"""Loopless bipartite demand multigraphs and the lifting calculus.

A demand graph lives on the vertex classes of a complete bipartite base
graph K_{a,b}: every edge is a terminal pair that must be realized as a
path in the base graph.  Each physical edge carries a stable id plus a
lineage label.  Lifting an edge to a vertex replaces it by a two-edge
detour that inherits the label, so the edges sharing a label always form
a walk between the two original terminals.  Once some sequence of
liftings produces a simple class-crossing subgraph, every label class
contains an actual path between its terminals; `extract_resolution`
reads those paths off, and `verify_resolution` is the independent
checker for the result.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import DomainError, NotFoundError, PreconditionError, StructuralError

SIDE_A = "A"
SIDE_B = "B"


class V(NamedTuple):
    """A base-graph vertex: class side plus position within the class."""

    side: str
    index: int

    def flip(self) -> "V":
        return V(SIDE_B if self.side == SIDE_A else SIDE_A, self.index)


def A(i: int) -> V:
    return V(SIDE_A, i)


def B(j: int) -> V:
    return V(SIDE_B, j)


class Edge(NamedTuple):
    """A physical demand edge.  `label` is the lineage tag liftings preserve."""

    id: int
    label: int
    u: V
    v: V
    padding: bool = False

    def pair(self) -> tuple[V, V]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    def other(self, w: V) -> V:
        return self.v if w == self.u else self.u

    def touches(self, w: V) -> bool:
        return w == self.u or w == self.v


class Path(NamedTuple):
    """A simple alternating path in the base graph, as a vertex sequence."""

    vertices: tuple[V, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def endpoints(self) -> frozenset[V]:
        return frozenset((self.vertices[0], self.vertices[-1]))


@dataclass
class Resolution:
    """Routes mapping each original demand-edge id to its path."""

    routes: dict[int, Path]


@dataclass(frozen=True)
class DemandGraph:
    """Immutable multigraph on the vertex classes of K_{a,b}.

    `edges` maps edge id to Edge and is never mutated after construction;
    all transforming operations return new graphs.  Demand edges cross the
    classes initially, but liftings may create same-side edges, so none of
    the accessors assume bipartiteness.
    """

    a: int
    b: int
    edges: dict[int, Edge]
    next_fresh_id: int

    @staticmethod
    def empty(a: int, b: int) -> "DemandGraph":
        if a < 1 or b < 1:
            raise DomainError("both classes need at least one vertex")
        return DemandGraph(a, b, {}, 0)

    @staticmethod
    def from_pairs(a: int, b: int, pairs: Iterable[tuple[V, V]]) -> "DemandGraph":
        g = DemandGraph.empty(a, b)
        return g.with_edges(pairs)

    def with_edges(self, pairs: Iterable[tuple[V, V]], padding: bool = False) -> "DemandGraph":
        """New graph with extra edges appended; ids and labels are fresh."""
        edges = dict(self.edges)
        nid = self.next_fresh_id
        for u, v in pairs:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise PreconditionError(f"loop at {u} is not a demand edge")
            edges[nid] = Edge(nid, nid, u, v, padding)
            nid += 1
        return DemandGraph(self.a, self.b, edges, nid)

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check_vertex(self, v: V) -> None:
        if v.side == SIDE_A:
            if not 0 <= v.index < self.a:
                raise DomainError(f"{v} outside class A of size {self.a}")
        elif v.side == SIDE_B:
            if not 0 <= v.index < self.b:
                raise DomainError(f"{v} outside class B of size {self.b}")
        else:
            raise DomainError(f"unknown side {v.side!r}")

    def vertices(self) -> list[V]:
        return [A(i) for i in range(self.a)] + [B(j) for j in range(self.b)]

    def degree(self, v: V) -> int:
        self._check_vertex(v)
        return sum(1 for e in self.edges.values() if e.touches(v))

    def degree_map(self) -> dict[V, int]:
        degs = {v: 0 for v in self.vertices()}
        for e in self.edges.values():
            degs[e.u] += 1
            degs[e.v] += 1
        return degs

    def multiplicity(self, u: V, v: V) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        key = (u, v) if u <= v else (v, u)
        return sum(1 for e in self.edges.values() if e.pair() == key)

    def neighbors(self, v: V) -> set[V]:
        self._check_vertex(v)
        return {e.other(v) for e in self.edges.values() if e.touches(v)}

    def max_degree(self) -> int:
        degs = Counter()
        for e in self.edges.values():
            degs[e.u] += 1
            degs[e.v] += 1
        return max(degs.values(), default=0)

    def max_multiplicity(self) -> int:
        pairs = Counter(e.pair() for e in self.edges.values())
        return max(pairs.values(), default=0)

    def induced(self, keep: Iterable[V]) -> "DemandGraph":
        """Subgraph on the given vertices; ids, labels and counter survive."""
        kept = set(keep)
        for v in kept:
            self._check_vertex(v)
        edges = {eid: e for eid, e in self.edges.items() if e.u in kept and e.v in kept}
        return DemandGraph(self.a, self.b, edges, self.next_fresh_id)

    def is_bipartite_demand(self) -> bool:
        return all(e.u.side != e.v.side for e in self.edges.values())

    def is_simple_base(self) -> bool:
        """True when this graph is a simple subgraph of the base graph."""
        seen = set()
        for e in self.edges.values():
            if e.u.side == e.v.side:
                return False
            key = e.pair()
            if key in seen:
                return False
            seen.add(key)
        return True

    def transpose(self) -> "DemandGraph":
        edges = {
            eid: Edge(e.id, e.label, e.u.flip(), e.v.flip(), e.padding)
            for eid, e in self.edges.items()
        }
        return DemandGraph(self.b, self.a, edges, self.next_fresh_id)


# -- lifting operations ---------------------------------------------------


def lift(D: DemandGraph, edge_id: int, z: V) -> DemandGraph:
    """Replace edge xy by the detour xz, zy; identity when z is an endpoint."""
    e = D.edges.get(edge_id)
    if e is None:
        raise NotFoundError(f"edge id {edge_id} not in graph")
    D._check_vertex(z)
    if z == e.u or z == e.v:
        return D
    edges = dict(D.edges)
    del edges[edge_id]
    i = D.next_fresh_id
    edges[i] = Edge(i, e.label, e.u, z, e.padding)
    edges[i + 1] = Edge(i + 1, e.label, z, e.v, e.padding)
    return DemandGraph(D.a, D.b, edges, i + 2)


def edge_lift(D: DemandGraph, edge_id: int, x: V, y: V) -> DemandGraph:
    """Replace class-crossing edge uv by the three edges xy, uy, xv.

    Equivalent to lifting uv to x and the x-side half on to y, but keeps
    the intermediate graph bipartite.  Requires x in class A, y in class B
    and all four vertices distinct.
    """
    e = D.edges.get(edge_id)
    if e is None:
        raise NotFoundError(f"edge id {edge_id} not in graph")
    D._check_vertex(x)
    D._check_vertex(y)
    if x.side != SIDE_A or y.side != SIDE_B:
        raise PreconditionError("edge-lift target must pair a class-A with a class-B vertex")
    if e.u.side == SIDE_A and e.v.side == SIDE_B:
        u, v = e.u, e.v
    elif e.u.side == SIDE_B and e.v.side == SIDE_A:
        u, v = e.v, e.u
    else:
        raise PreconditionError("edge-lift applies to class-crossing edges only")
    if len({u, v, x, y}) != 4:
        raise PreconditionError("edge-lift needs four distinct vertices")
    edges = dict(D.edges)
    del edges[edge_id]
    i = D.next_fresh_id
    edges[i] = Edge(i, e.label, x, y, e.padding)
    edges[i + 1] = Edge(i + 1, e.label, u, y, e.padding)
    edges[i + 2] = Edge(i + 2, e.label, x, v, e.padding)
    return DemandGraph(D.a, D.b, edges, i + 3)


# -- reading paths back out ------------------------------------------------


def _euler_trail(edges: list[Edge], s: V, t: V) -> list[V]:
    """Order a label class into the walk it forms from s to t."""
    adj: dict[V, list[tuple[int, V]]] = {}
    for k, e in enumerate(edges):
        adj.setdefault(e.u, []).append((k, e.v))
        adj.setdefault(e.v, []).append((k, e.u))
    for lst in adj.values():
        lst.sort(key=lambda kv: (kv[1], kv[0]))
    if s not in adj:
        raise StructuralError("label class misses its terminal")
    used = [False] * len(edges)
    ptr = {v: 0 for v in adj}
    stack = [s]
    out: list[V] = []
    while stack:
        w = stack[-1]
        lst = adj[w]
        i = ptr[w]
        while i < len(lst) and used[lst[i][0]]:
            i += 1
        if i == len(lst):
            ptr[w] = i
            out.append(stack.pop())
        else:
            used[lst[i][0]] = True
            ptr[w] = i + 1
            stack.append(lst[i][1])
    out.reverse()
    if len(out) != len(edges) + 1 or out[0] != s or out[-1] != t:
        raise StructuralError("label class does not form a walk between its terminals")
    return out


def _shortcut_walk(walk: list[V]) -> list[V]:
    """Drop cycles from a walk, closing each one as soon as it appears."""
    out: list[V] = []
    pos: dict[V, int] = {}
    for w in walk:
        if w in pos:
            cut = pos[w]
            for dropped in out[cut + 1:]:
                del pos[dropped]
            del out[cut + 1:]
        else:
            pos[w] = len(out)
            out.append(w)
    return out


def extract_resolution(final: DemandGraph, original: DemandGraph) -> Resolution:
    """Recover one path per original edge from a fully lifted simple graph.

    `final` must be a simple class-crossing graph reached from `original`
    (possibly plus auxiliary padding demands) by liftings.  Labels that do
    not belong to `original` are ignored.
    """
    if final.a != original.a or final.b != original.b:
        raise StructuralError("final and original graphs live on different bases")
    if not final.is_simple_base():
        raise StructuralError("extraction requires a simple class-crossing graph")
    seen = set()
    for e in original.edges.values():
        if e.label in seen:
            raise StructuralError("original graph carries duplicate labels")
        seen.add(e.label)
    classes: dict[int, list[Edge]] = {}
    for e in final.edges.values():
        classes.setdefault(e.label, []).append(e)
    routes: dict[int, Path] = {}
    for eid in sorted(original.edges):
        e0 = original.edges[eid]
        cls = classes.get(e0.label)
        if not cls:
            raise StructuralError(f"label {e0.label} has no edges left to trace")
        walk = _euler_trail(sorted(cls, key=lambda e: e.id), e0.u, e0.v)
        routes[eid] = Path(tuple(_shortcut_walk(walk)))
    return Resolution(routes)


def verify_resolution(D: DemandGraph, res: Resolution) -> list[str]:
    """Check a claimed resolution; returns violations, empty means valid."""
    problems: list[str] = []
    for eid in sorted(D.edges):
        if eid not in res.routes:
            problems.append(f"edge {eid}: no route")
    sound: list[int] = []
    for eid in sorted(res.routes):
        if eid not in D.edges:
            problems.append(f"route {eid}: unknown demand edge")
            continue
        e = D.edges[eid]
        vs = res.routes[eid].vertices
        if len(vs) < 2:
            problems.append(f"route {eid}: needs at least one edge")
            continue
        ok = True
        for w in vs:
            try:
                D._check_vertex(w)
            except DomainError:
                problems.append(f"route {eid}: vertex {w} outside base graph")
                ok = False
                break
        if not ok:
            continue
        if any(x.side == y.side for x, y in zip(vs, vs[1:])):
            problems.append(f"route {eid}: consecutive vertices do not alternate classes")
            ok = False
        if len(set(vs)) != len(vs):
            problems.append(f"route {eid}: repeats a vertex")
            ok = False
        if {vs[0], vs[-1]} != {e.u, e.v}:
            problems.append(f"route {eid}: endpoints differ from the demand edge")
            ok = False
        if ok:
            sound.append(eid)
    usage: dict[tuple[V, V], int] = {}
    for eid in sound:
        for x, y in zip(res.routes[eid].vertices, res.routes[eid].vertices[1:]):
            key = (x, y) if x <= y else (y, x)
            if key in usage and usage[key] != eid:
                problems.append(
                    f"base edge {key[0]}-{key[1]} used by routes {usage[key]} and {eid}"
                )
            else:
                usage[key] = eid
    return problems


def transpose_resolution(res: Resolution) -> Resolution:
    """Mirror a resolution through the class swap."""
    return Resolution(
        {
            eid: Path(tuple(w.flip() for w in p.vertices))
            for eid, p in res.routes.items()
        }
    )

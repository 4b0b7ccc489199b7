"""Labeled graphs defining generalised Baumslag-Solitar (GBS) groups.

A GBS graph is a finite connected directed multigraph.  Every positive edge
``e`` carries two nonzero integer labels: ``a`` at its source (``A(e)``) and
``omega`` at its target (``Omega(e)``).  Inverse edges are never stored; an
oriented edge is the pair ``(edge id, forward)`` and reading it backwards
swaps the two labels.

All objects here are immutable and all iteration follows declaration order,
so every procedure built on top of them is deterministic.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple

from sympy import primefactors

__all__ = [
    "Edge",
    "OrientedEdge",
    "GbsGraph",
    "Plateau",
    "GraphValidationError",
    "validate",
    "is_reduced",
    "sign_normalize",
    "betti_number",
    "find_proper_plateau",
    "graph_from_json",
    "graph_to_json",
]


class GraphValidationError(ValueError):
    """Raised by :func:`validate`; ``violations`` lists every problem found."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    a: int
    omega: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class OrientedEdge(NamedTuple):
    """An edge read in a direction; ``forward=False`` is the inverse edge."""

    edge: str
    forward: bool = True

    def inverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.forward)


@dataclass(frozen=True)
class GbsGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_index", {e.id: e for e in self.edges})

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple]) -> "GbsGraph":
        """Shorthand: ``edges`` are ``(id, source, target, a, omega)`` tuples."""
        return cls(tuple(vertices), tuple(Edge(*map_edge(t)) for t in edges))

    # -- lookup -----------------------------------------------------------
    def edge(self, edge_id: str) -> Edge:
        try:
            return self._index[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge {edge_id!r}") from None

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._index

    def origin(self, oe: OrientedEdge) -> str:
        e = self.edge(oe.edge)
        return e.source if oe.forward else e.target

    def terminus(self, oe: OrientedEdge) -> str:
        e = self.edge(oe.edge)
        return e.target if oe.forward else e.source

    def A(self, oe: OrientedEdge) -> int:
        """Label of ``oe`` at its origin."""
        e = self.edge(oe.edge)
        return e.a if oe.forward else e.omega

    def Omega(self, oe: OrientedEdge) -> int:
        """Label of ``oe`` at its terminus."""
        e = self.edge(oe.edge)
        return e.omega if oe.forward else e.a

    def outgoing(self, v: str) -> list[OrientedEdge]:
        """Oriented edges starting at ``v``; a loop at ``v`` appears twice."""
        out = []
        for e in self.edges:
            if e.source == v:
                out.append(OrientedEdge(e.id, True))
            if e.target == v:
                out.append(OrientedEdge(e.id, False))
        return out

    def degree(self, v: str) -> int:
        return len(self.outgoing(v))

    def loops_at(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.is_loop and e.source == v]

    def labels(self) -> list[int]:
        return [x for e in self.edges for x in (e.a, e.omega)]

    # -- functional updates ------------------------------------------------
    def with_edge(self, edge: Edge) -> "GbsGraph":
        return GbsGraph(self.vertices, tuple(edge if e.id == edge.id else e for e in self.edges))

    def with_label(self, oe: OrientedEdge, value: int) -> "GbsGraph":
        """Replace the label of ``oe`` at its origin."""
        e = self.edge(oe.edge)
        e = replace(e, a=value) if oe.forward else replace(e, omega=value)
        return self.with_edge(e)

    def relabeled(self, vertex_map: dict[str, str] | None = None,
                  edge_map: dict[str, str] | None = None) -> "GbsGraph":
        vm = vertex_map or {}
        em = edge_map or {}
        return GbsGraph(
            tuple(vm.get(v, v) for v in self.vertices),
            tuple(Edge(em.get(e.id, e.id), vm.get(e.source, e.source), vm.get(e.target, e.target),
                       e.a, e.omega) for e in self.edges),
        )

    def same_as(self, other: "GbsGraph") -> bool:
        """Equality ignoring declaration order."""
        return (set(self.vertices) == set(other.vertices)
                and set(self.edges) == set(other.edges))

    def __str__(self) -> str:
        body = ", ".join(f"{e.id}:{e.source}->{e.target}({e.a},{e.omega})" for e in self.edges)
        return f"GbsGraph[{', '.join(self.vertices)} | {body}]"


def map_edge(t):
    eid, s, tgt, a, w = t
    return str(eid), str(s), str(tgt), int(a), int(w)


@dataclass(frozen=True)
class Plateau:
    prime: int
    vertices: tuple[str, ...]
    edges: tuple[str, ...]


# ---------------------------------------------------------------------------
# validation and serialization

def validate(raw) -> GbsGraph:
    """Check a graph given as a :class:`GbsGraph` or as a JSON-style dict.

    Raises :class:`GraphValidationError` listing every violation (dangling
    endpoint, zero label, disconnected graph, duplicate identifiers).
    """
    violations: list[str] = []
    if isinstance(raw, GbsGraph):
        vertices = list(raw.vertices)
        edges = list(raw.edges)
    else:
        vertices = [str(v) for v in raw.get("vertices", [])]
        edges = []
        for k, rec in enumerate(raw.get("edges", [])):
            try:
                edges.append(Edge(str(rec["id"]), str(rec["from"]), str(rec["to"]),
                                  int(rec["a"]), int(rec["omega"])))
            except (KeyError, TypeError, ValueError) as exc:
                violations.append(f"malformed edge record #{k}: {exc}")

    if not vertices:
        violations.append("empty graph: no vertices")
    if len(set(vertices)) != len(vertices):
        violations.append("duplicate vertex identifier")
    if len({e.id for e in edges}) != len(edges):
        violations.append("duplicate edge identifier")
    vset = set(vertices)
    for e in edges:
        for end in (e.source, e.target):
            if end not in vset:
                violations.append(f"dangling endpoint: edge {e.id} refers to unknown vertex {end}")
        if e.a == 0 or e.omega == 0:
            violations.append(f"zero label on edge {e.id}")

    if vertices and not violations:
        g = GbsGraph(tuple(vertices), tuple(edges))
        if len(_component(g, vertices[0])) != len(vertices):
            violations.append("disconnected graph")
    if violations:
        raise GraphValidationError(violations)
    return GbsGraph(tuple(vertices), tuple(edges))


def graph_to_dict(g: GbsGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "from": e.source, "to": e.target,
                   "a": str(e.a), "omega": str(e.omega)} for e in g.edges],
    }


def graph_to_json(g: GbsGraph) -> str:
    return json.dumps(graph_to_dict(g))


def graph_from_json(text: str) -> GbsGraph:
    return validate(json.loads(text))


# ---------------------------------------------------------------------------
# structural queries

def _neighbours(g: GbsGraph, v: str) -> Iterator[tuple[OrientedEdge, str]]:
    for oe in g.outgoing(v):
        yield oe, g.terminus(oe)


def _component(g: GbsGraph, start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for _, w in _neighbours(g, v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def bfs_tree(g: GbsGraph, root: str | None = None) -> tuple[list[str], dict[str, OrientedEdge]]:
    """Breadth-first spanning tree in declaration order.

    Returns the visiting order and, for every non-root vertex, the oriented
    edge from its parent to it.
    """
    root = g.vertices[0] if root is None else root
    order = [root]
    parent: dict[str, OrientedEdge] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for oe, w in _neighbours(g, v):
            if w not in seen:
                seen.add(w)
                parent[w] = oe
                order.append(w)
                queue.append(w)
    return order, parent


def is_reduced(g: GbsGraph) -> bool:
    return all(abs(e.a) != 1 and abs(e.omega) != 1 for e in g.edges if not e.is_loop)


def betti_number(g: GbsGraph) -> int:
    return len(g.edges) - len(g.vertices) + 1


def _flip_vertex(edges: dict[str, Edge], v: str) -> None:
    for eid, e in edges.items():
        a = -e.a if e.source == v else e.a
        w = -e.omega if e.target == v else e.omega
        edges[eid] = replace(e, a=a, omega=w)


def _flip_edge(edges: dict[str, Edge], eid: str) -> None:
    e = edges[eid]
    edges[eid] = replace(e, a=-e.a, omega=-e.omega)


def sign_normalize(g: GbsGraph) -> GbsGraph:
    """Greedy sign normalization by the two admissible sign changes.

    Tree edges of the declaration-order BFS tree are made positive first
    (edge flip for the parent end, vertex flip for the child end).  Every
    remaining edge is then flipped if that lowers its number of negative
    labels, and a mixed-sign edge is flipped so that its source label is
    positive.  The result is idempotent.
    """
    edges = {e.id: e for e in g.edges}
    order, parent = bfs_tree(g)
    tree_ids = {oe.edge for oe in parent.values()}
    for child in order[1:]:
        oe = parent[child]
        e = edges[oe.edge]
        parent_label = e.a if oe.forward else e.omega
        if parent_label < 0:
            _flip_edge(edges, oe.edge)
            e = edges[oe.edge]
        child_label = e.omega if oe.forward else e.a
        if child_label < 0:
            _flip_vertex(edges, child)
    for e in g.edges:
        if e.id in tree_ids:
            continue
        cur = edges[e.id]
        if (cur.a < 0 and cur.omega < 0) or (cur.a < 0 < cur.omega):
            _flip_edge(edges, e.id)
    return GbsGraph(g.vertices, tuple(edges[e.id] for e in g.edges))


def _plateau_closure(g: GbsGraph, seed: str, p: int) -> Plateau | None:
    verts = [seed]
    vset = {seed}
    inside: list[str] = []
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for oe in g.outgoing(v):
            if g.A(oe) % p == 0:
                continue
            # the edge has to lie in P, so its other label must not be divisible either
            if g.Omega(oe) % p == 0:
                return None
            if oe.edge not in inside:
                inside.append(oe.edge)
            w = g.terminus(oe)
            if w not in vset:
                vset.add(w)
                verts.append(w)
                queue.append(w)
    order = {e.id: i for i, e in enumerate(g.edges)}
    return Plateau(p, tuple(v for v in g.vertices if v in vset),
                   tuple(sorted(inside, key=order.__getitem__)))


def find_proper_plateau(g: GbsGraph) -> Plateau | None:
    """First proper plateau over (prime, seed vertex) in ascending order.

    For a fixed prime the plateau containing a given vertex, if any, is the
    closure of that vertex under edges whose origin label is not divisible
    by the prime.
    """
    primes = sorted({p for x in g.labels() for p in primefactors(abs(x))})
    for p in primes:
        for seed in g.vertices:
            pl = _plateau_closure(g, seed, p)
            if pl is None:
                continue
            if len(pl.vertices) < len(g.vertices) or len(pl.edges) < len(g.edges):
                return pl
    return None


def is_plateau(g: GbsGraph, pl: Plateau) -> bool:
    """Direct check of the plateau condition (used as a test oracle)."""
    vs, es = set(pl.vertices), set(pl.edges)
    if not vs:
        return False
    for v in vs:
        for oe in g.outgoing(v):
            if (g.A(oe) % pl.prime == 0) == (oe.edge in es):
                return False
    for eid in es:
        e = g.edge(eid)
        if e.source not in vs or e.target not in vs:
            return False
    sub = GbsGraph(tuple(v for v in g.vertices if v in vs), tuple(e for e in g.edges if e.id in es))
    return len(_component(sub, sub.vertices[0])) == len(vs)

"""Deformation moves on GBS graphs.

Every move here maps a GBS graph to another graph defining an isomorphic
group.  Collapse and expansion are the elementary deformations; slides,
induction moves and the A-moves relate reduced graphs in a common
deformation space.

Edge *ends* are written as oriented edges: the end of edge ``e`` at its
source is ``OrientedEdge(e, True)`` and the end at its target is
``OrientedEdge(e, False)``.  The label of an end is ``g.A(end)``.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, replace
from typing import Union

from sympy import divisors

from .graph import Edge, GbsGraph, OrientedEdge, is_reduced

__all__ = [
    "IllegalMove",
    "Collapse",
    "Expansion",
    "SlideOverLoop",
    "SlideOverEdge",
    "Induction",
    "AMove",
    "AInverse",
    "Move",
    "apply",
    "apply_all",
    "legal_moves",
    "random_deform",
    "induction_via_deformations",
    "moves_to_jsonl",
    "moves_from_jsonl",
]


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Collapse:
    edge: str


@dataclass(frozen=True)
class Expansion:
    """Split ``vertex``: the listed ends move to a new vertex joined to
    ``vertex`` by a new edge labelled ``(1, factor)``; moved labels are
    divided by ``factor``."""

    vertex: str
    factor: int
    ends: tuple[OrientedEdge, ...]
    new_vertex: str | None = None
    new_edge: str | None = None


@dataclass(frozen=True)
class SlideOverLoop:
    """Slide ``end`` around ``loop`` ``count`` times (negative: backwards)."""

    end: OrientedEdge
    loop: str
    count: int


@dataclass(frozen=True)
class SlideOverEdge:
    """Slide ``end`` along the non-loop oriented edge ``over``."""

    end: OrientedEdge
    over: OrientedEdge


@dataclass(frozen=True)
class Induction:
    """Multiply (``inverse``: divide) every other label at the vertex of
    ``loop`` by ``factor``; ``loop`` needs a label 1 and ``factor`` must
    divide its other label."""

    loop: str
    factor: int
    inverse: bool = False


@dataclass(frozen=True)
class AMove:
    """Pull the oriented loop ``loop`` with labels ``(k, k*M)`` off its vertex
    onto a new vertex carrying the loop ``(1, M)``, attached by an edge
    ``(factor, k)``; ``factor`` must divide ``M``."""

    loop: OrientedEdge
    factor: int
    new_vertex: str | None = None
    new_edge: str | None = None


@dataclass(frozen=True)
class AInverse:
    """Inverse of :class:`AMove`: remove ``edge`` and its degree-3 endpoint."""

    edge: str


Move = Union[Collapse, Expansion, SlideOverLoop, SlideOverEdge, Induction, AMove, AInverse]


# ---------------------------------------------------------------------------
# helpers

def _fresh(name: str, taken) -> str:
    if name not in taken:
        return name
    i = 1
    while f"{name}{i}" in taken:
        i += 1
    return f"{name}{i}"


def _set_end(e: Edge, forward: bool, vertex: str, label: int) -> Edge:
    if forward:
        return replace(e, source=vertex, a=label)
    return replace(e, target=vertex, omega=label)


def _scale_ends_at(g: GbsGraph, v: str, skip: set[str], factor: int, divide: bool = False) -> GbsGraph:
    edges = []
    for e in g.edges:
        if e.id not in skip:
            a, w = e.a, e.omega
            if e.source == v:
                a = a // factor if divide else a * factor
            if e.target == v:
                w = w // factor if divide else w * factor
            e = replace(e, a=a, omega=w)
        edges.append(e)
    return GbsGraph(g.vertices, tuple(edges))


def _require(cond: bool, msg: str):
    if not cond:
        raise IllegalMove(msg)


def _check_end(g: GbsGraph, oe: OrientedEdge):
    _require(g.has_edge(oe.edge), f"unknown edge {oe.edge!r}")


def _one_end(g: GbsGraph, loop: Edge) -> OrientedEdge | None:
    """Orientation of ``loop`` whose origin label is 1, if any."""
    if loop.a == 1:
        return OrientedEdge(loop.id, True)
    if loop.omega == 1:
        return OrientedEdge(loop.id, False)
    return None


# ---------------------------------------------------------------------------
# individual moves

def _collapse(g: GbsGraph, mv: Collapse) -> GbsGraph:
    _require(g.has_edge(mv.edge), f"unknown edge {mv.edge!r}")
    e = g.edge(mv.edge)
    _require(not e.is_loop, "collapse needs a non-loop edge")
    if abs(e.a) == 1:
        gone, keep, factor = e.source, e.target, e.a * e.omega
    elif abs(e.omega) == 1:
        gone, keep, factor = e.target, e.source, e.a * e.omega
    else:
        raise IllegalMove("collapse needs a label +-1 on the edge")
    edges = []
    for f in g.edges:
        if f.id == e.id:
            continue
        if f.source == gone:
            f = replace(f, source=keep, a=f.a * factor)
        if f.target == gone:
            f = replace(f, target=keep, omega=f.omega * factor)
        edges.append(f)
    return GbsGraph(tuple(v for v in g.vertices if v != gone), tuple(edges))


def _expansion(g: GbsGraph, mv: Expansion) -> GbsGraph:
    _require(mv.vertex in g.vertices, f"unknown vertex {mv.vertex!r}")
    _require(mv.factor != 0, "expansion factor must be nonzero")
    _require(len(set(mv.ends)) == len(mv.ends), "repeated end in expansion partition")
    for oe in mv.ends:
        _check_end(g, oe)
        _require(g.origin(oe) == mv.vertex, f"end {oe} is not at vertex {mv.vertex}")
        _require(g.A(oe) % mv.factor == 0, f"label of end {oe} not divisible by {mv.factor}")
    u = mv.new_vertex or _fresh(f"{mv.vertex}'", set(g.vertices))
    _require(u not in g.vertices, f"vertex {u!r} already exists")
    eid = mv.new_edge or _fresh(f"x.{u}", {e.id for e in g.edges})
    _require(not g.has_edge(eid), f"edge {eid!r} already exists")
    moved = set(mv.ends)
    edges = []
    for e in g.edges:
        for forward in (True, False):
            oe = OrientedEdge(e.id, forward)
            if oe in moved:
                e = _set_end(e, forward, u, (e.a if forward else e.omega) // mv.factor)
        edges.append(e)
    edges.append(Edge(eid, u, mv.vertex, 1, mv.factor))
    return GbsGraph(g.vertices + (u,), tuple(edges))


def _slide_step(g: GbsGraph, end: OrientedEdge, over: OrientedEdge) -> GbsGraph:
    _require(end.edge != over.edge, "an edge cannot slide over itself")
    _require(g.origin(end) == g.origin(over), "slide: end and edge start at different vertices")
    label, div = g.A(end), g.A(over)
    _require(label % div == 0, f"slide: label {label} not divisible by {div}")
    e = _set_end(g.edge(end.edge), end.forward, g.terminus(over), label // div * g.Omega(over))
    return g.with_edge(e)


def _slide_over_loop(g: GbsGraph, mv: SlideOverLoop) -> GbsGraph:
    _check_end(g, mv.end)
    _require(g.has_edge(mv.loop), f"unknown edge {mv.loop!r}")
    _require(g.edge(mv.loop).is_loop, f"{mv.loop} is not a loop")
    over = OrientedEdge(mv.loop, mv.count > 0)
    for _ in range(abs(mv.count)):
        g = _slide_step(g, mv.end, over)
    return g


def _slide_over_edge(g: GbsGraph, mv: SlideOverEdge) -> GbsGraph:
    _check_end(g, mv.end)
    _check_end(g, mv.over)
    _require(not g.edge(mv.over.edge).is_loop, "use SlideOverLoop for loops")
    return _slide_step(g, mv.end, mv.over)


def _induction(g: GbsGraph, mv: Induction) -> GbsGraph:
    _require(g.has_edge(mv.loop), f"unknown edge {mv.loop!r}")
    loop = g.edge(mv.loop)
    _require(loop.is_loop, f"{mv.loop} is not a loop")
    oe = _one_end(g, loop)
    _require(oe is not None, "induction needs a loop with a label 1")
    _require(mv.factor != 0 and g.Omega(oe) % mv.factor == 0,
             f"induction factor {mv.factor} does not divide {g.Omega(oe)}")
    v = loop.source
    if mv.inverse:
        for end in g.outgoing(v):
            if end.edge != loop.id:
                _require(g.A(end) % mv.factor == 0,
                         f"inverse induction: label {g.A(end)} not divisible by {mv.factor}")
    return _scale_ends_at(g, v, {loop.id}, mv.factor, divide=mv.inverse)


def _a_move(g: GbsGraph, mv: AMove) -> GbsGraph:
    _check_end(g, mv.loop)
    loop = g.edge(mv.loop.edge)
    _require(loop.is_loop, f"{loop.id} is not a loop")
    k, top = g.A(mv.loop), g.Omega(mv.loop)
    _require(top % k == 0, f"A-move: {k} does not divide {top}")
    big = top // k
    _require(mv.factor != 0 and big % mv.factor == 0, f"A-move: {mv.factor} does not divide {big}")
    w = loop.source
    u = mv.new_vertex or _fresh(f"{w}^{loop.id}", set(g.vertices))
    _require(u not in g.vertices, f"vertex {u!r} already exists")
    eid = mv.new_edge or _fresh(f"a.{loop.id}", {e.id for e in g.edges})
    _require(not g.has_edge(eid), f"edge {eid!r} already exists")
    if mv.loop.forward:
        new_loop = replace(loop, source=u, target=u, a=1, omega=big)
    else:
        new_loop = replace(loop, source=u, target=u, a=big, omega=1)
    edges = tuple(new_loop if e.id == loop.id else e for e in g.edges)
    return GbsGraph(g.vertices + (u,), edges + (Edge(eid, u, w, mv.factor, k),))


def _a_inverse_site(g: GbsGraph, e: Edge):
    """Return ``(u, w, loop orientation)`` if ``e`` can be removed, else None."""
    for forward in (True, False):
        u = e.source if forward else e.target
        w = e.target if forward else e.source
        ends = g.outgoing(u)
        if len(ends) != 3:
            continue
        loops = g.loops_at(u)
        if len(loops) != 1:
            continue
        oe = _one_end(g, loops[0])
        if oe is None:
            continue
        ell = e.a if forward else e.omega
        if g.Omega(oe) % ell == 0:
            return u, w, oe, forward
    return None


def _a_inverse(g: GbsGraph, mv: AInverse) -> GbsGraph:
    _require(g.has_edge(mv.edge), f"unknown edge {mv.edge!r}")
    e = g.edge(mv.edge)
    _require(not e.is_loop, "A-inverse needs a non-loop edge")
    site = _a_inverse_site(g, e)
    _require(site is not None,
             "A-inverse needs an endpoint of degree 3 carrying a loop (1, M) with the edge label dividing M")
    u, w, oe, forward = site
    k = e.omega if forward else e.a
    big = g.Omega(oe)
    loop = g.edge(oe.edge)
    if oe.forward:
        new_loop = replace(loop, source=w, target=w, a=k, omega=k * big)
    else:
        new_loop = replace(loop, source=w, target=w, a=k * big, omega=k)
    edges = tuple(new_loop if f.id == loop.id else f for f in g.edges if f.id != e.id)
    return GbsGraph(tuple(v for v in g.vertices if v != u), edges)


_DISPATCH = {
    Collapse: _collapse,
    Expansion: _expansion,
    SlideOverLoop: _slide_over_loop,
    SlideOverEdge: _slide_over_edge,
    Induction: _induction,
    AMove: _a_move,
    AInverse: _a_inverse,
}


def apply(g: GbsGraph, mv: Move) -> GbsGraph:
    """Apply one move, raising :class:`IllegalMove` if it does not apply."""
    try:
        fn = _DISPATCH[type(mv)]
    except KeyError:
        raise TypeError(f"not a move: {mv!r}") from None
    return fn(g, mv)


def apply_all(g: GbsGraph, moves) -> GbsGraph:
    for mv in moves:
        g = apply(g, mv)
    return g


# ---------------------------------------------------------------------------
# enumeration

def _factors(n: int) -> list[int]:
    return [d for d in divisors(abs(n)) if d > 1]


def _keeps_reduced(g: GbsGraph, mv: Move) -> bool:
    """Whether ``mv`` maps the reduced graph ``g`` to a reduced graph."""
    if isinstance(mv, (SlideOverLoop, SlideOverEdge)):
        e = g.edge(mv.end.edge)
        if isinstance(mv, SlideOverLoop):
            if e.is_loop:
                return True
            over = OrientedEdge(mv.loop, mv.count > 0)
            new_origin = g.origin(mv.end)
        else:
            over = mv.over
            new_origin = g.terminus(over)
        other_end = g.terminus(mv.end)
        if new_origin == other_end:
            return True
        new_label = g.A(mv.end) // g.A(over) * g.Omega(over)
        return abs(new_label) != 1 and abs(g.Omega(mv.end)) != 1
    if isinstance(mv, Induction):
        if not mv.inverse:
            return True
        v = g.edge(mv.loop).source
        for end in g.outgoing(v):
            if not g.edge(end.edge).is_loop and abs(g.A(end) // mv.factor) == 1:
                return False
        return True
    if isinstance(mv, AMove):
        return abs(mv.factor) != 1 and abs(g.A(mv.loop)) != 1
    if isinstance(mv, AInverse):
        return True
    return is_reduced(apply(g, mv))


def legal_moves(g: GbsGraph, keep_reduced: bool = False) -> list[Move]:
    """All legal moves in a fixed order.

    Slides are listed as single steps; induction and A-move factors range
    over the divisors greater than 1.  Expansions are never listed: their
    parameter space (factor and star partition) is unbounded.
    """
    out: list[Move] = []
    ends = [OrientedEdge(e.id, f) for e in g.edges for f in (True, False)]

    for e in g.edges:
        if not e.is_loop and (abs(e.a) == 1 or abs(e.omega) == 1):
            out.append(Collapse(e.id))

    for end in ends:
        v = g.origin(end)
        label = g.A(end)
        for loop in g.loops_at(v):
            if loop.id == end.edge:
                continue
            if label % loop.a == 0:
                out.append(SlideOverLoop(end, loop.id, 1))
            if label % loop.omega == 0:
                out.append(SlideOverLoop(end, loop.id, -1))
        for over in g.outgoing(v):
            if over.edge == end.edge or g.edge(over.edge).is_loop:
                continue
            if label % g.A(over) == 0:
                out.append(SlideOverEdge(end, over))

    for loop in g.edges:
        if not loop.is_loop:
            continue
        one = _one_end(g, loop)
        if one is None:
            continue
        v = loop.source
        others = [g.A(x) for x in g.outgoing(v) if x.edge != loop.id]
        for ell in _factors(g.Omega(one)):
            out.append(Induction(loop.id, ell))
            if all(x % ell == 0 for x in others):
                out.append(Induction(loop.id, ell, inverse=True))

    for loop in g.edges:
        if not loop.is_loop:
            continue
        orients = [OrientedEdge(loop.id, True)]
        if loop.a != loop.omega:
            orients.append(OrientedEdge(loop.id, False))
        for oe in orients:
            k, top = g.A(oe), g.Omega(oe)
            if top % k:
                continue
            for ell in _factors(top // k):
                out.append(AMove(oe, ell))

    for e in g.edges:
        if not e.is_loop and _a_inverse_site(g, e) is not None:
            out.append(AInverse(e.id))

    if keep_reduced:
        out = [mv for mv in out if _keeps_reduced(g, mv)]
    return out


def random_deform(g: GbsGraph, steps: int, seed: int, keep_reduced: bool = False):
    """Apply ``steps`` uniformly chosen legal moves.

    Returns ``(graph, log)``; the log is shorter than ``steps`` if the walk
    reached a graph with no legal move.
    """
    if keep_reduced and not is_reduced(g):
        raise ValueError("keep_reduced requires a reduced starting graph")
    rng = random.Random(seed)
    log: list[Move] = []
    for _ in range(steps):
        moves = legal_moves(g, keep_reduced=keep_reduced)
        if not moves:
            break
        mv = rng.choice(moves)
        g = apply(g, mv)
        log.append(mv)
    return g, log


def induction_via_deformations(g: GbsGraph, mv: Induction) -> GbsGraph:
    """Forward induction realised as an expansion followed by a collapse.

    The result is renamed back onto the identifiers of ``g`` so it can be
    compared with ``apply(g, mv)`` directly.
    """
    if mv.inverse:
        raise ValueError("only forward inductions are decomposed")
    loop = g.edge(mv.loop)
    one = _one_end(g, loop)
    if one is None or not loop.is_loop:
        raise IllegalMove("induction needs a loop with a label 1")
    top = g.Omega(one)
    if mv.factor == 0 or top % mv.factor:
        raise IllegalMove(f"induction factor {mv.factor} does not divide {top}")
    v = loop.source
    rest = top // mv.factor
    x = _fresh(f"{v}'", set(g.vertices))
    bridge = _fresh(f"x.{x}", {e.id for e in g.edges})
    h = apply(g, Expansion(v, rest, (one.inverse(),), new_vertex=x, new_edge=bridge))
    h = apply(h, Collapse(loop.id))
    # the bridge is now the loop (1, factor*rest) at x
    b = h.edge(bridge)
    if one.forward:
        b = Edge(loop.id, v, v, b.a, b.omega)
    else:
        b = Edge(loop.id, v, v, b.omega, b.a)
    h = h.relabeled({x: v})
    by_id = {e.id: e for e in h.edges if e.id != bridge}
    by_id[loop.id] = b
    return GbsGraph(g.vertices, tuple(by_id[e.id] for e in g.edges))


# ---------------------------------------------------------------------------
# serialization

_BY_NAME = {cls.__name__: cls for cls in _DISPATCH}


def move_to_dict(mv: Move) -> dict:
    d = {"type": type(mv).__name__}
    for k, val in asdict(mv).items():
        if isinstance(val, tuple) and val and isinstance(val[0], (tuple, list)):
            val = [list(x) for x in val]
        elif isinstance(val, tuple):
            val = list(val)
        d[k] = val
    return d


def move_from_dict(d: dict) -> Move:
    d = dict(d)
    cls = _BY_NAME[d.pop("type")]
    for key in ("end", "over", "loop"):
        if key in d and isinstance(d[key], list):
            d[key] = OrientedEdge(d[key][0], bool(d[key][1]))
    if "ends" in d:
        d["ends"] = tuple(OrientedEdge(x[0], bool(x[1])) for x in d["ends"])
    return cls(**d)


def moves_to_jsonl(moves) -> str:
    return "".join(json.dumps(move_to_dict(mv)) + "\n" for mv in moves)


def moves_from_jsonl(text: str) -> list[Move]:
    return [move_from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]

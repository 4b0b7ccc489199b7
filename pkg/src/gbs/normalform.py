"""Normal forms for finite-index subgroups of ``G^d_{1,n}``.

The pipeline has two stages.  A cover is first collapsed along a spanning
tree of positive edges pointing at sheet 0, leaving a bouquet whose petals
are labelled by powers of ``n``.  Slides then bring the bouquet into the
shape ``(1, n^m), (n^{p_1}, n^{p_1}), ..., (n^{p_{k-1}}, n^{p_{k-1}})`` with
``0 <= p_i < m``.

Both stages run through the move engine and are cross-checked against the
closed-form path counts, so a bug in either shows up as an assertion.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .covering import CoveringGraph, edge_name, lift_labels, sheet_name
from .graph import Edge, GbsGraph, OrientedEdge
from .modular import primitive_base
from .moves import Collapse, SlideOverLoop, apply

__all__ = [
    "PositiveSpanningTree",
    "ExponentBouquet",
    "NormalForm",
    "NormalFormError",
    "positive_spanning_tree",
    "petal_exponents_by_paths",
    "collapse_to_bouquet",
    "plateau_m",
    "euclid_slide_pair",
    "bouquet_normal_form",
    "normal_form_with_moves",
    "normal_form_of_cover",
    "int_log",
]


class NormalFormError(ValueError):
    pass


@dataclass(frozen=True)
class PositiveSpanningTree:
    """Tree edges ``(petal, source sheet, target sheet)``, all pointing to ``base``."""

    base: int
    edges: tuple[tuple[int, int, int], ...]

    def parent_edge(self) -> dict[int, tuple[int, int, int]]:
        return {src: (i, src, tgt) for i, src, tgt in self.edges}


@dataclass(frozen=True)
class ExponentBouquet:
    """Bouquet over ``base``: petal ``(a, b)`` has labels ``(base^a, base^b)``."""

    base: int
    petals: tuple[tuple[int, int], ...]

    def graph(self) -> GbsGraph:
        edges = tuple(Edge(f"f{i}", "v0", "v0", self.base ** a, self.base ** b)
                      for i, (a, b) in enumerate(self.petals))
        return GbsGraph(("v0",), edges)


@dataclass(frozen=True)
class NormalForm:
    r: int
    l: int
    m: int
    residues: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(sorted(self.residues)))
        if self.r < 2 or self.l < 1 or self.m < 1:
            raise NormalFormError(f"bad normal form parameters r={self.r} l={self.l} m={self.m}")
        if primitive_base(self.r).exponent != 1:
            raise NormalFormError(f"base {self.r} is a perfect power")
        if not self.residues:
            raise NormalFormError("a normal form has at least two petals")
        if any(not 0 <= p < self.m for p in self.residues):
            raise NormalFormError(f"residues must lie in [0, {self.m - 1}]")

    @property
    def n(self) -> int:
        return self.r ** self.l

    @property
    def k(self) -> int:
        return len(self.residues) + 1

    def bouquet(self) -> ExponentBouquet:
        return ExponentBouquet(self.n, ((0, self.m),) + tuple((p, p) for p in self.residues))

    def graph(self) -> GbsGraph:
        return self.bouquet().graph()

    def __str__(self) -> str:
        ps = ",".join(str(p) for p in self.residues)
        return f"NF(r={self.r},l={self.l},m={self.m};p=[{ps}])"


def int_log(x: int, base: int) -> int:
    """Exact ``log_base(x)``; raises if ``x`` is not a power of ``base``."""
    if x < 1 or base < 2:
        raise NormalFormError(f"{x} is not a power of {base}")
    k = 0
    while x % base == 0:
        x //= base
        k += 1
    if x != 1:
        raise NormalFormError(f"label is not a power of {base}")
    return k


# ---------------------------------------------------------------------------
# stage 1: collapse along a positive spanning tree

def positive_spanning_tree(c: CoveringGraph) -> PositiveSpanningTree:
    """Grow a tree towards sheet 0 one vertex at a time.

    For the first sheet ``w`` outside the tree, take a shortest positive path
    from ``w`` into the tree and attach its last vertex outside the tree by
    the edge that leaves it.
    """
    in_tree = {0}
    edges: list[tuple[int, int, int]] = []
    while len(in_tree) < c.n_sheets:
        w = next(x for x in range(c.n_sheets) if x not in in_tree)
        prev: dict[int, tuple[int, int]] = {w: (-1, -1)}
        queue = deque([w])
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for i, sigma in enumerate(c.perms):
                y = sigma[x]
                if y in prev:
                    continue
                prev[y] = (i, x)
                if y in in_tree:
                    hit = y
                    break
                queue.append(y)
        assert hit is not None, "cover is not strongly connected"
        i, u = prev[hit]
        edges.append((i, u, hit))
        in_tree.add(u)
    return PositiveSpanningTree(0, tuple(edges))


def _non_tree_edges(c: CoveringGraph, tree: PositiveSpanningTree):
    used = {(i, src) for i, src, _ in tree.edges}
    return [(i, x, c.perms[i][x]) for x in range(c.n_sheets) for i in range(c.d) if (i, x) not in used]


def petal_exponents_by_paths(c: CoveringGraph, tree: PositiveSpanningTree) -> list[tuple[int, int]]:
    """Count negative and positive edges on each fundamental loop.

    The loop of a non-tree edge ``E: x -> y`` runs from the base down the
    tree to ``x`` (negative edges), across ``E``, and back up from ``y``
    (positive edges).  Its petal is ``(#negative, #positive)``.
    """
    parent = tree.parent_edge()

    def up_path(x: int) -> list[tuple[int, int, int]]:
        path = []
        while x != tree.base:
            e = parent[x]
            path.append(e)
            x = e[2]
        return path

    out = []
    for i, x, y in _non_tree_edges(c, tree):
        z = [(e, -1) for e in reversed(up_path(x))] + [((i, x, y), +1)] + [(e, +1) for e in up_path(y)]
        out.append((sum(1 for _, s in z if s < 0), sum(1 for _, s in z if s > 0)))
    return out


def collapse_to_bouquet(c: CoveringGraph, n: int, tree: PositiveSpanningTree | None = None) -> ExponentBouquet:
    """Collapse the lifted cover of ``G^d_{1,n}`` to a bouquet of circles.

    The collapses are executed with the move engine; the resulting labels
    are checked against :func:`petal_exponents_by_paths`.
    """
    if n < 2:
        raise NormalFormError("n must be at least 2")
    tree = tree or positive_spanning_tree(c)
    g = lift_labels(c, 1, n)
    for i, x, _ in tree.edges:
        g = apply(g, Collapse(edge_name(i, x)))
    assert g.vertices == (sheet_name(tree.base),)
    petals = tuple((int_log(e.a, n), int_log(e.omega, n)) for e in g.edges)
    expected = tuple(petal_exponents_by_paths(c, tree))
    if petals != expected:
        raise AssertionError(f"collapse moves gave {petals}, path counts give {expected}")
    return ExponentBouquet(n, petals)


# ---------------------------------------------------------------------------
# stage 2: slides

def plateau_m(b: ExponentBouquet) -> int:
    m = 0
    for a, c in b.petals:
        m = gcd(m, abs(c - a))
    if m == 0:
        raise NormalFormError("no ascending petal: every petal is balanced")
    return m


def _euclid(a: int, b: int, c: int):
    """Run the two-step slide procedure on ``E = (1, n^a)``, ``F = (n^b, n^c)``.

    Returns ``(d, t, steps)``; ``steps`` is a list of
    ``("F", forward_end, count)`` and ``("E", count)`` slide instructions,
    counts signed as in :class:`~gbs.moves.SlideOverLoop`.
    """
    if a < 1 or b < 0 or c < 0:
        raise ValueError("need a >= 1 and b, c >= 0")
    steps: list[tuple] = []
    while True:
        # step 1: reduce both ends of F modulo a by sliding over E backwards
        s, b1 = divmod(b, a)
        t, c1 = divmod(c, a)
        if s:
            steps.append(("F", True, -s))
        if t:
            steps.append(("F", False, -t))
        b, c = b1, c1
        if b == c:
            return a, b, steps
        # step 2: shorten E by sliding its big end over F
        hi, lo = max(b, c), min(b, c)
        diff = hi - lo
        lam = (a - lo - 1) // diff
        mu = a - lo - lam * diff
        assert 1 <= mu <= diff and lam >= 1
        steps.append(("E", lam if b > c else -lam))
        a -= lam * diff


def euclid_slide_pair(a: int, b: int, c: int) -> tuple[int, int]:
    """Result ``(d, t)`` of the slide procedure: ``E`` ends as ``(1, n^d)``
    and ``F`` as ``(n^t, n^t)``."""
    d, t, _ = _euclid(a, b, c)
    g = gcd(a, abs(b - c))
    assert d == g and t == b % g == c % g, (a, b, c, d, t)
    return d, t


def normal_form_with_moves(b: ExponentBouquet):
    """Normalize a bouquet; returns ``(NormalForm, start graph, slide moves)``.

    The first ascending petal (``a_i = 0 < b_i``) plays the role of the
    distinguished loop.
    """
    try:
        first = next(i for i, (a, c) in enumerate(b.petals) if a == 0 < c)
    except StopIteration:
        raise NormalFormError("no ascending petal (0, b) with b > 0") from None
    g = b.graph()
    names = [e.id for e in g.edges]
    big = names[first]
    moves: list = []

    def slide(end: OrientedEdge, count: int):
        moves.append(SlideOverLoop(end, big, count))

    a = b.petals[first][1]
    balanced: dict[int, int] = {}
    for i, (x, y) in enumerate(b.petals):
        if i == first:
            continue
        d, t, steps = _euclid(a, x, y)
        for st in steps:
            if st[0] == "F":
                slide(OrientedEdge(names[i], st[1]), st[2])
            else:
                moves.append(SlideOverLoop(OrientedEdge(big, False), names[i], st[1]))
        a = d
        balanced[i] = t
    m = a
    assert m == plateau_m(b)
    residues = []
    for i, t in balanced.items():
        x, p = divmod(t, m)
        if x:
            slide(OrientedEdge(names[i], True), -x)
            slide(OrientedEdge(names[i], False), -x)
        residues.append(p)
        assert p == b.petals[i][0] % m == b.petals[i][1] % m
    pb = primitive_base(b.base)
    return NormalForm(pb.base, pb.exponent, m, tuple(residues)), g, moves


def bouquet_normal_form(b: ExponentBouquet) -> NormalForm:
    return normal_form_with_moves(b)[0]


def normal_form_of_cover(c: CoveringGraph, n: int) -> NormalForm:
    """Normal form of the subgroup of ``G^d_{1,n}`` given by the cover ``c``."""
    if c.d < 2:
        raise NormalFormError("normal forms need at least two petals (d >= 2)")
    return bouquet_normal_form(collapse_to_bouquet(c, n))

"""Isomorphism of normal forms, and the dual-graph invariant.

Two normal forms over the same primitive base ``r`` are compared through
their characteristic vectors: entry ``l*j`` of the length ``l*m`` vector
counts the balanced petals with exponent ``j``.  Isomorphic forms have the
same ``r^(l*m)`` and the same number of petals, and vectors that agree up
to a rotation.

The dual graph is an independent check that works on any graph reachable
from a normal form by moves: its vertex potential recovers the residues
up to a common shift.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .covering import CoveringGraph, lift_labels
from .graph import GbsGraph, betti_number
from .modular import image_generator_cyclic, modular_image, primitive_base
from .normalform import NormalForm, normal_form_of_cover

__all__ = [
    "CharVector",
    "DualGraph",
    "DualGraphError",
    "PreconditionFailed",
    "InconsistentPotential",
    "char_vector",
    "cyclic_equal",
    "iso_normal_forms",
    "iso_subgroups",
    "dual_graph",
    "residues_up_to_shift",
]


@dataclass(frozen=True)
class CharVector:
    r: int
    entries: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.entries)

    def rotate(self, c: int) -> "CharVector":
        """The vector ``w`` with ``w[(i + c) % L] == self[i]``."""
        L = self.length
        out = [0] * L
        for i, x in enumerate(self.entries):
            out[(i + c) % L] = x
        return CharVector(self.r, tuple(out))


def char_vector(nf: NormalForm) -> CharVector:
    v = [0] * (nf.l * nf.m)
    for p in nf.residues:
        v[nf.l * p] += 1
    return CharVector(nf.r, tuple(v))


def cyclic_equal(v: CharVector, w: CharVector) -> int | None:
    """Smallest ``C`` with ``w[(i + C) % L] == v[i]`` for all ``i``."""
    if v.length != w.length:
        return None
    for c in range(v.length):
        if v.rotate(c).entries == w.entries:
            return c
    return None


def iso_normal_forms(nf1: NormalForm, nf2: NormalForm):
    """Decide isomorphism; returns ``(True, (C, sigma))`` or ``(False, None)``.

    ``sigma`` matches residues so that ``l1*p[i] + C == l2*q[sigma[i]]``
    modulo ``l1*m1``.
    """
    if nf1.r != nf2.r:
        return False, None
    if nf1.l * nf1.m != nf2.l * nf2.m or nf1.k != nf2.k:
        return False, None
    c = cyclic_equal(char_vector(nf1), char_vector(nf2))
    if c is None:
        return False, None
    S = nf1.l * nf1.m
    free: dict[int, list[int]] = {}
    for j, q in enumerate(nf2.residues):
        free.setdefault(nf2.l * q, []).append(j)
    sigma = tuple(free[(nf1.l * p + c) % S].pop(0) for p in nf1.residues)
    return True, (c, sigma)


def iso_subgroups(c1: CoveringGraph, n1: int, c2: CoveringGraph, n2: int) -> bool:
    """Are the subgroups of ``G^{d1}_{1,n1}`` and ``G^{d2}_{1,n2}`` isomorphic?"""
    if primitive_base(n1).base != primitive_base(n2).base:
        return False
    if c1.d < 2 or c2.d < 2:
        # one petal: BS(1, N) is determined by its betti number and modulus
        g1, g2 = lift_labels(c1, 1, n1), lift_labels(c2, 1, n2)
        return (betti_number(g1) == betti_number(g2)
                and image_generator_cyclic(modular_image(g1)) == image_generator_cyclic(modular_image(g2)))
    return iso_normal_forms(normal_form_of_cover(c1, n1), normal_form_of_cover(c2, n2))[0]


# ---------------------------------------------------------------------------
# dual graph

class DualGraphError(ValueError):
    pass


class PreconditionFailed(DualGraphError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


class InconsistentPotential(DualGraphError):
    pass


@dataclass(frozen=True)
class DualGraph:
    """``vertices`` are edge ids of the graph minus one ascending loop per vertex.

    ``edges`` are ``(colour, source, target, label)`` with labels in ``Z/m``.
    """

    m: int
    vertices: tuple[str, ...]
    deleted: tuple[str, ...]
    edges: tuple[tuple[str, str, str, int], ...]
    potential: dict

    def potential_values(self) -> list[int]:
        return [self.potential[v] for v in self.vertices]


def _log_exact(x: int, base: int) -> int | None:
    k = 0
    while x % base == 0:
        x //= base
        k += 1
    return k if x == 1 else None


def _ratio_log(a: int, b: int, base: int) -> int | None:
    """``C`` with ``a / b == base**C``; None if no such integer."""
    if (a < 0) != (b < 0):
        return None
    a, b = abs(a), abs(b)
    if a >= b:
        if a % b:
            return None
        return _log_exact(a // b, base)
    if b % a:
        return None
    c = _log_exact(b // a, base)
    return None if c is None else -c


def _strictly_ascending(e) -> bool:
    return e.is_loop and (abs(e.a) == 1) != (abs(e.omega) == 1)


def dual_graph(g: GbsGraph, r: int, l: int, m: int) -> DualGraph:
    n = r ** l
    big = n ** m
    deleted = {}
    for v in g.vertices:
        asc = [e for e in g.loops_at(v) if _strictly_ascending(e)]
        if not asc:
            raise PreconditionFailed("ascending loop", f"vertex {v} has no strictly ascending loop")
        deleted[v] = asc[0].id
    for e in g.edges:
        if e.is_loop and _ratio_log(e.omega, e.a, big) is None and _ratio_log(e.a, e.omega, big) is None:
            raise PreconditionFailed("loop modulus", f"modulus of loop {e.id} is not a power of {big}")
    kept = tuple(e.id for e in g.edges if e.id not in set(deleted.values()))
    # ends at each vertex: loops once via their A-end
    colour_edges: list[tuple[str, str, str, int]] = []
    for v in g.vertices:
        ends = []
        for e in g.edges:
            if e.id == deleted[v]:
                continue
            if e.source == v:
                ends.append((e.id, e.a))
            elif e.target == v:
                ends.append((e.id, e.omega))
        for i, (e1, a1) in enumerate(ends):
            if a1 < 0:
                raise PreconditionFailed("label proportion", f"negative label on {e1} at {v}")
            for e2, a2 in ends[i + 1:]:
                c = _ratio_log(a2, a1, n)
                if c is None:
                    raise PreconditionFailed(
                        "label proportion", f"{a2}/{a1} at vertex {v} is not a power of {n}")
                colour_edges.append((v, e1, e2, c % m))
    # potential by BFS, then check every dual edge
    adj: dict[str, list[tuple[str, int]]] = {x: [] for x in kept}
    for _, s, t, lab in colour_edges:
        adj[s].append((t, lab))
        adj[t].append((s, (-lab) % m))
    pot: dict[str, int] = {}
    for root in kept:
        if root in pot:
            continue
        pot[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, lab in adj[x]:
                if y not in pot:
                    pot[y] = (pot[x] + lab) % m
                    queue.append(y)
    for colour, s, t, lab in colour_edges:
        if (pot[t] - pot[s] - lab) % m:
            raise InconsistentPotential(f"cycle through {s} -> {t} (colour {colour}) has nonzero label")
    return DualGraph(m, kept, tuple(deleted[v] for v in g.vertices), tuple(colour_edges), pot)


def residues_up_to_shift(values, m: int) -> tuple[int, ...]:
    """Canonical representative of a multiset in ``Z/m`` modulo a common shift."""
    values = [v % m for v in values]
    best = None
    for c in range(m):
        cand = tuple(sorted((v + c) % m for v in values))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


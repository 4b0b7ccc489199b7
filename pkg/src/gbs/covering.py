"""Finite covers of bouquets and the standard finite-index subgroups.

A degree-``N`` cover of the bouquet with ``d`` petals is given by ``d``
permutations of the sheets ``0..N-1``: ``perms[i][x]`` is where the lift of
petal ``i`` starting at sheet ``x`` ends.  Lifting the labels ``(p, q)`` of
``G^d_{p,q}`` to every edge of the cover gives the GBS graph of the
corresponding subgroup when ``gcd(p, q) = 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .graph import Edge, GbsGraph

__all__ = [
    "CoveringError",
    "CoveringGraph",
    "SubgroupDescriptor",
    "covering_from_permutations",
    "trivial_cover",
    "cycle_cover",
    "lift_labels",
    "bouquet",
    "standard_subgroup",
    "index2_cycle",
    "gamma_k",
    "cover_from_json",
    "cover_to_json",
]


class CoveringError(ValueError):
    pass


@dataclass(frozen=True)
class CoveringGraph:
    d: int
    n_sheets: int
    perms: tuple[tuple[int, ...], ...]

    def edges(self):
        """``(petal, sheet, target sheet)`` for every positive edge."""
        for i, sigma in enumerate(self.perms):
            for x in range(self.n_sheets):
                yield i, x, sigma[x]


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Names the group ``G^d_{p,q}``: one vertex, ``d`` loops labelled ``(p, q)``."""

    d: int
    p: int
    q: int

    @property
    def coprime(self) -> bool:
        return gcd(self.p, self.q) == 1

    def __str__(self) -> str:
        return f"G^{self.d}_{{{self.p},{self.q}}}"


def covering_from_permutations(d: int, n_sheets: int, perms) -> CoveringGraph:
    if d < 1 or n_sheets < 1:
        raise CoveringError("need d >= 1 and at least one sheet")
    perms = tuple(tuple(int(x) for x in s) for s in perms)
    if len(perms) != d:
        raise CoveringError(f"expected {d} permutations, got {len(perms)}")
    for i, s in enumerate(perms):
        if sorted(s) != list(range(n_sheets)):
            raise CoveringError(f"permutation {i} is not a bijection of 0..{n_sheets - 1}")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for s in perms:
            y = s[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n_sheets:
        raise CoveringError("permutations act intransitively: the cover is disconnected")
    return CoveringGraph(d, n_sheets, perms)


def trivial_cover(d: int) -> CoveringGraph:
    return covering_from_permutations(d, 1, [[0]] * d)


def cycle_cover(n_sheets: int) -> CoveringGraph:
    """The connected cover of a single circle with ``n_sheets`` sheets."""
    return covering_from_permutations(1, n_sheets, [[(x + 1) % n_sheets for x in range(n_sheets)]])


def sheet_name(x: int) -> str:
    return f"v{x}"


def edge_name(i: int, x: int) -> str:
    return f"e{i}_{x}"


def lift_labels(c: CoveringGraph, p: int, q: int) -> GbsGraph:
    """GBS graph of the cover with every positive edge labelled ``(p, q)``.

    Edges are declared sheet by sheet, petals in order within a sheet.
    """
    vertices = tuple(sheet_name(x) for x in range(c.n_sheets))
    edges = tuple(
        Edge(edge_name(i, x), sheet_name(x), sheet_name(c.perms[i][x]), p, q)
        for x in range(c.n_sheets) for i in range(c.d)
    )
    return GbsGraph(vertices, edges)


def bouquet(desc: SubgroupDescriptor) -> GbsGraph:
    return lift_labels(trivial_cover(desc.d), desc.p, desc.q)


def standard_subgroup(m: int, n: int) -> tuple[int, SubgroupDescriptor]:
    """Index and isomorphism type of the kernel of ``BS(m,n) -> Z/gcd(m,n)``."""
    if m == 0 or n == 0:
        raise ValueError("labels must be nonzero")
    m, n = abs(m), abs(n)
    d = gcd(m, n)
    return d, SubgroupDescriptor(d, m // d, n // d)


def index2_cycle(m: int, n: int) -> GbsGraph:
    """Index-2 subgroup of ``BS(m,n)`` killing ``a`` and reducing ``t`` mod 2."""
    if m == 0 or n == 0:
        raise ValueError("labels must be nonzero")
    return GbsGraph(("v0", "v1"), (Edge("e0", "v0", "v1", m, n), Edge("e1", "v1", "v0", m, n)))


def gamma_k(k: int) -> CoveringGraph:
    """Cover of the two-petal bouquet on ``k - 1`` sheets with rank ``k``.

    Sheets ``0..k-2`` stand for ``v_1..v_{k-1}``.  Petal ``a`` fixes the first
    sheet and swaps the pairs ``(v_2, v_3), (v_4, v_5), ...``; petal ``b``
    swaps ``(v_1, v_2), (v_3, v_4), ...``.  For odd ``k`` both ends carry an
    ``a``-loop; for even ``k`` the last sheet carries a ``b``-loop instead.
    """
    if k < 3:
        raise ValueError("gamma_k needs k >= 3")
    n = k - 1
    a = list(range(n))
    b = list(range(n))
    # 1-based vertex v_j is sheet j - 1
    if k % 2:
        a_pairs = [(2 * i, 2 * i + 1) for i in range(1, (k - 3) // 2 + 1)]
        b_pairs = [(2 * i - 1, 2 * i) for i in range(1, (k - 1) // 2 + 1)]
    else:
        a_pairs = [(2 * i, 2 * i + 1) for i in range(1, k // 2)]
        b_pairs = [(2 * i - 1, 2 * i) for i in range(1, k // 2)]
    for s, pairs in ((a, a_pairs), (b, b_pairs)):
        for u, v in pairs:
            s[u - 1], s[v - 1] = v - 1, u - 1
    return covering_from_permutations(2, n, [a, b])


def cover_to_json(c: CoveringGraph) -> str:
    return json.dumps({"d": c.d, "n_sheets": c.n_sheets, "perms": [list(s) for s in c.perms]})


def cover_from_json(text: str) -> CoveringGraph:
    raw = json.loads(text)
    return covering_from_permutations(int(raw["d"]), int(raw["n_sheets"]), raw["perms"])

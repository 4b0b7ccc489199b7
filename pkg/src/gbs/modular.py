"""Image of the modular homomorphism and small number-theoretic helpers.

The modulus of a closed path ``e_1 ... e_l`` is the product of
``A(e_i) / Omega(e_i)``.  The image is generated by the moduli of a cycle
basis and is stored canonically as a subgroup of ``Q*``: a Hermite normal
form basis of prime-exponent vectors, a sign for each basis vector, and a
flag for whether ``-1`` itself lies in the subgroup.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import factorint

from .graph import GbsGraph, OrientedEdge, bfs_tree

__all__ = [
    "ModularImage",
    "PrimitiveBase",
    "cycle_moduli",
    "modular_image",
    "subgroup_of_rationals",
    "image_generator_cyclic",
    "primitive_base",
    "common_power",
    "exponent_vector",
]


@dataclass(frozen=True)
class ModularImage:
    primes: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    minus_one: bool = False

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def has_negative(self) -> bool:
        return self.minus_one or any(s < 0 for s in self.signs)

    def generators(self) -> list[Fraction]:
        gens = []
        for row, s in zip(self.basis, self.signs):
            q = Fraction(1)
            for p, k in zip(self.primes, row):
                q *= Fraction(p) ** k
            gens.append(s * q)
        if self.minus_one:
            gens.append(Fraction(-1))
        return gens

    def __str__(self) -> str:
        gens = self.generators()
        if not gens:
            return "trivial"
        return "<" + ", ".join(str(q) for q in gens) + ">"


@dataclass(frozen=True)
class PrimitiveBase:
    base: int
    exponent: int


def exponent_vector(q: Fraction) -> dict[int, int]:
    """Prime exponents of ``|q|``."""
    q = Fraction(q)
    out = dict(factorint(abs(q.numerator)))
    for p, k in factorint(q.denominator).items():
        out[p] = out.get(p, 0) - k
    return {p: k for p, k in out.items() if k}


def cycle_moduli(g: GbsGraph) -> list[Fraction]:
    """Moduli of the fundamental cycles of the declaration-order BFS tree."""
    order, parent = bfs_tree(g)
    root = order[0]
    tree = {oe.edge for oe in parent.values()}

    def to_root(v: str) -> Fraction:
        # modulus of the tree path from v up to the root
        q = Fraction(1)
        while v != root:
            oe = parent[v].inverse()
            q *= Fraction(g.A(oe), g.Omega(oe))
            v = g.terminus(oe)
        return q

    out = []
    for e in g.edges:
        if e.id in tree:
            continue
        oe = OrientedEdge(e.id, True)
        # root -> source, across e, target -> root
        out.append(Fraction(g.A(oe), g.Omega(oe)) * to_root(e.target) / to_root(e.source))
    return out


def _hnf(rows: list[list[int]], signs: list[int]):
    """Row-style Hermite normal form, carrying a Z/2 sign along each row.

    Returns ``(basis, signs, minus_one)``.
    """
    rows = [list(r) for r in rows]
    signs = list(signs)
    ncols = len(rows[0]) if rows else 0
    basis, bsigns = [], []
    minus_one = False
    col = 0
    while rows and col < ncols:
        nz = [i for i, r in enumerate(rows) if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            for i in nz:
                if i == piv:
                    continue
                f = rows[i][col] // rows[piv][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[piv])]
                if f % 2:
                    signs[i] *= signs[piv]
            nz = [i for i, r in enumerate(rows) if r[col]]
        i = nz[0]
        row, s = rows.pop(i), signs.pop(i)
        if row[col] < 0:
            row = [-x for x in row]
        basis.append(row)
        bsigns.append(s)
        col += 1
    for r, s in zip(rows, signs):
        # leftover rows are zero vectors
        if s < 0:
            minus_one = True
    # reduce entries above pivots
    for j in range(len(basis)):
        pc = next(c for c, x in enumerate(basis[j]) if x)
        for i in range(j):
            f = basis[i][pc] // basis[j][pc]
            if f:
                basis[i] = [x - f * y for x, y in zip(basis[i], basis[j])]
                if f % 2:
                    bsigns[i] *= bsigns[j]
    if minus_one:
        bsigns = [1] * len(bsigns)
    return basis, bsigns, minus_one


def subgroup_of_rationals(gens) -> ModularImage:
    """Canonical form of the subgroup of ``Q*`` generated by ``gens``."""
    gens = [Fraction(q) for q in gens]
    vecs = [exponent_vector(q) for q in gens]
    primes = tuple(sorted({p for v in vecs for p in v}))
    rows = [[v.get(p, 0) for p in primes] for v in vecs]
    signs = [1 if q > 0 else -1 for q in gens]
    if not primes:
        return ModularImage((), (), (), any(s < 0 for s in signs))
    basis, bsigns, minus_one = _hnf(rows, signs)
    used = [j for j in range(len(primes)) if any(r[j] for r in basis)]
    primes = tuple(primes[j] for j in used)
    basis = tuple(tuple(r[j] for j in used) for r in basis)
    return ModularImage(primes, basis, tuple(bsigns), minus_one)


def modular_image(g: GbsGraph) -> ModularImage:
    return subgroup_of_rationals(cycle_moduli(g))


def image_generator_cyclic(img: ModularImage) -> Fraction | None:
    """The generator ``q >= 1`` of a cyclic image of positive rationals."""
    if img.has_negative or img.rank > 1:
        return None
    if img.rank == 0:
        return Fraction(1)
    q = img.generators()[0]
    return q if q >= 1 else 1 / q


def primitive_base(n: int) -> PrimitiveBase:
    """Write ``n >= 2`` as ``base ** exponent`` with ``base`` not a perfect power."""
    if n < 2:
        raise ValueError("primitive_base needs n >= 2")
    f = factorint(n)
    e = 0
    for k in f.values():
        e = gcd(e, k)
    base = 1
    for p, k in f.items():
        base *= p ** (k // e)
    return PrimitiveBase(base, e)


def common_power(q1, q2) -> tuple[int, int] | None:
    """Smallest positive ``(k, l)`` with ``q1**k == q2**l``, or None."""
    q1, q2 = Fraction(q1), Fraction(q2)
    if q1 <= 1 or q2 <= 1:
        raise ValueError("common_power needs rationals > 1")
    u, w = exponent_vector(q1), exponent_vector(q2)
    if set(u) != set(w):
        return None
    p0 = min(u)
    # k * u = l * w  =>  k / l = w[p0] / u[p0]
    ratio = Fraction(w[p0], u[p0])
    if ratio <= 0 or any(Fraction(w[p], u[p]) != ratio for p in u):
        return None
    return ratio.numerator, ratio.denominator

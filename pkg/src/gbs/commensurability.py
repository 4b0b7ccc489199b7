"""Commensurability of Baumslag-Solitar groups, with checkable witnesses.

``commensurable`` returns a verdict with a case tag naming the branch of
the decision that fired.  ``witness`` turns a positive verdict into a chain
of concrete finite-index subgroups, and ``check_certificate`` re-derives
every link from the covering and normal-form code without consulting the
decision procedure.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .covering import (
    cycle_cover,
    gamma_k,
    index2_cycle,
    lift_labels,
    standard_subgroup,
    trivial_cover,
)
from .graph import Edge, GbsGraph, betti_number, sign_normalize
from .modular import modular_image, primitive_base
from .moves import Collapse, apply
from .normalform import normal_form_of_cover, positive_spanning_tree

__all__ = [
    "BsPair",
    "CommVerdict",
    "POSITIVE_CASES",
    "NEGATIVE_CASES",
    "StandardSubgroup",
    "Index2Cycle",
    "GammaKEmbedding",
    "CommonSolvable",
    "FreeTimesZ",
    "Certificate",
    "NotCommensurable",
    "CertificateError",
    "bs_normalize",
    "commensurable",
    "witness",
    "check_certificate",
    "verdict_to_dict",
]

POSITIVE_CASES = ("EqualPair", "SolvablePowers", "SignTwin", "CommonRatio")
NEGATIVE_CASES = ("ModularObstruction", "MixedSolvability", "DivisibilityMismatch",
                  "RatioMismatch", "RigidNonAscending")


class NotCommensurable(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class BsPair:
    m: int
    n: int
    normalized: bool = True

    def __str__(self) -> str:
        return f"BS({self.m},{self.n})"


def bs_normalize(m: int, n: int) -> BsPair:
    """Use ``BS(m,n) = BS(n,m) = BS(-m,-n)`` to reach ``1 <= |m| <= n``."""
    if m == 0 or n == 0:
        raise ValueError("Baumslag-Solitar labels must be nonzero")
    for a, b in ((m, n), (n, m), (-m, -n), (-n, -m)):
        if 1 <= abs(a) <= b:
            return BsPair(a, b)
    raise AssertionError("unreachable")  # pragma: no cover


# ---------------------------------------------------------------------------
# certificate steps

@dataclass(frozen=True)
class StandardSubgroup:
    """``BS(m,n)`` contains ``G^d_{p,q}`` with index ``d``."""
    m: int
    n: int
    d: int
    p: int
    q: int


@dataclass(frozen=True)
class Index2Cycle:
    """The index-2 subgroup of ``BS(m,n)`` given by a two-vertex cycle."""
    m: int
    n: int


@dataclass(frozen=True)
class GammaKEmbedding:
    """``G^k_{1,n}`` sits in ``G^2_{1,n}`` with index ``k - 1``."""
    k: int
    n: int
    index: int


@dataclass(frozen=True)
class CommonSolvable:
    """``BS(1, base**exponent)`` has finite index in both groups."""
    base: int
    exponent: int


@dataclass(frozen=True)
class FreeTimesZ:
    """``F_rank x Z`` has finite index ``rank - 1`` in ``F_2 x Z``."""
    rank: int


STEP_TYPES = {c.__name__: c for c in (StandardSubgroup, Index2Cycle, GammaKEmbedding, CommonSolvable, FreeTimesZ)}


@dataclass(frozen=True)
class Certificate:
    pair1: BsPair
    pair2: BsPair
    case: str
    steps: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "pair1": [self.pair1.m, self.pair1.n],
            "pair2": [self.pair2.m, self.pair2.n],
            "case": self.case,
            "steps": [{"step": type(s).__name__, **asdict(s)} for s in self.steps],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        steps = []
        for s in d["steps"]:
            s = dict(s)
            steps.append(STEP_TYPES[s.pop("step")](**s))
        return cls(BsPair(*d["pair1"]), BsPair(*d["pair2"]), d["case"], tuple(steps))


@dataclass(frozen=True)
class CommVerdict:
    pair1: BsPair
    pair2: BsPair
    commensurable: bool
    case: str
    witness: Certificate | None = None

    def __str__(self) -> str:
        word = "commensurable" if self.commensurable else "not commensurable"
        return f"{word} ({self.case})"


# ---------------------------------------------------------------------------
# decision

def _decide(p1: BsPair, p2: BsPair) -> str:
    if (p1.m, p1.n) == (p2.m, p2.n):
        return "EqualPair"
    if (abs(p1.m), p1.n) == (abs(p2.m), p2.n):
        return "SignTwin"
    one1, one2 = abs(p1.m) == 1, abs(p2.m) == 1
    if one1 and one2:
        if p1.n >= 2 and p2.n >= 2 and primitive_base(p1.n).base == primitive_base(p2.n).base:
            return "SolvablePowers"
        return "ModularObstruction"
    if one1 or one2:
        return "MixedSolvability"
    div1, div2 = p1.n % abs(p1.m) == 0, p2.n % abs(p2.m) == 0
    if div1 != div2:
        return "DivisibilityMismatch"
    if div1:
        same = Fraction(p1.n, abs(p1.m)) == Fraction(p2.n, abs(p2.m))
        return "CommonRatio" if same else "RatioMismatch"
    return "RigidNonAscending"


def commensurable(m1: int, n1: int, m2: int, n2: int, with_witness: bool = False) -> CommVerdict:
    p1, p2 = bs_normalize(m1, n1), bs_normalize(m2, n2)
    case = _decide(p1, p2)
    yes = case in POSITIVE_CASES
    cert = _build_witness(p1, p2, case) if (yes and with_witness) else None
    return CommVerdict(p1, p2, yes, case, cert)


def _chain_to_g2(p: BsPair, ratio: int) -> list:
    """Steps taking ``BS(p.m, p.n)`` (with ``p.n == |p.m| * ratio``) to ``G^2_{1,ratio}``."""
    k = abs(p.m)
    steps: list = []
    if p.m < 0:
        steps += [Index2Cycle(p.m, p.n), Index2Cycle(-p.m, p.n)]
    d, desc = standard_subgroup(k, p.n)
    steps.append(StandardSubgroup(k, p.n, d, desc.p, desc.q))
    if ratio == 1:
        steps.append(FreeTimesZ(k))
    elif k > 2:
        steps.append(GammaKEmbedding(k, ratio, k - 1))
    return steps


def _build_witness(p1: BsPair, p2: BsPair, case: str) -> Certificate:
    if case == "EqualPair":
        steps: list = []
    elif case == "SignTwin":
        steps = [Index2Cycle(p1.m, p1.n), Index2Cycle(p2.m, p2.n)]
    elif case == "SolvablePowers":
        b1, b2 = primitive_base(p1.n), primitive_base(p2.n)
        L = lcm(b1.exponent, b2.exponent)
        # a negative modulus survives an odd-degree cover; double to kill the sign
        if any(p.m < 0 and (L // b.exponent) % 2 for p, b in ((p1, b1), (p2, b2))):
            L *= 2
        steps = [CommonSolvable(b1.base, L)]
    elif case == "CommonRatio":
        ratio = p1.n // abs(p1.m)
        steps = _chain_to_g2(p1, ratio) + _chain_to_g2(p2, ratio)
    else:
        raise NotCommensurable(f"{p1} and {p2} are not commensurable ({case})")
    return Certificate(p1, p2, case, tuple(steps))


def witness(m1: int, n1: int, m2: int, n2: int) -> Certificate:
    v = commensurable(m1, n1, m2, n2)
    if not v.commensurable:
        raise NotCommensurable(f"{v.pair1} and {v.pair2} are not commensurable ({v.case})")
    return _build_witness(v.pair1, v.pair2, v.case)


# ---------------------------------------------------------------------------
# independent checker

def _fail(msg: str):
    raise CertificateError(msg)


def _collapse_tree(g: GbsGraph, tree_edges) -> GbsGraph:
    for eid in tree_edges:
        g = apply(g, Collapse(eid))
    return g


def _check_index2(s: Index2Cycle) -> GbsGraph:
    g = index2_cycle(s.m, s.n)
    if betti_number(g) != 1 or len(g.vertices) != 2:
        _fail(f"{s}: not a two-vertex cycle")
    return sign_normalize(g)


def _check_standard(s: StandardSubgroup) -> None:
    if s.d != gcd(s.m, s.n) or s.p * s.d != abs(s.m) or s.q * s.d != abs(s.n):
        _fail(f"{s}: labels do not match the index")
    base = GbsGraph(("v0",), (Edge("t", "v0", "v0", s.m, s.n),))
    sub = lift_labels(trivial_cover(s.d), s.p, s.q)
    if betti_number(sub) != s.d:
        _fail(f"{s}: wrong rank")
    if modular_image(sub) != modular_image(base):
        _fail(f"{s}: modular images differ")


def _check_gamma(s: GammaKEmbedding) -> None:
    c = gamma_k(s.k)
    if c.n_sheets != s.index or s.index != s.k - 1 or c.d != 2:
        _fail(f"{s}: wrong index")
    if betti_number(lift_labels(c, 1, s.n)) != s.k:
        _fail(f"{s}: wrong rank")
    if normal_form_of_cover(c, s.n) != normal_form_of_cover(trivial_cover(s.k), s.n):
        _fail(f"{s}: normal forms differ")


def _check_free_times_z(s: FreeTimesZ) -> None:
    if s.rank == 2:
        return
    c = gamma_k(s.rank)
    g = lift_labels(c, 1, 1)
    tree = positive_spanning_tree(c)
    g = _collapse_tree(g, [f"e{i}_{x}" for i, x, _ in tree.edges])
    if len(g.vertices) != 1 or len(g.edges) != s.rank or any((e.a, e.omega) != (1, 1) for e in g.edges):
        _fail(f"{s}: cover does not collapse to {s.rank} loops (1,1)")


def _check_solvable(s: CommonSolvable, p: BsPair) -> None:
    if abs(p.m) != 1:
        _fail(f"{p} is not solvable")
    e = 0
    x = p.n
    while x > 1 and x % s.base == 0:
        x //= s.base
        e += 1
    if x != 1 or e == 0 or s.exponent % e:
        _fail(f"{p}: {s.base}^{s.exponent} is not a power of {p.n}")
    N = s.exponent // e
    g = lift_labels(cycle_cover(N), p.m, p.n)
    g = _collapse_tree(g, [f"e0_{x}" for x in range(N - 1)])
    g = sign_normalize(g)
    (loop,) = g.edges
    if (loop.a, loop.omega) != (1, s.base ** s.exponent):
        _fail(f"{p}: degree-{N} cycle cover collapses to ({loop.a},{loop.omega})")


def _chain_end(p: BsPair, steps: list) -> tuple:
    """Walk one group's chain; returns the terminal group as a tagged tuple."""
    cur: tuple = ("BS", p.m, p.n)
    it = iter(steps)
    for s in it:
        if isinstance(s, Index2Cycle):
            nxt = next(it, None)
            if not isinstance(nxt, Index2Cycle) or ("BS", s.m, s.n) != cur:
                _fail(f"unpaired index-2 step at {cur}")
            if not _check_index2(s).same_as(_check_index2(nxt)):
                _fail(f"{s} and {nxt} differ after sign normalization")
            cur = ("BS", nxt.m, nxt.n)
        elif isinstance(s, StandardSubgroup):
            if cur != ("BS", s.m, s.n):
                _fail(f"{s} does not apply to {cur}")
            _check_standard(s)
            if s.p != 1:
                _fail(f"{s}: not a subgroup of the form G^d_(1,q)")
            cur = ("G", s.d, s.q)
        elif isinstance(s, GammaKEmbedding):
            if cur != ("G", s.k, s.n):
                _fail(f"{s} does not apply to {cur}")
            _check_gamma(s)
            cur = ("G", 2, s.n)
        elif isinstance(s, FreeTimesZ):
            if cur != ("G", s.rank, 1):
                _fail(f"{s} does not apply to {cur}")
            _check_free_times_z(s)
            cur = ("G", 2, 1)
        else:
            _fail(f"unexpected step {s}")
    return cur


def check_certificate(cert: Certificate) -> bool:
    """Verify every step; raises :class:`CertificateError` on the first bad one."""
    p1, p2 = cert.pair1, cert.pair2
    for p in (p1, p2):
        if bs_normalize(p.m, p.n) != p:
            _fail(f"{p} is not normalized")
    steps = list(cert.steps)
    if not steps:
        if (p1.m, p1.n) != (p2.m, p2.n):
            _fail("empty certificate for distinct groups")
        return True
    if all(isinstance(s, CommonSolvable) for s in steps):
        if len(steps) != 1:
            _fail("expected one common solvable subgroup")
        _check_solvable(steps[0], p1)
        _check_solvable(steps[0], p2)
        return True
    if len(steps) == 2 and all(isinstance(s, Index2Cycle) for s in steps):
        a, b = steps
        if ((a.m, a.n), (b.m, b.n)) != ((p1.m, p1.n), (p2.m, p2.n)):
            _fail("index-2 steps do not match the pairs")
        if not _check_index2(a).same_as(_check_index2(b)):
            _fail("index-2 subgroups differ after sign normalization")
        return True
    # two chains ending in G^2_{1,n}; split where the second group's chain starts
    for cut in range(1, len(steps)):
        first, second = steps[:cut], steps[cut:]
        try:
            end1 = _chain_end(p1, first)
            end2 = _chain_end(p2, second)
        except CertificateError:
            continue
        if end1 == end2 and end1[0] == "G" and end1[1] == 2:
            return True
    _fail("chains do not reach a common group G^2_(1,n)")


def verdict_to_dict(v: CommVerdict) -> dict:
    out = {
        "pair1": [v.pair1.m, v.pair1.n],
        "pair2": [v.pair2.m, v.pair2.n],
        "commensurable": v.commensurable,
        "case": v.case,
    }
    if v.witness is not None:
        out["witness"] = v.witness.to_dict()
    return out

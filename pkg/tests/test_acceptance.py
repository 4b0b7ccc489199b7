"""Acceptance suite: one PASS/FAIL line per criterion, with wall-clock timing.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are printed
even when pytest captures output.
"""
import itertools
import random
import time
from contextlib import contextmanager
from functools import lru_cache
from math import gcd

from gbs.commensurability import bs_normalize, check_certificate, commensurable, witness
from gbs.covering import covering_from_permutations, gamma_k, lift_labels, trivial_cover
from gbs.graph import betti_number
from gbs.iso import dual_graph, iso_normal_forms, iso_subgroups, residues_up_to_shift
from gbs.modular import modular_image
from gbs.moves import random_deform
from gbs.normalform import NormalForm, euclid_slide_pair, normal_form_of_cover

from conftest import random_cover

GRID = [(s * m, n) for n in range(1, 21) for m in range(1, n + 1) for s in (1, -1)]


@contextmanager
def criterion(capsys, number, title, budget=None):
    """Times the block and prints a PASS/FAIL line, then re-raises any failure."""
    t0 = time.perf_counter()
    err = None
    try:
        yield
    except Exception as exc:
        err = exc
    dt = time.perf_counter() - t0
    if err is None and budget is not None and dt > budget:
        err = AssertionError(f"took {dt:.2f}s, budget {budget}s")
    with capsys.disabled():
        status = "PASS" if err is None else "FAIL"
        extra = "" if err is None else f" -- {type(err).__name__}: {err}"
        print(f"\n{status} criterion {number}: {title} ({dt:.2f}s){extra}")
    if err is not None:
        raise err


@lru_cache(maxsize=None)
def grid_relation():
    rel = [0] * len(GRID)   # bitset rows
    verdicts = {}
    for i, (m1, n1) in enumerate(GRID):
        for j in range(i, len(GRID)):
            m2, n2 = GRID[j]
            v = commensurable(m1, n1, m2, n2)
            verdicts[i, j] = v
            if v.commensurable:
                rel[i] |= 1 << j
                rel[j] |= 1 << i
    return rel, verdicts


def _classes(rel):
    seen, classes = set(), []
    for i in range(len(GRID)):
        if i in seen:
            continue
        members = {j for j in range(len(GRID)) if rel[i] >> j & 1}
        seen |= members
        classes.append(frozenset(GRID[j] for j in members))
    return classes


def test_criterion_1_classification(capsys):
    with criterion(capsys, 1, f"commensurability is an equivalence on {len(GRID)} pairs, named classes", 60):
        rel, verdicts = grid_relation()
        for i in range(len(GRID)):
            assert rel[i] >> i & 1, f"not reflexive at {GRID[i]}"
        for i, j in itertools.product(range(len(GRID)), repeat=2):
            if i < j:
                # symmetry of the decision itself, not just of the stored table
                m1, n1 = GRID[i]
                m2, n2 = GRID[j]
                assert commensurable(m2, n2, m1, n1).commensurable == verdicts[i, j].commensurable
        # exhaustive transitivity: aRb and bRc imply aRc, i.e. row(b) is a subset of row(a)
        for i in range(len(GRID)):
            row = rel[i]
            for j in range(len(GRID)):
                if row >> j & 1:
                    assert rel[j] & ~row == 0, f"transitivity fails through {GRID[i]}, {GRID[j]}"
        classes = _classes(rel)

        def cls(m, n):
            p = bs_normalize(m, n)
            return next(c for c in classes if (p.m, p.n) in c)

        ratio2 = {(s * m, 2 * m) for m in (2, 3, 4, 5) for s in (1, -1)}
        assert ratio2 <= cls(2, 4)
        solvable = {(s, 2 ** j) for j in (1, 2, 3, 4) for s in (1, -1)}
        assert solvable <= cls(1, 2)
        assert cls(2, 3) == {(2, 3), (-2, 3)}
        assert cls(1, 2) != cls(2, 4)


def test_criterion_2_euclid_oracle(capsys):
    with criterion(capsys, 2, "modified Euclid matches gcd closed form, a<=30, b,c<=60", 5):
        for a in range(1, 31):
            for b in range(61):
                for c in range(61):
                    d = gcd(a, abs(b - c))
                    assert euclid_slide_pair(a, b, c) == (d, b % d), (a, b, c)


def test_criterion_3_figure_cover(capsys):
    with criterion(capsys, 3, "figure cover normalizes to NF(p,1,2,[0,0,1,1]) for p in 2,3,5"):
        fig = covering_from_permutations(2, 4, [[1, 2, 3, 0], [1, 0, 3, 2]])
        for p in (2, 3, 5):
            nf = normal_form_of_cover(fig, p)
            assert nf == NormalForm(p, 1, 2, (0, 0, 1, 1)), f"p={p}: {nf}"
            assert sorted((e.a, e.omega) for e in nf.graph().edges) == sorted(
                [(1, p * p), (p, p), (p, p), (1, 1), (1, 1)])


def test_criterion_4_gamma_k(capsys):
    with criterion(capsys, 4, "gamma_k cover matches the trivial k-petal cover, k=3..8, n=2..4", 10):
        for k in range(3, 9):
            for n in (2, 3, 4):
                got = normal_form_of_cover(gamma_k(k), n)
                want = normal_form_of_cover(trivial_cover(k), n)
                assert got == want, f"k={k} n={n}: {got} != {want}"
                assert iso_subgroups(gamma_k(k), n, trivial_cover(k), n), f"k={k} n={n}"


def test_criterion_5_move_invariance(capsys):
    with criterion(capsys, 5, "1000 reduced walks of 50 moves keep betti, image and dual residues", 120):
        for seed in range(1000):
            rng = random.Random(seed)
            r, l, m, k = rng.choice((2, 3)), rng.randint(1, 2), rng.randint(1, 4), rng.randint(2, 5)
            nf = NormalForm(r, l, m, tuple(rng.randrange(m) for _ in range(k - 1)))
            g = nf.graph()
            h, _ = random_deform(g, 50, seed, keep_reduced=True)
            tag = f"seed {seed}, {nf}"
            assert betti_number(h) == betti_number(g), tag
            assert modular_image(h) == modular_image(g), tag
            dg = dual_graph(h, r, l, m)   # raises if the potential is inconsistent
            assert residues_up_to_shift(dg.potential_values(), m) == residues_up_to_shift(nf.residues, m), tag


def _all_forms():
    for l in range(1, 7):
        for m in range(1, 6 // l + 1):
            for k in range(2, 5):
                for res in itertools.combinations_with_replacement(range(m), k - 1):
                    yield NormalForm(2, l, m, res)


def _oracle(a: NormalForm, b: NormalForm) -> bool:
    if a.l * a.m != b.l * b.m or a.k != b.k:
        return False
    size = a.l * a.m
    va, vb = [0] * size, [0] * size
    for p in a.residues:
        va[a.l * p] += 1
    for p in b.residues:
        vb[b.l * p] += 1
    return any(va[-c:] + va[:-c] == vb if c else va == vb for c in range(size))


def test_criterion_6_iso_oracle(capsys):
    forms = list(_all_forms())
    with criterion(capsys, 6, f"normal-form isomorphism agrees with shift oracle on {len(forms)} forms"):
        for a in forms:
            for b in forms:
                assert iso_normal_forms(a, b)[0] == _oracle(a, b), f"{a} vs {b}"
        assert iso_normal_forms(NormalForm(2, 2, 3, (0, 2)), NormalForm(2, 1, 6, (1, 5)))[0]
        assert not iso_normal_forms(NormalForm(2, 1, 2, (0, 0)), NormalForm(2, 1, 2, (0, 1)))[0]


def test_criterion_7_cover_invariants(capsys):
    with criterion(capsys, 7, "500 random covers lift with degree d in and out, betti N(d-1)+1"):
        rng = random.Random(7)
        for _ in range(500):
            d, size = rng.randint(1, 3), rng.randint(1, 8)
            c = random_cover(rng, d, size)
            g = lift_labels(c, 1, 2)
            for v in g.vertices:
                assert sum(e.source == v for e in g.edges) == d
                assert sum(e.target == v for e in g.edges) == d
            assert betti_number(g) == size * (d - 1) + 1


def test_criterion_8_witnesses(capsys):
    _, verdicts = grid_relation()
    positives = [(GRID[i], GRID[j]) for (i, j), v in verdicts.items() if v.commensurable]
    with criterion(capsys, 8, f"{len(positives)} positive grid verdicts carry checked certificates"):
        for (m1, n1), (m2, n2) in positives:
            assert check_certificate(witness(m1, n1, m2, n2)), (m1, n1, m2, n2)

import random

from hypothesis import strategies as st

from gbs.covering import covering_from_permutations, CoveringError
from gbs.normalform import NormalForm


def random_cover(rng: random.Random, d: int, n_sheets: int):
    """A uniformly drawn transitive cover; retries until the action is transitive."""
    while True:
        perms = []
        for _ in range(d):
            p = list(range(n_sheets))
            rng.shuffle(p)
            perms.append(p)
        try:
            return covering_from_permutations(d, n_sheets, perms)
        except CoveringError:
            continue


@st.composite
def covers(draw, max_d=3, max_sheets=6, min_d=1):
    d = draw(st.integers(min_d, max_d))
    n = draw(st.integers(1, max_sheets))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_cover(random.Random(seed), d, n)


@st.composite
def normal_forms(draw, bases=(2, 3), max_l=2, max_m=5, max_k=5):
    r = draw(st.sampled_from(bases))
    l = draw(st.integers(1, max_l))
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(2, max_k))
    res = draw(st.lists(st.integers(0, m - 1), min_size=k - 1, max_size=k - 1))
    return NormalForm(r, l, m, tuple(res))

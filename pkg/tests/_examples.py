"""Shared fixture graphs and random corpora used across the test modules."""

import itertools
import random

from choosability import Problem


def cycle(n, size=2):
    edges = tuple(sorted(tuple(sorted((i, (i + 1) % n))) for i in range(n)))
    return Problem(n=n, s=(size,) * n, edges=edges, name="c%d" % n)


def complete(n, size=None):
    edges = tuple(itertools.combinations(range(n), 2))
    s = (n - 1,) * n if size is None else (size,) * n
    return Problem(n=n, s=s, edges=edges, name="k%d" % n)


def path3():
    return Problem(n=3, s=(2, 2, 2), edges=((0, 1), (1, 2)), name="p3")


def fan():
    # path 1-2-3-4 plus a vertex 0 adjacent to all of it
    edges = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4))
    return Problem(n=5, s=(4, 2, 2, 2, 2), edges=edges, name="fan")


def wheel():
    # hub 0, rim cycle 1-2-3-4-5
    edges = (
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
        (1, 2), (1, 5), (2, 3), (3, 4), (4, 5),
    )
    return Problem(n=6, s=(5, 2, 2, 2, 3, 3), edges=edges, name="wheel")


def wheel_extension():
    # the wheel plus vertex 6 adjacent to 1, 2 and vertex 7 adjacent to 2, 3
    edges = (
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
        (1, 2), (1, 5), (1, 6), (2, 3), (2, 6), (2, 7), (3, 4), (3, 7), (4, 5),
    )
    return Problem(n=8, s=(5, 3, 3, 3, 2, 2, 2, 2), edges=edges, name="wheel-ext")


def random_problem(rng, n_range=(4, 8), m_cap=14, s_range=(2, 4), name=""):
    n = rng.randint(*n_range)
    max_m = min(m_cap, n * (n - 1) // 2)
    m = rng.randint(n - 1, max_m)
    edges = tuple(sorted(rng.sample(list(itertools.combinations(range(n), 2)), m)))
    s = tuple(rng.randint(*s_range) for _ in range(n))
    return Problem(n=n, s=s, edges=edges, name=name)


def coefficient_corpus(count=200, seed=20260819):
    """Problems small enough for exact oracle coefficient tables."""
    rng = random.Random(seed)
    return [
        random_problem(rng, name="rnd%d" % i)
        for i in range(count)
    ]


def agreement_corpus(count=100, seed=77):
    """Problems small enough for exhaustive choosability checks."""
    rng = random.Random(seed)
    return [
        random_problem(rng, n_range=(3, 6), m_cap=15, s_range=(1, 3), name="agr%d" % i)
        for i in range(count)
    ]

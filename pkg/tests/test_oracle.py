"""Independent orientation counting, extendability, and exhaustive checks."""

import itertools
import random

import pytest

from choosability import (
    OracleLimitError,
    PartialOrientation,
    Problem,
    brute_force_choosable,
    coefficient_table,
    color_from_pattern,
    count_bounded_orientations,
    direct_coefficient,
    extendable_to_f_orientation,
)
from choosability.oracle import AS_REFERENCE, UNORIENTED, orientable_within_budget

from _examples import complete, cycle, fan, random_problem, wheel


def test_direct_coefficient_on_even_cycle():
    assert direct_coefficient(cycle(4), (1, 1, 1, 1)) == -2


def test_direct_coefficient_vanishes_on_triangle():
    assert direct_coefficient(complete(3, 2), (1, 1, 1)) == 0


def test_direct_coefficient_single_edge():
    p = Problem(n=2, s=(2, 2), edges=((0, 1),))
    assert direct_coefficient(p, (1, 0)) == -1
    assert direct_coefficient(p, (0, 1)) == 1


def test_direct_coefficient_checks_length():
    with pytest.raises(ValueError):
        direct_coefficient(cycle(4), (1, 1, 1))


def test_direct_coefficient_degree_sum_mismatch_is_zero():
    assert direct_coefficient(cycle(4), (2, 1, 1, 1)) == 0
    assert direct_coefficient(cycle(4), (0, 1, 1, 1)) == 0


def test_table_matches_direct_everywhere():
    rng = random.Random(7)
    for i in range(10):
        p = random_problem(rng, n_range=(3, 6), m_cap=9, name="o%d" % i)
        table = coefficient_table(p)
        for f, (signed, count) in table.items():
            assert count > 0
            assert direct_coefficient(p, f) == signed
        for f in itertools.product(*(range(m + 1) for m in p.degrees())):
            if sum(f) == p.m and f not in table:
                assert direct_coefficient(p, f) == 0


def test_table_counts_sum_to_all_orientations():
    p = cycle(5)
    table = coefficient_table(p)
    assert sum(count for _, count in table.values()) == 2**p.m


def test_bipartite_orientations_share_one_sign():
    rng = random.Random(17)
    for trial in range(8):
        left = rng.randint(1, 3)
        right = rng.randint(1, 3)
        pairs = [(u, left + w) for u in range(left) for w in range(right)]
        chosen = tuple(sorted(rng.sample(pairs, rng.randint(1, len(pairs)))))
        p = Problem(
            n=left + right,
            s=(4,) * (left + right),
            edges=chosen,
            name="bip%d" % trial,
        )
        for f, (signed, count) in coefficient_table(p).items():
            assert abs(signed) == count


@pytest.mark.parametrize("n, expected", [(3, 2), (4, 32), (5, 704)])
def test_complete_graph_bounded_orientations(n, expected):
    p = complete(n)
    count = count_bounded_orientations(p, [n - 2] * n)
    assert count == expected
    assert count == 2**p.m * (2**(n - 1) - n) // 2**(n - 1)


def test_extendable_on_triangle():
    p = complete(3, 2)
    empty = PartialOrientation.empty(p)
    assert extendable_to_f_orientation(p, empty, (1, 1, 1))
    assert not extendable_to_f_orientation(p, empty, (2, 1, 1))
    fixed = PartialOrientation([AS_REFERENCE, UNORIENTED, UNORIENTED])
    assert extendable_to_f_orientation(p, fixed, (1, 1, 1))


def test_zero_coefficient_iff_unreachable_outdegrees():
    rng = random.Random(27)
    for i in range(8):
        p = random_problem(rng, n_range=(3, 6), m_cap=9, name="x%d" % i)
        empty = PartialOrientation.empty(p)
        caps = [min(size, p.m) for size in p.degrees()]
        for f in itertools.product(*(range(c + 1) for c in caps)):
            if sum(f) != p.m:
                continue
            if not extendable_to_f_orientation(p, empty, f):
                assert direct_coefficient(p, f) == 0


def test_orientable_within_budget():
    edges = [(0, 1), (1, 2)]
    assert orientable_within_budget(edges, {0: 1, 1: 1, 2: 0})
    assert not orientable_within_budget(edges, {0: 0, 1: 1, 2: 0})


def test_color_from_pattern_rejects_bad_triangle_lists():
    assert color_from_pattern(complete(3, 2), [((1, 1, 1), 2)]) is None


def test_color_from_pattern_colors_even_cycle():
    p = cycle(4)
    coloring = color_from_pattern(p, [((1, 1, 1, 1), 2)])
    assert coloring is not None
    for u, v in p.edges:
        assert coloring[u] != coloring[v]


def test_color_from_pattern_on_fan_and_wheel():
    bad_fan = [((1, 1, 1, 0, 0), 2), ((1, 0, 0, 1, 1), 2)]
    assert color_from_pattern(fan(), bad_fan) is None
    wheel_pattern = [((1, 1, 1, 1, 0, 0), 2), ((1, 0, 0, 0, 1, 1), 3)]
    coloring = color_from_pattern(wheel(), wheel_pattern)
    assert coloring is not None
    for u, v in wheel().edges:
        assert coloring[u] != coloring[v]


def test_color_from_pattern_respects_lists():
    p = cycle(4)
    pattern = [((1, 1, 0, 0), 1), ((0, 0, 1, 1), 1), ((1, 0, 1, 0), 1), ((0, 1, 0, 1), 1)]
    coloring = color_from_pattern(p, pattern)
    assert coloring is not None
    vectors = [vec for vec, mult in pattern for _ in range(mult)]
    for v, color in enumerate(coloring):
        assert vectors[color][v] == 1


def test_color_from_pattern_agrees_with_product_search():
    rng = random.Random(37)
    for i in range(12):
        p = random_problem(rng, n_range=(2, 5), m_cap=7, s_range=(1, 2), name="cp%d" % i)
        vectors = [
            tuple(rng.randint(0, 1) for _ in range(p.n)) for _ in range(rng.randint(1, 4))
        ]
        vectors = [vec for vec in vectors if any(vec)]
        if not vectors:
            continue
        counts = {vec: vectors.count(vec) for vec in set(vectors)}
        pattern = sorted(counts.items())
        lists = [
            [
                color
                for color, vec in enumerate(
                    v for v, mult in pattern for _ in range(mult)
                )
                if vec[u]
            ]
            for u in range(p.n)
        ]
        exists = any(
            all(pick[u] != pick[v] for u, v in p.edges)
            for pick in itertools.product(*lists)
        ) if all(lists) else False
        got = color_from_pattern(p, pattern)
        assert (got is not None) == exists


def test_brute_force_on_small_examples():
    bad, witness = brute_force_choosable(cycle(5))
    assert bad is False
    assert witness == (((1, 1, 1, 1, 1), 2),)
    good, none_witness = brute_force_choosable(cycle(4))
    assert good is True and none_witness is None
    bad_k3, k3_witness = brute_force_choosable(complete(3, 2))
    assert bad_k3 is False
    assert k3_witness == (((1, 1, 1), 2),)


def test_brute_force_refuses_large_inputs():
    with pytest.raises(OracleLimitError):
        brute_force_choosable(cycle(9))
    with pytest.raises(OracleLimitError):
        brute_force_choosable(complete(6, 5))


def test_brute_force_witness_vectors_are_characteristic():
    spoked = Problem(
        n=4, s=(1, 1, 2, 2), edges=((0, 1), (1, 2), (2, 3)), name="p4"
    )
    verdict, witness = brute_force_choosable(spoked)
    if not verdict:
        for vec, mult in witness:
            assert mult >= 1
            assert any(vec)

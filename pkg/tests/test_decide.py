"""Constraint collection, feasible vectors, patterns, and the pipeline."""

import itertools

import pytest

from choosability import (
    CHOOSABLE,
    NOT_CHOOSABLE,
    UNKNOWN,
    CoefficientOverflow,
    ConstraintBasis,
    FeasibleSearchTooLarge,
    PatternCapExceeded,
    Problem,
    collect_constraints,
    enumerate_assignment_patterns,
    enumerate_feasible_vectors,
    find_deletable_edges,
    pipeline_decide,
    standard_alon_tarsi,
)
from choosability import decide as decide_module

from _examples import complete, cycle, fan, wheel, wheel_extension


def feasible_set(p):
    basis, witness, _ = collect_constraints(p)
    assert witness is None
    return basis, set(enumerate_feasible_vectors(basis, p.n))


# ------------------------------------------------------------- the basis

def test_basis_keeps_independent_rows_only():
    basis = ConstraintBasis(3)
    assert basis.add((0, 0, 0), (1, -1, 0))
    assert not basis.add((0, 0, 0), (-2, 2, 0))
    assert basis.add((0, 0, 0), (0, 1, -1))
    assert basis.rank == 2
    assert not basis.add((0, 0, 0), (1, 0, -1))
    assert not basis.add((0, 0, 0), (0, 0, 0))


def test_basis_satisfaction_is_exact():
    basis = ConstraintBasis(2)
    basis.add((0, 0), (2**40, -(2**40)))
    assert basis.satisfied_by((1, 1))
    assert basis.satisfied_by((0, 0))
    assert not basis.satisfied_by((1, 0))


def test_standard_witness_on_even_cycle():
    witness, _ = standard_alon_tarsi(cycle(4))
    assert witness == ((1, 1, 1, 1), -2)


def test_standard_has_no_witness_on_odd_cycle():
    witness, _ = standard_alon_tarsi(cycle(5))
    assert witness is None


def test_collect_constraints_short_circuits_on_witness():
    basis, witness, _ = collect_constraints(cycle(4))
    assert witness == ((1, 1, 1, 1), -2)


def test_triangle_constraints_pin_equal_endpoints():
    basis, feasible = feasible_set(complete(3, 2))
    assert basis.rank == 2
    assert [(r.base, r.row) for r in basis.rows] == [
        ((0, 1, 1), (0, -1, 1)),
        ((1, 0, 1), (1, 0, -1)),
    ]
    assert feasible == {(0, 0, 0), (1, 1, 1)}


def test_odd_cycle_feasible_vectors():
    basis, feasible = feasible_set(cycle(5))
    assert basis.rank == 4
    assert feasible == {(0, 0, 0, 0, 0), (1, 1, 1, 1, 1)}


def test_fan_feasible_vectors_and_deletable_edge():
    p = fan()
    basis, feasible = feasible_set(p)
    assert basis.rank == 3
    assert feasible == {
        (0, 0, 0, 0, 0),
        (1, 1, 1, 0, 0),
        (1, 0, 0, 1, 1),
    }
    nonzero = [chi for chi in feasible if any(chi)]
    assert find_deletable_edges(nonzero, p) == [(2, 3)]


def test_wheel_feasible_vectors_and_deletable_edges():
    p = wheel()
    basis, feasible = feasible_set(p)
    assert {chi for chi in feasible if any(chi)} == {
        (1, 1, 1, 1, 0, 0),
        (1, 0, 0, 0, 1, 1),
    }
    nonzero = [chi for chi in feasible if any(chi)]
    assert set(find_deletable_edges(nonzero, p)) == {(1, 5), (3, 4)}


def test_no_deletable_edges_on_odd_cycle():
    p = cycle(5)
    assert find_deletable_edges([(1, 1, 1, 1, 1)], p) == []


def test_feasible_enumeration_without_rows_is_everything():
    basis = ConstraintBasis(2)
    assert set(enumerate_feasible_vectors(basis, 2)) == {
        (0, 0), (0, 1), (1, 0), (1, 1)
    }


def test_feasible_enumeration_rejects_large_n():
    with pytest.raises(FeasibleSearchTooLarge):
        enumerate_feasible_vectors(ConstraintBasis(30), 30, cap=25)


def test_feasible_enumeration_handles_huge_coefficients():
    basis = ConstraintBasis(2)
    basis.add((0, 0), (2**61, -(2**61)))
    assert set(enumerate_feasible_vectors(basis, 2)) == {(0, 0), (1, 1)}


def test_full_rank_basis_leaves_only_zero():
    basis = ConstraintBasis(2)
    basis.add((0, 0), (1, 0))
    basis.add((0, 0), (0, 1))
    assert enumerate_feasible_vectors(basis, 2) == [(0, 0)]


# ------------------------------------------------------------- patterns

def test_fan_pattern_is_unique():
    patterns = enumerate_assignment_patterns(
        [(1, 1, 1, 0, 0), (1, 0, 0, 1, 1)], (4, 2, 2, 2, 2)
    )
    assert patterns == [
        (((1, 1, 1, 0, 0), 2), ((1, 0, 0, 1, 1), 2)),
    ]


def test_wheel_pattern_is_unique():
    patterns = enumerate_assignment_patterns(
        [(1, 1, 1, 1, 0, 0), (1, 0, 0, 0, 1, 1)], (5, 2, 2, 2, 3, 3)
    )
    assert patterns == [
        (((1, 1, 1, 1, 0, 0), 2), ((1, 0, 0, 0, 1, 1), 3)),
    ]


def test_no_composition_when_sizes_cannot_be_met():
    patterns = enumerate_assignment_patterns(
        [(1, 1, 1, 1, 0, 0, 1, 1)], (5, 3, 3, 3, 2, 2, 2, 2)
    )
    assert patterns == []


def test_pattern_cap_is_enforced():
    vectors = [
        chi for chi in itertools.product((0, 1), repeat=3) if any(chi)
    ]
    with pytest.raises(PatternCapExceeded):
        enumerate_assignment_patterns(vectors, (2, 2, 2), cap=1)
    many = enumerate_assignment_patterns(vectors, (2, 2, 2), cap=100)
    assert len(many) > 1


# ------------------------------------------------------------- pipeline

def test_pipeline_odd_cycle_not_choosable():
    verdict = pipeline_decide(cycle(5))
    assert verdict.status == NOT_CHOOSABLE
    assert verdict.certificate == {
        "kind": "BadAssignment",
        "pattern": [{"vector": [1, 1, 1, 1, 1], "multiplicity": 2}],
    }


def test_pipeline_fan_not_choosable():
    verdict = pipeline_decide(fan())
    assert verdict.status == NOT_CHOOSABLE
    assert verdict.certificate == {
        "kind": "BadAssignment",
        "pattern": [
            {"vector": [1, 1, 1, 0, 0], "multiplicity": 2},
            {"vector": [1, 0, 0, 1, 1], "multiplicity": 2},
        ],
    }
    assert verdict.details["deletable_edges"] == [[2, 3]]


def test_pipeline_wheel_choosable_by_coloring_the_unique_pattern():
    verdict = pipeline_decide(wheel())
    assert verdict.status == CHOOSABLE
    assert verdict.certificate == {"kind": "AllPatternsColorable", "count": 1}
    assert verdict.details["deletable_edges"] == [[1, 5], [3, 4]]


def test_pipeline_wheel_extension_has_no_composition():
    verdict = pipeline_decide(wheel_extension())
    assert verdict.status == CHOOSABLE
    assert verdict.certificate == {"kind": "NoComposition"}


def test_pipeline_even_cycle_whispers_standard_witness():
    verdict = pipeline_decide(cycle(4))
    assert verdict.status == CHOOSABLE
    assert verdict.certificate == {
        "kind": "WitnessMonomial",
        "f": [1, 1, 1, 1],
        "coefficient": -2,
    }


def test_pipeline_extended_only_still_finds_witness():
    verdict = pipeline_decide(cycle(4), run_standard=False)
    assert verdict.status == CHOOSABLE
    assert verdict.certificate["kind"] == "WitnessMonomial"
    assert verdict.certificate["f"] == [1, 1, 1, 1]


def test_pipeline_edgeless_graph():
    p = Problem(n=1, s=(1,), edges=())
    verdict = pipeline_decide(p)
    assert verdict.status == CHOOSABLE
    assert verdict.certificate == {
        "kind": "WitnessMonomial",
        "f": [0],
        "coefficient": 1,
    }


def test_pipeline_single_edge_equal_singletons():
    p = Problem(n=2, s=(1, 1), edges=((0, 1),))
    verdict = pipeline_decide(p)
    assert verdict.status == NOT_CHOOSABLE
    assert verdict.certificate["pattern"] == [
        {"vector": [1, 1], "multiplicity": 1}
    ]


def test_pipeline_triangle_with_singleton_lists_is_unknown():
    verdict = pipeline_decide(complete(3, 1))
    assert verdict.status == UNKNOWN
    assert verdict.reason == "NoConstraints"


def test_pipeline_pattern_cap_without_deletable_edges():
    p = Problem(n=3, s=(1, 1, 2), edges=((0, 1), (1, 2)), name="p112")
    full = pipeline_decide(p)
    assert full.status == NOT_CHOOSABLE
    capped = pipeline_decide(p, pattern_cap=1)
    assert capped.status == UNKNOWN
    assert capped.reason == "TooManyPatterns"
    assert capped.details["deletable_edges"] == []


def test_pipeline_feasible_cap_gives_unknown():
    verdict = pipeline_decide(cycle(5), feasible_cap=4)
    assert verdict.status == UNKNOWN
    assert verdict.reason == "FeasibleSearchTooLarge"


def test_pipeline_overflow_is_reported(monkeypatch):
    def boom(*args, **kwargs):
        raise CoefficientOverflow("forced")

    monkeypatch.setattr(decide_module, "run_truncated_product", boom)
    verdict = pipeline_decide(cycle(4))
    assert verdict.status == UNKNOWN
    assert verdict.reason == "Overflow"


def test_pipeline_reports_no_feasible_vectors(monkeypatch):
    basis = ConstraintBasis(2)
    basis.add((0, 0), (1, 0))
    basis.add((0, 0), (0, 1))

    def fake_collect(p, ordering, branch_limit):
        from choosability.poly import RunStats

        return basis, None, RunStats()

    monkeypatch.setattr(decide_module, "collect_constraints", fake_collect)
    p = Problem(n=2, s=(1, 1), edges=((0, 1),))
    verdict = pipeline_decide(p, run_standard=False)
    assert verdict.status == CHOOSABLE
    assert verdict.certificate == {"kind": "NoFeasibleVectors", "rank": 2}


def _force_first_pattern_call_over_cap(monkeypatch):
    real = decide_module.enumerate_assignment_patterns
    state = {"first": True}

    def forced(vectors, s, cap=100):
        if state["first"]:
            state["first"] = False
            raise PatternCapExceeded(cap)
        return real(vectors, s, cap)

    monkeypatch.setattr(decide_module, "enumerate_assignment_patterns", forced)


def test_pipeline_edge_deletion_restart_choosable(monkeypatch):
    _force_first_pattern_call_over_cap(monkeypatch)
    verdict = pipeline_decide(wheel())
    assert verdict.status == CHOOSABLE
    assert verdict.certificate["kind"] == "EdgeDeletion"
    assert sorted(map(tuple, verdict.certificate["edges"])) == [(1, 5), (3, 4)]
    assert verdict.details["inner"]["status"] == CHOOSABLE


def test_pipeline_edge_deletion_restart_bad_assignment(monkeypatch):
    _force_first_pattern_call_over_cap(monkeypatch)
    verdict = pipeline_decide(fan())
    assert verdict.status == NOT_CHOOSABLE
    assert verdict.certificate["kind"] == "BadAssignment"
    pattern = [
        (tuple(entry["vector"]), entry["multiplicity"])
        for entry in verdict.certificate["pattern"]
    ]
    from choosability import color_from_pattern

    assert color_from_pattern(fan(), pattern) is None


def test_pipeline_verdict_invariant_under_branch_limits():
    for p in (cycle(5), cycle(4), fan(), wheel(), wheel_extension()):
        reference = pipeline_decide(p, branch_limit=10**6)
        for limit in (1, 8):
            other = pipeline_decide(p, branch_limit=limit)
            assert (other.status, other.certificate) == (
                reference.status,
                reference.certificate,
            )

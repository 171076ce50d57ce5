"""Decision procedures built on truncated product runs.

The standard test looks for any surviving monomial of full degree; its
existence certifies choosability.  The extended path keeps tight-marker
terms, turns every group with a common degree base into a linear
constraint on the 0/1 characteristic vectors of colors, and works through
feasible vectors, deletable edges, and candidate list assignments, which
are finally handed to the coloring search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .graphs import Problem, VertexOrdering, order_vertices, DEFAULT_HEURISTIC
from .poly import (
    CoefficientOverflow,
    RunStats,
    run_truncated_product,
    split_final_terms,
    unpack_terms,
)

P_FIELD = (1 << 31) - 1

CHOOSABLE = "CHOOSABLE"
NOT_CHOOSABLE = "NOT_CHOOSABLE"
UNKNOWN = "UNKNOWN"


class FeasibleSearchTooLarge(Exception):
    """The 0/1 solution scan would exceed the vertex cap."""


class PatternCapExceeded(Exception):
    """More candidate assignments exist than the configured cap."""

    def __init__(self, cap):
        super().__init__("more than %d assignment patterns" % cap)
        self.cap = cap


@dataclass(frozen=True)
class ConstraintRow:
    """One linear constraint: sum_v row[v] * chi(v) = 0.

    base is the shared degree vector of the tight monomials that produced
    the row; row[v] is the coefficient of the monomial tight at v.
    """

    base: tuple[int, ...]
    row: tuple[int, ...]


class ConstraintBasis:
    """Retained independent constraint rows.

    Rows are kept as exact integer vectors; only the independence test
    runs over the prime field, so a dependent-looking row is dropped but
    every retained row is exact.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[ConstraintRow] = []
        self._echelon: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, base, row) -> bool:
        """Retain the row if it is independent of the current rows."""
        vec = [int(x) % P_FIELD for x in row]
        for pivot, evec in self._echelon:
            c = vec[pivot]
            if c:
                vec = [(a - c * b) % P_FIELD for a, b in zip(vec, evec)]
        pivot = next((i for i, x in enumerate(vec) if x), -1)
        if pivot < 0:
            return False
        inv = pow(vec[pivot], P_FIELD - 2, P_FIELD)
        vec = [a * inv % P_FIELD for a in vec]
        self._echelon.append((pivot, vec))
        self.rows.append(ConstraintRow(tuple(base), tuple(int(x) for x in row)))
        return True

    def satisfied_by(self, chi) -> bool:
        """Exact integer check of every retained row."""
        return all(
            sum(r * c for r, c in zip(cr.row, chi)) == 0 for cr in self.rows
        )


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: dict | None = None
    reason: str | None = None
    details: dict = field(default_factory=dict)


class _FirstTermSink:
    """Stops the run at the first delivery, keeping its largest term.

    Branches arrive largest processed prefix first and batches are sorted
    ascending, so the last term of the first delivery is the largest
    surviving monomial of the whole run, whatever the branch limit.
    """

    def __init__(self):
        self.witness = None

    def __call__(self, layout, terms):
        degrees, _, coeffs = unpack_terms(layout, terms)
        self.witness = (tuple(int(x) for x in degrees[-1]), int(coeffs[-1]))
        return True


class _ConstraintSink:
    """Accumulates constraint rows; stops on a full-degree witness or
    once the rows already pin every characteristic vector to zero."""

    def __init__(self, n: int):
        self.basis = ConstraintBasis(n)
        self.witness = None

    def __call__(self, layout, terms):
        plain, groups = split_final_terms(layout, terms)
        if len(plain):
            # last = largest key; invariant across branch limits
            degrees, _, coeffs = unpack_terms(layout, plain)
            self.witness = (tuple(int(x) for x in degrees[-1]), int(coeffs[-1]))
            return True
        n = layout.problem.n
        for group in groups:
            degrees, markers, coeffs = unpack_terms(layout, group)
            row = [0] * n
            for k in range(len(coeffs)):
                row[int(markers[k])] = int(coeffs[k])
            self.basis.add(tuple(int(x) for x in degrees[0]), row)
            if self.basis.rank == n:
                return True
        return False


def standard_alon_tarsi(
    p: Problem,
    ordering: VertexOrdering | None = None,
    branch_limit: int | None = 100000,
    prune_matching: bool = False,
):
    """Largest surviving full-degree monomial, as (f, coefficient), or None."""
    if ordering is None:
        ordering = order_vertices(p, DEFAULT_HEURISTIC)
    sink = _FirstTermSink()
    _, stats = run_truncated_product(
        p,
        ordering,
        mode="standard",
        branch_limit=branch_limit,
        sink=sink,
        prune_matching=prune_matching,
    )
    return sink.witness, stats


def collect_constraints(
    p: Problem,
    ordering: VertexOrdering | None = None,
    branch_limit: int | None = 100000,
):
    """Run the tight-marker product and gather independent constraint rows.

    Returns (basis, witness, stats); witness is a full-degree monomial
    (f, coefficient) that makes the rows unnecessary, or None.
    """
    if ordering is None:
        ordering = order_vertices(p, DEFAULT_HEURISTIC)
    sink = _ConstraintSink(p.n)
    _, stats = run_truncated_product(
        p, ordering, mode="extended", branch_limit=branch_limit, sink=sink
    )
    return sink.basis, sink.witness, stats


def enumerate_feasible_vectors(basis: ConstraintBasis, n: int, cap: int = 25):
    """All chi in {0,1}^n satisfying every retained row exactly.

    Exhaustive over the 2^n candidates (chunked); raises
    FeasibleSearchTooLarge when n exceeds the cap.
    """
    if n > cap:
        raise FeasibleSearchTooLarge("n=%d exceeds the cap %d" % (n, cap))
    rows = [cr.row for cr in basis.rows]
    if not rows:
        return [
            tuple((mask >> v) & 1 for v in range(n)) for mask in range(1 << n)
        ]
    biggest = max(abs(x) for row in rows for x in row)
    if biggest > (2**62) // max(n, 1):
        # keep the arithmetic exact when int64 dot products could wrap
        out = []
        for mask in range(1 << n):
            chi = tuple((mask >> v) & 1 for v in range(n))
            if all(sum(r * c for r, c in zip(row, chi)) == 0 for row in rows):
                out.append(chi)
        return out
    mat = np.array(rows, dtype=np.int64).T  # (n, r)
    shifts = np.arange(n, dtype=np.int64)
    out = []
    chunk = 1 << 20
    for lo in range(0, 1 << n, chunk):
        hi = min(lo + chunk, 1 << n)
        masks = np.arange(lo, hi, dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int64)
        good = masks[(bits @ mat == 0).all(axis=1)]
        for mask in good:
            out.append(tuple(int((int(mask) >> v) & 1) for v in range(n)))
    return out


def find_deletable_edges(vectors, p: Problem):
    """Edges whose endpoints are never both covered by a feasible vector."""
    out = []
    for u, v in p.edges:
        if not any(chi[u] and chi[v] for chi in vectors):
            out.append((u, v))
    return out


def enumerate_assignment_patterns(vectors, s, cap: int = 100):
    """Multisets of nonzero vectors with componentwise sum equal to s.

    Vectors are scanned densest first with multiplicities counted down, so
    the output order is deterministic.  Raises PatternCapExceeded as soon
    as more than cap patterns exist.
    """
    n = len(s)
    cand = sorted(
        {tuple(v) for v in vectors if any(v)},
        key=lambda vec: (-sum(vec), tuple(-x for x in vec)),
    )
    residual = list(s)
    chosen = []
    found = []

    def coverable(start: int) -> bool:
        for v in range(n):
            if residual[v] and not any(cand[i][v] for i in range(start, len(cand))):
                return False
        return True

    def search(start: int):
        if all(r == 0 for r in residual):
            found.append(tuple((vec, mult) for vec, mult in chosen if mult))
            if len(found) > cap:
                raise PatternCapExceeded(cap)
            return
        if start == len(cand) or not coverable(start):
            return
        vec = cand[start]
        top = min(residual[v] for v in range(n) if vec[v])
        for mult in range(top, -1, -1):
            for v in range(n):
                residual[v] -= mult * vec[v]
            chosen.append((vec, mult))
            search(start + 1)
            chosen.pop()
            for v in range(n):
                residual[v] += mult * vec[v]

    search(0)
    return found


def _pattern_json(pattern):
    return [
        {"vector": list(vec), "multiplicity": int(mult)} for vec, mult in pattern
    ]


def _stats_json(stats: RunStats):
    return {
        "total_monomials": stats.total_monomials,
        "peak_terms": stats.peak_terms,
        "branches": stats.branches,
    }


def pipeline_decide(
    p: Problem,
    heuristic: str = DEFAULT_HEURISTIC,
    branch_limit: int | None = 100000,
    pattern_cap: int = 100,
    feasible_cap: int = 25,
    prune_matching: bool = False,
    run_standard: bool = True,
) -> Verdict:
    """Full decision pipeline.

    Stages: the standard test; constraint collection (with its own
    witness short-circuit); feasible-vector enumeration; deletable-edge
    detection; assignment-pattern enumeration; coloring each candidate
    assignment.  When the pattern cap is hit and deletable edges exist,
    those edges are removed and the pipeline restarts on the reduced
    problem (at most once per edge).  Any stage that cannot finish
    downgrades the verdict to UNKNOWN with the partial findings kept.
    run_standard=False skips the first stage.
    """
    details: dict = {"deleted_edges": []}
    knobs = dict(
        heuristic=heuristic,
        branch_limit=branch_limit,
        pattern_cap=pattern_cap,
        feasible_cap=feasible_cap,
        prune_matching=prune_matching,
        run_standard=run_standard,
    )
    ordering = order_vertices(p, heuristic)

    try:
        if run_standard:
            witness, stats = standard_alon_tarsi(
                p, ordering, branch_limit, prune_matching
            )
            details["standard_stats"] = _stats_json(stats)
            if witness is not None:
                f, coeff = witness
                return Verdict(
                    CHOOSABLE,
                    {"kind": "WitnessMonomial", "f": list(f), "coefficient": coeff},
                    details=details,
                )
        basis, witness, stats = collect_constraints(p, ordering, branch_limit)
        details["extended_stats"] = _stats_json(stats)
    except CoefficientOverflow as exc:
        details["overflow"] = str(exc)
        return Verdict(UNKNOWN, reason="Overflow", details=details)

    if witness is not None:
        f, coeff = witness
        return Verdict(
            CHOOSABLE,
            {"kind": "WitnessMonomial", "f": list(f), "coefficient": coeff},
            details=details,
        )

    details["constraint_rank"] = basis.rank
    if basis.rank == 0:
        return Verdict(UNKNOWN, reason="NoConstraints", details=details)

    try:
        vectors = enumerate_feasible_vectors(basis, p.n, feasible_cap)
    except FeasibleSearchTooLarge:
        return Verdict(UNKNOWN, reason="FeasibleSearchTooLarge", details=details)
    nonzero = [chi for chi in vectors if any(chi)]
    details["feasible_vectors"] = len(vectors)
    if not nonzero:
        return Verdict(
            CHOOSABLE,
            {"kind": "NoFeasibleVectors", "rank": basis.rank},
            details=details,
        )

    deletable = find_deletable_edges(nonzero, p)
    details["deletable_edges"] = [list(e) for e in deletable]

    try:
        patterns = enumerate_assignment_patterns(nonzero, p.s, pattern_cap)
    except PatternCapExceeded:
        # fall back to deleting never-shared edges and deciding the
        # reduced problem; sound in both directions (a bad assignment
        # for the subgraph stays bad, and colorability transfers back)
        if not deletable:
            return Verdict(UNKNOWN, reason="TooManyPatterns", details=details)
        reduced = p.without_edges(deletable)
        inner = pipeline_decide(reduced, **knobs)
        details["deleted_edges"] = [list(e) for e in deletable]
        details["inner"] = {
            "status": inner.status,
            "certificate": inner.certificate,
            "reason": inner.reason,
        }
        if inner.status == CHOOSABLE:
            return Verdict(
                CHOOSABLE,
                {
                    "kind": "EdgeDeletion",
                    "edges": [list(e) for e in deletable],
                    "inner": inner.certificate,
                },
                details=details,
            )
        if inner.status == NOT_CHOOSABLE:
            pattern = tuple(
                (tuple(entry["vector"]), entry["multiplicity"])
                for entry in inner.certificate["pattern"]
            )
            if oracle.color_from_pattern(p, pattern) is None:
                return Verdict(
                    NOT_CHOOSABLE,
                    {"kind": "BadAssignment", "pattern": _pattern_json(pattern)},
                    details=details,
                )
        return Verdict(
            UNKNOWN,
            reason=inner.reason or "UnverifiedTransfer",
            details=details,
        )
    details["pattern_count"] = len(patterns)
    if not patterns:
        return Verdict(CHOOSABLE, {"kind": "NoComposition"}, details=details)
    for pattern in patterns:
        if oracle.color_from_pattern(p, pattern) is None:
            return Verdict(
                NOT_CHOOSABLE,
                {"kind": "BadAssignment", "pattern": _pattern_json(pattern)},
                details=details,
            )
    return Verdict(
        CHOOSABLE,
        {"kind": "AllPatternsColorable", "count": len(patterns)},
        details=details,
    )

"""Packed degree vectors, sorted term lists, and truncated products.

A polynomial is held as a strictly sorted list of terms.  Every term packs
its degree vector into fixed-width bit fields of one or more 64-bit words,
laid out so that comparing the word sequences big-endian equals comparing
the degree vectors lexicographically in processing order.  One extra field
at the end holds an optional tight marker: code 0 means no marker, code
i+1 means the vertex at processing position i.  A marked term with packed
degrees f' stands for the monomial x^(f' + 1_v) where v is the marked
vertex and f'(v) = s(v) - 1; an unmarked term stands for x^f'.

Processing an edge multiplies the polynomial by (x_head - x_tail) and
truncates: any degree reaching s(v), beyond the single marked coordinate,
drops the term.  The driver multiplies edges in per-vertex turns and, when
the live term count exceeds the branch limit, splits the list by the
degrees of the already-processed vertices and recurses on each part; parts
are explored from the lexicographically largest prefix down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graphs import Problem, VertexOrdering


class CoefficientOverflow(ArithmeticError):
    """A coefficient left the signed 64-bit range during a merge."""


class DegreeLayout:
    """Bit-field layout for packed degree vectors under one ordering."""

    def __init__(self, problem: Problem, ordering: VertexOrdering):
        if len(ordering.order) != problem.n:
            raise ValueError("ordering size does not match problem")
        self.problem = problem
        self.ordering = ordering
        n = problem.n
        order = ordering.order
        self.bits = max(problem.s).bit_length()
        per_word = 64 // self.bits
        self.field_mask = (1 << self.bits) - 1

        # field for processing position i, most significant field first
        self.pos_word = [i // per_word for i in range(n)]
        self.pos_shift = [64 - self.bits * ((i % per_word) + 1) for i in range(n)]

        self.marker_bits = n.bit_length()
        last_word = self.pos_word[n - 1]
        used = 64 - self.pos_shift[n - 1]
        if used + self.marker_bits <= 64:
            self.marker_word = last_word
            self.marker_shift = used + self.marker_bits
        else:
            self.marker_word = last_word + 1
            self.marker_shift = self.marker_bits
        self.marker_shift = 64 - self.marker_shift
        self.marker_mask = (1 << self.marker_bits) - 1
        self.words = self.marker_word + 1

        # original-vertex views of the per-position tables
        self.v_word = [0] * n
        self.v_shift = [0] * n
        self.v_code = [0] * n
        for i, v in enumerate(order):
            self.v_word[v] = self.pos_word[i]
            self.v_shift[v] = self.pos_shift[i]
            self.v_code[v] = i + 1

        # prefix_masks[i] keeps the degree fields of positions 0..i
        self.prefix_masks = np.zeros((n, self.words), dtype=np.uint64)
        acc = [0] * self.words
        for i in range(n):
            acc[self.pos_word[i]] |= self.field_mask << self.pos_shift[i]
            self.prefix_masks[i] = [np.uint64(x) for x in acc]

        # all degree fields, marker cleared: the tight-group key
        base = acc[:]
        self.fbase_mask = np.array([np.uint64(x) for x in base], dtype=np.uint64)

    def pack(self, f) -> np.ndarray:
        """Pack a degree vector given in original vertex indexing."""
        words = [0] * self.words
        for v, fv in enumerate(f):
            if not (0 <= fv <= self.problem.s[v]):
                raise ValueError("degree %d out of range at vertex %d" % (fv, v))
            words[self.v_word[v]] |= fv << self.v_shift[v]
        return np.array(words, dtype=np.uint64)

    def unpack(self, key) -> tuple[int, ...]:
        return tuple(
            int((int(key[self.v_word[v]]) >> self.v_shift[v]) & self.field_mask)
            for v in range(self.problem.n)
        )

    def marker_of(self, key):
        code = (int(key[self.marker_word]) >> self.marker_shift) & self.marker_mask
        return None if code == 0 else self.ordering.order[code - 1]


@dataclass
class TermList:
    """Strictly sorted term array: packed keys plus nonzero coefficients."""

    keys: np.ndarray
    coeffs: np.ndarray

    def __len__(self):
        return len(self.coeffs)

    @classmethod
    def unit(cls, layout: DegreeLayout) -> "TermList":
        return cls(
            np.zeros((1, layout.words), dtype=np.uint64),
            np.ones(1, dtype=np.int64),
        )

    def is_strictly_sorted(self) -> bool:
        if len(self) < 2:
            return True
        prev = self.keys[:-1]
        cur = self.keys[1:]
        greater = np.zeros(len(self) - 1, dtype=bool)
        decided = np.zeros(len(self) - 1, dtype=bool)
        for w in range(self.keys.shape[1]):
            greater |= ~decided & (cur[:, w] > prev[:, w])
            decided |= cur[:, w] != prev[:, w]
        return bool((greater & decided).all() and decided.all())


def unpack_terms(layout: DegreeLayout, terms: TermList):
    """Final terms as (degrees, markers, coeffs) in original indexing.

    degrees is an int64 array of shape (terms, n); markers holds the marked
    original vertex per term, or -1 when unmarked.
    """
    n = layout.problem.n
    count = len(terms)
    degrees = np.empty((count, n), dtype=np.int64)
    for v in range(n):
        col = (terms.keys[:, layout.v_word[v]] >> np.uint64(layout.v_shift[v]))
        degrees[:, v] = (col & np.uint64(layout.field_mask)).astype(np.int64)
    codes = (
        terms.keys[:, layout.marker_word] >> np.uint64(layout.marker_shift)
    ) & np.uint64(layout.marker_mask)
    codes = codes.astype(np.int64)
    order = np.asarray(layout.ordering.order, dtype=np.int64)
    markers = np.where(codes == 0, -1, order[np.maximum(codes - 1, 0)])
    return degrees, markers, terms.coeffs.copy()


def iter_terms(layout: DegreeLayout, terms: TermList):
    """Yield (degree tuple, marker vertex or None, coefficient)."""
    degrees, markers, coeffs = unpack_terms(layout, terms)
    for i in range(len(coeffs)):
        marker = None if markers[i] < 0 else int(markers[i])
        yield tuple(int(x) for x in degrees[i]), marker, int(coeffs[i])


def _bump_args(layout, v, negate):
    s = layout.problem.s
    return (
        layout.v_word[v],
        layout.v_shift[v],
        layout.field_mask,
        s[v] - 2,
        layout.v_word[v],
        1 << layout.v_shift[v],
        negate,
    )


def _mark_args(layout, v, negate):
    s = layout.problem.s
    return (
        layout.v_word[v],
        layout.v_shift[v],
        layout.field_mask,
        s[v] - 1,
        layout.marker_word,
        layout.marker_mask << layout.marker_shift,
        layout.v_code[v] << layout.marker_shift,
        negate,
    )


def multiply_edge_standard(terms: TermList, u: int, v: int, layout: DegreeLayout) -> TermList:
    """Truncated product with (x_head - x_tail) for the edge {u, v}."""
    impl = kernels.get_impl()
    tail, head = (u, v) if u < v else (v, u)
    hk, hc = impl.emit_bump(terms.keys, terms.coeffs, *_bump_args(layout, head, False))
    tk, tc = impl.emit_bump(terms.keys, terms.coeffs, *_bump_args(layout, tail, True))
    keys, coeffs, overflow = impl.merge2(hk, hc, tk, tc)
    if overflow:
        raise CoefficientOverflow("edge {%d,%d}" % (u, v))
    return TermList(keys, coeffs)


def multiply_edge_extended(terms: TermList, u: int, v: int, layout: DegreeLayout) -> TermList:
    """Like the standard product, but a degree reaching s(v) - 1 on an
    unmarked term becomes a tight marker instead of being dropped; terms
    that would acquire a second tight coordinate are dropped."""
    impl = kernels.get_impl()
    tail, head = (u, v) if u < v else (v, u)
    ak, ac = impl.emit_bump(terms.keys, terms.coeffs, *_bump_args(layout, head, False))
    bk, bc = impl.emit_mark(terms.keys, terms.coeffs, *_mark_args(layout, head, False))
    ck, cc = impl.emit_bump(terms.keys, terms.coeffs, *_bump_args(layout, tail, True))
    dk, dc = impl.emit_mark(terms.keys, terms.coeffs, *_mark_args(layout, tail, True))
    hk, hc, over1 = impl.merge2(ak, ac, bk, bc)
    tk, tc, over2 = impl.merge2(ck, cc, dk, dc)
    keys, coeffs, over3 = impl.merge2(hk, hc, tk, tc)
    if over1 or over2 or over3:
        raise CoefficientOverflow("edge {%d,%d}" % (u, v))
    return TermList(keys, coeffs)


def split_final_terms(layout: DegreeLayout, terms: TermList):
    """Split a final term list into unmarked terms and tight groups.

    Returns (unmarked TermList, groups), where each group is a TermList of
    consecutive marked terms sharing the same degree vector f'.
    """
    marker_field = np.uint64(layout.marker_mask << layout.marker_shift)
    marked = (terms.keys[:, layout.marker_word] & marker_field) != 0
    plain = TermList(terms.keys[~marked], terms.coeffs[~marked])
    mk = terms.keys[marked]
    mc = terms.coeffs[marked]
    groups = []
    if len(mc):
        base = mk & layout.fbase_mask
        change = np.any(base[1:] != base[:-1], axis=1)
        bounds = [0, *(np.flatnonzero(change) + 1), len(mc)]
        for a, b in zip(bounds[:-1], bounds[1:]):
            groups.append(TermList(mk[a:b], mc[a:b]))
    return plain, groups


@dataclass
class RunStats:
    """Counters accumulated over a whole truncated-product run."""

    total_monomials: int = 0
    peak_terms: int = 0
    branches: int = 1

    def record(self, count: int):
        self.total_monomials += count
        if count > self.peak_terms:
            self.peak_terms = count


OUTCOME_COMPLETED = "completed"
OUTCOME_ABORTED = "aborted"


def run_truncated_product(
    problem: Problem,
    ordering: VertexOrdering,
    mode: str = "standard",
    branch_limit: int | None = 100000,
    sink=None,
    prune_matching: bool = False,
):
    """Multiply all edges in per-vertex turns, splitting past the limit.

    At the turn of the vertex at position i, the edges joining it to
    later-position vertices are multiplied in, in increasing position of
    the far endpoint.  After a turn, if the term count exceeds
    branch_limit, the list splits by the degrees of positions 0..i (which
    no later edge can change) and the parts run independently, largest
    prefix first.  Completed parts hand their final terms to ``sink``,
    which returns True to stop the whole run (early termination).

    branch_limit None disables splitting.  prune_matching applies only to
    standard mode: at every turn boundary, terms whose remaining degree
    budget cannot absorb the unprocessed edges are dropped.

    Returns (outcome, RunStats); outcome says whether the sink stopped the
    run early.
    """
    if mode not in ("standard", "extended"):
        raise ValueError("mode must be standard or extended")
    if branch_limit is not None and branch_limit < 1:
        raise ValueError("branch limit must be positive")
    layout = DegreeLayout(problem, ordering)
    adj = problem.adjacency()
    position = problem.n * [0]
    for i, v in enumerate(ordering.order):
        position[v] = i
    plan = []
    for i, v in enumerate(ordering.order):
        far = sorted((w for w in adj[v] if position[w] > i), key=lambda w: position[w])
        plan.append([(v, w) for w in far])
    multiply = multiply_edge_standard if mode == "standard" else multiply_edge_extended
    stats = RunStats()
    n = problem.n

    if prune_matching and mode == "standard":
        remaining_after = _remaining_edges_after(problem, ordering, position)
    else:
        remaining_after = None

    def run_segment(terms: TermList, start: int) -> bool:
        for i in range(start, n):
            for u, w in plan[i]:
                terms = multiply(terms, u, w, layout)
                stats.record(len(terms))
                if len(terms) == 0:
                    return False
            if remaining_after is not None and i < n - 1:
                terms = _prune_unreachable(layout, terms, remaining_after[i])
                if len(terms) == 0:
                    return False
            if branch_limit is not None and len(terms) > branch_limit and i < n - 1:
                masked = terms.keys & layout.prefix_masks[i]
                change = np.any(masked[1:] != masked[:-1], axis=1)
                bounds = [0, *(np.flatnonzero(change) + 1), len(terms)]
                for a, b in zip(bounds[-2::-1], bounds[:0:-1]):
                    stats.branches += 1
                    part = TermList(terms.keys[a:b], terms.coeffs[a:b])
                    if run_segment(part, i + 1):
                        return True
                return False
        if sink is None:
            return False
        return bool(sink(layout, terms))

    stopped = run_segment(TermList.unit(layout), 0)
    return (OUTCOME_ABORTED if stopped else OUTCOME_COMPLETED), stats


def _remaining_edges_after(problem, ordering, position):
    """remaining_after[i]: edges with both endpoints past position i."""
    out = []
    for i in range(problem.n):
        out.append(
            [e for e in problem.edges if position[e[0]] > i and position[e[1]] > i]
        )
    return out


def _prune_unreachable(layout, terms, remaining_edges):
    """Drop terms that no orientation of the remaining edges can complete.

    A term with degrees f can still reach a witness only if the remaining
    edges can be oriented so that every vertex v gains at most
    s(v) - 1 - f(v) outgoing edges.  Checked by maximum matching.
    """
    from .oracle import orientable_within_budget

    s = layout.problem.s
    degrees, _, _ = unpack_terms(layout, terms)
    keep = np.ones(len(terms), dtype=bool)
    for t in range(len(terms)):
        budget = {v: s[v] - 1 - int(degrees[t, v]) for v in range(layout.problem.n)}
        if not orientable_within_budget(remaining_edges, budget):
            keep[t] = False
    if keep.all():
        return terms
    return TermList(terms.keys[keep], terms.coeffs[keep])

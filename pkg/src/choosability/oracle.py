"""Ground-truth checks by direct enumeration.

Everything here is independent of the packed-term engine: coefficients
come from orientation counting, colorability from backtracking search, and
choosability from exhaustive enumeration of list assignments up to color
renaming.  Intended for small instances and for validating the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Problem

UNORIENTED, AS_REFERENCE, FLIPPED = 0, 1, 2


class OracleLimitError(ValueError):
    """An enumeration was refused because it exceeds the configured limits."""


@dataclass
class PartialOrientation:
    """Per-edge orientation state, aligned with Problem.edges.

    AS_REFERENCE directs an edge from its lower to its higher endpoint,
    FLIPPED the other way.
    """

    states: list[int]

    @classmethod
    def empty(cls, p: Problem) -> "PartialOrientation":
        return cls([UNORIENTED] * p.m)

    def outdegrees(self, p: Problem) -> list[int]:
        out = [0] * p.n
        for (u, v), st in zip(p.edges, self.states):
            if st == AS_REFERENCE:
                out[u] += 1
            elif st == FLIPPED:
                out[v] += 1
        return out


def direct_coefficient(p: Problem, f) -> int:
    """Signed count of orientations with outdegree f(v) at every vertex.

    Backtracks over edge orientations, always handling a forced edge first
    when one exists (an endpoint that cannot take the edge, or that needs
    every remaining incident edge).  Each factor is (x_max - x_min), so an
    edge directed out of its lower endpoint picks the negated variable:
    the sign of an orientation is -1 to the number of edges directed from
    lower to higher endpoint.
    """
    f = list(f)
    if len(f) != p.n:
        raise ValueError("degree vector has wrong length")
    if any(x < 0 for x in f) or sum(f) != p.m:
        return 0
    need = f[:]
    left = p.degrees()
    if any(need[v] > left[v] for v in range(p.n)):
        return 0
    edges = list(p.edges)
    unoriented = set(range(p.m))

    def pick_edge():
        for j in unoriented:
            u, v = edges[j]
            if need[u] == 0 or need[v] == 0:
                return j
            if need[u] == left[u] or need[v] == left[v]:
                return j
        return next(iter(unoriented))

    def walk() -> int:
        if not unoriented:
            return 1  # signs are multiplied in along the way
        j = pick_edge()
        u, v = edges[j]
        unoriented.discard(j)
        left[u] -= 1
        left[v] -= 1
        total = 0
        # tail u: as-reference, picks -x_u
        if need[u] > 0:
            need[u] -= 1
            if need[u] <= left[u] and need[v] <= left[v]:
                total -= walk()
            need[u] += 1
        # tail v: flipped, picks +x_v
        if need[v] > 0:
            need[v] -= 1
            if need[u] <= left[u] and need[v] <= left[v]:
                total += walk()
            need[v] += 1
        left[u] += 1
        left[v] += 1
        unoriented.add(j)
        return total

    return walk()


def _orientation_codes(p: Problem):
    """Outdegree vectors of all 2^m orientations, nibble-packed per vertex.

    Bit j of the orientation index set means edge j is directed from its
    higher endpoint to its lower one (flipped).
    """
    if p.n > 15:
        raise OracleLimitError("orientation sweep supports at most 15 vertices")
    if p.m > 22:
        raise OracleLimitError("orientation sweep supports at most 22 edges")
    idx = np.arange(1 << p.m, dtype=np.int64)
    codes = np.zeros(1 << p.m, dtype=np.int64)
    for j, (u, v) in enumerate(p.edges):
        flipped = (idx >> j) & 1
        codes += np.where(flipped == 1, 1 << (4 * v), 1 << (4 * u))
    return idx, codes


def coefficient_table(p: Problem) -> dict[tuple[int, ...], tuple[int, int]]:
    """All-orientation sweep: maps f to (signed sum, orientation count).

    Every f realized by at least one orientation appears; a missing f has
    no orientation, hence coefficient 0.
    """
    idx, codes = _orientation_codes(p)
    parity = idx.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        parity ^= parity >> shift
    # sign = -1 to the number of reference-direction edges (m - popcount)
    signs = np.where(((parity ^ p.m) & 1) == 1, -1, 1).astype(np.int64)
    uniq, inverse = np.unique(codes, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    counts = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, inverse, signs)
    np.add.at(counts, inverse, np.ones_like(signs))
    table = {}
    for code, total, count in zip(uniq, sums, counts):
        f = tuple((int(code) >> (4 * v)) & 15 for v in range(p.n))
        table[f] = (int(total), int(count))
    return table


def count_bounded_orientations(p: Problem, caps) -> int:
    """Number of orientations with outdegree at most caps(v) everywhere."""
    _, codes = _orientation_codes(p)
    ok = np.ones(len(codes), dtype=bool)
    for v in range(p.n):
        ok &= ((codes >> (4 * v)) & 15) <= caps[v]
    return int(ok.sum())


def _match_edges_to_slots(edge_list, slots):
    """Kuhn's augmenting paths; True iff every edge gets its own slot."""
    match = [-1] * len(slots)

    def augment(i, seen):
        u, v = edge_list[i]
        for k, sv in enumerate(slots):
            if sv != u and sv != v:
                continue
            if k in seen:
                continue
            seen.add(k)
            if match[k] == -1 or augment(match[k], seen):
                match[k] = i
                return True
        return False

    for i in range(len(edge_list)):
        if not augment(i, set()):
            return False
    return True


def extendable_to_f_orientation(p: Problem, partial: PartialOrientation, f) -> bool:
    """Can the unoriented edges complete to outdegrees exactly f?

    Reduced to bipartite matching: every vertex v offers f(v) minus its
    current outdegree slots, and every unoriented edge must occupy a slot
    of one of its endpoints.
    """
    f = list(f)
    if sum(f) != p.m:
        return False
    out = partial.outdegrees(p)
    if any(out[v] > f[v] for v in range(p.n)):
        return False
    un = [e for e, st in zip(p.edges, partial.states) if st == UNORIENTED]
    slots = []
    for v in range(p.n):
        slots.extend([v] * (f[v] - out[v]))
    if len(slots) != len(un):
        return False
    return _match_edges_to_slots(un, slots)


def orientable_within_budget(edge_list, budget) -> bool:
    """Can edge_list be oriented with outdegree at most budget[v] at each v?"""
    slots = []
    for v, cap in budget.items():
        if cap > 0:
            slots.extend([v] * min(cap, len(edge_list)))
    if len(edge_list) > len(slots):
        return False
    return _match_edges_to_slots(edge_list, slots)


def color_from_pattern(p: Problem, pattern):
    """Try to properly color p from the lists a pattern describes.

    The pattern is a sequence of (vector, multiplicity) pairs; it yields
    one abstract color per unit of multiplicity, present on vertex v when
    vector[v] is 1.  Returns a per-vertex color index list or None.
    Search picks the vertex with the fewest remaining colors first.
    """
    lists = [0] * p.n
    t = 0
    for vec, mult in pattern:
        for _ in range(int(mult)):
            for v in range(p.n):
                if vec[v]:
                    lists[v] |= 1 << t
            t += 1
    adj = p.adjacency()
    color = [-1] * p.n
    avail = lists[:]

    def walk() -> bool:
        best = -1
        best_count = 1 << 62
        for v in range(p.n):
            if color[v] >= 0:
                continue
            c = bin(avail[v]).count("1")
            if c == 0:
                return False
            if c < best_count:
                best, best_count = v, c
        if best == -1:
            return True
        v = best
        options = avail[v]
        while options:
            bit = options & -options
            options ^= bit
            color[v] = bit.bit_length() - 1
            saved = []
            for u in adj[v]:
                if color[u] < 0 and avail[u] & bit:
                    saved.append((u, avail[u]))
                    avail[u] ^= bit
            if walk():
                return True
            for u, old in saved:
                avail[u] = old
            color[v] = -1
        return False

    return color[:] if walk() else None


def brute_force_choosable(
    p: Problem,
    max_vertices: int = 8,
    max_total: int = 24,
    max_nodes: int = 5_000_000,
):
    """Exhaustive choosability check over assignments up to color renaming.

    Colorability from a list assignment depends only on which vertices
    share each color, so it suffices to enumerate multisets of nonzero
    0/1 vectors whose multiplicities sum componentwise to the list sizes.
    Returns (True, None) when every such assignment is colorable, else
    (False, witness) with the first non-colorable pattern found.  Vectors
    are tried densest first.  Refuses inputs beyond the size limits.
    """
    if p.n > max_vertices:
        raise OracleLimitError("too many vertices for brute force")
    if sum(p.s) > max_total:
        raise OracleLimitError("total list size too large for brute force")
    vectors = []
    for mask in range(1, 1 << p.n):
        vec = tuple((mask >> v) & 1 for v in range(p.n))
        vectors.append(vec)
    vectors.sort(key=lambda vec: (-sum(vec), tuple(-x for x in vec)))
    residual = list(p.s)
    chosen = []
    budget = [max_nodes]

    def coverable(start: int) -> bool:
        for v in range(p.n):
            if residual[v] == 0:
                continue
            if not any(vectors[i][v] for i in range(start, len(vectors))):
                return False
        return True

    def search(start: int):
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleLimitError("node budget exhausted")
        if all(r == 0 for r in residual):
            pattern = [(vec, mult) for vec, mult in chosen if mult > 0]
            if color_from_pattern(p, pattern) is None:
                return pattern
            return None
        if start == len(vectors) or not coverable(start):
            return None
        vec = vectors[start]
        top = min(residual[v] for v in range(p.n) if vec[v])
        for mult in range(top, -1, -1):
            for v in range(p.n):
                residual[v] -= mult * vec[v]
            chosen.append((vec, mult))
            bad = search(start + 1)
            chosen.pop()
            for v in range(p.n):
                residual[v] += mult * vec[v]
            if bad is not None:
                return bad
        return None

    witness = search(0)
    if witness is None:
        return True, None
    return False, tuple(witness)

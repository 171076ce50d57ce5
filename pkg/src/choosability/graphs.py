"""Problem representation, parsing, vertex orderings, and family generators."""

from __future__ import annotations

from dataclasses import dataclass


HEURISTICS = ("INPUT", "VSEP", "MD", "MD+PROC", "OVER", "LIST", "LIST+DEG", "MDR")

DEFAULT_HEURISTIC = "MD+PROC"


class ProblemFormatError(ValueError):
    """Raised when a problem file or construction parameter is invalid."""


@dataclass(frozen=True)
class Problem:
    """A graph with a list size attached to every vertex.

    Vertices are 0..n-1.  Edges are unordered pairs, stored as (min, max)
    tuples.  The reference orientation directs every edge from its
    lower-indexed endpoint to its higher-indexed endpoint; all coefficient
    signs elsewhere in the package are relative to that convention.
    """

    n: int
    s: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ProblemFormatError("need at least one vertex")
        if len(self.s) != self.n:
            raise ProblemFormatError(
                "expected %d list sizes, got %d" % (self.n, len(self.s))
            )
        for v, sv in enumerate(self.s):
            if sv < 1:
                raise ProblemFormatError("list size of vertex %d must be >= 1" % v)
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ProblemFormatError("self-loop at vertex %d" % u)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ProblemFormatError("edge {%d,%d} out of range" % (u, v))
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ProblemFormatError("duplicate edge {%d,%d}" % e)
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def reference_orientation(self) -> tuple[tuple[int, int], ...]:
        """(tail, head) per edge: tail is the lower original index."""
        return tuple((u, v) for u, v in self.edges)

    def without_edges(self, removed) -> "Problem":
        gone = {(min(u, v), max(u, v)) for u, v in removed}
        kept = tuple(e for e in self.edges if e not in gone)
        if len(kept) != self.m - len(gone):
            raise ValueError("some edges to remove are not present")
        return Problem(self.n, self.s, kept, self.name)


@dataclass(frozen=True)
class VertexOrdering:
    """Processing order: order[i] is the original index of the i-th vertex."""

    order: tuple[int, ...]
    heuristic: str = "INPUT"

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("ordering is not a permutation")

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def parse_problem(text: str, name: str = "") -> Problem:
    """Parse the text problem format.

    Line 1: `n m`.  Line 2: n list sizes.  Then m lines `u v` with 0-based
    endpoints.  Lines starting with '#' are comments; blank lines are
    skipped.  Errors carry the 1-based line number of the offending line.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append((lineno, stripped))

    def ints(row, expect, what):
        lineno, line = row
        parts = line.split()
        if len(parts) != expect:
            raise ProblemFormatError(
                "line %d: expected %d %s, got %r" % (lineno, expect, what, line)
            )
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ProblemFormatError("line %d: non-integer in %r" % (lineno, line))

    if not rows:
        raise ProblemFormatError("empty problem")
    n, m = ints(rows[0], 2, "integers (n m)")
    if n < 1 or m < 0:
        raise ProblemFormatError("line %d: invalid n or m" % rows[0][0])
    if len(rows) < 2:
        raise ProblemFormatError("missing list-size line")
    s = ints(rows[1], n, "list sizes")
    body = rows[2:]
    if len(body) != m:
        raise ProblemFormatError("expected %d edge lines, found %d" % (m, len(body)))
    edges = []
    seen = set()
    for row in body:
        u, v = ints(row, 2, "endpoints")
        lineno = row[0]
        if u == v:
            raise ProblemFormatError("line %d: self-loop at %d" % (lineno, u))
        if not (0 <= u < n and 0 <= v < n):
            raise ProblemFormatError("line %d: endpoint out of range" % lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ProblemFormatError("line %d: duplicate edge {%d,%d}" % (lineno, u, v))
        seen.add(e)
        edges.append(e)
    for v, sv in enumerate(s):
        if sv < 1:
            raise ProblemFormatError("list size of vertex %d must be >= 1" % v)
    return Problem(n, tuple(s), tuple(edges), name)


def format_problem(p: Problem) -> str:
    lines = []
    if p.name:
        lines.append("# %s" % p.name)
    lines.append("%d %d" % (p.n, p.m))
    lines.append(" ".join(str(sv) for sv in p.s))
    for u, v in p.edges:
        lines.append("%d %d" % (u, v))
    return "\n".join(lines) + "\n"


def order_vertices(p: Problem, heuristic: str = DEFAULT_HEURISTIC) -> VertexOrdering:
    """Greedy processing order under one of the named selection rules.

    INPUT keeps the input order.  The greedy rules pick the next vertex by:
    MD smallest degree in the not-yet-processed part; MD+PROC additionally
    prefers more already-processed neighbors; OVER smallest number of edges
    leaving the processed prefix after the pick; LIST smallest list size,
    then smallest remaining degree; LIST+DEG smallest list size plus
    remaining degree; VSEP fewest unprocessed vertices touching the
    processed prefix after the pick, then smallest remaining degree.
    MDR is MD reversed.  All remaining ties pick the smallest original index.
    """
    if heuristic not in HEURISTICS:
        raise ValueError("unknown heuristic %r" % heuristic)
    if heuristic == "INPUT":
        return VertexOrdering(tuple(range(p.n)), heuristic)
    if heuristic == "MDR":
        inner = order_vertices(p, "MD")
        return VertexOrdering(tuple(reversed(inner.order)), heuristic)

    adj = p.adjacency()
    remaining = set(range(p.n))
    processed = set()
    marked = set()  # remaining vertices with a processed neighbor
    order = []

    def rem_deg(v):
        return sum(1 for u in adj[v] if u in remaining)

    def proc_nbrs(v):
        return sum(1 for u in adj[v] if u in processed)

    def vsep_after(v):
        count = len(marked) - (1 if v in marked else 0)
        count += sum(
            1 for u in adj[v] if u in remaining and u != v and u not in marked
        )
        return count

    keys = {
        "MD": lambda v: (rem_deg(v), v),
        "MD+PROC": lambda v: (rem_deg(v), -proc_nbrs(v), v),
        "OVER": lambda v: (rem_deg(v) - proc_nbrs(v), v),
        "LIST": lambda v: (p.s[v], rem_deg(v), v),
        "LIST+DEG": lambda v: (p.s[v] + rem_deg(v), v),
        "VSEP": lambda v: (vsep_after(v), rem_deg(v), v),
    }
    key = keys[heuristic]

    for _ in range(p.n):
        v = min(remaining, key=key)
        order.append(v)
        remaining.discard(v)
        processed.add(v)
        marked.discard(v)
        for u in adj[v]:
            if u in remaining:
                marked.add(u)
    return VertexOrdering(tuple(order), heuristic)


def _glued_cliques(a: int, b: int, drop_last_edge: bool, name: str) -> Problem:
    if a < 2 or b < 3:
        raise ProblemFormatError("need a >= 2 and b >= 3")
    n = a * (b - 1) + 1
    edges = []
    for i in range(a):
        block = range(i * (b - 1), i * (b - 1) + b)
        for x in block:
            for y in block:
                if x < y:
                    edges.append((x, y))
    if drop_last_edge:
        edges.remove((n - 2, n - 1))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return Problem(n, tuple(deg), tuple(edges), name)


def _grid_diag(a: int, name: str) -> Problem:
    if a < 2:
        raise ProblemFormatError("need a >= 2")
    n = a * a + 4

    def vid(r, c):
        return r * a + c

    edges = []
    for r in range(a):
        for c in range(a):
            if c + 1 < a:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < a:
                edges.append((vid(r, c), vid(r + 1, c)))
    # one diagonal per cell, lower-left to upper-right
    for r in range(a - 1):
        for c in range(a - 1):
            edges.append((vid(r + 1, c), vid(r, c + 1)))
    sides = [
        [vid(0, c) for c in range(a)],       # first row
        [vid(a - 1, c) for c in range(a)],   # last row
        [vid(r, 0) for r in range(a)],       # first column
        [vid(r, a - 1) for r in range(a)],   # last column
    ]
    for k, side in enumerate(sides):
        apex = a * a + k
        for v in side:
            edges.append((v, apex))
    corners = {vid(0, 0), vid(0, a - 1), vid(a - 1, 0), vid(a - 1, a - 1)}
    outer = corners | {a * a + k for k in range(4)}
    s = tuple(3 if v in outer else 5 for v in range(n))
    return Problem(n, s, tuple(edges), name)


def _cycle_triangles(n: int, name: str) -> Problem:
    # chords of length 1 would duplicate cycle edges
    if n < 2:
        raise ProblemFormatError("need n >= 2")
    nv = 3 * n
    edges = [(i, (i + 1) % nv) for i in range(nv)]
    edges += [(i, (i + n) % nv) for i in range(nv)]
    dedup = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return Problem(nv, (3,) * nv, tuple(dedup), name)


def generate_family(family: str, *params: int) -> Problem:
    """Build a named test-family instance.

    glued-cliques(a, b): a copies of K_b sharing consecutive single
    vertices, list sizes equal to degrees.  glued-cliques-minus-edge(a, b):
    the same with the edge between the last two vertices removed (list
    sizes are the degrees of the resulting graph).  grid-diag(a): a x a
    grid with one diagonal per cell and four apex vertices joined to the
    boundary rows/columns; list size 3 on apexes and grid corners, 5
    elsewhere.  cycle-triangles(n): cycle on 3n vertices plus the chords
    {i, i+n}, list size 3 everywhere.
    """
    label = "%s(%s)" % (family, ",".join(str(x) for x in params))
    if family == "glued-cliques":
        a, b = params
        return _glued_cliques(a, b, False, label)
    if family == "glued-cliques-minus-edge":
        a, b = params
        return _glued_cliques(a, b, True, label)
    if family == "grid-diag":
        (a,) = params
        return _grid_diag(a, label)
    if family == "cycle-triangles":
        (n,) = params
        return _cycle_triangles(n, label)
    raise ProblemFormatError("unknown family %r" % family)


FAMILIES = ("glued-cliques", "glued-cliques-minus-edge", "grid-diag", "cycle-triangles")

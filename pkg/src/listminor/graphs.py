"""Immutable simple graphs over dense integer vertices with bitmask rows.

Vertices are 0..n-1.  A vertex subset is a plain Python int used as a
bitmask, so intersection/containment tests are single operations and all
values are safe to share between concurrent workers.  Graphs are value
objects: derived graphs (complements, induced subgraphs, clique-sums) are
new instances; nothing mutates after construction.

Text format (bit-exact): line 1 is the decimal vertex count; every further
non-empty line is "u v" with 0 <= u < v < n.  render_graph emits edges in
strictly increasing lexicographic order, one per line, LF-terminated, so
parse(render(g)) == g and render is canonical.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InputError, ParseError

#: Default capacity for plain graphs.  Callers that assemble large unions
#: (see the instance builder) pass an explicit, larger budget.
MAX_VERTICES = 4096


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex ids into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into a sorted tuple of vertex ids."""
    return tuple(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ceil_frac(x: Fraction) -> int:
    """Exact integer ceiling of a rational threshold."""
    return math.ceil(x)


class Graph:
    """Undirected simple graph: ``n`` vertices, symmetric bitmask rows.

    Invariants: no self-loops (``adj_row(u)`` never contains ``u``) and
    symmetry (``v in adj_row(u)`` iff ``u in adj_row(v)``).  Instances are
    immutable and hashable.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, adj: tuple[int, ...]):
        # Internal constructor; use graph_from_edges / parse_graph.
        self.n = n
        self._adj = adj

    def adj_row(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitmask."""
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in increasing lexicographic order."""
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1) << (u + 1)
            for v in iter_bits(rest):
                yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self._adj) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def graph_from_edges(
    n: int, edges: Iterable[tuple[int, int]], *, max_vertices: int = MAX_VERTICES
) -> Graph:
    """Build a graph from an edge list; duplicates collapse.

    Raises InputError on a negative/oversized vertex count, an out-of-range
    endpoint, or a loop pair.
    """
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    if n > max_vertices:
        raise InputError(f"vertex count {n} exceeds capacity {max_vertices}")
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise InputError(f"loop edge ({u}, {v}) rejected")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    """Graph with edge uv iff u != v and uv is not an edge of ``g``."""
    full = g.full_mask
    adj = tuple((full ^ g.adj_row(v)) & ~(1 << v) for v in range(g.n))
    return Graph(g.n, adj)


def is_clique(g: Graph, members: int) -> bool:
    """True iff every pair inside the subset is adjacent (vacuous for <= 1)."""
    if members & ~g.full_mask:
        raise InputError("subset contains vertices outside the graph")
    for v in iter_bits(members):
        others = members & ~(1 << v)
        if others & ~g.adj_row(v):
            return False
    return True


def induced_subgraph(g: Graph, members: int) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph on the subset, plus the relabelling map.

    Returns ``(h, vertices)`` where ``vertices[i]`` is the original label of
    the new vertex ``i`` (labels kept in increasing order).
    """
    if members & ~g.full_mask:
        raise InputError("subset contains vertices outside the graph")
    verts = vertices_of(members)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for i, v in enumerate(verts):
        for w in iter_bits(g.adj_row(v) & members):
            adj[i] |= 1 << index[w]
    return Graph(len(verts), tuple(adj)), verts


def is_connected(g: Graph, members: int) -> bool:
    """True iff the induced subgraph on the non-empty subset is connected."""
    if members == 0:
        raise InputError("connectivity of the empty set is undefined")
    if members & ~g.full_mask:
        raise InputError("subset contains vertices outside the graph")
    seen = members & -members
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj_row(v)
        frontier = nxt & members & ~seen
        seen |= frontier
    return seen == members


def neighborhood_mask(g: Graph, members: int) -> int:
    """Union of the neighbourhoods of every vertex in the subset."""
    out = 0
    for v in iter_bits(members):
        out |= g.adj_row(v)
    return out


def components(g: Graph) -> list[int]:
    """Connected components as bitmasks, ordered by smallest member."""
    remaining = g.full_mask
    out = []
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj_row(v)
            frontier = nxt & ~seen
            seen |= frontier
        out.append(seen)
        remaining &= ~seen
    return out


def parse_graph(text: str, *, max_vertices: int = MAX_VERTICES) -> Graph:
    """Parse the text format; errors carry the offending line number."""
    lines = text.split("\n")
    if not lines or lines[0].strip() == "":
        raise ParseError(1, "missing vertex-count header")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(1, f"malformed vertex count {lines[0].strip()!r}") from None
    if n < 0:
        raise ParseError(1, f"negative vertex count {n}")
    if n > max_vertices:
        raise ParseError(1, f"vertex count {n} exceeds capacity {max_vertices}")
    edges = []
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer endpoint in {raw!r}") from None
        if u == v:
            raise ParseError(line_no, f"loop edge {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(line_no, f"vertex out of range in {raw!r} (n={n})")
        if u > v:
            raise ParseError(line_no, f"edge endpoints not increasing in {raw!r}")
        edges.append((u, v))
    return graph_from_edges(n, edges, max_vertices=max_vertices)


def render_graph(g: Graph) -> str:
    """Canonical text form: header, then sorted edges, LF-terminated."""
    out = [f"{g.n}\n"]
    for u, v in g.edges():
        out.append(f"{u} {v}\n")
    return "".join(out)


def to_dot(g: Graph) -> str:
    """DOT export: undirected graph with numeric node ids."""
    out = ["graph {\n"]
    for v in range(g.n):
        out.append(f"  {v};\n")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};\n")
    out.append("}\n")
    return "".join(out)


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return graph_from_edges(n, [(v, (v + 1) % n) if v + 1 < n else (0, n - 1) for v in range(n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with part {0..a-1} first."""
    return graph_from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def petersen_graph() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return graph_from_edges(10, [(min(u, v), max(u, v)) for u, v in edges])

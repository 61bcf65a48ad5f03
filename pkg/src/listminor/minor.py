"""Exact clique-minor containment, Hadwiger number, and clique-sums.

A K_t model is a family of t branch sets: pairwise disjoint, non-empty,
each inducing a connected subgraph, and every pair joined by at least one
edge.  The solver is exact-only: beyond the configured size guard it
raises instead of degrading to a heuristic, so certificate claims never
rest on unverified answers.

Search: vertices are processed in increasing order; each is assigned to a
branch set or left unused.  A fresh branch set may only be opened at the
lowest-index empty slot (branch sets are unordered, so this loses nothing).
Pruning after every decision, all three checks being necessary conditions:

  * count of still-empty sets must not exceed the undecided vertices;
  * every partial branch set must lie in one component of the graph
    induced on the set plus the undecided vertices (else it can never
    become connected);
  * for every pair of non-empty sets with no joining edge yet, their
    reachability closures through undecided vertices must admit an edge.

The exploration order (lowest vertex first, lowest set index first, unused
last) is fixed, so the returned model is deterministic and is the
lexicographically least one under that order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExactnessRangeError, InputError
from .graphs import (
    Graph,
    components,
    graph_from_edges,
    induced_subgraph,
    is_clique,
    is_connected,
    iter_bits,
    neighborhood_mask,
    vertices_of,
)

#: Largest vertex count the exact search accepts by default.
DEFAULT_MAX_EXACT = 16


@dataclass(frozen=True)
class MinorModel:
    """Ordered branch sets (bitmasks) certifying a clique minor."""

    branch_sets: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.branch_sets)

    def as_vertex_lists(self) -> list[list[int]]:
        return [list(vertices_of(s)) for s in self.branch_sets]


def verify_minor_model(g: Graph, model: MinorModel) -> bool:
    """Check the three branch-set conditions against ``g``.

    Branch sets need not cover the vertex set: a clique minor lives in a
    subgraph.  Sets outside the graph are a rejected input, not a False.
    """
    sets = model.branch_sets
    union = 0
    for s in sets:
        if s & ~g.full_mask:
            raise InputError("branch set contains vertices outside the graph")
        if s == 0:
            return False
        if s & union:
            return False
        union |= s
    for s in sets:
        if not is_connected(g, s):
            return False
    nbrs = [neighborhood_mask(g, s) for s in sets]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not nbrs[i] & sets[j]:
                return False
    return True


def find_kt_minor(
    g: Graph, t: int, *, max_exact: int = DEFAULT_MAX_EXACT
) -> MinorModel | None:
    """Exact search for a K_t model; None when no model exists.

    Raises ExactnessRangeError when the graph exceeds ``max_exact``
    vertices, and InputError for t < 1.
    """
    if t < 1:
        raise InputError(f"minor order must be >= 1, got {t}")
    if g.n > max_exact:
        raise ExactnessRangeError(
            f"exactness range exceeded: n={g.n} > max_exact={max_exact}"
        )
    if t > g.n:
        return None

    n = g.n
    adj = [g.adj_row(v) for v in range(n)]
    full = (1 << n) - 1
    # futures[v] = undecided vertices once 0..v-1 carry decisions.
    futures = [(full >> v) << v for v in range(n + 1)]
    sets = [0] * t
    linked = [0] * t  # linked[i] bit j: an edge between sets i and j exists
    pieces: list[list[int]] = [[] for _ in range(t)]  # components of each set
    state = {"empty": t}

    def assign(v: int, s_idx: int):
        bit = 1 << v
        av = adj[v]
        was_empty = sets[s_idx] == 0
        if was_empty:
            state["empty"] -= 1
        old_pieces = pieces[s_idx]
        merged = bit
        untouched = []
        for piece in old_pieces:
            if piece & av:
                merged |= piece
            else:
                untouched.append(piece)
        untouched.append(merged)
        pieces[s_idx] = untouched
        sets[s_idx] |= bit
        new_links = 0
        for j in range(t):
            if j != s_idx and sets[j] & av and not linked[s_idx] >> j & 1:
                linked[s_idx] |= 1 << j
                linked[j] |= 1 << s_idx
                new_links |= 1 << j
        return (s_idx, bit, was_empty, old_pieces, new_links)

    def undo(entry) -> None:
        s_idx, bit, was_empty, old_pieces, new_links = entry
        sets[s_idx] &= ~bit
        pieces[s_idx] = old_pieces
        if was_empty:
            state["empty"] += 1
        linked[s_idx] &= ~new_links
        for j in iter_bits(new_links):
            linked[j] &= ~(1 << s_idx)

    def feasible(v_next: int) -> bool:
        fut = futures[v_next]
        empty = state["empty"]
        if empty > fut.bit_count():
            return False
        # Closures through undecided vertices are needed for sets that are
        # still in pieces or missing a joining edge, and for every set when
        # an unopened one must still find a seed that can reach them all.
        closures = [0] * t
        reach_nbrs = [0] * t
        pending = 0
        nonempty = 0
        for i in range(t):
            si = sets[i]
            if si == 0:
                continue
            nonempty |= 1 << i
            need = empty > 0 or len(pieces[i]) > 1
            if not need:
                for j in range(t):
                    if j != i and sets[j] and not linked[i] >> j & 1:
                        need = True
                        break
            if not need:
                continue
            allowed = si | fut
            comp = pieces[i][0]
            total_nbr = 0
            frontier = comp
            while frontier:
                nb = 0
                m = frontier
                while m:
                    b = m & -m
                    nb |= adj[b.bit_length() - 1]
                    m ^= b
                total_nbr |= nb
                frontier = nb & allowed & ~comp
                comp |= frontier
            if si & ~comp:
                return False
            closures[i] = comp
            reach_nbrs[i] = total_nbr
            pending |= 1 << i
        for i in iter_bits(pending):
            for j in range(i + 1, t):
                if sets[j] and not linked[i] >> j & 1:
                    if not reach_nbrs[i] & closures[j]:
                        return False
        if empty > 0 and nonempty:
            # Each unopened set lives inside one component of the future
            # graph, which must see every existing set's closure.
            rem = fut
            found = False
            while rem and not found:
                seed = rem & -rem
                comp = seed
                total_nbr = 0
                frontier = seed
                while frontier:
                    nb = 0
                    m = frontier
                    while m:
                        b = m & -m
                        nb |= adj[b.bit_length() - 1]
                        m ^= b
                    total_nbr |= nb
                    frontier = nb & fut & ~comp
                    comp |= frontier
                rem &= ~comp
                found = all(
                    total_nbr & closures[i] for i in iter_bits(nonempty)
                )
            if not found:
                return False
        return True

    def search(v: int) -> bool:
        if v == n:
            return True
        opened = False
        for s_idx in range(t):
            if sets[s_idx] == 0:
                if opened:
                    continue
                opened = True
            entry = assign(v, s_idx)
            if feasible(v + 1) and search(v + 1):
                return True
            undo(entry)
        if feasible(v + 1) and search(v + 1):
            return True
        return False

    if not feasible(0):
        return None
    if not search(0):
        return None
    return MinorModel(tuple(sets))


def _greedy_clique_size(g: Graph) -> int:
    """Cheap clique lower bound: greedy restricted-neighbourhood growth."""
    best = 1 if g.n else 0
    for start in range(g.n):
        members = 1 << start
        cand = g.adj_row(start)
        while cand:
            v = (cand & -cand).bit_length() - 1
            members |= 1 << v
            cand &= g.adj_row(v)
        best = max(best, members.bit_count())
    return best


def hadwiger_number(
    g: Graph, *, max_exact: int = DEFAULT_MAX_EXACT
) -> tuple[int, MinorModel]:
    """Largest t admitting a K_t model, with a witness model.

    Disconnected graphs are solved per component (a clique minor of order
    >= 2 lives inside one component) and the guard applies per component.
    """
    if g.n < 1:
        raise InputError("hadwiger number needs at least one vertex")
    comps = components(g)
    if len(comps) > 1:
        best: tuple[int, MinorModel] | None = None
        for comp in comps:
            sub, verts = induced_subgraph(g, comp)
            t, model = hadwiger_number(sub, max_exact=max_exact)
            lifted = MinorModel(
                tuple(
                    sum(1 << verts[i] for i in iter_bits(s))
                    for s in model.branch_sets
                )
            )
            if best is None or t > best[0]:
                best = (t, lifted)
        assert best is not None
        return best

    if g.n > max_exact:
        raise ExactnessRangeError(
            f"exactness range exceeded: n={g.n} > max_exact={max_exact}"
        )
    t = max(1, _greedy_clique_size(g))
    model = find_kt_minor(g, t, max_exact=max_exact)
    assert model is not None, "greedy clique must yield a model"
    while t < g.n:
        nxt = find_kt_minor(g, t + 1, max_exact=max_exact)
        if nxt is None:
            break
        t += 1
        model = nxt
    return t, model


def clique_sum(g1: Graph, g2: Graph, glue: dict[int, int]) -> Graph:
    """Paste ``g2`` onto ``g1``, identifying a clique of g2 with one of g1.

    ``glue`` maps g2-vertices onto distinct g1-vertices; both endpoint sets
    must be cliques in their graphs (the empty map gives the disjoint
    union).  g1 keeps its labels; unglued g2-vertices follow in increasing
    order of their g2 labels.
    """
    for v2, v1 in glue.items():
        if not (0 <= v2 < g2.n):
            raise InputError(f"glue vertex {v2} outside second graph")
        if not (0 <= v1 < g1.n):
            raise InputError(f"glue vertex {v1} outside first graph")
    values = list(glue.values())
    if len(set(values)) != len(values):
        raise InputError("glue map must be injective")
    c2 = 0
    for v2 in glue:
        c2 |= 1 << v2
    c1 = 0
    for v1 in values:
        c1 |= 1 << v1
    if not is_clique(g2, c2):
        raise InputError("glued vertices do not form a clique in the second graph")
    if not is_clique(g1, c1):
        raise InputError("glued vertices do not form a clique in the first graph")

    relabel = dict(glue)
    nxt = g1.n
    for v2 in range(g2.n):
        if v2 not in relabel:
            relabel[v2] = nxt
            nxt += 1
    edges = list(g1.edges())
    for u, v in g2.edges():
        a, b = relabel[u], relabel[v]
        edges.append((min(a, b), max(a, b)))
    # Both inputs already passed their capacity checks; the union fits.
    return graph_from_edges(nxt, edges, max_vertices=nxt)

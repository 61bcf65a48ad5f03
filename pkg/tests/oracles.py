"""Independent brute-force oracles.

Everything here is deliberately naive and shares no code path with the
solvers it checks: unpruned enumeration over set partitions for clique
minors, cartesian-product scans for colorings, and direct definition-level
scans for the covering property.
"""

from itertools import combinations, product

from listminor.graphs import Graph, is_connected, iter_bits, neighborhood_mask


def set_partitions(items):
    """All set partitions of a list (unordered blocks)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1 :]
        yield part + [[first]]


def _family_valid(g: Graph, masks) -> bool:
    if not all(is_connected(g, m) for m in masks):
        return False
    for i in range(len(masks)):
        nb = neighborhood_mask(g, masks[i])
        for j in range(i + 1, len(masks)):
            if not nb & masks[j]:
                return False
    return True


def brute_minor_orders(g: Graph) -> set[int]:
    """All t for which some valid t-family of branch sets exists."""
    achievable: set[int] = set()
    verts = list(range(g.n))
    for k in range(1, g.n + 1):
        for subset in combinations(verts, k):
            for part in set_partitions(list(subset)):
                masks = [sum(1 << v for v in p) for p in part]
                if _family_valid(g, masks):
                    achievable.add(len(part))
    return achievable


def brute_hadwiger(g: Graph) -> int:
    return max(brute_minor_orders(g))


def brute_has_kt_minor(g: Graph, t: int) -> bool:
    return t in brute_minor_orders(g)


def brute_list_colorable(g: Graph, lists) -> bool:
    """Cartesian-product scan over all list choices."""
    for choice in product(*[sorted(colors) for colors in lists]):
        ok = True
        for u in range(g.n):
            for v in iter_bits(g.adj_row(u) & ~((1 << (u + 1)) - 1)):
                if choice[u] == choice[v]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def brute_chromatic(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        lists = [frozenset(range(1, k + 1))] * g.n
        if brute_list_colorable(g, lists):
            return k
    raise AssertionError("unreachable")


def brute_is_k_choosable(g: Graph, k: int) -> tuple[bool, tuple | None]:
    """Scan every assignment of k-subsets of {1..k*n}; tiny graphs only."""
    universe = range(1, k * g.n + 1)
    candidate_lists = list(combinations(universe, k))
    for assignment in product(candidate_lists, repeat=g.n):
        lists = tuple(frozenset(a) for a in assignment)
        if not brute_list_colorable(g, lists):
            return False, lists
    return True, None


def brute_sdr_feasible(sets) -> bool:
    """Injective choice by scanning products of the sets."""
    if not sets:
        return True
    for choice in product(*[sorted(s) for s in sets]):
        if len(set(choice)) == len(choice):
            return True
    return False


def disjoint_families(opp_ids, k, f):
    """All unordered families of k disjoint non-empty <=f-subsets."""
    candidates = []
    for size in range(1, f + 1):
        candidates.extend(combinations(opp_ids, size))
    candidates.sort()

    def rec(start, used, picked):
        if len(picked) == k:
            yield list(picked)
            return
        for pos in range(start, len(candidates)):
            cm = sum(1 << v for v in candidates[pos])
            if cm & used:
                continue
            picked.append(candidates[pos])
            yield from rec(pos + 1, used | cm, picked)
            picked.pop()

    yield from rec(0, 0, [])


def brute_covering_holds(sample, m: int, f: int) -> bool:
    """Definition-level scan: every X and every family must admit a fully
    joined (x, Y_j) pair; both side orientations."""
    g = sample.graph
    n = sample.n
    sides = [(tuple(range(n)), tuple(range(n, 2 * n))), (tuple(range(n, 2 * n)), tuple(range(n)))]
    for side_ids, opp_ids in sides:
        for x_ids in combinations(side_ids, m):
            for family in disjoint_families(opp_ids, m, f):
                joined = False
                for x in x_ids:
                    row = g.adj_row(x)
                    for y_set in family:
                        if all(row >> y & 1 for y in y_set):
                            joined = True
                            break
                    if joined:
                        break
                if not joined:
                    return False
    return True


def covering_witness_valid(sample, m: int, f: int, witness) -> bool:
    """Check a claimed violation witness against the raw definition."""
    x_ids, families = witness
    n = sample.n
    in_a = all(v < n for v in x_ids)
    in_b = all(v >= n for v in x_ids)
    if not (in_a or in_b):
        return False
    if len(x_ids) != m or len(families) != m:
        return False
    used = 0
    for y_set in families:
        if not (1 <= len(y_set) <= f):
            return False
        opp_ok = all((v >= n) == in_a for v in y_set)
        if not opp_ok:
            return False
        ym = sum(1 << v for v in y_set)
        if ym & used:
            return False
        used |= ym
    g = sample.graph
    for x in x_ids:
        row = g.adj_row(x)
        for y_set in families:
            if all(row >> y & 1 for y in y_set):
                return False
    return True


def random_graph(rng, n: int, p: float) -> Graph:
    from listminor.graphs import graph_from_edges

    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return graph_from_edges(n, edges)


def random_clique(rng, g: Graph, max_size: int) -> list[int]:
    """Greedy clique from a random vertex order, truncated to max_size."""
    order = list(range(g.n))
    rng.shuffle(order)
    clique: list[int] = []
    for v in order:
        if all(g.has_edge(v, w) for w in clique):
            clique.append(v)
            if len(clique) == max_size:
                break
    return clique

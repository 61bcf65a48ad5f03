"""Exact list-coloring search, choosability, and clique-extension tests.

A list assignment maps each vertex to a finite set of positive colors.
``find_list_coloring`` is a backtracking solver (smallest-remaining-list
vertex choice, forward pruning); ``is_k_choosable`` decides whether every
assignment of k-element lists admits a coloring by enumerating canonical
assignments and deciding each with the solver.

Color-universe lemma: lists of size k over n vertices involve at most k*n
distinct colors (n lists, k colors each), and any assignment is a color
renaming of one inside {1..k*n}; so enumerating over that universe is
exhaustive.  Canonical form: colors are renamed by first appearance, and
the new colors inside a single list are interchangeable, so each list
extends the palette by one consecutive block.

Two sound prunes keep the enumeration tractable and exact:

  * if the assignment restricted to the processed prefix already admits no
    coloring of the induced subgraph, every completion is a violation, and
    the lexicographically least completion (all-{1..k} tails) is returned;
  * if every unprocessed vertex has degree < k, every completion is
    colorable (greedy: each such vertex always has a free list color), so
    the subtree is skipped.

List file format (bit-exact): one line per vertex, ``v: c1 c2 c3`` with
strictly increasing colors; rendering orders vertices ascending.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ExhaustionError, InputError, ParseError, WorkLimitError
from .graphs import Graph, iter_bits

ListAssignment = tuple[frozenset[int], ...]
Coloring = tuple[int, ...]

#: Default step budget for one backtracking run.
DEFAULT_COLORING_STEPS = 5_000_000
#: Default step budget for a full choosability enumeration.
DEFAULT_CHOOSABILITY_STEPS = 20_000_000


def _check_lists(g: Graph, lists: ListAssignment) -> None:
    if len(lists) != g.n:
        raise InputError(f"assignment covers {len(lists)} vertices, graph has {g.n}")
    for v, colors in enumerate(lists):
        for c in colors:
            if c < 1:
                raise InputError(f"vertex {v}: colors must be positive, got {c}")


def find_list_coloring(
    g: Graph,
    lists: ListAssignment,
    *,
    step_limit: int = DEFAULT_COLORING_STEPS,
) -> Coloring | None:
    """Proper coloring drawn from the lists, or None when none exists.

    Deterministic: the most-constrained vertex (lowest index on ties) is
    colored next, colors tried in increasing order.  Raises WorkLimitError
    when the step budget is exhausted.
    """
    _check_lists(g, lists)
    n = g.n
    if n == 0:
        return ()
    avail: list[set[int]] = [set(colors) for colors in lists]
    color: list[int] = [0] * n
    uncolored = set(range(n))
    steps = 0

    def solve() -> bool:
        nonlocal steps
        if not uncolored:
            return True
        v = min(uncolored, key=lambda u: (len(avail[u]), u))
        if not avail[v]:
            return False
        uncolored.discard(v)
        nbrs = [w for w in iter_bits(g.adj_row(v)) if w in uncolored]
        for c in sorted(avail[v]):
            steps += 1
            if steps > step_limit:
                raise WorkLimitError(f"coloring search exceeded {step_limit} steps")
            touched = []
            dead = False
            for w in nbrs:
                if c in avail[w]:
                    avail[w].discard(c)
                    touched.append(w)
                    if not avail[w]:
                        dead = True
            if not dead:
                color[v] = c
                if solve():
                    return True
            for w in touched:
                avail[w].add(c)
        uncolored.add(v)
        return False

    if solve():
        return tuple(color)
    return None


def is_proper_list_coloring(g: Graph, lists: ListAssignment, coloring: Coloring) -> bool:
    """Validation helper: proper on ``g`` and drawn from the lists."""
    if len(coloring) != g.n:
        return False
    for v in range(g.n):
        if coloring[v] not in lists[v]:
            return False
        for w in iter_bits(g.adj_row(v) & ~((1 << (v + 1)) - 1)):
            if coloring[v] == coloring[w]:
                return False
    return True


def clique_extension_feasible(
    clique_lists: list[frozenset[int]],
) -> tuple[bool, tuple[int, ...] | None]:
    """System of distinct representatives for the given color sets.

    Vertices of a clique must receive pairwise distinct colors, so a proper
    extension is exactly an injective choice, decided by augmenting-path
    bipartite matching.  Returns the chosen colors when feasible.
    """
    owner: dict[int, int] = {}  # color -> set index

    def augment(i: int, banned: set[int]) -> bool:
        for c in sorted(clique_lists[i]):
            if c in banned:
                continue
            banned.add(c)
            if c not in owner or augment(owner[c], banned):
                owner[c] = i
                return True
        return False

    for i in range(len(clique_lists)):
        if not augment(i, set()):
            return False, None
    chosen = [0] * len(clique_lists)
    for c, i in owner.items():
        chosen[i] = c
    return True, tuple(chosen)


def _canonical_candidates(m: int, k: int) -> list[tuple[int, ...]]:
    """All canonical k-lists given ``m`` colors already in use, sorted."""
    out: list[tuple[int, ...]] = []
    for new in range(0, k + 1):
        block = tuple(range(m + 1, m + new + 1))
        for old in combinations(range(1, m + 1), k - new):
            out.append(old + block)
    out.sort()
    return out


def is_k_choosable(
    g: Graph,
    k: int,
    *,
    step_limit: int = DEFAULT_CHOOSABILITY_STEPS,
) -> tuple[bool, ListAssignment | None]:
    """Decide whether every assignment of k-lists admits a coloring.

    When the answer is False, returns the lexicographically first violating
    canonical assignment as the witness.  Raises WorkLimitError beyond the
    step budget (practical range is about n <= 8, k <= 4).
    """
    if k < 1:
        raise InputError(f"list size must be >= 1, got {k}")
    n = g.n
    if n == 0:
        return True, None
    degrees = [g.degree(v) for v in range(n)]
    steps = 0
    prefix: list[tuple[int, ...]] = []

    def prefix_colorable(depth: int) -> bool:
        nonlocal steps
        # Induced prefix coloring via the main solver on the subgraph.
        sub_lists = tuple(frozenset(t) for t in prefix)
        sub_adj = tuple(g.adj_row(v) & ((1 << depth) - 1) for v in range(depth))
        sub = Graph(depth, sub_adj)
        budget = step_limit - steps
        if budget <= 0:
            raise WorkLimitError(f"choosability search exceeded {step_limit} steps")
        try:
            got = find_list_coloring(sub, sub_lists, step_limit=budget)
        except WorkLimitError:
            raise WorkLimitError(
                f"choosability search exceeded {step_limit} steps"
            ) from None
        steps += 1
        return got is not None

    def lexleast_completion() -> ListAssignment:
        base = tuple(range(1, k + 1))
        full = list(prefix) + [base] * (n - len(prefix))
        return tuple(frozenset(t) for t in full)

    def search(depth: int, m: int) -> ListAssignment | None:
        nonlocal steps
        steps += 1
        if steps > step_limit:
            raise WorkLimitError(f"choosability search exceeded {step_limit} steps")
        if depth > 0 and not prefix_colorable(depth):
            return lexleast_completion()
        if all(degrees[v] < k for v in range(depth, n)):
            return None  # every completion extends greedily
        if depth == n:
            return None
        for cand in _canonical_candidates(m, k):
            prefix.append(cand)
            witness = search(depth + 1, max(m, cand[-1]))
            prefix.pop()
            if witness is not None:
                return witness
        return None

    witness = search(0, 0)
    if witness is None:
        return True, None
    return False, witness


def list_chromatic_number(
    g: Graph, cap: int, *, step_limit: int = DEFAULT_CHOOSABILITY_STEPS
) -> int:
    """Smallest k <= cap with every k-list assignment colorable."""
    if cap < 1:
        raise InputError(f"cap must be >= 1, got {cap}")
    for k in range(1, cap + 1):
        ok, _ = is_k_choosable(g, k, step_limit=step_limit)
        if ok:
            return k
    raise ExhaustionError(f"list chromatic number exceeds cap {cap}")


def chromatic_number(g: Graph, *, step_limit: int = DEFAULT_COLORING_STEPS) -> int:
    """Exact chromatic number via uniform lists of increasing size."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        lists = tuple(frozenset(range(1, k + 1)) for _ in range(g.n))
        if find_list_coloring(g, lists, step_limit=step_limit) is not None:
            return k
    raise AssertionError("unreachable: n colors always suffice")


def parse_lists(text: str, n: int) -> ListAssignment:
    """Parse the list file format; every vertex must appear exactly once."""
    entries: dict[int, frozenset[int]] = {}
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError(line_no, f"expected 'v: colors', got {raw!r}")
        try:
            v = int(head.strip())
        except ValueError:
            raise ParseError(line_no, f"malformed vertex id {head.strip()!r}") from None
        if not (0 <= v < n):
            raise ParseError(line_no, f"vertex {v} out of range (n={n})")
        if v in entries:
            raise ParseError(line_no, f"duplicate list for vertex {v}")
        colors = []
        for tok in tail.split():
            try:
                c = int(tok)
            except ValueError:
                raise ParseError(line_no, f"malformed color {tok!r}") from None
            if c < 1:
                raise ParseError(line_no, f"colors must be positive, got {c}")
            if colors and c <= colors[-1]:
                raise ParseError(line_no, "colors must be strictly increasing")
            colors.append(c)
        entries[v] = frozenset(colors)
    missing = [v for v in range(n) if v not in entries]
    if missing:
        raise ParseError(1, f"missing lists for vertices {missing}")
    return tuple(entries[v] for v in range(n))


def render_lists(lists: ListAssignment) -> str:
    """Canonical list file: vertices ascending, colors increasing."""
    out = []
    for v, colors in enumerate(lists):
        body = " ".join(str(c) for c in sorted(colors))
        out.append(f"{v}: {body}\n" if body else f"{v}:\n")
    return "".join(out)

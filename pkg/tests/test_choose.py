import random
from itertools import combinations

import pytest

from listminor.choose import (
    chromatic_number,
    clique_extension_feasible,
    find_list_coloring,
    is_k_choosable,
    is_proper_list_coloring,
    list_chromatic_number,
    parse_lists,
    render_lists,
)
from listminor.errors import ExhaustionError, InputError, ParseError, WorkLimitError
from listminor.graphs import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    petersen_graph,
)
from oracles import (
    brute_chromatic,
    brute_is_k_choosable,
    brute_list_colorable,
    brute_sdr_feasible,
    random_graph,
)


def uniform_lists(n, colors):
    return tuple(frozenset(colors) for _ in range(n))


def k24_bad_lists():
    # Parts {0,1} and {2..5}; the classic non-2-choosable assignment.
    return tuple(
        frozenset(s) for s in [{1, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}]
    )


class TestFindListColoring:
    def test_c4_two_colors(self):
        g = cycle_graph(4)
        lists = uniform_lists(4, {1, 2})
        got = find_list_coloring(g, lists)
        assert got is not None and is_proper_list_coloring(g, lists, got)

    def test_k2_shared_singleton(self):
        g = complete_graph(2)
        assert find_list_coloring(g, uniform_lists(2, {1})) is None

    def test_k24_bad_lists_uncolorable(self):
        g = complete_bipartite_graph(2, 4)
        lists = k24_bad_lists()
        assert not brute_list_colorable(g, lists)
        assert find_list_coloring(g, lists) is None

    def test_agrees_with_brute_on_random_instances(self):
        rng = random.Random(20260811)
        for _ in range(60):
            n = rng.randint(1, 6)
            g = random_graph(rng, n, 0.5)
            lists = tuple(
                frozenset(rng.sample(range(1, 6), rng.randint(1, 3)))
                for _ in range(n)
            )
            got = find_list_coloring(g, lists)
            assert (got is not None) == brute_list_colorable(g, lists)
            if got is not None:
                assert is_proper_list_coloring(g, lists, got)

    def test_step_guard(self):
        g = complete_graph(8)
        with pytest.raises(WorkLimitError):
            find_list_coloring(g, uniform_lists(8, set(range(1, 8))), step_limit=5)

    def test_list_count_mismatch_rejected(self):
        with pytest.raises(InputError):
            find_list_coloring(complete_graph(2), uniform_lists(3, {1}))


class TestCliqueExtension:
    def test_examples(self):
        ok, assignment = clique_extension_feasible([frozenset({1}), frozenset({2})])
        assert ok and assignment == (1, 2)
        assert clique_extension_feasible([frozenset({1}), frozenset({1})]) == (False, None)
        sets = [frozenset({1, 2})] * 3
        assert clique_extension_feasible(list(sets)) == (False, None)

    def test_empty_family(self):
        assert clique_extension_feasible([]) == (True, ())

    def test_exhaustive_small_families(self):
        subsets = [frozenset(c) for size in range(0, 5) for c in combinations(range(1, 5), size)]
        for k in range(1, 4):
            for family in combinations(subsets, k):
                ok, assignment = clique_extension_feasible(list(family))
                assert ok == brute_sdr_feasible(family)
                if ok:
                    assert len(set(assignment)) == len(assignment)
                    assert all(c in s for c, s in zip(assignment, family))

    def test_random_larger_families(self):
        rng = random.Random(3)
        for _ in range(20000):
            k = rng.randint(4, 5)
            family = [
                frozenset(rng.sample(range(1, 7), rng.randint(0, 4))) for _ in range(k)
            ]
            ok, _ = clique_extension_feasible(family)
            assert ok == brute_sdr_feasible(family)


class TestChoosability:
    def test_c4_two_choosable(self):
        ok, witness = is_k_choosable(cycle_graph(4), 2)
        assert ok and witness is None

    def test_c4_matches_full_brute(self):
        assert brute_is_k_choosable(cycle_graph(4), 2)[0]

    def test_k24_not_two_choosable(self):
        g = complete_bipartite_graph(2, 4)
        ok, witness = is_k_choosable(g, 2)
        assert not ok
        assert witness is not None
        assert all(len(s) == 2 for s in witness)
        assert not brute_list_colorable(g, witness)
        assert is_k_choosable(g, 2) == (ok, witness)

    def test_k24_three_choosable(self):
        assert is_k_choosable(complete_bipartite_graph(2, 4), 3)[0]

    def test_k3_three_choosable_by_degrees(self):
        assert is_k_choosable(complete_graph(3), 3)[0]

    def test_k3_not_two_choosable_brute_agrees(self):
        ok, witness = is_k_choosable(complete_graph(3), 2)
        assert not ok and not brute_list_colorable(complete_graph(3), witness)
        assert not brute_is_k_choosable(complete_graph(3), 2)[0]

    def test_path_matches_brute(self):
        p3 = graph_from_edges(3, [(0, 1), (1, 2)])
        assert is_k_choosable(p3, 2)[0] == brute_is_k_choosable(p3, 2)[0] is True
        assert is_k_choosable(p3, 1)[0] == brute_is_k_choosable(p3, 1)[0] is False

    def test_spot_random_lists_colorable_when_choosable(self):
        g = cycle_graph(4)
        assert is_k_choosable(g, 2)[0]
        rng = random.Random(9)
        for _ in range(100):
            lists = tuple(
                frozenset(rng.sample(range(1, 9), 2)) for _ in range(4)
            )
            assert find_list_coloring(g, lists) is not None

    def test_work_guard(self):
        with pytest.raises(WorkLimitError):
            is_k_choosable(cycle_graph(6), 2, step_limit=10)


class TestChromatic:
    def test_list_chromatic_values(self):
        assert list_chromatic_number(complete_graph(4), 5) == 4
        assert list_chromatic_number(cycle_graph(4), 5) == 2
        assert list_chromatic_number(complete_bipartite_graph(2, 4), 5) == 3

    def test_cap_exhaustion(self):
        with pytest.raises(ExhaustionError):
            list_chromatic_number(complete_graph(4), 2)

    def test_chromatic_values(self):
        assert chromatic_number(complete_graph(4)) == 4
        assert chromatic_number(cycle_graph(5)) == 3
        assert chromatic_number(petersen_graph()) == 3

    def test_chromatic_matches_brute(self):
        rng = random.Random(13)
        for _ in range(25):
            g = random_graph(rng, rng.randint(1, 7), 0.5)
            assert chromatic_number(g) == brute_chromatic(g)

    def test_chi_at_most_chi_list(self):
        for g in (complete_graph(4), cycle_graph(4), cycle_graph(5),
                  complete_bipartite_graph(2, 4)):
            assert chromatic_number(g) <= list_chromatic_number(g, 6)

    def test_chi_list_monotone_under_deletion(self):
        rng = random.Random(20260811)
        for _ in range(3):
            n = rng.randint(3, 5)
            g = random_graph(rng, n, 0.6)
            edges = list(g.edges())
            if not edges:
                continue
            drop = rng.choice(edges)
            smaller = graph_from_edges(n, [e for e in edges if e != drop])
            assert list_chromatic_number(smaller, 6) <= list_chromatic_number(g, 6)


class TestListFiles:
    def test_round_trip(self):
        lists = k24_bad_lists()
        text = render_lists(lists)
        assert parse_lists(text, 6) == lists
        assert render_lists(parse_lists(text, 6)) == text

    def test_render_canonical(self):
        lists = (frozenset({3, 1}), frozenset())
        assert render_lists(lists) == "0: 1 3\n1:\n"

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_lists("0: 2 1\n", 1)
        with pytest.raises(ParseError):
            parse_lists("0: 1\n0: 2\n", 1)
        with pytest.raises(ParseError):
            parse_lists("0: 1\n", 2)
        with pytest.raises(ParseError):
            parse_lists("5: 1\n", 1)
        with pytest.raises(ParseError):
            parse_lists("0: 0\n", 1)

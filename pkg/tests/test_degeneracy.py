import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degpart.degeneracy import (AssignmentError, Partition, PartitionError, PartitionSpec,
                                degeneracy_of, degeneracy_ordering, earlier_neighbour_counts,
                                greedy_assign, parent_last_ordering, parse_partition, peel,
                                refine_partition, serialize_partition, split_forest,
                                validate_partition)
from degpart.graph import (Graph, GraphError, complete_graph, cycle_graph, disjoint_union,
                           named_graph, path_graph, random_regular)
from instances import to_nx
from test_graph import graphs


def brute_degeneracy(g: Graph) -> int:
    """max over vertex subsets of the minimum induced degree"""
    best = 0
    for r in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            s = set(sub)
            best = max(best, min(sum(1 for u in g.adj[v] if u in s) for v in sub))
    return best


class TestSpec:
    def test_parse(self):
        assert PartitionSpec.parse("1,0").classes == (1, 0)
        assert str(PartitionSpec((2, 0, 1))) == "2,0,1"
        assert PartitionSpec((1, 0)).capacity == 3

    @pytest.mark.parametrize("bad", ["", "1,-1", "a,b"])
    def test_bad(self, bad):
        with pytest.raises(PartitionError):
            PartitionSpec.parse(bad)

    def test_partition_range(self):
        with pytest.raises(PartitionError):
            Partition((1,), [0, 1])


class TestOrdering:
    @pytest.mark.parametrize("g, d", [(complete_graph(4), 3), (named_graph("petersen"), 3),
                                      (cycle_graph(5), 2), (path_graph(4), 1), (Graph(3), 0)])
    def test_known(self, g, d):
        order, got = degeneracy_ordering(g)
        assert got == d
        assert sorted(order) == list(range(g.n))
        assert max(earlier_neighbour_counts(g, order)) == d

    @settings(max_examples=150)
    @given(graphs(max_n=9))
    def test_exact_against_brute_force(self, g):
        order, d = degeneracy_ordering(g)
        assert d == brute_degeneracy(g)
        assert max(earlier_neighbour_counts(g, order)) == d

    def test_matches_core_numbers(self):
        rng = random.Random(0)
        for _ in range(50):
            g = Graph(40, [(u, v) for u, v in itertools.combinations(range(40), 2) if rng.random() < 0.15])
            order, d = degeneracy_ordering(g)
            assert d == max(nx.core_number(to_nx(g)).values())
            assert max(earlier_neighbour_counts(g, order)) == d

    def test_parent_last_star(self):
        star = Graph(5, [(0, i) for i in range(1, 5)])
        order = parent_last_ordering(star, 0)
        assert order[-1] == 0 and sorted(order[:-1]) == [1, 2, 3, 4]

    @pytest.mark.parametrize("g, root", [(cycle_graph(4), 0), (named_graph("petersen"), 3),
                                         (random_regular(60, 5, 2), 17)])
    def test_parent_last_predicate(self, g, root):
        order = parent_last_ordering(g, root)
        assert order[-1] == root
        pos = {v: i for i, v in enumerate(order)}
        for i, v in enumerate(order[:-1]):
            assert any(pos[u] > i for u in g.adj[v])

    def test_parent_last_disconnected(self):
        with pytest.raises(GraphError):
            parent_last_ordering(disjoint_union(path_graph(2), path_graph(2)), 0)


class TestGreedy:
    def test_p3_two_colouring(self):
        part = greedy_assign(path_graph(3), [0, 2, 1], (0, 0))
        assert part.class_of[0] == part.class_of[2] != part.class_of[1]

    def test_k4_minus_edge(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
        order, _ = degeneracy_ordering(g)
        assert validate_partition(g, greedy_assign(g, order, (1, 0)))

    def test_c5_single_forest_fails(self):
        g = cycle_graph(5)
        order, _ = degeneracy_ordering(g)
        with pytest.raises(AssignmentError):
            greedy_assign(g, order, (1,))

    def test_pinned_and_forbidden(self):
        g = path_graph(3)
        part = greedy_assign(g, [1, 0, 2], (1, 0), pinned={1: 1}, forbidden={0: {1}})
        assert part.class_of[1] == 1 and part.class_of[0] == 0

    def test_prefer_independent(self):
        g = path_graph(2)
        assert greedy_assign(g, [0, 1], (1, 0), prefer_independent=True).class_of == [1, 0]
        assert greedy_assign(g, [0, 1], (1, 0)).class_of == [0, 0]

    def test_duplicate_in_order(self):
        with pytest.raises(PartitionError):
            greedy_assign(path_graph(2), [0, 0], (1,))

    @settings(max_examples=300)
    @given(graphs(max_n=14), st.lists(st.integers(0, 3), min_size=1, max_size=4))
    def test_output_always_validates(self, g, spec):
        order, d = degeneracy_ordering(g)
        if sum(p + 1 for p in spec) <= d:
            return
        assert validate_partition(g, greedy_assign(g, order, spec))


class TestValidate:
    def test_petersen_single_class(self):
        g = named_graph("petersen")
        assert validate_partition(g, Partition((3,), [0] * 10))

    def test_triangle_core(self):
        g = complete_graph(3)
        report = validate_partition(g, Partition((1,), [0, 0, 0]))
        assert not report and report.failing == {0: [0, 1, 2]}

    def test_empty_class_ok(self):
        assert validate_partition(path_graph(3), Partition((1, 0, 0), [0, 0, 0]))

    @settings(max_examples=150)
    @given(graphs(max_n=9), st.integers(0, 3))
    def test_agrees_with_brute_force(self, g, p):
        ok = bool(validate_partition(g, Partition((p,), [0] * g.n)))
        assert ok == (brute_degeneracy(g) <= p)

    def test_degeneracy_of(self):
        assert degeneracy_of(named_graph("petersen"), range(5)) == 2
        assert peel(complete_graph(4), range(4), 2) == [0, 1, 2, 3]


class TestSplitAndRefine:
    def test_split_edge(self):
        assert split_forest(path_graph(2), [0, 1]) == ([0], [1])

    def test_split_p5(self):
        a, b = split_forest(path_graph(5), range(5))
        assert (len(a), len(b)) == (3, 2)

    def test_split_spanning_tree_of_petersen(self):
        g = named_graph("petersen")
        tree = nx.bfs_tree(to_nx(g), 0).to_undirected()
        t = Graph(10, list(tree.edges))
        a, b = split_forest(t, range(10))
        for side in (a, b):
            assert not any(t.has_edge(u, v) for u, v in itertools.combinations(side, 2))

    def test_split_rejects_cycle(self):
        with pytest.raises(PartitionError):
            split_forest(cycle_graph(4), range(4))

    def test_refine_forest_to_two_is(self):
        g = path_graph(6)
        out = refine_partition(g, Partition((1,), [0] * 6), [(0, 0)])
        assert out.spec.classes == (0, 0) and validate_partition(g, out)

    def test_refine_three_to_forests(self):
        g = named_graph("petersen")
        out = refine_partition(g, Partition((3,), [0] * 10), [(1, 1)])
        assert validate_partition(g, out)

    def test_refine_capacity(self):
        with pytest.raises(PartitionError, match="capacity"):
            refine_partition(path_graph(3), Partition((1,), [0, 0, 0]), [(0,)])

    def test_refine_mixed(self):
        g = random_regular(30, 4, 1)
        base = Partition((4, 0), [0] * 30)
        out = refine_partition(g, base, [(1, 1, 0), (0,)])
        assert out.spec.classes == (1, 1, 0, 0) and validate_partition(g, out)


class TestPartitionFile:
    def test_roundtrip(self):
        part = Partition((1, 0), [0, 1, 0])
        text = serialize_partition(part, ["hi"])
        assert text.splitlines()[:2] == ["c hi", "p partition 2 1 0"]
        assert text.splitlines()[2] == "v 1 1"
        assert parse_partition(text, 3) == part

    @pytest.mark.parametrize("text", [
        "v 1 1\n", "p partition 2 1\n", "p partition 1 1\nv 1 2\n", "p partition 1 1\nv 1 1\nv 1 1\n",
        "p partition 1 1\nv 1 1\n",
    ])
    def test_errors(self, text):
        with pytest.raises(PartitionError):
            parse_partition(text, 2)

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbow_forge.hypercore import (
    EdgeColoring,
    MultiHypergraph,
    PartitionWitness,
    RainbowMatching,
    SearchBudgetExceeded,
    components,
    disjoint_union,
    edge_components,
    find_r_partition,
    induced_subinstance,
    is_bipartite,
    is_proper,
    is_simple_graph,
    is_t_simple,
    max_codegree,
    max_degree,
    validate_rainbow,
    verify_r_partition,
)

from conftest import colored_instances


def test_edges_must_be_sorted_and_in_range():
    with pytest.raises(ValueError):
        MultiHypergraph(3, ((1, 0),))
    with pytest.raises(ValueError):
        MultiHypergraph(3, ((0, 3),))
    with pytest.raises(ValueError):
        MultiHypergraph(3, ((1, 1),))
    g = MultiHypergraph.from_edges(3, [[2, 0], (1, 0)])
    assert g.edges == ((0, 2), (0, 1))


def test_parallel_edges_are_distinct_records():
    g = MultiHypergraph(2, ((0, 1), (0, 1), (0, 1)))
    assert g.num_edges == 3
    assert max_degree(g) == 3
    assert max_codegree(g) == 3
    assert not is_simple_graph(g)
    assert not is_t_simple(g, 1)


def test_uniformity():
    assert MultiHypergraph(4, ((0, 1, 2), (1, 2, 3))).uniformity == 3
    assert MultiHypergraph(4, ((0, 1), (1, 2, 3))).uniformity is None
    assert MultiHypergraph(4).uniformity is None


def test_coloring_rejects_empty_class():
    with pytest.raises(ValueError):
        EdgeColoring(((0,), ()))


def test_check_partition_names_the_problem():
    g = MultiHypergraph(4, ((0, 1), (2, 3), (1, 2)))
    EdgeColoring(((0, 2), (1,))).check_partition(g)
    with pytest.raises(ValueError, match="missing=\\[2\\]"):
        EdgeColoring(((0,), (1,))).check_partition(g)
    with pytest.raises(ValueError, match="duplicated=\\[0\\]"):
        EdgeColoring(((0, 1), (0, 2))).check_partition(g)
    with pytest.raises(ValueError, match="out_of_range=\\[5\\]"):
        EdgeColoring(((0, 1, 2), (5,))).check_partition(g)


def test_codegree_needs_two_vertices():
    with pytest.raises(ValueError):
        max_codegree(MultiHypergraph(1, ((0,),)))


@settings(max_examples=60, deadline=None)
@given(colored_instances())
def test_degree_and_codegree_match_direct_counts(instance):
    g, _ = instance
    for v in range(g.num_vertices):
        assert g.degrees()[v] == sum(1 for e in g.edges if v in e)
    if g.num_vertices >= 2:
        expected = max(
            (sum(1 for e in g.edges if u in e and w in e)
             for u, w in itertools.combinations(range(g.num_vertices), 2)),
            default=0,
        )
        assert max_codegree(g) == expected


def test_is_proper():
    g = MultiHypergraph(4, ((0, 1), (2, 3), (1, 2)))
    assert is_proper(g, EdgeColoring(((0, 1), (2,))))
    assert not is_proper(g, EdgeColoring(((0, 2), (1,))))


def test_t_simple_levels():
    g = MultiHypergraph(5, ((0, 1, 2), (0, 1, 3), (2, 3, 4)))
    assert not is_t_simple(g, 1)
    assert is_t_simple(g, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 9), st.integers(0, 12))
def test_bipartite_against_networkx(seed, n, m):
    rng = random.Random(seed)
    edges = [tuple(sorted(rng.sample(range(n), 2))) for _ in range(m)]
    g = MultiHypergraph(n, tuple(edges))
    ref = nx.MultiGraph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from(edges)
    assert is_bipartite(g) == nx.is_bipartite(ref)


@settings(max_examples=60, deadline=None)
@given(colored_instances(max_vertices=10, max_edges=8))
def test_components_against_networkx(instance):
    g, _ = instance
    ref = nx.Graph()
    ref.add_nodes_from(range(g.num_vertices))
    for e in g.edges:
        ref.add_edges_from(zip(e, e[1:]))
    expected = sorted((frozenset(c) for c in nx.connected_components(ref)), key=min)
    assert components(g) == expected
    grouped = edge_components(g)
    assert sorted(e for comp in grouped for e in comp) == list(range(g.num_edges))


def _brute_r_partite(g, r):
    for labels in itertools.product(range(r), repeat=g.num_vertices):
        if all(len({labels[v] for v in e}) == r for e in g.edges):
            return True
    return False


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 7), st.integers(1, 7))
def test_r_partition_search_against_enumeration(seed, n, m):
    rng = random.Random(seed)
    g = MultiHypergraph(n, tuple(tuple(sorted(rng.sample(range(n), 3))) for _ in range(m)))
    w = find_r_partition(g, 3)
    assert (w is not None) == _brute_r_partite(g, 3)
    if w is not None:
        assert verify_r_partition(g, w, 3)


def test_r_partition_budget_and_uniformity_errors():
    g = MultiHypergraph(4, ((0, 1, 2), (1, 2, 3)))
    with pytest.raises(ValueError):
        find_r_partition(MultiHypergraph(3, ((0, 1),)), 3)
    with pytest.raises(SearchBudgetExceeded):
        find_r_partition(g, 3, node_budget=1)


def test_verify_r_partition_rejects_bad_witnesses():
    g = MultiHypergraph(4, ((0, 1), (2, 3)))
    assert verify_r_partition(g, PartitionWitness.from_labels([0, 1, 0, 1], 2), 2)
    assert not verify_r_partition(g, PartitionWitness.from_labels([0, 0, 0, 1], 2), 2)
    # vertex 3 uncovered
    assert not verify_r_partition(g, PartitionWitness((frozenset({0, 2}), frozenset({1}))), 2)


def test_disjoint_union_shifts_and_prefixes_labels():
    a = (MultiHypergraph(2, ((0, 1),)), EdgeColoring(((0,),), ("x",)))
    b = (MultiHypergraph(3, ((0, 2), (1, 2))), EdgeColoring(((1,), (0,))))
    g, c = disjoint_union([a, b])
    assert g.num_vertices == 5
    assert g.edges == ((0, 1), (2, 4), (3, 4))
    assert c.classes == ((0,), (2,), (1,))
    assert c.labels == ("0:x", "1:0", "1:1")


def test_validate_rainbow():
    g = MultiHypergraph(4, ((0, 1), (1, 2), (2, 3)))
    c = EdgeColoring(((0, 1), (2,)))
    assert validate_rainbow(g, c, RainbowMatching({0: 0, 1: 2}))
    assert not validate_rainbow(g, c, RainbowMatching({0: 1, 1: 2}))
    assert not validate_rainbow(g, c, RainbowMatching({0: 2, 1: 2}))
    assert not validate_rainbow(g, c, RainbowMatching({0: 0}))
    assert validate_rainbow(g, c, RainbowMatching({0: 0}), full=False)


def test_induced_subinstance_renumbers():
    g = MultiHypergraph(4, ((0, 1), (1, 2), (2, 3)))
    c = EdgeColoring(((0,), (1,), (2,)))
    sub_g, sub_c = induced_subinstance(g, c, [2, 0])
    assert sub_g.edges == ((2, 3), (0, 1))
    assert sub_c.classes == ((0,), (1,))

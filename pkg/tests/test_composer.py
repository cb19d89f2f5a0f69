import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbow_forge.composer import (
    DistributionPlan,
    blow_up_net,
    copy_bound,
    failing_subset,
    g_construction,
    hypothesis_check,
    hypothesis_check_prefix,
    hypothesis_check_subsets,
    join,
    replicate_to_class_size,
)
from rainbow_forge.designs import field_net, net_from_mols
from rainbow_forge.hypercore import EdgeColoring, MultiHypergraph, max_degree
from rainbow_forge.solver import decompose_and_solve

from conftest import brute_frm_exists

C4 = (MultiHypergraph(4, ((0, 1), (1, 2), (2, 3), (0, 3))), EdgeColoring(((0, 2), (1, 3))))


def test_join_of_two_four_cycles():
    plan = DistributionPlan.round_robin(C4[1].classes[1], 2)
    g, c = join(C4, C4, 1, plan)
    assert g.num_vertices == 8 and g.num_edges == 8
    assert c.num_classes == 3
    assert c.classes == ((0, 2, 5), (1, 3, 7), (4, 6))
    assert not brute_frm_exists(g, c)


def test_join_with_rainbow_input_can_have_rainbow_output():
    single = (MultiHypergraph(2, ((0, 1),)), EdgeColoring(((0,),)))
    g, c = join(single, C4, 0, DistributionPlan({0: 0, 2: 0}))
    assert brute_frm_exists(g, c)
    assert decompose_and_solve(g, c).found


def test_join_singleton_absorption_bookkeeping():
    h = (MultiHypergraph(2, ((0, 1), (0, 1))), EdgeColoring(((0,), (1,))))
    g, c = join(C4, h, 0, DistributionPlan({0: 0}))
    assert c.sizes() == [3, 2, 1]
    assert c.num_classes == 2 + 2 - 1


def test_join_validates_the_plan():
    with pytest.raises(ValueError, match="missing"):
        join(C4, C4, 0, DistributionPlan({0: 0}))
    with pytest.raises(ValueError, match="invalid target"):
        join(C4, C4, 0, DistributionPlan({0: 0, 2: 5}))
    with pytest.raises(ValueError):
        join(C4, C4, 4, DistributionPlan({}))
    with pytest.raises(ValueError):
        DistributionPlan({}, "shuffle")


def test_plan_strategies():
    assert DistributionPlan.round_robin([5, 6, 7], 2).assignment == {5: 0, 6: 1, 7: 0}
    assert DistributionPlan.singleton_per_class([5, 6], [1, 0]).assignment == {5: 1, 6: 0}
    plan = DistributionPlan.pairs_per_class([[1, 2], [3, 4]], [0, 1])
    assert plan.strategy == "pairs_per_class"
    assert plan.assignment == {1: 0, 2: 0, 3: 1, 4: 1}
    with pytest.raises(ValueError):
        DistributionPlan.singleton_per_class([1, 2, 3], [0, 1])


def test_hypothesis_examples():
    assert hypothesis_check([3, 3], 5)
    assert not hypothesis_check([1, 1], 3)
    for r, d, t in [(2, 2, 1), (3, 3, 2), (4, 2, 4)]:
        assert hypothesis_check([r * (d - 1), t], r * (d - 1) + t - 1)
    assert failing_subset([1, 1], 3) == (0, 1)
    assert failing_subset([3, 3], 5) is None


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=7), st.integers(1, 12))
def test_prefix_and_subset_checks_agree(sizes, q):
    assert hypothesis_check_prefix(sizes, q) == hypothesis_check_subsets(sizes, q)
    bad = failing_subset(sizes, q)
    if bad is None:
        assert hypothesis_check_subsets(sizes, q)
    else:
        assert sum(sizes[i] for i in bad) < q * (len(bad) - 1) + 1


def _formula(sizes, q):
    deficient = [s for s in sizes if s < q]
    if not deficient:
        return 1
    surplus = sum(deficient) - q * (len(deficient) - 1)
    return 1 + sum(math.ceil((q - s) / surplus) for s in deficient)


def test_replication_examples():
    grid = net_from_mols(3, [])
    g, c = blow_up_net(grid, [1, 1])
    rep = replicate_to_class_size(g, c, 5)
    assert rep.copies == 5 and rep.copy_bound == 5
    assert rep.coloring.sizes() == [5] * 6

    g, c = blow_up_net(net_from_mols(2, []), [1, 1])
    rep = replicate_to_class_size(g, c, 3)
    assert rep.copies == 3
    assert rep.coloring.sizes() == [3] * 4
    assert not brute_frm_exists(rep.graph, rep.coloring)

    rep = replicate_to_class_size(g, c, 2)
    assert rep.copies == 1 and rep.graph == g


def test_replication_errors():
    g, c = C4
    with pytest.raises(ValueError):
        replicate_to_class_size(g, c, 0)
    with pytest.raises(ValueError, match="hypothesis"):
        replicate_to_class_size(g, c, 4)
    with pytest.raises(ValueError, match="fewer"):
        replicate_to_class_size(g, c, 3, copies=2)
    one = (MultiHypergraph(2, ((0, 1), (0, 1))), EdgeColoring(((0, 1),)))
    assert replicate_to_class_size(*one, 2).copies == 1
    with pytest.raises(ValueError):
        replicate_to_class_size(*one, 3)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=4), st.integers(1, 9), st.integers(0, 2))
def test_replication_meets_the_bound(sizes, q, extra):
    edges, classes = [], []
    for s in sizes:
        classes.append(tuple(range(len(edges), len(edges) + s)))
        edges.extend([(0, 1)] * s)
    g, c = MultiHypergraph(2, tuple(edges)), EdgeColoring(tuple(classes))
    if not hypothesis_check_subsets(sizes, q):
        with pytest.raises(ValueError):
            replicate_to_class_size(g, c, q)
        return
    k = _formula(sizes, q)
    assert copy_bound(sizes, q) == k
    rep = replicate_to_class_size(g, c, q, copies=k + extra if k > 1 else None)
    assert rep.copies <= k + extra
    assert min(rep.coloring.sizes()) >= q
    assert rep.coloring.num_classes == rep.copies * (len(sizes) - 1) + 1
    assert rep.graph.num_vertices == 2 * rep.copies
    rep.coloring.check_partition(rep.graph)


def test_blow_up_examples():
    g, c = blow_up_net(net_from_mols(2, []), [1, 1])
    assert g.num_edges == 4 and c.sizes() == [2, 2]
    g, c = blow_up_net(net_from_mols(2, []), [1, 3])
    assert g.num_edges == 8 and c.sizes() == [2, 6] and max_degree(g) == 4
    net = field_net(3, 3)
    g, c = blow_up_net(net, [1, 1, 1])
    assert g == net.hypergraph
    with pytest.raises(ValueError):
        blow_up_net(net, [1, 1])
    with pytest.raises(ValueError):
        blow_up_net(net, [1, 0, 1])


@pytest.mark.parametrize("r,s,a", [(2, 2, (1, 3)), (3, 3, (2, 1, 1)), (2, 3, (1, 2, 3)), (4, 3, (1, 1, 1))])
def test_blow_up_degree_law(r, s, a):
    g, _ = blow_up_net(field_net(r, s), a)
    assert set(g.degrees()) == {sum(a)}


def test_g_construction_examples():
    g, c = g_construction(field_net(2, 3), [1, 1, 1])
    assert g.num_vertices == 8 and c.sizes() == [4, 4, 4]
    assert not brute_frm_exists(g, c)
    g, c = g_construction(net_from_mols(3, []), [1, 1])
    assert g.num_vertices == 9 and c.sizes() == [3, 3]
    g, c = g_construction(net_from_mols(2, []), [1, 3])
    assert c.sizes() == [2, 6]


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_g_construction_has_no_full_rainbow_matching(r, s):
    g, c = g_construction(field_net(r, s), [1] * s)
    assert decompose_and_solve(g, c).exhaustive


def test_join_contrapositive_on_random_inputs():
    # an output rainbow matching restricts to one of the inputs
    rng = random.Random(7)
    for _ in range(40):
        parts = []
        for _ in range(2):
            n = rng.randint(2, 5)
            m = rng.randint(2, 5)
            edges = tuple(tuple(sorted(rng.sample(range(n), 2))) for _ in range(m))
            k = rng.randint(1, min(3, m))
            labels = list(range(k)) + [rng.randrange(k) for _ in range(m - k)]
            rng.shuffle(labels)
            parts.append((MultiHypergraph(n, edges),
                          EdgeColoring(tuple(tuple(e for e in range(m) if labels[e] == j) for j in range(k)))))
        gp, hq = parts
        absorbed = rng.randrange(hq[1].num_classes)
        plan = DistributionPlan({e: rng.randrange(gp[1].num_classes) for e in hq[1].classes[absorbed]})
        out = join(gp, hq, absorbed, plan)
        if brute_frm_exists(*out):
            assert brute_frm_exists(*gp) or brute_frm_exists(*hq)

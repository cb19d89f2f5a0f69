import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from rainbow_forge.hypercore import EdgeColoring, MultiHypergraph

GOLDEN = Path(__file__).parent / "golden"


def brute_frm_exists(graph, coloring):
    """Reference oracle: any choice of one edge per class with pairwise disjoint edges."""
    for choice in itertools.product(*coloring.classes):
        sets = [set(graph.edges[e]) for e in choice]
        if all(not (a & b) for a, b in itertools.combinations(sets, 2)):
            return True
    return False


def brute_max_rainbow(graph, coloring):
    best = 0
    n = coloring.num_classes
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            for choice in itertools.product(*(coloring.classes[i] for i in subset)):
                sets = [set(graph.edges[e]) for e in choice]
                if all(not (a & b) for a, b in itertools.combinations(sets, 2)):
                    return size
    return best


def random_instance(rng, n_vertices, n_edges, n_classes, r):
    """Random r-uniform multi-hypergraph; the class count is capped at the edge count."""
    n_classes = min(n_classes, n_edges)
    edges = [tuple(sorted(rng.sample(range(n_vertices), r))) for _ in range(n_edges)]
    labels = list(range(n_classes)) + [rng.randrange(n_classes) for _ in range(n_edges - n_classes)]
    rng.shuffle(labels)
    classes = tuple(tuple(e for e in range(n_edges) if labels[e] == c) for c in range(n_classes))
    return MultiHypergraph(n_vertices, tuple(edges)), EdgeColoring(classes)


@st.composite
def colored_instances(draw, max_vertices=8, max_edges=9, max_classes=4, max_r=3):
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(r, max_vertices))
    m = draw(st.integers(1, max_edges))
    k = draw(st.integers(1, min(m, max_classes)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(random.Random(seed), n, m, k, r)


def load_golden(name):
    from rainbow_forge.documents import InstanceDocument

    return InstanceDocument.loads((GOLDEN / f"{name}.json").read_text())


def golden_names():
    return sorted(p.stem for p in GOLDEN.glob("*.json") if p.stem != "solver_counts")


@pytest.fixture
def solver_counts():
    return json.loads((GOLDEN / "solver_counts.json").read_text())


@pytest.fixture
def c4_triple():
    """Three disjoint 4-cycles with the 3-per-class coloring of the smallest grid construction."""
    from rainbow_forge.families import example1

    inst = example1(2, 2)
    return inst.graph, inst.coloring


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

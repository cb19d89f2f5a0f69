"""Search for a 3-per-class coloring of disjoint cycles with no full rainbow matching.

Seeded random restarts with swap moves; prints the first coloring found as JSON.
Usage: python3 scripts/three_cycles.py 4 4 7
"""

import itertools
import json
import random
import sys

from rainbow_forge.hypercore import EdgeColoring, MultiHypergraph
from rainbow_forge.solver import EXHAUSTED, decompose_and_solve


def cycles(lengths):
    edges, start = [], 0
    for n in lengths:
        edges.extend(tuple(sorted((start + i, start + (i + 1) % n))) for i in range(n))
        start += n
    return MultiHypergraph(start, tuple(edges))


def score(graph, labels, n_classes):
    """Number of full rainbow matchings (0 is the goal)."""
    classes = tuple(tuple(e for e in range(graph.num_edges) if labels[e] == c) for c in range(n_classes))
    masks = graph.edge_masks()
    count = 0
    for choice in itertools.product(*classes):
        used = 0
        for e in choice:
            if used & masks[e]:
                break
            used |= masks[e]
        else:
            count += 1
    return count, classes


def main(lengths, seed=0, restarts=200, steps=400):
    graph = cycles(lengths)
    m = graph.num_edges
    if m % 3:
        raise SystemExit("edge count must be a multiple of 3")
    k = m // 3
    rng = random.Random(seed)
    for _ in range(restarts):
        labels = [e % k for e in range(m)]
        rng.shuffle(labels)
        best, classes = score(graph, labels, k)
        for _ in range(steps):
            if best == 0:
                break
            a, b = rng.sample(range(m), 2)
            if labels[a] == labels[b]:
                continue
            labels[a], labels[b] = labels[b], labels[a]
            value, cand = score(graph, labels, k)
            if value <= best:
                best, classes = value, cand
            else:
                labels[a], labels[b] = labels[b], labels[a]
        if best == 0:
            assert decompose_and_solve(graph, EdgeColoring(classes)).status == EXHAUSTED
            return {"lengths": lengths, "num_vertices": graph.num_vertices,
                    "edges": [list(e) for e in graph.edges], "classes": [list(c) for c in classes]}
    raise SystemExit("no coloring found")


if __name__ == "__main__":
    print(json.dumps(main([int(x) for x in sys.argv[1:]] or [4, 4, 7])))

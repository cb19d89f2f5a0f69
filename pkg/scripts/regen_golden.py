"""Regenerate tests/golden from the builders. Review the diff before committing."""

import json
from pathlib import Path

from rainbow_forge.documents import InstanceDocument, build_document, export_dot
from rainbow_forge.hypercore import EdgeColoring, MultiHypergraph
from rainbow_forge.solver import decompose_and_solve, find_frm

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CORPUS = {
    "figure1": ("example1", {"r": 2, "delta": 2}),
    "figure2": ("example1", {"r": 3, "delta": 2}),
    "example1_r2_d3": ("example1", {"r": 2, "delta": 3}),
    "example2_r2_s3_d3": ("example2", {"r": 2, "s": 3, "delta": 3}),
    "small_n_r2_s3_d3_n9": ("small_n", {"r": 2, "s": 3, "delta": 3, "n": 9}),
    "sunflower_2_1_2": ("sunflower", {"r": 2, "t": 1, "delta": 2}),
    "sunflower_3_2_2": ("sunflower", {"r": 3, "t": 2, "delta": 2}),
    "prop41_shannon_3": ("prop41", {"delta": 3}),
    "knn_cayley_2": ("knn_cayley", {"n": 2}),
    "knn_cayley_3": ("knn_cayley", {"n": 3}),
    "knn_cayley_4": ("knn_cayley", {"n": 4}),
    "knn_cayley_5": ("knn_cayley", {"n": 5}),
    "bgs_3": ("bgs", {"n": 3}),
    "k2m_2": ("k2m", {"m": 2}),
    "thm15_1_d2": ("thm15_1", {"delta": 2}),
    "thm15_2_d2": ("thm15_2", {"delta": 2}),
    "galvin_g0_2": ("galvin_g0", {"delta": 2}),
    "galvin_2": ("galvin", {"delta": 2}),
}

THREE_CYCLES = {
    "three_cycles_4_4_7": {
        "lengths": [4, 4, 7],
        "classes": [[3, 9, 11], [0, 2, 13], [5, 7, 12], [4, 6, 14], [1, 8, 10]],
    },
    "three_cycles_4_7_7": {
        "lengths": [4, 7, 7],
        "classes": [[11, 13, 15], [0, 5, 10], [2, 4, 6], [9, 12, 17], [7, 14, 16], [1, 3, 8]],
    },
}

DOT = ("figure1", "figure2", "galvin_g0_2")


def cycle_document(lengths, classes) -> InstanceDocument:
    edges, start = [], 0
    for n in lengths:
        edges.extend(tuple(sorted((start + i, start + (i + 1) % n))) for i in range(n))
        start += n
    provenance = {"builder": "three_cycles", "params": {"lengths": lengths}, "version": "fixture"}
    return InstanceDocument(MultiHypergraph(start, tuple(edges)),
                            EdgeColoring(tuple(tuple(c) for c in classes)), None, provenance)


def corpus() -> dict[str, InstanceDocument]:
    docs = {name: build_document(fam, params) for name, (fam, params) in CORPUS.items()}
    for name, fx in THREE_CYCLES.items():
        docs[name] = cycle_document(fx["lengths"], fx["classes"])
    return docs


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    counts = {}
    for name, doc in corpus().items():
        # the package version is not part of the golden contract
        doc.provenance["version"] = "golden"
        (GOLDEN / f"{name}.json").write_text(doc.dumps())
        back = find_frm(doc.graph, doc.coloring, None)
        dec = decompose_and_solve(doc.graph, doc.coloring, None)
        counts[name] = {"status": back.status, "backtracking_nodes": back.nodes_explored,
                        "decomposition_nodes": dec.nodes_explored}
        if name in DOT:
            (GOLDEN / f"{name}.dot").write_text(export_dot(doc))
    (GOLDEN / "solver_counts.json").write_text(json.dumps(counts, sort_keys=True, indent=1) + "\n")


if __name__ == "__main__":
    main()

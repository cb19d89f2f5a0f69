"""Exact chromatic index of small multigraphs and matching partitions of edge sets."""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

from .hypercore import MultiHypergraph, SearchBudgetExceeded, edge_components

MAX_COMPONENT_EDGES = 64


def _odd_set_bound(edges: Sequence[tuple[int, int]]) -> int:
    verts = sorted({v for e in edges for v in e})
    if len(verts) > 12:
        return 0
    best = 0
    for size in range(3, len(verts) + 1, 2):
        for subset in itertools.combinations(verts, size):
            inside = set(subset)
            count = sum(1 for a, b in edges if a in inside and b in inside)
            best = max(best, math.ceil(count / (size // 2)))
    return best


def _color_with(edges: Sequence[tuple[int, int]], k: int, budget: int | None) -> list[int] | None:
    """Proper k-edge-coloring by DSATUR-ordered backtracking, or None if none exists."""
    m = len(edges)
    adjacent = [[j for j in range(m) if j != i and set(edges[i]) & set(edges[j])] for i in range(m)]
    colors = [-1] * m
    nodes = 0

    def pick() -> int:
        best, key = -1, None
        for i in range(m):
            if colors[i] != -1:
                continue
            sat = len({colors[j] for j in adjacent[i] if colors[j] != -1})
            cand = (sat, len(adjacent[i]), -i)
            if key is None or cand > key:
                best, key = i, cand
        return best

    def rec(done: int, top: int) -> bool:
        nonlocal nodes
        if done == m:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetExceeded(nodes)
        i = pick()
        banned = {colors[j] for j in adjacent[i]}
        # colors above ``top`` are interchangeable, so only the first of them is tried
        for c in range(min(top + 1, k)):
            if c in banned:
                continue
            colors[i] = c
            if rec(done + 1, max(top, c + 1)):
                return True
        colors[i] = -1
        return False

    return list(colors) if rec(0, 0) else None


def optimal_edge_coloring(
    graph: MultiHypergraph,
    edge_ids: Sequence[int] | None = None,
    max_component_edges: int = MAX_COMPONENT_EDGES,
    budget: int | None = 5_000_000,
) -> dict[int, int]:
    """Minimum proper edge-coloring of the given edges (all by default), per component."""
    if not graph.is_uniform(2):
        raise ValueError("chromatic index is computed for 2-uniform multigraphs only")
    ids = list(range(graph.num_edges)) if edge_ids is None else sorted(edge_ids)
    if edge_ids is not None:
        sub = MultiHypergraph(graph.num_vertices, tuple(graph.edges[e] for e in ids))
        groups = [[ids[j] for j in comp] for comp in edge_components(sub)]
    else:
        groups = edge_components(graph)
    result: dict[int, int] = {}
    for comp in groups:
        if len(comp) > max_component_edges:
            raise ValueError(
                f"component with {len(comp)} edges exceeds the cap of {max_component_edges}"
            )
        edges = [graph.edges[e] for e in comp]
        degree: dict[int, int] = {}
        for a, b in edges:
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        k = max(max(degree.values()), _odd_set_bound(edges))
        while True:
            colors = _color_with(edges, k, budget)
            if colors is not None:
                break
            k += 1
        result.update(zip(comp, colors))
    return result


def chromatic_index(graph: MultiHypergraph, max_component_edges: int = MAX_COMPONENT_EDGES) -> int:
    """Exact chromatic index (0 for an edgeless graph)."""
    coloring = optimal_edge_coloring(graph, max_component_edges=max_component_edges)
    return 1 + max(coloring.values(), default=-1)


def partition_into_matchings(
    graph: MultiHypergraph, edge_ids: Sequence[int], count: int, group_size: int | None = None
) -> list[list[int]]:
    """Split ``edge_ids`` into exactly ``count`` nonempty matchings.

    Starts from a minimum edge-coloring of those edges and splits the largest
    matchings until there are ``count`` of them. With ``group_size`` every
    matching must have exactly that many edges.
    """
    ids = sorted(edge_ids)
    if not 1 <= count <= len(ids):
        raise ValueError(f"cannot split {len(ids)} edges into {count} nonempty matchings")
    if group_size is not None:
        return _equal_matchings(graph, ids, count, group_size)
    colors = optimal_edge_coloring(graph, ids)
    groups: dict[int, list[int]] = {}
    for e in ids:
        groups.setdefault(colors[e], []).append(e)
    parts = [groups[c] for c in sorted(groups)]
    if len(parts) > count:
        raise ValueError(f"the edges need {len(parts)} matchings, more than {count}")
    while len(parts) < count:
        big = max(range(len(parts)), key=lambda j: (len(parts[j]), -j))
        parts.append([parts[big].pop()])
    return parts


def _equal_matchings(graph: MultiHypergraph, ids: list[int], count: int, size: int) -> list[list[int]]:
    if count * size != len(ids):
        raise ValueError(f"{len(ids)} edges do not split into {count} matchings of size {size}")
    vsets = {e: set(graph.edges[e]) for e in ids}
    groups: list[list[int]] = [[] for _ in range(count)]
    used: list[set[int]] = [set() for _ in range(count)]

    def rec(pos: int) -> bool:
        if pos == len(ids):
            return True
        e = ids[pos]
        tried_empty = False
        for g in range(count):
            if len(groups[g]) == size or used[g] & vsets[e]:
                continue
            if not groups[g]:
                if tried_empty:
                    continue
                tried_empty = True
            groups[g].append(e)
            used[g] |= vsets[e]
            if rec(pos + 1):
                return True
            groups[g].pop()
            used[g] -= vsets[e]
        return False

    if not rec(0):
        raise ValueError(f"no partition into {count} matchings of size {size}")
    return groups

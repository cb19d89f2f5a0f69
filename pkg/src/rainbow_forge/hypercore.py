"""Multi-hypergraphs, edge colorings, and the structural predicates on them.

Edges are identified by their position in ``MultiHypergraph.edges``; parallel
edges are distinct records with equal vertex tuples.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field


@dataclass(frozen=True)
class MultiHypergraph:
    """A vertex count plus an ordered multiset of edges (sorted vertex tuples)."""

    num_vertices: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be nonnegative")
        normalized = []
        for eid, edge in enumerate(self.edges):
            edge = tuple(int(v) for v in edge)
            if any(b <= a for a, b in zip(edge, edge[1:])):
                raise ValueError(f"edge {eid} is not strictly increasing: {edge}")
            if edge and (edge[0] < 0 or edge[-1] >= self.num_vertices):
                raise ValueError(f"edge {eid} has a vertex outside 0..{self.num_vertices - 1}")
            normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Iterable[int]]) -> "MultiHypergraph":
        """Build from unsorted vertex collections; each edge is sorted first."""
        return cls(num_vertices, tuple(tuple(sorted(e)) for e in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or None if the graph is edgeless or mixed."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_uniform(self, r: int) -> bool:
        return all(len(e) == r for e in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for edge in self.edges:
            for v in edge:
                deg[v] += 1
        return deg

    def incidence(self) -> list[list[int]]:
        """For each vertex, the ids of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for eid, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(eid)
        return inc

    def edge_masks(self) -> list[int]:
        """Vertex bitmask per edge, used by the search routines."""
        return [sum(1 << v for v in edge) for edge in self.edges]


@dataclass(frozen=True)
class EdgeColoring:
    """Color classes as tuples of edge ids; ``labels`` are display names only."""

    classes: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        classes = tuple(tuple(int(e) for e in cls) for cls in self.classes)
        for idx, cls in enumerate(classes):
            if not cls:
                raise ValueError(f"color class {idx} is empty")
        object.__setattr__(self, "classes", classes)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(classes):
                raise ValueError("labels must match the number of classes")
            object.__setattr__(self, "labels", labels)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self) -> dict[int, int]:
        return {e: i for i, cls in enumerate(self.classes) for e in cls}

    def check_partition(self, graph: MultiHypergraph) -> None:
        """Raise ValueError unless the classes partition the edge ids of ``graph``."""
        seen = sorted(e for cls in self.classes for e in cls)
        if seen != list(range(graph.num_edges)):
            counts = Counter(seen)
            dup = sorted(e for e, c in counts.items() if c > 1)
            missing = sorted(set(range(graph.num_edges)) - set(seen))
            extra = sorted(e for e in counts if not 0 <= e < graph.num_edges)
            raise ValueError(
                f"coloring is not a partition of the edges: duplicated={dup} "
                f"missing={missing} out_of_range={extra}"
            )


@dataclass(frozen=True)
class PartitionWitness:
    """Candidate vertex partition certifying r-partiteness."""

    parts: tuple[frozenset[int], ...]

    @classmethod
    def from_labels(cls, labels: Sequence[int], num_parts: int) -> "PartitionWitness":
        parts: list[set[int]] = [set() for _ in range(num_parts)]
        for v, p in enumerate(labels):
            parts[p].add(v)
        return cls(tuple(frozenset(p) for p in parts))

    def labels(self, num_vertices: int) -> list[int]:
        out = [-1] * num_vertices
        for idx, part in enumerate(self.parts):
            for v in part:
                out[v] = idx
        return out


@dataclass(frozen=True)
class RainbowMatching:
    """Map from class index to the edge chosen for it."""

    picks: Mapping[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.picks)


def max_degree(graph: MultiHypergraph) -> int:
    return max(graph.degrees(), default=0)


def max_codegree(graph: MultiHypergraph) -> int:
    """Largest number of edges containing a common pair of distinct vertices."""
    if graph.num_vertices < 2:
        raise ValueError("codegree needs at least two vertices")
    pairs: Counter[tuple[int, int]] = Counter()
    for edge in graph.edges:
        pairs.update(itertools.combinations(edge, 2))
    return max(pairs.values(), default=0)


def is_proper(graph: MultiHypergraph, coloring: EdgeColoring) -> bool:
    """True iff every color class is a matching."""
    for cls in coloring.classes:
        seen: set[int] = set()
        for eid in cls:
            edge = graph.edges[eid]
            if seen.intersection(edge):
                return False
            seen.update(edge)
    return True


def is_t_simple(graph: MultiHypergraph, t: int) -> bool:
    """True iff any two distinct edges (parallel ones included) share at most t vertices."""
    edges = [frozenset(e) for e in graph.edges]
    return all(len(a & b) <= t for a, b in itertools.combinations(edges, 2))


def is_simple_graph(graph: MultiHypergraph) -> bool:
    """2-uniform with no parallel edges."""
    return graph.is_uniform(2) and len(set(graph.edges)) == graph.num_edges


def verify_r_partition(graph: MultiHypergraph, witness: PartitionWitness, r: int) -> bool:
    """Check that ``witness`` has r disjoint covering parts met at most once by every edge."""
    if not graph.is_uniform(r):
        raise ValueError(f"graph is not {r}-uniform")
    if len(witness.parts) != r:
        return False
    labels = [-1] * graph.num_vertices
    for idx, part in enumerate(witness.parts):
        for v in part:
            if not 0 <= v < graph.num_vertices or labels[v] != -1:
                return False
            labels[v] = idx
    if -1 in labels:
        return False
    return all(len({labels[v] for v in edge}) == len(edge) for edge in graph.edges)


def find_r_partition(
    graph: MultiHypergraph, r: int, node_budget: int | None = 1_000_000
) -> PartitionWitness | None:
    """Search for an r-partition witness by exact backtracking.

    Returns None when none exists. Raises ``SearchBudgetExceeded`` if the
    budget runs out before the search completes.
    """
    if not graph.is_uniform(r):
        raise ValueError(f"graph is not {r}-uniform")
    n = graph.num_vertices
    inc = graph.incidence()
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for edge in graph.edges:
        for u in edge:
            neighbors[u].update(w for w in edge if w != u)
    labels = [-1] * n
    nodes = 0

    def assign(order: list[int], pos: int, top: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(nodes)
        v = order[pos]
        banned = {labels[w] for w in neighbors[v]}
        # symmetry: a fresh part is only opened in its lowest free index
        for p in range(min(top + 1, r)):
            if p not in banned:
                labels[v] = p
                if assign(order, pos + 1, max(top, p + 1) if p == top else top):
                    return True
        labels[v] = -1
        return False

    for comp in components(graph):
        # BFS order keeps constrained vertices early
        start = min(comp)
        order, seen = [start], {start}
        for v in order:
            for eid in inc[v]:
                for w in graph.edges[eid]:
                    if w not in seen:
                        seen.add(w)
                        order.append(w)
        if not assign(order, 0, 0):
            return None
    return PartitionWitness.from_labels(labels, r)


def is_bipartite(graph: MultiHypergraph) -> bool:
    """2-coloring check for a 2-uniform multigraph."""
    if not graph.is_uniform(2):
        raise ValueError("bipartiteness is defined here for 2-uniform graphs")
    side = [-1] * graph.num_vertices
    inc = graph.incidence()
    for s in range(graph.num_vertices):
        if side[s] != -1:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for eid in inc[u]:
                a, b = graph.edges[eid]
                w = b if a == u else a
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


class SearchBudgetExceeded(RuntimeError):
    """An exact search stopped before completing."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exceeded after {nodes} nodes")
        self.nodes = nodes


def disjoint_union(
    parts: Sequence[tuple[MultiHypergraph, EdgeColoring]],
) -> tuple[MultiHypergraph, EdgeColoring]:
    """Place the inputs side by side; vertex and edge ids shift in input order.

    Class labels are prefixed by the index of the input they came from.
    """
    edges: list[tuple[int, ...]] = []
    classes: list[tuple[int, ...]] = []
    labels: list[str] = []
    v_off = 0
    for idx, (g, c) in enumerate(parts):
        e_off = len(edges)
        edges.extend(tuple(v + v_off for v in e) for e in g.edges)
        for j, cls in enumerate(c.classes):
            classes.append(tuple(e + e_off for e in cls))
            base = c.labels[j] if c.labels is not None else str(j)
            labels.append(f"{idx}:{base}")
        v_off += g.num_vertices
    return MultiHypergraph(v_off, tuple(edges)), EdgeColoring(tuple(classes), tuple(labels))


def components(graph: MultiHypergraph) -> list[frozenset[int]]:
    """Connected components of the incidence structure, ordered by least vertex.

    Isolated vertices form singleton components.
    """
    parent = list(range(graph.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in graph.edges:
        for a, b in zip(edge, edge[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set[int]] = {}
    for v in range(graph.num_vertices):
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(groups[k]) for k in sorted(groups, key=lambda k: min(groups[k]))]


def edge_components(graph: MultiHypergraph) -> list[list[int]]:
    """Edge ids grouped by component, skipping components without edges."""
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(components(graph)):
        for v in comp:
            comp_of[v] = idx
    grouped: dict[int, list[int]] = {}
    for eid, edge in enumerate(graph.edges):
        if edge:
            grouped.setdefault(comp_of[edge[0]], []).append(eid)
    return [grouped[k] for k in sorted(grouped)]


def validate_rainbow(
    graph: MultiHypergraph,
    coloring: EdgeColoring,
    matching: RainbowMatching,
    full: bool = True,
) -> bool:
    """Check a rainbow matching with a seen-vertex set; ``full`` demands every class."""
    seen: set[int] = set()
    for cls_idx, eid in matching.picks.items():
        if not 0 <= cls_idx < coloring.num_classes:
            return False
        if eid not in coloring.classes[cls_idx]:
            return False
        edge = graph.edges[eid]
        if seen.intersection(edge):
            return False
        seen.update(edge)
    if full and set(matching.picks) != set(range(coloring.num_classes)):
        return False
    return True


def induced_subinstance(
    graph: MultiHypergraph, coloring: EdgeColoring, keep_classes: Iterable[int]
) -> tuple[MultiHypergraph, EdgeColoring]:
    """Restrict to the given classes, renumbering edges densely (vertices kept)."""
    keep = list(keep_classes)
    old_ids = [e for i in keep for e in coloring.classes[i]]
    remap = {old: new for new, old in enumerate(old_ids)}
    g = MultiHypergraph(graph.num_vertices, tuple(graph.edges[e] for e in old_ids))
    c = EdgeColoring(tuple(tuple(remap[e] for e in coloring.classes[i]) for i in keep))
    return g, c

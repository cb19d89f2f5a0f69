"""List edge-colorings, their rainbow-matching cover, and the color-degree counterexample."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

from .hypercore import (
    EdgeColoring,
    MultiHypergraph,
    components,
    max_codegree,
    max_degree,
)
from .solver import solve

DIRECT_ORACLE_CAP = 10**6


@dataclass(frozen=True)
class ListInstance:
    host: MultiHypergraph
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lists = tuple(tuple(sorted(set(int(c) for c in lst))) for lst in self.lists)
        if len(lists) != self.host.num_edges:
            raise ValueError("need exactly one list per host edge")
        for eid, lst in enumerate(lists):
            if not lst:
                raise ValueError(f"list of edge {eid} is empty")
        object.__setattr__(self, "lists", lists)

    def colors(self) -> list[int]:
        return sorted({c for lst in self.lists for c in lst})

    def color_edges(self, color: int) -> list[int]:
        return [e for e, lst in enumerate(self.lists) if color in lst]

    def assignments(self) -> int:
        return math.prod(len(lst) for lst in self.lists)


@dataclass(frozen=True)
class CoverInstance:
    """Disjoint union over colors c of the host edges whose lists contain c.

    ``origin[k]`` is the (host edge, color) pair behind cover edge k;
    ``component_of_color`` gives the index of each color's block in color order.
    A block is one component whenever H_c is connected.
    """

    cover: MultiHypergraph
    coloring: EdgeColoring
    origin: tuple[tuple[int, int], ...]
    component_of_color: dict[int, int] = field(default_factory=dict)


def list_edge_cover(li: ListInstance) -> CoverInstance:
    """Build the cover; isolated vertices of each color block are dropped."""
    edges: list[tuple[int, ...]] = []
    origin: list[tuple[int, int]] = []
    blocks: dict[int, int] = {}
    offset = 0
    for idx, color in enumerate(li.colors()):
        blocks[color] = idx
        host_edges = li.color_edges(color)
        verts = sorted({v for e in host_edges for v in li.host.edges[e]})
        local = {v: offset + k for k, v in enumerate(verts)}
        for e in host_edges:
            edges.append(tuple(local[v] for v in li.host.edges[e]))
            origin.append((e, color))
        offset += len(verts)
    position = {pair: k for k, pair in enumerate(origin)}
    classes = tuple(
        tuple(position[(e, c)] for c in li.lists[e]) for e in range(li.host.num_edges)
    )
    labels = tuple(f"e{e}" for e in range(li.host.num_edges))
    return CoverInstance(MultiHypergraph(offset, tuple(edges)), EdgeColoring(classes, labels),
                         tuple(origin), blocks)


@dataclass
class CoverConditionReport:
    condition_a: bool
    condition_b: bool
    a_failures: list[tuple[int, int, tuple[int, ...]]]
    b_failures: list[tuple[int, int, int, int, int, int]]

    @property
    def ok(self) -> bool:
        return self.condition_a and self.condition_b


def check_cover_conditions(
    graph: MultiHypergraph | CoverInstance,
    coloring: EdgeColoring | None = None,
    max_failures: int = 50,
) -> CoverConditionReport:
    """Necessary conditions for being a list edge-cover.

    (a) each component meets each class in at most one edge;
    (b) for components C != C' and classes i != j represented in both, the
        intersection sizes of the representatives agree.
    a_failures: (component, class, edges); b_failures: (C, C', i, j, |e∩f|, |e'∩f'|).
    Accepts a CoverInstance or any (graph, coloring) pair.
    """
    if isinstance(graph, CoverInstance):
        graph, coloring = graph.cover, graph.coloring
    if coloring is None:
        raise TypeError("a coloring is required alongside a bare hypergraph")
    comp_of = {}
    for idx, comp in enumerate(components(graph)):
        for v in comp:
            comp_of[v] = idx
    class_of = coloring.class_of()
    per: dict[tuple[int, int], list[int]] = {}
    for eid, edge in enumerate(graph.edges):
        per.setdefault((comp_of[edge[0]], class_of[eid]), []).append(eid)
    a_fail = [(c, i, tuple(es)) for (c, i), es in sorted(per.items()) if len(es) > 1]

    by_comp: dict[int, dict[int, list[int]]] = {}
    for (c, i), es in per.items():
        by_comp.setdefault(c, {})[i] = es
    # (class pair) -> component -> set of intersection sizes over representative choices
    sizes: dict[tuple[int, int], dict[int, set[int]]] = {}
    for c, cls_map in by_comp.items():
        for i, j in itertools.combinations(sorted(cls_map), 2):
            found = {
                len(set(graph.edges[e]) & set(graph.edges[f]))
                for e in cls_map[i] for f in cls_map[j]
            }
            sizes.setdefault((i, j), {})[c] = found
    b_fail = []
    for (i, j), per_comp in sorted(sizes.items()):
        for c1, c2 in itertools.combinations(sorted(per_comp), 2):
            for x in sorted(per_comp[c1]):
                for y in sorted(per_comp[c2]):
                    if x != y and len(b_fail) < max_failures:
                        b_fail.append((c1, c2, i, j, x, y))
    b_ok = all(
        len(set().union(*per_comp.values())) <= 1 for per_comp in sizes.values()
    )
    return CoverConditionReport(not a_fail, b_ok, a_fail[:max_failures], b_fail)


def color_degree(li: ListInstance) -> int:
    best = 0
    for color in li.colors():
        sub = MultiHypergraph(li.host.num_vertices, tuple(li.host.edges[e] for e in li.color_edges(color)))
        best = max(best, max_degree(sub))
    return best


def color_codegree(li: ListInstance) -> int:
    if li.host.num_vertices < 2:
        raise ValueError("codegree needs at least two vertices")
    best = 0
    for color in li.colors():
        sub = MultiHypergraph(li.host.num_vertices, tuple(li.host.edges[e] for e in li.color_edges(color)))
        best = max(best, max_codegree(sub))
    return best


def is_proper_l_coloring(li: ListInstance, phi: dict[int, int]) -> bool:
    if set(phi) != set(range(li.host.num_edges)):
        return False
    if any(phi[e] not in li.lists[e] for e in phi):
        return False
    for e, f in itertools.combinations(range(li.host.num_edges), 2):
        if phi[e] == phi[f] and set(li.host.edges[e]) & set(li.host.edges[f]):
            return False
    return True


def direct_l_coloring(li: ListInstance, cap: int | None = DIRECT_ORACLE_CAP) -> dict[int, int] | None:
    """Enumerate assignments edge by edge, rejecting a prefix as soon as two touching edges clash.

    Independent of the cover and the rainbow-matching solver.
    """
    if cap is not None and li.assignments() > cap:
        raise ValueError(f"{li.assignments()} assignments exceed the direct-oracle cap {cap}")
    m = li.host.num_edges
    touching = [
        [f for f in range(e) if set(li.host.edges[e]) & set(li.host.edges[f])] for e in range(m)
    ]
    phi: dict[int, int] = {}

    def rec(e: int) -> bool:
        if e == m:
            return True
        for c in li.lists[e]:
            if all(phi[f] != c for f in touching[e]):
                phi[e] = c
                if rec(e + 1):
                    return True
                del phi[e]
        return False

    return dict(phi) if rec(0) else None


def l_coloring_exists(li: ListInstance, cross_check: bool = True) -> dict[int, int] | None:
    """Proper L-coloring through the cover's full rainbow matching, or None."""
    cover = list_edge_cover(li)
    report = solve(cover.cover, cover.coloring, budget=None)
    phi = None
    if report.found:
        phi = {}
        for cls_idx, k in report.witness.picks.items():
            e, c = cover.origin[k]
            assert e == cls_idx
            phi[e] = c
        if not is_proper_l_coloring(li, phi):
            raise AssertionError("pulled-back coloring is not a proper L-coloring")
    if cross_check and li.assignments() <= DIRECT_ORACLE_CAP:
        direct = direct_l_coloring(li)
        if (direct is None) != (phi is None):
            raise AssertionError("rainbow-matching route and direct enumeration disagree")
    return phi


def induced_edge_isomorphism(
    first: MultiHypergraph, second: MultiHypergraph, edge_map: dict[int, int]
) -> dict[int, int] | None:
    """A vertex bijection carrying each edge e of ``first`` onto ``edge_map[e]``, if one exists.

    Both graphs must have no isolated vertices.
    """
    if sorted(edge_map) != list(range(first.num_edges)):
        return None
    if sorted(edge_map.values()) != list(range(second.num_edges)):
        return None
    if first.num_vertices != second.num_vertices:
        return None
    inc = first.incidence()
    candidates = []
    for v in range(first.num_vertices):
        if not inc[v]:
            return None
        options = set(second.edges[edge_map[inc[v][0]]])
        for e in inc[v][1:]:
            options &= set(second.edges[edge_map[e]])
        candidates.append(sorted(options))
    inc2 = second.incidence()
    order = sorted(range(first.num_vertices), key=lambda v: len(candidates[v]))
    image: dict[int, int] = {}
    taken: set[int] = set()

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in candidates[v]:
            # degree must match so w is not also inside edges that v is outside of
            if w in taken or len(inc2[w]) != len(inc[v]):
                continue
            image[v] = w
            taken.add(w)
            if rec(pos + 1):
                return True
            taken.discard(w)
            del image[v]
        return False

    if not rec(0):
        return None
    for e, edge in enumerate(first.edges):
        if sorted(image[v] for v in edge) != list(second.edges[edge_map[e]]):
            return None
    return image


def cover_matches(
    cover: CoverInstance,
    graph: MultiHypergraph,
    coloring: EdgeColoring,
    component_for_color: dict[int, int] | None = None,
) -> bool:
    """Check that (graph, coloring) is the cover up to isomorphism, class i onto class i.

    The origin map fixes the edge correspondence: cover edge (e, c) must land
    on the unique edge of class e inside the component assigned to color c.
    By default color c is assigned component c of ``graph`` (components
    ordered by least vertex), which is how the builders number their lists.
    """
    if cover.coloring.num_classes != coloring.num_classes:
        return False
    if cover.cover.num_edges != graph.num_edges:
        return False
    comp_of = {}
    for idx, comp in enumerate(components(graph)):
        for v in comp:
            comp_of[v] = idx
    class_of = coloring.class_of()
    slot: dict[tuple[int, int], int] = {}
    for eid, edge in enumerate(graph.edges):
        key = (comp_of[edge[0]], class_of[eid])
        if key in slot:
            return False
        slot[key] = eid
    edge_map: dict[int, int] = {}
    for k, (host_edge, color) in enumerate(cover.origin):
        comp = color if component_for_color is None else component_for_color.get(color)
        target = slot.get((comp, host_edge))
        if target is None:
            return False
        edge_map[k] = target
    return induced_edge_isomorphism(cover.cover, graph, edge_map) is not None


@dataclass
class GalvinInstance:
    graph: MultiHypergraph
    coloring: EdgeColoring
    host: MultiHypergraph
    lists: ListInstance
    delta: int


def _broom_and_stars(delta: int) -> tuple[list[tuple[int, int]], list[int], int]:
    """G0 edges and their colors (0..Δ²), built block by block.

    Broom: v, w, u_0..u_{Δ-1}; vw has color 0, u_0 v color 1, u_i w color 1+iΔ.
    S_0: star K^i (i = 1..Δ-1) takes the colors 1+i+jΔ, j = 0..Δ-1.
    S_i (i = 1..Δ): Δ-1 stars; star c gives edge j the color (i-1)Δ + 1 + ((j + c) mod Δ).
    """
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    v, w = 0, 1
    u = list(range(2, 2 + delta))
    edges.append((v, w))
    colors.append(0)
    edges.append((v, u[0]))
    colors.append(1)
    for i in range(1, delta):
        edges.append((w, u[i]))
        colors.append(1 + i * delta)
    nxt = 2 + delta

    def star(star_colors: Sequence[int]) -> None:
        nonlocal nxt
        center = nxt
        for k, col in enumerate(star_colors):
            edges.append((center, center + 1 + k))
            colors.append(col)
        nxt += 1 + len(star_colors)

    for i in range(1, delta):
        star([1 + i + j * delta for j in range(delta)])
    for i in range(1, delta + 1):
        for c in range(delta - 1):
            star([(i - 1) * delta + 1 + ((j + c) % delta) for j in range(delta)])
    return [tuple(sorted(e)) for e in edges], colors, nxt


def galvin_h0(delta: int) -> MultiHypergraph:
    """K_{Δ,Δ} plus a pendant edge at x_0; edge k is the host edge e_k.

    Vertices: x_i = i, y_j = Δ + j, z = 2Δ. e_0 = x_0 y_0, e_1 = x_0 z,
    e_{1+j+iΔ} = x_i y_j otherwise.
    """
    edges: dict[int, tuple[int, int]] = {0: (0, delta), 1: (0, 2 * delta)}
    for i in range(delta):
        for j in range(delta):
            if i == 0 and j == 0:
                continue
            edges[1 + j + i * delta] = (i, delta + j)
    return MultiHypergraph(2 * delta + 1, tuple(edges[k] for k in range(delta * delta + 1)))


def galvin_g0(delta: int) -> GalvinInstance:
    """G0 with classes F_0..F_{Δ²} and the host (H0, L0) it covers.

    L0(e_k) lists the components of G0 (numbered broom, S_0's stars, then
    S_1..S_Δ's stars) that contain an edge of color k.
    """
    if delta < 2:
        raise ValueError("need delta >= 2")
    edges, colors, n_vertices = _broom_and_stars(delta)
    g = MultiHypergraph(n_vertices, tuple(edges))
    classes = [[] for _ in range(delta * delta + 1)]
    for eid, col in enumerate(colors):
        classes[col].append(eid)
    coloring = EdgeColoring(tuple(tuple(c) for c in classes),
                            tuple(f"F{k}" for k in range(len(classes))))
    comp_of = {}
    for idx, comp in enumerate(components(g)):
        for vtx in comp:
            comp_of[vtx] = idx
    lists = [set() for _ in classes]
    for eid, col in enumerate(colors):
        lists[col].add(comp_of[g.edges[eid][0]])
    host = galvin_h0(delta)
    li = ListInstance(host, tuple(tuple(sorted(s)) for s in lists))
    return GalvinInstance(g, coloring, host, li, delta)


def galvin_counterexample(delta: int) -> GalvinInstance:
    """Δ copies of G0 with the copies of F_0 merged into E_0; host copies glued along e_0.

    Classes: E_0, then F_1..F_{Δ²} of copy 0, of copy 1, and so on.
    Host: x_0 = 0, y_0 = 1, then per copy the other 2Δ-1 vertices; host edge
    0 is e_0, followed by e_1..e_{Δ²} of each copy. List colors of copy t are
    shifted by tΔ².
    """
    base = galvin_g0(delta)
    g0, c0 = base.graph, base.coloring
    edges: list[tuple[int, ...]] = []
    for t in range(delta):
        edges.extend(tuple(v + t * g0.num_vertices for v in e) for e in g0.edges)
    g = MultiHypergraph(delta * g0.num_vertices, tuple(edges))
    m0 = g0.num_edges
    e0_class = tuple(e + t * m0 for t in range(delta) for e in c0.classes[0])
    classes = [e0_class]
    labels = ["E0"]
    for t in range(delta):
        for k in range(1, len(c0.classes)):
            classes.append(tuple(e + t * m0 for e in c0.classes[k]))
            labels.append(f"{t}:F{k}")
    coloring = EdgeColoring(tuple(classes), tuple(labels))

    h0 = base.host
    n_colors = delta * delta
    x0, y0 = 0, delta
    host_edges: list[tuple[int, ...]] = [(0, 1)]
    host_lists: list[tuple[int, ...]] = [
        tuple(sorted(c + t * n_colors for t in range(delta) for c in base.lists.lists[0]))
    ]
    per_copy = h0.num_vertices - 2
    for t in range(delta):
        vmap = {x0: 0, y0: 1}
        others = [v for v in range(h0.num_vertices) if v not in (x0, y0)]
        for k, v in enumerate(others):
            vmap[v] = 2 + t * per_copy + k
        for k in range(1, h0.num_edges):
            host_edges.append(tuple(sorted(vmap[v] for v in h0.edges[k])))
            host_lists.append(tuple(c + t * n_colors for c in base.lists.lists[k]))
    host = MultiHypergraph(2 + delta * per_copy, tuple(host_edges))
    return GalvinInstance(g, coloring, host, ListInstance(host, tuple(host_lists)), delta)


def list_sizes(li: ListInstance) -> Counter:
    return Counter(len(lst) for lst in li.lists)


def broom(delta: int) -> tuple[MultiHypergraph, EdgeColoring]:
    """The Δ-broom alone, classes {vw} and the other Δ edges."""
    if delta < 2:
        raise ValueError("need delta >= 2")
    edges, _, _ = _broom_and_stars(delta)
    g = MultiHypergraph(2 + delta, tuple(edges[: delta + 1]))
    return g, EdgeColoring(((0,), tuple(range(1, delta + 1))), ("F0", "F1''"))


def broom_with_s0(delta: int) -> tuple[MultiHypergraph, EdgeColoring]:
    """Broom joined with the first star group S_0: classes F_0, F'_1..F'_Δ.

    The broom edge u_0 v lands in class F'_1 and u_i w in F'_{i+1}; star K^i
    gives its edge j to class F'_{1+j}, which realizes the colors 1+i+jΔ
    of G_0 collapsed modulo Δ.
    """
    if delta < 2:
        raise ValueError("need delta >= 2")
    edges, colors, _ = _broom_and_stars(delta)
    keep = 1 + delta + (delta - 1) * delta
    n_vertices = 2 + delta + (delta - 1) * (delta + 1)
    g = MultiHypergraph(n_vertices, tuple(edges[:keep]))
    classes: list[list[int]] = [[] for _ in range(delta + 1)]
    for eid in range(keep):
        col = colors[eid]
        classes[0 if col == 0 else 1 + (col - 1) // delta].append(eid)
    return g, EdgeColoring(tuple(tuple(c) for c in classes),
                           ("F0",) + tuple(f"F'{i}" for i in range(1, delta + 1)))

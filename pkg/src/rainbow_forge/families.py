"""Named extremal families: each builder returns an instance plus the claims it should satisfy."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .chromatic import chromatic_index, partition_into_matchings
from .composer import (
    Colored,
    DistributionPlan,
    Replication,
    failing_subset,
    g_construction,
    hypothesis_check,
    join,
    replicate_to_class_size,
)
from .designs import Net, field_net, net_from_mols
from .hypercore import (
    EdgeColoring,
    MultiHypergraph,
    PartitionWitness,
    SearchBudgetExceeded,
    disjoint_union,
    find_r_partition,
    max_degree,
)


@dataclass
class ClaimManifest:
    """Properties a builder asserts about its output; ``None`` means no claim."""

    r: int
    delta: int
    min_class_size: int
    n_classes: int
    frm_free: bool | None = True
    proper: bool | None = None
    t_simple: int | None = None
    chromatic_index_claim: int | None = None
    r_partite: bool | None = None
    partition_witness: PartitionWitness | None = None
    bipartite: bool | None = None
    simple: bool | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.partition_witness is not None:
            out["partition_witness"] = [sorted(p) for p in self.partition_witness.parts]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ClaimManifest":
        data = dict(data)
        witness = data.get("partition_witness")
        if witness is not None:
            data["partition_witness"] = PartitionWitness(tuple(frozenset(p) for p in witness))
        return cls(**data)


@dataclass(frozen=True)
class ReplicationRecord:
    copies: int
    copy_bound: int
    base_classes: int
    q: int

    @classmethod
    def of(cls, rep: Replication, base_classes: int, q: int) -> "ReplicationRecord":
        return cls(rep.copies, rep.copy_bound, base_classes, q)


@dataclass
class FamilyInstance:
    name: str
    params: dict
    graph: MultiHypergraph
    coloring: EdgeColoring
    manifest: ClaimManifest
    replications: tuple[ReplicationRecord, ...] = ()
    notes: dict = field(default_factory=dict)

    @property
    def colored(self) -> Colored:
        return self.graph, self.coloring


def _lift_labels(labels: Sequence[int], copies: int) -> list[int]:
    return list(labels) * copies


def _witness(labels: Sequence[int], r: int) -> PartitionWitness:
    return PartitionWitness.from_labels(labels, r)


def grid_labels(r: int) -> list[int]:
    """Cyclic-square partition of the r x r grid: cell (i, j) goes to part (i + j) mod r."""
    return [(i + j) % r for i in range(r) for j in range(r)]


def net_partition_labels(net: Net, node_budget: int = 1_000_000) -> list[int] | None | str:
    """Part labels for the net's vertices, None if it is maximal, "unknown" if undecided."""
    if net.s == 2:
        return grid_labels(net.r)
    try:
        w = find_r_partition(net.hypergraph, net.r, node_budget)
    except SearchBudgetExceeded:
        return "unknown"
    return None if w is None else w.labels(net.hypergraph.num_vertices)


def _net_family(
    name: str, params: dict, net: Net, a: Sequence[int], delta: int, q: int, copies: int | None = None
) -> FamilyInstance:
    g, c = g_construction(net, a)
    rep = replicate_to_class_size(g, c, q, copies)
    labels = net_partition_labels(net)
    if isinstance(labels, list):
        full = _lift_labels(labels, (net.s - 1) * rep.copies)
        witness, r_partite = _witness(full, net.r), True
    else:
        witness, r_partite = None, (False if labels is None else None)
    manifest = ClaimManifest(
        r=net.r, delta=delta, min_class_size=q, n_classes=rep.coloring.num_classes,
        r_partite=r_partite, partition_witness=witness,
    )
    return FamilyInstance(name, params, rep.graph, rep.coloring, manifest,
                          (ReplicationRecord.of(rep, net.s, q),), {"multiplicities": list(a)})


def example1(r: int, delta: int, a1: int | None = None, a2: int | None = None) -> FamilyInstance:
    """rΔ-1 copies of the blown-up r x r grid; rΔ classes of size at least rΔ-1."""
    if a1 is None and a2 is None:
        a1, a2 = 1, delta - 1
    elif a1 is None:
        a1 = delta - a2
    elif a2 is None:
        a2 = delta - a1
    if r < 1 or delta < 2:
        raise ValueError("need r >= 1 and delta >= 2")
    if a1 < 1 or a2 < 1 or a1 + a2 != delta:
        raise ValueError("need a1, a2 >= 1 with a1 + a2 = delta")
    inst = _net_family("example1", {"r": r, "delta": delta, "a1": a1, "a2": a2},
                       net_from_mols(r, []), (a1, a2), delta, r * delta - 1)
    if inst.replications[0].copies != max(r * delta - 1, 1):
        raise AssertionError("copy count differs from rΔ-1")
    return inst


def example2(net: Net, delta: int) -> FamilyInstance:
    """Equal multiplicities Δ/s on a net with s classes."""
    r, s = net.r, net.s
    if delta < s or delta % s:
        raise ValueError(f"delta must be a positive multiple of s={s}")
    inst = _net_family("example2", {"r": r, "s": s, "delta": delta}, net,
                       [delta // s] * s, delta, r * delta - 1)
    expected_k = 1 + s * math.ceil(Fraction(r * delta - s, s * (s - 1)))
    if inst.replications[0].copies != expected_k:
        raise AssertionError(f"copy count {inst.replications[0].copies} != {expected_k}")
    return inst


def example3_multiplicities(r: int, s: int, delta: int, variant: str) -> tuple[list[int], int]:
    """The multiplicity vector and ℓ for one of the two residue variants."""
    if variant == "residue_s":
        ell = delta % s
        if ell == 0:
            if delta < s:
                raise ValueError("delta must be at least s")
            return [delta // s] * s, 0
        rhs = Fraction((s - 1) * (s - ell)) - Fraction(s * (s - 1 - ell), r * ell)
        if not delta > rhs:
            raise ValueError(f"need delta > {rhs} for ell={ell}")
        hi, lo = -(-delta // s), delta // s
        return [hi] * ell + [lo] * (s - ell), ell
    if variant == "residue_s_minus_1":
        if s < 2:
            raise ValueError("need s >= 2")
        ell = (delta - 1) % (s - 1)
        if not delta > (ell + 1) * (s - 1):
            raise ValueError(f"need delta > {(ell + 1) * (s - 1)} for ell={ell}")
        base = (delta - 1) // (s - 1)
        return [base] * (s - 1) + [delta - (s - 1) * base], ell
    raise ValueError(f"unknown variant {variant!r}")


def check_multiplicities(r: int, s: int, delta: int, a: Sequence[int]) -> None:
    """Conditions (1) and (2): sum a_i = Δ and the subset inequalities."""
    if any(x < 1 for x in a):
        raise ValueError(f"multiplicities {list(a)} must be positive")
    if sum(a) != delta:
        raise ValueError(f"multiplicities sum to {sum(a)}, not delta={delta}")
    sizes = [r * (s - 1) * x for x in a]
    if not hypothesis_check(sizes, r * delta - 1):
        raise ValueError(f"inequality fails for I={failing_subset(sizes, r * delta - 1)}")


def example3(net: Net, delta: int, variant: str = "residue_s") -> FamilyInstance:
    a, ell = example3_multiplicities(net.r, net.s, delta, variant)
    check_multiplicities(net.r, net.s, delta, a)
    inst = _net_family("example3", {"r": net.r, "s": net.s, "delta": delta, "variant": variant},
                       net, a, delta, net.r * delta - 1)
    inst.notes["ell"] = ell
    return inst


def small_n(net: Net, delta: int, n: int) -> FamilyInstance:
    """Exactly n classes of size at least floor((n-1)rΔ/n)."""
    r, s = net.r, net.s
    if delta < s or delta % s:
        raise ValueError(f"delta must be a positive multiple of s={s}")
    if n < s or (n - s) % (s * (s - 1)):
        raise ValueError(f"n must be at least s and congruent to s mod {s * (s - 1)}")
    q = (n - 1) * r * delta // n
    k = (n - 1) // (s - 1)
    inst = _net_family("small_n", {"r": r, "s": s, "delta": delta, "n": n}, net,
                       [delta // s] * s, delta, q, copies=k)
    if inst.coloring.num_classes != n:
        raise AssertionError("class count differs from n")
    return inst


def sunflower_base(r: int, t: int, delta: int) -> tuple[MultiHypergraph, EdgeColoring, list[int]]:
    """H_{r,t,Δ}: r sunflowers with Δ-1 petals plus t kernel-matching edges, and part labels.

    Each sunflower block lists its t kernel vertices, then the petals' own vertices.
    """
    petals = delta - 1
    block = t + petals * (r - t)
    edges: list[tuple[int, ...]] = []
    labels = [0] * (r * block)
    kernel = [[i * block + j for j in range(t)] for i in range(r)]
    for i in range(r):
        kernel_parts = [(i + j) % r for j in range(t)]
        free_parts = [p for p in range(r) if p not in kernel_parts]
        for j, v in enumerate(kernel[i]):
            labels[v] = kernel_parts[j]
        for p in range(petals):
            own = [i * block + t + p * (r - t) + x for x in range(r - t)]
            for x, v in enumerate(own):
                labels[v] = free_parts[x]
            edges.append(tuple(sorted(kernel[i] + own)))
    n_petals = len(edges)
    for j in range(t):
        edges.append(tuple(sorted(kernel[i][j] for i in range(r))))
    g = MultiHypergraph(r * block, tuple(edges))
    c = EdgeColoring((tuple(range(n_petals)), tuple(range(n_petals, len(edges)))), ("F1", "F2"))
    return g, c, labels


def sunflower_family(r: int, t: int, delta: int) -> FamilyInstance:
    """t-simple, r-partite construction with classes of size at least r(Δ-1)+t-1."""
    if not 1 <= t <= r or delta < 2:
        raise ValueError("need 1 <= t <= r and delta >= 2")
    g, c, labels = sunflower_base(r, t, delta)
    q = r * (delta - 1) + t - 1
    rep = replicate_to_class_size(g, c, q)
    witness = _witness(_lift_labels(labels, rep.copies), r)
    manifest = ClaimManifest(
        r=r, delta=delta, min_class_size=q, n_classes=rep.coloring.num_classes,
        t_simple=t, r_partite=True, partition_witness=witness,
    )
    return FamilyInstance("sunflower", {"r": r, "t": t, "delta": delta}, rep.graph, rep.coloring,
                          manifest, (ReplicationRecord.of(rep, 2, q),))


def shannon_triangle(delta: int) -> MultiHypergraph:
    """Sides {0,1} and {1,2} carry floor(Δ/2) parallel edges, side {0,2} carries ceil(Δ/2)."""
    if delta < 2:
        raise ValueError("need delta >= 2")
    lo, hi = delta // 2, delta - delta // 2
    return MultiHypergraph(3, ((0, 1),) * lo + ((1, 2),) * lo + ((0, 2),) * hi)


def prop_chromatic_index(host: MultiHypergraph) -> FamilyInstance:
    """χ'-1 copies of H; class i holds every copy of edge i."""
    if not host.is_uniform(2):
        raise ValueError("host must be a 2-uniform multigraph")
    chi = chromatic_index(host)
    if chi - 1 < 1:
        raise ValueError("chromatic index 1 leaves no copies to build")
    copies = chi - 1
    edges = []
    for k in range(copies):
        edges.extend(tuple(v + k * host.num_vertices for v in e) for e in host.edges)
    g = MultiHypergraph(copies * host.num_vertices, tuple(edges))
    m = host.num_edges
    classes = tuple(tuple(i + k * m for k in range(copies)) for i in range(m))
    manifest = ClaimManifest(
        r=2, delta=max_degree(host), min_class_size=copies, n_classes=m,
        proper=True, chromatic_index_claim=chi,
    )
    return FamilyInstance("prop41", {"host_edges": [list(e) for e in host.edges],
                                     "host_vertices": host.num_vertices},
                          g, EdgeColoring(classes), manifest, notes={"chi": chi})


def knn_cayley(n: int) -> FamilyInstance:
    """K_{n,n} with x_i y_j colored (i + j) mod n; x_i is vertex i, y_j is vertex n + j."""
    if n < 1:
        raise ValueError("need n >= 1")
    edges = [(i, n + j) for i in range(n) for j in range(n)]
    classes = [[] for _ in range(n)]
    for eid, (i, y) in enumerate(edges):
        classes[(i + y - n) % n].append(eid)
    manifest = ClaimManifest(
        r=2, delta=n, min_class_size=n, n_classes=n, frm_free=True if n % 2 == 0 else None,
        proper=True, chromatic_index_claim=n, bipartite=True, simple=True,
    )
    inst = FamilyInstance("knn_cayley", {"n": n}, MultiHypergraph(2 * n, tuple(edges)),
                          EdgeColoring(tuple(tuple(c) for c in classes)), manifest)
    if n % 2:
        inst.notes["warning"] = "odd order: a full rainbow matching may exist"
    return inst


def bgs_component(m: int) -> tuple[MultiHypergraph, list[list[int]]]:
    """Cycle v_1..v_2m with m-1 parallel copies per edge plus the chord matching M.

    Classes: copy p of the odd-position matching, copy p of the even-position
    matching, then M. Vertex v_i has id i-1.
    """
    n_v = 2 * m
    odd = [(2 * k, 2 * k + 1) for k in range(m)]
    even = [(2 * k + 1, (2 * k + 2) % n_v) for k in range(m)]
    chords = []
    for k in range(1, m // 2 + 1):
        chords.append((4 * k - 4, 4 * k - 2))
        chords.append((4 * k - 3, 4 * k - 1))
    edges: list[tuple[int, int]] = []
    classes: list[list[int]] = []
    for matching in [odd] * (m - 1) + [even] * (m - 1) + [chords]:
        start = len(edges)
        edges.extend(tuple(sorted(e)) for e in matching)
        classes.append(list(range(start, len(edges))))
    return MultiHypergraph(n_v, tuple(edges)), classes


def _two_copies(g: MultiHypergraph, classes: list[list[int]]) -> tuple[MultiHypergraph, EdgeColoring]:
    edges = list(g.edges) + [tuple(v + g.num_vertices for v in e) for e in g.edges]
    doubled = tuple(tuple(c) + tuple(e + g.num_edges for e in c) for c in classes)
    return MultiHypergraph(2 * g.num_vertices, tuple(edges)), EdgeColoring(doubled)


def bgs_family(n: int) -> FamilyInstance:
    """Two copies of the doubled-cycle graph: n perfect matchings of size n+1, n ≡ 3 mod 4."""
    if n < 3 or n % 4 != 3:
        raise ValueError("need n >= 3 with n congruent to 3 mod 4")
    m = (n + 1) // 2
    h, classes = bgs_component(m)
    g, c = _two_copies(h, classes)
    manifest = ClaimManifest(r=2, delta=n, min_class_size=n + 1, n_classes=n, proper=True,
                             chromatic_index_claim=n, simple=(m == 2))
    return FamilyInstance("bgs", {"n": n}, g, c, manifest)


def k2m_family(m: int) -> FamilyInstance:
    """Two copies of K_{2^m} on Z_2^m with xy colored x + y (XOR)."""
    if m < 2:
        raise ValueError("need m >= 2")
    size = 1 << m
    edges = [(x, y) for x in range(size) for y in range(x + 1, size)]
    classes = [[] for _ in range(size - 1)]
    for eid, (x, y) in enumerate(edges):
        classes[(x ^ y) - 1].append(eid)
    g, c = _two_copies(MultiHypergraph(size, tuple(edges)), classes)
    manifest = ClaimManifest(r=2, delta=size - 1, min_class_size=size, n_classes=size - 1,
                             proper=True, chromatic_index_claim=size - 1, simple=True)
    return FamilyInstance("k2m", {"m": m}, g, c, manifest)


GroupFn = Callable[[MultiHypergraph, Sequence[int]], list[list[int]]]


def absorb_each_class(base: Colored, gadget: Colored, groups: GroupFn, strategy: str) -> Colored:
    """For every class of ``base`` in order, join a fresh gadget copy and spread that class over it.

    ``groups(graph, edge_ids)`` splits the class into matchings; group j goes to gadget class j.
    """
    current = base
    n_base = base[1].num_classes
    m = gadget[1].num_classes
    slot = list(range(n_base))
    for i in range(n_base):
        g_cur, c_cur = current
        cls = c_cur.classes[slot[i]]
        parts = groups(g_cur, cls)
        plan = DistributionPlan.from_groups(parts, list(range(m)), strategy)
        dropped = slot[i]
        current = join(gadget, current, dropped, plan)
        slot = [m + p - (p > dropped) for p in slot]
    return current


def _thm15_1(host: MultiHypergraph) -> FamilyInstance:
    if not host.is_uniform(2):
        raise ValueError("host must be a 2-uniform multigraph")
    delta = max_degree(host)
    if delta < 2:
        raise ValueError("host needs maximum degree at least 2")
    gadget = prop_chromatic_index(host)
    chi = gadget.manifest.chromatic_index_claim
    m = host.num_edges
    params = {"statement": 1, "host_vertices": host.num_vertices,
              "host_edges": [list(e) for e in host.edges]}
    if m >= 2 * delta:
        manifest = ClaimManifest(r=2, delta=delta, min_class_size=chi - 1, n_classes=m,
                                 proper=True, chromatic_index_claim=chi)
        return FamilyInstance("thm15_1", params, gadget.graph, gadget.coloring, manifest,
                              notes={"case": "gadget_only"})
    base = example1(2, delta, 1, delta - 1)
    g, c = absorb_each_class(
        base.colored, gadget.colored,
        lambda gr, ids: partition_into_matchings(gr, ids, m), "explicit",
    )
    manifest = ClaimManifest(r=2, delta=delta, min_class_size=chi, n_classes=2 * delta * m,
                             proper=True, chromatic_index_claim=chi)
    return FamilyInstance("thm15_1", params, g, c, manifest, base.replications,
                          {"case": "joined", "gadget_copies": 2 * delta})


def _thm15_2(delta: int) -> FamilyInstance:
    if delta < 2:
        raise ValueError("need delta >= 2")
    base = sunflower_family(2, 1, delta)
    if delta % 2 == 0:
        gadget = knn_cayley(delta)
        groups = lambda gr, ids: partition_into_matchings(gr, ids, delta)
        strategy, width = "singleton_per_class", delta
    else:
        gadget = knn_cayley(delta - 1)
        groups = lambda gr, ids: partition_into_matchings(gr, ids, delta - 1, group_size=2)
        strategy, width = "pairs_per_class", delta - 1
    g, c = absorb_each_class(base.colored, gadget.colored, groups, strategy)
    manifest = ClaimManifest(r=2, delta=delta, min_class_size=delta + 1,
                             n_classes=(2 * delta - 1) * width, proper=True,
                             chromatic_index_claim=delta, bipartite=True, simple=True)
    return FamilyInstance("thm15_2", {"statement": 2, "delta": delta}, g, c, manifest,
                          base.replications, {"gadget": f"knn_cayley({width})", "strategy": strategy})


def thm15_3_gadget(delta: int, prefer: str = "simple") -> tuple[FamilyInstance, str]:
    """Gadget and distribution strategy for statement (3)."""
    if delta < 3 or delta % 4 not in (0, 3):
        raise ValueError("need delta >= 3 with delta congruent to 3 or 0 mod 4")
    if prefer not in ("simple", "multigraph"):
        raise ValueError(f"unknown preference {prefer!r}")
    if prefer == "simple":
        if (delta + 1) & delta == 0:
            return k2m_family((delta + 1).bit_length() - 1), "singleton_per_class"
        if delta & (delta - 1) == 0:
            return k2m_family(delta.bit_length() - 1), "pairs_per_class"
    if delta % 4 == 3:
        return bgs_family(delta), "singleton_per_class"
    return bgs_family(delta - 1), "pairs_per_class"


def _thm15_3(delta: int, prefer: str = "simple") -> FamilyInstance:
    gadget, strategy = thm15_3_gadget(delta, prefer)
    base = sunflower_family(2, 1, delta)
    width = gadget.coloring.num_classes
    if strategy == "pairs_per_class":
        groups = lambda gr, ids: partition_into_matchings(gr, ids, width, group_size=2)
    else:
        groups = lambda gr, ids: partition_into_matchings(gr, ids, width)
    g, c = absorb_each_class(base.colored, gadget.colored, groups, strategy)
    simple = gadget.name == "k2m" or gadget.manifest.simple
    manifest = ClaimManifest(r=2, delta=delta, min_class_size=delta + 2,
                             n_classes=(2 * delta - 1) * width, proper=True,
                             chromatic_index_claim=delta, simple=True if simple else None)
    notes = {"gadget": f"{gadget.name}({next(iter(gadget.params.values()))})", "strategy": strategy}
    return FamilyInstance("thm15_3", {"statement": 3, "delta": delta, "prefer": prefer}, g, c,
                          manifest, base.replications, notes)


def thm15_builder(statement: int, delta: int | None = None, host: MultiHypergraph | None = None,
                  prefer: str = "simple") -> FamilyInstance:
    """Properly colored counterexamples; statement 1 defaults to the Shannon triangle host."""
    if statement == 1:
        if host is None:
            if delta is None:
                raise ValueError("statement 1 needs a host multigraph or delta")
            host = shannon_triangle(delta)
        return _thm15_1(host)
    if delta is None:
        raise ValueError(f"statement {statement} needs delta")
    if statement == 2:
        return _thm15_2(delta)
    if statement == 3:
        return _thm15_3(delta, prefer)
    raise ValueError(f"unknown statement {statement}")


def default_net(r: int, s: int) -> Net:
    return field_net(r, s)

"""Iterative construction: the join step, replication to a target class size, and net blow-ups."""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .designs import Net
from .hypercore import EdgeColoring, MultiHypergraph, disjoint_union

Colored = tuple[MultiHypergraph, EdgeColoring]

STRATEGIES = ("round_robin", "singleton_per_class", "pairs_per_class", "explicit")


@dataclass(frozen=True)
class DistributionPlan:
    """Where each edge of the absorbed class goes (target class index on the other side)."""

    assignment: Mapping[int, int]
    strategy: str = "explicit"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        object.__setattr__(self, "assignment", dict(self.assignment))

    @classmethod
    def round_robin(cls, edges: Sequence[int], num_targets: int, targets: Sequence[int] | None = None):
        targets = list(range(num_targets)) if targets is None else list(targets)
        if not targets:
            raise ValueError("round_robin needs at least one target class")
        return cls({e: targets[i % len(targets)] for i, e in enumerate(edges)}, "round_robin")

    @classmethod
    def singleton_per_class(cls, edges: Sequence[int], targets: Sequence[int]):
        if len(edges) > len(targets):
            raise ValueError("more edges than target classes")
        return cls(dict(zip(edges, targets)), "singleton_per_class")

    @classmethod
    def from_groups(
        cls, groups: Sequence[Sequence[int]], targets: Sequence[int], strategy: str = "explicit"
    ):
        """Send every edge of ``groups[j]`` to ``targets[j]``."""
        if len(groups) > len(targets):
            raise ValueError("more groups than target classes")
        return cls({e: t for g, t in zip(groups, targets) for e in g}, strategy)

    @classmethod
    def pairs_per_class(cls, pairs: Sequence[Sequence[int]], targets: Sequence[int]):
        return cls.from_groups(pairs, targets, "pairs_per_class")


def join(gp: Colored, hq: Colored, absorbed: int, plan: DistributionPlan) -> Colored:
    """Disjoint union of G and H where class ``absorbed`` of H is spread over the classes of G.

    Output classes: the m grown classes of G, then H's remaining n-1 classes in order.
    ``plan`` is keyed by H's own edge ids.
    """
    g, p = gp
    h, q = hq
    if not 0 <= absorbed < q.num_classes:
        raise ValueError(f"absorbed class {absorbed} out of range")
    dissolved = set(q.classes[absorbed])
    if set(plan.assignment) != dissolved:
        missing = sorted(dissolved - set(plan.assignment))
        extra = sorted(set(plan.assignment) - dissolved)
        raise ValueError(f"plan must cover exactly the absorbed class: missing={missing} extra={extra}")
    for e, t in plan.assignment.items():
        if not 0 <= t < p.num_classes:
            raise ValueError(f"edge {e} assigned to invalid target class {t}")
    union, _ = disjoint_union([(g, p), (h, q)])
    off = g.num_edges
    grown = [list(cls) for cls in p.classes]
    for e in sorted(plan.assignment):
        grown[plan.assignment[e]].append(e + off)
    rest = [tuple(e + off for e in cls) for j, cls in enumerate(q.classes) if j != absorbed]
    return union, EdgeColoring(tuple(tuple(c) for c in grown) + tuple(rest))


def hypothesis_check_subsets(sizes: Sequence[int], q: int) -> bool:
    """sum_{i in I} |F_i| >= q(|I|-1) + 1 for every nonempty I, by enumeration."""
    m = len(sizes)
    for t in range(1, m + 1):
        for subset in itertools.combinations(sizes, t):
            if sum(subset) < q * (t - 1) + 1:
                return False
    return True


def hypothesis_check_prefix(sizes: Sequence[int], q: int) -> bool:
    """Same inequality; only the t smallest sizes matter for each |I| = t."""
    total = 0
    for t, size in enumerate(sorted(sizes), start=1):
        total += size
        if total < q * (t - 1) + 1:
            return False
    return True


def failing_subset(sizes: Sequence[int], q: int) -> tuple[int, ...] | None:
    """Indices of a subset violating the inequality, smallest such |I| first."""
    order = sorted(range(len(sizes)), key=lambda i: (sizes[i], i))
    total = 0
    for t, i in enumerate(order, start=1):
        total += sizes[i]
        if total < q * (t - 1) + 1:
            return tuple(sorted(order[:t]))
    return None


def hypothesis_check(sizes: Sequence[int], q: int) -> bool:
    """Both formulations, cross-checked when the subset enumeration is affordable."""
    fast = hypothesis_check_prefix(sizes, q)
    if len(sizes) <= 20:
        slow = hypothesis_check_subsets(sizes, q)
        if slow != fast:
            raise AssertionError("subset and prefix hypothesis checks disagree")
    return fast


def copy_bound(sizes: Sequence[int], q: int) -> int:
    """k = 1 + sum_{i in J} ceil((q - |F_i|) / (|F_J| - q(|J|-1))), or 1 if J is empty."""
    deficient = [s for s in sizes if s < q]
    if not deficient:
        return 1
    surplus = sum(deficient) - q * (len(deficient) - 1)
    if surplus < 1:
        raise ValueError("class sizes violate the replication hypothesis")
    return 1 + sum(math.ceil((q - s) / surplus) for s in deficient)


@dataclass(frozen=True)
class Replication:
    graph: MultiHypergraph
    coloring: EdgeColoring
    copies: int
    copy_bound: int
    base_vertices: int


def replicate_to_class_size(
    h: MultiHypergraph, classes: EdgeColoring, q: int, copies: int | None = None
) -> Replication:
    """Disjoint copies of (H, Q) joined so that every class has at least q edges.

    Each extra copy X takes the class currently standing in for a deficient
    class i of the first copy, tops up X's other deficient classes to q, and
    puts the remaining edges in X's copy of class i, which therefore ends
    |F_J| - q(|J|-1) edges larger. Deficient classes are processed in index
    order. ``copies`` may request more copies than the minimum; the extras
    repeat the step on the last processed class.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    sizes = classes.sizes()
    m = len(sizes)
    if m == 0:
        raise ValueError("need at least one color class")
    if not hypothesis_check(sizes, q):
        raise ValueError(f"replication hypothesis fails for subset {failing_subset(sizes, q)}")
    bound = copy_bound(sizes, q)
    if m == 1:
        if sizes[0] < q or (copies not in (None, 1)):
            raise ValueError("a single class cannot be replicated")
        return Replication(h, classes, 1, 1, h.num_vertices)
    target = bound if copies is None else copies
    if target < bound:
        raise ValueError(f"{copies} copies are fewer than the required {bound}")

    deficit = {i: q - s for i, s in enumerate(sizes) if s < q}
    schedule: list[int] = []
    surplus = sum(sizes[i] for i in deficit) - q * (len(deficit) - 1) if deficit else 0
    for i in sorted(deficit):
        schedule.extend([i] * math.ceil(deficit[i] / surplus))
    while len(schedule) < target - 1:
        schedule.append(schedule[-1] if schedule else 0)

    current: Colored = (h, classes)
    # position of each original class index among the current instance's classes
    slot = list(range(m))
    for i in schedule:
        g_cur, c_cur = current
        dissolve = c_cur.classes[slot[i]]
        edges = list(dissolve)
        assignment: dict[int, int] = {}
        pos = 0
        for j in sorted(deficit):
            if j == i:
                continue
            for _ in range(deficit[j]):
                if pos < len(edges):
                    assignment[edges[pos]] = j
                    pos += 1
        for e in edges[pos:]:
            assignment[e] = i
        dropped = slot[i]
        current = join((h, classes), current, dropped, DistributionPlan(assignment, "explicit"))
        # new copy's classes come first; old ones shift by m and close the dissolved gap
        slot = [m + p - (p > dropped) for p in slot]
        slot[i] = i
    g_out, c_out = current
    realized = len(schedule) + 1
    result = Replication(g_out, c_out, realized, bound, h.num_vertices)
    _check_replication(result, m, q)
    return result


def _check_replication(result: Replication, m: int, q: int) -> None:
    """Postconditions asserted on every call."""
    sizes = result.coloring.sizes()
    if result.copies < result.copy_bound and result.copies != 1:
        raise AssertionError("fewer copies than the bound should allow")
    if result.coloring.num_classes != result.copies * (m - 1) + 1:
        raise AssertionError("class count differs from k(m-1)+1")
    if min(sizes) < q:
        raise AssertionError(f"a class of size {min(sizes)} is below q={q}")
    if result.graph.num_vertices != result.copies * result.base_vertices:
        raise AssertionError("vertex count is not k copies of the base")


def blow_up_net(net: Net, multiplicities: Sequence[int]) -> Colored:
    """Replace each edge of parallel class i by ``multiplicities[i]`` parallel copies."""
    if len(multiplicities) != net.s:
        raise ValueError(f"need {net.s} multiplicities, got {len(multiplicities)}")
    if any(a < 1 for a in multiplicities):
        raise ValueError("multiplicities must be positive")
    edges: list[tuple[int, ...]] = []
    classes: list[tuple[int, ...]] = []
    for cls, a in zip(net.parallel_classes, multiplicities):
        start = len(edges)
        for e in cls:
            edges.extend([net.hypergraph.edges[e]] * a)
        classes.append(tuple(range(start, len(edges))))
    g = MultiHypergraph(net.hypergraph.num_vertices, tuple(edges))
    return g, EdgeColoring(tuple(classes), tuple(f"F{i + 1}" for i in range(net.s)))


def g_construction(net: Net, multiplicities: Sequence[int]) -> Colored:
    """s-1 disjoint blown-up copies; class i collects every copy of parallel class i."""
    g, c = blow_up_net(net, multiplicities)
    union, _ = disjoint_union([(g, c)] * (net.s - 1))
    classes = tuple(
        tuple(e + copy * g.num_edges for copy in range(net.s - 1) for e in cls) for cls in c.classes
    )
    return union, EdgeColoring(classes, c.labels)

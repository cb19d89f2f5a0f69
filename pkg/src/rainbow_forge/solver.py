"""Exact search for full rainbow matchings.

Three independent routes:

* ``find_frm``: backtracking over classes, fewest live candidates first,
  with a table of failed (remaining classes, used vertices) states.
* ``decompose_and_solve``: per-component enumeration of the class sets a
  component can represent with disjoint edges, then a dynamic program over
  components that tracks only the classes still shared with unprocessed
  components.
* ``brute_force_frm``: plain Cartesian product, no pruning.

``False`` is reported only after a complete search; a spent node budget gives
the separate status ``"inconclusive"``.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .hypercore import (
    EdgeColoring,
    MultiHypergraph,
    RainbowMatching,
    edge_components,
    validate_rainbow,
)

FOUND = "found"
EXHAUSTED = "exhausted"
INCONCLUSIVE = "inconclusive"

DEFAULT_BUDGET = 50_000_000


def default_budget() -> int | None:
    """Node budget, overridable through RAINBOW_FORGE_BUDGET (0 or 'none' disables it)."""
    raw = os.environ.get("RAINBOW_FORGE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    if raw.strip().lower() in ("", "0", "none"):
        return None
    return int(raw)


@dataclass
class SolveReport:
    status: str
    witness: RainbowMatching | None = None
    max_rainbow_size: int | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    method: str = "backtracking"
    details: dict = field(default_factory=dict)

    @property
    def found(self) -> bool | None:
        """True / False, or None when the search was cut off."""
        if self.status == INCONCLUSIVE:
            return None
        return self.status == FOUND

    @property
    def exhaustive(self) -> bool:
        """Set when ``found`` is False because the search space was exhausted."""
        return self.status == EXHAUSTED


class _BudgetSpent(Exception):
    pass


class _Problem:
    """Bitmask view of an instance: per class, candidate edges with distinct vertex sets."""

    def __init__(self, graph: MultiHypergraph, coloring: EdgeColoring):
        coloring.check_partition(graph)
        self.graph = graph
        self.coloring = coloring
        masks = graph.edge_masks()
        self.masks = masks
        self.candidates: list[list[tuple[int, int]]] = []
        for cls in coloring.classes:
            seen: dict[int, int] = {}
            for e in sorted(cls):
                seen.setdefault(masks[e], e)
            self.candidates.append(sorted(((e, m) for m, e in seen.items())))
        self.n = coloring.num_classes


def _finish(problem: _Problem, report: SolveReport) -> SolveReport:
    if report.witness is not None:
        full = report.status == FOUND
        if not validate_rainbow(problem.graph, problem.coloring, report.witness, full=full):
            raise AssertionError("search returned an invalid rainbow matching")
    return report


def _backtrack(problem: _Problem, remaining: int, used: int, budget: int | None, counter: list[int]):
    """Return a dict class -> edge completing the matching on ``remaining``, or None."""
    failed: set[tuple[int, int]] = set()
    cands = problem.candidates

    def rec(remaining: int, used: int) -> dict[int, int] | None:
        if remaining == 0:
            return {}
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise _BudgetSpent
        key = (remaining, used)
        if key in failed:
            return None
        best_cls, best_live = -1, None
        rest = remaining
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            live = [(e, m) for e, m in cands[i] if not m & used]
            if not live:
                failed.add(key)
                return None
            if best_live is None or len(live) < len(best_live):
                best_cls, best_live = i, live
        for e, m in best_live:
            sub = rec(remaining & ~(1 << best_cls), used | m)
            if sub is not None:
                sub[best_cls] = e
                return sub
        failed.add(key)
        return None

    return rec(remaining, used)


def _mrv_root(problem: _Problem) -> int:
    return min(range(problem.n), key=lambda i: (len(problem.candidates[i]), i))


def _branch_worker(args):
    graph, coloring, cls, e, m, budget = args
    problem = _Problem(graph, coloring)
    counter = [0]
    full = (1 << problem.n) - 1
    try:
        sub = _backtrack(problem, full & ~(1 << cls), m, budget, counter)
    except _BudgetSpent:
        return "budget", None, counter[0]
    if sub is not None:
        sub[cls] = e
    return "ok", sub, counter[0]


def find_frm(
    graph: MultiHypergraph,
    coloring: EdgeColoring,
    budget: int | None = -1,
    threads: int = 1,
) -> SolveReport:
    """Decide whether a full rainbow matching exists by backtracking.

    ``budget=-1`` means the environment/default budget; ``None`` is unlimited.
    With ``threads > 1`` the branches of the first class are searched in
    worker processes; the witness is the one from the lowest-numbered
    successful branch, as in the sequential search.
    """
    if budget == -1:
        budget = default_budget()
    start = time.perf_counter()
    problem = _Problem(graph, coloring)
    n = problem.n
    if n == 0:
        return _finish(problem, SolveReport(FOUND, RainbowMatching({}), 0, 0, 0.0, "backtracking"))
    counter = [0]
    picks = None
    status = None
    if threads > 1:
        root = _mrv_root(problem)
        jobs = [(graph, coloring, root, e, m, budget) for e, m in problem.candidates[root]]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_branch_worker, jobs))
        counter[0] = 1 + sum(r[2] for r in results)
        for state, sub, _ in results:
            if state == "ok" and sub is not None:
                picks = sub
                break
            if state == "budget":
                status = INCONCLUSIVE
                break
    else:
        try:
            picks = _backtrack(problem, (1 << n) - 1, 0, budget, counter)
        except _BudgetSpent:
            status = INCONCLUSIVE
    elapsed = time.perf_counter() - start
    if picks is not None:
        report = SolveReport(FOUND, RainbowMatching(dict(sorted(picks.items()))), n, counter[0], elapsed)
    elif status == INCONCLUSIVE:
        report = SolveReport(INCONCLUSIVE, None, None, counter[0], elapsed)
    else:
        report = SolveReport(EXHAUSTED, None, None, counter[0], elapsed)
    report.details["threads"] = threads
    return _finish(problem, report)


def brute_force_frm(
    graph: MultiHypergraph, coloring: EdgeColoring, max_candidates: int = 10**7
) -> SolveReport:
    """Enumerate every choice of one edge per class (no pruning, no deduplication)."""
    coloring.check_partition(graph)
    total = math.prod(coloring.sizes())
    if total > max_candidates:
        raise ValueError(f"brute force needs {total} candidates, above the cap {max_candidates}")
    start = time.perf_counter()
    masks = graph.edge_masks()
    examined = 0
    for choice in itertools.product(*coloring.classes):
        examined += 1
        used = 0
        for e in choice:
            if used & masks[e]:
                break
            used |= masks[e]
        else:
            witness = RainbowMatching(dict(enumerate(choice)))
            report = SolveReport(FOUND, witness, coloring.num_classes, examined,
                                 time.perf_counter() - start, "enumeration")
            report.details["candidates"] = total
            return report
    report = SolveReport(EXHAUSTED, None, None, examined, time.perf_counter() - start, "enumeration")
    report.details["candidates"] = total
    return report


def brute_force_max_rainbow(
    graph: MultiHypergraph, coloring: EdgeColoring, max_candidates: int = 10**7
) -> int:
    """Largest rainbow matching by enumerating every class's options plus 'skip'."""
    coloring.check_partition(graph)
    total = math.prod(s + 1 for s in coloring.sizes())
    if total > max_candidates:
        raise ValueError(f"brute force needs {total} candidates, above the cap {max_candidates}")
    masks = graph.edge_masks()
    best = 0
    for choice in itertools.product(*[(None,) + cls for cls in coloring.classes]):
        used, size = 0, 0
        for e in choice:
            if e is None:
                continue
            if used & masks[e]:
                break
            used |= masks[e]
            size += 1
        else:
            best = max(best, size)
    return best


def _local_sets(problem: _Problem, edges: list[int], limit: int | None, counter: list[int]):
    """Every class set representable by disjoint edges inside one component.

    Returns {class bitmask: {class: edge}}.
    """
    class_of = problem.coloring.class_of()
    by_class: dict[int, dict[int, int]] = {}
    for e in edges:
        by_class.setdefault(class_of[e], {}).setdefault(problem.masks[e], e)
    order = sorted(by_class)
    options = [sorted((e, m) for m, e in by_class[c].items()) for c in order]
    found: dict[int, dict[int, int]] = {}
    picks: dict[int, int] = {}

    def rec(pos: int, used: int, cmask: int) -> None:
        counter[0] += 1
        if pos == len(order):
            if cmask not in found:
                found[cmask] = dict(picks)
                if limit is not None and len(found) > limit:
                    raise _BudgetSpent
            return
        rec(pos + 1, used, cmask)
        c = order[pos]
        for e, m in options[pos]:
            if not m & used:
                picks[c] = e
                rec(pos + 1, used | m, cmask | (1 << c))
                del picks[c]

    rec(0, 0, 0)
    return found, order


def _component_order(comp_classes: list[set[int]], last_seen_count: dict[int, int]) -> list[int]:
    """Greedy order keeping few classes open at once."""
    remaining_uses = dict(last_seen_count)
    opened: set[int] = set()
    left = set(range(len(comp_classes)))
    order = []
    while left:
        def score(ci):
            cls = comp_classes[ci]
            closes = sum(1 for c in cls if remaining_uses[c] == 1)
            new = sum(1 for c in cls if c not in opened)
            return (-(closes - new), new, ci)

        ci = min(left, key=score)
        left.remove(ci)
        order.append(ci)
        for c in comp_classes[ci]:
            opened.add(c)
            remaining_uses[c] -= 1
            if remaining_uses[c] == 0:
                opened.discard(c)
    return order


def _frontier_dp(problem: _Problem, maximize: bool, budget: int | None, local_limit: int | None):
    """Run the component DP. Returns (value, picks, nodes, stats)."""
    counter = [0]
    comps = edge_components(problem.graph)
    local = []
    comp_classes = []
    for edges in comps:
        sets, classes = _local_sets(problem, edges, local_limit, counter)
        local.append(sets)
        comp_classes.append(set(classes))
    uses: dict[int, int] = {}
    for cs in comp_classes:
        for c in cs:
            uses[c] = uses.get(c, 0) + 1
    order = _component_order(comp_classes, uses)
    closing_at: list[int] = []
    left = dict(uses)
    for ci in order:
        close = 0
        for c in comp_classes[ci]:
            left[c] -= 1
            if left[c] == 0:
                close |= 1 << c
        closing_at.append(close)

    # state mask -> value; per layer back-pointers state -> (prev_state, chosen set)
    states: dict[int, int] = {0: 0}
    layers: list[dict[int, tuple[int, int]]] = []
    widest = 1
    for ci, close in zip(order, closing_at):
        nxt: dict[int, int] = {}
        back: dict[int, tuple[int, int]] = {}
        sets = list(local[ci])
        for s, val in states.items():
            for t in sets:
                if s & t:
                    continue
                counter[0] += 1
                if budget is not None and counter[0] > budget:
                    raise _BudgetSpent
                u = s | t
                closed = u & close
                if not maximize and closed != close:
                    continue
                v = val + bin(closed).count("1")
                key = u & ~close
                if key not in nxt or v > nxt[key]:
                    nxt[key] = v
                    back[key] = (s, t)
        states = nxt
        layers.append(back)
        widest = max(widest, len(states))
        if not states:
            break
    stats = {"components": len(comps), "max_states": widest,
             "local_sets": sum(len(s) for s in local)}
    if not states:
        return None, None, counter[0], stats
    final = max(states, key=lambda k: (states[k], -k))
    value = states[final]
    picks: dict[int, int] = {}
    key = final
    for ci, back in zip(reversed(order), reversed(layers)):
        prev, t = back[key]
        picks.update(local[ci][t])
        key = prev
    return value, picks, counter[0], stats


def decompose_and_solve(
    graph: MultiHypergraph,
    coloring: EdgeColoring,
    budget: int | None = -1,
    local_limit: int | None = 200_000,
) -> SolveReport:
    """Component-wise search; falls back to ``find_frm`` when local enumeration explodes."""
    if budget == -1:
        budget = default_budget()
    start = time.perf_counter()
    problem = _Problem(graph, coloring)
    n = problem.n
    try:
        value, picks, nodes, stats = _frontier_dp(problem, False, budget, local_limit)
    except _BudgetSpent:
        report = find_frm(graph, coloring, budget)
        report.method = "backtracking"
        report.details["fallback"] = True
        return report
    elapsed = time.perf_counter() - start
    if value is None:
        report = SolveReport(EXHAUSTED, None, None, nodes, elapsed, "decomposition", stats)
    else:
        report = SolveReport(FOUND, RainbowMatching(dict(sorted(picks.items()))), n, nodes,
                             elapsed, "decomposition", stats)
    return _finish(problem, report)


def max_rainbow_matching(
    graph: MultiHypergraph,
    coloring: EdgeColoring,
    method: str = "decomposition",
    budget: int | None = -1,
) -> SolveReport:
    """Exact maximum number of classes representable by pairwise disjoint edges."""
    if budget == -1:
        budget = default_budget()
    start = time.perf_counter()
    problem = _Problem(graph, coloring)
    n = problem.n
    if method == "decomposition":
        try:
            value, picks, nodes, stats = _frontier_dp(problem, True, budget, 200_000)
        except _BudgetSpent:
            return SolveReport(INCONCLUSIVE, None, None, budget or 0,
                               time.perf_counter() - start, "decomposition")
        picks = picks or {}
    elif method == "backtracking":
        try:
            value, picks, nodes = _branch_and_bound_max(problem, budget)
        except _BudgetSpent:
            return SolveReport(INCONCLUSIVE, None, None, budget or 0,
                               time.perf_counter() - start, "backtracking")
        stats = {}
    else:
        raise ValueError(f"unknown method {method!r}")
    status = FOUND if value == n else EXHAUSTED
    report = SolveReport(status, RainbowMatching(dict(sorted(picks.items()))), value, nodes,
                         time.perf_counter() - start, method, stats)
    return _finish(problem, report)


def _branch_and_bound_max(problem: _Problem, budget: int | None):
    """Class-by-class include/skip search, memoized on (class index, used vertices)."""
    n = problem.n
    cands = problem.candidates
    counter = [0]
    memo: dict[tuple[int, int], int] = {}

    def best_from(i: int, used: int) -> int:
        if i == n:
            return 0
        key = (i, used)
        if key in memo:
            return memo[key]
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise _BudgetSpent
        value = best_from(i + 1, used)
        if value < n - i:
            for _, m in cands[i]:
                if not m & used:
                    value = max(value, 1 + best_from(i + 1, used | m))
                    if value == n - i:
                        break
        memo[key] = value
        return value

    total = best_from(0, 0)
    picks: dict[int, int] = {}
    used = 0
    for i in range(n):
        target = best_from(i, used)
        if best_from(i + 1, used) == target:
            continue
        for e, m in cands[i]:
            if not m & used and 1 + best_from(i + 1, used | m) == target:
                picks[i] = e
                used |= m
                break
    return total, picks, counter[0]


def solve(graph: MultiHypergraph, coloring: EdgeColoring, budget: int | None = -1) -> SolveReport:
    """Default decision route used by builders' verification and the CLI."""
    return decompose_and_solve(graph, coloring, budget)

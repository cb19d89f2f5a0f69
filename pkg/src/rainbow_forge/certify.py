"""Check every claim in an instance document and summarize the outcome."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .chromatic import chromatic_index
from .documents import InstanceDocument
from .hypercore import (
    SearchBudgetExceeded,
    find_r_partition,
    is_bipartite,
    is_proper,
    is_simple_graph,
    is_t_simple,
    max_degree,
    verify_r_partition,
)
from .listcolor import check_cover_conditions, color_degree, cover_matches, list_edge_cover
from .solver import EXHAUSTED, FOUND, INCONCLUSIVE, decompose_and_solve, find_frm

PASS, FAIL, UNKNOWN, INFO = "pass", "fail", "inconclusive", "info"

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, name: str, ok: bool | None, **detail) -> None:
        status = UNKNOWN if ok is None else (PASS if ok else FAIL)
        self.checks.append(Check(name, status, detail))

    def info(self, name: str, **detail) -> None:
        self.checks.append(Check(name, INFO, detail))

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return EXIT_CLAIM
        if UNKNOWN in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "verdict": {EXIT_OK: "verified", EXIT_CLAIM: "claim_failure",
                        EXIT_INCONCLUSIVE: "inconclusive"}[self.exit_code],
            "failed": self.failed(),
            "checks": [{"name": c.name, "status": c.status, **c.detail} for c in self.checks],
            "elapsed_seconds": round(self.elapsed, 6),
        }


def verify_document(doc: InstanceDocument, budget: int | None = -1, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport()
    g, c = doc.graph, doc.coloring
    try:
        c.check_partition(g)
        report.add("partition", True, classes=c.num_classes, edges=g.num_edges)
    except ValueError as exc:
        report.add("partition", False, reason=str(exc))
        report.elapsed = time.perf_counter() - start
        return report

    sizes = c.sizes()
    m = doc.manifest
    if m is None:
        report.info("manifest", note="no claims attached")
    else:
        report.add("uniformity", g.is_uniform(m.r), r=m.r, actual=g.uniformity)
        report.add("max_degree", max_degree(g) <= m.delta, claim=m.delta, actual=max_degree(g))
        smallest = min(sizes, default=0)
        detail = {"claim": m.min_class_size, "actual": smallest}
        if smallest < m.min_class_size:
            detail["short_classes"] = [i for i, s in enumerate(sizes) if s < m.min_class_size]
        report.add("min_class_size", smallest >= m.min_class_size, **detail)
        report.add("n_classes", c.num_classes == m.n_classes, claim=m.n_classes, actual=c.num_classes)
        if m.proper is not None:
            report.add("proper", is_proper(g, c) == m.proper, claim=m.proper)
        if m.t_simple is not None:
            report.add("t_simple", is_t_simple(g, m.t_simple), t=m.t_simple)
        if m.simple is not None:
            report.add("simple", is_simple_graph(g) == m.simple, claim=m.simple)
        if m.bipartite is not None:
            ok = g.is_uniform(2) and is_bipartite(g) == m.bipartite
            report.add("bipartite", ok, claim=m.bipartite)
        if m.chromatic_index_claim is not None:
            try:
                chi = chromatic_index(g)
                report.add("chromatic_index", chi == m.chromatic_index_claim,
                           claim=m.chromatic_index_claim, actual=chi)
            except (ValueError, SearchBudgetExceeded) as exc:
                report.add("chromatic_index", None, reason=str(exc))
        _check_partition_claim(report, doc)
        _check_frm(report, doc, budget, threads)

    if doc.list_instance is not None:
        cover = list_edge_cover(doc.list_instance)
        report.add("list_cover_isomorphic", cover_matches(cover, g, c))
        conditions = check_cover_conditions(g, c)
        report.add("cover_conditions", conditions.ok,
                   condition_a=conditions.condition_a, condition_b=conditions.condition_b)
        report.info("color_degree", value=color_degree(doc.list_instance),
                    list_sizes=sorted({len(x) for x in doc.list_instance.lists}))
    report.elapsed = time.perf_counter() - start
    return report


def _check_partition_claim(report: VerificationReport, doc: InstanceDocument) -> None:
    m, g = doc.manifest, doc.graph
    if m.r_partite is None:
        return
    if not g.is_uniform(m.r):
        report.add("r_partite", False, reason="not uniform")
        return
    if m.r_partite:
        if m.partition_witness is not None:
            report.add("r_partite", verify_r_partition(g, m.partition_witness, m.r), via="witness")
            return
    try:
        found = find_r_partition(g, m.r) is not None
    except SearchBudgetExceeded:
        report.add("r_partite", None, reason="partition search budget spent")
        return
    report.add("r_partite", found == m.r_partite, claim=m.r_partite, via="search")


def _check_frm(report: VerificationReport, doc: InstanceDocument, budget, threads: int) -> None:
    g, c, m = doc.graph, doc.coloring, doc.manifest
    if threads > 1:
        sr = find_frm(g, c, budget, threads=threads)
    else:
        sr = decompose_and_solve(g, c, budget)
    detail = {"solver_status": sr.status, "method": sr.method, "nodes": sr.nodes_explored,
              "seconds": round(sr.elapsed, 6)}
    if sr.status == FOUND:
        detail["witness"] = {str(k): v for k, v in sr.witness.picks.items()}
    if m.frm_free is None:
        report.info("frm", note="no freeness claim", **detail)
    elif sr.status == INCONCLUSIVE:
        report.add("frm_free", None, claim=m.frm_free, **detail)
    else:
        report.add("frm_free", (sr.status == EXHAUSTED) == m.frm_free, claim=m.frm_free, **detail)

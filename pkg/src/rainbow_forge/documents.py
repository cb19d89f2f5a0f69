"""JSON instance documents, the builder registry, and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import metadata
from typing import Any, Callable

from . import families as fam
from .designs import field_net
from .families import ClaimManifest, FamilyInstance
from .hypercore import EdgeColoring, MultiHypergraph
from .listcolor import ListInstance, galvin_counterexample, galvin_g0

SCHEMA_VERSION = "1"
MAX_EDGES = 250_000


def artifact_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


@dataclass
class InstanceDocument:
    graph: MultiHypergraph
    coloring: EdgeColoring
    manifest: ClaimManifest | None = None
    provenance: dict = field(default_factory=dict)
    list_instance: ListInstance | None = None
    notes: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "schema_version": self.schema_version,
            "hypergraph": {
                "num_vertices": self.graph.num_vertices,
                "edges": [list(e) for e in self.graph.edges],
            },
            "coloring": {
                "classes": [list(c) for c in self.coloring.classes],
                "labels": None if self.coloring.labels is None else list(self.coloring.labels),
            },
            "manifest": None if self.manifest is None else self.manifest.to_dict(),
            "provenance": self.provenance,
        }
        if self.list_instance is not None:
            out["list_instance"] = {
                "num_vertices": self.list_instance.host.num_vertices,
                "edges": [list(e) for e in self.list_instance.host.edges],
                "lists": [list(lst) for lst in self.list_instance.lists],
            }
        if self.notes:
            out["notes"] = self.notes
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceDocument":
        try:
            version = data["schema_version"]
            if version != SCHEMA_VERSION:
                raise ValueError(f"unsupported schema_version {version!r}")
            hg = data["hypergraph"]
            graph = MultiHypergraph.from_edges(hg["num_vertices"], hg["edges"])
            col = data["coloring"]
            labels = col.get("labels")
            coloring = EdgeColoring(
                tuple(tuple(c) for c in col["classes"]),
                None if labels is None else tuple(labels),
            )
            manifest = data.get("manifest")
            li = data.get("list_instance")
            list_instance = None
            if li is not None:
                host = MultiHypergraph.from_edges(li["num_vertices"], li["edges"])
                list_instance = ListInstance(host, tuple(tuple(x) for x in li["lists"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed instance document: {exc!r}") from exc
        return cls(
            graph, coloring,
            None if manifest is None else ClaimManifest.from_dict(manifest),
            data.get("provenance", {}), list_instance, data.get("notes", {}), version,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "InstanceDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _jsonable(value):
    return json.loads(json.dumps(value, sort_keys=True, default=str))


def document_from_family(inst: FamilyInstance) -> InstanceDocument:
    notes = dict(inst.notes)
    if inst.replications:
        notes["replications"] = [
            {"copies": r.copies, "copy_bound": r.copy_bound, "base_classes": r.base_classes, "q": r.q}
            for r in inst.replications
        ]
    provenance = {"builder": inst.name, "params": _jsonable(inst.params), "version": artifact_version()}
    return InstanceDocument(inst.graph, inst.coloring, inst.manifest, provenance,
                            inst.notes.get("list_instance"), _jsonable(
                                {k: v for k, v in notes.items() if k != "list_instance"}))


def parse_host(spec: str) -> MultiHypergraph:
    """Host multigraph from "0-1,1-2,0-2" (vertex count is inferred)."""
    try:
        edges = [tuple(sorted(int(v) for v in part.split("-"))) for part in spec.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"cannot parse host edges {spec!r}") from exc
    if not edges or any(len(e) != 2 for e in edges):
        raise ValueError("host edges must look like 0-1,1-2,...")
    return MultiHypergraph(1 + max(max(e) for e in edges), tuple(edges))


def _galvin(name: str, delta: int) -> FamilyInstance:
    gi = galvin_g0(delta) if name == "galvin_g0" else galvin_counterexample(delta)
    manifest = ClaimManifest(
        r=2, delta=delta, min_class_size=min(gi.coloring.sizes()),
        n_classes=gi.coloring.num_classes, proper=True, bipartite=True,
    )
    return FamilyInstance(name, {"delta": delta}, gi.graph, gi.coloring, manifest,
                          notes={"list_instance": gi.lists})


def _net(params: dict, s_default: int = 2):
    return field_net(params["r"], params.get("s") or s_default)


def _prop41(p: dict) -> FamilyInstance:
    if p.get("host"):
        return fam.prop_chromatic_index(parse_host(p["host"]))
    return fam.prop_chromatic_index(fam.shannon_triangle(_need(p, "delta")))


def _need(p: dict, key: str):
    if p.get(key) is None:
        raise ValueError(f"missing required parameter --{key.replace('_', '-')}")
    return p[key]


@dataclass(frozen=True)
class FamilySpec:
    params: tuple[str, ...]
    build: Callable[[dict], FamilyInstance]
    summary: str


FAMILIES: dict[str, FamilySpec] = {
    "example1": FamilySpec(("r", "delta", "a1", "a2"),
                           lambda p: fam.example1(_need(p, "r"), _need(p, "delta"), p.get("a1"), p.get("a2")),
                           "grid blow-ups with multiplicities (a1, a2), classes of size rΔ-1"),
    "example2": FamilySpec(("r", "s", "delta"),
                           lambda p: fam.example2(_net({"r": _need(p, "r"), "s": _need(p, "s")}), _need(p, "delta")),
                           "(r,s)-net blow-up with equal multiplicities Δ/s"),
    "example3": FamilySpec(("r", "s", "delta", "variant"),
                           lambda p: fam.example3(_net({"r": _need(p, "r"), "s": _need(p, "s")}), _need(p, "delta"),
                                                  p.get("variant") or "residue_s"),
                           "(r,s)-net blow-up with near-equal multiplicities"),
    "small_n": FamilySpec(("r", "s", "delta", "n"),
                          lambda p: fam.small_n(_net({"r": _need(p, "r"), "s": _need(p, "s")}), _need(p, "delta"),
                                                _need(p, "n")),
                          "exactly n classes of size floor((n-1)rΔ/n)"),
    "sunflower": FamilySpec(("r", "t", "delta"),
                            lambda p: fam.sunflower_family(_need(p, "r"), _need(p, "t"), _need(p, "delta")),
                            "t-simple r-partite sunflower construction"),
    "prop41": FamilySpec(("delta", "host"), _prop41,
                         "χ'-1 copies of a host multigraph (Shannon triangle by default)"),
    "knn_cayley": FamilySpec(("n",), lambda p: fam.knn_cayley(_need(p, "n")),
                             "K_{n,n} colored by the cyclic group table"),
    "bgs": FamilySpec(("n",), lambda p: fam.bgs_family(_need(p, "n")),
                      "two copies of the doubled cycle with chords, n classes"),
    "k2m": FamilySpec(("m",), lambda p: fam.k2m_family(_need(p, "m")),
                      "two copies of K_{2^m} colored by XOR"),
    "thm15_1": FamilySpec(("delta", "host"),
                          lambda p: fam.thm15_builder(1, p.get("delta"),
                                                      parse_host(p["host"]) if p.get("host") else None),
                          "proper multigraph family, classes of size χ'(host)"),
    "thm15_2": FamilySpec(("delta",), lambda p: fam.thm15_builder(2, _need(p, "delta")),
                          "proper bipartite simple family, classes of size Δ+1"),
    "thm15_3": FamilySpec(("delta", "prefer"),
                          lambda p: fam.thm15_builder(3, _need(p, "delta"), prefer=p.get("prefer") or "simple"),
                          "proper family with χ'=Δ, classes of size Δ+2"),
    "galvin_g0": FamilySpec(("delta",), lambda p: _galvin("galvin_g0", _need(p, "delta")),
                            "broom-and-stars graph G0 with its host list assignment"),
    "galvin": FamilySpec(("delta",), lambda p: _galvin("galvin", _need(p, "delta")),
                         "list edge-cover of a bipartite graph with no proper L-coloring"),
}


def build_document(name: str, params: dict) -> InstanceDocument:
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    spec = FAMILIES[name]
    extra = sorted(k for k, v in params.items() if v is not None and k not in spec.params)
    if extra:
        raise ValueError(f"family {name} does not take {', '.join('--' + k for k in extra)}")
    inst = spec.build({k: params.get(k) for k in spec.params})
    if inst.graph.num_edges > MAX_EDGES:
        raise ValueError(f"instance has {inst.graph.num_edges} edges, above the cap of {MAX_EDGES}")
    doc = document_from_family(inst)
    doc.provenance["params"] = {k: v for k, v in sorted(params.items()) if v is not None}
    return doc


PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
    "#fabed4", "#469990", "#dcbeff", "#9a6324", "#800000", "#aaffc3", "#808000", "#000075",
)


def export_dot(doc: InstanceDocument) -> str:
    """Undirected DOT; edges of size 2 drawn directly, others as incidence stars."""
    class_of = doc.coloring.class_of()
    labels = doc.coloring.labels
    lines = ["graph rainbow {", "  node [shape=circle, width=0.25, label=\"\"];"]
    for v in range(doc.graph.num_vertices):
        lines.append(f"  v{v};")
    for eid, edge in enumerate(doc.graph.edges):
        i = class_of[eid]
        color = PALETTE[i % len(PALETTE)]
        tag = labels[i] if labels is not None else str(i)
        if len(edge) == 2:
            lines.append(f'  v{edge[0]} -- v{edge[1]} [color="{color}", tooltip="{tag}"];')
        else:
            lines.append(f'  e{eid} [shape=point, color="{color}"];')
            for v in edge:
                lines.append(f'  e{eid} -- v{v} [color="{color}", tooltip="{tag}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

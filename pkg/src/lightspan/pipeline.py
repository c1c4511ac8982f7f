"""End-to-end charging pipeline for graphs of bounded pathwidth."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .charging import ChargingScheme, SimplicityReport, strengthen_weak_scheme, verify_scheme
from .errors import InputError
from .forest import (
    AuditRecord,
    ChargingForest,
    InvariantReport,
    audit_charges,
    build_forest,
    charge_bound,
    check_invariants,
    extract_scheme,
)
from .graph import WeightedGraph, mst
from .pathdec import (
    KPathCompletion,
    PathDecomposition,
    SmoothPathDecomposition,
    complete_to_kpath,
    is_smooth,
    normalize,
    smooth,
)
from .spanner import Spanner, greedy_spanner


@dataclass
class PipelineResult:
    spanner: Spanner
    decomposition: SmoothPathDecomposition
    completion: KPathCompletion
    forest: ChargingForest
    weak_scheme: ChargingScheme
    scheme: ChargingScheme
    k: int
    report: SimplicityReport
    audit: list[AuditRecord]
    invariant_reports: list[InvariantReport] = field(default_factory=list)

    @property
    def pw(self) -> int:
        return self.decomposition.pw

    @property
    def mst_weight(self) -> Fraction:
        return mst(self.spanner.graph).weight

    @property
    def invariants_ok(self) -> bool:
        return all(r.ok for r in self.invariant_reports)


def charging_pipeline(
    g: WeightedGraph,
    d: PathDecomposition,
    eps,
    *,
    check: bool = False,
    after_bag: Callable[[ChargingForest, int], None] | None = None,
) -> PipelineResult:
    """Greedy spanner of ``g``, completed to a k-path along ``d``, charged to
    its minimum spanning tree through the charging forest.

    With ``check`` the invariant checker runs after every bag and its
    reports are kept on the result.
    """
    if not is_smooth(d):
        d = smooth(g, d).decomposition
    elif not isinstance(d, SmoothPathDecomposition):
        d = SmoothPathDecomposition(d.bags)
    if not g.is_connected():
        raise InputError("the charging pipeline needs a connected graph")
    s = greedy_spanner(g, eps)
    completion = complete_to_kpath(s.as_graph(), d)
    ng = normalize(completion.graph, d)
    tree = mst(s.as_graph()).edges
    reports: list[InvariantReport] = []

    def hook(f: ChargingForest, i: int) -> None:
        if check:
            reports.append(check_invariants(f, i))
        if after_bag:
            after_bag(f, i)

    forest = build_forest(ng, tree, after_bag=hook)
    weak = extract_scheme(forest)
    scheme = strengthen_weak_scheme(s, weak)
    k = charge_bound(d.pw)
    report = verify_scheme(s, scheme, k)
    audit = audit_charges(forest, scheme, d.pw)
    return PipelineResult(s, d, completion, forest, weak, scheme, k, report, audit, reports)

"""Greedy (1+eps)-spanners with machine-checked lightness certificates."""

from __future__ import annotations

from .charging import (
    ChargingScheme,
    SimplicityReport,
    lightness_certificate,
    outerplanar_block_charging,
    outerplanar_charging,
    strengthen_weak_scheme,
    verify_scheme,
)
from .errors import (
    CertificateRefused,
    ForestConstructionError,
    InputError,
    LightspanError,
    StructuralError,
)
from .forest import (
    ChargingForest,
    audit_charges,
    build_forest,
    charge_bound,
    check_invariants,
    extract_scheme,
)
from .graph import WeightedGraph, all_pairs, mst, parse_graph, read_graph, shortest_dist
from .harness import ExperimentConfig, run, sweep_report
from .pathdec import (
    PathDecomposition,
    SmoothPathDecomposition,
    complete_to_kpath,
    generate_kpath,
    normalize,
    smooth,
    validate,
)
from .pipeline import PipelineResult, charging_pipeline
from .spanner import (
    Spanner,
    greedy_spanner,
    lightness,
    verify_edge_path_property,
    verify_hereditary,
    verify_stretch,
)

__version__ = "0.1.0"

__all__ = [
    "CertificateRefused",
    "ChargingForest",
    "ChargingScheme",
    "ExperimentConfig",
    "ForestConstructionError",
    "InputError",
    "LightspanError",
    "PathDecomposition",
    "PipelineResult",
    "SimplicityReport",
    "SmoothPathDecomposition",
    "Spanner",
    "StructuralError",
    "WeightedGraph",
    "all_pairs",
    "audit_charges",
    "build_forest",
    "charge_bound",
    "charging_pipeline",
    "check_invariants",
    "complete_to_kpath",
    "extract_scheme",
    "generate_kpath",
    "greedy_spanner",
    "lightness",
    "lightness_certificate",
    "mst",
    "normalize",
    "outerplanar_block_charging",
    "outerplanar_charging",
    "parse_graph",
    "read_graph",
    "run",
    "shortest_dist",
    "smooth",
    "strengthen_weak_scheme",
    "sweep_report",
    "validate",
    "verify_edge_path_property",
    "verify_hereditary",
    "verify_scheme",
    "verify_stretch",
]

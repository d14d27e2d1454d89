"""Bowtie normalization and the deterministic DAG transformation."""

from .export import load_result, result_from_json, result_to_bytes, result_to_json
from .normalize import is_normalized, normalize
from .todag import (
    BARRIER_PRIOR,
    PROFILES,
    THREAT_PRIOR,
    SynthesizedMarker,
    TraceEntry,
    TransformResult,
    TransformRule,
    TransformTrace,
    to_dag,
    trace_lookup,
)

__all__ = [
    "BARRIER_PRIOR",
    "PROFILES",
    "SynthesizedMarker",
    "THREAT_PRIOR",
    "TraceEntry",
    "TransformResult",
    "TransformRule",
    "TransformTrace",
    "is_normalized",
    "load_result",
    "normalize",
    "result_from_json",
    "result_to_bytes",
    "result_to_json",
    "to_dag",
    "trace_lookup",
]

"""Bowtie graphs: model, validation, context injection, XML persistence."""

from .inject import inject_context_factors
from .model import (
    BarrierClass,
    BarrierSide,
    BowtieGraph,
    BowtieNode,
    GateType,
    NodeKind,
    insert_barrier,
    left_side,
    right_side,
    validate,
)
from .xmlio import canonicalize, parse_xml, write_xml

__all__ = [
    "BarrierClass",
    "BarrierSide",
    "BowtieGraph",
    "BowtieNode",
    "GateType",
    "NodeKind",
    "canonicalize",
    "inject_context_factors",
    "insert_barrier",
    "left_side",
    "right_side",
    "parse_xml",
    "validate",
    "write_xml",
]

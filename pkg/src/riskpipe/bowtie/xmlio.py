"""Canonical XML persistence for Bowtie graphs.

Schema: root `<bowtie id="...">` containing flat `<node .../>` and
`<edge from="..." to="..."/>` elements. Attribute order is fixed, nodes
serialize sorted by id and edges by (from, to), so identical graphs yield
identical bytes. The top event is identified by its kind attribute.

Parsing is expat-based so schema errors can name the element and line.
Parsed documents are validated; invalid structures (for example cycles)
are rejected with the corresponding violation code.
"""

from __future__ import annotations

import math
from xml.parsers import expat
from xml.sax.saxutils import quoteattr

from ..errors import EngineError
from .model import (
    BarrierClass,
    BarrierSide,
    BowtieGraph,
    BowtieNode,
    GateType,
    NodeKind,
    validate,
)

_NODE_ATTR_ORDER = (
    "id", "kind", "name", "gateType", "barrierClass", "barrierSide",
    "activation", "lambda", "theta", "contextDim", "contextLevel",
)


def _fmt_float(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return repr(value)


def _node_attrs(node: BowtieNode) -> dict[str, str]:
    attrs: dict[str, str] = {"id": node.id, "kind": node.kind.value, "name": node.name}
    if node.gate_type is not None:
        attrs["gateType"] = node.gate_type.value
    if node.kind is NodeKind.BARRIER:
        if node.barrier_class is not None:
            attrs["barrierClass"] = node.barrier_class.value
        if node.barrier_side is not None:
            attrs["barrierSide"] = node.barrier_side.value
        attrs["activation"] = "true" if node.activation else "false"
        if node.lam is not None:
            attrs["lambda"] = _fmt_float(node.lam)
    if node.theta is not None:
        attrs["theta"] = _fmt_float(node.theta)
    if node.context_origin is not None:
        attrs["contextDim"] = node.context_origin[0]
        if node.context_origin[1] is not None:
            attrs["contextLevel"] = node.context_origin[1]
    return attrs


def write_xml(graph: BowtieGraph) -> bytes:
    """Serialize a valid graph to canonical UTF-8 XML bytes."""
    report = validate(graph)
    if not report.ok:
        raise EngineError(
            "VALIDATION",
            f"refusing to serialize invalid bowtie {graph.id!r}",
            details=report.to_json(),
        )
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append(f"<bowtie id={quoteattr(graph.id)}>")
    for node in graph.nodes:  # already canonically sorted
        attrs = _node_attrs(node)
        rendered = " ".join(
            f"{key}={quoteattr(attrs[key])}" for key in _NODE_ATTR_ORDER if key in attrs
        )
        lines.append(f"  <node {rendered}/>")
    for u, v in graph.edges:
        lines.append(f"  <edge from={quoteattr(u)} to={quoteattr(v)}/>")
    lines.append("</bowtie>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_error(message: str, line: int | None = None) -> EngineError:
    where = f" at line {line}" if line is not None else ""
    return EngineError("PARSE_ERROR", f"{message}{where}")


class _DocumentReader:
    def __init__(self):
        self.graph_id: str | None = None
        self.nodes: list[BowtieNode] = []
        self.edges: list[tuple[str, str]] = []
        self.depth = 0
        self.parser = expat.ParserCreate("UTF-8")
        self.parser.StartElementHandler = self.start
        self.parser.EndElementHandler = self.end

    @property
    def line(self) -> int:
        return self.parser.CurrentLineNumber

    def start(self, tag: str, attrs: dict[str, str]):
        self.depth += 1
        if self.depth == 1:
            if tag != "bowtie":
                raise _parse_error(f"expected root element <bowtie>, found <{tag}>", self.line)
            if "id" not in attrs:
                raise _parse_error("<bowtie> requires an id attribute", self.line)
            self.graph_id = attrs["id"]
            return
        if self.depth > 2:
            raise _parse_error(f"unexpected nested element <{tag}>", self.line)
        if tag == "node":
            self.nodes.append(self._read_node(attrs))
        elif tag == "edge":
            self._read_edge(attrs)
        else:
            raise _parse_error(f"unexpected element <{tag}>", self.line)

    def end(self, tag: str):
        self.depth -= 1

    def _read_node(self, attrs: dict[str, str]) -> BowtieNode:
        unknown = set(attrs) - set(_NODE_ATTR_ORDER)
        if unknown:
            raise _parse_error(
                f"<node> has unknown attributes {sorted(unknown)}", self.line
            )
        for required in ("id", "kind"):
            if required not in attrs:
                raise _parse_error(f"<node> missing {required!r} attribute", self.line)
        try:
            kind = NodeKind(attrs["kind"])
        except ValueError:
            raise _parse_error(
                f"unknown node kind {attrs['kind']!r} on <node id={attrs['id']!r}>",
                self.line,
            ) from None
        try:
            origin = None
            if "contextDim" in attrs:
                origin = (attrs["contextDim"], attrs.get("contextLevel"))
            return BowtieNode(
                id=attrs["id"],
                kind=kind,
                name=attrs.get("name", ""),
                gate_type=GateType(attrs["gateType"]) if "gateType" in attrs else None,
                barrier_class=(
                    BarrierClass(attrs["barrierClass"]) if "barrierClass" in attrs else None
                ),
                barrier_side=(
                    BarrierSide(attrs["barrierSide"]) if "barrierSide" in attrs else None
                ),
                activation=attrs.get("activation", "false") == "true",
                lam=float(attrs["lambda"]) if "lambda" in attrs else None,
                theta=float(attrs["theta"]) if "theta" in attrs else None,
                context_origin=origin,
            )
        except ValueError as exc:
            raise _parse_error(
                f"bad attribute value on <node id={attrs['id']!r}>: {exc}", self.line
            ) from None

    def _read_edge(self, attrs: dict[str, str]):
        for required in ("from", "to"):
            if required not in attrs:
                raise _parse_error(f"<edge> missing {required!r} attribute", self.line)
        self.edges.append((attrs["from"], attrs["to"]))


def parse_xml(document: bytes | str) -> BowtieGraph:
    """Parse and validate a Bowtie document."""
    data = document.encode("utf-8") if isinstance(document, str) else document
    reader = _DocumentReader()
    try:
        reader.parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise _parse_error(
            f"malformed XML: {expat.errors.messages[exc.code]}", exc.lineno
        ) from exc
    if reader.graph_id is None:
        raise _parse_error("document has no <bowtie> root element")

    tops = [n.id for n in reader.nodes if n.kind is NodeKind.TOP_EVENT]
    graph = BowtieGraph(
        id=reader.graph_id,
        nodes=tuple(reader.nodes),
        edges=tuple(reader.edges),
        top_event_id=tops[0] if len(tops) == 1 else "",
    )
    report = validate(graph)
    if not report.ok:
        codes = report.codes()
        code = "CYCLE_DETECTED" if "CYCLE_DETECTED" in codes else report.violations[0].code
        raise EngineError(
            code,
            f"document describes an invalid bowtie: {report.violations[0].message}",
            details=report.to_json(),
        )
    return graph


def canonicalize(document: bytes | str) -> bytes:
    """Canonical byte form of a document: parse it and re-serialize."""
    return write_xml(parse_xml(document))

"""Command-line driver for the pipeline workflow.

Subcommands mirror the service endpoints and share their payload builders,
so `riskpipe slice ...` prints the same JSON value the slices endpoint
returns. Exit codes: 0 success, 1 validation/model failure, 2 usage error.

Typical walkthrough:
    riskpipe risk add gateway.json
    riskpipe slice --risk gateway --state "load=Peak,change-complexity=High,..."
    riskpipe triage --states "load=Peak,..." --criticality gateway=high
    riskpipe bowtie validate --file bowtie.xml --risk gateway --store
    riskpipe transform --risk gateway
    riskpipe whatif --dag gateway-deterministic --do ft-2=works
    riskpipe render polar --risk gateway --state "load=Peak,..." --out slice.svg
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bowtie import inject_context_factors, parse_xml, write_xml
from .errors import EngineError
from .heatmap import ContextState, GradingPolicy, default_policy, dump_risk, load_risk
from .service import payloads
from .service.store import ModelStore, load as load_store, persist
from .transform import load_result, result_to_bytes, to_dag


def _open_store(data_dir: str) -> ModelStore:
    if (Path(data_dir) / "index.json").exists():
        return load_store(data_dir)
    return ModelStore()


def _load_policy(path: str | None) -> GradingPolicy:
    if path is None:
        return default_policy()
    return GradingPolicy.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def _parse_assignments(text: str | None) -> dict[str, str]:
    if not text:
        return {}
    return ContextState.parse(text).as_dict()


def _emit(args, payload: dict) -> None:
    if args.output == "table":
        for path, value in _flatten(payload):
            print(f"{path} = {value}")
    else:
        print(json.dumps(payload, indent=2))


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for key in obj:
            yield from _flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        for i, item in enumerate(obj):
            yield from _flatten(item, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _stored_risk(store: ModelStore, risk_id: str):
    entity = store.get("risks", risk_id)
    return load_risk(entity.data), entity


def _cmd_risk(args, store, policy) -> int:
    if args.action == "add":
        risk = load_risk(Path(args.file).read_text(encoding="utf-8"))
        entity = store.put("risks", risk.id, dump_risk(risk), None)
        persist(store, args.data)
        _emit(args, {"id": risk.id, "revision": entity.revision})
    else:  # show
        risk, entity = _stored_risk(store, args.id)
        _emit(args, payloads.risk_payload(risk, entity.revision))
    return 0


def _cmd_slice(args, store, policy) -> int:
    risk, _ = _stored_risk(store, args.risk)
    state = ContextState.of(_parse_assignments(args.state))
    _emit(args, payloads.slice_payload(risk, state, policy))
    return 0


def _cmd_triage(args, store, policy) -> int:
    if args.criteria:
        body = json.loads(Path(args.criteria).read_text(encoding="utf-8"))
    else:
        body = {
            "contextStates": [
                _parse_assignments(chunk)
                for chunk in (args.states or "").split(";") if chunk.strip()
            ],
        }
        if args.classes:
            body["nonAcceptableClasses"] = args.classes.split(",")
        if args.criticality:
            body["temporalCriticality"] = _parse_assignments(args.criticality)
        if args.risks:
            body["riskIds"] = args.risks.split(",")
    risks = [load_risk(e.data) for e in store.list("risks")]
    _emit(args, payloads.triage_payload(risks, body, policy))
    return 0


def _cmd_bowtie(args, store, policy) -> int:
    if args.action == "validate":
        if args.file:
            graph = parse_xml(Path(args.file).read_bytes())
        else:
            graph = parse_xml(store.get("bowties", args.risk).data)
        payload = {"ok": True, "violations": [], "bowtieId": graph.id,
                   "nodes": len(graph.nodes), "edges": len(graph.edges)}
        if args.store:
            store.get("risks", args.risk)
            expected = (
                store.get("bowties", args.risk).revision
                if store.exists("bowties", args.risk) else None
            )
            entity = store.put("bowties", args.risk, write_xml(graph), expected)
            persist(store, args.data)
            payload["revision"] = entity.revision
        _emit(args, payload)
        return 0

    # inject
    risk, _ = _stored_risk(store, args.risk)
    if args.file:
        graph = parse_xml(Path(args.file).read_bytes())
    else:
        graph = parse_xml(store.get("bowties", args.risk).data)
    injected = inject_context_factors(graph, risk)
    data = write_xml(injected)
    expected = (
        store.get("bowties", args.risk).revision
        if store.exists("bowties", args.risk) else None
    )
    entity = store.put("bowties", args.risk, data, expected)
    persist(store, args.data)
    if args.out:
        Path(args.out).write_bytes(data)
    _emit(args, payloads.bowtie_report_payload(args.risk, entity.revision, injected))
    return 0


def _cmd_transform(args, store, policy) -> int:
    entity = store.get("bowties", args.risk)
    result = to_dag(parse_xml(entity.data), args.profile)
    dag_id = f"{args.risk}-{args.profile}"
    dag_entity = store.upsert_unchanged_aware("dags", dag_id, result_to_bytes(result))
    persist(store, args.data)
    _emit(args, {"dagId": dag_id, "revision": dag_entity.revision})
    return 0


def _cmd_infer(args, store, policy) -> int:
    result = load_result(store.get("dags", args.dag).data)
    _emit(args, payloads.infer_payload(result.dag, _parse_assignments(args.evidence)))
    return 0


def _cmd_whatif(args, store, policy) -> int:
    result = load_result(store.get("dags", args.dag).data)
    _emit(args, payloads.whatif_payload(
        result.dag,
        _parse_assignments(args.evidence),
        _parse_assignments(args.do),
        require_activation=not args.no_require_activation,
    ))
    return 0


def _cmd_render(args, store, policy) -> int:
    risk, _ = _stored_risk(store, args.risk)
    state = ContextState.of(_parse_assignments(args.state))
    svg = payloads.polar_payload(risk, state, policy)
    if args.out:
        Path(args.out).write_bytes(svg)
        _emit(args, {"written": args.out, "bytes": len(svg)})
    else:
        sys.stdout.buffer.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskpipe",
        description="risk triage, Bowtie modeling, and what-if analysis",
    )
    parser.add_argument(
        "--data", default=os.environ.get("RISKPIPE_DATA", "./riskpipe-data"),
        help="data directory (env: RISKPIPE_DATA)",
    )
    parser.add_argument("--output", choices=("json", "table"), default="json")
    parser.add_argument("--policy", help="grading policy JSON file")
    sub = parser.add_subparsers(dest="command", required=True)

    p_risk = sub.add_parser("risk", help="manage risk objects")
    risk_sub = p_risk.add_subparsers(dest="action", required=True)
    p_add = risk_sub.add_parser("add")
    p_add.add_argument("file")
    p_show = risk_sub.add_parser("show")
    p_show.add_argument("id")
    p_risk.set_defaults(func=_cmd_risk)

    p_slice = sub.add_parser("slice", help="compute an ND slice")
    p_slice.add_argument("--risk", required=True)
    p_slice.add_argument("--state", required=True, help="dim=Level,dim=Level,...")
    p_slice.set_defaults(func=_cmd_slice)

    p_triage = sub.add_parser("triage", help="rank material risks")
    p_triage.add_argument("--criteria", help="criteria JSON file")
    p_triage.add_argument("--states", help="semicolon-separated context states")
    p_triage.add_argument("--classes", help="comma-separated non-acceptable classes")
    p_triage.add_argument("--criticality", help="riskId=low|medium|high,...")
    p_triage.add_argument("--risks", help="comma-separated risk id filter")
    p_triage.set_defaults(func=_cmd_triage)

    p_bowtie = sub.add_parser("bowtie", help="validate or inject a Bowtie")
    bowtie_sub = p_bowtie.add_subparsers(dest="action", required=True)
    p_validate = bowtie_sub.add_parser("validate")
    p_validate.add_argument("--risk", help="risk id (stored bowtie, or --store target)")
    p_validate.add_argument("--file", help="Bowtie XML file")
    p_validate.add_argument("--store", action="store_true", help="store when clean")
    p_inject = bowtie_sub.add_parser("inject")
    p_inject.add_argument("--risk", required=True)
    p_inject.add_argument("--file", help="Bowtie XML file (default: stored bowtie)")
    p_inject.add_argument("--out", help="write injected XML here")
    p_bowtie.set_defaults(func=_cmd_bowtie)

    p_transform = sub.add_parser("transform", help="Bowtie -> DAG")
    p_transform.add_argument("--risk", required=True)
    p_transform.add_argument("--profile", choices=("deterministic", "noisy"),
                             default="deterministic")
    p_transform.set_defaults(func=_cmd_transform)

    p_infer = sub.add_parser("infer", help="posteriors given evidence")
    p_infer.add_argument("--dag", required=True)
    p_infer.add_argument("--evidence", help="node=state,...")
    p_infer.set_defaults(func=_cmd_infer)

    p_whatif = sub.add_parser("whatif", help="do-style intervention analysis")
    p_whatif.add_argument("--dag", required=True)
    p_whatif.add_argument("--evidence", help="node=state,...")
    p_whatif.add_argument("--do", help="node=state,... forced states")
    p_whatif.add_argument("--no-require-activation", action="store_true")
    p_whatif.set_defaults(func=_cmd_whatif)

    p_render = sub.add_parser("render", help="render artifacts")
    render_sub = p_render.add_subparsers(dest="action", required=True)
    p_polar = render_sub.add_parser("polar")
    p_polar.add_argument("--risk", required=True)
    p_polar.add_argument("--state", required=True)
    p_polar.add_argument("--out")
    p_render.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        store = _open_store(args.data)
        policy = _load_policy(args.policy)
        return args.func(args, store, policy)
    except EngineError as exc:
        print(
            json.dumps({"error": {
                "code": exc.code, "message": exc.message, "details": exc.details,
            }}, indent=2),
            file=sys.stderr,
        )
        return 1
    except FileNotFoundError as exc:
        print(
            json.dumps({"error": {"code": "NOT_FOUND", "message": str(exc)}}, indent=2),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())

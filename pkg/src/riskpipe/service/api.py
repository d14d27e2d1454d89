"""REST service exposing the pipeline over HTTP/1.1 JSON.

Endpoints (all GETs side-effect free, responses deterministic for a fixed
store revision):

    POST /risks                      create a risk (JSON document)
    GET  /risks                      list risk ids and revisions
    GET  /risks/{id}                 fetch a risk document
    PUT  /risks/{id}                 update a risk (If-Match: revision)
    POST /risks/{id}/slices          context state -> ND slice
    GET  /risks/{id}/polar?state=    context state -> SVG polar heatmap
    POST /triage                     criteria -> ranked triage decisions
    PUT  /risks/{id}/bowtie[?inject] upload Bowtie XML (optionally weaving
                                     in the risk's context factors first)
    GET  /risks/{id}/bowtie          fetch the stored Bowtie XML
    POST /risks/{id}/transform       transform the Bowtie -> dag id
    GET  /dags/{id}                  fetch the DAG export document
    GET  /dags/{id}/activation-nodes intervention points + forced states
    GET  /dags/{id}/trace/{nodeId}   Bowtie origin of a DAG node
    POST /dags/{id}/infer            evidence -> posteriors
    POST /dags/{id}/whatif           evidence + intervention -> posteriors

Writes use optimistic concurrency: creating conflicts when the entity
exists, updating requires If-Match with the current revision; a stale
revision receives 409 and never silently overwrites.

Error registry (EngineError code -> HTTP status): NOT_FOUND 404,
ALREADY_EXISTS/REVISION_CONFLICT 409, validation and model-contract codes
422, anything unregistered 400, unexpected failures 500.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..bowtie import inject_context_factors, parse_xml, write_xml
from ..errors import EngineError
from ..heatmap import GradingPolicy, default_policy, dump_risk, load_risk
from ..transform import load_result, result_to_bytes, to_dag
from . import payloads
from .store import ModelStore, load as load_store, persist

DEFAULT_MAX_JOINT = 2 ** 22

ERROR_REGISTRY: dict[str, int] = {
    "NOT_FOUND": 404,
    "ALREADY_EXISTS": 409,
    "REVISION_CONFLICT": 409,
    "VALIDATION": 422,
    "PARSE_ERROR": 422,
    "CYCLE_DETECTED": 422,
    "TOP_EVENT_COUNT": 422,
    "PARAM_RANGE": 422,
    "GATE_ARITY": 422,
    "NORMALIZE_FIRST": 422,
    "EVIDENCE_IMPOSSIBLE": 422,
    "CONTRADICTORY_EVIDENCE": 422,
    "NOT_INTERVENABLE": 422,
    "NOISY_OR_THETA": 422,
    "PROFILE": 422,
    "POLAR_NO_DIMS": 422,
    "STATE_SPACE": 422,
}


def _status_for(code: str) -> int:
    return ERROR_REGISTRY.get(code, 400)


def _error_response(exc: EngineError) -> JSONResponse:
    status = _status_for(exc.code)
    return JSONResponse(
        status_code=status,
        content={
            "error": {
                "httpStatus": status,
                "code": exc.code,
                "message": exc.message,
                "details": exc.details,
            }
        },
    )


def _if_match(request: Request) -> int | None:
    value = request.headers.get("If-Match")
    if value is None:
        return None
    try:
        return int(value.strip().strip('"'))
    except ValueError:
        raise EngineError("VALIDATION", f"If-Match must be a revision number, got {value!r}")


def create_app(store: ModelStore | None = None,
               policy: GradingPolicy | None = None,
               data_dir: str | Path | None = None,
               max_joint: int = DEFAULT_MAX_JOINT) -> FastAPI:
    """Build the service; with `data_dir` set, the store is durable."""
    policy = policy or default_policy()
    if store is None:
        if data_dir is not None and (Path(data_dir) / "index.json").exists():
            store = load_store(data_dir)
        else:
            store = ModelStore()

    app = FastAPI(title="riskpipe", version="0.1.0")

    def save():
        if data_dir is not None:
            persist(store, data_dir)

    def stored_risk(risk_id: str):
        entity = store.get("risks", risk_id)
        return load_risk(entity.data), entity

    def stored_dag(dag_id: str):
        entity = store.get("dags", dag_id)
        result = load_result(entity.data)
        size = math.prod(len(n.states) for n in result.dag.nodes)
        if size > max_joint:
            raise EngineError(
                "STATE_SPACE",
                f"model state space {size} exceeds configured limit {max_joint}",
            )
        return result, entity

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request: Request, exc: EngineError):
        return _error_response(exc)

    @app.exception_handler(Exception)
    async def internal_error_handler(_request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={
                "error": {
                    "httpStatus": 500,
                    "code": "INTERNAL",
                    "message": str(exc),
                    "details": None,
                }
            },
        )

    # ---- risks -----------------------------------------------------------
    @app.post("/risks", status_code=201)
    async def create_risk(request: Request):
        doc = await request.json()
        risk = load_risk(json.dumps(doc))
        entity = store.put("risks", risk.id, dump_risk(risk), None)
        save()
        return {"id": risk.id, "revision": entity.revision}

    @app.get("/risks")
    async def list_risks():
        return payloads.risk_list_payload(
            [(e.id, e.revision) for e in store.list("risks")]
        )

    @app.get("/risks/{risk_id}")
    async def get_risk(risk_id: str):
        risk, entity = stored_risk(risk_id)
        return payloads.risk_payload(risk, entity.revision)

    @app.put("/risks/{risk_id}")
    async def update_risk(risk_id: str, request: Request):
        doc = await request.json()
        risk = load_risk(json.dumps(doc))
        if risk.id != risk_id:
            raise EngineError(
                "VALIDATION", f"document id {risk.id!r} does not match path id {risk_id!r}"
            )
        entity = store.put("risks", risk_id, dump_risk(risk), _if_match(request))
        save()
        return {"id": risk_id, "revision": entity.revision}

    @app.post("/risks/{risk_id}/slices")
    async def post_slice(risk_id: str, request: Request):
        body = await request.json()
        risk, _ = stored_risk(risk_id)
        state = payloads.ContextState.of(dict(body))
        return payloads.slice_payload(risk, state, policy)

    @app.get("/risks/{risk_id}/polar")
    async def get_polar(risk_id: str, state: str):
        risk, _ = stored_risk(risk_id)
        svg = payloads.polar_payload(risk, payloads.parse_state_param(state), policy)
        return Response(content=svg, media_type="image/svg+xml")

    # ---- triage ----------------------------------------------------------
    @app.post("/triage")
    async def post_triage(request: Request):
        body = await request.json()
        risks = [load_risk(e.data) for e in store.list("risks")]
        return payloads.triage_payload(risks, body, policy)

    # ---- bowties ---------------------------------------------------------
    @app.put("/risks/{risk_id}/bowtie")
    async def put_bowtie(risk_id: str, request: Request, inject: bool = False):
        raw = await request.body()
        graph = parse_xml(raw)
        if inject:
            risk, _ = stored_risk(risk_id)
            graph = inject_context_factors(graph, risk)
        else:
            store.get("risks", risk_id)  # the bowtie attaches to a known risk
        data = write_xml(graph)
        expected = _if_match(request)
        if expected is None and store.exists("bowties", risk_id):
            raise EngineError(
                "ALREADY_EXISTS",
                f"bowtie for risk {risk_id!r} exists; supply If-Match to update",
            )
        entity = store.put("bowties", risk_id, data, expected)
        save()
        return payloads.bowtie_report_payload(risk_id, entity.revision, graph)

    @app.get("/risks/{risk_id}/bowtie")
    async def get_bowtie(risk_id: str):
        entity = store.get("bowties", risk_id)
        return Response(content=entity.data, media_type="application/xml")

    # ---- transformation --------------------------------------------------
    @app.post("/risks/{risk_id}/transform")
    async def post_transform(risk_id: str, request: Request):
        raw = await request.body()
        body = json.loads(raw) if raw else {}
        profile = body.get("profile", "deterministic")
        entity = store.get("bowties", risk_id)
        result = to_dag(parse_xml(entity.data), profile)
        dag_id = f"{risk_id}-{profile}"
        dag_entity = store.upsert_unchanged_aware(
            "dags", dag_id, result_to_bytes(result)
        )
        save()
        return {"dagId": dag_id, "revision": dag_entity.revision}

    # ---- dags ------------------------------------------------------------
    @app.get("/dags/{dag_id}")
    async def get_dag(dag_id: str):
        entity = store.get("dags", dag_id)
        return {"revision": entity.revision, "dag": json.loads(entity.data)}

    @app.get("/dags/{dag_id}/activation-nodes")
    async def get_activation_nodes(dag_id: str):
        result, _ = stored_dag(dag_id)
        bowtie = None
        risk_id = dag_id.rsplit("-", 1)[0]
        if store.exists("bowties", risk_id):
            bowtie = parse_xml(store.get("bowties", risk_id).data)
        return payloads.activation_payload(result, bowtie)

    @app.get("/dags/{dag_id}/trace/{node_id}")
    async def get_trace(dag_id: str, node_id: str):
        result, _ = stored_dag(dag_id)
        return payloads.trace_payload(result, node_id)

    @app.post("/dags/{dag_id}/infer")
    async def post_infer(dag_id: str, request: Request):
        body = await request.json()
        result, _ = stored_dag(dag_id)
        return payloads.infer_payload(result.dag, body.get("evidence", {}))

    @app.post("/dags/{dag_id}/whatif")
    async def post_whatif(dag_id: str, request: Request):
        body = await request.json()
        result, _ = stored_dag(dag_id)
        return payloads.whatif_payload(
            result.dag,
            body.get("evidence", {}),
            body.get("intervention", {}),
            bool(body.get("requireActivation", True)),
        )

    return app

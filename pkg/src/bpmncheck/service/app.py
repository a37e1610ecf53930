"""Local HTTP service exposing analysis and fix application.

Requests are stateless: the model XML travels with every request and fix
ids are recomputed per request, so the client owns the undo history.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..bpmn_xml import parse_bpmn, serialize_bpmn
from ..diagnostics import diagnosis_document
from ..errors import BpmnCheckError, MalformedXmlError, StaleFixError
from ..explorer import ExplorationLimits
from ..properties import diagnose
from ..quickfix import apply_fix
from .schemas import ApplyFixResponse, DiagnosisDoc, HealthResponse


def create_app() -> FastAPI:
    app = FastAPI(title="bpmncheck", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/analyze", response_model=DiagnosisDoc)
    async def analyze(
        request: Request,
        lenient: bool = False,
        max_states: int | None = None,
    ) -> Response:
        body = (await request.body()).decode("utf-8", errors="replace")
        limits = ExplorationLimits(max_states=max_states) if max_states else None
        try:
            model = parse_bpmn(body, lenient=lenient)
            diagnosis = diagnose(model, limits)
        except BpmnCheckError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        return JSONResponse(diagnosis_document("model", diagnosis))

    @app.post("/api/fix/apply", response_model=ApplyFixResponse)
    async def fix_apply(request: Request) -> Response:
        raw = await request.body()
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError:
            return JSONResponse(status_code=400, content={"detail": "malformed JSON body"})
        if not isinstance(payload, dict) or not isinstance(payload.get("xml"), str) or not isinstance(
            payload.get("fixId"), str
        ):
            return JSONResponse(
                status_code=400, content={"detail": "body must be {xml: string, fixId: string}"}
            )
        try:
            model = parse_bpmn(payload["xml"])
            diagnosis = diagnose(model)
        except MalformedXmlError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        except BpmnCheckError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        fix = next((f for f in diagnosis.quick_fixes if f.id == payload["fixId"]), None)
        if fix is None:
            return JSONResponse(
                status_code=409,
                content={"detail": f"fix {payload['fixId']!r} is not applicable to this model"},
            )
        try:
            edited = apply_fix(model, fix)
        except StaleFixError as exc:
            return JSONResponse(status_code=409, content={"detail": str(exc)})
        edited_xml = serialize_bpmn(edited)
        re_diagnosis = diagnose(edited)
        return JSONResponse(
            {
                "xml": edited_xml,
                "diagnosis": diagnosis_document("model", re_diagnosis),
            }
        )

    return app

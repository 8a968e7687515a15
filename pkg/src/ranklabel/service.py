"""HTTP service exposing the engine to batch clients and the designer UI.

All responses are JSON except the rendered label HTML; every error body has
the shape ``{"error": code, "message": text}`` (plus ``fields`` for
per-field validation messages). Dataset and ranking ids are content-derived,
so identical uploads and identical ranking requests are idempotent.
"""

from __future__ import annotations

import importlib.resources
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .dataset import Dataset, column_descriptor, histogram
from .errors import RankLabelError
from .fairness import FairnessConfig
from .label import build_label, parse_label, render_json
from .html import render_html
from .scoring import ScoringSpec, build_ranking
from .store import SessionStore, StoredRanking, ranking_id

MAX_UPLOAD_BYTES = 50 * 1024 * 1024
DEFAULT_BINS = 10


class RankingRequest(BaseModel):
    weights: dict[str, float] = Field(min_length=1)
    normalization: str = "none"
    sensitive_attribute: str
    diversity_attributes: list[str] = []
    k: int = Field(default=10, ge=1)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    p: Optional[float] = Field(default=None, gt=0, lt=1)


def _error(status: int, code: str, message: str, fields: dict | None = None) -> JSONResponse:
    body: dict = {"error": code, "message": message}
    if fields:
        body["fields"] = fields
    return JSONResponse(status_code=status, content=body)


def _not_found(kind: str, object_id: str) -> JSONResponse:
    return _error(404, "not_found", f"unknown {kind} id {object_id!r}")


def _dataset_descriptor(store: SessionStore, dataset_id: str, dataset: Dataset) -> dict:
    return {
        "dataset_id": dataset_id,
        "name": store.dataset_name(dataset_id),
        "row_count": dataset.row_count,
        "columns": [column_descriptor(dataset, n) for n in dataset.column_names],
    }


def _request_fields(spec_request: RankingRequest, dataset: Dataset) -> dict:
    """Field-level semantic validation of a ranking request against a dataset."""
    fields: dict[str, str] = {}
    names = set(dataset.column_names)
    for attr in spec_request.weights:
        if attr not in names:
            fields["weights"] = f"unknown attribute {attr!r}"
        elif dataset.column(attr).kind != "numeric":
            fields["weights"] = f"attribute {attr!r} is not numeric"
    if all(w == 0 for w in spec_request.weights.values()):
        fields["weights"] = "at least one weight must be nonzero"
    if spec_request.normalization not in ("none", "minmax", "zscore"):
        fields["normalization"] = f"unknown mode {spec_request.normalization!r}"
    sensitive = spec_request.sensitive_attribute
    if sensitive not in names:
        fields["sensitive_attribute"] = f"unknown attribute {sensitive!r}"
    elif dataset.column(sensitive).kind != "categorical":
        fields["sensitive_attribute"] = f"attribute {sensitive!r} is not categorical"
    else:
        distinct = {v for v in dataset.column(sensitive).values if v is not None}
        if len(distinct) != 2:
            fields["sensitive_attribute"] = (
                f"attribute {sensitive!r} has {len(distinct)} values, expected 2"
            )
    for attr in spec_request.diversity_attributes:
        if attr not in names:
            fields["diversity_attributes"] = f"unknown attribute {attr!r}"
        elif dataset.column(attr).kind != "categorical":
            fields["diversity_attributes"] = f"attribute {attr!r} is not categorical"
    return fields


def _preview(dataset: Dataset, ranking) -> list[dict]:
    rows = []
    for position, (index, score) in enumerate(
        zip(ranking.top_k, ranking.scores[: ranking.k]), start=1
    ):
        values = {c.name: c.values[index] for c in dataset.columns}
        rows.append({"rank": position, "row_index": index, "score": score, "values": values})
    return rows


def load_fixture_datasets() -> list[tuple[str, bytes]]:
    """Bundled demo datasets as (name, csv bytes) pairs."""
    out = []
    base = importlib.resources.files("ranklabel.fixtures")
    for entry in sorted(base.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".csv"):
            out.append((entry.name[: -len(".csv")], entry.read_bytes()))
    return out


def create_app(
    data_dir: Path | str,
    ui_dir: Path | str | None = None,
    max_upload_bytes: int = MAX_UPLOAD_BYTES,
    preload_fixtures: bool = True,
) -> FastAPI:
    store = SessionStore(data_dir)
    if preload_fixtures:
        for name, data in load_fixture_datasets():
            store.put_dataset(data, name=name)

    app = FastAPI(title="ranklabel", version="1.0", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.exception_handler(RankLabelError)
    async def handle_engine_error(request: Request, exc: RankLabelError):
        return _error(400, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        fields = {}
        for err in exc.errors():
            loc = ".".join(str(part) for part in err["loc"] if part != "body")
            fields[loc or "body"] = err["msg"]
        return _error(400, "validation_error", "invalid request body", fields)

    @app.get("/api/v1/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/v1/datasets")
    async def list_datasets():
        out = []
        for dataset_id, name in store.list_datasets():
            dataset = store.get_dataset(dataset_id)
            if dataset is not None:
                out.append(
                    {"dataset_id": dataset_id, "name": name, "row_count": dataset.row_count}
                )
        return out

    @app.post("/api/v1/datasets")
    async def upload_dataset(request: Request, name: Optional[str] = Query(default=None)):
        body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(
                413,
                "too_large",
                f"upload exceeds {max_upload_bytes} bytes",
            )
        dataset_id, dataset = store.put_dataset(body, name=name)
        return _dataset_descriptor(store, dataset_id, dataset)

    @app.get("/api/v1/datasets/{dataset_id}")
    async def get_dataset(dataset_id: str):
        dataset = store.get_dataset(dataset_id)
        if dataset is None:
            return _not_found("dataset", dataset_id)
        return _dataset_descriptor(store, dataset_id, dataset)

    @app.get("/api/v1/datasets/{dataset_id}/histogram")
    async def get_histogram(
        dataset_id: str,
        attribute: str,
        bins: int = Query(default=DEFAULT_BINS, ge=1),
    ):
        dataset = store.get_dataset(dataset_id)
        if dataset is None:
            return _not_found("dataset", dataset_id)
        hist = histogram(dataset, attribute, bins)
        return {
            "attribute": hist.attribute,
            "bin_edges": list(hist.bin_edges),
            "counts": list(hist.counts),
        }

    @app.post("/api/v1/datasets/{dataset_id}/rankings")
    async def create_ranking(dataset_id: str, ranking_request: RankingRequest):
        dataset = store.get_dataset(dataset_id)
        if dataset is None:
            return _not_found("dataset", dataset_id)
        fields = _request_fields(ranking_request, dataset)
        if fields:
            return _error(400, "validation_error", "invalid ranking request", fields)
        request_dict = ranking_request.model_dump()
        rid = ranking_id(dataset_id, request_dict)
        existing = store.get_ranking(rid)
        if existing is not None:
            return {"ranking_id": rid, "preview": existing.preview}
        spec = ScoringSpec(ranking_request.weights, ranking_request.normalization)
        annotated, ranking = build_ranking(
            dataset, spec, ranking_request.k, require=[ranking_request.sensitive_attribute]
        )
        config = FairnessConfig(
            alpha=ranking_request.alpha, p=ranking_request.p, k=ranking.k
        )
        label = build_label(
            annotated,
            ranking,
            ranking_request.sensitive_attribute,
            ranking_request.diversity_attributes,
            config,
        )
        preview = _preview(dataset, ranking)
        store.put_ranking(
            StoredRanking(
                ranking_id=rid,
                dataset_id=dataset_id,
                request=request_dict,
                preview=preview,
                label_json=render_json(label),
            )
        )
        return {"ranking_id": rid, "preview": preview}

    @app.get("/api/v1/rankings/{rid}/label")
    async def get_label(rid: str):
        stored = store.get_ranking(rid)
        if stored is None:
            return _not_found("ranking", rid)
        return Response(content=stored.label_json, media_type="application/json")

    @app.get("/api/v1/rankings/{rid}/label.html")
    async def get_label_html(rid: str):
        stored = store.get_ranking(rid)
        if stored is None:
            return _not_found("ranking", rid)
        label = parse_label(stored.label_json)
        return HTMLResponse(content=render_html(label).decode("utf-8"))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        async def index():
            return (
                "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"/>"
                "<title>ranklabel</title></head><body>"
                "<h1>ranklabel service</h1>"
                "<p>No UI assets configured. API lives under /api/v1/.</p>"
                "</body></html>"
            )

    return app


def http_service(
    port: int = 8000,
    data_dir: Path | str = "ranklabel_data",
    ui_dir: Path | str | None = None,
) -> None:
    """Run the service until interrupted."""
    import uvicorn

    app = create_app(data_dir, ui_dir=ui_dir)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="info")

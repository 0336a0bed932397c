"""HTTP facade over the graph and the path search.

Endpoints (all JSON):

- ``POST /graph``                 load/replace the served snapshot
- ``GET  /graph``                 current snapshot
- ``GET  /terms``                 term index for autocomplete
- ``POST /query``                 run a learning-path query
- ``POST /transactions``          apply a QA batch atomically, then promote
- ``POST /sessions``              open a learner session
- ``POST /sessions/{id}/drilldown``  re-query an interior term of the last path
- ``POST /sessions/{id}/known``   mark a term as already understood

Mutations swap a fresh graph object under a lock and bump the version;
queries read whatever reference they grabbed, so in-flight work finishes
against the version it started with.  Every query response carries the
seed it ran with, so any served path can be reproduced later.
"""

from __future__ import annotations

import json
import secrets
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import aco
from .corpus import Transaction, TransactionKind, normalize_term
from .errors import (
    AntPathError,
    InvalidParameterError,
    InvalidTermError,
    NoPathError,
    SnapshotError,
    UnknownTermError,
)
from .fpgraph import ROOT, FPGraph, suggest_terms


@dataclass
class Session:
    id: str
    graph_version: int
    known_terms: set[str] = field(default_factory=set)
    history: list[tuple[str, dict]] = field(default_factory=list)


@dataclass
class ServiceState:
    graph: FPGraph | None = None
    version: int = 0
    default_params: aco.ACOParams = field(default_factory=aco.ACOParams)
    sessions: dict[str, Session] = field(default_factory=dict)
    lock: threading.RLock = field(default_factory=threading.RLock)


class ParamsPatch(BaseModel):
    alpha: float | None = None
    beta: float | None = None
    rho: float | None = None
    q_factor: float | None = None
    tau0: float | None = None
    n_ants: int | None = None
    max_iterations: int | None = None
    stagnation_window: int | None = None

    def overrides(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class QueryBody(BaseModel):
    term: str
    known: list[str] = Field(default_factory=list)
    params: ParamsPatch | None = None
    seed: int | None = None
    session: str | None = None


class SessionBody(BaseModel):
    known: list[str] = Field(default_factory=list)


class DrilldownBody(BaseModel):
    term: str
    seed: int | None = None
    params: ParamsPatch | None = None


class KnownBody(BaseModel):
    term: str


class QARecord(BaseModel):
    question: str
    answer_keywords: list[str]


class TransactionsBody(BaseModel):
    transactions: list[QARecord]


def _error(status: int, code: str, detail: str, **extra) -> JSONResponse:
    return JSONResponse({"error": code, "detail": detail, **extra}, status_code=status)


def create_app(
    graph: FPGraph | None = None, default_params: aco.ACOParams | None = None
) -> FastAPI:
    state = ServiceState(
        graph=graph,
        version=1 if graph is not None else 0,
        default_params=default_params or aco.ACOParams(),
    )
    app = FastAPI(title="antpath")
    app.state.antpath = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def current_graph() -> tuple[FPGraph, int]:
        with state.lock:
            if state.graph is None:
                raise LookupError("no graph loaded")
            return state.graph, state.version

    def resolve_term(graph: FPGraph, raw: str) -> str:
        term = normalize_term(raw)
        if term == ROOT.lower() and term not in graph.nodes:
            raise InvalidParameterError("the root sentinel is not a queryable term")
        if term not in graph.nodes:
            raise UnknownTermError(term, tuple(suggest_terms(graph, term)))
        return term

    def run_query(
        graph: FPGraph,
        version: int,
        term: str,
        known: frozenset[str],
        patch: ParamsPatch | None,
        seed: int | None,
    ) -> dict:
        params = aco.merge_params(state.default_params, patch.overrides() if patch else {})
        seed = seed if seed is not None else secrets.randbits(63)
        params = aco.merge_params(params, {"seed": seed})
        path, pheromone = aco.run_search(graph, term, known, params)
        doc = path.to_json_dict()
        doc["seed"] = seed
        doc["version"] = version
        doc["edges"] = [
            {
                "from": a,
                "to": b,
                "frequency": graph.edges[(a, b)].frequency,
                "association": graph.edges[(a, b)].is_association,
                "tau": pheromone.tau[(a, b)],
            }
            for a, b in zip(path.path, path.path[1:])
        ]
        return doc

    @app.exception_handler(AntPathError)
    async def antpath_error(_request: Request, exc: AntPathError):
        if isinstance(exc, UnknownTermError):
            return _error(404, "unknown_term", str(exc), suggestions=list(exc.suggestions))
        if isinstance(exc, NoPathError):
            return _error(409, "no_path", str(exc), dead_ends=list(exc.dead_ends))
        if isinstance(exc, SnapshotError):
            return _error(400, "invalid_snapshot", str(exc), element=exc.element)
        if isinstance(exc, (InvalidParameterError, InvalidTermError)):
            return _error(400, "invalid_request", str(exc))
        return _error(400, "error", str(exc))

    @app.exception_handler(LookupError)
    async def no_graph(_request: Request, exc: LookupError):
        return _error(409, "no_graph", str(exc))

    @app.post("/graph")
    async def load_graph(request: Request):
        doc = await request.json()
        new_graph = FPGraph.restore(doc)
        with state.lock:
            state.graph = new_graph
            state.version += 1
            return {"version": state.version}

    @app.get("/graph")
    async def get_graph():
        graph, version = current_graph()
        doc = graph.snapshot()
        doc["version"] = version
        return doc

    @app.get("/terms")
    async def list_terms():
        graph, version = current_graph()
        in_deg: dict[str, int] = {}
        out_deg: dict[str, int] = {}
        for a, b in graph.edges:
            out_deg[a] = out_deg.get(a, 0) + 1
            in_deg[b] = in_deg.get(b, 0) + 1
        return {
            "version": version,
            "terms": [
                {
                    "term": t,
                    "data_list_size": len(graph.nodes[t].data_list),
                    "in_degree": in_deg.get(t, 0),
                    "out_degree": out_deg.get(t, 0),
                }
                for t in graph.terms()
            ],
        }

    @app.post("/query")
    async def query(body: QueryBody):
        graph, version = current_graph()
        term = resolve_term(graph, body.term)
        known = {normalize_term(k) for k in body.known}
        session: Session | None = None
        if body.session is not None:
            session = state.sessions.get(body.session)
            if session is None:
                return _error(404, "unknown_session", f"no session {body.session!r}")
            known |= session.known_terms
            if term in session.known_terms:
                return _error(422, "already_known", f"{term!r} is already marked known")
        doc = run_query(graph, version, term, frozenset(known), body.params, body.seed)
        if session is not None:
            with state.lock:
                session.history.append((term, doc))
            doc["session"] = session.id
            doc["history_length"] = len(session.history)
        return doc

    @app.post("/transactions")
    async def apply_transactions(body: TransactionsBody):
        with state.lock:
            if state.graph is None:
                raise LookupError("no graph loaded")
            if not body.transactions:
                return {"version": state.version, "applied": 0, "unmatched": 0, "results": [], "promoted": []}
            txns = [
                Transaction(
                    target=normalize_term(r.question),
                    prerequisites=tuple(
                        dict.fromkeys(
                            normalize_term(k)
                            for k in r.answer_keywords
                            if normalize_term(k) != normalize_term(r.question)
                        )
                    ),
                    kind=TransactionKind.QA,
                )
                for r in body.transactions
            ]
            work = state.graph.copy()
            reports = [work.apply_qa_transaction(t) for t in txns]
            promoted = work.promote_associations()
            state.graph = work
            state.version += 1
            return {
                "version": state.version,
                "applied": len(reports),
                "unmatched": sum(1 for r in reports if not r.matched),
                "results": [
                    {
                        "question": r.transaction.target,
                        "matched": r.matched,
                        "credited_edges": r.matched_length,
                        "unknown_target": r.unknown_target,
                    }
                    for r in reports
                ],
                "promoted": [{"from": a, "to": b} for a, b in promoted],
            }

    @app.post("/sessions")
    async def create_session(body: SessionBody):
        graph, version = current_graph()
        known = {normalize_term(k) for k in body.known}
        for term in known:
            if term not in graph.nodes:
                raise UnknownTermError(term, tuple(suggest_terms(graph, term)))
        session = Session(id=uuid.uuid4().hex, graph_version=version, known_terms=known)
        with state.lock:
            state.sessions[session.id] = session
        return {"id": session.id, "known": sorted(session.known_terms), "version": version}

    @app.post("/sessions/{session_id}/drilldown")
    async def drilldown(session_id: str, body: DrilldownBody):
        graph, version = current_graph()
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        term = resolve_term(graph, body.term)
        if not session.history:
            return _error(422, "no_history", "nothing to drill down from; run a query first")
        last_doc = session.history[-1][1]
        if term not in last_doc["recommended"]:
            return _error(
                422, "not_in_last_path", f"{term!r} is not in the last recommendation"
            )
        if term in session.known_terms:
            return _error(422, "already_known", f"{term!r} is already marked known")
        doc = run_query(graph, version, term, frozenset(session.known_terms), body.params, body.seed)
        with state.lock:
            session.history.append((term, doc))
        doc["session"] = session.id
        doc["history_length"] = len(session.history)
        return doc

    @app.post("/sessions/{session_id}/known")
    async def mark_known(session_id: str, body: KnownBody):
        graph, _version = current_graph()
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        term = resolve_term(graph, body.term)
        with state.lock:
            session.known_terms.add(term)
        return {"id": session.id, "known": sorted(session.known_terms)}

    return app


def load_graph_file(path: str) -> FPGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return FPGraph.restore(json.load(fh))

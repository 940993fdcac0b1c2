"""HTTP service tying the engine together for the game client.

Every state-mutating endpoint accepts a client-supplied request_id and is
idempotent under it: replays return the first response without reapplying
the effect. Mutations for one learner are serialized behind a per-learner
lock, so interleaved requests land in some serial order. Active sessions
are persisted on shutdown and restored on the next start.
"""

from __future__ import annotations

import itertools
import json
import os
import secrets
import threading
from contextlib import asynccontextmanager
from datetime import date as Date
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import rewards, surveys
from .config import ServiceConfig
from .curriculum import Lesson, Topic, TopicCode, curriculum, topic_by_code
from .errors import (
    ConfigurationError,
    DomainError,
    InsufficientTicketsError,
    MathQuestError,
    SessionStateError,
    TopicLockedError,
    UnknownLearnerError,
    ValidationError,
)
from .problems import (
    DivisionModel,
    Presentation,
    Problem,
    illustrate_division,
    generate_problem,
    render_presentation,
)
from .records import LearnerStore
from .sessions import (
    AnswerEvent,
    SessionState,
    Stage,
    advance_stage,
    finalize,
    load_message_catalog,
    session_from_dict,
    session_to_dict,
    start_session,
    submit_answer,
    unlocked_topics,
)
from .word_problems import load_templates

_ERROR_STATUS: tuple[tuple[type, int], ...] = (
    (UnknownLearnerError, 404),
    (TopicLockedError, 403),
    (SessionStateError, 409),
    (InsufficientTicketsError, 409),
    (ValidationError, 400),
    (DomainError, 400),
    (ConfigurationError, 500),
)


class RegisterBody(BaseModel):
    display_name: str
    grade_level: int = 2
    request_id: str | None = None


class StartSessionBody(BaseModel):
    learner_id: str
    topic: str
    seed: int | str | None = None
    request_id: str | None = None


class AnswerBody(BaseModel):
    answer: int
    elapsed_seconds: float
    request_id: str | None = None


class AdvanceBody(BaseModel):
    request_id: str | None = None


class FinalizeBody(BaseModel):
    request_id: str | None = None
    record_date: str | None = None  # ISO date override for deterministic runs


class PurchaseBody(BaseModel):
    item_id: str
    request_id: str | None = None


class AssessmentItem(BaseModel):
    item_id: str
    responses: list[int]


class AssessmentBody(BaseModel):
    groups: dict[str, list[AssessmentItem]]
    bands: str | None = None


class ServiceState:
    """Everything the endpoints share: storage, config, caches, locks."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.store = LearnerStore(config.data_dir)
        self.catalog = rewards.load_catalog(config.catalog_file)
        self.templates = load_templates(config.template_file)
        self.messages = load_message_catalog(config.message_file)
        self.bands = surveys.bands_preset(config.bands)
        self.sessions: dict[str, SessionState] = {}
        self.sessions_path = Path(config.data_dir) / "sessions.json"
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._idempotency: dict[tuple[str, str], tuple[int, dict]] = {}
        self._restore_sessions()
        start = 1 + max(
            (int(sid.split("-")[1]) for sid in self.sessions), default=0
        )
        self._session_ids = itertools.count(start)

    def lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def new_session_id(self) -> str:
        return f"s-{next(self._session_ids):08d}"

    def idempotent(
        self, scope: str, request_id: str | None, compute: Callable[[], tuple[int, dict]]
    ) -> tuple[int, dict]:
        """Run ``compute`` once per (scope, request_id); replay its response."""
        if not request_id:
            return compute()
        key = (scope, request_id)
        cached = self._idempotency.get(key)
        if cached is not None:
            return cached
        result = compute()
        self._idempotency[key] = result
        return result

    def _restore_sessions(self) -> None:
        if not self.sessions_path.exists():
            return
        try:
            data = json.loads(self.sessions_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            return  # a torn shutdown snapshot is not fatal; sessions just expire
        for sid, payload in data.items():
            self.sessions[sid] = session_from_dict(payload)

    def persist_sessions(self) -> None:
        snapshot = {sid: session_to_dict(state) for sid, state in self.sessions.items()}
        tmp = self.sessions_path.with_suffix(".json.tmp")
        with tmp.open("w", encoding="utf-8") as handle:
            json.dump(snapshot, handle, sort_keys=True)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, self.sessions_path)


def _topic_from_code(code: str) -> Topic:
    try:
        return topic_by_code(TopicCode(code))
    except ValueError:
        raise DomainError(f"unknown topic code {code!r}") from None


def _problem_view(problem: Problem) -> dict:
    """Client-safe view of a problem: no answer, no solved part values."""
    render: dict = {}
    if problem.presentation is Presentation.SETS_OF_OBJECTS:
        display = render_presentation(problem, Presentation.SETS_OF_OBJECTS)
        render = {"groups": display.groups, "group_size": display.group_size}
    elif problem.presentation is Presentation.NUMBER_LINE:
        display = render_presentation(problem, Presentation.NUMBER_LINE)
        render = {"jump_size": display.jump_size, "jump_count": display.jump_count}
    elif problem.presentation is Presentation.SENTENCE_PARTS_QUERY and problem.sentence_parts:
        render = {"roles": [role for role, _ in problem.sentence_parts]}
    return {
        "prompt": problem.prompt_text,
        "presentation": problem.presentation.value,
        "topic": problem.topic.code.value,
        "render": render,
    }


def _wallet_view(wallet: rewards.TicketWallet) -> dict:
    return {
        "learner_id": wallet.learner_id,
        "earned": wallet.earned,
        "spent": wallet.spent,
        "balance": wallet.balance,
    }


def _session_view(sid: str, state: SessionState) -> dict:
    tally = state.tally[state.stage]
    return {
        "session_id": sid,
        "learner_id": state.learner_id,
        "topic": state.topic.code.value,
        "topic_title": state.topic.title,
        "stage": state.stage.value,
        "remaining": len(state.queue),
        "asked": tally.asked,
        "correct": tally.correct,
        "finished": state.finished,
        "time_limit_seconds": state.config.time_limit_seconds,
        "problem": _problem_view(state.queue[0]) if state.queue else None,
    }


_LESSON_EXPLAINERS = {
    Lesson.ADDITION: (
        "Adding means putting amounts together. Line the numbers up by "
        "place value and add each column from the right. When a column "
        "adds up past 9, regroup: carry a ten into the next column."
    ),
    Lesson.SUBTRACTION: (
        "Subtracting means taking away. Work each column from the right; "
        "when the top digit is too small, regroup by borrowing a ten from "
        "the next place. Watch out when you borrow across a zero!"
    ),
    Lesson.MULTIPLICATION: (
        "Multiplying is repeated addition: 3 sets of 4 is 4 + 4 + 4. You "
        "can picture it as equal groups of objects or equal jumps along a "
        "number line. Any number of zeros is still zero."
    ),
    Lesson.DIVISION: (
        "Dividing means sharing equally. The dividend is what you share, "
        "the divisor is how many shares, and the quotient is the size of "
        "each share. You can share out groups, deal one at a time, or "
        "subtract the same amount again and again."
    ),
}


def _explainer_view(topic: Topic) -> dict:
    sample = generate_problem(topic, "explainer")
    view: dict = {
        "topic": topic.code.value,
        "title": topic.title,
        "lesson": topic.lesson.display_name,
        "body": _LESSON_EXPLAINERS[topic.lesson],
        "sample_prompt": sample.prompt_text,
        "sample_answer": sample.answer,
    }
    if topic.code is TopicCode.DIV_ILLUSTRATE:
        steps = illustrate_division(sample, DivisionModel.REPEATED_SUBTRACTION)
        inverse = illustrate_division(sample, DivisionModel.INVERSE_MULTIPLICATION)
        view["illustrations"] = {
            "repeated_subtraction": list(steps.sequence),
            "inverse_multiplication": inverse.sentence,
        }
    return view


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the application; bad configuration fails here, at startup."""
    state = ServiceState(config)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        state.persist_sessions()

    app = FastAPI(title="mathquest", lifespan=lifespan)
    app.state.service = state

    @app.exception_handler(MathQuestError)
    async def _handle_domain_errors(_, exc: MathQuestError):
        for error_type, status in _ERROR_STATUS:
            if isinstance(exc, error_type):
                return JSONResponse({"detail": str(exc)}, status_code=status)
        return JSONResponse({"detail": str(exc)}, status_code=500)

    def _session_or_404(sid: str) -> SessionState:
        try:
            return state.sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid!r}") from None

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/topics")
    def topics() -> dict:
        return {
            "topics": [
                {
                    "code": t.code.value,
                    "title": t.title,
                    "lesson": t.lesson.display_name,
                    "ordinal": t.ordinal,
                }
                for t in curriculum()
            ]
        }

    @app.get("/topics/{code}/explainer")
    def topic_explainer(code: str) -> dict:
        return _explainer_view(_topic_from_code(code))

    @app.get("/messages")
    def messages() -> dict:
        return {"messages": dict(state.messages.messages)}

    @app.post("/learners", status_code=201)
    def register(body: RegisterBody):
        def compute() -> tuple[int, dict]:
            profile = state.store.register(body.display_name, body.grade_level)
            return 201, {
                "learner_id": profile.learner_id,
                "display_name": profile.display_name,
                "grade_level": profile.grade_level,
                "registered_at": profile.registered_at,
            }

        status, payload = state.idempotent("register", body.request_id, compute)
        return JSONResponse(payload, status_code=status)

    @app.get("/learners/{learner_id}")
    def learner(learner_id: str) -> dict:
        profile = state.store.profile(learner_id)
        return {
            "learner_id": profile.learner_id,
            "display_name": profile.display_name,
            "grade_level": profile.grade_level,
            "registered_at": profile.registered_at,
        }

    @app.get("/learners/{learner_id}/topics")
    def learner_topics(learner_id: str) -> dict:
        history = state.store.history(learner_id)
        unlocked = unlocked_topics(history)
        return {
            "topics": [
                {
                    "code": t.code.value,
                    "title": t.title,
                    "lesson": t.lesson.display_name,
                    "ordinal": t.ordinal,
                    "unlocked": t in unlocked,
                }
                for t in curriculum()
            ]
        }

    @app.get("/learners/{learner_id}/wallet")
    def wallet(learner_id: str) -> dict:
        return _wallet_view(state.store.wallet(learner_id))

    @app.get("/learners/{learner_id}/report")
    def report(learner_id: str, format: str = "csv", dates: str = "mdy"):
        body = state.store.export_report(learner_id, format=format, date_style=dates)
        return PlainTextResponse(body, media_type="text/csv")

    @app.get("/store/catalog")
    def catalog() -> dict:
        return {
            "items": [
                {
                    "item_id": item.item_id,
                    "name": item.name,
                    "price_tickets": item.price_tickets,
                }
                for item in state.catalog
            ]
        }

    @app.post("/learners/{learner_id}/purchase")
    def purchase(learner_id: str, body: PurchaseBody):
        item = next((i for i in state.catalog if i.item_id == body.item_id), None)
        if item is None:
            raise HTTPException(status_code=404, detail=f"no item {body.item_id!r}")
        with state.lock_for(learner_id):

            def compute() -> tuple[int, dict]:
                wallet = state.store.apply_purchase(
                    learner_id, item, request_id=body.request_id
                )
                return 200, {"item_id": item.item_id, "wallet": _wallet_view(wallet)}

            status, payload = state.idempotent(
                f"purchase|{learner_id}", body.request_id, compute
            )
        return JSONResponse(payload, status_code=status)

    @app.post("/sessions", status_code=201)
    def start(body: StartSessionBody):
        topic = _topic_from_code(body.topic)
        with state.lock_for(body.learner_id):

            def compute() -> tuple[int, dict]:
                state.store.profile(body.learner_id)  # 404 for unknown learners
                history = state.store.history(body.learner_id)
                sid = state.new_session_id()
                if body.seed is not None:
                    seed = body.seed
                elif config.seed is not None:
                    seed = f"{config.seed}:{sid}"
                else:
                    seed = secrets.token_hex(8)
                session = start_session(
                    body.learner_id,
                    topic,
                    config.session,
                    seed,
                    history,
                    templates=state.templates,
                )
                state.sessions[sid] = session
                return 201, _session_view(sid, session)

            status, payload = state.idempotent(
                f"start|{body.learner_id}", body.request_id, compute
            )
        return JSONResponse(payload, status_code=status)

    @app.get("/sessions/{sid}")
    def session_detail(sid: str) -> dict:
        return _session_view(sid, _session_or_404(sid))

    @app.post("/sessions/{sid}/answer")
    def answer(sid: str, body: AnswerBody):
        session = _session_or_404(sid)
        with state.lock_for(session.learner_id):

            def compute() -> tuple[int, dict]:
                current = _session_or_404(sid)
                event, updated = submit_answer(
                    current, body.answer, body.elapsed_seconds
                )
                state.sessions[sid] = updated
                stage_complete = not updated.queue
                message = state.messages.text(event.value)
                if stage_complete:
                    message = f"{message} {state.messages.text('stage_complete')}"
                view = _session_view(sid, updated)
                view.update(
                    {
                        "event": event.value,
                        "message": message,
                        "stage_complete": stage_complete,
                    }
                )
                return 200, view

            status, payload = state.idempotent(
                f"answer|{sid}", body.request_id, compute
            )
        return JSONResponse(payload, status_code=status)

    @app.post("/sessions/{sid}/advance")
    def advance(sid: str, body: AdvanceBody):
        session = _session_or_404(sid)
        with state.lock_for(session.learner_id):

            def compute() -> tuple[int, dict]:
                current = _session_or_404(sid)
                updated = advance_stage(
                    current, current.base_seed, templates=state.templates
                )
                state.sessions[sid] = updated
                return 200, _session_view(sid, updated)

            status, payload = state.idempotent(
                f"advance|{sid}", body.request_id, compute
            )
        return JSONResponse(payload, status_code=status)

    @app.post("/sessions/{sid}/finalize")
    def finalize_session(sid: str, body: FinalizeBody):
        session = _session_or_404(sid)
        with state.lock_for(session.learner_id):

            def compute() -> tuple[int, dict]:
                current = _session_or_404(sid)
                profile = state.store.profile(current.learner_id)
                record_date = (
                    Date.fromisoformat(body.record_date) if body.record_date else None
                )
                record = finalize(
                    current,
                    display_name=profile.display_name,
                    record_date=record_date,
                )
                rid = body.request_id
                state.store.append_record(
                    current.learner_id,
                    record,
                    request_id=f"{rid}|record" if rid else None,
                )
                tickets = rewards.award_tickets(record)
                wallet = state.store.apply_award(
                    current.learner_id,
                    tickets,
                    request_id=f"{rid}|award" if rid else None,
                )
                message_key = "passed" if record.remark.value == "Passed" else "failed"
                return 200, {
                    "session_id": sid,
                    "record": record.to_json_dict(),
                    "tickets_awarded": tickets,
                    "wallet": _wallet_view(wallet),
                    "message": state.messages.text(message_key),
                }

            status, payload = state.idempotent(
                f"finalize|{sid}", body.request_id, compute
            )
        return JSONResponse(payload, status_code=status)

    @app.post("/assessment/report")
    def assessment(body: AssessmentBody) -> dict:
        bands = surveys.bands_preset(body.bands) if body.bands else state.bands
        groups = {
            name: [
                surveys.LikertResponseSet(
                    item_id=item.item_id, responses=tuple(item.responses)
                )
                for item in items
            ]
            for name, items in body.groups.items()
        }
        report = surveys.build_report(groups, bands)
        return surveys.report_to_dict(report)

    if config.frontend_dir is not None:
        # Mounted last so the API routes above keep precedence.
        if not (config.frontend_dir / "index.html").exists():
            raise ConfigurationError(
                f"frontend dir has no index.html: {config.frontend_dir}"
            )
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.frontend_dir, html=True))

    return app

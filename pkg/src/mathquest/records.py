"""Durable learner records: profiles, score history, and ticket wallets.

Storage is a per-learner append-only journal plus a small index file, all
under one data directory. Every write is flushed and fsynced before the
call returns, so an acknowledged write survives a crash; recovery ignores
a torn trailing line. One writer per learner at a time is assumed (the
service enforces it); readers always see committed state.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    ConfigurationError,
    DomainError,
    UnknownLearnerError,
    ValidationError,
)
from .rewards import StoreItem, TicketWallet, credit
from .rewards import purchase as wallet_purchase
from .scores import Remark, ScoreRecord

JOURNAL_MAGIC = "#mathquest-journal:v1"
INDEX_VERSION = 1

REPORT_COLUMNS = (
    "Date",
    "Name",
    "Lesson",
    "Topic",
    "Preparatory",
    "Developmental",
    "Evaluation",
    "Remarks",
)


@dataclass(frozen=True)
class LearnerProfile:
    learner_id: str
    display_name: str
    grade_level: int
    registered_at: str  # ISO-8601 timestamp


@dataclass(frozen=True)
class LearnerState:
    profile: LearnerProfile
    history: tuple[ScoreRecord, ...]
    wallet: TicketWallet


def _format_date(value: datetime.date, date_style: str) -> str:
    if date_style == "mdy":
        return f"{value.month}/{value.day}/{value.year}"
    if date_style == "iso":
        return value.isoformat()
    raise DomainError(f"unknown date style {date_style!r}")


def _parse_date(text: str, date_style: str) -> datetime.date:
    if date_style == "mdy":
        month, day, year = (int(part) for part in text.split("/"))
        return datetime.date(year, month, day)
    if date_style == "iso":
        return datetime.date.fromisoformat(text)
    raise DomainError(f"unknown date style {date_style!r}")


class LearnerStore:
    """File-backed store for profiles, histories, and wallets."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.journal_dir = self.data_dir / "journals"
        self.index_path = self.data_dir / "index.json"
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.journal_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._profiles: dict[str, LearnerProfile] = {}
        self._histories: dict[str, list[ScoreRecord]] = {}
        self._wallets: dict[str, TicketWallet] = {}
        self._seen_requests: dict[str, set[str]] = {}
        self._next_serial = 1
        self._load()

    # -- recovery ---------------------------------------------------------

    def _load(self) -> None:
        if not self.index_path.exists():
            return
        try:
            index = json.loads(self.index_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"index file is corrupt: {exc}") from exc
        if index.get("version") != INDEX_VERSION:
            raise ConfigurationError("index file has an unsupported version")
        self._next_serial = int(index.get("next_serial", 1))
        for learner_id, entry in index.get("learners", {}).items():
            profile = LearnerProfile(
                learner_id=learner_id,
                display_name=entry["display_name"],
                grade_level=int(entry["grade_level"]),
                registered_at=entry["registered_at"],
            )
            self._profiles[learner_id] = profile
            self._histories[learner_id] = []
            self._wallets[learner_id] = TicketWallet(learner_id=learner_id)
            self._seen_requests[learner_id] = set()
            self._replay_journal(learner_id)

    def _replay_journal(self, learner_id: str) -> None:
        path = self._journal_path(learner_id)
        if not path.exists():
            return
        with path.open("r", encoding="utf-8") as handle:
            header = handle.readline().rstrip("\n")
            if header != JOURNAL_MAGIC:
                raise ConfigurationError(f"{path} is not a learner journal")
            for line in handle:
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    break  # torn tail from an interrupted write
                self._apply_entry(learner_id, entry)

    def _apply_entry(self, learner_id: str, entry: dict) -> None:
        request_id = entry.get("request_id")
        if request_id:
            if request_id in self._seen_requests[learner_id]:
                return
            self._seen_requests[learner_id].add(request_id)
        kind = entry["kind"]
        if kind == "record":
            self._histories[learner_id].append(
                ScoreRecord.from_json_dict(entry["record"])
            )
        elif kind == "award":
            self._wallets[learner_id] = credit(
                self._wallets[learner_id], int(entry["amount"])
            )
        elif kind == "purchase":
            wallet = self._wallets[learner_id]
            self._wallets[learner_id] = TicketWallet(
                learner_id=learner_id,
                earned=wallet.earned,
                spent=wallet.spent + int(entry["amount"]),
            )

    # -- write path -------------------------------------------------------

    def _journal_path(self, learner_id: str) -> Path:
        return self.journal_dir / f"{learner_id}.jsonl"

    def _append_entry(self, learner_id: str, entry: dict) -> None:
        with self._journal_path(learner_id).open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(entry, sort_keys=True) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def _write_index(self) -> None:
        index = {
            "version": INDEX_VERSION,
            "next_serial": self._next_serial,
            "learners": {
                learner_id: {
                    "display_name": profile.display_name,
                    "grade_level": profile.grade_level,
                    "registered_at": profile.registered_at,
                }
                for learner_id, profile in self._profiles.items()
            },
        }
        tmp_path = self.index_path.with_suffix(".json.tmp")
        with tmp_path.open("w", encoding="utf-8") as handle:
            json.dump(index, handle, sort_keys=True)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_path, self.index_path)

    def _require(self, learner_id: str) -> LearnerProfile:
        try:
            return self._profiles[learner_id]
        except KeyError:
            raise UnknownLearnerError(f"no learner with id {learner_id!r}") from None

    # -- public API -------------------------------------------------------

    def register(self, display_name: str, grade_level: int = 2) -> LearnerProfile:
        """Create a learner with a fresh unique id and empty history."""
        if not display_name or not display_name.strip():
            raise ValidationError("display name must not be empty")
        with self._lock:
            learner_id = f"l-{self._next_serial:06d}"
            self._next_serial += 1
            profile = LearnerProfile(
                learner_id=learner_id,
                display_name=display_name.strip(),
                grade_level=int(grade_level),
                registered_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
            )
            journal = self._journal_path(learner_id)
            with journal.open("w", encoding="utf-8") as handle:
                handle.write(JOURNAL_MAGIC + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            self._profiles[learner_id] = profile
            self._histories[learner_id] = []
            self._wallets[learner_id] = TicketWallet(learner_id=learner_id)
            self._seen_requests[learner_id] = set()
            self._write_index()
            return profile

    def profile(self, learner_id: str) -> LearnerProfile:
        with self._lock:
            return self._require(learner_id)

    def learners(self) -> tuple[LearnerProfile, ...]:
        with self._lock:
            return tuple(self._profiles.values())

    def append_record(
        self, learner_id: str, record: ScoreRecord, request_id: str | None = None
    ) -> None:
        """Append one score record; history never mutates, only grows."""
        with self._lock:
            self._require(learner_id)
            if request_id and request_id in self._seen_requests[learner_id]:
                return
            self._append_entry(
                learner_id,
                {
                    "kind": "record",
                    "request_id": request_id,
                    "record": record.to_json_dict(),
                },
            )
            if request_id:
                self._seen_requests[learner_id].add(request_id)
            self._histories[learner_id].append(record)

    def apply_award(
        self, learner_id: str, amount: int, request_id: str | None = None
    ) -> TicketWallet:
        with self._lock:
            self._require(learner_id)
            if request_id and request_id in self._seen_requests[learner_id]:
                return self._wallets[learner_id]
            wallet = credit(self._wallets[learner_id], amount)
            self._append_entry(
                learner_id,
                {"kind": "award", "request_id": request_id, "amount": amount},
            )
            if request_id:
                self._seen_requests[learner_id].add(request_id)
            self._wallets[learner_id] = wallet
            return wallet

    def apply_purchase(
        self, learner_id: str, item: StoreItem, request_id: str | None = None
    ) -> TicketWallet:
        """Spend tickets on an item; a rejected purchase writes nothing."""
        with self._lock:
            self._require(learner_id)
            if request_id and request_id in self._seen_requests[learner_id]:
                return self._wallets[learner_id]
            wallet = wallet_purchase(self._wallets[learner_id], item)
            self._append_entry(
                learner_id,
                {
                    "kind": "purchase",
                    "request_id": request_id,
                    "amount": item.price_tickets,
                    "item_id": item.item_id,
                },
            )
            if request_id:
                self._seen_requests[learner_id].add(request_id)
            self._wallets[learner_id] = wallet
            return wallet

    def history(self, learner_id: str) -> tuple[ScoreRecord, ...]:
        with self._lock:
            self._require(learner_id)
            return tuple(self._histories[learner_id])

    def wallet(self, learner_id: str) -> TicketWallet:
        with self._lock:
            self._require(learner_id)
            return self._wallets[learner_id]

    def load_state(self, learner_id: str) -> LearnerState:
        with self._lock:
            profile = self._require(learner_id)
            return LearnerState(
                profile=profile,
                history=tuple(self._histories[learner_id]),
                wallet=self._wallets[learner_id],
            )

    def export_report(
        self, learner_id: str, format: str = "csv", date_style: str = "mdy"
    ) -> str:
        """Render the learner's full history as a progress report."""
        if format != "csv":
            raise DomainError(f"unsupported report format {format!r}")
        history = self.history(learner_id)
        return render_report_csv(history, date_style=date_style)


def render_report_csv(
    history: tuple[ScoreRecord, ...] | list[ScoreRecord], date_style: str = "mdy"
) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for record in history:
        writer.writerow(
            [
                _format_date(record.date, date_style),
                record.learner_name,
                record.lesson,
                record.topic,
                f"{record.preparatory_percent}%",
                f"{record.developmental_percent}%",
                f"{record.evaluation_percent}%",
                record.remark.value,
            ]
        )
    return buffer.getvalue()


def parse_report_csv(text: str, date_style: str = "mdy") -> tuple[ScoreRecord, ...]:
    """Inverse of ``render_report_csv``; round-trips every stored record."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != REPORT_COLUMNS:
        raise DomainError("report is missing the expected header row")
    records = []
    for row in rows[1:]:
        if len(row) != len(REPORT_COLUMNS):
            raise DomainError(f"malformed report row: {row!r}")
        date_text, name, lesson, topic, prep, dev, eval_, remark = row
        records.append(
            ScoreRecord(
                date=_parse_date(date_text, date_style),
                learner_name=name,
                lesson=lesson,
                topic=topic,
                preparatory_percent=int(prep.rstrip("%")),
                developmental_percent=int(dev.rstrip("%")),
                evaluation_percent=int(eval_.rstrip("%")),
                remark=Remark(remark),
            )
        )
    return tuple(records)

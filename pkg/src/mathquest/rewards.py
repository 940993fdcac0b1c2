"""The ticket economy: earn tickets by finishing topics, spend them in the store."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError, InsufficientTicketsError, ValidationError
from .scores import Remark, ScoreRecord

TICKETS_PER_TEN_PERCENT = 1
PASS_BONUS_TICKETS = 2
REQUIRED_ITEM_NAME = "coloring sheets"


@dataclass(frozen=True)
class TicketWallet:
    learner_id: str
    earned: int = 0
    spent: int = 0

    def __post_init__(self):
        if self.earned < 0 or self.spent < 0 or self.spent > self.earned:
            raise ValidationError("wallet ledger would go negative")

    @property
    def balance(self) -> int:
        return self.earned - self.spent


@dataclass(frozen=True)
class StoreItem:
    item_id: str
    name: str
    price_tickets: int

    def __post_init__(self):
        if self.price_tickets < 1:
            raise ValidationError(f"item {self.item_id}: price must be at least 1 ticket")


def award_tickets(record: ScoreRecord) -> int:
    """Tickets earned for a finalized topic run.

    One ticket per full ten percent on the evaluation stage, plus a
    two-ticket bonus for passing.
    """
    tickets = record.evaluation_percent // 10 * TICKETS_PER_TEN_PERCENT
    if record.remark is Remark.PASSED:
        tickets += PASS_BONUS_TICKETS
    return tickets


def credit(wallet: TicketWallet, amount: int) -> TicketWallet:
    if amount < 0:
        raise ValidationError("cannot credit a negative ticket amount")
    return replace(wallet, earned=wallet.earned + amount)


def purchase(wallet: TicketWallet, item: StoreItem) -> TicketWallet:
    """Spend tickets on a store item; rejects without touching the wallet."""
    if wallet.balance < item.price_tickets:
        raise InsufficientTicketsError(
            f"need {item.price_tickets} tickets, balance is {wallet.balance}"
        )
    return replace(wallet, spent=wallet.spent + item.price_tickets)


def load_catalog(path: str | Path | None = None) -> tuple[StoreItem, ...]:
    """Load the store catalog; None loads the packaged default.

    The catalog must be non-empty, item ids must be unique, and the
    classic coloring sheets must be on offer.
    """
    if path is None:
        raw = (
            resources.files("mathquest")
            .joinpath("data/store_catalog.json")
            .read_text(encoding="utf-8")
        )
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"catalog file not found: {path}")
        raw = path.read_text(encoding="utf-8")
    try:
        entries = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"catalog file is not valid JSON: {exc}") from exc
    if not isinstance(entries, list) or not entries:
        raise ConfigurationError("catalog must be a non-empty list of items")
    items = []
    seen = set()
    for entry in entries:
        try:
            item = StoreItem(
                item_id=str(entry["item_id"]),
                name=str(entry["name"]),
                price_tickets=int(entry["price_tickets"]),
            )
        except (KeyError, TypeError, ValueError, ValidationError) as exc:
            raise ConfigurationError(f"malformed catalog entry: {exc}") from exc
        if item.item_id in seen:
            raise ConfigurationError(f"duplicate item_id {item.item_id}")
        seen.add(item.item_id)
        items.append(item)
    if not any(item.name == REQUIRED_ITEM_NAME for item in items):
        raise ConfigurationError(f"catalog must offer {REQUIRED_ITEM_NAME!r}")
    return tuple(items)


_DEFAULT_CATALOG: tuple[StoreItem, ...] | None = None


def default_catalog() -> tuple[StoreItem, ...]:
    global _DEFAULT_CATALOG
    if _DEFAULT_CATALOG is None:
        _DEFAULT_CATALOG = load_catalog(None)
    return _DEFAULT_CATALOG

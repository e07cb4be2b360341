"""Dialogue corpus loading, filtering and truncation.

The on-disk corpus format is JSON-lines, one object per dialogue:

    {"id": "train-0001",
     "scenario": {"category": "bike", "title": "...",
                  "listing_price": 300.0, "target_price": 150.0},
     "events": [{"sender": "Buyer", "kind": "message", "data": "Hi ..."},
                {"sender": "Seller", "kind": "offer", "data": 200.0},
                {"sender": "Buyer", "kind": "accept"}],
     "agreed_price": 200.0,
     "split": "train"}

``agreed_price`` is null/omitted for negotiations that never reached
agreement; ``id`` is optional and assigned positionally when missing.
See docs/formats.md for the full schema.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Optional, Sequence

from .errors import CorpusParseError, DomainError

CATEGORIES = ("bike", "car", "electronics", "furniture", "housing", "phone")
SPLITS = ("train", "validation", "test")
FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)
EVENT_KINDS = ("message", "offer", "accept", "reject", "quit")
SENDERS = ("Buyer", "Seller")

# Dialogues whose normalized agreed price falls outside this closed band
# are treated as annotation errors and dropped.
OUTLIER_BAND = (0.3, 2.0)

# Lowercase substrings marking meta-talk about the collection task itself
# ('negotiat' is a deliberate stem so it catches all inflections).
BAD_KEYWORDS = ("hit", "negotiat", "requester", "turk")

_FRACTION_GRID = {
    0.2: Fraction(1, 5),
    0.4: Fraction(2, 5),
    0.6: Fraction(3, 5),
    0.8: Fraction(4, 5),
    1.0: Fraction(1, 1),
}


def _exact_fraction(f: float) -> Fraction:
    for key, frac in _FRACTION_GRID.items():
        if abs(f - key) < 1e-9:
            return frac
    raise DomainError(f"fraction {f!r} not in grid {FRACTIONS}")


@dataclass(frozen=True)
class Scenario:
    category: str
    title: str
    listing_price: float
    target_price: float

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise DomainError(f"unknown category {self.category!r}")
        if not self.listing_price > 0:
            raise DomainError("listing_price must be positive")
        if not self.target_price > 0:
            raise DomainError("target_price must be positive")


@dataclass(frozen=True)
class Event:
    sender: str
    kind: str
    data: object = None

    def __post_init__(self):
        if self.sender not in SENDERS:
            raise DomainError(f"unknown sender {self.sender!r}")
        if self.kind not in EVENT_KINDS:
            raise DomainError(f"unknown event kind {self.kind!r}")
        if self.kind == "message":
            if not isinstance(self.data, str):
                raise DomainError("message event requires text data")
        elif self.kind == "offer":
            if not isinstance(self.data, (int, float)) or isinstance(self.data, bool):
                raise DomainError("offer event requires a numeric price")
        elif self.data not in (None, ""):
            raise DomainError(f"{self.kind} event carries no data")


@dataclass(frozen=True)
class Dialogue:
    scenario: Scenario
    events: tuple
    split: str
    agreed_price: Optional[float] = None
    id: str = ""

    def __post_init__(self):
        if not self.events:
            raise DomainError("dialogue has no events")
        if self.split not in SPLITS:
            raise DomainError(f"unknown split {self.split!r}")
        if self.agreed_price is not None and not self.agreed_price > 0:
            raise DomainError("agreed_price must be positive when present")

    @property
    def messages(self) -> tuple:
        return tuple(e for e in self.events if e.kind == "message")


@dataclass(frozen=True)
class PartialDialogue:
    scenario: Scenario
    messages: tuple
    fraction: float
    id: str = ""

    def __post_init__(self):
        _exact_fraction(self.fraction)
        for e in self.messages:
            if e.kind != "message":
                raise DomainError("PartialDialogue holds message events only")


def normalize_price(price: float, listing: float) -> float:
    """Express a price as a multiple of the listing price."""
    if not listing > 0:
        raise DomainError("listing price must be positive")
    return price / listing


def _parse_record(index: int, obj: dict) -> Dialogue:
    if not isinstance(obj, dict):
        raise CorpusParseError(index, "record is not a JSON object")
    try:
        sc = obj["scenario"]
        raw_events = obj["events"]
    except KeyError as exc:
        raise CorpusParseError(index, f"missing field {exc.args[0]!r}") from None
    if not isinstance(sc, dict) or "listing_price" not in sc or sc["listing_price"] is None:
        raise CorpusParseError(index, "record missing listing price")
    try:
        scenario = Scenario(
            category=sc.get("category"),
            title=sc.get("title", ""),
            listing_price=float(sc["listing_price"]),
            target_price=float(sc.get("target_price")),
        )
        events = tuple(
            Event(sender=e.get("sender"), kind=e.get("kind"), data=e.get("data"))
            for e in raw_events
        )
        agreed = obj.get("agreed_price")
        return Dialogue(
            scenario=scenario,
            events=events,
            split=obj.get("split", "train"),
            agreed_price=None if agreed is None else float(agreed),
            id=str(obj.get("id") or f"d{index:05d}"),
        )
    except (DomainError, TypeError, ValueError, AttributeError) as exc:
        raise CorpusParseError(index, str(exc)) from exc


def parse_corpus(source: "bytes | str | IO") -> list[Dialogue]:
    """Parse a JSON-lines corpus into dialogues, preserving record order.

    Raises CorpusParseError (with the record index) on the first
    malformed record, unknown category, or missing listing price.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    dialogues = []
    index = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusParseError(index, f"invalid JSON: {exc.msg}") from exc
        dialogues.append(_parse_record(index, obj))
        index += 1
    return dialogues


def load_corpus(path) -> list[Dialogue]:
    with open(path, "rb") as fh:
        return parse_corpus(fh)


def dialogue_to_json(d: Dialogue) -> dict:
    return {
        "id": d.id,
        "scenario": {
            "category": d.scenario.category,
            "title": d.scenario.title,
            "listing_price": d.scenario.listing_price,
            "target_price": d.scenario.target_price,
        },
        "events": [
            {"sender": e.sender, "kind": e.kind, "data": e.data} for e in d.events
        ],
        "agreed_price": d.agreed_price,
        "split": d.split,
    }


def write_corpus(dialogues: Iterable[Dialogue], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for d in dialogues:
            fh.write(json.dumps(dialogue_to_json(d), ensure_ascii=False) + "\n")


def drop_reason(d: Dialogue) -> Optional[str]:
    """Why preprocessing would discard this dialogue, or None to keep it."""
    if d.agreed_price is None:
        return "no_agreement"
    ratio = normalize_price(d.agreed_price, d.scenario.listing_price)
    if not (OUTLIER_BAND[0] <= ratio <= OUTLIER_BAND[1]):
        return "outlier_ratio"
    for e in d.messages:
        text = e.data.lower()
        for kw in BAD_KEYWORDS:
            if kw in text:
                return f"keyword:{kw}"
    return None


def preprocess_with_audit(dialogues: Sequence[Dialogue]):
    """Filter a corpus, returning (survivors, audit rows).

    Audit rows are (dialogue id, drop reason) pairs for every dropped
    dialogue. Order of survivors follows the input.
    """
    kept, audit = [], []
    for d in dialogues:
        reason = drop_reason(d)
        if reason is None:
            kept.append(d)
        else:
            audit.append((d.id, reason))
    return kept, audit


def preprocess(dialogues: Sequence[Dialogue]) -> list[Dialogue]:
    return preprocess_with_audit(dialogues)[0]


def write_audit(audit_rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dialogue_id", "drop_reason"])
        writer.writerows(audit_rows)


def split_counts(dialogues: Sequence[Dialogue]) -> dict:
    counts = {s: 0 for s in SPLITS}
    for d in dialogues:
        counts[d.split] += 1
    return counts


def truncate(dialogue: Dialogue, f: float) -> PartialDialogue:
    """First ceil(f * M) message events of the dialogue, minimum one.

    Only message events count toward M; offers and accepts reveal the
    agreed price and are never part of a model's view.
    """
    frac = _exact_fraction(f)
    msgs = dialogue.messages
    m = len(msgs)
    if m == 0:
        raise DomainError(f"dialogue {dialogue.id!r} has no message events")
    count = max(1, math.ceil(frac * m))
    return PartialDialogue(
        scenario=dialogue.scenario,
        messages=msgs[:count],
        fraction=f,
        id=dialogue.id,
    )


def by_split(dialogues: Sequence[Dialogue]) -> dict:
    out = {s: [] for s in SPLITS}
    for d in dialogues:
        out[d.split].append(d)
    return out

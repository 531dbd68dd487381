"""Event-sourced session log: append-only, numbered, replayable.

File format is newline-delimited JSON: a header object first, then one
event object per line.  Sequence numbers are dense from 1 and timestamps
never go backwards, so any prefix of a valid log is itself valid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

LOG_VERSION = "1"

INPUT_KINDS = frozenset({"command", "expression", "motor_imagery", "emotion_update"})
OUTPUT_KINDS = frozenset({"commit", "layout_change", "prediction_update", "metric_sample"})
EVENT_KINDS = INPUT_KINDS | OUTPUT_KINDS


class LogError(ValueError):
    pass


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    t: int  # milliseconds
    kind: str
    payload: dict

    def __post_init__(self) -> None:
        if self.seq < 1:
            raise LogError("seq starts at 1")
        if self.kind not in EVENT_KINDS:
            raise LogError(f"unknown event kind: {self.kind!r}")

    @property
    def is_input(self) -> bool:
        return self.kind in INPUT_KINDS

    def to_json(self) -> str:
        return json.dumps(
            {"seq": self.seq, "t": self.t, "kind": self.kind, "payload": self.payload},
            separators=(",", ":"),
            sort_keys=True,
        )


@dataclass(frozen=True)
class SessionHeader:
    version: str
    config_hash: str
    seed: int
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": self.version,
                "config_hash": self.config_hash,
                "seed": self.seed,
                "config": self.config,
            },
            separators=(",", ":"),
            sort_keys=True,
        )


class SessionLog:
    """Header plus an append-only event list with contiguity checks."""

    def __init__(self, header: SessionHeader, events: Iterable[SessionEvent] = ()) -> None:
        self.header = header
        self.events: list[SessionEvent] = []
        for ev in events:
            self.append(ev)

    def append(self, event: SessionEvent) -> SessionEvent:
        expected = len(self.events) + 1
        if event.seq != expected:
            raise LogError(f"bad seq {event.seq}: expected {expected}")
        if self.events and event.t < self.events[-1].t:
            raise LogError(f"bad seq {event.seq}: timestamp went backwards")
        self.events.append(event)
        return event

    @property
    def next_seq(self) -> int:
        return len(self.events) + 1

    def final_text(self) -> str:
        for ev in reversed(self.events):
            if ev.kind == "commit":
                return ev.payload["text"]
        return ""

    def inputs(self) -> list[SessionEvent]:
        return [ev for ev in self.events if ev.is_input]

    def save(self, path: str | Path) -> None:
        lines = [self.header.to_json()]
        lines.extend(ev.to_json() for ev in self.events)
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SessionLog":
        raw = Path(path).read_text(encoding="utf-8").splitlines()
        lines = [ln for ln in raw if ln.strip()]
        if not lines:
            raise LogError("empty log file")
        try:
            head = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise LogError(f"corrupt header line: {exc}") from None
        if not isinstance(head, dict) or "version" not in head:
            raise LogError("header line missing version")
        if head["version"] != LOG_VERSION:
            raise LogError(f"unsupported log version {head['version']!r}")
        header = SessionHeader(
            version=head["version"],
            config_hash=head.get("config_hash", ""),
            seed=int(head.get("seed", 0)),
            config=head.get("config", {}),
        )
        log = cls(header)
        for i, line in enumerate(lines[1:], start=1):
            try:
                rec = json.loads(line)
                event = SessionEvent(
                    seq=int(rec["seq"]),
                    t=int(rec["t"]),
                    kind=rec["kind"],
                    payload=rec["payload"],
                )
            except (json.JSONDecodeError, KeyError, TypeError, LogError) as exc:
                raise LogError(f"bad seq {i}: unreadable event ({exc})") from None
            log.append(event)  # raises LogError naming the first bad seq
        return log

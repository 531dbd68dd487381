"""Typing-performance measures computed from session logs.

All functions are pure; a replayed log yields the same report bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .events import SessionLog
from .signals import Expression, ExpressionEvent

DEFAULT_COMMAND_COUNT = 5  # four directional commands + select
DEFAULT_KEY_COUNT = 28  # 26 letters + space + backspace
STRESS_THRESHOLD = 0.20
WINDOW_SECONDS = 60.0


class MetricsError(ValueError):
    pass


def itr_commands(n_commands: int, commands_used: int, minutes: float) -> float:
    """Information transfer rate in bits/min over the command alphabet."""
    if n_commands < 1 or commands_used < 0:
        raise MetricsError("counts must be nonnegative (alphabet size >= 1)")
    if minutes <= 0:
        raise MetricsError("elapsed time must be positive")
    return math.log2(n_commands) * commands_used / minutes


def itr_letters(n_keys: int, letters_typed: int, minutes: float) -> float:
    """Information transfer rate in bits/min over the key alphabet."""
    if n_keys < 1 or letters_typed < 0:
        raise MetricsError("counts must be nonnegative (alphabet size >= 1)")
    if minutes <= 0:
        raise MetricsError("elapsed time must be positive")
    return math.log2(n_keys) * letters_typed / minutes


def accuracy(successes: int, failures: int) -> float:
    """One minus the failure-to-success ratio, floored at zero.

    This is the ratio construction behind the headline number; see
    conventional_accuracy for the success-over-total variant.
    """
    if successes <= 0:
        raise MetricsError("accuracy undefined without at least one success")
    if failures < 0:
        raise MetricsError("failure count must be nonnegative")
    return max(0.0, 1.0 - failures / successes)


def conventional_accuracy(successes: int, failures: int) -> float:
    if successes + failures <= 0:
        raise MetricsError("accuracy undefined without outcomes")
    return successes / (successes + failures)


def latency_stats(delays: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and population standard deviation, in seconds."""
    if not delays:
        raise MetricsError("latency undefined for an empty delay list")
    if any(d < 0 for d in delays):
        raise MetricsError("delays must be nonnegative")
    n = len(delays)
    mean = sum(delays) / n
    var = sum((d - mean) ** 2 for d in delays) / n
    return mean, math.sqrt(var)


def ease(expressions: Iterable[ExpressionEvent | Expression | str]) -> tuple[float, bool]:
    """Fraction of expression samples that are frowns, and a stress flag.

    A session is flagged stressful when frowns reach 20% of all
    expression samples.
    """
    total = 0
    frowns = 0
    for item in expressions:
        name = (
            item.expression.value
            if isinstance(item, ExpressionEvent)
            else item.value if isinstance(item, Expression) else str(item)
        )
        total += 1
        if name == Expression.FROWN.value:
            frowns += 1
    if total == 0:
        return 0.0, False
    fraction = frowns / total
    return fraction, fraction >= STRESS_THRESHOLD


def _window_text_and_chars(log: SessionLog, window_ms: float) -> tuple[str, int]:
    """Text buffer at the window's end plus characters added inside it."""
    if not log.events:
        return "", 0
    start = log.events[0].t
    text = ""
    added = 0
    for ev in log.events:
        if ev.t - start > window_ms:
            break
        if ev.kind != "commit":
            continue
        new_text = ev.payload["text"]
        growth = len(new_text) - len(text)
        if growth > 0:
            added += growth
        text = new_text
    return text, added


def typing_rates(
    log: SessionLog, window_seconds: float = WINDOW_SECONDS
) -> tuple[float, float]:
    """(words per minute, characters per minute) over the leading window.

    Characters count every addition to the buffer.  Words are completed
    space-delimited tokens; a trailing partial token contributes its
    length divided by five.
    """
    if window_seconds <= 0:
        raise MetricsError("window must be positive")
    text, chars = _window_text_and_chars(log, window_seconds * 1000.0)
    scale = 60.0 / window_seconds
    tokens = text.split(" ")
    if text.endswith(" ") or not text:
        complete = len([tok for tok in tokens if tok])
        partial = 0
    else:
        complete = len([tok for tok in tokens[:-1] if tok])
        partial = len(tokens[-1])
    words = complete + partial / 5.0
    return words * scale, chars * scale


@dataclass(frozen=True)
class MetricsReport:
    """Session-level summary; rate fields are None when the log carries no
    data to compute them from (e.g. a live session without ground truth)."""

    wpm: float
    cpm: float
    itr_c: float | None
    itr_l: float | None
    accuracy: float | None
    accuracy_conventional: float | None
    latency_mean: float | None
    latency_std: float | None
    ease_frown_fraction: float
    stressful: bool

    def to_kv(self) -> str:
        pairs = [
            ("wpm", self.wpm),
            ("cpm", self.cpm),
            ("itr_commands_bits_per_min", self.itr_c),
            ("itr_letters_bits_per_min", self.itr_l),
            ("accuracy", self.accuracy),
            ("accuracy_conventional", self.accuracy_conventional),
            ("latency_mean_s", self.latency_mean),
            ("latency_std_s", self.latency_std),
            ("ease_frown_fraction", self.ease_frown_fraction),
            ("stressful", self.stressful),
        ]
        def fmt(v) -> str:
            if v is None:
                return "n/a"
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return "\n".join(f"{k}={fmt(v)}" for k, v in pairs)

    def to_text(self) -> str:
        def fmt(v: float | None, suffix: str = "") -> str:
            return "n/a" if v is None else f"{v:.4f}{suffix}"

        lines = [
            "Typing performance",
            "------------------",
            f"words/min          {self.wpm:.4f}",
            f"chars/min          {self.cpm:.4f}",
            f"ITR (commands)     {fmt(self.itr_c, ' bits/min')}",
            f"ITR (letters)      {fmt(self.itr_l, ' bits/min')}",
            f"accuracy           {fmt(self.accuracy)}",
            f"accuracy (conv.)   {fmt(self.accuracy_conventional)}",
            f"latency mean       {fmt(self.latency_mean, ' s')}",
            f"latency std        {fmt(self.latency_std, ' s')}",
            f"frown fraction     {self.ease_frown_fraction:.4f}",
            f"stressful          {'yes' if self.stressful else 'no'}",
        ]
        return "\n".join(lines)


def report_from_log(
    log: SessionLog,
    n_commands: int = DEFAULT_COMMAND_COUNT,
    n_keys: int = DEFAULT_KEY_COUNT,
    window_seconds: float = WINDOW_SECONDS,
) -> MetricsReport:
    """Fold a session log into the full report.

    Command actions are directional command events plus one select per
    commit; letters are every character added to the buffer.  Outcome and
    delay payloads are optional — without them the corresponding fields
    are None.
    """
    wpm, cpm = typing_rates(log, window_seconds)

    commands_used = 0
    letters_typed = 0
    successes = 0
    failures = 0
    delays: list[float] = []
    expressions: list[str] = []
    text = ""
    for ev in log.events:
        payload = ev.payload
        if ev.kind == "command":
            commands_used += 1
        elif ev.kind == "commit":
            commands_used += 1
            growth = len(payload["text"]) - len(text)
            if growth > 0:
                letters_typed += growth
            text = payload["text"]
        elif ev.kind == "expression":
            expressions.append(payload["name"])
        if ev.kind in ("command", "expression"):
            if "delay_ms" in payload:
                delays.append(payload["delay_ms"] / 1000.0)
            outcome = payload.get("outcome")
            if outcome is not None:
                if outcome["successful"]:
                    successes += 1
                else:
                    failures += 1

    minutes = 0.0
    if log.events:
        minutes = (log.events[-1].t - log.events[0].t) / 60000.0
    itr_c = itr_commands(n_commands, commands_used, minutes) if minutes > 0 else None
    itr_l = itr_letters(n_keys, letters_typed, minutes) if minutes > 0 else None
    acc = accuracy(successes, failures) if successes > 0 else None
    acc_conv = (
        conventional_accuracy(successes, failures) if successes + failures > 0 else None
    )
    lat_mean, lat_std = latency_stats(delays) if delays else (None, None)
    frown_fraction, stressful = ease(expressions)
    return MetricsReport(
        wpm=wpm,
        cpm=cpm,
        itr_c=itr_c,
        itr_l=itr_l,
        accuracy=acc,
        accuracy_conventional=acc_conv,
        latency_mean=lat_mean,
        latency_std=lat_std,
        ease_frown_fraction=frown_fraction,
        stressful=stressful,
    )

"""Simulated multi-channel signal source and command decoding.

Stands in for a 14-channel headset: synthetic windows carry a per-command
waveform plus seeded noise, and the decoder scores a window against each
trained template by channel-wise correlation.  Facial-expression events are
plain timestamped records; a double blink confirms a selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CHANNELS = 14
DEFAULT_WINDOW_LEN = 64


class Command(Enum):
    LEFT = "Left"
    RIGHT = "Right"
    PULL = "Pull"
    PUSH = "Push"


# Tie-break preference when two templates score identically.
COMMAND_ORDER = (Command.LEFT, Command.RIGHT, Command.PULL, Command.PUSH)


class Expression(Enum):
    BLINK = "Blink"
    WINK = "Wink"
    SURPRISE = "Surprise"
    FROWN = "Frown"
    SMILE = "Smile"
    CLENCH = "Clench"
    LAUGH = "Laugh"
    SMIRK = "Smirk"


class MotorImagery(Enum):
    LOOK_LEFT = "LookLeft"
    LOOK_RIGHT = "LookRight"


class SignalError(ValueError):
    pass


@dataclass(frozen=True)
class SignalWindow:
    """A [channels x window_len] block of amplitudes at timestamp ``t`` ms."""

    samples: np.ndarray
    t: int = 0

    def __post_init__(self) -> None:
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[0] < 1 or s.shape[1] < 1:
            raise SignalError("samples must be a channels x window_len matrix")
        if not np.all(np.isfinite(s)):
            raise SignalError("amplitudes must be finite")
        object.__setattr__(self, "samples", s)

    @property
    def channels(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class CommandTemplate:
    """Trained reference pattern for one navigation command.

    Every channel needs nonzero variance so correlation against it is
    well defined.
    """

    command: Command
    pattern: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.pattern, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise SignalError("pattern must be a channels x window_len matrix")
        if np.any(np.ptp(p, axis=1) == 0.0):
            raise SignalError("every template channel must vary")
        object.__setattr__(self, "pattern", p)

    @property
    def channels(self) -> int:
        return self.pattern.shape[0]


@dataclass(frozen=True)
class DetectorConfig:
    alpha: float = 0.80
    blink_pair_window: float = 1000.0  # ms

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise SignalError("alpha must be in (0, 1]")
        if self.blink_pair_window <= 0:
            raise SignalError("blink pair window must be positive")


@dataclass(frozen=True)
class ExpressionEvent:
    expression: Expression
    t: int


@dataclass(frozen=True)
class MotorImageryEvent:
    kind: MotorImagery
    t: int


@dataclass(frozen=True)
class DetectedCommand:
    command: Command
    score: float


def _channel_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation clipped to [0, 1]; 0 when either side is flat."""
    da = a - a.mean()
    db = b - b.mean()
    na = math.sqrt(float(da @ da))
    nb = math.sqrt(float(db @ db))
    if na == 0.0 or nb == 0.0:
        return 0.0
    r = float(da @ db) / (na * nb)
    return min(max(r, 0.0), 1.0)


def match_score(window: SignalWindow, template: CommandTemplate) -> float:
    """Mean over channels of the clipped per-channel correlation."""
    if window.channels != template.channels:
        raise SignalError(
            f"window has {window.channels} channels, template {template.channels}"
        )
    if window.samples.shape[1] != template.pattern.shape[1]:
        raise SignalError("window and template lengths differ")
    scores = [
        _channel_similarity(window.samples[c], template.pattern[c])
        for c in range(window.channels)
    ]
    return float(sum(scores) / len(scores))


def detect_command(
    window: SignalWindow,
    templates: Sequence[CommandTemplate],
    cfg: DetectorConfig = DetectorConfig(),
) -> DetectedCommand | None:
    """Best-matching command, or None when no score clears the threshold.

    Scores are scale-invariant, so amplifying a window never changes which
    template wins.  Ties resolve in fixed Left < Right < Pull < Push order.
    """
    if not templates:
        return None
    order = {cmd: i for i, cmd in enumerate(COMMAND_ORDER)}
    best: DetectedCommand | None = None
    best_rank = len(COMMAND_ORDER)
    for tpl in templates:
        score = match_score(window, tpl)
        rank = order.get(tpl.command, len(COMMAND_ORDER))
        if best is None or score > best.score or (score == best.score and rank < best_rank):
            best = DetectedCommand(command=tpl.command, score=score)
            best_rank = rank
    if best is None or best.score <= cfg.alpha:
        return None
    return best


def detect_selection(
    events: Sequence[ExpressionEvent], cfg: DetectorConfig = DetectorConfig()
) -> int:
    """1 if the stream contains an uninterrupted double blink, else 0."""
    prev_blink_t: int | None = None
    for ev in events:
        if ev.expression is Expression.BLINK:
            if prev_blink_t is not None and ev.t - prev_blink_t <= cfg.blink_pair_window:
                return 1
            prev_blink_t = ev.t
        else:
            prev_blink_t = None
    return 0


class BlinkSelector:
    """Incremental double-blink matcher; each blink joins at most one pair."""

    def __init__(self, cfg: DetectorConfig = DetectorConfig()) -> None:
        self.cfg = cfg
        self._pending_t: int | None = None

    def feed(self, event: ExpressionEvent) -> bool:
        if event.expression is not Expression.BLINK:
            self._pending_t = None
            return False
        if (
            self._pending_t is not None
            and event.t - self._pending_t <= self.cfg.blink_pair_window
        ):
            self._pending_t = None  # pair consumed
            return True
        self._pending_t = event.t
        return False


def standard_templates(
    channels: int = DEFAULT_CHANNELS,
    window_len: int = DEFAULT_WINDOW_LEN,
) -> list[CommandTemplate]:
    """Deterministic per-command waveforms, one distinct tone per command.

    Each command gets its own base frequency with a per-channel phase
    offset, which keeps the four patterns mutually near-orthogonal.
    """
    base = {Command.LEFT: 2.0, Command.RIGHT: 3.0, Command.PULL: 5.0, Command.PUSH: 7.0}
    ts = np.arange(window_len) / window_len
    templates = []
    for cmd in COMMAND_ORDER:
        rows = [
            np.sin(2 * math.pi * base[cmd] * ts + 0.37 * ch)
            + 0.25 * np.cos(2 * math.pi * (base[cmd] * 2) * ts + 0.11 * ch)
            for ch in range(channels)
        ]
        templates.append(CommandTemplate(command=cmd, pattern=np.stack(rows)))
    return templates


def synthesize_window(
    command: Command | str,
    snr: float,
    seed: int,
    templates: Sequence[CommandTemplate] | None = None,
    t: int = 0,
) -> SignalWindow:
    """Template plus seeded Gaussian noise scaled to the requested SNR.

    ``snr`` is the ratio of template RMS to noise standard deviation;
    infinity reproduces the template exactly and 0 yields pure noise with
    no embedded command at all.
    """
    if isinstance(command, str):
        try:
            command = Command(command)
        except ValueError:
            raise SignalError(f"unknown command id: {command!r}") from None
    if snr < 0:
        raise SignalError("snr must be nonnegative")
    if templates is None:
        templates = standard_templates()
    by_cmd = {tpl.command: tpl for tpl in templates}
    if command not in by_cmd:
        raise SignalError(f"no template for command {command.value!r}")
    pattern = by_cmd[command].pattern
    rms = float(np.sqrt(np.mean(pattern**2)))
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(pattern.shape)
    if snr == 0.0:
        return SignalWindow(samples=rms * noise, t=t)
    if math.isinf(snr):
        return SignalWindow(samples=pattern.copy(), t=t)
    return SignalWindow(samples=pattern + (rms / snr) * noise, t=t)

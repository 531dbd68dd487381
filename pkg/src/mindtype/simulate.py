"""Scripted operator: plans the shortest command path to each character,
executes it with configurable latency and error injection, and drives the
engine exactly like a live input source would.

Also hosts the layout benchmark pitting the two-ring dynamic keyboard
against a classic single-row scanning keyboard.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .bigram import ALPHABET, BigramModel
from .config import AppConfig
from .engine import Engine
from .events import SessionLog
from .keyboard import (
    BACKSPACE,
    MORE,
    PAGE_COUNT,
    SPACE,
    Focus,
    KeyboardState,
    NavCommand,
    Ring,
    Section,
    commit_selection,
    initial_state,
    move_focus,
)
from .metrics import MetricsReport, report_from_log

ACTIONS = ("Left", "Right", "Pull", "Push", "Select")
NAV_ACTIONS = ("Left", "Right", "Pull", "Push")

# Scanning-keyboard target used by the benchmark: one fixed row, cursor
# sweeps key by key and wraps; a selection resets it to the row start.
STATIC_KEYS = "qwertyuiopasdfghjklzxcvbnm" + SPACE + BACKSPACE

DEFAULT_BENCH_WORDS = (
    "number", "could", "who", "down", "then",
    "which", "these", "water", "long", "about",
)

MIN_ACTION_DELAY_MS = 50.0
BLINK_GAP_MS = 150


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class SimulatedUser:
    """Input-source stand-in: types ``target_text`` greedily.

    Each planned action is corrupted into a uniformly random different
    action with probability ``error_rate``; per-action latency is a
    clamped normal draw.
    """

    target_text: str
    latency_mean: float = 1.0  # seconds
    latency_std: float = 0.2
    error_rate: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.target_text:
            raise SimulationError("target text must be non-empty")
        bad = set(self.target_text) - set(ALPHABET + SPACE)
        if bad:
            raise SimulationError(f"target may use a-z and space only, got {sorted(bad)}")
        if not 0.0 <= self.error_rate < 1.0:
            raise SimulationError("error_rate must be in [0, 1)")
        if self.latency_mean <= 0 or self.latency_std < 0:
            raise SimulationError("latency parameters must be positive")


def _focus_key(focus: Focus) -> tuple:
    if focus.kind == "center":
        return ("center",)
    return ("ring", focus.ring.value, focus.slot)


def _focus_from_key(key: tuple) -> Focus:
    if key[0] == "center":
        return Focus.center()
    return Focus.on_ring(Ring(key[1]), key[2])


def plan_actions(state: KeyboardState, goal_label: str) -> list[str]:
    """Shortest action sequence that commits ``goal_label`` from ``state``.

    Searches the focus-by-page graph breadth-first; paging through "more"
    costs a selection like any other action.  The final element is always
    the committing "Select".
    """
    if state.section is not Section.KEYBOARD:
        raise SimulationError("planning starts from the keyboard section")
    base_layout = state.layout
    start = (_focus_key(state.focus), base_layout.page_index)
    parents: dict[tuple, tuple[tuple, str] | None] = {start: None}
    queue: deque[tuple] = deque([start])
    while queue:
        node = queue.popleft()
        focus_key, page = node
        layout = replace(base_layout, page_index=page)
        focus = _focus_from_key(focus_key)
        if layout.key_at(focus) == goal_label:
            path: list[str] = ["Select"]
            cur = node
            while parents[cur] is not None:
                cur, action = parents[cur]
                path.insert(0, action)
            return path
        probe = KeyboardState(layout=layout, focus=focus, text=state.text)
        for action in NAV_ACTIONS:
            moved = move_focus(probe, NavCommand(action))
            nxt = (_focus_key(moved.focus), page)
            if nxt not in parents:
                parents[nxt] = (node, action)
                queue.append(nxt)
        if layout.key_at(focus) == MORE:
            nxt = (focus_key, (page + 1) % PAGE_COUNT)
            if nxt not in parents:
                parents[nxt] = (node, "Select")
                queue.append(nxt)
    raise SimulationError(f"label {goal_label!r} unreachable")  # pragma: no cover


def next_goal_label(text: str, target: str) -> str:
    """The key that makes progress: next character, or backspace on a typo."""
    if target.startswith(text):
        return target[len(text)]
    return BACKSPACE


def _corrupt(intended: str, rng: np.random.Generator, error_rate: float) -> str:
    if error_rate > 0.0 and rng.random() < error_rate:
        others = [a for a in ACTIONS if a != intended]
        return others[rng.integers(len(others))]
    return intended


def _draw_delay_ms(user: SimulatedUser, rng: np.random.Generator) -> float:
    raw = rng.normal(user.latency_mean, user.latency_std) * 1000.0
    return float(max(raw, MIN_ACTION_DELAY_MS))


def run_session(
    config: AppConfig,
    user: SimulatedUser,
    engine: Engine,
    max_actions: int | None = None,
) -> tuple[SessionLog, MetricsReport]:
    """Drive ``engine`` until the target text is typed (or the budget ends).

    Every executed action logs its intended/actual outcome and its latency
    draw, so accuracy and delay statistics fall out of the log.  Fully
    deterministic for a fixed user seed.
    """
    rng = np.random.default_rng(user.seed)
    budget = max_actions if max_actions is not None else 5000 + 400 * len(user.target_text)
    t = 0
    actions = 0
    while engine.state.text != user.target_text:
        if actions >= budget:
            raise SimulationError(f"action budget {budget} exhausted")
        goal = next_goal_label(engine.state.text, user.target_text)
        intended = plan_actions(engine.state, goal)[0]
        actual = _corrupt(intended, rng, user.error_rate)
        delay_ms = _draw_delay_ms(user, rng)
        t += int(round(delay_ms))
        outcome = {
            "intended": intended,
            "actual": actual,
            "successful": actual == intended,
        }
        if actual == "Select":
            engine.apply(
                "expression",
                {"name": "Blink", "outcome": outcome, "delay_ms": delay_ms},
                t,
            )
            t += BLINK_GAP_MS
            engine.apply("expression", {"name": "Blink"}, t)
        else:
            engine.apply(
                "command",
                {"name": actual, "outcome": outcome, "delay_ms": delay_ms},
                t,
            )
        actions += 1
    return engine.log, report_from_log(engine.log)


# -- layout benchmark ---------------------------------------------------


@dataclass(frozen=True)
class LayoutBenchRow:
    word: str
    dynamic_actions: int
    dynamic_time_s: float
    static_steps: int
    static_time_s: float


@dataclass(frozen=True)
class LayoutBenchResult:
    rows: tuple[LayoutBenchRow, ...]
    dynamic_total_s: float
    static_total_s: float

    def to_table(self) -> str:
        header = "word\tdynamic_actions\tdynamic_time_s\tstatic_steps\tstatic_time_s"
        lines = [header]
        for r in self.rows:
            lines.append(
                f"{r.word}\t{r.dynamic_actions}\t{r.dynamic_time_s:.3f}"
                f"\t{r.static_steps}\t{r.static_time_s:.3f}"
            )
        lines.append(
            f"TOTAL\t-\t{self.dynamic_total_s:.3f}\t-\t{self.static_total_s:.3f}"
        )
        return "\n".join(lines)


def _type_word_dynamic(
    word: str, model: BigramModel, user: SimulatedUser, rng: np.random.Generator
) -> tuple[int, float]:
    state = initial_state(model)
    actions = 0
    time_s = 0.0
    for ch in word:
        for action in plan_actions(state, ch):
            time_s += _draw_delay_ms(user, rng) / 1000.0
            actions += 1
            if action == "Select":
                state = commit_selection(state, 1, model)
            else:
                state = move_focus(state, NavCommand(action))
    return actions, time_s


def _type_word_static(
    word: str, user: SimulatedUser, rng: np.random.Generator
) -> tuple[int, float]:
    cursor = 0
    steps = 0
    time_s = 0.0
    for ch in word:
        idx = STATIC_KEYS.index(ch)
        scan = (idx - cursor) % len(STATIC_KEYS)
        for _ in range(scan + 1):  # sweep to the key, then one select dwell
            time_s += _draw_delay_ms(user, rng) / 1000.0
            steps += 1
        cursor = 0
    return steps, time_s


def bench_layouts(
    words: Sequence[str] = DEFAULT_BENCH_WORDS,
    user: SimulatedUser | None = None,
    model: BigramModel | None = None,
) -> LayoutBenchResult:
    """Simulated per-word typing cost on both keyboards, same user model.

    Both layouts draw latencies from identically seeded generators, so the
    comparison is paired.  The user's error rate is ignored here: the
    benchmark measures layout geometry, not recovery behaviour.
    """
    if not words:
        raise SimulationError("benchmark needs at least one word")
    if model is None:
        from .resources import load_bigram

        model = load_bigram(AppConfig())
    if user is None:
        user = SimulatedUser(target_text=" ".join(words))
    rows = []
    rng_dyn = np.random.default_rng(user.seed)
    rng_sta = np.random.default_rng(user.seed)
    for word in words:
        bad = set(word) - set(ALPHABET)
        if bad:
            raise SimulationError(f"benchmark words must be a-z, got {sorted(bad)}")
        dyn_actions, dyn_time = _type_word_dynamic(word, model, user, rng_dyn)
        sta_steps, sta_time = _type_word_static(word, user, rng_sta)
        rows.append(
            LayoutBenchRow(
                word=word,
                dynamic_actions=dyn_actions,
                dynamic_time_s=dyn_time,
                static_steps=sta_steps,
                static_time_s=sta_time,
            )
        )
    return LayoutBenchResult(
        rows=tuple(rows),
        dynamic_total_s=sum(r.dynamic_time_s for r in rows),
        static_total_s=sum(r.static_time_s for r in rows),
    )

"""Affect estimation from six performance metrics, plus the word lexicon.

Six 0-1 metric streams (engagement, excitement, stress, relaxation,
interest, focus) collapse to an arousal/valence pair, and the sign of each
axis picks one of four states: happiness, calm, anger, sadness.  Each state
owns a word list used to bias next-word suggestions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

METRIC_NAMES = ("engagement", "excitement", "stress", "relaxation", "interest", "focus")

EMOTION_CLASSES = ("happiness", "calm", "anger", "sadness")


class EmotionError(ValueError):
    pass


@dataclass(frozen=True)
class PerformanceMetrics:
    """One reading of the six normalized metric streams."""

    engagement: float
    excitement: float
    stress: float
    relaxation: float
    interest: float
    focus: float

    def __post_init__(self) -> None:
        for name in METRIC_NAMES:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise EmotionError(f"{name} must be within [0, 1], got {v}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> "PerformanceMetrics":
        missing = [n for n in METRIC_NAMES if n not in values]
        if missing:
            raise EmotionError(f"missing metrics: {', '.join(missing)}")
        return cls(**{n: float(values[n]) for n in METRIC_NAMES})


@dataclass(frozen=True)
class EmotionMapping:
    """Weights and thresholds for the metric -> quadrant reduction.

    Arousal is a weighted mean of the exciting/stressful streams; valence
    balances the pleasant streams against stress.  Defaults give each
    contributor equal weight.
    """

    arousal_weights: Mapping[str, float] = field(
        default_factory=lambda: {"excitement": 1.0, "engagement": 1.0, "stress": 1.0}
    )
    valence_positive: Mapping[str, float] = field(
        default_factory=lambda: {"relaxation": 1.0, "interest": 1.0, "excitement": 1.0}
    )
    valence_negative: Mapping[str, float] = field(default_factory=lambda: {"stress": 1.0})
    arousal_threshold: float = 0.5
    valence_threshold: float = 0.0

    def __post_init__(self) -> None:
        for weights in (self.arousal_weights, self.valence_positive, self.valence_negative):
            if not weights:
                raise EmotionError("weight groups must be non-empty")
            for name, w in weights.items():
                if name not in METRIC_NAMES:
                    raise EmotionError(f"unknown metric in weights: {name!r}")
                if w < 0:
                    raise EmotionError("weights must be nonnegative")


@dataclass(frozen=True)
class EmotionState:
    """A classified reading: raw axis scores, their signs, and the label."""

    label: str
    arousal: float
    valence: float
    high_arousal: bool
    positive_valence: bool
    window: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.label not in EMOTION_CLASSES:
            raise EmotionError(f"unknown emotion label: {self.label!r}")
        if self.window[1] < self.window[0]:
            raise EmotionError("window must not end before it starts")


def _weighted_mean(metrics: PerformanceMetrics, weights: Mapping[str, float]) -> float:
    total = sum(weights.values())
    if total == 0:
        return 0.0
    return sum(getattr(metrics, n) * w for n, w in weights.items()) / total


def classify_emotion(
    metrics: PerformanceMetrics,
    window: tuple[float, float] = (0.0, 0.0),
    mapping: EmotionMapping = EmotionMapping(),
) -> EmotionState:
    """Reduce a metric reading to one of the four labelled states.

    High arousal means the weighted mean is at or above the arousal
    threshold; positive valence means the pleasant-minus-stress balance is
    at or above the valence threshold.  The (valence, arousal) sign pair
    maps bijectively onto the four labels.
    """
    arousal = _weighted_mean(metrics, mapping.arousal_weights)
    valence = _weighted_mean(metrics, mapping.valence_positive) - _weighted_mean(
        metrics, mapping.valence_negative
    )
    high = arousal >= mapping.arousal_threshold
    positive = valence >= mapping.valence_threshold
    if positive:
        label = "happiness" if high else "calm"
    else:
        label = "anger" if high else "sadness"
    return EmotionState(
        label=label,
        arousal=arousal,
        valence=valence,
        high_arousal=high,
        positive_valence=positive,
        window=window,
    )


class EmotionLexicon:
    """Word lists keyed by emotion class, loaded from ``class word`` lines."""

    def __init__(self, words_by_class: Mapping[str, Iterable[str]]) -> None:
        table: dict[str, list[str]] = {}
        for cls_name, words in words_by_class.items():
            if cls_name not in EMOTION_CLASSES:
                raise EmotionError(f"unknown emotion class: {cls_name!r}")
            seen: dict[str, None] = {}
            for w in words:
                if not w or not w.islower() or not w.isalpha():
                    raise EmotionError(f"lexicon words must be lowercase a-z, got {w!r}")
                seen.setdefault(w, None)
            table[cls_name] = list(seen)
        missing = [c for c in EMOTION_CLASSES if c not in table]
        if missing:
            raise EmotionError(f"lexicon missing classes: {', '.join(missing)}")
        self._table = table

    @classmethod
    def load(cls, path: str | Path) -> "EmotionLexicon":
        grouped: dict[str, list[str]] = {}
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EmotionError(f"expected 'class word', got {raw!r}")
            grouped.setdefault(parts[0], []).append(parts[1])
        return cls(grouped)

    def lexicon_for(self, label: str) -> list[str]:
        if label not in self._table:
            raise EmotionError(f"unknown emotion class: {label!r}")
        return list(self._table[label])

    def classes(self) -> tuple[str, ...]:
        return EMOTION_CLASSES

    def __contains__(self, label: str) -> bool:
        return label in self._table

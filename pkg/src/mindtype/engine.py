"""Session engine: one serialized state machine fed by input events.

Every input event (command, expression, motor imagery, emotion update) is
appended to the log, applied to the keyboard/predictor state, and followed
by the output events it caused — commits, layout changes, prediction
refreshes, metric samples — all stamped with the input's timestamp.  The
final text and every metric are pure folds over the log.
"""

from __future__ import annotations

from typing import Any

from .bigram import BigramModel
from .config import AppConfig, config_hash
from .emotion import EmotionLexicon, EmotionState, PerformanceMetrics, classify_emotion
from .events import LOG_VERSION, SessionEvent, SessionHeader, SessionLog
from .keyboard import (
    BACKSPACE,
    MORE,
    SPACE,
    KeyboardState,
    NavCommand,
    Section,
    commit_selection,
    commit_word,
    initial_state,
    move_focus,
    move_section_focus,
    shift_section,
)
from .metrics import typing_rates
from .predict import (
    AutocompleteIndex,
    HelpingVerbModel,
    OnlineLearner,
    autocomplete,
    emotion_gated_predictions,
    predict_helping_verb,
    predict_words,
)
from .signals import BlinkSelector, DetectorConfig, Expression, ExpressionEvent
from .vocab import tokenize


class EngineError(ValueError):
    pass


# Default affect before any reading arrives: relaxed and unstressed.
_NEUTRAL_METRICS = PerformanceMetrics(
    engagement=0.5, excitement=0.5, stress=0.0, relaxation=0.5, interest=0.5, focus=0.5
)


class Engine:
    """Owns the keyboard state, the live model snapshot, and the log."""

    def __init__(
        self,
        config: AppConfig,
        bigram: BigramModel,
        learner: OnlineLearner,
        lexicon: EmotionLexicon,
        auto_index: AutocompleteIndex | None = None,
        helping_verbs: HelpingVerbModel | None = None,
    ) -> None:
        self.config = config
        self.bigram = bigram
        self.learner = learner
        self.lexicon = lexicon
        self.auto_index = auto_index or AutocompleteIndex.build(lexicon)
        self.helping_verbs = helping_verbs or HelpingVerbModel()
        self.state: KeyboardState = initial_state(bigram)
        self.emotion: EmotionState = classify_emotion(_NEUTRAL_METRICS)
        self.log = SessionLog(
            SessionHeader(
                version=LOG_VERSION,
                config_hash=config_hash(config),
                seed=config.seed,
                config=config.as_dict(),
            )
        )
        self._selector = BlinkSelector(
            DetectorConfig(alpha=config.alpha, blink_pair_window=config.blink_pair_window)
        )
        self._predictions: list[str] = []
        self._verbs: list[str] = []
        self._refresh_suggestions()

    # -- suggestion state ------------------------------------------------

    def _refresh_suggestions(self) -> None:
        text = self.state.text
        prefix = text[text.rfind(SPACE) + 1 :]
        if prefix:
            self._predictions = autocomplete(
                prefix, self.emotion.label, self.auto_index, self.config.visible_predictions
            )
        else:
            ranked = predict_words(
                self.learner.model,
                self.learner.vocab,
                tokenize(text),
                self.config.prediction_pool,
            )
            self._predictions = emotion_gated_predictions(
                [w for w, _ in ranked],
                self.emotion.label,
                self.lexicon,
                self.config.visible_predictions,
            )
        self._verbs = predict_helping_verb(text, self.helping_verbs)

    @property
    def predictions(self) -> list[str]:
        return list(self._predictions)

    @property
    def helping_verb_list(self) -> list[str]:
        return list(self._verbs)

    def _panel_items(self) -> list[str]:
        if self.state.section is Section.PREDICTIONS:
            return self._predictions
        if self.state.section is Section.HELPING_VERBS:
            return self._verbs
        return []

    # -- event application -----------------------------------------------

    def apply(self, kind: str, payload: dict, t: int) -> list[SessionEvent]:
        """Apply one input event; returns it plus the outputs it caused."""
        handler = {
            "command": self._on_command,
            "expression": self._on_expression,
            "motor_imagery": self._on_motor_imagery,
            "emotion_update": self._on_emotion_update,
        }.get(kind)
        if handler is None:
            raise EngineError(f"unknown input kind: {kind!r}")
        new_events = [self._append(kind, payload, t)]
        new_events.extend(handler(payload, t))
        return new_events

    def _append(self, kind: str, payload: dict, t: int) -> SessionEvent:
        return self.log.append(
            SessionEvent(seq=self.log.next_seq, t=t, kind=kind, payload=payload)
        )

    def _on_command(self, payload: dict, t: int) -> list[SessionEvent]:
        try:
            cmd = NavCommand(payload["name"])
        except (KeyError, ValueError):
            raise EngineError(f"bad command payload: {payload!r}") from None
        if self.state.section is Section.KEYBOARD:
            self.state = move_focus(self.state, cmd)
        else:
            self.state = move_section_focus(self.state, cmd, len(self._panel_items()))
        return [self._emit_layout(t)]

    def _on_expression(self, payload: dict, t: int) -> list[SessionEvent]:
        try:
            expression = Expression(payload["name"])
        except (KeyError, ValueError):
            raise EngineError(f"bad expression payload: {payload!r}") from None
        selected = self._selector.feed(ExpressionEvent(expression=expression, t=t))
        if not selected:
            return []
        if self.state.section is Section.KEYBOARD:
            return self._select_key(t)
        return self._select_panel_item(t)

    def _select_key(self, t: int) -> list[SessionEvent]:
        before = self.state
        label = before.layout.key_at(before.focus)
        self.state = commit_selection(before, 1, self.bigram)
        if label == MORE:
            return [self._emit_layout(t)]
        action = "backspace" if label == BACKSPACE else "append"
        events = [self._emit_commit(t, action, label)]
        if label == SPACE:
            completed = before.text.rsplit(SPACE, 1)[-1]
            if completed:
                self.learner.record_word(completed)
        self._refresh_suggestions()
        events.append(self._emit_predictions(t))
        events.append(self._emit_metric_sample(t))
        return events

    def _select_panel_item(self, t: int) -> list[SessionEvent]:
        items = self._panel_items()
        focus = self.state.focus
        if focus.kind != "item" or focus.index >= len(items):
            return []  # empty panel slot: nothing to commit
        word = items[focus.index]
        self.state = commit_word(self.state, word, self.bigram)
        events = [self._emit_commit(t, "word", word)]
        self.learner.record_word(word)
        self._refresh_suggestions()
        events.append(self._emit_predictions(t))
        events.append(self._emit_metric_sample(t))
        return events

    def _on_motor_imagery(self, payload: dict, t: int) -> list[SessionEvent]:
        kind = payload.get("kind")
        if kind not in ("LookLeft", "LookRight"):
            raise EngineError(f"bad motor imagery payload: {payload!r}")
        self.state = shift_section(self.state, kind)
        return [self._emit_layout(t)]

    def _on_emotion_update(self, payload: dict, t: int) -> list[SessionEvent]:
        try:
            pm = PerformanceMetrics.from_mapping(payload["metrics"])
        except (KeyError, TypeError, ValueError) as exc:
            raise EngineError(f"bad emotion payload: {exc}") from None
        self.emotion = classify_emotion(pm, window=(t, t))
        self._refresh_suggestions()
        return [self._emit_predictions(t)]

    # -- output events ----------------------------------------------------

    def _emit_layout(self, t: int) -> SessionEvent:
        return self._append(
            "layout_change",
            {
                "layout": self._layout_dict(),
                "focus": self._focus_dict(),
                "section": self.state.section.value,
            },
            t,
        )

    def _emit_commit(self, t: int, action: str, label: str) -> SessionEvent:
        payload = {"action": action, "text": self.state.text}
        if action == "append":
            payload["char"] = label
        elif action == "word":
            payload["word"] = label
        return self._append("commit", payload, t)

    def _emit_predictions(self, t: int) -> SessionEvent:
        return self._append(
            "prediction_update",
            {
                "predictions": self.predictions,
                "helping_verbs": self.helping_verb_list,
                "emotion": self.emotion.label,
            },
            t,
        )

    def _emit_metric_sample(self, t: int) -> SessionEvent:
        wpm, cpm = typing_rates(self.log)
        return self._append("metric_sample", {"wpm": wpm, "cpm": cpm}, t)

    # -- snapshots ----------------------------------------------------------

    def _layout_dict(self) -> dict:
        rows = self.state.layout.keys
        return {
            "rows": [list(rows[0]), list(rows[1])],
            "page": self.state.layout.page_index,
            "context": self.state.layout.context_char,
        }

    def _focus_dict(self) -> dict:
        f = self.state.focus
        return {
            "kind": f.kind,
            "ring": f.ring.value if f.ring is not None else None,
            "slot": f.slot,
            "index": f.index,
        }

    def snapshot(self) -> dict[str, Any]:
        """Wire-format view of the whole session state."""
        wpm, cpm = typing_rates(self.log)
        return {
            "type": "snapshot",
            "seq": len(self.log.events),
            "layout": self._layout_dict(),
            "focus": self._focus_dict(),
            "section": self.state.section.value,
            "text": self.state.text,
            "predictions": self.predictions,
            "helping_verbs": self.helping_verb_list,
            "emotion": self.emotion.label,
            "metrics": {"wpm": wpm, "cpm": cpm},
        }


class ReplayError(ValueError):
    pass


def replay(log: SessionLog, engine: Engine) -> tuple[KeyboardState, "SessionLog"]:
    """Re-drive a fresh engine with the log's input events.

    The engine must be built from the same configuration and resources as
    the original session.  Raises if the reproduced text diverges from the
    logged final text.
    """
    if engine.log.events:
        raise ReplayError("replay needs a fresh engine")
    if engine.log.header.config_hash != log.header.config_hash:
        raise ReplayError("configuration hash does not match the log header")
    for ev in log.inputs():
        engine.apply(ev.kind, ev.payload, ev.t)
    if engine.state.text != log.final_text():
        raise ReplayError(
            f"replay diverged: got {engine.state.text!r}, log says {log.final_text()!r}"
        )
    return engine.state, engine.log

"""Word suggestion layer: ranked next words, emotion gating, helping verbs,
prefix completion, and periodic online retraining."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .emotion import EmotionLexicon
from .rnn import (
    DEFAULT_LR,
    DEFAULT_TRUNC,
    RnnError,
    RnnModel,
    TrainingBatch,
    TrainingDivergedError,
    train,
)
from .vocab import EOS_INDEX, UNK_INDEX, Vocabulary, tokenize

DEFAULT_VISIBLE_PREDICTIONS = 3

# Verb lists offered after a singular or plural subject.  The article
# entries are deliberate: the product treats them as one suggestion family.
SINGULAR_VERBS = ("is", "am", "was", "has", "the")
PLURAL_VERBS = ("are", "were", "have", "a", "the")

SINGULAR_SUBJECTS = frozenset(
    {"i", "he", "she", "it", "this", "that", "one", "someone", "everyone", "nobody"}
)
PLURAL_SUBJECTS = frozenset(
    {"we", "they", "you", "these", "those", "both", "few", "many", "people", "all"}
)


class PredictError(ValueError):
    pass


def predict_words(
    model: RnnModel, vocab: Vocabulary, context: Sequence[int] | Sequence[str], k: int
) -> list[tuple[str, float]]:
    """Top-k next words after ``context``, highest probability first.

    Context may be word strings or token ids; the sentence-start token is
    fed before it.  Reserved tokens never appear in the output; exact
    probability ties order by vocabulary index.
    """
    if k < 1:
        raise PredictError("k must be at least 1")
    ids: list[int] = [
        vocab.id_of(w) if isinstance(w, str) else int(w) for w in context
    ]
    _, probs = model.forward([EOS_INDEX, *ids])
    dist = probs[-1]
    order = np.argsort(-dist, kind="stable")
    out: list[tuple[str, float]] = []
    for idx in order:
        if idx in (UNK_INDEX, EOS_INDEX):
            continue
        out.append((vocab.word_of(int(idx)), float(dist[idx])))
        if len(out) == k:
            break
    return out


def emotion_gated_predictions(
    rnn_words: Sequence[str], emotion_class: str, lexicon: EmotionLexicon, k: int
) -> list[str]:
    """Reorder ranked suggestions so the active emotion's words lead.

    Words belonging to the class keep their relative rank and move to the
    front; the rest follow in rank order until k items are collected.
    """
    if k < 1:
        raise PredictError("k must be at least 1")
    class_words = set(lexicon.lexicon_for(emotion_class))
    preferred = [w for w in rnn_words if w in class_words]
    rest = [w for w in rnn_words if w not in class_words]
    return (preferred + rest)[:k]


@dataclass(frozen=True)
class HelpingVerbModel:
    """Verb lists keyed off whether the last typed word reads singular."""

    singular_verbs: tuple[str, ...] = SINGULAR_VERBS
    plural_verbs: tuple[str, ...] = PLURAL_VERBS
    singular_subjects: frozenset[str] = SINGULAR_SUBJECTS
    plural_subjects: frozenset[str] = PLURAL_SUBJECTS

    def __post_init__(self) -> None:
        if self.singular_subjects & self.plural_subjects:
            raise PredictError("a subject word cannot be both singular and plural")

    def merged(self) -> list[str]:
        seen: dict[str, None] = {}
        for v in (*self.singular_verbs, *self.plural_verbs):
            seen.setdefault(v, None)
        return list(seen)


def predict_helping_verb(text: str, hv: HelpingVerbModel = HelpingVerbModel()) -> list[str]:
    """Verb suggestions for the current text: singular list, plural list,
    or the merged list when the subject's number is unknown."""
    words = tokenize(text)
    last = words[-1] if words else ""
    if last in hv.singular_subjects:
        return list(hv.singular_verbs)
    if last in hv.plural_subjects:
        return list(hv.plural_verbs)
    return hv.merged()


class AutocompleteIndex:
    """Per-emotion-class completion lists, frequency-ranked then alphabetical."""

    def __init__(self, ranked_by_class: Mapping[str, Sequence[str]]) -> None:
        self._ranked = {cls: list(words) for cls, words in ranked_by_class.items()}

    @classmethod
    def build(
        cls, lexicon: EmotionLexicon, word_counts: Mapping[str, int] | None = None
    ) -> "AutocompleteIndex":
        counts = word_counts or {}
        ranked = {
            label: sorted(lexicon.lexicon_for(label), key=lambda w: (-counts.get(w, 0), w))
            for label in lexicon.classes()
        }
        return cls(ranked)

    def words_for(self, emotion_class: str) -> list[str]:
        if emotion_class not in self._ranked:
            raise PredictError(f"unknown emotion class: {emotion_class!r}")
        return list(self._ranked[emotion_class])


def autocomplete(
    prefix: str, emotion_class: str, index: AutocompleteIndex, k: int
) -> list[str]:
    """Up to k class words starting with ``prefix`` (lowercase letters only;
    empty prefix returns the class's head words)."""
    if k < 1:
        raise PredictError("k must be at least 1")
    if any(not "a" <= ch <= "z" for ch in prefix):
        raise PredictError(f"prefix must be lowercase letters, got {prefix!r}")
    return [w for w in index.words_for(emotion_class) if w.startswith(prefix)][:k]


@dataclass(frozen=True)
class RetrainPolicy:
    """When and how hard to fine-tune on the user's accepted words."""

    interval: int = 50
    epochs: int = 5
    lr: float = DEFAULT_LR
    trunc: int = DEFAULT_TRUNC

    def __post_init__(self) -> None:
        if self.interval < 1 or self.epochs < 1:
            raise PredictError("interval and epochs must be at least 1")


class OnlineLearner:
    """Owns the live model snapshot and retrains it from accepted words.

    The active model is replaced only by a fully trained copy, so readers
    always see a complete set of weights.  A failed retrain keeps the
    previous snapshot.  ``background=True`` moves training off-thread for
    live sessions; the default trains inline, which keeps simulated runs
    and replays deterministic.
    """

    def __init__(
        self,
        model: RnnModel,
        vocab: Vocabulary,
        policy: RetrainPolicy = RetrainPolicy(),
        background: bool = False,
    ) -> None:
        self.vocab = vocab
        self.policy = policy
        self.background = background
        self._model = model
        self._accepted: list[str] = []
        self._since_retrain = 0
        self._retrains = 0
        self._lock = threading.Lock()
        self._worker: threading.Thread | None = None

    @property
    def model(self) -> RnnModel:
        return self._model

    @property
    def accepted_count(self) -> int:
        return len(self._accepted)

    @property
    def retrain_count(self) -> int:
        return self._retrains

    def record_word(self, word: str) -> bool:
        """Note one accepted word; returns True when a retrain was triggered."""
        cleaned = tokenize(word)
        if len(cleaned) != 1:
            raise PredictError(f"expected a single word, got {word!r}")
        self._accepted.append(cleaned[0])
        self._since_retrain += 1
        if self._since_retrain < self.policy.interval:
            return False
        self._since_retrain = 0
        if self.background:
            self._start_background_retrain()
        else:
            self._retrain(list(self._accepted))
        return True

    def flush(self) -> None:
        """Wait for any in-flight background retrain to publish."""
        worker = self._worker
        if worker is not None:
            worker.join()

    def _start_background_retrain(self) -> None:
        self.flush()  # at most one retrain at a time
        snapshot_words = list(self._accepted)
        worker = threading.Thread(
            target=self._retrain, args=(snapshot_words,), daemon=True
        )
        self._worker = worker
        worker.start()

    def _retrain(self, words: list[str]) -> None:
        try:
            batch = TrainingBatch.from_sentences([words], self.vocab)
            candidate = self._model.copy()
            train(candidate, batch, epochs=self.policy.epochs, lr=self.policy.lr,
                  trunc=self.policy.trunc)
        except (TrainingDivergedError, RnnError):
            return  # keep the previous snapshot
        with self._lock:
            self._model = candidate
            self._retrains += 1

"""Word-level recurrent language model trained from scratch.

Single tanh recurrence with a softmax readout.  Training is plain
full-batch gradient descent with truncated backpropagation through time;
the heavy loops live in the selected kernels backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .vocab import EOS_INDEX, Vocabulary, tokenize

DEFAULT_HIDDEN = 100
DEFAULT_LR = 0.05
DEFAULT_TRUNC = 8
PROB_FLOOR = 1e-12


class RnnError(ValueError):
    pass


class TrainingDivergedError(RuntimeError):
    """Raised when the batch loss stops being finite."""


@dataclass
class RnnModel:
    """Weights of the recurrent predictor.

    ``w_in`` is hidden x vocab (one input column per token), ``w_rec`` is
    hidden x hidden, ``w_out`` is vocab x hidden.
    """

    w_in: np.ndarray
    w_rec: np.ndarray
    w_out: np.ndarray

    def __post_init__(self) -> None:
        h, v = self.w_in.shape
        if self.w_rec.shape != (h, h):
            raise RnnError(f"w_rec must be {h}x{h}, got {self.w_rec.shape}")
        if self.w_out.shape != (v, h):
            raise RnnError(f"w_out must be {v}x{h}, got {self.w_out.shape}")

    @property
    def hidden_size(self) -> int:
        return self.w_in.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.w_in.shape[1]

    @classmethod
    def init_random(
        cls, vocab_size: int, hidden_size: int = DEFAULT_HIDDEN, seed: int = 0
    ) -> "RnnModel":
        """Uniform init in +/- 1/sqrt(fan_in) per weight matrix."""
        if vocab_size < 2 or hidden_size < 1:
            raise RnnError("vocab_size must be >= 2 and hidden_size >= 1")
        rng = np.random.default_rng(seed)
        b_in = 1.0 / np.sqrt(vocab_size)
        b_h = 1.0 / np.sqrt(hidden_size)
        return cls(
            w_in=rng.uniform(-b_in, b_in, size=(hidden_size, vocab_size)),
            w_rec=rng.uniform(-b_h, b_h, size=(hidden_size, hidden_size)),
            w_out=rng.uniform(-b_h, b_h, size=(vocab_size, hidden_size)),
        )

    def copy(self) -> "RnnModel":
        return RnnModel(
            w_in=self.w_in.copy(), w_rec=self.w_rec.copy(), w_out=self.w_out.copy()
        )

    def zero_state(self) -> np.ndarray:
        return np.zeros(self.hidden_size)

    def step(self, state: np.ndarray, token: int) -> tuple[np.ndarray, np.ndarray]:
        """One recurrence step; returns (new_state, output distribution)."""
        if not 0 <= token < self.vocab_size:
            raise RnnError(f"token id {token} out of range")
        new_state = np.tanh(self.w_in[:, token] + self.w_rec @ state)
        probs = kernels.softmax(self.w_out @ new_state)
        return new_state, probs

    def forward(
        self, tokens: Sequence[int], s0: np.ndarray | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        toks = _as_token_array(tokens, self.vocab_size)
        return kernels.forward_sequence(self.w_in, self.w_rec, self.w_out, toks, s0)

    def save(self, path: str | Path, vocab: Vocabulary | None = None) -> None:
        payload = {"w_in": self.w_in, "w_rec": self.w_rec, "w_out": self.w_out}
        if vocab is not None:
            payload["words"] = np.array("\n".join(vocab.words))
        np.savez(path, **payload)

    @classmethod
    def load(cls, path: str | Path) -> tuple["RnnModel", Vocabulary | None]:
        with np.load(path, allow_pickle=False) as data:
            model = cls(
                w_in=np.array(data["w_in"]),
                w_rec=np.array(data["w_rec"]),
                w_out=np.array(data["w_out"]),
            )
            vocab = None
            if "words" in data:
                words = tuple(str(data["words"]).split("\n"))
                vocab = Vocabulary(words=words, index={w: i for i, w in enumerate(words)})
        return model, vocab


def _as_token_array(tokens: Sequence[int], vocab_size: int) -> np.ndarray:
    arr = np.asarray(tokens, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise RnnError("token sequence must be non-empty and one-dimensional")
    if arr.min() < 0 or arr.max() >= vocab_size:
        raise RnnError("token id out of range")
    return arr


@dataclass(frozen=True)
class TrainingBatch:
    """Aligned (inputs, targets) id sequences for full-batch training.

    Each sentence w1..wn becomes inputs [EOS, w1..wn] and targets
    [w1..wn, EOS]: the model both starts and ends sentences itself.
    """

    inputs: tuple[tuple[int, ...], ...]
    targets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.inputs) != len(self.targets) or not self.inputs:
            raise RnnError("batch needs matching, non-empty input/target lists")
        for inp, tgt in zip(self.inputs, self.targets):
            if len(inp) != len(tgt) or not inp:
                raise RnnError("each sequence pair must be non-empty and aligned")

    @property
    def total_predictions(self) -> int:
        return sum(len(t) for t in self.targets)

    @classmethod
    def from_sentences(
        cls, sentences: Iterable[str | Sequence[str]], vocab: Vocabulary
    ) -> "TrainingBatch":
        inputs = []
        targets = []
        for sent in sentences:
            words = tokenize(sent) if isinstance(sent, str) else list(sent)
            if not words:
                continue
            ids = vocab.encode(words)
            inputs.append((EOS_INDEX, *ids))
            targets.append((*ids, EOS_INDEX))
        if not inputs:
            raise RnnError("no usable sentences in batch")
        return cls(inputs=tuple(inputs), targets=tuple(targets))


def batch_loss(model: RnnModel, batch: TrainingBatch) -> float:
    """Mean negative log-likelihood over every prediction in the batch."""
    total = 0.0
    for inp, tgt in zip(batch.inputs, batch.targets):
        _, probs = model.forward(inp)
        p = np.maximum(probs[np.arange(len(tgt)), list(tgt)], PROB_FLOOR)
        total += float(-np.log(p).sum())
    return total / batch.total_predictions


def batch_gradients(
    model: RnnModel, batch: TrainingBatch, trunc: int = DEFAULT_TRUNC
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Loss plus full-batch gradients of the mean NLL."""
    if trunc < 1:
        raise RnnError("trunc must be at least 1")
    g_in = np.zeros_like(model.w_in)
    g_rec = np.zeros_like(model.w_rec)
    g_out = np.zeros_like(model.w_out)
    inv_total = 1.0 / batch.total_predictions
    nll = 0.0
    for inp, tgt in zip(batch.inputs, batch.targets):
        toks = _as_token_array(inp, model.vocab_size)
        tgts = _as_token_array(tgt, model.vocab_size)
        nll += kernels.sequence_gradients(
            model.w_in, model.w_rec, model.w_out, toks, tgts, trunc,
            inv_total, g_in, g_rec, g_out,
        )
    return nll * inv_total, g_in, g_rec, g_out


def train(
    model: RnnModel,
    batch: TrainingBatch,
    epochs: int,
    lr: float = DEFAULT_LR,
    trunc: int = DEFAULT_TRUNC,
) -> list[float]:
    """Run ``epochs`` full-batch descent steps in place.

    Returns the loss measured before each step.  A non-finite loss aborts
    with the offending epoch in the message; the model is left as-is for
    the caller to discard.
    """
    if epochs < 1:
        raise RnnError("epochs must be at least 1")
    history = []
    for epoch in range(epochs):
        loss, g_in, g_rec, g_out = batch_gradients(model, batch, trunc)
        if not np.isfinite(loss):
            raise TrainingDivergedError(f"non-finite loss at epoch {epoch}: {loss}")
        history.append(loss)
        model.w_in -= lr * g_in
        model.w_rec -= lr * g_rec
        model.w_out -= lr * g_out
    return history


def sequence_log_probability(model: RnnModel, token_ids: Sequence[int]) -> float:
    """Log-probability of the exact word sequence, started from EOS.

    The chain feeds EOS then each word; factor j is the probability the
    model assigned to word j given everything before it.  No end-of-
    sentence factor is appended.
    """
    ids = list(token_ids)
    if not ids:
        raise RnnError("sequence must be non-empty")
    inputs = [EOS_INDEX, *ids[:-1]]
    _, probs = model.forward(inputs)
    picked = probs[np.arange(len(ids)), ids]
    return float(np.log(np.maximum(picked, PROB_FLOOR)).sum())


def sequence_probability(model: RnnModel, token_ids: Sequence[int]) -> float:
    return float(np.exp(sequence_log_probability(model, token_ids)))

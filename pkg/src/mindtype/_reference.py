"""Pure-numpy kernels for the recurrent predictor.

Mirror of the compiled extension: same signatures, same numerics.  Kept
vectorized where possible, but the recurrence itself is inherently
sequential.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "reference"


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax over the last axis."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def forward_sequence(
    w_in: np.ndarray,
    w_rec: np.ndarray,
    w_out: np.ndarray,
    tokens: np.ndarray,
    s0: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Run the recurrence over ``tokens``.

    Returns ``(states, probs)`` where ``states`` has T+1 rows (row 0 is the
    start state) and ``probs`` has one distribution row per input token.
    State update: s_t = tanh(w_in[:, tok_t] + w_rec @ s_{t-1}); output:
    softmax(w_out @ s_t).
    """
    hidden = w_in.shape[0]
    steps = len(tokens)
    states = np.empty((steps + 1, hidden))
    states[0] = 0.0 if s0 is None else s0
    for t in range(steps):
        states[t + 1] = np.tanh(w_in[:, tokens[t]] + w_rec @ states[t])
    probs = softmax(states[1:] @ w_out.T)
    return states, probs


def sequence_gradients(
    w_in: np.ndarray,
    w_rec: np.ndarray,
    w_out: np.ndarray,
    tokens: np.ndarray,
    targets: np.ndarray,
    trunc: int,
    inv_total: float,
    g_in: np.ndarray,
    g_rec: np.ndarray,
    g_out: np.ndarray,
) -> float:
    """Accumulate truncated-backprop gradients for one sequence.

    Loss is mean negative log-likelihood over the whole batch; ``inv_total``
    is 1/(number of predictions in the batch) so per-sequence contributions
    sum to the batch mean.  Backprop from each output runs at most ``trunc``
    steps, counting the step that produced the output.  Returns this
    sequence's summed (unscaled) negative log-likelihood.
    """
    states, probs = forward_sequence(w_in, w_rec, w_out, tokens)
    steps = len(tokens)
    nll = 0.0
    for t in range(steps):
        p_target = max(probs[t, targets[t]], 1e-12)
        nll += -np.log(p_target)

        d_logits = probs[t].copy()
        d_logits[targets[t]] -= 1.0
        d_logits *= inv_total
        g_out += np.outer(d_logits, states[t + 1])
        delta = w_out.T @ d_logits
        for tau in range(t, max(-1, t - trunc), -1):
            da = delta * (1.0 - states[tau + 1] ** 2)
            g_in[:, tokens[tau]] += da
            g_rec += np.outer(da, states[tau])
            delta = w_rec.T @ da
    return float(nll)

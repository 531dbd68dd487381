# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the recurrent predictor.

Same contract as the pure-numpy reference backend; the recurrence and the
backward accumulation run as flat C loops instead of per-step numpy calls.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport tanh, log, exp

cnp.import_array()

BACKEND_NAME = "native"


def softmax(logits):
    """Numerically stable softmax over the last axis."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def forward_sequence(w_in, w_rec, w_out, tokens, s0=None):
    """Run the recurrence; returns (states, probs) like the reference backend."""
    cdef double[:, ::1] win = np.ascontiguousarray(w_in)
    cdef double[:, ::1] wrec = np.ascontiguousarray(w_rec)
    cdef cnp.int64_t[::1] toks = np.ascontiguousarray(tokens, dtype=np.int64)
    cdef Py_ssize_t hidden = win.shape[0]
    cdef Py_ssize_t steps = toks.shape[0]

    states_arr = np.empty((steps + 1, hidden))
    if s0 is None:
        states_arr[0] = 0.0
    else:
        states_arr[0] = s0
    cdef double[:, ::1] states = states_arr

    cdef Py_ssize_t t, j, k
    cdef double acc
    cdef cnp.int64_t tok
    for t in range(steps):
        tok = toks[t]
        for j in range(hidden):
            acc = win[j, tok]
            for k in range(hidden):
                acc += wrec[j, k] * states[t, k]
            states[t + 1, j] = tanh(acc)

    probs = softmax(states_arr[1:] @ np.asarray(w_out).T)
    return states_arr, probs


def sequence_gradients(w_in, w_rec, w_out, tokens, targets, trunc,
                       inv_total, g_in, g_rec, g_out):
    """Accumulate truncated-backprop gradients for one sequence.

    Returns the sequence's summed (unscaled) negative log-likelihood, with
    per-target probabilities clamped at 1e-12 before the log.
    """
    cdef double[:, ::1] win = np.ascontiguousarray(w_in)
    cdef double[:, ::1] wrec = np.ascontiguousarray(w_rec)
    cdef double[:, ::1] wout = np.ascontiguousarray(w_out)
    cdef cnp.int64_t[::1] toks = np.ascontiguousarray(tokens, dtype=np.int64)
    cdef cnp.int64_t[::1] tgts = np.ascontiguousarray(targets, dtype=np.int64)
    cdef double[:, ::1] gin = g_in
    cdef double[:, ::1] grec = g_rec
    cdef double[:, ::1] gout = g_out

    cdef Py_ssize_t hidden = win.shape[0]
    cdef Py_ssize_t vocab = wout.shape[0]
    cdef Py_ssize_t steps = toks.shape[0]
    cdef Py_ssize_t depth = trunc
    cdef double scale = inv_total

    states_arr, probs_arr = forward_sequence(w_in, w_rec, w_out, tokens)
    cdef double[:, ::1] states = np.ascontiguousarray(states_arr)
    cdef double[:, ::1] probs = np.ascontiguousarray(probs_arr)

    d_logits_arr = np.empty(vocab)
    delta_arr = np.empty(hidden)
    next_delta_arr = np.empty(hidden)
    cdef double[::1] d_logits = d_logits_arr
    cdef double[::1] delta = delta_arr
    cdef double[::1] next_delta = next_delta_arr

    cdef double nll = 0.0
    cdef double p_target, di, daj
    cdef Py_ssize_t t, tau, i, j, k, stop
    cdef cnp.int64_t tok

    for t in range(steps):
        p_target = probs[t, tgts[t]]
        if p_target < 1e-12:
            p_target = 1e-12
        nll += -log(p_target)

        for i in range(vocab):
            d_logits[i] = probs[t, i] * scale
        d_logits[tgts[t]] -= scale

        for j in range(hidden):
            delta[j] = 0.0
        for i in range(vocab):
            di = d_logits[i]
            for j in range(hidden):
                gout[i, j] += di * states[t + 1, j]
                delta[j] += wout[i, j] * di

        stop = t - depth
        if stop < -1:
            stop = -1
        for tau in range(t, stop, -1):
            tok = toks[tau]
            for j in range(hidden):
                next_delta[j] = 0.0
            for j in range(hidden):
                daj = delta[j] * (1.0 - states[tau + 1, j] * states[tau + 1, j])
                gin[j, tok] += daj
                for k in range(hidden):
                    grec[j, k] += daj * states[tau, k]
                    next_delta[k] += wrec[j, k] * daj
            for j in range(hidden):
                delta[j] = next_delta[j]

    return nll

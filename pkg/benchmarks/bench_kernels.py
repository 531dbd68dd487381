"""Compare the compiled kernels against the pure-numpy reference.

Times full-batch gradient computation (the training hot loop) and the
plain forward pass on a medium-sized model, and cross-checks that both
backends agree numerically.

Usage: python benchmarks/bench_kernels.py [--hidden 100] [--vocab 800]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mindtype import _reference
from mindtype.kernels import available_backends


def make_problem(hidden: int, vocab: int, n_seqs: int, seq_len: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    b = 1.0 / np.sqrt(vocab)
    bh = 1.0 / np.sqrt(hidden)
    w_in = rng.uniform(-b, b, size=(hidden, vocab))
    w_rec = rng.uniform(-bh, bh, size=(hidden, hidden))
    w_out = rng.uniform(-bh, bh, size=(vocab, hidden))
    seqs = [rng.integers(0, vocab, size=seq_len).astype(np.int64) for _ in range(n_seqs)]
    tgts = [rng.integers(0, vocab, size=seq_len).astype(np.int64) for _ in range(n_seqs)]
    return w_in, w_rec, w_out, seqs, tgts


def run_gradients(mod, w_in, w_rec, w_out, seqs, tgts, trunc=8):
    g_in = np.zeros_like(w_in)
    g_rec = np.zeros_like(w_rec)
    g_out = np.zeros_like(w_out)
    inv_total = 1.0 / sum(len(t) for t in tgts)
    nll = 0.0
    for toks, targets in zip(seqs, tgts):
        nll += mod.sequence_gradients(
            w_in, w_rec, w_out, toks, targets, trunc, inv_total, g_in, g_rec, g_out
        )
    return nll * inv_total, g_in, g_rec, g_out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--hidden", type=int, default=100)
    ap.add_argument("--vocab", type=int, default=800)
    ap.add_argument("--seqs", type=int, default=60)
    ap.add_argument("--len", dest="seq_len", type=int, default=12)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends found: {', '.join(backends)}")
    problem = make_problem(args.hidden, args.vocab, args.seqs, args.seq_len)
    w_in, w_rec, w_out, seqs, tgts = problem

    results = {}
    for name, mod in backends.items():
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            out = run_gradients(mod, w_in, w_rec, w_out, seqs, tgts)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
        print(f"  gradients  {name:10s} {best * 1000:8.1f} ms")

    for name, mod in backends.items():
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            for toks in seqs:
                mod.forward_sequence(w_in, w_rec, w_out, toks)
            best = min(best, time.perf_counter() - t0)
        print(f"  forward    {name:10s} {best * 1000:8.1f} ms")

    ref = results["reference"][1]
    for name, (_, out) in results.items():
        if name == "reference":
            continue
        dn = abs(out[0] - ref[0])
        dg = max(
            float(np.max(np.abs(a - b))) for a, b in zip(out[1:], ref[1:])
        )
        print(f"  agreement  {name} vs reference: loss diff {dn:.3e}, "
              f"max grad diff {dg:.3e}")
        if "reference" in results and name in results:
            speedup = results["reference"][0] / results[name][0]
            print(f"  speedup    {name}: {speedup:.1f}x on gradients")


if __name__ == "__main__":
    main()

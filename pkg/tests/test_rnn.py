"""Recurrent word predictor: forward math, gradients, training dynamics.

The gradient tests pin the hand-written backpropagation against central
finite differences of the loss, and the two compute backends against each
other, so neither can drift silently.
"""

import itertools
import math

import numpy as np
import pytest

from mindtype import _reference, kernels
from mindtype.rnn import (
    EOS_INDEX,
    PROB_FLOOR,
    RnnError,
    RnnModel,
    TrainingBatch,
    TrainingDivergedError,
    batch_gradients,
    batch_loss,
    sequence_log_probability,
    sequence_probability,
    train,
)
from mindtype.vocab import Vocabulary

try:
    from mindtype import _native
except ImportError:  # pragma: no cover - source-only installs
    _native = None

BACKENDS = [_reference] + ([_native] if _native is not None else [])


def tiny_model(vocab_size=3, hidden=2, seed=1):
    return RnnModel.init_random(vocab_size, hidden, seed=seed)


def zero_model(vocab_size=5, hidden=4):
    return RnnModel(
        w_in=np.zeros((hidden, vocab_size)),
        w_rec=np.zeros((hidden, hidden)),
        w_out=np.zeros((vocab_size, hidden)),
    )


class TestSoftmax:
    def test_two_way_even_split(self):
        assert kernels.softmax(np.array([3.0, 3.0])) == pytest.approx([0.5, 0.5])

    def test_known_ratio(self):
        probs = kernels.softmax(np.array([math.log(2.0), 0.0]))
        assert probs == pytest.approx([2 / 3, 1 / 3])

    def test_shift_invariance_and_overflow_safety(self):
        logits = np.array([1.0, 2.0, 3.0])
        shifted = kernels.softmax(logits + 1000.0)
        assert shifted == pytest.approx(kernels.softmax(logits), abs=1e-12)
        assert np.isfinite(shifted).all()

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            x = rng.normal(scale=10.0, size=rng.integers(2, 40))
            assert kernels.softmax(x).sum() == pytest.approx(1.0, abs=1e-9)


class TestForward:
    def test_hand_computed_two_steps(self):
        # 3 tokens, 2 hidden units, weights small enough to write out by hand
        w_in = np.array([[0.1, -0.2, 0.3], [0.0, 0.4, -0.1]])
        w_rec = np.array([[0.2, -0.1], [0.05, 0.3]])
        w_out = np.array([[0.1, 0.0], [-0.2, 0.3], [0.4, -0.4]])
        model = RnnModel(w_in=w_in, w_rec=w_rec, w_out=w_out)

        s1 = np.tanh(w_in[:, 2])
        s2 = np.tanh(w_in[:, 0] + w_rec @ s1)
        e1 = np.exp(w_out @ s1 - (w_out @ s1).max())
        e2 = np.exp(w_out @ s2 - (w_out @ s2).max())

        states, probs = model.forward([2, 0])
        assert states.shape == (3, 2)
        assert probs.shape == (2, 3)
        assert states[0] == pytest.approx([0.0, 0.0], abs=0)
        assert states[1] == pytest.approx(s1, abs=1e-12)
        assert states[2] == pytest.approx(s2, abs=1e-12)
        assert probs[0] == pytest.approx(e1 / e1.sum(), abs=1e-12)
        assert probs[1] == pytest.approx(e2 / e2.sum(), abs=1e-12)

    def test_zero_weights_give_uniform_outputs(self):
        model = zero_model(vocab_size=5)
        _, probs = model.forward([0, 3, 1])
        assert probs == pytest.approx(np.full((3, 5), 0.2), abs=1e-12)

    def test_initial_state_is_used(self):
        model = tiny_model(seed=3)
        s0 = np.array([0.3, -0.7])
        states, _ = model.forward([1], s0=s0)
        want = np.tanh(model.w_in[:, 1] + model.w_rec @ s0)
        assert states[0] == pytest.approx(s0)
        assert states[1] == pytest.approx(want, abs=1e-12)

    def test_step_agrees_with_forward(self):
        model = tiny_model(seed=8)
        state = model.zero_state()
        by_step = []
        for tok in [2, 1, 0, 2]:
            state, probs = model.step(state, tok)
            by_step.append(probs)
        _, probs = model.forward([2, 1, 0, 2])
        assert probs == pytest.approx(np.array(by_step), abs=1e-12)

    def test_token_out_of_range(self):
        model = tiny_model()
        with pytest.raises(RnnError):
            model.forward([0, 7])

    def test_forward_is_bit_deterministic(self):
        model = tiny_model(seed=9)
        a = model.forward([0, 1, 2, 1])
        b = model.forward([0, 1, 2, 1])
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


class TestInit:
    def test_bounds_follow_fan_in(self):
        model = RnnModel.init_random(vocab_size=16, hidden_size=9, seed=0)
        assert np.abs(model.w_in).max() <= 1 / 4
        assert np.abs(model.w_rec).max() <= 1 / 3
        assert np.abs(model.w_out).max() <= 1 / 3

    def test_seed_reproducible(self):
        a = RnnModel.init_random(10, 5, seed=4)
        b = RnnModel.init_random(10, 5, seed=4)
        c = RnnModel.init_random(10, 5, seed=5)
        assert np.array_equal(a.w_in, b.w_in)
        assert np.array_equal(a.w_rec, b.w_rec)
        assert not np.array_equal(a.w_in, c.w_in)

    def test_shape_validation(self):
        with pytest.raises(RnnError):
            RnnModel(
                w_in=np.zeros((3, 4)), w_rec=np.zeros((3, 2)), w_out=np.zeros((4, 3))
            )


class TestBatch:
    def test_from_sentences_structure(self):
        vocab = Vocabulary.build("the day was good", max_size=10)
        batch = TrainingBatch.from_sentences(["the day", "was good"], vocab)
        the, day = vocab.id_of("the"), vocab.id_of("day")
        assert batch.inputs[0] == (EOS_INDEX, the, day)
        assert batch.targets[0] == (the, day, EOS_INDEX)
        assert batch.total_predictions == 6

    def test_blank_sentences_skipped(self):
        vocab = Vocabulary.build("the day", max_size=10)
        batch = TrainingBatch.from_sentences(["", "the", "  "], vocab)
        assert len(batch.inputs) == 1

    def test_all_blank_rejected(self):
        vocab = Vocabulary.build("the day", max_size=10)
        with pytest.raises(RnnError):
            TrainingBatch.from_sentences(["", "  "], vocab)

    def test_misaligned_rejected(self):
        with pytest.raises(RnnError):
            TrainingBatch(inputs=((1, 2),), targets=((2,),))


class TestLoss:
    def test_uniform_model_loss_is_log_vocab(self):
        vocab_size = 8
        model = zero_model(vocab_size=vocab_size)
        batch = TrainingBatch(inputs=((1, 2, 3),), targets=((2, 3, 1),))
        assert batch_loss(model, batch) == pytest.approx(math.log(vocab_size), abs=1e-12)

    def test_loss_is_mean_over_all_predictions(self):
        model = tiny_model(seed=2)
        one = TrainingBatch(inputs=((1, 2),), targets=((2, 1),))
        dup = TrainingBatch(inputs=((1, 2), (1, 2)), targets=((2, 1), (2, 1)))
        assert batch_loss(model, dup) == pytest.approx(batch_loss(model, one), abs=1e-12)

    def test_floor_keeps_loss_finite(self):
        # force a probability of ~0 for the target via extreme logits
        h, v = 3, 4
        model = RnnModel(
            w_in=np.full((h, v), 5.0),
            w_rec=np.zeros((h, h)),
            w_out=np.vstack([np.full((1, h), -200.0), np.full((v - 1, h), 200.0)]),
        )
        batch = TrainingBatch(inputs=((1,),), targets=((0,),))
        loss = batch_loss(model, batch)
        assert np.isfinite(loss)
        assert loss <= -math.log(PROB_FLOOR) + 1e-6


def fd_gradient(model, batch, mat_name, idx, eps=1e-6):
    mat = getattr(model, mat_name)
    orig = mat[idx]
    mat[idx] = orig + eps
    hi = batch_loss(model, batch)
    mat[idx] = orig - eps
    lo = batch_loss(model, batch)
    mat[idx] = orig
    return (hi - lo) / (2 * eps)


class TestGradients:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(13)
        model = tiny_model(vocab_size=6, hidden=4, seed=13)
        batch = TrainingBatch(
            inputs=((1, 4, 2, 5), (1, 3)), targets=((4, 2, 5, 1), (3, 1))
        )
        # trunc covers the longest sequence, so the analytic result is exact
        _, g_in, g_rec, g_out = batch_gradients(model, batch, trunc=10)
        for name, grad in (("w_in", g_in), ("w_rec", g_rec), ("w_out", g_out)):
            shape = grad.shape
            for _ in range(12):
                idx = (rng.integers(shape[0]), rng.integers(shape[1]))
                want = fd_gradient(model, batch, name, idx)
                got = grad[idx]
                denom = max(abs(want), abs(got), 1e-8)
                assert abs(want - got) / denom < 1e-4, (name, idx)

    def test_truncation_changes_long_range_terms_only(self):
        model = tiny_model(vocab_size=5, hidden=3, seed=21)
        batch = TrainingBatch(inputs=((1, 2, 3, 4, 2, 3),), targets=((2, 3, 4, 2, 3, 1),))
        full = batch_gradients(model, batch, trunc=6)
        cut = batch_gradients(model, batch, trunc=1)
        assert full[0] == pytest.approx(cut[0])  # loss ignores trunc
        # output-layer gradient has no recurrent term, so it is unaffected
        assert cut[3] == pytest.approx(full[3], abs=1e-12)
        assert not np.allclose(cut[2], full[2])

    @pytest.mark.parametrize("backend", BACKENDS, ids=lambda m: m.BACKEND_NAME)
    def test_each_backend_against_reference(self, backend):
        rng = np.random.default_rng(5)
        h, v = 6, 9
        w_in = rng.uniform(-0.3, 0.3, size=(h, v))
        w_rec = rng.uniform(-0.3, 0.3, size=(h, h))
        w_out = rng.uniform(-0.3, 0.3, size=(v, h))
        toks = np.array([1, 4, 7, 2, 8], dtype=np.int64)
        tgts = np.array([4, 7, 2, 8, 1], dtype=np.int64)

        def run(mod):
            g_in = np.zeros_like(w_in)
            g_rec = np.zeros_like(w_rec)
            g_out = np.zeros_like(w_out)
            nll = mod.sequence_gradients(
                w_in, w_rec, w_out, toks, tgts, 3, 1.0 / 5.0, g_in, g_rec, g_out
            )
            return nll, g_in, g_rec, g_out

        got = run(backend)
        want = run(_reference)
        assert got[0] == pytest.approx(want[0], abs=1e-12)
        for g, w in zip(got[1:], want[1:]):
            assert np.allclose(g, w, atol=1e-12)

    def test_forward_backends_agree(self):
        if _native is None:
            pytest.skip("compiled backend not built")
        model = tiny_model(vocab_size=7, hidden=5, seed=3)
        toks = np.array([2, 6, 1, 3], dtype=np.int64)
        s_ref, p_ref = _reference.forward_sequence(
            model.w_in, model.w_rec, model.w_out, toks, None
        )
        s_nat, p_nat = _native.forward_sequence(
            model.w_in, model.w_rec, model.w_out, toks, None
        )
        assert np.allclose(s_ref, s_nat, atol=1e-15)
        assert np.allclose(p_ref, p_nat, atol=1e-15)

    def test_bad_trunc_rejected(self):
        model = tiny_model()
        batch = TrainingBatch(inputs=((1,),), targets=((2,),))
        with pytest.raises(RnnError):
            batch_gradients(model, batch, trunc=0)


class TestTraining:
    def test_zero_learning_rate_changes_nothing(self):
        model = tiny_model(vocab_size=5, hidden=3, seed=11)
        before = model.copy()
        batch = TrainingBatch(inputs=((1, 2, 3),), targets=((2, 3, 1),))
        history = train(model, batch, epochs=3, lr=0.0)
        assert np.array_equal(model.w_in, before.w_in)
        assert np.array_equal(model.w_rec, before.w_rec)
        assert np.array_equal(model.w_out, before.w_out)
        assert history[0] == pytest.approx(history[-1])

    def test_loss_decreases_on_toy_corpus(self):
        vocab = Vocabulary.build("a b a b a b", max_size=5)
        batch = TrainingBatch.from_sentences(["a b a b a b a b"], vocab)
        model = RnnModel.init_random(len(vocab), hidden_size=8, seed=7)
        history = train(model, batch, epochs=100, lr=0.5, trunc=4)
        assert history[-1] < history[0]
        upticks = sum(1 for a, b in itertools.pairwise(history) if b > a + 1e-9)
        assert upticks <= 5  # descent may wobble, not thrash

    def test_learns_alternation(self):
        vocab = Vocabulary.build("a b", max_size=5)
        batch = TrainingBatch.from_sentences(["a b a b a b a b"], vocab)
        model = RnnModel.init_random(len(vocab), hidden_size=8, seed=7)
        train(model, batch, epochs=150, lr=0.5, trunc=4)
        a, b = vocab.id_of("a"), vocab.id_of("b")
        state = model.zero_state()
        state, _ = model.step(state, EOS_INDEX)
        state, probs = model.step(state, a)
        assert probs[b] > 0.9

    def test_divergence_raises(self):
        h, v = 3, 4
        model = RnnModel(
            w_in=np.full((h, v), 5.0),
            w_rec=np.zeros((h, h)),
            w_out=np.full((v, h), 1e308),
        )
        batch = TrainingBatch(inputs=((1, 2),), targets=((2, 1),))
        with np.errstate(invalid="ignore", over="ignore"):
            with pytest.raises(TrainingDivergedError):
                train(model, batch, epochs=2, lr=0.05)

    def test_history_length_and_epoch_validation(self):
        model = tiny_model()
        batch = TrainingBatch(inputs=((1,),), targets=((2,),))
        assert len(train(model, batch, epochs=4, lr=0.01)) == 4
        with pytest.raises(RnnError):
            train(model, batch, epochs=0)


class TestSequenceProbability:
    def test_uniform_model_gives_power_of_vocab(self):
        model = zero_model(vocab_size=4)
        for length in (1, 2, 3):
            p = sequence_probability(model, [2] * length)
            assert p == pytest.approx((1 / 4) ** length, abs=1e-12)

    def test_matches_stepwise_chain(self):
        model = tiny_model(vocab_size=3, hidden=2, seed=17)
        ids = [2, 0, 1, 2]
        state = model.zero_state()
        chain = 0.0
        prev = EOS_INDEX
        for tok in ids:
            state, probs = model.step(state, prev)
            chain += math.log(probs[tok])
            prev = tok
        assert sequence_log_probability(model, ids) == pytest.approx(chain, abs=1e-10)

    @pytest.mark.parametrize("length", [1, 2, 3, 4])
    def test_all_sequences_sum_to_one(self, length):
        model = tiny_model(vocab_size=3, hidden=4, seed=23)
        total = sum(
            sequence_probability(model, list(seq))
            for seq in itertools.product(range(3), repeat=length)
        )
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_empty_sequence_rejected(self):
        with pytest.raises(RnnError):
            sequence_probability(tiny_model(), [])


class TestCheckpoint:
    def test_roundtrip_is_bit_identical(self, tmp_path):
        model = RnnModel.init_random(12, 6, seed=31)
        vocab = Vocabulary.build("the day was good and long", max_size=12)
        path = tmp_path / "model.npz"
        model.save(path, vocab)
        loaded, back = RnnModel.load(path)
        assert np.array_equal(loaded.w_in, model.w_in)
        assert np.array_equal(loaded.w_rec, model.w_rec)
        assert np.array_equal(loaded.w_out, model.w_out)
        assert back is not None
        assert back.words == vocab.words
        # forward pass after reload is bit-for-bit the same
        a = model.forward([1, 2, 3])[1]
        b = loaded.forward([1, 2, 3])[1]
        assert np.array_equal(a, b)

    def test_vocabless_checkpoint(self, tmp_path):
        model = RnnModel.init_random(6, 3, seed=1)
        path = tmp_path / "bare.npz"
        model.save(path)
        _, vocab = RnnModel.load(path)
        assert vocab is None

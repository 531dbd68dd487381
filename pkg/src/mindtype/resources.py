"""Bundled data files and construction of the default runtime components.

The package ships a letter-pair probability table, a plain-text training
corpus, and the emotion word lexicon.  Building the default predictor
trains a small recurrent model on the bundled corpus; the result is cached
per configuration so repeated sessions (and replays) reuse one training
run.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .bigram import BigramModel
from .config import AppConfig, config_hash
from .emotion import EmotionLexicon
from .engine import Engine
from .predict import AutocompleteIndex, OnlineLearner, RetrainPolicy
from .rnn import RnnModel, TrainingBatch, train
from .vocab import Vocabulary, tokenize

_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")


def data_path(name: str) -> Path:
    return Path(str(files("mindtype").joinpath("data", name)))


def load_bigram(cfg: AppConfig) -> BigramModel:
    path = cfg.bigram_path or data_path("char_pairs.txt")
    return BigramModel.load(path)


def load_lexicon(cfg: AppConfig) -> EmotionLexicon:
    path = cfg.lexicon_path or data_path("emotion_lexicon.txt")
    return EmotionLexicon.load(path)


def load_corpus(cfg: AppConfig) -> str:
    path = cfg.corpus_path or data_path("corpus.txt")
    return Path(path).read_text(encoding="utf-8")


def corpus_sentences(text: str) -> list[list[str]]:
    """Sentence-ish chunks as token lists, punctuation stripped."""
    out = []
    for chunk in _SENTENCE_SPLIT.split(text):
        words = tokenize(chunk)
        if words:
            out.append(words)
    return out


def train_language_model(
    corpus_text: str, cfg: AppConfig
) -> tuple[RnnModel, Vocabulary]:
    """Vocabulary + trained model from raw text, per the config's knobs."""
    sentences = corpus_sentences(corpus_text)
    if not sentences:
        raise ValueError("corpus has no usable sentences")
    vocab = Vocabulary.build([w for s in sentences for w in s], cfg.vocab_size)
    model = RnnModel.init_random(len(vocab), cfg.hidden_size, seed=cfg.seed)
    batch = TrainingBatch.from_sentences(sentences, vocab)
    train(model, batch, epochs=cfg.lm_epochs, lr=cfg.lm_lr)
    return model, vocab


@lru_cache(maxsize=4)
def _cached_language_model(cfg_key: str, corpus_path: str) -> tuple[RnnModel, Vocabulary]:
    cfg = AppConfig(**_CFG_BY_KEY[cfg_key])
    return train_language_model(load_corpus(cfg), cfg)


_CFG_BY_KEY: dict[str, dict] = {}


def default_language_model(cfg: AppConfig) -> tuple[RnnModel, Vocabulary]:
    """Trained base model for this config, cached within the process."""
    key = config_hash(cfg)
    _CFG_BY_KEY.setdefault(key, cfg.as_dict())
    return _cached_language_model(key, cfg.corpus_path)


def build_learner(cfg: AppConfig, background: bool = False) -> OnlineLearner:
    base, vocab = default_language_model(cfg)
    policy = RetrainPolicy(interval=cfg.retrain_interval, epochs=cfg.retrain_epochs)
    return OnlineLearner(base.copy(), vocab, policy=policy, background=background)


def build_engine(cfg: AppConfig, background_retrain: bool = False) -> Engine:
    """Fully wired session engine from a configuration alone."""
    lexicon = load_lexicon(cfg)
    counts = Counter(tokenize(load_corpus(cfg)))
    return Engine(
        config=cfg,
        bigram=load_bigram(cfg),
        learner=build_learner(cfg, background=background_retrain),
        lexicon=lexicon,
        auto_index=AutocompleteIndex.build(lexicon, counts),
    )

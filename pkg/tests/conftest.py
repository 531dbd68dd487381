import pytest

from mindtype.config import AppConfig
from mindtype.resources import build_engine, load_bigram, load_lexicon

# Small model settings shared by engine-level tests; the trained base model
# is cached per config inside resources, so building engines stays cheap.
TINY = AppConfig(
    hidden_size=24,
    lm_epochs=4,
    vocab_size=400,
    seed=5,
    retrain_interval=5,
    retrain_epochs=2,
)


@pytest.fixture(scope="session")
def tiny_config() -> AppConfig:
    return TINY


@pytest.fixture()
def tiny_engine(tiny_config):
    return build_engine(tiny_config)


@pytest.fixture(scope="session")
def bundled_bigram():
    return load_bigram(AppConfig())


@pytest.fixture(scope="session")
def bundled_lexicon():
    return load_lexicon(AppConfig())

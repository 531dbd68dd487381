"""Runtime configuration: `key = value` text files and the session header hash."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AppConfig:
    """Everything tunable at session level, with product defaults."""

    alpha: float = 0.80
    blink_pair_window: float = 1000.0  # ms
    retrain_interval: int = 50
    retrain_epochs: int = 5
    visible_predictions: int = 3
    prediction_pool: int = 50
    hidden_size: int = 100
    vocab_size: int = 8000
    lm_epochs: int = 40
    lm_lr: float = 0.05
    seed: int = 7
    corpus_path: str = ""  # empty -> bundled corpus
    bigram_path: str = ""  # empty -> bundled pair table
    lexicon_path: str = ""  # empty -> bundled lexicon

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError("alpha must be in (0, 1]")
        for name in ("retrain_interval", "retrain_epochs", "visible_predictions",
                     "prediction_pool", "hidden_size", "lm_epochs"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.vocab_size < 3:
            raise ConfigError("vocab_size must be at least 3")

    def as_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(name: str, raw: str, target_type: type) -> Any:
    try:
        if target_type is int:
            return int(raw)
        if target_type is float:
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"bad value for {name}: {raw!r}") from None


def parse_config(text: str) -> AppConfig:
    """Parse `key = value` lines; unknown keys are rejected, '#' comments allowed."""
    valid = {f.name: f.type for f in fields(AppConfig)}
    types = {f.name: type(getattr(AppConfig(), f.name)) for f in fields(AppConfig)}
    overrides: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in valid:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        overrides[key] = _coerce(key, value, types[key])
    return replace(AppConfig(), **overrides)


def load_config(path: str | Path | None) -> AppConfig:
    if path is None:
        return AppConfig()
    return parse_config(Path(path).read_text(encoding="utf-8"))


def config_hash(cfg: AppConfig) -> str:
    """Stable digest of the full key-value set, for the log header."""
    canon = "\n".join(f"{k}={cfg.as_dict()[k]}" for k in sorted(cfg.as_dict()))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]

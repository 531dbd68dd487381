"""Command-line entry points."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .bigram import BigramModel
from .config import AppConfig, load_config
from .events import LogError, SessionLog
from .metrics import report_from_log
from .resources import build_engine, train_language_model
from .simulate import DEFAULT_BENCH_WORDS, SimulatedUser, bench_layouts, run_session


def _config(path: str | None) -> AppConfig:
    return load_config(path)


@click.group()
def main() -> None:
    """Thought-to-text keyboard simulator and service."""


@main.command()
@click.option("--text", required=True, help="Target text to type (a-z and spaces).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--error-rate", default=0.0, show_default=True, type=float)
@click.option("--latency-mean", default=1.0, show_default=True, type=float,
              help="Mean per-action delay, seconds.")
@click.option("--latency-std", default=0.2, show_default=True, type=float)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the session log here.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def simulate(text: str, seed: int, error_rate: float, latency_mean: float,
             latency_std: float, out: str | None, config_path: str | None) -> None:
    """Type TEXT with a simulated operator and print the metrics report."""
    cfg = _config(config_path)
    user = SimulatedUser(
        target_text=text,
        seed=seed,
        error_rate=error_rate,
        latency_mean=latency_mean,
        latency_std=latency_std,
    )
    engine = build_engine(cfg)
    log, report = run_session(cfg, user, engine)
    if out:
        log.save(out)
        click.echo(f"log written to {out}")
    click.echo(f"final text: {log.final_text()!r}")
    click.echo(report.to_text())


@main.command()
@click.option("--words", default=None,
              help="Comma-separated word list (default: built-in ten).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--latency-mean", default=1.0, show_default=True, type=float)
@click.option("--latency-std", default=0.2, show_default=True, type=float)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def bench(words: str | None, seed: int, latency_mean: float, latency_std: float,
          config_path: str | None) -> None:
    """Compare the dynamic circular layout against a scanning keyboard."""
    from .resources import load_bigram

    cfg = _config(config_path)
    word_list = tuple(w.strip() for w in words.split(",")) if words else DEFAULT_BENCH_WORDS
    user = SimulatedUser(
        target_text=" ".join(word_list),
        seed=seed,
        latency_mean=latency_mean,
        latency_std=latency_std,
    )
    result = bench_layouts(word_list, user, load_bigram(cfg))
    click.echo(result.to_table())


@main.command(name="train-lm")
@click.option("--corpus", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Training text (default: bundled corpus).")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Checkpoint file (.npz).")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def train_lm(corpus: str | None, out: str, config_path: str | None) -> None:
    """Train the word predictor and write a checkpoint."""
    from .resources import load_corpus

    cfg = _config(config_path)
    text = Path(corpus).read_text(encoding="utf-8") if corpus else load_corpus(cfg)
    model, vocab = train_language_model(text, cfg)
    model.save(out, vocab)
    click.echo(f"checkpoint written to {out} "
               f"(vocab {len(vocab)}, hidden {model.hidden_size})")


@main.command()
@click.argument("logfile", type=click.Path(exists=True, dir_okay=False))
def replay(logfile: str) -> None:
    """Re-drive a session log and verify the text it produced."""
    from .engine import ReplayError, replay as replay_log

    try:
        log = SessionLog.load(logfile)
    except LogError as exc:
        raise click.ClickException(str(exc)) from None
    cfg = AppConfig(**log.header.config)
    engine = build_engine(cfg)
    try:
        state, new_log = replay_log(log, engine)
    except ReplayError as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(f"replayed {len(log.inputs())} input events")
    click.echo(f"final text: {state.text!r}")
    click.echo(report_from_log(new_log).to_text())


@main.command()
@click.option("--port", default=8765, show_default=True, type=int)
@click.option("--log", "log_path", type=click.Path(dir_okay=False), default=None,
              help="Write the session log here on disconnect.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def serve(port: int, log_path: str | None, config_path: str | None) -> None:
    """Serve the live UI bridge on ws://127.0.0.1:PORT/ws."""
    from .server import serve as serve_ui

    click.echo(f"listening on ws://127.0.0.1:{port}/ws", err=True)
    serve_ui(port, _config(config_path), log_path)


@main.command()
@click.argument("logfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--kv", is_flag=True, help="Machine-readable key=value output.")
def metrics(logfile: str, kv: bool) -> None:
    """Compute the metrics report for a stored session log."""
    try:
        log = SessionLog.load(logfile)
    except LogError as exc:
        raise click.ClickException(str(exc)) from None
    report = report_from_log(log)
    click.echo(report.to_kv() if kv else report.to_text())


@main.command(name="build-bigram")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def build_bigram(corpus: str, out: str) -> None:
    """Count letter pairs in a text file and write a probability table."""
    text = Path(corpus).read_text(encoding="utf-8")
    model = BigramModel.from_corpus(text)
    model.save(out)
    click.echo(f"pair table written to {out}")


if __name__ == "__main__":
    main(prog_name="mindtype")

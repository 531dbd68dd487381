"""Letter-pair statistics driving the dynamic keyboard layout.

The keyboard shows six letters at a time, ranked by how likely each letter
is to follow the previously typed one.  Rankings come from a 26x26 table of
conditional probabilities P(next | previous) estimated from adjacent-letter
counts in plain English text.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

# Standard frequency order of English letters; ranks the first page shown
# before any character has been typed.
ENGLISH_LETTER_ORDER = "etaoinsrhldcumfpgwybvkxjqz"

ROW_SUM_TOLERANCE = 1e-9


class BigramError(ValueError):
    """Malformed table data or a character outside the 26-letter alphabet."""


def _validate_ranking(ranking: str) -> None:
    if sorted(ranking) != sorted(ALPHABET):
        raise BigramError("initial ranking must be a permutation of a-z")


@dataclass(frozen=True)
class BigramModel:
    """Conditional next-letter probabilities plus an unconditional ranking.

    ``rows`` maps each previous letter to a dict of next-letter
    probabilities; every row sums to 1.  ``initial_ranking`` orders the
    alphabet by unconditional frequency and seeds the empty-context layout.
    """

    rows: dict[str, dict[str, float]]
    initial_ranking: str = ENGLISH_LETTER_ORDER

    def __post_init__(self) -> None:
        _validate_ranking(self.initial_ranking)
        if sorted(self.rows) != sorted(ALPHABET):
            raise BigramError("table must have one row per letter a-z")
        for prev, row in self.rows.items():
            if sorted(row) != sorted(ALPHABET):
                raise BigramError(f"row {prev!r} must cover all 26 letters")
            total = 0.0
            for nxt, p in row.items():
                if not (p >= 0.0):
                    raise BigramError(f"negative probability at {prev}{nxt}")
                total += p
            if abs(total - 1.0) > ROW_SUM_TOLERANCE:
                raise BigramError(f"row {prev!r} sums to {total!r}, expected 1")

    def probability(self, prev: str, nxt: str) -> float:
        self._check_letter(prev)
        self._check_letter(nxt)
        return self.rows[prev][nxt]

    def next_char_probabilities(self, prev: str) -> list[tuple[str, float]]:
        """All 26 letters ordered by probability after ``prev``.

        Descending probability; equal probabilities fall back to
        alphabetical order so rankings are reproducible.
        """
        self._check_letter(prev)
        row = self.rows[prev]
        return sorted(row.items(), key=lambda kv: (-kv[1], kv[0]))

    def ranking_after(self, prev: str | None) -> str:
        """Letter ranking for a context: initial order when no context."""
        if prev is None:
            return self.initial_ranking
        return "".join(c for c, _ in self.next_char_probabilities(prev))

    @staticmethod
    def _check_letter(c: str) -> None:
        if len(c) != 1 or c not in ALPHABET:
            raise BigramError(f"{c!r} is not a lowercase letter a-z")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_counts(
        cls,
        pair_counts: dict[tuple[str, str], int | float],
        letter_counts: dict[str, int | float] | None = None,
    ) -> "BigramModel":
        """Build from raw adjacent-pair counts.

        Rows with no observations fall back to a uniform distribution.
        ``letter_counts`` ranks the initial page; when omitted the standard
        English order is used.
        """
        rows: dict[str, dict[str, float]] = {}
        for prev in ALPHABET:
            total = sum(pair_counts.get((prev, nxt), 0) for nxt in ALPHABET)
            if total > 0:
                rows[prev] = {
                    nxt: pair_counts.get((prev, nxt), 0) / total for nxt in ALPHABET
                }
            else:
                rows[prev] = {nxt: 1.0 / 26.0 for nxt in ALPHABET}
        if letter_counts is None:
            ranking = ENGLISH_LETTER_ORDER
        else:
            ranking = "".join(
                sorted(ALPHABET, key=lambda c: (-letter_counts.get(c, 0), c))
            )
        return cls(rows=rows, initial_ranking=ranking)

    @classmethod
    def from_corpus(cls, text: str) -> "BigramModel":
        """Count adjacent letter pairs in ``text``.

        Text is lowercased; any non-letter breaks adjacency, so pairs never
        span a word boundary or punctuation.
        """
        pairs, letters = count_corpus(text)
        return cls.from_counts(pairs, letters)

    # -- file round trip ---------------------------------------------------

    @classmethod
    def load(cls, path: str | Path, initial_ranking: str | None = None) -> "BigramModel":
        """Read a table of ``prev next probability`` lines.

        Missing pairs default to probability 0.  The file stores only
        conditional rows, so the unconditional ranking must be supplied or
        the standard English order is assumed.
        """
        rows: dict[str, dict[str, float]] = {
            prev: {nxt: 0.0 for nxt in ALPHABET} for prev in ALPHABET
        }
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise BigramError(f"{path}:{lineno}: expected 'prev next prob'")
            prev, nxt, prob = parts
            cls._check_letter(prev)
            cls._check_letter(nxt)
            rows[prev][nxt] = float(prob)
        return cls(rows=rows, initial_ranking=initial_ranking or ENGLISH_LETTER_ORDER)

    def save(self, path: str | Path) -> None:
        lines = [
            f"{prev} {nxt} {self.rows[prev][nxt]:.12f}"
            for prev in ALPHABET
            for nxt in ALPHABET
        ]
        Path(path).write_text("\n".join(lines) + "\n")


def count_corpus(text: str) -> tuple[Counter, Counter]:
    """Adjacent-pair and single-letter counts over lowercased text."""
    pairs: Counter = Counter()
    letters: Counter = Counter()
    prev: str | None = None
    for ch in text.lower():
        if ch in ALPHABET:
            letters[ch] += 1
            if prev is not None:
                pairs[(prev, ch)] += 1
            prev = ch
        else:
            prev = None
    return pairs, letters

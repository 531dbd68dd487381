"""Word-level tokenizer and the fixed-size vocabulary used by the predictor."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

UNK_TOKEN = "<unk>"
EOS_TOKEN = "<eos>"
UNK_INDEX = 0
EOS_INDEX = 1


class VocabError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip every non a-z character.

    Tokens that end up empty are dropped, so punctuation-only chunks vanish.
    """
    out = []
    for chunk in text.lower().split():
        word = "".join(ch for ch in chunk if "a" <= ch <= "z")
        if word:
            out.append(word)
    return out


@dataclass(frozen=True)
class Vocabulary:
    """Token <-> index table with reserved unknown and end-of-sentence slots."""

    words: tuple[str, ...]
    index: dict[str, int]

    def __post_init__(self) -> None:
        if len(self.words) < 3:
            raise VocabError("vocabulary needs at least one real word")
        if self.words[UNK_INDEX] != UNK_TOKEN or self.words[EOS_INDEX] != EOS_TOKEN:
            raise VocabError("reserved tokens must sit at indices 0 and 1")
        if len(set(self.words)) != len(self.words):
            raise VocabError("duplicate words in vocabulary")

    @classmethod
    def build(cls, corpus: str | Iterable[str], max_size: int = 8000) -> "Vocabulary":
        """Keep the most frequent words; ties resolve alphabetically.

        ``corpus`` is either raw text or pre-tokenized words.  Two slots are
        reserved, so at most ``max_size - 2`` real words survive.
        """
        if max_size < 3:
            raise VocabError("max_size must leave room for at least one word")
        tokens = tokenize(corpus) if isinstance(corpus, str) else list(corpus)
        counts = Counter(tokens)
        counts.pop(UNK_TOKEN, None)
        counts.pop(EOS_TOKEN, None)
        kept = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[: max_size - 2]
        words = (UNK_TOKEN, EOS_TOKEN, *[w for w, _ in kept])
        return cls(words=words, index={w: i for i, w in enumerate(words)})

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def id_of(self, word: str) -> int:
        return self.index.get(word, UNK_INDEX)

    def word_of(self, idx: int) -> str:
        return self.words[idx]

    def encode(self, words: Sequence[str]) -> list[int]:
        return [self.id_of(w) for w in words]

    def decode(self, ids: Sequence[int]) -> list[str]:
        return [self.words[i] for i in ids]

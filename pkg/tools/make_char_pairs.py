"""Regenerate the bundled letter-pair probability table.

The table is handcrafted to mirror well-known English digram structure:
each row lists that letter's strong continuations with descending weights,
everything unnamed shares a small tail weight, and a few pairs that
essentially never occur in English get hard zeros.  Rows are normalized
before writing.

Usage: python tools/make_char_pairs.py [out_path]
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mindtype.bigram import ALPHABET, BigramModel  # noqa: E402

TAIL_WEIGHT = 4.0

# Strong continuations per previous letter, most likely first.
LEADERS: dict[str, list[str]] = {
    "a": list("ntsrlcdmgbivy"),
    "b": list("elouaryis"),
    "c": list("oahetiklruy"),
    "d": list("eioausryl"),
    # row "e" is fully hand-set below
    "f": list("oieraut l".replace(" ", "")),
    "g": list("ehoariuls"),
    "h": list("eaioutryn"),
    "i": list("ntscolmder"),
    "j": list("uoaei"),
    "k": list("einslyaou"),
    "l": list("eilaoyuds"),
    "m": list("eaoipubys"),
    "n": list("dgetosaciu"),
    "o": list("nurftmwslp"),
    "p": list("eraolipu"),
    "q": list("u"),
    "r": list("eoiastyudn"),
    "s": list("teioasuhpc"),
    "t": list("heoiarusy"),
    "u": list("rtnslcpemg"),
    "v": list("eiaoyu"),
    "w": list("aiheonrsl"),
    "x": list("ptceiau"),
    "y": list("oestiampb"),
    "z": list("eaioyzl"),
}

# Descending weights handed out to a row's leaders, in order.
LEADER_WEIGHTS = [170.0, 130.0, 105.0, 90.0, 75.0, 60.0, 50.0, 40.0, 32.0, 26.0,
                  21.0, 17.0, 14.0]

# Pairs that get probability exactly zero (per-row set of next letters).
ZERO_NEXT: dict[str, str] = {
    "j": "bcdfghjklmnpqstvwxz",
    "q": "bcdfghjklmnpqrstvwxyz",
    "v": "bcdfghjkmnpqtvwxz",
    "x": "bdgjkqvxz",
    "z": "cdfgjknpqrstvwx",
    "e": "z",
}

# The e-row is pinned exactly: six leaders r,d,s,n,a,t in that order, then
# a realistic spread with b tiny and z zero.
E_ROW_WEIGHTS: dict[str, float] = {
    "r": 145.0, "d": 125.0, "s": 115.0, "n": 105.0, "a": 85.0, "t": 70.0,
    "l": 55.0, "c": 50.0, "m": 42.0, "e": 40.0, "v": 30.0, "p": 25.0,
    "i": 20.0, "w": 18.0, "f": 17.0, "g": 15.0, "o": 14.0, "x": 12.0,
    "y": 11.0, "h": 8.0, "u": 6.0, "k": 5.0, "b": 2.3, "j": 1.0,
    "q": 0.5, "z": 0.0,
}


def build_rows() -> dict[str, dict[str, float]]:
    rows: dict[str, dict[str, float]] = {}
    for prev in ALPHABET:
        if prev == "e":
            weights = dict(E_ROW_WEIGHTS)
        else:
            weights = {nxt: TAIL_WEIGHT for nxt in ALPHABET}
            for rank, nxt in enumerate(LEADERS[prev]):
                weights[nxt] = LEADER_WEIGHTS[rank]
            for nxt in ZERO_NEXT.get(prev, ""):
                weights[nxt] = 0.0
        total = sum(weights.values())
        rows[prev] = {nxt: w / total for nxt, w in weights.items()}
    return rows


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "src" / "mindtype" / "data" / "char_pairs.txt"
    )
    out.parent.mkdir(parents=True, exist_ok=True)
    model = BigramModel(rows=build_rows())
    model.save(out)
    after_e = model.ranking_after("e")[:6]
    print(f"wrote {out} (ranking after 'e': {' '.join(after_e)})")


if __name__ == "__main__":
    main()

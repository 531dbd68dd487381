"""Dynamic circular keyboard: layout paging, focus navigation, committing.

The on-screen keyboard is two concentric rings of four keys around a center
space key.  Key labels form a 2x4 grid: six ranked letters, then backspace
and a "more" pager fixed in the last two cells of the outer ring.  After
each committed letter the grid is rebuilt from the bigram ranking for that
letter, so the likeliest continuations are always one or two moves away.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .bigram import ALPHABET, BigramModel

BACKSPACE = "←"
MORE = "more"
SPACE = " "

RING_SLOTS = 4
LETTERS_PER_PAGE = 6
PAGE_COUNT = -(-len(ALPHABET) // LETTERS_PER_PAGE)  # 5


class NavCommand(Enum):
    LEFT = "Left"
    RIGHT = "Right"
    PULL = "Pull"
    PUSH = "Push"


class Ring(Enum):
    INNER = "inner"
    OUTER = "outer"


class Section(Enum):
    KEYBOARD = "keyboard"
    HELPING_VERBS = "helping_verbs"
    PREDICTIONS = "predictions"


class KeyboardError(ValueError):
    pass


@dataclass(frozen=True)
class Focus:
    """Highlighted position: the center key, a ring slot, or a list item."""

    kind: str  # "center" | "ring" | "item"
    ring: Ring | None = None
    slot: int = 0
    index: int = 0

    @classmethod
    def center(cls) -> "Focus":
        return cls(kind="center")

    @classmethod
    def on_ring(cls, ring: Ring, slot: int) -> "Focus":
        return cls(kind="ring", ring=ring, slot=slot % RING_SLOTS)

    @classmethod
    def item(cls, index: int) -> "Focus":
        return cls(kind="item", index=index)


@dataclass(frozen=True)
class KeyboardLayout:
    """One visible page of the ranked alphabet.

    ``ranking`` is the full 26-letter order for ``context_char`` so the
    layout can page itself without consulting the model again.
    """

    ranking: str
    page_index: int = 0
    context_char: str | None = None

    def __post_init__(self) -> None:
        if sorted(self.ranking) != sorted(ALPHABET):
            raise KeyboardError("ranking must be a permutation of a-z")
        if not 0 <= self.page_index < PAGE_COUNT:
            raise KeyboardError(f"page index out of range: {self.page_index}")

    @property
    def letters(self) -> tuple[str, ...]:
        """Six letters for this page; the last page wraps around to rank 0."""
        start = self.page_index * LETTERS_PER_PAGE
        doubled = self.ranking + self.ranking
        return tuple(doubled[start : start + LETTERS_PER_PAGE])

    @property
    def keys(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """2x4 label grid: row 0 = inner ring, row 1 = outer ring."""
        ls = self.letters
        return (ls[0:4], (ls[4], ls[5], BACKSPACE, MORE))

    def key_at(self, focus: Focus) -> str:
        if focus.kind == "center":
            return SPACE
        if focus.kind != "ring":
            raise KeyboardError("only center/ring focus points at a key")
        row = 0 if focus.ring is Ring.INNER else 1
        return self.keys[row][focus.slot]


@dataclass(frozen=True)
class KeyboardState:
    layout: KeyboardLayout
    focus: Focus
    text: str = ""
    section: Section = Section.KEYBOARD

    def __post_init__(self) -> None:
        if self.focus.kind == "center" and self.section is not Section.KEYBOARD:
            raise KeyboardError("center focus only exists in the keyboard section")


def initial_layout(model: BigramModel) -> KeyboardLayout:
    return KeyboardLayout(ranking=model.ranking_after(None))


def relayout_after(model: BigramModel, selected: str) -> KeyboardLayout:
    return KeyboardLayout(ranking=model.ranking_after(selected), context_char=selected)


def page_more(layout: KeyboardLayout) -> KeyboardLayout:
    return replace(layout, page_index=(layout.page_index + 1) % PAGE_COUNT)


def initial_state(model: BigramModel) -> KeyboardState:
    return KeyboardState(layout=initial_layout(model), focus=Focus.center())


def _layout_for_context(model: BigramModel, text: str) -> KeyboardLayout:
    last = text[-1:] if text else ""
    if last in ALPHABET and last:
        return relayout_after(model, last)
    return initial_layout(model)


def move_focus(state: KeyboardState, cmd: NavCommand) -> KeyboardState:
    """Rotate or switch rings; moves that fall off an edge change nothing.

    Left/Right rotate within the current ring, Pull walks outward
    (center -> inner -> outer) and Push walks back inward.
    """
    if state.section is not Section.KEYBOARD:
        raise KeyboardError("move_focus applies to the keyboard section only")
    f = state.focus
    if cmd in (NavCommand.LEFT, NavCommand.RIGHT):
        if f.kind != "ring":
            return state
        step = 1 if cmd is NavCommand.RIGHT else -1
        return replace(state, focus=Focus.on_ring(f.ring, f.slot + step))
    if cmd is NavCommand.PULL:
        if f.kind == "center":
            return replace(state, focus=Focus.on_ring(Ring.INNER, 0))
        if f.ring is Ring.INNER:
            return replace(state, focus=Focus.on_ring(Ring.OUTER, f.slot))
        return state
    # PUSH
    if f.kind == "ring" and f.ring is Ring.OUTER:
        return replace(state, focus=Focus.on_ring(Ring.INNER, f.slot))
    if f.kind == "ring" and f.ring is Ring.INNER:
        return replace(state, focus=Focus.center())
    return state


def commit_selection(
    state: KeyboardState, select: int, model: BigramModel
) -> KeyboardState:
    """Apply one confirmed selection to the focused key.

    Letters append and re-rank the layout, backspace deletes and re-ranks
    from the new tail, "more" pages, and the center key commits a space.
    After anything that changes the layout the focus returns to center.
    """
    if not select:
        return state
    if state.section is not Section.KEYBOARD:
        raise KeyboardError("key selection applies to the keyboard section only")
    key = state.layout.key_at(state.focus)
    if key == SPACE:
        return replace(
            state,
            text=state.text + SPACE,
            layout=initial_layout(model),
            focus=Focus.center(),
        )
    if key == MORE:
        return replace(state, layout=page_more(state.layout))
    if key == BACKSPACE:
        text = state.text[:-1]
        return replace(
            state,
            text=text,
            layout=_layout_for_context(model, text),
            focus=Focus.center(),
        )
    return replace(
        state,
        text=state.text + key,
        layout=relayout_after(model, key),
        focus=Focus.center(),
    )


def shift_section(state: KeyboardState, kind: str) -> KeyboardState:
    """Jump between the keyboard and the side panels.

    LookRight opens the helping-verb panel, LookLeft the prediction panel;
    either gesture from a panel toggles back to the keyboard.
    """
    if kind not in ("LookLeft", "LookRight"):
        raise KeyboardError(f"unknown motor imagery event: {kind!r}")
    if state.section is not Section.KEYBOARD:
        return replace(state, section=Section.KEYBOARD, focus=Focus.center())
    target = Section.HELPING_VERBS if kind == "LookRight" else Section.PREDICTIONS
    return replace(state, section=target, focus=Focus.item(0))


def move_section_focus(state: KeyboardState, cmd: NavCommand, n_items: int) -> KeyboardState:
    """Cycle through a side panel's entries with Left/Right."""
    if state.section is Section.KEYBOARD:
        raise KeyboardError("use move_focus inside the keyboard section")
    if n_items <= 0 or cmd in (NavCommand.PULL, NavCommand.PUSH):
        return state
    step = 1 if cmd is NavCommand.RIGHT else -1
    return replace(state, focus=Focus.item((state.focus.index + step) % n_items))


def commit_word(state: KeyboardState, word: str, model: BigramModel) -> KeyboardState:
    """Accept a suggested word: it completes any partially typed word.

    The trailing fragment (if any) is replaced by the full word plus a
    space, and the keyboard resets for the next word.
    """
    idx = state.text.rfind(SPACE)
    base = state.text[: idx + 1] if idx >= 0 else ""
    return KeyboardState(
        layout=initial_layout(model),
        focus=Focus.center(),
        text=base + word + SPACE,
        section=Section.KEYBOARD,
    )

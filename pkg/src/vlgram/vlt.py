"""Voice-leading type encoding and its plain-text pattern notation.

A chord is reduced to an ordered triple of facts: the set of distinct
non-zero interval classes sounding above the bass (octave doublings and
voice permutations discarded), the interval class carried by the highest
voice, and the melodic interval class of the bass relative to the
previous chord. All intervals are semitones modulo 12.

The text notation writes each chord as three comma-separated slots in
angle brackets, e.g. ``<5,9*,_>``. A slot is an interval class or ``_``
for an unused slot; the asterisk marks the interval class of the top
voice, and a chord with no asterisk has its top voice doubling the bass
at the unison or octave. Chords are joined by the incoming bass interval
in square brackets: ``<5,9*,_>[0]<4,7*,10>[5]<4,_,_>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

SLOT_COUNT = 3

VltKey = tuple[tuple[int, ...], "int | None", "int | None"]
PatternKey = tuple[VltKey, ...]


class PatternSyntaxError(ValueError):
    """Raised when pattern text does not match the chord grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Vlt:
    """One chord: interval classes above the bass, top-voice marker, bass motion.

    ``intervals`` is sorted ascending and never contains 0 or duplicates.
    ``top`` is the interval class of the highest voice, or None when the
    top voice doubles the bass. ``bass_motion`` is the interval class from
    the previous bass to this one, None for the first chord of a sequence.
    """

    intervals: tuple[int, ...]
    top: int | None = None
    bass_motion: int | None = None

    def __post_init__(self):
        ivs = self.intervals
        if len(ivs) > SLOT_COUNT:
            raise ValueError(f"more than {SLOT_COUNT} interval classes: {ivs}")
        if any(not 1 <= iv <= 11 for iv in ivs):
            raise ValueError(f"interval classes must be 1..11: {ivs}")
        if list(ivs) != sorted(set(ivs)):
            raise ValueError(f"interval classes must be sorted and distinct: {ivs}")
        if self.top is not None and self.top not in ivs:
            raise ValueError(f"top marker {self.top} not among intervals {ivs}")
        if self.bass_motion is not None and not 0 <= self.bass_motion <= 11:
            raise ValueError(f"bass motion must be 0..11: {self.bass_motion}")

    @property
    def key(self) -> VltKey:
        return (self.intervals, self.top, self.bass_motion)

    @classmethod
    def from_key(cls, key: VltKey) -> "Vlt":
        return cls(*key)

    @property
    def pitch_class_count(self) -> int:
        """Distinct pitch classes in the chord: the bass plus one per interval."""
        return 1 + len(self.intervals)

    def __str__(self) -> str:
        return format_chord(self)


@dataclass(frozen=True)
class VltPattern:
    """An ordered sequence of chords; only the first has undefined bass motion."""

    chords: tuple[Vlt, ...]

    def __post_init__(self):
        if not self.chords:
            raise ValueError("pattern must contain at least one chord")
        if self.chords[0].bass_motion is not None:
            raise ValueError("first chord must have undefined bass motion")
        for i, chord in enumerate(self.chords[1:], start=2):
            if chord.bass_motion is None:
                raise ValueError(f"chord {i} is missing its bass motion")

    def __len__(self) -> int:
        return len(self.chords)

    @property
    def key(self) -> PatternKey:
        return tuple(c.key for c in self.chords)

    @classmethod
    def from_key(cls, key: PatternKey) -> "VltPattern":
        return cls(tuple(Vlt.from_key(k) for k in key))

    def __str__(self) -> str:
        return format_pattern(self)


def _reduce_slots(values: Iterable[int], starred: int | None,
                  bass_motion: int | None) -> Vlt:
    """Canonicalize raw chord slots: drop octave doublings, deduplicate, sort.

    A starred 0 means the top voice doubles the bass, which the canonical
    form expresses by carrying no star at all.
    """
    intervals = tuple(sorted({v for v in values if v != 0}))
    top = starred if starred not in (None, 0) else None
    return Vlt(intervals, top, bass_motion)


def encode_vlt(prev, cur) -> Vlt:
    """Encode a slice (and its predecessor, for the bass motion) as a Vlt.

    ``prev`` and ``cur`` need only expose ``bass``, ``top`` and ``pitches``;
    ``prev`` may be None for the first slice of a piece.
    """
    bass = cur.bass
    values = {(p - bass) % 12 for p in cur.pitches}
    top_ic = (cur.top - bass) % 12
    motion = None if prev is None else (cur.bass - prev.bass) % 12
    return _reduce_slots(values, top_ic, motion)


def encode_piece(slices: Sequence) -> list[Vlt]:
    """Encode a slice sequence, chaining bass motions from slice to slice."""
    out = []
    prev = None
    for s in slices:
        out.append(encode_vlt(prev, s))
        prev = s
    return out


def format_chord(vlt: Vlt) -> str:
    slots = [f"{iv}*" if iv == vlt.top else str(iv) for iv in vlt.intervals]
    slots += ["_"] * (SLOT_COUNT - len(slots))
    return "<" + ",".join(slots) + ">"


def format_pattern(pattern: VltPattern) -> str:
    parts = [format_chord(pattern.chords[0])]
    for chord in pattern.chords[1:]:
        parts.append(f"[{chord.bass_motion}]")
        parts.append(format_chord(chord))
    return "".join(parts)


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_int(text: str, i: int) -> tuple[int, int]:
    start = i
    while i < len(text) and text[i].isdigit():
        i += 1
    if i == start:
        raise PatternSyntaxError("expected an interval class", start)
    value = int(text[start:i])
    if value > 11:
        raise PatternSyntaxError(f"interval class {value} outside 0..11", start)
    return value, i


def _parse_chord_slots(text: str, i: int) -> tuple[list[tuple[int | None, bool]], int]:
    if i >= len(text) or text[i] != "<":
        raise PatternSyntaxError("expected '<'", i)
    i += 1
    slots: list[tuple[int | None, bool]] = []
    stars = 0
    for slot_idx in range(SLOT_COUNT):
        if i < len(text) and text[i] == "_":
            slots.append((None, False))
            i += 1
        else:
            value, i = _parse_int(text, i)
            starred = i < len(text) and text[i] == "*"
            if starred:
                stars += 1
                if stars > 1:
                    raise PatternSyntaxError("chord has more than one starred slot", i)
                i += 1
            slots.append((value, starred))
        if slot_idx < SLOT_COUNT - 1:
            if i >= len(text) or text[i] != ",":
                raise PatternSyntaxError("expected ','", i)
            i += 1
    if i >= len(text) or text[i] != ">":
        raise PatternSyntaxError("expected '>'", i)
    return slots, i + 1


def parse_pattern(text: str) -> VltPattern:
    """Parse pattern text into a VltPattern, canonicalizing the chords.

    Whitespace is tolerated between chords and bracketed intervals, never
    inside them. Formatting the result yields the canonical spelling.
    """
    i = _skip_ws(text, 0)
    slots, i = _parse_chord_slots(text, i)
    chords = [_build_chord(slots, None)]
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            break
        if text[i] != "[":
            raise PatternSyntaxError("unexpected trailing characters", i)
        motion_pos = i + 1
        motion, j = _parse_int(text, motion_pos)
        if j >= len(text) or text[j] != "]":
            raise PatternSyntaxError("expected ']'", j)
        i = _skip_ws(text, j + 1)
        if i >= len(text) or text[i] != "<":
            raise PatternSyntaxError("dangling interval: expected a chord", i)
        slots, i = _parse_chord_slots(text, i)
        chords.append(_build_chord(slots, motion))
    return VltPattern(tuple(chords))


def _build_chord(slots: list[tuple[int | None, bool]], motion: int | None) -> Vlt:
    values = [v for v, _ in slots if v is not None]
    starred = next((v for v, s in slots if s), None)
    return _reduce_slots(values, starred, motion)

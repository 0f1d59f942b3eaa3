"""Direction vectors, V-shape splitting and line-type classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .traversal import DIRECTIONS, Segment

__all__ = [
    "LineType",
    "ClassificationError",
    "TypedSegment",
    "direction_code",
    "opposite",
    "direction_vector",
    "split_directions",
    "classify",
    "split_segment",
    "typed_segments",
]

_CODE_OF = {off: code for code, off in DIRECTIONS.items()}


class LineType(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    RIGHT_DIAGONAL = "right_diagonal"
    LEFT_DIAGONAL = "left_diagonal"

    def __str__(self):
        return self.value


# feature-vector order
LINE_TYPES = (LineType.HORIZONTAL, LineType.VERTICAL, LineType.RIGHT_DIAGONAL, LineType.LEFT_DIAGONAL)

_BUCKET = {
    2: LineType.RIGHT_DIAGONAL,
    6: LineType.RIGHT_DIAGONAL,
    4: LineType.LEFT_DIAGONAL,
    8: LineType.LEFT_DIAGONAL,
    1: LineType.VERTICAL,
    5: LineType.VERTICAL,
    3: LineType.HORIZONTAL,
    7: LineType.HORIZONTAL,
}


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class TypedSegment:
    """A sub-segment after splitting, with its line type (``None`` for a lone pixel)."""

    pixels: tuple
    codes: tuple
    line_type: LineType | None

    def __len__(self):
        return len(self.pixels)


def direction_code(a, b) -> int:
    try:
        return _CODE_OF[(b[0] - a[0], b[1] - a[1])]
    except KeyError:
        raise ValueError(f"{a} and {b} are not 8-neighbours") from None


def opposite(code: int) -> int:
    return (code + 3) % 8 + 1


def direction_vector(seg) -> tuple:
    """Per-step direction codes; a single-pixel segment gives ``()``."""
    px = seg.pixels if isinstance(seg, Segment) else tuple(seg)
    return tuple(direction_code(a, b) for a, b in zip(px, px[1:]))


def _breaks(prev: int, nxt: int, seen: set) -> bool:
    if prev in (6, 2) and nxt in (8, 4):
        return True
    if prev in (8, 4) and nxt in (6, 2):
        return True
    return nxt not in seen and len(seen) >= 3


def split_directions(dv) -> list:
    """Cut a direction vector where the stroke turns between diagonals or
    where a fourth distinct code would enter the running piece."""
    dv = tuple(dv)
    if not dv:
        return []
    pieces = [[dv[0]]]
    seen = {dv[0]}
    for prev, nxt in zip(dv, dv[1:]):
        if _breaks(prev, nxt, seen):
            pieces.append([nxt])
            seen = {nxt}
        else:
            pieces[-1].append(nxt)
            seen.add(nxt)
    return [tuple(p) for p in pieces]


def classify(dv) -> LineType:
    """Majority bucket of the codes; ties go to the bucket seen first."""
    dv = tuple(dv)
    if not dv:
        raise ClassificationError("cannot classify an empty direction vector")
    tally = Counter(_BUCKET[c] for c in dv)
    first = {}
    for i, c in enumerate(dv):
        first.setdefault(_BUCKET[c], i)
    return max(tally, key=lambda t: (tally[t], -first[t]))


def split_segment(seg) -> list:
    """Split a traversed segment into typed sub-segments.

    The pivot pixel where a split happens stays with the earlier piece, so
    pixel counts of the pieces add up to the segment length.
    """
    px = seg.pixels if isinstance(seg, Segment) else tuple(seg)
    dv = direction_vector(px)
    if not dv:
        return [TypedSegment(px, (), None)]
    out = []
    pos = 0
    for k, piece in enumerate(split_directions(dv)):
        lo = 0 if k == 0 else pos + 1
        hi = pos + len(piece)
        out.append(TypedSegment(px[lo:hi + 1], piece, classify(piece)))
        pos = hi
    return out


def typed_segments(segments) -> list:
    return [t for s in segments for t in split_segment(s)]

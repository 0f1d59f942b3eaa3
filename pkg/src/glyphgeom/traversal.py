"""Skeleton pixel classification and per-zone stroke traversal.

Neighbour positions use the clockwise direction codes::

    4 5 6
    3 C 7
    2 1 8

so code 1 is the pixel directly below, 7 the pixel to the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ingest import BitGrid

__all__ = [
    "DIRECTIONS",
    "Segment",
    "PixelClassification",
    "TraversalResult",
    "neighbours",
    "is_intersection",
    "classify_pixels",
    "traverse",
    "extract_segments",
]

# code -> (drow, dcol)
DIRECTIONS = {
    1: (1, 0),
    2: (1, -1),
    3: (0, -1),
    4: (-1, -1),
    5: (-1, 0),
    6: (-1, 1),
    7: (0, 1),
    8: (1, 1),
}
_OFFSETS = tuple(DIRECTIONS.values())
_CODE_OF = {off: code for code, off in DIRECTIONS.items()}


@dataclass(frozen=True)
class Segment:
    """Ordered run of 8-adjacent pixels (1-based ``(row, col)``)."""

    pixels: tuple

    def __post_init__(self):
        object.__setattr__(self, "pixels", tuple(tuple(p) for p in self.pixels))

    def __len__(self):
        return len(self.pixels)

    def __iter__(self):
        return iter(self.pixels)

    def __getitem__(self, i):
        return self.pixels[i]

    def reversed(self) -> "Segment":
        return Segment(self.pixels[::-1])

    def shifted(self, drow: int, dcol: int) -> "Segment":
        return Segment((r + drow, c + dcol) for r, c in self.pixels)


@dataclass(frozen=True)
class PixelClassification:
    starters: list
    intersections: list


@dataclass
class TraversalResult:
    segments: list
    starters: list
    intersections: list
    # minor-starters list contents right after each segment was closed
    minor_history: list = field(default_factory=list)


def _padded(img: BitGrid) -> np.ndarray:
    # 1-pixel background frame so 1-based coordinates index directly
    return np.pad(img.data, 1)


def _nbrs(pad: np.ndarray, p):
    r, c = p
    return [(r + dr, c + dc) for dr, dc in _OFFSETS if pad[r + dr, c + dc]]


def neighbours(img: BitGrid, p):
    """Foreground neighbours of ``p`` in clockwise code order starting below."""
    r, c = p
    if not (1 <= r <= img.rows and 1 <= c <= img.cols):
        raise IndexError(f"pixel {p} outside {img.rows}x{img.cols} grid")
    return _nbrs(_padded(img), p)


def is_intersection(offsets) -> bool:
    """Junction test on the neighbour offsets of a pixel.

    Direct neighbours share an edge with the centre, diagonal ones a corner.
    A direct and a diagonal neighbour are adjacent when they share an edge.
    """
    n = len(offsets)
    if n <= 2:
        return False
    if n >= 5:
        return True
    direct = [o for o in offsets if abs(o[0]) + abs(o[1]) == 1]
    diag = [o for o in offsets if abs(o[0]) + abs(o[1]) == 2]

    def adj(a, b):
        return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1

    if n == 3:
        return not any(adj(d, g) for d in direct for g in diag)
    # n == 4: every neighbour must be paired with one of the other kind
    paired = all(any(adj(d, g) for g in diag) for d in direct) and all(
        any(adj(d, g) for d in direct) for g in diag
    )
    return not paired


def _classify(pad: np.ndarray, fg):
    starters, inters = [], []
    for p in fg:
        nb = _nbrs(pad, p)
        if len(nb) == 1:
            starters.append(p)
        elif is_intersection([(q[0] - p[0], q[1] - p[1]) for q in nb]):
            inters.append(p)
    return starters, inters


def classify_pixels(zone: BitGrid) -> PixelClassification:
    """Starters (one neighbour) and intersections, both in scan order."""
    s, i = _classify(_padded(zone), zone.foreground())
    return PixelClassification(s, i)


class _Walker:
    def __init__(self, zone: BitGrid):
        self.pad = _padded(zone)
        self.fg = zone.foreground()
        self.starters, inters = _classify(self.pad, self.fg)
        self.inters = set(inters)
        self.intersections = inters
        self.nb = {p: _nbrs(self.pad, p) for p in self.fg}
        self.visited = set()
        self.minor = {}  # insertion-ordered set, FIFO

    def push(self, pixels):
        for q in pixels:
            if q not in self.visited and q not in self.minor:
                self.minor[q] = None

    def unvisited(self, p):
        return [q for q in self.nb[p] if q not in self.visited]

    def visit(self, p):
        self.visited.add(p)
        self.minor.pop(p, None)

    def walk(self, start):
        seg = [start]
        self.visit(start)
        prev, cur = None, start
        while True:
            free = self.unvisited(cur)
            if prev is None:
                # segment start: lowest direction code wins, the rest wait
                if not free:
                    break
                nxt = free[0]
                self.push(free[1:])
            elif len(self.nb[cur]) > 2:
                ahead = (2 * cur[0] - prev[0], 2 * cur[1] - prev[1])
                if ahead not in free:
                    self.push(free)
                    break
                nxt = ahead
                self.push(q for q in free if q != ahead)
            else:
                if not free:
                    break
                nxt = free[0]
            prev, cur = cur, nxt
            was_minor = cur in self.minor
            seg.append(cur)
            self.visit(cur)
            if cur in self.inters or was_minor:
                self.push(self.unvisited(cur))
                break
        return Segment(seg)

    def run(self) -> TraversalResult:
        out = TraversalResult([], list(self.starters), list(self.intersections))

        def emit(start):
            out.segments.append(self.walk(start))
            out.minor_history.append(list(self.minor))

        for s in self.starters:
            if s not in self.visited:
                emit(s)
        for p in self.fg:
            # drain minor starters; an unvisited leftover (closed loop) seeds a new one
            while self.minor:
                m = next(iter(self.minor))
                del self.minor[m]
                if m not in self.visited:
                    emit(m)
            if p not in self.visited:
                emit(p)
        return out


def traverse(zone: BitGrid) -> TraversalResult:
    """Run the full traversal on one zone and keep the bookkeeping."""
    return _Walker(zone).run()


def extract_segments(zone: BitGrid) -> list:
    """Split the zone's skeleton into line segments covering every foreground pixel once."""
    return _Walker(zone).run().segments

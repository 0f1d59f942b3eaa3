"""Bounding-box crop and fixed zoning schemes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import BitGrid

__all__ = ["EmptySkeletonError", "Zone", "ZoneSet", "SCHEMES", "crop_box", "universe_of_discourse", "zone", "split_points"]

SCHEMES = ("grid3x3", "horizontal3")


class EmptySkeletonError(ValueError):
    def __init__(self, message="empty skeleton"):
        super().__init__(message)


@dataclass(frozen=True)
class Zone:
    """One window of a zoning.  Ranges are 0-based, half-open, in source pixels."""

    index: int
    rows: tuple
    cols: tuple
    grid: BitGrid

    @property
    def origin(self):
        """1-based source coordinate of the zone's top-left cell."""
        return (self.rows[0] + 1, self.cols[0] + 1)

    def to_source(self, rc):
        return (rc[0] + self.rows[0], rc[1] + self.cols[0])


@dataclass(frozen=True)
class ZoneSet:
    scheme: str
    zones: tuple

    def __len__(self):
        return len(self.zones)

    def __iter__(self):
        return iter(self.zones)

    def __getitem__(self, i):
        return self.zones[i]


def crop_box(img: BitGrid):
    """0-based half-open ``(r0, r1, c0, c1)`` of the foreground bounding box."""
    a = img.data
    if not a.any():
        raise EmptySkeletonError()
    rows = np.flatnonzero(a.any(axis=1))
    cols = np.flatnonzero(a.any(axis=0))
    return int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1


def universe_of_discourse(img: BitGrid) -> BitGrid:
    """Crop ``img`` to the smallest box holding all foreground pixels."""
    r0, r1, c0, c1 = crop_box(img)
    return BitGrid(img.data[r0:r1, c0:c1])


def split_points(n: int, parts: int = 3):
    """Boundaries ``floor(i * n / parts)`` for i = 0..parts."""
    return [i * n // parts for i in range(parts + 1)]


def zone(img: BitGrid, scheme: str = "grid3x3") -> ZoneSet:
    """Partition ``img`` into 9 windows (row-major) or 3 horizontal strips.

    Later windows absorb the remainder when a dimension is not divisible by
    three; windows may have zero extent on images under 3 pixels wide/tall.
    """
    rb = split_points(img.rows)
    if scheme == "grid3x3":
        cb = split_points(img.cols)
    elif scheme == "horizontal3":
        cb = [0, img.cols]
    else:
        raise ValueError(f"unknown zoning scheme {scheme!r}; expected one of {SCHEMES}")
    a = img.data
    zones = []
    for i in range(3):
        for j in range(len(cb) - 1):
            r0, r1, c0, c1 = rb[i], rb[i + 1], cb[j], cb[j + 1]
            zones.append(Zone(len(zones), (r0, r1), (c0, c1), BitGrid(a[r0:r1, c0:c1])))
    return ZoneSet(scheme, tuple(zones))

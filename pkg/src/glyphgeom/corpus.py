"""Synthetic A-Z skeleton corpus standing in for a handwriting database.

Glyphs are drawn from stroke templates on a 16x16 reference grid, then
jittered by translation and anisotropic rescaling.  Every random draw is
keyed on ``(seed, label, split, instance)`` so a glyph does not depend on
generation order.
"""

from __future__ import annotations

import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classify import Dataset
from .features import extract_features
from .ingest import BitGrid, thin

__all__ = [
    "GlyphTemplate",
    "TEMPLATES",
    "LABELS",
    "REF_SIZE",
    "line_pixels",
    "render",
    "perturb",
    "glyph_seed",
    "generate_glyphs",
    "build_corpus",
]

REF_SIZE = 16
MIN_SIZE = 8
LABELS = tuple(string.ascii_uppercase)


@dataclass(frozen=True)
class GlyphTemplate:
    label: str
    strokes: tuple  # ((r0, c0), (r1, c1)) pairs on the reference grid


def _poly(*pts):
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


_BOWL_C = [(0, 13), (0, 4), (3, 1), (12, 1), (15, 4), (15, 13)]

_STROKES = {
    "A": _poly((15, 1), (0, 7), (15, 13)) + _poly((9, 3), (9, 11)),
    "B": _poly((0, 2), (15, 2))
    + _poly((0, 2), (0, 10), (2, 12), (5, 12), (7, 10), (7, 2))
    + _poly((7, 10), (9, 13), (13, 13), (15, 11), (15, 2)),
    "C": _poly(*_BOWL_C),
    "D": _poly((0, 2), (15, 2)) + _poly((0, 2), (0, 8), (5, 13), (10, 13), (15, 8), (15, 2)),
    "E": _poly((0, 13), (0, 2), (15, 2), (15, 13)) + _poly((7, 2), (7, 11)),
    "F": _poly((0, 13), (0, 2), (15, 2)) + _poly((7, 2), (7, 11)),
    "G": _poly(*_BOWL_C) + _poly((15, 13), (8, 13), (8, 8)),
    "H": _poly((0, 2), (15, 2)) + _poly((0, 13), (15, 13)) + _poly((7, 2), (7, 13)),
    "I": _poly((0, 7), (15, 7)),
    "J": _poly((0, 11), (12, 11), (15, 8), (15, 4), (12, 1)),
    "K": _poly((0, 2), (15, 2)) + _poly((0, 13), (7, 2), (15, 13)),
    "L": _poly((0, 2), (15, 2), (15, 13)),
    "M": _poly((15, 1), (0, 1), (9, 7), (0, 13), (15, 13)),
    "N": _poly((15, 2), (0, 2), (15, 13), (0, 13)),
    "O": _poly((0, 2), (0, 13), (15, 13), (15, 2), (0, 2)),
    "P": _poly((15, 2), (0, 2), (0, 11), (2, 13), (6, 13), (8, 11), (8, 2)),
    "Q": _poly((0, 2), (0, 13), (15, 13), (15, 2), (0, 2)) + _poly((10, 8), (15, 15)),
    "R": _poly((15, 2), (0, 2), (0, 11), (2, 13), (6, 13), (8, 11), (8, 2)) + _poly((8, 7), (15, 13)),
    "S": _poly((0, 13), (0, 2), (7, 2), (7, 13), (15, 13), (15, 2)),
    "T": _poly((0, 1), (0, 14)) + _poly((0, 7), (15, 7)),
    "U": _poly((0, 2), (12, 2), (15, 5), (15, 10), (12, 13), (0, 13)),
    "V": _poly((0, 1), (15, 7), (0, 13)),
    "W": _poly((0, 0), (15, 3), (5, 7), (15, 11), (0, 14)),
    "X": _poly((0, 1), (15, 14)) + _poly((0, 14), (15, 1)),
    "Y": _poly((0, 1), (7, 7), (0, 13)) + _poly((7, 7), (15, 7)),
    "Z": _poly((0, 1), (0, 14), (15, 1), (15, 14)),
}

TEMPLATES = {lab: GlyphTemplate(lab, tuple(s)) for lab, s in _STROKES.items()}


def line_pixels(r0, c0, r1, c1):
    """Integer (Bresenham) line from ``(r0, c0)`` to ``(r1, c1)``, 8-connected."""
    dr, dc = abs(r1 - r0), abs(c1 - c0)
    sr = 1 if r1 >= r0 else -1
    sc = 1 if c1 >= c0 else -1
    err = dc - dr
    r, c = r0, c0
    out = [(r, c)]
    while (r, c) != (r1, c1):
        e2 = 2 * err
        if e2 > -dr:
            err -= dr
            c += sc
        if e2 < dc:
            err += dc
            r += sr
        out.append((r, c))
    return out


def _size(size):
    return (size, size) if np.isscalar(size) else tuple(size)


def render(template: GlyphTemplate, size=16) -> BitGrid:
    """Rasterize the template strokes onto a ``size`` grid and thin the result."""
    rows, cols = _size(size)
    if rows < MIN_SIZE or cols < MIN_SIZE:
        raise ValueError(f"render size {rows}x{cols} is below {MIN_SIZE}x{MIN_SIZE}; strokes would merge")
    fr = (rows - 1) / (REF_SIZE - 1)
    fc = (cols - 1) / (REF_SIZE - 1)
    a = np.zeros((rows, cols), dtype=bool)
    for (r0, c0), (r1, c1) in template.strokes:
        p0 = (round(r0 * fr), round(c0 * fc))
        p1 = (round(r1 * fr), round(c1 * fc))
        for r, c in line_pixels(*p0, *p1):
            a[r, c] = True
    return thin(BitGrid(a))


def _rescale(a: np.ndarray, sy: float, sx: float) -> np.ndarray:
    # Nearest-neighbour point mapping; each pair of adjacent source pixels
    # is joined by a line so strokes stay connected when stretched.
    h, w = a.shape
    out = np.zeros((round((h - 1) * sy) + 1, round((w - 1) * sx) + 1), dtype=bool)

    def m(r, c):
        return round(r * sy), round(c * sx)

    rs, cs = np.nonzero(a)
    for r, c in zip(rs.tolist(), cs.tolist()):
        p = m(r, c)
        out[p] = True
        for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < h and 0 <= cc < w and a[rr, cc]:
                for q in line_pixels(*p, *m(rr, cc)):
                    out[q] = True
    return out


def perturb(img: BitGrid, seed, shift: int = 0, scale: float = 0.0) -> BitGrid:
    """Random translation within ``±shift`` pixels and per-axis rescale within ``±scale`` percent.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts.
    """
    rng = np.random.default_rng(seed)
    dr, dc = rng.integers(-shift, shift + 1, size=2)
    sy, sx = 1.0 + rng.uniform(-scale, scale, size=2) / 100.0
    a = img.data
    if scale and a.any():
        a = thin(BitGrid(_rescale(a, sy, sx))).data
    if shift:
        h, w = a.shape
        canvas = np.zeros((h + 2 * shift, w + 2 * shift), dtype=bool)
        canvas[shift + dr:shift + dr + h, shift + dc:shift + dc + w] = a
        a = canvas
    return BitGrid(a)


def glyph_seed(seed: int, label: str, split: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, LABELS.index(label), split, index])


def generate_glyphs(n_train: int, n_test: int, seed: int, size: int = 24, shift: int = 3, scale: float = 15.0):
    """Yield ``(split, label, index, BitGrid)``; split is ``"train"`` or ``"test"``.

    Per label, train glyphs take indices ``0..n_train-1`` and test glyphs
    follow on from ``n_train``.
    """
    if n_train < 1 or n_test < 1:
        raise ValueError("per-label counts must be >= 1")
    base = {lab: render(TEMPLATES[lab], size) for lab in LABELS}
    for split, (sid, n, offset) in {"train": (0, n_train, 0), "test": (1, n_test, n_train)}.items():
        for lab in LABELS:
            for i in range(n):
                img = perturb(base[lab], glyph_seed(seed, lab, sid, i), shift, scale)
                yield split, lab, offset + i, img


def _featurize(job):
    split, lab, idx, img = job
    return split, extract_features(img, label=lab, source=f"corpus/{lab}/{idx}.pbm")


def build_corpus(n_train_per_label: int, n_test_per_label: int, seed: int, workers: int = 1, **kw):
    """Return ``(train, test)`` datasets of extracted feature vectors."""
    jobs = generate_glyphs(n_train_per_label, n_test_per_label, seed, **kw)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            done = list(ex.map(_featurize, jobs, chunksize=16))
    else:
        done = [_featurize(j) for j in jobs]
    train = Dataset(fv for split, fv in done if split == "train")
    test = Dataset(fv for split, fv in done if split == "test")
    return train, test

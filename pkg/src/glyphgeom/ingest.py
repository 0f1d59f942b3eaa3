"""Image input: Netpbm / text-matrix parsing, thresholding and Zhang-Suen thinning.

All externally visible pixel coordinates in this package are 1-based
``(row, col)`` pairs with ``(1, 1)`` at the top-left corner.  Internally
the raster is a read-only boolean :class:`numpy.ndarray`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BitGrid",
    "GrayGrid",
    "ParseError",
    "parse_image",
    "detect_format",
    "to_pbm",
    "to_pgm",
    "to_text",
    "binarize",
    "thin",
    "load_bitgrid",
]

_WS = b" \t\n\r\v\f"


class ParseError(ValueError):
    """Raised when an image payload is malformed.

    ``offset`` is the byte position at which the problem was detected.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class BitGrid:
    """Immutable rectangular binary raster; ``True`` marks foreground (ink).

    Zero-extent grids are allowed so that degenerate zones can be
    represented; parsers never produce them.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=bool, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"BitGrid needs a 2-D array, got shape {arr.shape}")
        arr.flags.writeable = False
        self._data = arr

    @classmethod
    def from_coords(cls, shape, coords):
        """Build a grid of ``shape`` with foreground at 1-based ``coords``."""
        arr = np.zeros(shape, dtype=bool)
        for r, c in coords:
            if not (1 <= r <= shape[0] and 1 <= c <= shape[1]):
                raise ValueError(f"coordinate {(r, c)} outside {shape}")
            arr[r - 1, c - 1] = True
        return cls(arr)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self):
        return self._data.shape

    @property
    def size(self) -> int:
        return self._data.size

    def count(self) -> int:
        """Number of foreground pixels."""
        return int(self._data.sum())

    def foreground(self):
        """Foreground coordinates (1-based) in scan order."""
        rs, cs = np.nonzero(self._data)
        return [(int(r) + 1, int(c) + 1) for r, c in zip(rs, cs)]

    def __getitem__(self, rc) -> bool:
        r, c = rc
        return bool(self._data[r - 1, c - 1])

    def pad(self, top=0, bottom=0, left=0, right=0) -> "BitGrid":
        return BitGrid(np.pad(self._data, ((top, bottom), (left, right))))

    def __eq__(self, other):
        if not isinstance(other, BitGrid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash((self.shape, self._data.tobytes()))

    def __repr__(self):
        return f"BitGrid({self.rows}x{self.cols}, {self.count()} on)"

    def __str__(self):
        return "\n".join("".join("#" if v else "." for v in row) for row in self._data)


@dataclass(frozen=True, eq=False)
class GrayGrid:
    """Grayscale raster as read from a PGM file."""

    values: np.ndarray
    maxval: int = 255

    @property
    def shape(self):
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, GrayGrid):
            return NotImplemented
        return self.maxval == other.maxval and np.array_equal(self.values, other.values)


# --------------------------------------------------------------------------
# parsing

def detect_format(data: bytes) -> str:
    head = data.lstrip(_WS)[:2]
    if head in (b"P1", b"P4"):
        return "pbm"
    if head in (b"P2", b"P5"):
        return "pgm"
    return "text-matrix"


class _HeaderReader:
    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def token(self, what):
        data, n = self.data, len(self.data)
        while self.pos < n:
            ch = data[self.pos:self.pos + 1]
            if ch in _WS:
                self.pos += 1
            elif ch == b"#":
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            else:
                break
        if self.pos >= n:
            raise ParseError(f"unexpected end of data while reading {what}", self.pos)
        start = self.pos
        while self.pos < n and data[self.pos:self.pos + 1] not in _WS and data[self.pos:self.pos + 1] != b"#":
            self.pos += 1
        return data[start:self.pos], start

    def integer(self, what, minimum=1):
        tok, at = self.token(what)
        self.last = at
        if not tok.isdigit():
            raise ParseError(f"bad {what} {tok!r}", at)
        value = int(tok)
        if value < minimum:
            raise ParseError(f"{what} must be >= {minimum}, got {value}", at)
        return value


def _parse_netpbm(data: bytes):
    start = len(data) - len(data.lstrip(_WS))
    magic = data[start:start + 2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise ParseError(f"unknown magic number {magic!r}", start)
    hr = _HeaderReader(data, start + 2)
    cols = hr.integer("width")
    rows = hr.integer("height")
    maxval = 1
    if magic in (b"P2", b"P5"):
        maxval = hr.integer("maxval")
        if maxval > 65535:
            raise ParseError(f"maxval {maxval} exceeds 65535", hr.last)

    if magic in (b"P4", b"P5"):
        # exactly one whitespace byte separates header from raster
        if hr.pos >= len(data) or data[hr.pos:hr.pos + 1] not in _WS:
            raise ParseError("missing whitespace before raster", hr.pos)
        off = hr.pos + 1
        if magic == b"P4":
            stride = (cols + 7) // 8
            need = stride * rows
            raw = data[off:off + need]
            if len(raw) < need:
                raise ParseError(f"truncated raster: need {need} bytes, have {len(raw)}", off + len(raw))
            bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(rows, stride), axis=1)
            return BitGrid(bits[:, :cols].astype(bool))
        width = 1 if maxval < 256 else 2
        need = rows * cols * width
        raw = data[off:off + need]
        if len(raw) < need:
            raise ParseError(f"truncated raster: need {need} bytes, have {len(raw)}", off + len(raw))
        dtype = np.uint8 if width == 1 else np.dtype(">u2")
        vals = np.frombuffer(raw, dtype=dtype).reshape(rows, cols).astype(np.int64)
        if vals.max(initial=0) > maxval:
            raise ParseError(f"sample exceeds maxval {maxval}", off)
        return GrayGrid(vals, maxval)

    if magic == b"P1":
        # plain PBM: digits may run together; whitespace and comments are skipped
        vals = []
        pos, n = hr.pos, len(data)
        while len(vals) < rows * cols:
            while pos < n and (data[pos:pos + 1] in _WS or data[pos:pos + 1] == b"#"):
                if data[pos:pos + 1] == b"#":
                    eol = data.find(b"\n", pos)
                    pos = n if eol < 0 else eol
                else:
                    pos += 1
            if pos >= n:
                raise ParseError(f"truncated raster: {len(vals)} of {rows * cols} pixels", pos)
            ch = data[pos:pos + 1]
            if ch not in (b"0", b"1"):
                raise ParseError(f"bad PBM pixel {ch!r}", pos)
            vals.append(ch == b"1")
            pos += 1
        return BitGrid(np.array(vals, dtype=bool).reshape(rows, cols))

    vals = []
    for _ in range(rows * cols):
        try:
            v = hr.integer("sample", minimum=0)
        except ParseError as exc:
            if "end of data" in str(exc):
                raise ParseError(f"truncated raster: {len(vals)} of {rows * cols} samples", exc.offset) from None
            raise
        if v > maxval:
            raise ParseError(f"sample {v} exceeds maxval {maxval}", hr.last)
        vals.append(v)
    return GrayGrid(np.array(vals, dtype=np.int64).reshape(rows, cols), maxval)


def _parse_text_matrix(data: bytes) -> BitGrid:
    rows = []
    width = None
    for m in re.finditer(rb"[^\n]*\n?", data):
        line = m.group(0)
        if not line.strip():
            continue
        row = []
        for tok in re.finditer(rb"\S+", line):
            if tok.group(0) not in (b"0", b"1"):
                raise ParseError(f"bad matrix token {tok.group(0)!r}", m.start() + tok.start())
            row.append(tok.group(0) == b"1")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} values, expected {width}", m.start())
        rows.append(row)
    if not rows:
        raise ParseError("empty text matrix", 0)
    return BitGrid(np.array(rows, dtype=bool))


def parse_image(data: bytes, format: str | None = None):
    """Parse ``data`` into a :class:`BitGrid` (PBM, text) or :class:`GrayGrid` (PGM).

    ``format`` is one of ``"pbm"``, ``"pgm"``, ``"text-matrix"``; when omitted
    it is sniffed from the magic number.
    """
    if isinstance(data, str):
        data = data.encode("ascii")
    if not data.strip(_WS):
        raise ParseError("empty input", 0)
    fmt = format or detect_format(data)
    if fmt == "text-matrix":
        return _parse_text_matrix(data)
    if fmt not in ("pbm", "pgm"):
        raise ValueError(f"unknown format {fmt!r}")
    result = _parse_netpbm(data)
    want = BitGrid if fmt == "pbm" else GrayGrid
    if not isinstance(result, want):
        raise ParseError(f"payload is not a {fmt.upper()} file", 0)
    return result


# --------------------------------------------------------------------------
# serialization

def to_pbm(img: BitGrid, binary: bool = False) -> bytes:
    head = f"{'P4' if binary else 'P1'}\n{img.cols} {img.rows}\n".encode("ascii")
    if binary:
        return head + np.packbits(img.data, axis=1).tobytes()
    body = "\n".join(" ".join("1" if v else "0" for v in row) for row in img.data)
    return head + body.encode("ascii") + b"\n"


def to_pgm(gray: GrayGrid, binary: bool = False) -> bytes:
    rows, cols = gray.shape
    head = f"{'P5' if binary else 'P2'}\n{cols} {rows}\n{gray.maxval}\n".encode("ascii")
    if binary:
        dtype = np.uint8 if gray.maxval < 256 else np.dtype(">u2")
        return head + gray.values.astype(dtype).tobytes()
    body = "\n".join(" ".join(str(int(v)) for v in row) for row in gray.values)
    return head + body.encode("ascii") + b"\n"


def to_text(img: BitGrid) -> bytes:
    return ("\n".join(" ".join("1" if v else "0" for v in row) for row in img.data) + "\n").encode("ascii")


# --------------------------------------------------------------------------
# binarization and thinning

def binarize(gray, threshold: int = 128) -> BitGrid:
    """Dark-is-ink thresholding: foreground where intensity < ``threshold``."""
    values = gray.values if isinstance(gray, GrayGrid) else np.asarray(gray)
    return BitGrid(values < threshold)


def _neighbour_planes(a: np.ndarray):
    # P2..P9 of the Zhang-Suen labelling: N, NE, E, SE, S, SW, W, NW
    p = np.pad(a, 1).astype(np.uint8)
    h, w = a.shape
    return [
        p[0:h, 1:w + 1],      # P2 N
        p[0:h, 2:w + 2],      # P3 NE
        p[1:h + 1, 2:w + 2],  # P4 E
        p[2:h + 2, 2:w + 2],  # P5 SE
        p[2:h + 2, 1:w + 1],  # P6 S
        p[2:h + 2, 0:w],      # P7 SW
        p[1:h + 1, 0:w],      # P8 W
        p[0:h, 0:w],          # P9 NW
    ]


def _zs_candidates(a: np.ndarray, first: bool) -> np.ndarray:
    P = _neighbour_planes(a)
    B = sum(x.astype(np.int16) for x in P)
    A = sum(((P[i] == 0) & (P[(i + 1) % 8] == 1)).astype(np.int16) for i in range(8))
    p2, p4, p6, p8 = P[0], P[2], P[4], P[6]
    if first:
        c3 = (p2 * p4 * p6) == 0
        c4 = (p4 * p6 * p8) == 0
    else:
        c3 = (p2 * p4 * p8) == 0
        c4 = (p2 * p6 * p8) == 0
    return a & (B >= 2) & (B <= 6) & (A == 1) & c3 & c4


def _keep_square_corner(a: np.ndarray, cand: np.ndarray) -> np.ndarray:
    # Parallel Zhang-Suen deletes an isolated 2x2 block outright; keep its
    # top-left pixel so the component survives.
    blk = a[:-1, :-1] & a[:-1, 1:] & a[1:, :-1] & a[1:, 1:]
    allc = cand[:-1, :-1] & cand[:-1, 1:] & cand[1:, :-1] & cand[1:, 1:]
    hit = blk & allc
    if not hit.any():
        return cand
    cand = cand.copy()
    for r, c in zip(*np.nonzero(hit)):
        if cand[r, c] and cand[r, c + 1] and cand[r + 1, c] and cand[r + 1, c + 1]:
            cand[r, c] = False
    return cand


def thin(img: BitGrid) -> BitGrid:
    """Zhang-Suen two-subiteration thinning, run to a fixed point."""
    a = np.array(img.data, dtype=bool)
    if a.size == 0:
        return BitGrid(a)
    while True:
        changed = False
        for first in (True, False):
            cand = _keep_square_corner(a, _zs_candidates(a, first))
            if cand.any():
                a &= ~cand
                changed = True
        if not changed:
            return BitGrid(a)


def load_bitgrid(data: bytes, threshold: int = 128) -> BitGrid:
    """Parse any supported payload and return a binary grid (PGM gets thresholded)."""
    img = parse_image(data)
    if isinstance(img, GrayGrid):
        img = binarize(img, threshold)
    return img

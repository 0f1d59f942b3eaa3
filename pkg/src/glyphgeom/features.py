"""Zone and regional features, assembled into the 111-element vector.

Layout of the vector::

    [0:81)    nine 3x3-grid zones, row-major, 9 values each
    [81:108)  three horizontal strips, top to bottom, 9 values each
    108       Euler number (raw integer)
    109       regional area
    110       eccentricity

Each zone block is ``(n_h, n_v, n_rd, n_ld, len_h, len_v, len_rd, len_ld, area)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .geometry import EmptySkeletonError, universe_of_discourse, zone
from .ingest import BitGrid
from .segments import LINE_TYPES, typed_segments
from .traversal import extract_segments

__all__ = [
    "N_FEATURES",
    "ZoneFeatures",
    "FeatureVector",
    "normalized_count",
    "zone_features",
    "euler_number",
    "regional_area",
    "eccentricity",
    "extract_features",
    "zone_blocks",
    "dumps_jsonl",
    "loads_jsonl",
    "dumps_csv",
    "loads_csv",
    "read_records",
    "CSV_HEADER",
]

N_FEATURES = 111
ZONE_LEN = 9
CSV_HEADER = ["label"] + [f"f{i:03d}" for i in range(N_FEATURES)]


def normalized_count(n: int) -> float:
    """``1 - (n/10)*2``; not clamped, so six or more lines go negative."""
    return 1 - ((n / 10) * 2)


@dataclass(frozen=True)
class ZoneFeatures:
    n_horizontal: float = 1.0
    n_vertical: float = 1.0
    n_right_diag: float = 1.0
    n_left_diag: float = 1.0
    len_horizontal: float = 0.0
    len_vertical: float = 0.0
    len_right_diag: float = 0.0
    len_left_diag: float = 0.0
    area: float = 0.0
    # raw tallies, kept for checks; not part of the vector
    raw_counts: tuple = field(default=(0, 0, 0, 0), compare=False)
    raw_pixels: tuple = field(default=(0, 0, 0, 0), compare=False)

    def as_tuple(self):
        return (
            self.n_horizontal, self.n_vertical, self.n_right_diag, self.n_left_diag,
            self.len_horizontal, self.len_vertical, self.len_right_diag, self.len_left_diag,
            self.area,
        )


def zone_features(zone_img: BitGrid, segments) -> ZoneFeatures:
    """Per-zone record from the zone raster and its typed sub-segments.

    ``segments`` may be raw :class:`~glyphgeom.traversal.Segment` objects
    (they are split and typed here) or already-typed pieces.
    """
    total = zone_img.size
    if total == 0:
        return ZoneFeatures()
    segments = list(segments)
    if segments and not hasattr(segments[0], "line_type"):
        segments = typed_segments(segments)
    counts = dict.fromkeys(LINE_TYPES, 0)
    pixels = dict.fromkeys(LINE_TYPES, 0)
    for t in segments:
        if t.line_type is None:
            continue
        counts[t.line_type] += 1
        pixels[t.line_type] += len(t.pixels)
    c = [counts[t] for t in LINE_TYPES]
    p = [pixels[t] for t in LINE_TYPES]
    return ZoneFeatures(
        *(normalized_count(n) for n in c),
        *(k / total for k in p),
        zone_img.count() / total,
        raw_counts=tuple(c),
        raw_pixels=tuple(p),
    )


_EIGHT = np.ones((3, 3), dtype=int)
_FOUR = ndimage.generate_binary_structure(2, 1)


def euler_number(img: BitGrid) -> int:
    """8-connected objects minus 4-connected enclosed background regions."""
    a = np.pad(img.data, 1)
    _, objects = ndimage.label(a, structure=_EIGHT)
    _, bg = ndimage.label(~a, structure=_FOUR)
    # the padded frame joins every border-touching background piece into one
    return int(objects - (bg - 1))


def regional_area(img: BitGrid) -> float:
    if img.size == 0:
        raise ValueError("regional area of a zero-extent image")
    return img.count() / img.size


def eccentricity(img: BitGrid) -> float:
    """Eccentricity of the ellipse with the foreground's second central moments."""
    rs, cs = np.nonzero(img.data)
    if rs.size == 0:
        raise EmptySkeletonError()
    if rs.size == 1:
        return 0.0
    cov = np.cov(np.vstack([rs, cs]).astype(float), bias=True)
    lo, hi = np.linalg.eigvalsh(cov)
    if hi <= 0:
        return 0.0
    lo = max(lo, 0.0)
    return float(np.sqrt(1.0 - lo / hi))


@dataclass(eq=False)
class FeatureVector:
    values: np.ndarray
    label: str | None = None
    source: str | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (N_FEATURES,):
            raise ValueError(f"feature vector must have {N_FEATURES} values, got {self.values.shape}")

    def __len__(self):
        return N_FEATURES

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return (
            self.label == other.label
            and self.source == other.source
            and self.values.tobytes() == other.values.tobytes()
        )

    @property
    def euler(self) -> int:
        return int(self.values[108])

    @property
    def regional_area(self) -> float:
        return float(self.values[109])

    @property
    def eccentricity(self) -> float:
        return float(self.values[110])

    def zone(self, i: int) -> np.ndarray:
        """9-value block of zone ``i`` (0-8 grid, 9-11 strips)."""
        return self.values[i * ZONE_LEN:(i + 1) * ZONE_LEN]


def zone_blocks(img: BitGrid):
    """Yield ``(scheme, Zone, typed sub-segments, ZoneFeatures)`` for the cropped image."""
    for scheme in ("grid3x3", "horizontal3"):
        for z in zone(img, scheme):
            typed = typed_segments(extract_segments(z.grid))
            yield scheme, z, typed, zone_features(z.grid, typed)


def extract_features(img: BitGrid, label=None, source=None) -> FeatureVector:
    crop = universe_of_discourse(img)
    vals = []
    for _, _, _, zf in zone_blocks(crop):
        vals.extend(zf.as_tuple())
    vals.extend([euler_number(crop), regional_area(crop), eccentricity(crop)])
    return FeatureVector(np.array(vals), label, source)


# --------------------------------------------------------------------------
# serialization

def _num(v: float) -> str:
    return format(float(v), ".17g")


def dumps_jsonl(records) -> str:
    lines = []
    for rec in records:
        head = json.dumps({"label": rec.label, "source": rec.source})[:-1]
        lines.append(f'{head}, "features": [{", ".join(_num(v) for v in rec.values)}]}}')
    return "".join(line + "\n" for line in lines)


def loads_jsonl(text: str) -> list:
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            out.append(FeatureVector(obj["features"], obj.get("label"), obj.get("source")))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"line {n}: bad feature record ({exc})") from None
    return out


def dumps_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([rec.label or ""] + [_num(v) for v in rec.values])
    return buf.getvalue()


def loads_csv(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("CSV header must be label,f000..f110")
    out = []
    for n, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"line {n}: expected {len(CSV_HEADER)} columns, got {len(row)}")
        out.append(FeatureVector([float(x) for x in row[1:]], row[0] or None))
    return out


def read_records(path) -> list:
    """Load feature records, choosing CSV or JSONL by file extension."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return loads_csv(text) if str(path).lower().endswith(".csv") else loads_jsonl(text)

"""``glyphgeom`` command line.

Exit status: 0 success, 1 domain error (e.g. empty skeleton), 2 usage or
input-parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus
from .classify import Dataset, evaluate
from .features import dumps_csv, dumps_jsonl, extract_features, read_records, zone_blocks
from .geometry import EmptySkeletonError, crop_box
from .ingest import BitGrid, ParseError, load_bitgrid, thin, to_pbm

IMAGE_SUFFIXES = (".pbm", ".pgm", ".txt")


class UsageError(Exception):
    pass


def _workers() -> int:
    raw = os.environ.get("GLYPHGEOM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"GLYPHGEOM_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _read_image(path, threshold=128) -> BitGrid:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    try:
        return load_bitgrid(data, threshold)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _features_of(path, label=None, source=None):
    img = thin(_read_image(path))
    try:
        return extract_features(img, label=label, source=source)
    except EmptySkeletonError as exc:
        raise EmptySkeletonError(f"{path}: {exc}") from None


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _dump(records, fmt):
    return dumps_csv(records) if fmt == "csv" else dumps_jsonl(records)


def cmd_extract(args):
    fv = _features_of(args.image, label=args.label, source=str(args.image))
    _write(_dump([fv], args.format), args.out)


def _batch_job(job):
    path, label, source = job
    return _features_of(path, label, source)


def cmd_batch(args):
    root = Path(args.dir)
    if not root.is_dir():
        raise UsageError(f"{root}: not a directory")
    files = sorted(
        (p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    jobs = [
        (p, p.parent.name if args.labels_from == "dirname" else None, p.relative_to(root).as_posix())
        for p in files
    ]
    n = _workers()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            records = list(ex.map(_batch_job, jobs, chunksize=8))
    else:
        records = [_batch_job(j) for j in jobs]
    fmt = "csv" if str(args.out).lower().endswith(".csv") else "jsonl"
    _write(_dump(records, fmt), args.out)


def segment_dump(img: BitGrid) -> str:
    """One line per typed sub-segment, coordinates in the input image frame."""
    r0, r1, c0, c1 = crop_box(img)
    crop = BitGrid(img.data[r0:r1, c0:c1])
    lines = []
    for i, (_, z, typed, _) in enumerate(zone_blocks(crop)):
        dr, dc = r0 + z.rows[0], c0 + z.cols[0]
        for t in typed:
            px = "".join(f"({r + dr},{c + dc})" for r, c in t.pixels)
            lines.append(f"zone={i} type={t.line_type or 'none'} pixels={px}")
    return "".join(line + "\n" for line in lines)


def cmd_segments(args):
    img = thin(_read_image(args.image))
    try:
        text = segment_dump(img)
    except EmptySkeletonError as exc:
        raise EmptySkeletonError(f"{args.image}: {exc}") from None
    sys.stdout.write(text)


def cmd_skeletonize(args):
    if not 0 <= args.threshold <= 255:
        raise UsageError(f"--threshold must be in 0..255, got {args.threshold}")
    img = thin(_read_image(args.image, args.threshold))
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_bytes(to_pbm(img))


def cmd_gen_corpus(args):
    if args.train < 1 or args.test < 1:
        raise UsageError("--train and --test must be >= 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.dump_pbm:
        for _, lab, idx, img in corpus.generate_glyphs(args.train, args.test, args.seed):
            p = out / "corpus" / lab / f"{idx}.pbm"
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_bytes(to_pbm(img))
    train, test = corpus.build_corpus(args.train, args.test, args.seed, workers=_workers())
    _write(dumps_jsonl(train), out / "train.jsonl")
    _write(dumps_jsonl(test), out / "test.jsonl")


def cmd_eval(args):
    sets = []
    for path in (args.train, args.test):
        try:
            sets.append(Dataset(read_records(path)))
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror or exc}") from None
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    report = evaluate(sets[0], sets[1], k=args.k, method=args.method)
    sys.stdout.write(str(report))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glyphgeom", description="Geometric features of character skeletons.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="feature record for one image")
    p.add_argument("image")
    p.add_argument("--label")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("batch", help="feature records for every image under a directory")
    p.add_argument("dir")
    p.add_argument("--out", required=True)
    p.add_argument("--labels-from", choices=("dirname",))
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("segments", help="dump traversed, typed segments per zone")
    p.add_argument("image")
    p.set_defaults(func=cmd_segments)

    p = sub.add_parser("skeletonize", help="binarize and thin an image to PBM")
    p.add_argument("image")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=int, default=128)
    p.set_defaults(func=cmd_skeletonize)

    p = sub.add_parser("gen-corpus", help="write a synthetic A-Z train/test corpus")
    p.add_argument("--train", type=int, required=True, help="glyphs per label for training")
    p.add_argument("--test", type=int, required=True, help="glyphs per label for testing")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dump-pbm", action="store_true", help="also write corpus/<label>/<index>.pbm")
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("eval", help="k-NN benchmark of a test feature file against a training file")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--method", choices=("knn", "centroid"), default="knn")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"glyphgeom {args.command}: {exc}", file=sys.stderr)
        return 2
    except (EmptySkeletonError, ValueError) as exc:
        print(f"glyphgeom {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""k-nearest-neighbour / nearest-centroid benchmark harness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import N_FEATURES, FeatureVector

__all__ = ["Dataset", "EvalReport", "knn_predict", "centroid_predict", "evaluate"]


class Dataset:
    """Labelled feature vectors, in a fixed order."""

    def __init__(self, records=()):
        self.records = list(records)
        for i, r in enumerate(self.records):
            if not r.label:
                raise ValueError(f"record {i} ({r.source}) has no label")
            if len(r.values) != N_FEATURES:
                raise ValueError(f"record {i} has {len(r.values)} features")

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def matrix(self) -> np.ndarray:
        if not self.records:
            return np.empty((0, N_FEATURES))
        return np.vstack([r.values for r in self.records])

    def labels(self) -> list:
        return [r.label for r in self.records]


@dataclass
class EvalReport:
    total: int
    errors: int
    labels: list
    confusion: np.ndarray  # rows = true label, cols = predicted label

    @property
    def accuracy(self) -> float:
        return (self.total - self.errors) / self.total

    def summary(self) -> str:
        return f"accuracy={self.accuracy!r} errors={self.errors}/{self.total}"

    def __str__(self):
        width = max([len(l) for l in self.labels] + [3])
        cell = max(width, len(str(int(self.confusion.max(initial=0)))))
        lines = [self.summary(), "confusion (rows=true, cols=predicted):"]
        lines.append(" " * width + " " + " ".join(l.rjust(cell) for l in self.labels))
        for lab, row in zip(self.labels, self.confusion):
            lines.append(lab.rjust(width) + " " + " ".join(str(int(v)).rjust(cell) for v in row))
        return "\n".join(lines) + "\n"


def _as_values(query):
    return query.values if isinstance(query, FeatureVector) else np.asarray(query, dtype=float)


def _vote(labels, order):
    """Majority label; tied labels resolved by whichever has the nearest member."""
    counts = {}
    for i in order:
        counts[labels[i]] = counts.get(labels[i], 0) + 1
    best = max(counts.values())
    for i in order:
        if counts[labels[i]] == best:
            return labels[i]


def knn_predict(train: Dataset, query, k: int = 3) -> str:
    if len(train) == 0:
        raise ValueError("empty training set")
    if not 1 <= k <= len(train):
        raise ValueError(f"k must be in 1..{len(train)}, got {k}")
    d = np.sqrt(((train.matrix() - _as_values(query)) ** 2).sum(axis=1))
    order = np.argsort(d, kind="stable")[:k]
    return _vote(train.labels(), order)


def _centroids(train: Dataset):
    labels = sorted(set(train.labels()))
    X = train.matrix()
    y = np.array(train.labels())
    return labels, np.vstack([X[y == lab].mean(axis=0) for lab in labels])


def centroid_predict(train: Dataset, query) -> str:
    if len(train) == 0:
        raise ValueError("empty training set")
    labels, C = _centroids(train)
    d = ((C - _as_values(query)) ** 2).sum(axis=1)
    return labels[int(np.argmin(d))]


def evaluate(train: Dataset, test: Dataset, k: int = 3, method: str = "knn") -> EvalReport:
    """Classify every test record against ``train`` and tally a confusion matrix.

    The label axis is the sorted union of train and test labels, so test
    labels unseen in training still get a row.
    """
    if len(train) == 0 or len(test) == 0:
        raise ValueError("train and test sets must be nonempty")
    if method == "knn":
        if not 1 <= k <= len(train):
            raise ValueError(f"k must be in 1..{len(train)}, got {k}")
        X = train.matrix()
        ytr = train.labels()
        preds = []
        for q in test.matrix():
            d = np.sqrt(((X - q) ** 2).sum(axis=1))
            preds.append(_vote(ytr, np.argsort(d, kind="stable")[:k]))
    elif method == "centroid":
        labels, C = _centroids(train)
        preds = [labels[int(np.argmin(((C - q) ** 2).sum(axis=1)))] for q in test.matrix()]
    else:
        raise ValueError(f"unknown method {method!r}")

    truth = test.labels()
    axis = sorted(set(train.labels()) | set(truth))
    idx = {lab: i for i, lab in enumerate(axis)}
    conf = np.zeros((len(axis), len(axis)), dtype=np.int64)
    for t, p in zip(truth, preds):
        conf[idx[t], idx[p]] += 1
    errors = sum(t != p for t, p in zip(truth, preds))
    return EvalReport(len(truth), errors, axis, conf)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glyphgeom.classify import Dataset, centroid_predict, evaluate, knn_predict
from glyphgeom.features import N_FEATURES, FeatureVector
from oracles import knn_bruteforce


def fv(label, *head):
    v = np.zeros(N_FEATURES)
    v[: len(head)] = head
    return FeatureVector(v, label)


def test_exact_match_k1():
    train = Dataset([fv("A", 0, 0), fv("B", 5, 5), fv("C", 9, 0)])
    assert knn_predict(train, fv(None, 5, 5), k=1) == "B"


def test_unanimous():
    train = Dataset([fv("Q", i, -i) for i in range(5)])
    assert knn_predict(train, fv(None, 100, 3), k=5) == "Q"


def test_three_hand_points():
    train = Dataset([fv("A", 0, 0), fv("B", 3, 0), fv("A", 0, 4)])
    q = fv(None, 2, 0)
    rows = [list(r.values) for r in train]
    # distances 2, 1, sqrt(20): A wins 2 votes to 1
    assert knn_bruteforce(rows, train.labels(), list(q.values), 3) == "A"
    assert knn_predict(train, q, k=3) == "A"
    assert knn_predict(train, q, k=1) == "B"


def test_vote_tie_goes_to_nearest_label():
    train = Dataset([fv("A", 0, 0), fv("B", 3, 0)])
    assert knn_predict(train, fv(None, 2, 0), k=2) == "B"


def test_distance_tie_goes_to_earlier_record():
    train = Dataset([fv("B", 1, 0), fv("A", -1, 0)])
    assert knn_predict(train, fv(None, 0, 0), k=1) == "B"


def test_errors():
    with pytest.raises(ValueError):
        knn_predict(Dataset([]), fv(None), k=1)
    with pytest.raises(ValueError):
        knn_predict(Dataset([fv("A")]), fv(None), k=2)
    with pytest.raises(ValueError):
        Dataset([fv(None)])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_knn_matches_bruteforce(seed, k):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(k, 15))
    pts = rng.integers(-3, 4, size=(n, 3)).astype(float)  # small ints -> many ties
    labels = [str(x) for x in rng.integers(0, 3, size=n)]
    train = Dataset([fv(lab, *p) for lab, p in zip(labels, pts)])
    q = rng.integers(-3, 4, size=3).astype(float)
    rows = [list(r.values) for r in train]
    assert knn_predict(train, fv(None, *q), k) == knn_bruteforce(rows, labels, list(fv(None, *q).values), k)


def test_self_evaluation_is_perfect():
    data = Dataset([fv(l, i, 2 * i) for i, l in enumerate("ABCABC")])
    rep = evaluate(data, data, k=1)
    assert rep.accuracy == 1.0 and rep.errors == 0
    assert rep.summary() == "accuracy=1.0 errors=0/6"


def test_unseen_label_counts_as_error():
    train = Dataset([fv("A", 0), fv("B", 1)])
    rep = evaluate(train, Dataset([fv("Z", 0)]), k=1)
    assert rep.errors == 1
    assert rep.labels == ["A", "B", "Z"]
    assert rep.confusion[2].tolist() == [1, 0, 0]


def test_report_text():
    train = Dataset([fv("A", 0), fv("B", 10)])
    test = Dataset([fv("A", 1), fv("B", 9), fv("B", 2)])
    rep = evaluate(train, test, k=1)
    text = str(rep).splitlines()
    assert text[0] == f"accuracy={2 / 3!r} errors=1/3"
    assert rep.confusion.tolist() == [[1, 0], [1, 1]]
    assert rep.confusion.sum(axis=1).tolist() == [1, 2]


def test_permuting_test_order():
    rng = np.random.default_rng(1)
    train = Dataset([fv(str(i % 3), *rng.normal(size=4)) for i in range(20)])
    test = [fv(str(i % 3), *rng.normal(size=4)) for i in range(15)]
    a = evaluate(train, Dataset(test), k=3)
    b = evaluate(train, Dataset(test[::-1]), k=3)
    assert a.errors == b.errors
    assert (a.confusion == b.confusion).all()


def test_centroid():
    train = Dataset([fv("A", 0, 0), fv("A", 2, 0), fv("B", 10, 10)])
    assert centroid_predict(train, fv(None, 1, 1)) == "A"
    rep = evaluate(train, train, method="centroid")
    assert rep.accuracy == 1.0

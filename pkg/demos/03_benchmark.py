"""
Benchmarking the features with k-NN
===================================

26 letters x 25 training and 5 test glyphs, jittered by shift and scale,
classified by 3-nearest-neighbour and by nearest centroid.
"""

import time

from glyphgeom import build_corpus, evaluate

t0 = time.perf_counter()
train, test = build_corpus(25, 5, seed=1)
print(f"{len(train)} train / {len(test)} test vectors in {time.perf_counter() - t0:.1f} s")

report = evaluate(train, test, k=3)
print(report)

###############################################################################
# A much cruder classifier does nearly as well, a sign that the zone layout
# carries most of the signal on clean synthetic strokes.
print(evaluate(train, test, method="centroid").summary())

###############################################################################
# Harder jitter: stretch each axis by up to 35%.
train, test = build_corpus(25, 5, seed=1, scale=35)
print("scale +/-35%:", evaluate(train, test, k=3).summary())

"""
Walking a skeleton into line segments
=====================================

A 5x5 'X' is small enough to follow every decision the traversal makes.
"""

from glyphgeom import classify_pixels, parse_image, traverse
from glyphgeom.segments import classify, direction_vector

X = b"""
1 0 0 0 1
0 1 0 1 0
0 0 1 0 0
0 1 0 1 0
1 0 0 0 1
"""
img = parse_image(X)
print(img, end="\n\n")

###############################################################################
# Endpoints (one neighbour) are starters; the crossing is an intersection
# because its four neighbours are all diagonal, none sharing an edge with a
# horizontal/vertical neighbour.
pc = classify_pixels(img)
print("starters:     ", pc.starters)
print("intersections:", pc.intersections)

###############################################################################
# The first walk runs (1,1) -> (2,2) -> (3,3) and stops at the crossing,
# queueing the crossing's other neighbours.  Each later walk stops as soon
# as it reaches one of those queued pixels.
res = traverse(img)
print("queued after the first stroke:", res.minor_history[0])
for seg in res.segments:
    dv = direction_vector(seg)
    print(f"{seg.pixels}  codes={dv}  type={classify(dv)}")

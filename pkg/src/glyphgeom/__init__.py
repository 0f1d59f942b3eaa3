"""Geometric line-type features of character skeletons.

A skeleton is cropped to its bounding box, split into a 3x3 grid and into
three horizontal strips, traversed zone by zone into line segments, and
each segment is typed as horizontal, vertical or one of two diagonals.
Per-zone counts, lengths and areas plus Euler number, regional area and
eccentricity make a 111-element feature vector.
"""

from .classify import Dataset, EvalReport, centroid_predict, evaluate, knn_predict
from .corpus import TEMPLATES, build_corpus, perturb, render
from .features import (
    N_FEATURES,
    FeatureVector,
    ZoneFeatures,
    eccentricity,
    euler_number,
    extract_features,
    regional_area,
    zone_features,
)
from .geometry import EmptySkeletonError, universe_of_discourse, zone
from .ingest import BitGrid, GrayGrid, ParseError, binarize, parse_image, thin
from .segments import LineType, classify, direction_vector, split_directions
from .traversal import Segment, classify_pixels, extract_segments, neighbours, traverse

__version__ = "0.1.0"

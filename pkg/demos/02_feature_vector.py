"""
From a glyph to its 111 features
================================

Render a synthetic 'R', then look at what each zone contributes.
"""

from glyphgeom import TEMPLATES, extract_features, render, universe_of_discourse
from glyphgeom.features import zone_blocks

img = render(TEMPLATES["R"], 24)
print(universe_of_discourse(img), end="\n\n")

fv = extract_features(img, label="R")
print(f"{len(fv.values)} values; euler={fv.euler} area={fv.regional_area:.3f} ecc={fv.eccentricity:.3f}")

###############################################################################
# Per zone: normalised counts (1 means no line of that type), then the
# fraction of zone pixels covered by each line type, then ink area.
names = ["grid %d,%d" % divmod(i, 3) for i in range(9)] + ["strip %d" % i for i in range(3)]
header = "zone       nH    nV    nRD   nLD   lH    lV    lRD   lLD   area"
print(header)
for name, block in zip(names, fv.values[:108].reshape(12, 9)):
    print(f"{name:<9}" + "".join(f"{v:6.2f}" for v in block))

###############################################################################
# The segments behind one zone: the bowl of the R sits in the top strip.
_, z, typed, _ = list(zone_blocks(universe_of_discourse(img)))[9]
for t in typed:
    print(t.line_type, len(t.pixels), "px")

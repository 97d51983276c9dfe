"""
Counting points in squares
==========================

Tile centroids of the chair tiling have density 1/3 per unit cell and
bounded discrepancy relative to perimeter.  A lattice with every fourth
column removed, measured against the wrong density, does not.
"""
from fractions import Fraction

from tiletransport import point_discrepancy_series, supertile

pts = supertile("chair", "NE", 8).centroids_float
for d in point_discrepancy_series(pts, Fraction(1, 3), [(0, 0, 2 ** k) for k in range(1, 9)]):
    print(f"chair side {d.square[2]:4d}: count {d.count:6d}, discrepancy {float(d.discrepancy):+9.3f}, "
          f"ratio {d.ratio:.4f}")

holes = [(x, y) for x in range(256) for y in range(256) if x % 4 != 3]
for d in point_discrepancy_series(holes, 1, [(0, 0, 2 ** k) for k in range(2, 9)]):
    print(f"holes side {d.square[2]:4d}: ratio {d.ratio:.3f}")

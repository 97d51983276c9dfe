"""
Chair tiling: a cochain that is not well balanced
==================================================

i_NE - i_SW doubles under substitution.  On the partial supertiles R_n it
grows like n 2^n while their boundary only grows like 2^n.
"""
from pathlib import Path

from tiletransport import chair_h2_table, chair_partial_region, discrepancy_series, mass_cochain, supertile
from tiletransport.geometry import render_svg

for m, count, ne_sw, nw_se, trivial in chair_h2_table(5):
    print(f"m={m}: tiles {count}, i_NE-i_SW {ne_sw}, i_NW-i_SE on the NW supertile {nw_se}, "
          f"i_NE+i_SW-i_NW-i_SE {trivial}")

alpha = mass_cochain({"NE": 1, "SW": -1, "NW": 0, "SE": 0})
for pt in discrepancy_series(alpha, [chair_partial_region(n) for n in range(1, 11)]):
    print(f"{pt.descriptor:>4}: integral {str(pt.integral):>5}  boundary {str(pt.boundary):>5}  ratio {pt.ratio:.4f}")

out = Path("chair_level3.svg")
out.write_text(render_svg(supertile("chair", "NE", 3), scale=12))
print("wrote", out)

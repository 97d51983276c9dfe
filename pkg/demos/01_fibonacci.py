"""
Fibonacci: bounded transport without a strongly PE rearrangement
=================================================================

Mass 1 sits on every long tile, mass phi on every short tile.  Both have
the same density, and the difference over a level-m supertile is exactly
phi^-m, so nothing piles up.  Yet no finite-radius rule can move one onto
the other.
"""
from tiletransport import fibonacci_case, integrate, min_transport_radius, primitive_1d, supertile
from tiletransport.casebook import collar_radius, strong_pe_obstruction

case = fibonacci_case()
f1, f2 = case.cochains["f1"], case.cochains["f2"]

# exact integrals over supertiles, in Q(phi)
for m in range(1, 11):
    d = integrate(f1 - f2, supertile("fibonacci", "a", m))
    print(f"level {m:2d}: integral {str(d):>10}  ~ {float(d):+.6f}")

# the running integral stays bounded, however long the patch
for m in (5, 10, 15):
    prim = primitive_1d(f1 - f2, supertile("fibonacci", "a", m))
    print(f"level {m}: sup of primitive {float(prim.sup):.6f} over {len(prim.values)} vertices")

# so a fixed radius suffices at every scale
radii = min_transport_radius(f1, f2, [supertile("fibonacci", "a", m) for m in range(5, 10)])
print("least transport radius, levels 5..9:", [round(r, 4) for r in radii])

# but two vertices with identical surroundings always enclose an integer
# amount of f1 and a multiple of phi of f2, which can never agree
for k in range(4):
    w = strong_pe_obstruction(collar_radius(k))
    print(f"R = {float(w.R):6.3f}: vertices {w.v1} .. {w.v2}, f1 = {w.int_f1}, f2 = {w.int_f2}")

"""
Strongly PE transport, built in rounds
======================================

For the chair, f2 - f3 is the coboundary of a flux that depends only on a
small neighbourhood.  Spreading that flux over N3 equal rounds keeps every
tile above the smallest starting mass.  For Fibonacci the same linear
system is inconsistent at every radius, though the misfit shrinks.
"""
from tiletransport import chair_case, fibonacci_case, solve_pe_coboundary, stepwise_plan_from_flux, supertile
from tiletransport import verify_plan
from tiletransport.casebook import collar_radius
from tiletransport.cochain import coboundary_of_values
from tiletransport.geometry import CHAIR

c = chair_case().cochains
patch = supertile("chair", "NE", 4)
sol = solve_pe_coboundary(c["f2"] - c["f3"], patch, CHAIR.max_tile_diameter)
print(f"chair: {len(sol.classes)} face classes, exact={sol.exact}, {len(sol.interior)} interior tiles")

beta = {k: v for k, v in sol.beta.items() if len(patch.faces[k]) == 2}
delta = coboundary_of_values({k: beta.get(k, 0) for k in patch.faces}, patch)
bare = c["f2"].values(patch)
# near the patch edge the flux is cut off, so the end state can dip below zero;
# a constant background mass lifts both ends above 1
low = min(min(bare), min(bare[i] - delta[i] for i in range(len(patch))))
src = c["f2"].shifted(1 - low)
print("background mass", 1 - low)
plan = stepwise_plan_from_flux(beta, src, patch)
start = src.values(patch)
end = [start[i] - delta[i] for i in range(len(patch))]
print("target reached on every interior tile:",
      all(end[i] == c["f3"].shifted(1 - low).values(patch)[i] for i in sol.interior))
rep = verify_plan(plan, start, end, patch, plan.meta["max_step_displacement"])
print(f"{plan.rounds} rounds, {len(plan.moves)} moves, lowest mass {rep.min_mass}: {rep.message}")

f = fibonacci_case().cochains
big = supertile("fibonacci", "a", 10)
for k in range(7):
    res = solve_pe_coboundary(f["f1"] - f["f2"], big, collar_radius(k))
    print(f"fibonacci R={float(res.radius):7.3f}: exact={res.exact}, residual {res.residual:.5f}")

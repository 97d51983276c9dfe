"""
Bounded transport as a flow problem
===================================

Moving mass at most r is a bipartite flow problem; Hall's condition is the
obstruction.  Tiles touching the patch boundary may trade with the outside,
so only the bulk is judged.
"""
from tiletransport import TransportProblem, chair_case, hall_feasible, min_transport_radius, supertile, verify_plan

c = chair_case().cochains
patch = supertile("chair", "NE", 5)

res = hall_feasible(TransportProblem(patch, c["f2"], c["f3"], 3.0))
print("f2 -> f3 within 3:", res.feasible, f"({len(res.plan.moves)} moves)")

res = hall_feasible(TransportProblem(patch, c["f1"], c["f2"], 3.0))
d = res.certificate["data"]
print("f1 -> f2 within 3:", res.feasible, f"- {len(d['tiles'])} tiles hold {d['mass']} but can reach only "
      f"{d['neighbourhood_mass']}")

# closed patch, equal totals: the flow doubles as a plan that can be replayed
small = supertile("chair", "NE", 2)
res = hall_feasible(TransportProblem(small, c["f2"], c["f3"], 3.0, None))
print("closed 2-supertile:", res.feasible, verify_plan(res.plan, c["f2"], c["f3"], small, 3.0).message)

for pair in (("f2", "f3"), ("f1", "f2")):
    radii = min_transport_radius(c[pair[0]], c[pair[1]], [supertile("chair", "NE", n) for n in range(3, 7)])
    print(pair, "least radius on NE supertiles 3..6:", [round(r, 3) for r in radii])

# Hypersurfaces and complete intersections: compare the two sides of one wall.
from gkz import orlov
from gkz.orlov import CISpec

for spec in [CISpec(3, (3,)), CISpec(5, (3,)), CISpec(3, (5,)), CISpec(6, (2, 2, 2))]:
    rep = orlov.orlov_report(spec)
    extra = rep.sigma_side_objects or rep.lg_side_objects
    print(spec.n, spec.degrees, "a =", rep.a, rep.case, list(extra))

# the model itself: x_i of degree 1 and one u_j per equation
P, lam, potential = orlov.build_lg(CISpec(4, (2,)))
print(P.columns, lam, potential)

# shifting the window moves the labels
print(orlov.orlov_report(CISpec(5, (2,)), d=2).sigma_side_objects)

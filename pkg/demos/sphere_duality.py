"""The dual family on the sphere.

The radial factor is evaluated at the complex argument 2|y| / (y2 + i y1)
and the harmonic seed at 2 y_k / (y2 + i y1).  The weighted flat Laplacian,
nested r times, vanishes while the (r-1)-th nest does not.
"""

from rharmonic import FamilySpec, get_seed, sphere_field
from rharmonic.lift import check_lift_sphere
from rharmonic.verify import SamplePlan

spec = FamilySpec(n=3, r=2, a=1.0, b=1j, seed=get_seed(3, "prod"))
f = sphere_field(spec)

for y in SamplePlan("sphere", count=5, rng_seed=2).points(spec.n):
    rep = check_lift_sphere(f, y, spec.r)
    prev = abs(rep.values[spec.r - 1]) / rep.scale
    print(f"|y|={sum(v * v for v in y) ** 0.5:5.3f}  |tau^r|/S={abs(rep.rhs) / rep.scale:8.1e}  "
          f"|tau^(r-1)|/S={prev:8.3f}")

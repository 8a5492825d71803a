"""A proper biharmonic function on hyperbolic 4-space.

f(t, x) = (a + b t^3) log(t) x1 satisfies tau(f) = -3 (a - b t^3) x1 and
tau^2(f) = 0, where tau is the Laplace-Beltrami operator of the metric
(dt^2 + |dx|^2) / t^2.
"""

from rharmonic import FamilySpec, get_seed, upper_half_field
from rharmonic.geometry import tension_sequence, upper_half_chart

a, b = 1.0, 1.0
spec = FamilySpec(n=4, r=2, a=a, b=b, seed=get_seed(4, "coord:1"))
f = upper_half_field(spec)
chart = upper_half_chart(4)

print(f"{'t':>6} {'x1':>6} {'tau f':>14} {'closed form':>14} {'|tau^2 f| / S':>14}")
for t, x1 in [(2.0, 3.0), (0.5, -1.0), (1.0, 2.0), (4.0, 0.25)]:
    seq = tension_sequence(chart, f, (t, x1, 0.0, 0.0), 2)
    exact = -3 * (a - b * t ** 3) * x1
    print(f"{t:6.2f} {x1:6.2f} {seq.values[1].real:14.8f} {exact:14.8f} {abs(seq.values[2]) / seq.scale:14.2e}")

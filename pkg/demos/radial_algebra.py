"""Exact algebra of the radial factors t^k log(t)^m.

The radial tension t^2 p'' - (n - 2) t p' lowers the log power by one on
(a + b t^(n-1)) log(t)^(r-1), so r applications annihilate it.  The double
antiderivative I_n is a right inverse.
"""

from rharmonic.logpoly import LogPolynomial, build_pr, integral_operator, tension_1d

n, r = 5, 3
p = build_pr(n, r, a=1, b=2)
print("p      =", p)
q = p
for k in range(1, r + 1):
    q = tension_1d(q, n)
    print(f"tau^{k} p =", q.chop())

# right inverse: tension_1d(I_n(g)) = g for any log-polynomial g
g = LogPolynomial({(2, 1): 1.0, (-1, 0): 3.0})
h = integral_operator(g, n, alpha=0.5, beta=-1.0)
print("I_n(g) =", h.chop())
print("tau(I_n(g)) - g is zero:", (tension_1d(h, n) - g).is_zero(ref=g))

"""
Explicit proper r-harmonic fields on the three models of constant curvature.

* :func:`upper_half_field` -- ``p_r(t) * h(x)`` on the upper half-space.
* :func:`hyperboloid_field` -- the same field pulled back to the light-cone
  interior of Minkowski space through ``Phi = Psi o pi``.
* :func:`sphere_field` -- the dual field on Euclidean space minus a branch
  locus, whose restriction to the unit sphere is r-harmonic.

Harmonic seeds ``h`` are polynomials, so their complex-analytic extension is
plain substitution of complex arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import ScalarField
from .jets import DomainError, Jet, jet_recip, jet_sqrt
from .logpoly import build_pr, evaluate

__all__ = [
    "Polynomial",
    "HarmonicSeed",
    "FamilySpec",
    "seed_catalog",
    "get_seed",
    "upper_half_field",
    "hyperboloid_field",
    "sphere_field",
    "lorentz_inner",
    "psi_isometry",
    "psi_inverse",
    "phi_map",
    "HYPERBOLOID_TOL",
]

HYPERBOLOID_TOL = 1e-10


class Polynomial:
    """Complex polynomial in ``nvars`` variables, stored as exponent -> coefficient."""

    def __init__(self, nvars, terms):
        self.nvars = nvars
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            c = complex(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c != 0}

    @classmethod
    def variable(cls, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1.0})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    def scale(self, s):
        return Polynomial(self.nvars, {e: c * s for e, c in self.terms.items()})

    def __pow__(self, k):
        out = Polynomial(self.nvars, {(0,) * self.nvars: 1.0})
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = out.get(tuple(d), 0) + c * e[i]
        return Polynomial(self.nvars, out)

    def laplacian(self):
        out = Polynomial(self.nvars, {})
        for i in range(self.nvars):
            out = out + self.diff(i).diff(i)
        return out

    def is_zero(self):
        return not self.terms

    def real_part(self):
        return Polynomial(self.nvars, {e: c.real for e, c in self.terms.items()})

    def imag_part(self):
        return Polynomial(self.nvars, {e: c.imag for e, c in self.terms.items()})

    def __call__(self, args):
        """Evaluate at complex numbers or jets (all of the same kind)."""
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(args)}")
        if not self.terms:
            return 0j if not isinstance(args[0], Jet) else Jet.constant(0, args[0].dim, args[0].order)
        top = [max(e[i] for e in self.terms) for i in range(self.nvars)]
        if isinstance(args[0], Jet):
            one = Jet.constant(1.0, args[0].dim, args[0].order)
        else:
            one = 1 + 0j
            args = [complex(a) for a in args]
        powers = []
        for a, d in zip(args, top):
            row = [one]
            for _ in range(d):
                row.append(row[-1] * a)
            powers.append(row)
        total = None
        for e, c in self.terms.items():
            mono = one
            for i, k in enumerate(e):
                if k:
                    mono = mono * powers[i][k]
            term = mono * c
            total = term if total is None else total + term
        return total

    def __str__(self):
        names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            coef = f"{c.real:g}" if c.imag == 0 else f"({c:g})"
            if not mono:
                parts.append(coef)
            elif coef in ("1", "-1"):
                parts.append(coef[:-1] + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True, eq=False)
class HarmonicSeed:
    """A non-constant polynomial on R^vars with vanishing Euclidean Laplacian."""

    id: str
    vars: int
    poly: Polynomial

    def __post_init__(self):
        if self.poly.nvars != self.vars:
            raise ValueError("polynomial variable count does not match seed vars")
        if self.poly.degree < 1:
            raise ValueError(f"seed {self.id!r} is constant")
        if not self.poly.laplacian().is_zero():
            raise ValueError(f"seed {self.id!r} is not harmonic: Laplacian = {self.poly.laplacian()}")

    def __call__(self, args):
        return self.poly(args)

    def __str__(self):
        return str(self.poly)


def seed_catalog(n):
    """Harmonic polynomial seeds on R^(n-1).

    Identifiers: ``coord:i`` (x_i), ``diff_sq`` (x1^2 - x2^2), ``prod`` (x1*x2),
    ``re_zk:k`` / ``im_zk:k`` (real/imaginary part of (x1 + i x2)^k, k <= 4).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    m = n - 1
    seeds = [HarmonicSeed(f"coord:{i + 1}", m, Polynomial.variable(m, i)) for i in range(m)]
    if m >= 2:
        x1, x2 = Polynomial.variable(m, 0), Polynomial.variable(m, 1)
        seeds.append(HarmonicSeed("diff_sq", m, x1 * x1 - x2 * x2))
        seeds.append(HarmonicSeed("prod", m, x1 * x2))
        z = x1 + x2.scale(1j)
        for k in range(1, 5):
            zk = z ** k
            seeds.append(HarmonicSeed(f"re_zk:{k}", m, zk.real_part()))
            seeds.append(HarmonicSeed(f"im_zk:{k}", m, zk.imag_part()))
    return seeds


def get_seed(n, seed_id):
    for s in seed_catalog(n):
        if s.id == seed_id:
            return s
    known = ", ".join(s.id for s in seed_catalog(n))
    raise KeyError(f"unknown seed {seed_id!r} for n={n}; known: {known}")


@dataclass(frozen=True)
class FamilySpec:
    """Selects the member (n, r, a, b, h) of the family."""

    n: int
    r: int
    a: complex
    b: complex
    seed: HarmonicSeed

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if complex(self.a) == 0 and complex(self.b) == 0:
            raise ValueError("coefficient pair (a, b) must be non-zero")
        if self.seed.vars != self.n - 1:
            raise ValueError(f"seed has {self.seed.vars} variables, need {self.n - 1}")

    @property
    def radial(self):
        return build_pr(self.n, self.r, self.a, self.b)

    def to_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "a": [complex(self.a).real, complex(self.a).imag],
            "b": [complex(self.b).real, complex(self.b).imag],
            "seed": self.seed.id,
        }


# ----------------------------------------------------------------------
# Upper half-space
# ----------------------------------------------------------------------

def upper_half_field(spec):
    p = spec.radial
    seed = spec.seed

    def evaluate_jets(c):
        t0 = c[0].value
        if t0.imag != 0 or t0.real <= 0:
            raise DomainError(f"upper half-space needs t > 0, got t = {t0}")
        return evaluate(p, c[0]) * seed(list(c[1:]))

    return ScalarField(spec.n, evaluate_jets, name=f"f_{spec.r} on H^{spec.n}")


# ----------------------------------------------------------------------
# Hyperboloid
# ----------------------------------------------------------------------

def lorentz_inner(x, y):
    return -x[0] * y[0] + sum(a * b for a, b in zip(x[1:], y[1:]))


def _check_light_cone(y):
    y = [float(np.real(v)) for v in y]
    q = lorentz_inner(y, y)
    if not (q < 0 and y[0] > 0):
        raise DomainError(f"point {tuple(y)} is outside the future light cone")
    if y[0] + y[1] == 0:
        raise DomainError("y0 + y1 vanishes")
    return y, q


def psi_isometry(y):
    """Hyperboloid point -> upper half-space point."""
    y, q = _check_light_cone(y)
    if abs(q + 1) > HYPERBOLOID_TOL:
        raise DomainError(f"(y, y)_L = {q}, expected -1")
    d = y[0] + y[1]
    return (2.0 / d,) + tuple(2.0 * v / d for v in y[2:])


def psi_inverse(point):
    """Upper half-space point (t, x) -> the hyperboloid point mapped to it by Psi."""
    t = float(point[0])
    if t <= 0:
        raise DomainError("t must be positive")
    ys = [float(x) / t for x in point[1:]]
    s = 2.0 / t
    diff = (1.0 + sum(v * v for v in ys)) / s
    return ((s + diff) / 2.0, (s - diff) / 2.0) + tuple(ys)


def phi_map(y):
    """Future light-cone point -> upper half-space point (numbers or jets)."""
    if isinstance(y[0], Jet):
        y0 = [c.value.real for c in y]
        _check_light_cone(y0)
        q = y[0] * y[0]
        for v in y[1:]:
            q = q - v * v
        inv_d = jet_recip(y[0] + y[1]) * 2.0
        return [jet_sqrt(q) * inv_d] + [v * inv_d for v in y[2:]]
    y, q = _check_light_cone(y)
    d = y[0] + y[1]
    return (2.0 * math.sqrt(-q) / d,) + tuple(2.0 * v / d for v in y[2:])


def hyperboloid_field(spec):
    """Ambient field on Minkowski space: ``upper_half_field(spec) o phi_map``.
    It is constant along rays, so it equals its own radial extension."""
    base = upper_half_field(spec)

    def evaluate_jets(c):
        return base.evaluate(phi_map(c))

    return ScalarField(spec.n + 1, evaluate_jets, name=f"f_{spec.r} on hyperboloid^{spec.n}")


# ----------------------------------------------------------------------
# Sphere
# ----------------------------------------------------------------------

def sphere_argument(y):
    """Complex radial argument 2|y| / (y2 + i y1) for an ambient point."""
    y = [float(np.real(v)) for v in y]
    d = complex(y[1], y[0])
    if d == 0:
        raise DomainError("y2 + i*y1 vanishes")
    return 2.0 * math.sqrt(sum(v * v for v in y)) / d


def sphere_field(spec):
    """Ambient field on R^(n+1) (coordinates y1..y_{n+1}) whose restriction to
    the unit sphere is the dual of :func:`hyperboloid_field`.

    Defined where y != 0, y2 + i y1 != 0 and the radial argument avoids the
    non-positive real axis.
    """
    p = spec.radial
    seed = spec.seed

    def evaluate_jets(c):
        d = c[1] + c[0] * 1j
        if d.value == 0:
            raise DomainError("y2 + i*y1 vanishes")
        r2 = c[0] * c[0]
        for v in c[1:]:
            r2 = r2 + v * v
        if r2.value == 0:
            raise DomainError("the origin is not admissible")
        inv_d = jet_recip(d) * 2.0
        arg = jet_sqrt(r2) * inv_d
        a0 = arg.value
        if a0.imag == 0 and a0.real <= 0:
            raise DomainError(f"radial argument {a0} on the branch cut")
        return evaluate(p, arg) * seed([v * inv_d for v in c[2:]])

    return ScalarField(spec.n + 1, evaluate_jets, name=f"f_{spec.r} on S^{spec.n}")


def branch_clearance(y):
    """Angular distance (rad) of the sphere radial argument from the negative real axis."""
    z = sphere_argument(y)
    return math.pi - abs(cmath.phase(z))

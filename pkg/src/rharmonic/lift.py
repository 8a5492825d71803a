"""
Radial projections onto the hyperboloid and the sphere, and the lift
identities that compute intrinsic iterated Laplacians from flat ambient
operators.

For a field ``f`` on the target and ``f_hat = f o pi`` on the ambient set,

    tau^k(f) o pi = W * op(W * op( ... W * op(f_hat))),

with ``W = -(y, y)_L`` and ``op`` the d'Alembertian for the hyperboloid, and
``W = |y|^2`` and ``op`` the flat Laplacian for the sphere.  The nesting is
evaluated on jets of order 2r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .families import HYPERBOLOID_TOL, lorentz_inner, phi_map
from .geometry import ScalarField, flat_operator_jet, tension_sequence, upper_half_chart
from .jets import DomainError, coordinate_jets

__all__ = [
    "LiftReport",
    "AmbientSequence",
    "project_hyperbolic",
    "project_sphere",
    "inverse_stereographic",
    "ambient_sequence",
    "hyperbolic_ambient_sequence",
    "sphere_ambient_sequence",
    "check_lift_hyperbolic",
    "check_lift_sphere",
]


@dataclass
class LiftReport:
    """One instance of a lift identity at an ambient point."""

    point: tuple
    lhs: complex
    rhs: complex
    scale: float
    order: int = 1
    values: Optional[list] = field(default=None, repr=False, compare=False)
    rel_residual: float = field(init=False, default=0.0)

    def __post_init__(self):
        self.rel_residual = abs(self.lhs - self.rhs) / max(self.scale, 1.0)

    def to_dict(self):
        return {
            "point": [float(v) for v in self.point],
            "order": self.order,
            "lhs": [complex(self.lhs).real, complex(self.lhs).imag],
            "rhs": [complex(self.rhs).real, complex(self.rhs).imag],
            "scale": self.scale,
            "rel_residual": self.rel_residual,
        }


@dataclass
class AmbientSequence:
    """``values[k]`` is the k-th nested weighted ambient operator at the point."""

    values: list
    scale: float


def project_hyperbolic(y):
    y = [float(v) for v in y]
    q = lorentz_inner(y, y)
    if not (q < 0 and y[0] > 0):
        raise DomainError(f"point {tuple(y)} is outside the future light cone")
    s = math.sqrt(-q)
    return tuple(v / s for v in y)


def project_sphere(y):
    y = [float(v) for v in y]
    s = math.sqrt(sum(v * v for v in y))
    if s == 0:
        raise DomainError("cannot project the origin onto the sphere")
    return tuple(v / s for v in y)


def inverse_stereographic(u):
    """Stereographic coordinates -> point of the unit sphere (projection from
    the last coordinate's north pole).  Works on numbers and jets."""
    q = 1.0 + sum(v * v for v in u)
    inv = 1.0 / q
    return [v * inv * 2.0 for v in u] + [(q - 2.0) * inv]


def ambient_sequence(f_hat, y, r, signs, weight):
    """Nested ``weight * op`` applied ``r`` times to ``f_hat`` at ``y``.

    ``weight`` maps coordinate jets to the weight jet; ``signs`` defines the
    flat operator.
    """
    order = 2 * r
    F = f_hat.jet(y, order)
    coords = coordinate_jets(y, order)
    W = weight(coords)
    values = [F.value]
    scale = abs(F.value)
    for _ in range(r):
        L, s = flat_operator_jet(F, signs)
        w = W.truncate(L.order)
        F = w * L
        values.append(F.value)
        scale = max(scale, s * abs(w.value), abs(F.value))
    return AmbientSequence(values, scale)


def _minus_lorentz_square(c):
    q = c[0] * c[0]
    for v in c[1:]:
        q = q - v * v
    return q


def _euclid_square(c):
    q = c[0] * c[0]
    for v in c[1:]:
        q = q + v * v
    return q


def hyperbolic_ambient_sequence(f_hat, y, r):
    project_hyperbolic(y)
    signs = [-1.0] + [1.0] * (len(y) - 1)
    return ambient_sequence(f_hat, y, r, signs, _minus_lorentz_square)


def sphere_ambient_sequence(f_hat, y, r):
    project_sphere(y)
    return ambient_sequence(f_hat, y, r, [1.0] * len(y), _euclid_square)


def check_lift_hyperbolic(f_upper, y, r):
    """Compare tau^k(f) o pi computed two ways, for k = 1..r.

    ``f_upper`` is a field on the upper half-space.  The intrinsic side
    evaluates iterated tension at ``Phi(y)`` in the upper half-space chart;
    the ambient side nests the d'Alembertian on ``f_upper o Phi``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    n = f_upper.dim
    if len(y) != n + 1:
        raise ValueError(f"expected {n + 1} ambient coordinates, got {len(y)}")
    f_hat = ScalarField(n + 1, lambda c: f_upper.evaluate(phi_map(c)), name=f"{f_upper.name} o Phi")
    amb = hyperbolic_ambient_sequence(f_hat, y, r)
    intr = tension_sequence(upper_half_chart(n), f_upper, phi_map(y), r)
    scale = max(amb.scale, intr.scale)
    point = tuple(float(v) for v in y)
    return [LiftReport(point, intr.values[k], amb.values[k], scale, order=k)
            for k in range(1, r + 1)]


def check_lift_sphere(f_hat, y, r, lhs: Optional[complex] = 0.0):
    """Certify tau^r(f) o pi = ``lhs`` on the sphere through the ambient side.

    ``f_hat`` must be constant along rays (the composition with
    :func:`project_sphere`).  The default ``lhs = 0`` states r-harmonicity.
    The full ambient sequence is attached as ``report.values``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    amb = sphere_ambient_sequence(f_hat, y, r)
    return LiftReport(tuple(float(v) for v in y), complex(lhs), amb.values[r],
                      max(amb.scale, abs(lhs)), order=r, values=amb.values)


def on_hyperboloid(y, tol=HYPERBOLOID_TOL):
    y = [float(v) for v in y]
    return abs(lorentz_inner(y, y) + 1.0) <= tol and y[0] > 0

"""
Coordinate charts and the Laplace-Beltrami operator evaluated through jets.

The operator is used in divergence form

    tau(f) = sum_ij (1/sqrt|g|) d_j (g^ij sqrt|g| d_i f)
           = sum_ij g^ij d_i d_j f + sum_i b^i d_i f,
    b^i    = (1/sqrt|g|) sum_j d_j (g^ij sqrt|g|),

with the metric data supplied in closed form so that ``b^i`` is obtained by
differentiating jets rather than by differencing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .jets import DomainError, Jet, coordinate_jets, jet_pow, jet_recip

__all__ = [
    "MetricChart",
    "ScalarField",
    "TensionSequence",
    "upper_half_chart",
    "euclidean_chart",
    "stereographic_sphere_chart",
    "laplace_beltrami",
    "iterated_tension",
    "tension_sequence",
    "tension_jet",
    "flat_operator_jet",
    "dalembert",
]


@dataclass(frozen=True)
class MetricChart:
    """
    A Riemannian coordinate chart.

    ``inverse_metric(coords)`` returns a ``dim x dim`` nested list of jets
    (``None`` marks an identically zero entry) and ``volume_density(coords)``
    returns ``sqrt|g|`` as a jet; both take one jet per coordinate.
    """

    name: str
    dim: int
    inverse_metric: Callable[[Sequence[Jet]], list]
    volume_density: Callable[[Sequence[Jet]], Jet]
    admissible: Callable[[Sequence[complex]], bool]

    def check_point(self, point):
        if len(point) != self.dim:
            raise ValueError(f"{self.name}: expected {self.dim} coordinates, got {len(point)}")
        if not self.admissible(point):
            raise DomainError(f"{self.name}: point {tuple(point)} is not admissible")


@dataclass(frozen=True)
class ScalarField:
    """A complex function of ``dim`` coordinates that can be evaluated on jets."""

    dim: int
    evaluate: Callable[[Sequence[Jet]], Jet]
    name: str = field(default="f", compare=False)

    def jet(self, point, order):
        if len(point) != self.dim:
            raise ValueError(f"{self.name}: expected {self.dim} coordinates, got {len(point)}")
        out = self.evaluate(coordinate_jets(point, order))
        if out.dim != self.dim or out.order != order:
            raise ValueError(f"{self.name}: evaluate changed jet dim/order")
        return out

    def __call__(self, point):
        return self.jet(point, 0).value


def _real_point(point):
    return all(complex(p).imag == 0 for p in point)


def upper_half_chart(n):
    """Upper half-space model of hyperbolic n-space, coordinates (t, x_1..x_{n-1}),
    metric (dt^2 + |dx|^2) / t^2."""
    if n < 2:
        raise ValueError("upper half-space needs n >= 2")

    def inverse_metric(c):
        t2 = c[0] * c[0]
        return [[t2 if i == j else None for j in range(n)] for i in range(n)]

    def volume_density(c):
        return jet_pow(c[0], -n)

    def admissible(p):
        return _real_point(p) and complex(p[0]).real > 0

    return MetricChart(f"H^{n}", n, inverse_metric, volume_density, admissible)


def euclidean_chart(m):
    if m < 1:
        raise ValueError("Euclidean chart needs m >= 1")

    def inverse_metric(c):
        one = Jet.constant(1.0, c[0].dim, c[0].order)
        return [[one if i == j else None for j in range(m)] for i in range(m)]

    def volume_density(c):
        return Jet.constant(1.0, c[0].dim, c[0].order)

    return MetricChart(f"R^{m}", m, inverse_metric, volume_density, _real_point)


def stereographic_sphere_chart(n):
    """Unit n-sphere in stereographic coordinates u, metric 4|du|^2/(1+|u|^2)^2."""
    if n < 1:
        raise ValueError("sphere chart needs n >= 1")

    def conformal(c):
        return 1.0 + sum(u * u for u in c)

    def inverse_metric(c):
        q = conformal(c)
        w = q * q * 0.25
        return [[w if i == j else None for j in range(n)] for i in range(n)]

    def volume_density(c):
        return jet_pow(jet_recip(conformal(c)) * 2.0, n)

    return MetricChart(f"S^{n}(stereo)", n, inverse_metric, volume_density, _real_point)


# ----------------------------------------------------------------------
# Operators on jets
# ----------------------------------------------------------------------

@dataclass
class MetricData:
    """Inverse metric ``g^ij`` (order m) and drift ``b^i`` (order m - 1) as jets."""

    ginv: list
    drift: list
    order: int


def metric_data(chart, point, order):
    coords = coordinate_jets(point, order)
    ginv = chart.inverse_metric(coords)
    rho = chart.volume_density(coords)
    rho_inv = jet_recip(rho).truncate(order - 1)
    drift = []
    for i in range(chart.dim):
        div = None
        for j in range(chart.dim):
            if ginv[i][j] is not None:
                piece = (ginv[i][j] * rho).diff(j)
                div = piece if div is None else div + piece
        drift.append(None if div is None else rho_inv * div)
    return MetricData(ginv, drift, order)


def tension_jet(chart, point, F, metric=None):
    """Apply the Laplace-Beltrami operator to the jet ``F`` of a field at
    ``point``.  Returns ``(tau_F, scale)`` where ``tau_F`` has order
    ``F.order - 2`` and ``scale`` is the largest summand magnitude at the
    base point.  ``metric`` may be precomputed at any order >= ``F.order``."""
    m = F.order
    if m < 2:
        raise ValueError(f"jet order {m} too small for a second-order operator")
    if metric is None:
        metric = metric_data(chart, point, m)
    elif metric.order < m:
        raise ValueError("metric data computed at too low an order")
    low = m - 2
    dim = chart.dim
    first = [F.diff(i) for i in range(dim)]
    terms = []
    for i in range(dim):
        for j in range(dim):
            gij = metric.ginv[i][j]
            if gij is not None:
                terms.append(gij.truncate(low) * first[i].diff(j))
        if metric.drift[i] is not None:
            terms.append(metric.drift[i].truncate(low) * first[i].truncate(low))
    if not terms:
        return Jet.constant(0.0, dim, low), 0.0
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    scale = max(abs(t.value) for t in terms)
    return total, scale


def flat_operator_jet(F, signs):
    """``sum_k signs[k] * d^2 F / dy_k^2``: the flat Laplacian (all +1) or the
    d'Alembertian (signature -,+,...,+).  Returns ``(jet, scale)``."""
    if F.order < 2:
        raise ValueError(f"jet order {F.order} too small for a second-order operator")
    if len(signs) != F.dim:
        raise ValueError("one sign per coordinate required")
    terms = [F.diff(k).diff(k) * float(s) for k, s in enumerate(signs) if s]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total, max(abs(t.value) for t in terms)


def dalembert(f, point, order=2):
    """Wave operator -d^2/dy_0^2 + sum_k d^2/dy_k^2 of ``f`` at ``point``."""
    if order < 2:
        raise ValueError("d'Alembertian needs jets of order >= 2")
    F = f.jet(point, order)
    signs = [-1.0] + [1.0] * (f.dim - 1)
    return flat_operator_jet(F, signs)[0].value


@dataclass
class TensionSequence:
    """``values[k]`` is tau^k(f) at the point (``values[0]`` is f itself)."""

    values: list
    scale: float


def tension_sequence(chart, f, point, r, order=None):
    if r < 0:
        raise ValueError("r must be non-negative")
    chart.check_point(point)
    order = 2 * r if order is None else order
    if order < 2 * r:
        raise ValueError(f"jet order {order} too small for r = {r} (need {2 * r})")
    F = f.jet(point, order)
    values = [F.value]
    scale = abs(F.value)
    metric = metric_data(chart, point, order) if r else None
    for _ in range(r):
        F, s = tension_jet(chart, point, F, metric)
        values.append(F.value)
        scale = max(scale, s, abs(F.value))
    return TensionSequence(values, scale)


def laplace_beltrami(chart, f, point, order=2):
    return tension_sequence(chart, f, point, 1, order=order).values[1]


def iterated_tension(chart, f, point, r, order=None):
    """``[tau^1(f), ..., tau^r(f)]`` at ``point``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return tension_sequence(chart, f, point, r, order=order).values[1:]


"""
Batch verification of r-harmonicity and properness.

``verify`` combines the exact check on the radial factor with numerical
checks at sampled points: iterated tension on the upper half-space, the
two-sided lift comparison on the hyperboloid, and the ambient lift on the
sphere.  Residuals are relative to the largest intermediate magnitude ``S``
seen while iterating at each point.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .families import (FamilySpec, branch_clearance, hyperboloid_field, psi_inverse,
                       sphere_field, upper_half_field)
from .geometry import tension_sequence, upper_half_chart
from .jets import DomainError, Jet
from .lift import (check_lift_hyperbolic, check_lift_sphere, hyperbolic_ambient_sequence,
                   sphere_ambient_sequence)
from .logpoly import tension_1d

__all__ = [
    "SPACES",
    "SamplePlan",
    "Tolerances",
    "VerifyReport",
    "PointResult",
    "verify",
    "symbolic_check",
    "evaluate_point",
    "finite_difference_oracle",
    "grid_export",
    "coordinate_names",
    "thread_count",
]

SPACES = ("upper_half", "hyperboloid", "sphere")


def thread_count():
    """Worker cap from ``RHARMONIC_THREADS`` (default 1)."""
    raw = os.environ.get("RHARMONIC_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"RHARMONIC_THREADS must be an integer, got {raw!r}") from None


def _check_space(space):
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")


# ----------------------------------------------------------------------
# Sampling
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SamplePlan:
    """Reproducible random points of one model, kept away from singular loci.

    Upper half-space points have ``t`` log-uniform in ``[t_min, t_max]`` and
    ``x`` uniform in ``[-x_max, x_max]``.  Hyperboloid and sphere points are
    ambient, at radii uniform in ``radius``.
    """

    space: str
    count: int = 50
    rng_seed: int = 0
    t_min: float = 0.1
    t_max: float = 10.0
    x_max: float = 2.0
    null_clearance: float = 0.1
    axis_clearance: float = 0.2
    branch_clearance: float = 0.1
    radius: tuple = (0.5, 2.0)

    def __post_init__(self):
        _check_space(self.space)
        if self.count < 1:
            raise ValueError("count must be positive")

    def points(self, n):
        rng = np.random.default_rng(self.rng_seed)
        draw = {"upper_half": self._upper, "hyperboloid": self._hyperboloid,
                "sphere": self._sphere}[self.space]
        out = []
        while len(out) < self.count:
            p = draw(rng, n)
            if p is not None:
                out.append(tuple(float(v) for v in p))
        return out

    def _upper(self, rng, n):
        t = math.exp(rng.uniform(math.log(self.t_min), math.log(self.t_max)))
        return (t,) + tuple(rng.uniform(-self.x_max, self.x_max, n - 1))

    def _hyperboloid(self, rng, n):
        # hyperboloid t-range kept inside [t_min, t_max] but not wider than [0.2, 5]
        lo, hi = max(self.t_min, 0.2), min(self.t_max, 5.0)
        t = math.exp(rng.uniform(math.log(lo), math.log(hi)))
        x = rng.uniform(-1.0, 1.0, n - 1)
        c = rng.uniform(*self.radius)
        y = [c * v for v in psi_inverse((t,) + tuple(x))]
        if y[0] + y[1] < self.null_clearance:
            return None
        return y

    def _sphere(self, rng, n):
        d = rng.standard_normal(n + 1)
        y = d / np.linalg.norm(d) * rng.uniform(*self.radius)
        if math.hypot(y[0], y[1]) < self.axis_clearance:
            return None
        if branch_clearance(y) < self.branch_clearance:
            return None
        return y

    def admissible(self, p):
        """Whether ``p`` satisfies this plan's margins."""
        if self.space == "upper_half":
            return self.t_min <= p[0] <= self.t_max
        if self.space == "hyperboloid":
            q = p[0] ** 2 - sum(v * v for v in p[1:])
            return q > 0 and p[0] > 0 and p[0] + p[1] >= self.null_clearance
        return (math.hypot(p[0], p[1]) >= self.axis_clearance
                and branch_clearance(p) >= self.branch_clearance)


@dataclass(frozen=True)
class Tolerances:
    residual: Optional[float] = None  # default: 1e-8, or 1e-7 on the sphere
    properness: float = 1e-6
    fd_nested: float = 1e-3

    def residual_for(self, space):
        if self.residual is not None:
            return self.residual
        return 1e-7 if space == "sphere" else 1e-8


# ----------------------------------------------------------------------
# Per-point evaluation
# ----------------------------------------------------------------------

@dataclass
class PointResult:
    point: tuple
    values: list          # tau^0 .. tau^r at the point (intrinsic)
    scale: float
    residual: float       # |tau^r| / S, and lift mismatch on the hyperboloid
    prev_abs: float       # |tau^(r-1)|

    @property
    def prev_rel(self):
        return self.prev_abs / self.scale if self.scale > 0 else 0.0


def evaluate_point(spec, space, point):
    """tau^0..tau^r of the family member at one point of ``space``.

    Raises :class:`~rharmonic.jets.DomainError` at inadmissible points.
    """
    _check_space(space)
    r = spec.r
    if space == "upper_half":
        seq = tension_sequence(upper_half_chart(spec.n), upper_half_field(spec), point, r)
        values, scale, mismatch = seq.values, seq.scale, 0.0
    elif space == "hyperboloid":
        reports = check_lift_hyperbolic(upper_half_field(spec), point, r)
        scale = reports[0].scale
        f0 = hyperboloid_field(spec)(point)
        values = [f0] + [rep.rhs for rep in reports]
        mismatch = max(abs(rep.lhs - rep.rhs) for rep in reports)
        mismatch = max(mismatch, abs(reports[-1].lhs))
    else:
        rep = check_lift_sphere(sphere_field(spec), point, r)
        values, scale, mismatch = rep.values, rep.scale, 0.0
    top = max(abs(values[r]), mismatch)
    residual = top / scale if scale > 0 else top
    return PointResult(tuple(point), list(values), scale, residual, abs(values[r - 1]))


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------

def symbolic_check(spec, tol=1e-12):
    """Exact check on the radial factor: tension_1d^r(p_r) = 0 and
    tension_1d^(r-1)(p_r) != 0, coefficients relative to p_r."""
    p = spec.radial
    q = p
    for _ in range(spec.r - 1):
        q = tension_1d(q, spec.n)
    last = tension_1d(q, spec.n)
    return last.is_zero(ref=p, tol=tol) and not q.is_zero(ref=p, tol=tol)


@dataclass
class VerifyReport:
    spec: FamilySpec
    space: str
    symbolic_pass: bool
    max_rel_residual_r: float
    max_abs_tau_prev: float
    max_rel_tau_prev: float
    properness: bool
    points_used: int
    points_excluded: int
    residual_tol: float
    properness_tol: float
    errors: list = field(default_factory=list)

    @property
    def residual_pass(self):
        return self.points_used > 0 and self.max_rel_residual_r <= self.residual_tol

    @property
    def passed(self):
        return self.symbolic_pass and self.residual_pass and self.properness

    def to_dict(self):
        d = asdict(self)
        d["spec"] = self.spec.to_dict()
        d["residual_pass"] = self.residual_pass
        d["passed"] = self.passed
        return d

    def to_text(self):
        s = self.spec
        lines = [
            f"space            {self.space}",
            f"family           n={s.n} r={s.r} a={complex(s.a)} b={complex(s.b)} seed={s.seed.id}",
            f"symbolic_pass    {self.symbolic_pass}",
            f"max residual     {self.max_rel_residual_r:.3e} (tol {self.residual_tol:.1e})",
            f"max |tau^(r-1)|  {self.max_abs_tau_prev:.6e} (rel {self.max_rel_tau_prev:.3e})",
            f"properness       {self.properness} (tol {self.properness_tol:.1e})",
            f"points           {self.points_used} used, {self.points_excluded} excluded",
            f"result           {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines)


def _safe_evaluate(args):
    spec, space, point = args
    try:
        return evaluate_point(spec, space, point)
    except DomainError as exc:
        return exc


def verify(spec, space, plan=None, tolerances=None):
    _check_space(space)
    plan = plan or SamplePlan(space)
    if plan.space != space:
        raise ValueError(f"sample plan is for {plan.space!r}, not {space!r}")
    tol = tolerances or Tolerances()
    points = plan.points(spec.n)

    jobs = [(spec, space, p) for p in points]
    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_safe_evaluate, jobs))
    else:
        results = [_safe_evaluate(j) for j in jobs]

    good = [r for r in results if isinstance(r, PointResult)]
    errors = [f"{p}: {r}" for p, r in zip(points, results) if not isinstance(r, PointResult)]
    residual = max((r.residual for r in good), default=math.inf)
    prev_abs = max((r.prev_abs for r in good), default=0.0)
    prev_rel = max((r.prev_rel for r in good), default=0.0)
    return VerifyReport(
        spec=spec,
        space=space,
        symbolic_pass=symbolic_check(spec),
        max_rel_residual_r=residual,
        max_abs_tau_prev=prev_abs,
        max_rel_tau_prev=prev_rel,
        properness=prev_rel > tol.properness,
        points_used=len(good),
        points_excluded=len(errors),
        residual_tol=tol.residual_for(space),
        properness_tol=tol.properness,
        errors=errors,
    )


# ----------------------------------------------------------------------
# Finite-difference oracle
# ----------------------------------------------------------------------

def _metric_numbers(chart, x):
    c = [Jet.constant(v, chart.dim, 0) for v in x]
    ginv = chart.inverse_metric(c)
    rho = chart.volume_density(c).value
    return [[None if g is None else g.value for g in row] for row in ginv], rho


def _fd_tension(chart, func, x, steps):
    """Second-order central differences of the divergence form at ``x``."""
    x = np.asarray(x, dtype=float)
    dim = chart.dim
    g0, rho0 = _metric_numbers(chart, x)
    f0 = func(x)

    def shifted(i, s):
        y = x.copy()
        y[i] += s
        return y

    def w(y, i, j):
        g, rho = _metric_numbers(chart, y)
        return None if g[i][j] is None else g[i][j] * rho

    total = 0j
    for i in range(dim):
        hi = steps[i]
        for j in range(dim):
            if g0[i][j] is None:
                continue
            if i == j:
                fp, fm = func(shifted(i, hi)), func(shifted(i, -hi))
                wp, wm = w(shifted(i, hi / 2), i, i), w(shifted(i, -hi / 2), i, i)
                total += (wp * (fp - f0) - wm * (f0 - fm)) / hi ** 2
            else:
                hj = steps[j]

                def flux(y):
                    yp, ym = y.copy(), y.copy()
                    yp[i] += hi
                    ym[i] -= hi
                    return w(y, i, j) * (func(yp) - func(ym)) / (2 * hi)

                total += (flux(shifted(j, hj)) - flux(shifted(j, -hj))) / (2 * hj)
    return total / rho0


def finite_difference_oracle(chart, f, point, k=1, step=None):
    """tau^k(f) at ``point`` (k in {1, 2}) by nested central differences.

    Steps are ``step * max(|x_i|, 1)`` per coordinate, with ``step`` 1e-4
    for k = 1 and 1e-3 for k = 2.  The point must stay admissible within
    ten steps in every coordinate direction.
    """
    if k not in (1, 2):
        raise ValueError("finite-difference oracle supports k = 1 or 2")
    x = np.asarray([float(v) for v in point])
    rel = step if step is not None else (1e-4 if k == 1 else 1e-3)
    steps = rel * np.maximum(np.abs(x), 1.0)
    margin = 10 * k * steps
    for i in range(chart.dim):
        for s in (-1, 1):
            y = x.copy()
            y[i] += s * margin[i]
            if not chart.admissible(tuple(y)):
                raise DomainError(f"point {tuple(x)} too close to the chart boundary")

    def func(y):
        return f(tuple(y))

    if k == 1:
        return _fd_tension(chart, func, x, steps)
    return _fd_tension(chart, lambda y: _fd_tension(chart, func, y, steps), x, steps)


# ----------------------------------------------------------------------
# Grid export
# ----------------------------------------------------------------------

def coordinate_names(space, n):
    _check_space(space)
    if space == "upper_half":
        return ["t"] + [f"x{i}" for i in range(1, n)]
    if space == "hyperboloid":
        return [f"y{i}" for i in range(n + 1)]
    return [f"y{i}" for i in range(1, n + 2)]


def _grid_values(spec, space, point):
    r = spec.r
    if space == "upper_half":
        return tension_sequence(upper_half_chart(spec.n), upper_half_field(spec), point, r).values
    if space == "hyperboloid":
        return hyperbolic_ambient_sequence(hyperboloid_field(spec), point, r).values
    return sphere_ambient_sequence(sphere_field(spec), point, r).values


def _axis(desc):
    start, stop, num = desc
    return np.linspace(float(start), float(stop), int(num))


def grid_export(spec, space, grid, path=None):
    """Write f and tau^1..tau^r on a tensor grid as CSV.

    ``grid`` is one ``(start, stop, num)`` triple per coordinate.  Rows are
    in lexicographic grid-index order; cells where a value cannot be
    computed keep their coordinates and leave value fields empty.
    Returns ``(csv_text, inadmissible_cells)``.
    """
    _check_space(space)
    names = coordinate_names(space, spec.n)
    if len(grid) != len(names):
        raise ValueError(f"grid needs {len(names)} axes for {space}, got {len(grid)}")
    axes = [_axis(g) for g in grid]
    header = list(names) + ["re_f", "im_f"]
    for k in range(1, spec.r + 1):
        header += [f"re_tau{k}", f"im_tau{k}"]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    bad = []
    for idx in itertools.product(*(range(len(a)) for a in axes)):
        point = tuple(float(a[i]) for a, i in zip(axes, idx))
        row = [f"{v:.17g}" for v in point]
        try:
            values = _grid_values(spec, space, point)
        except DomainError:
            bad.append(point)
            row += [""] * (2 * (spec.r + 1))
        else:
            for v in values:
                row += [f"{v.real:.17g}", f"{v.imag:.17g}"]
        writer.writerow(row)
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text, bad

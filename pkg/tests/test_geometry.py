import numpy as np
import pytest
import sympy as sp

from rharmonic.geometry import (ScalarField, dalembert, euclidean_chart, iterated_tension,
                                laplace_beltrami, stereographic_sphere_chart, tension_sequence,
                                upper_half_chart)
from rharmonic.jets import DomainError, Jet, coordinate_jets, jet_log, jet_pow, jet_recip, jet_sqrt
from rharmonic.verify import finite_difference_oracle


def field(dim, fn, name="f"):
    return ScalarField(dim, fn, name)


def sympy_tension(ginv, sqrtg, f, xs):
    """Divergence form of the Laplace-Beltrami operator, symbolically."""
    m = len(xs)
    return sp.simplify(sum(sp.diff(ginv[i][j] * sqrtg * sp.diff(f, xs[i]), xs[j])
                           for i in range(m) for j in range(m)) / sqrtg)


def const_field(dim, c=2.5 - 1j):
    return field(dim, lambda x: Jet.constant(c, x[0].dim, x[0].order))


# -- charts ------------------------------------------------------------

def test_upper_half_chart_metric():
    ch = upper_half_chart(2)
    c = coordinate_jets((2.0, 0.0), 0)
    g = ch.inverse_metric(c)
    assert g[0][0].value == 4 and g[1][1].value == 4 and g[0][1] is None
    assert ch.volume_density(c).value == pytest.approx(0.25)
    assert upper_half_chart(4).volume_density(coordinate_jets((1.0, 5, -2, 3), 0)).value == 1
    with pytest.raises(ValueError):
        upper_half_chart(1)


def test_upper_half_admissibility():
    ch = upper_half_chart(3)
    f = const_field(3)
    with pytest.raises(DomainError):
        laplace_beltrami(ch, f, (0.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        laplace_beltrami(ch, f, (-1.0, 1.0, 1.0))


def test_t_squared_is_harmonic_in_h3():
    # t^2 * 2 - (n - 2) * t * 2t = 0 at n = 3
    f = field(3, lambda x: x[0] * x[0])
    for t in (0.3, 1.0, 2.0, 7.5):
        assert laplace_beltrami(upper_half_chart(3), f, (t, 0.4, -1.0)) == pytest.approx(0, abs=1e-12)


def test_laplace_beltrami_examples():
    t_cubed = field(4, lambda x: x[0] * x[0] * x[0])
    for p in [(0.5, 1, 2, 3), (2.0, -1, 0, 0.5)]:
        assert laplace_beltrami(upper_half_chart(4), t_cubed, p) == pytest.approx(0, abs=1e-12)
    for ch, p in [(upper_half_chart(3), (1.2, 0, 1)), (euclidean_chart(2), (0.3, 0.1)),
                  (stereographic_sphere_chart(3), (0.2, 0.5, -0.1))]:
        assert laplace_beltrami(ch, const_field(ch.dim), p) == 0
    # tau(t) on H^3 at t = 2 is -(3 - 2) * 2
    t_field = field(3, lambda x: x[0])
    assert laplace_beltrami(upper_half_chart(3), t_field, (2.0, 0.7, 0.1)) == pytest.approx(-2)


def test_euclidean_examples():
    e = euclidean_chart(2)
    p = (0.7, -1.3)
    assert laplace_beltrami(e, field(2, lambda x: x[0] * x[0]), p) == pytest.approx(2)
    assert laplace_beltrami(e, field(2, lambda x: x[0] * x[1]), p) == pytest.approx(0)
    assert laplace_beltrami(e, field(2, lambda x: x[0] * x[0] - x[1] * x[1]), p) == pytest.approx(0)
    with pytest.raises(ValueError):
        euclidean_chart(0)


def test_iterated_tension_examples():
    # f = (1 + t^3) log t * x1 on H^4 at (2, 3, 0, 0): tau = -3 (1 - 8) * 3, tau^2 = 0
    f = field(4, lambda x: (1 + jet_pow(x[0], 3)) * jet_log(x[0]) * x[1])
    t1, t2 = iterated_tension(upper_half_chart(4), f, (2.0, 3.0, 0.0, 0.0), 2)
    assert t1 == pytest.approx(63, rel=1e-12)
    assert abs(t2) <= 1e-8 * 63
    assert iterated_tension(euclidean_chart(3), const_field(3), (1, 2, 3), 3) == [0, 0, 0]
    x4 = field(2, lambda x: jet_pow(x[0], 4))
    assert iterated_tension(euclidean_chart(2), x4, (1.0, 0.0), 2) == [pytest.approx(12), pytest.approx(24)]


def test_iterated_tension_order_check():
    with pytest.raises(ValueError):
        iterated_tension(euclidean_chart(1), const_field(1), (1.0,), 2, order=3)
    with pytest.raises(ValueError):
        iterated_tension(euclidean_chart(1), const_field(1), (1.0,), 0)


def test_dalembert_examples():
    p = (1.3, -0.4, 0.8)
    assert dalembert(field(3, lambda y: y[0] * y[0]), p) == pytest.approx(-2)
    assert dalembert(field(3, lambda y: y[1] * y[1]), p) == pytest.approx(2)
    assert dalembert(field(3, lambda y: y[0] * y[0] + y[1] * y[1]), p) == pytest.approx(0)
    with pytest.raises(ValueError):
        dalembert(field(3, lambda y: y[0]), p, order=1)


def test_dalembert_kills_null_coordinate_functions():
    rng = np.random.default_rng(3)
    g = field(4, lambda y: jet_log(y[0] + y[1]) * jet_pow(y[0] + y[1], 5) + jet_recip(y[0] + y[1] + 3))
    for _ in range(20):
        p = tuple(rng.uniform(0.5, 2.0, 4))
        assert abs(dalembert(g, p)) <= 1e-10 * max(1.0, abs(g(p)))


# -- properties --------------------------------------------------------

def random_polylog_field(rng, dim, terms=3):
    """Random field sum c * x0^k log(x0)^m * monomial(x1..), defined for x0 > 0."""
    spec = []
    for _ in range(terms):
        k = int(rng.integers(-2, 4))
        m = int(rng.integers(0, 3))
        exps = rng.integers(0, 3, dim - 1)
        c = complex(rng.normal(), rng.normal())
        spec.append((c, k, m, exps))

    def fn(x):
        out = Jet.constant(0.0, x[0].dim, x[0].order)
        log0 = jet_log(x[0])
        for c, k, m, exps in spec:
            term = jet_pow(x[0], k) * jet_pow(log0, m)
            for xi, e in zip(x[1:], exps):
                term = term * jet_pow(xi, int(e))
            out = out + term * c
        return out

    return field(dim, fn, "polylog")


def test_linearity():
    rng = np.random.default_rng(11)
    for n in (2, 3, 5):
        ch = upper_half_chart(n)
        f, g = random_polylog_field(rng, n), random_polylog_field(rng, n)
        al, be = 0.3 - 2j, 1.7 + 0.4j
        h = field(n, lambda x: f.evaluate(x) * al + g.evaluate(x) * be)
        for _ in range(5):
            p = (rng.uniform(0.3, 3),) + tuple(rng.uniform(-1, 1, n - 1))
            lhs = laplace_beltrami(ch, h, p)
            rhs = al * laplace_beltrami(ch, f, p) + be * laplace_beltrami(ch, g, p)
            assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1.0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_upper_half_matches_coordinate_formula(n):
    """t^2 (Lap_x f + f_tt) - (n - 2) t f_t, read from the same jet."""
    rng = np.random.default_rng(100 + n)
    ch = upper_half_chart(n)
    for _ in range(10):
        f = random_polylog_field(rng, n)
        p = (rng.uniform(0.2, 4),) + tuple(rng.uniform(-1.5, 1.5, n - 1))
        F = f.jet(p, 2)
        t = p[0]
        second = sum(F.diff(i).diff(i).value for i in range(n))
        explicit = t * t * second - (n - 2) * t * F.diff(0).value
        seq = tension_sequence(ch, f, p, 1)
        assert abs(seq.values[1] - explicit) <= 1e-12 * max(seq.scale, abs(explicit))


def test_stereographic_chart_against_sympy():
    u, v = sp.symbols("u v", real=True)
    q = 1 + u ** 2 + v ** 2
    ginv = [[q ** 2 / 4, 0], [0, q ** 2 / 4]]
    sqrtg = (2 / q) ** 2
    f_expr = sp.sqrt(u + 3) * v ** 2 + u * v
    expected = sympy_tension(ginv, sqrtg, f_expr, [u, v])
    f = field(2, lambda x: jet_sqrt(x[0] + 3) * x[1] * x[1] + x[0] * x[1])
    for p in [(0.3, -0.2), (1.1, 0.7)]:
        val = complex(expected.subs({u: p[0], v: p[1]}))
        assert laplace_beltrami(stereographic_sphere_chart(2), f, p) == pytest.approx(val, rel=1e-12)


def test_agrees_with_finite_differences():
    rng = np.random.default_rng(5)
    for ch in (upper_half_chart(3), euclidean_chart(2), stereographic_sphere_chart(3)):
        for _ in range(5):
            f = random_polylog_field(rng, ch.dim)
            p = (rng.uniform(0.5, 2.5),) + tuple(rng.uniform(-1, 1, ch.dim - 1))
            seq = tension_sequence(ch, f, p, 1)
            fd = finite_difference_oracle(ch, f, p, 1)
            assert abs(seq.values[1] - fd) <= 1e-5 * max(seq.scale, abs(seq.values[1]))

import math

import numpy as np
import pytest

from rharmonic.families import (FamilySpec, HarmonicSeed, Polynomial, branch_clearance, get_seed,
                                hyperboloid_field, lorentz_inner, phi_map, psi_inverse, psi_isometry,
                                seed_catalog, sphere_argument, sphere_field, upper_half_field)
from rharmonic.geometry import tension_sequence, upper_half_chart
from rharmonic.jets import DomainError, coordinate_jets
from rharmonic.logpoly import build_pr, evaluate


def spec(n=4, r=2, a=1, b=1, seed="coord:1"):
    return FamilySpec(n, r, a, b, get_seed(n, seed))


# -- seeds -------------------------------------------------------------

def test_catalog_contents():
    assert [s.id for s in seed_catalog(2)] == ["coord:1"]
    assert str(seed_catalog(2)[0]) == "x1"
    ids = {s.id for s in seed_catalog(4)}
    assert {"coord:1", "coord:2", "coord:3", "diff_sq", "prod"} <= ids
    assert {f"{kind}:{k}" for kind in ("re_zk", "im_zk") for k in range(1, 5)} <= ids
    with pytest.raises(ValueError):
        seed_catalog(1)
    with pytest.raises(KeyError):
        get_seed(2, "diff_sq")


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_catalog_seeds_are_harmonic(n):
    for s in seed_catalog(n):
        assert s.poly.laplacian().is_zero()
        assert s.poly.degree >= 1


def test_cubic_seed_expansion():
    x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    expected = x1 ** 3 - (x1 * x2 * x2).scale(3)
    h = get_seed(3, "re_zk:3").poly
    assert (h - expected).is_zero()
    assert h.laplacian().is_zero()


def test_seed_validation():
    x = Polynomial.variable(2, 0)
    with pytest.raises(ValueError):
        HarmonicSeed("sq", 2, x * x)
    with pytest.raises(ValueError):
        HarmonicSeed("const", 2, Polynomial(2, {(0, 0): 1}))


def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec(4, 2, 0, 0, get_seed(4, "coord:1"))
    with pytest.raises(ValueError):
        FamilySpec(4, 0, 1, 1, get_seed(4, "coord:1"))
    with pytest.raises(ValueError):
        FamilySpec(4, 2, 1, 1, get_seed(3, "coord:1"))
    assert spec(a=1 + 2j).to_dict() == {"n": 4, "r": 2, "a": [1.0, 2.0], "b": [1.0, 0.0], "seed": "coord:1"}


# -- upper half-space --------------------------------------------------

def test_upper_half_field_examples():
    f = upper_half_field(spec())
    assert f((2.0, 3.0, 0.0, 0.0)) == pytest.approx(27 * math.log(2))
    assert f((1.0, 3.0, -1.0, 2.0)) == 0
    g = upper_half_field(spec(n=3, r=1, a=1, b=0, seed="re_zk:3"))
    p = (0.8, 1.2, -0.4)
    assert g(p) == pytest.approx(1.2 ** 3 - 3 * 1.2 * 0.16)
    assert tension_sequence(upper_half_chart(3), g, p, 1).values[1] == pytest.approx(0, abs=1e-12)
    with pytest.raises(DomainError):
        f((0.0, 1.0, 1.0, 1.0))


def random_upper_point(rng, n):
    t = math.exp(rng.uniform(math.log(0.1), math.log(10)))
    return (t,) + tuple(rng.uniform(-2, 2, n - 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_upper_half_fields_are_proper_r_harmonic(n):
    rng = np.random.default_rng(40 + n)
    catalog = seed_catalog(n)
    for r in range(1, 5):
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        seed = catalog[int(rng.integers(len(catalog)))]
        f = upper_half_field(FamilySpec(n, r, a, b, seed))
        prev = 0.0
        for _ in range(50):
            seq = tension_sequence(upper_half_chart(n), f, random_upper_point(rng, n), r)
            assert abs(seq.values[r]) <= 1e-8 * seq.scale
            prev = max(prev, abs(seq.values[r - 1]) / seq.scale)
        assert prev >= 1e-6


# -- hyperboloid -------------------------------------------------------

def test_psi_examples():
    assert psi_isometry((1.0, 0.0, 0.0)) == pytest.approx((2.0, 0.0))
    y = (math.sqrt(2), 1.0, 0.0, 0.0)
    assert lorentz_inner(y, y) == pytest.approx(-1)
    assert psi_isometry(y) == pytest.approx((2 / (math.sqrt(2) + 1), 0.0, 0.0))
    with pytest.raises(DomainError):
        psi_isometry((2.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        psi_isometry((-1.0, 0.0, 0.0))


def test_psi_inverse_roundtrip():
    rng = np.random.default_rng(8)
    for _ in range(50):
        p = random_upper_point(rng, 4)
        y = psi_inverse(p)
        assert lorentz_inner(y, y) == pytest.approx(-1, abs=1e-10)
        assert y[0] > 0
        assert psi_isometry(y) == pytest.approx(p, rel=1e-10)


def test_phi_examples():
    assert phi_map((2.0, 0.0, 0.0, 0.0)) == pytest.approx((2.0, 0.0, 0.0))
    rng = np.random.default_rng(9)
    for _ in range(20):
        y = psi_inverse(random_upper_point(rng, 3))
        assert phi_map(y) == pytest.approx(psi_isometry(y), rel=1e-12)
        c = rng.uniform(0.3, 3)
        assert phi_map(tuple(c * v for v in y)) == pytest.approx(phi_map(y), rel=1e-12)
    with pytest.raises(DomainError):
        phi_map((1.0, 2.0, 0.0))


def test_phi_on_jets_matches_numbers():
    y = (3.0, 1.0, 0.5, -0.7)
    jets = phi_map(coordinate_jets(y, 2))
    assert [j.value for j in jets] == pytest.approx(list(phi_map(y)))


def test_hyperboloid_field_is_upper_half_field_through_psi():
    rng = np.random.default_rng(10)
    for n in (2, 3, 5):
        s = FamilySpec(n, 3, 0.5 - 1j, 2 + 0.3j, seed_catalog(n)[-1])
        f_up, f_hyp = upper_half_field(s), hyperboloid_field(s)
        for _ in range(20):
            p = random_upper_point(rng, n)
            y = psi_inverse(p)
            expected = f_up(psi_isometry(y))
            assert abs(f_hyp(y) - expected) <= 1e-10 * max(abs(expected), 1e-300)
            c = rng.uniform(0.5, 2)
            assert f_hyp(tuple(c * v for v in y)) == pytest.approx(f_hyp(y), rel=1e-10)


def test_hyperboloid_field_example():
    f = hyperboloid_field(spec(r=1, a=0, b=1))
    y = psi_inverse((1.5, 0.4, -1.0, 2.0))
    assert f(y) == pytest.approx(1.5 ** 3 * 0.4, rel=1e-10)


# -- sphere ------------------------------------------------------------

def test_sphere_field_examples():
    for n, r in ((2, 1), (3, 2), (4, 3)):
        s = spec(n=n, r=r, a=1 + 1j, b=-0.5, seed="coord:1")
        y = (0.0, 1.0) + (0.0,) * (n - 1)
        assert sphere_argument(y) == pytest.approx(2)
        # p_r(2) * h(0); catalog seeds are homogeneous, so h(0) = 0
        assert sphere_field(s)(y) == evaluate(build_pr(n, r, 1 + 1j, -0.5), 2) * 0
    s = spec(n=3, r=2, seed="coord:1")
    y = (0.3, 0.5, 0.6, -0.1)
    d = complex(y[1], y[0])
    expected = evaluate(s.radial, 2 * math.sqrt(sum(v * v for v in y)) / d) * (2 * y[2] / d)
    assert sphere_field(s)(y) == pytest.approx(expected)


def test_sphere_field_polynomial_extension():
    # h* = x2 evaluated at the complex argument 2 y4 / (y3 + i y2)... here y2 = 0
    s = spec(n=3, r=2, a=1, b=2, seed="coord:2")
    y = (0.0, 1.0, 0.0, 0.5)
    assert sphere_field(s)(y) == pytest.approx(evaluate(s.radial, sphere_argument(y)) * 2 * 0.5)


def test_sphere_field_branch_errors():
    f = sphere_field(spec(n=2, r=2, seed="coord:1"))
    with pytest.raises(DomainError):
        f((0.0, 0.0, 1.0))  # y2 + i y1 = 0
    with pytest.raises(DomainError):
        f((0.0, -1.0, 0.0))  # argument -2 on the cut
    assert branch_clearance((0.0, 1.0, 0.0)) == pytest.approx(math.pi)
    assert branch_clearance((1.0, 0.0, 0.0)) == pytest.approx(math.pi / 2)

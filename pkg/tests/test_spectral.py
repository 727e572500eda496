import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexdimer import kasteleyn as ks
from hexdimer import spectral as sp

strip = st.builds(complex, st.floats(-math.pi, 3 * math.pi), st.floats(-0.59, 0.59))


def test_root_at_zero():
    assert sp.roots(0).r1 == pytest.approx(cmath.exp(2j * math.pi / 3), abs=1e-14)
    assert sp.roots(0).r1 == pytest.approx(sp.ROOT_AT_ZERO, abs=1e-14)


def test_real_roots_at_plus_minus_pi():
    assert sp.roots(math.pi).r1 == pytest.approx(-(3 + 5**0.5) / 2, abs=1e-12)
    assert sp.roots(-math.pi).r1 == pytest.approx(-(3 - 5**0.5) / 2, abs=1e-12)


@given(strip)
@settings(max_examples=200, deadline=None)
def test_roots_solve_the_quadratic(phi):
    r = sp.roots(phi)
    assert abs(r.r1 * r.r2 - 1) < 1e-12
    assert sp.quadratic_residual(phi) < 1e-12 * (1 + abs(r.r1) ** 2)
    assert r.r1.real < 0
    assert math.pi / 2 < r.log_r1.imag < 3 * math.pi / 2


@given(st.floats(-0.59, 0.59))
@settings(max_examples=50, deadline=None)
def test_unit_modulus_on_imaginary_axis(y):
    assert abs(sp.roots(1j * y).r1) == pytest.approx(1.0, abs=1e-12)


@given(st.builds(complex, st.floats(-math.pi, math.pi), st.floats(-0.5, 0.5)))
@settings(max_examples=100, deadline=None)
def test_arg_shift(phi):
    assert sp.arg_shift_check(phi) < 1e-10


def test_r1_is_continuous_along_real_axis():
    xs = np.linspace(-math.pi, 3 * math.pi, 4001)
    r = np.array([sp.roots(x).r1 for x in xs])
    assert np.max(np.abs(np.diff(r))) < 0.02


def test_small_phi_expansion():
    for t in (1e-2, 5e-3):
        approx = sp.ROOT_AT_ZERO * cmath.exp(t / math.sqrt(3))
        assert abs(sp.roots(t).r1 - approx) < t**2


@pytest.mark.parametrize("phi", [4 * math.pi, -3.5, 1j * math.log(4), -1.5j])
def test_roots_domain_errors(phi):
    with pytest.raises(ValueError):
        sp.roots(phi)


@pytest.mark.parametrize("m,n", [(4, 12), (5, 15), (8, 24)])
def test_lambda_phase_at_origin_is_real(m, n):
    z = sp.lambda_product(0.0, m, n)
    assert z.is_real(1e-10)


@pytest.mark.parametrize("m", [3, 4, 7, 8])
def test_split_and_merged_products_agree(m):
    n = 3 * m
    a1, a2 = sp.lambda_split(0.4, m, n)
    assert cmath.exp(a1 + a2 - sp.log_lambda(0.4, m, n)) == pytest.approx(1, abs=1e-10)
    g1, g2 = sp.gamma_split(0.4, m, n)
    assert cmath.exp(g1 + g2 - sp.log_gamma(0.4, m, n)) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("m,n", [(4, 12), (5, 15), (6, 9)])
def test_paired_gamma_form(m, n):
    diff = sp.log_gamma_paired(0.3, m, n) - sp.log_gamma(0.3, m, n)
    assert cmath.exp(diff) == pytest.approx((-1) ** n, abs=1e-10)


def test_lambda_product_matches_kasteleyn_block():
    # the (1, 1) Kasteleyn block factors as a bulk term times a theta-like remainder,
    # so their ratio stays of order one while each grows like exp(-mn f)
    m, n = 8, 24
    bulk = sp.lambda_product(0.0, m, n)
    z = ks.block_term(1, 1, ks.Perturbation(), m, n)
    assert abs(float(z.log_magnitude - bulk.log_magnitude)) < 1.0


def test_grid_leaving_the_strip():
    with pytest.raises(ValueError):
        sp.log_lambda(2.0, 1, 3)


@pytest.mark.parametrize("which", ["11", "10", "01"])
def test_corollary_ratio_near_one(which):
    c = sp.corollary_check(which, 0.3, -0.2, 16, 48)
    assert c.log_ratio < 0.1


def test_corollary_degenerate_term():
    c = sp.corollary_check("00", 0.0, 0.0, 4, 12)
    assert c.finite == 0 and c.limit == 0


def test_corollary_input_checks():
    with pytest.raises(ValueError):
        sp.corollary_check("22", 0, 0, 4, 12)
    with pytest.raises(ValueError):
        sp.corollary_check("11", 0, 0, 1, 3)


def test_bulk_asymptotics_shrink():
    r = [sp.prop18_residuals(0.5, k, 3 * k) for k in (4, 8, 16)]
    assert r[0].part1 > r[1].part1 > r[2].part1
    assert r[0].part3 > r[1].part3 > r[2].part3
    assert sp.prop18_residuals(0.0, 8, 24).part1 < 1e-12


def test_lemma_report():
    rep = sp.lemma12_13_report(0.0, 0.0, 16, 48)
    assert rep.cutoff == 2
    assert rep.tail_max < 1e-6
    assert max(rep.head_deviations) < 0.1


def test_quadrature_simple_integrals():
    v, e = sp.adaptive_gauss_legendre(np.sin, [0.0, math.pi], 1e-13)
    assert v == pytest.approx(2.0, abs=1e-13)
    v, _ = sp.adaptive_gauss_legendre(lambda x: np.log(np.abs(x)), [-1.0, 0.0, 1.0], 1e-10)
    assert v == pytest.approx(-2.0, abs=1e-9)


def test_quadrature_depth_limit():
    with pytest.raises(ArithmeticError):
        sp.adaptive_gauss_legendre(lambda x: np.sign(x - 0.3), [0.0, 1.0], 1e-14, max_depth=3)


def test_free_energy_methods_agree():
    vals = [sp.free_energy(m).value for m in sp.FREE_ENERGY_METHODS]
    assert max(vals) - min(vals) < 1e-8
    assert vals[0] == pytest.approx(sp.FREE_ENERGY_REFERENCE, abs=1e-9)


def test_free_energy_matches_finite_tori():
    f = sp.free_energy().value
    errs = [abs(-ks.partition(ks.Perturbation(), k, 3 * k).log_magnitude / (3 * k * k) - f)
            for k in (2, 4, 8)]
    assert errs[0] > errs[1] > errs[2]


def test_free_energy_argument_checks():
    with pytest.raises(ValueError):
        sp.free_energy("simpson")
    with pytest.raises(ValueError):
        sp.free_energy(tol=0)


@given(st.builds(complex, st.floats(-math.pi + 1e-6, math.pi - 1e-6), st.floats(-0.59, 0.59)))
@settings(max_examples=100, deadline=None)
def test_r1_in_upper_half_plane_on_central_strip(phi):
    assert sp.roots(phi).r1.imag > 0

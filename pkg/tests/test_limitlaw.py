import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexdimer import enumeration as en
from hexdimer import honeycomb as hc
from hexdimer import limitlaw as ll
from hexdimer import theta as th

rhos = st.floats(0.3, 3.0)


def test_origin_probability():
    for rho in (0.5, 1.0, 3**0.5):
        g = ll.law(rho)
        assert g[(0, 0)] == pytest.approx(1 / g.Z, rel=1e-15)


@given(rhos)
@settings(max_examples=30, deadline=None)
def test_law_is_normalised_and_symmetric(rho):
    g = ll.law(rho)
    assert math.fsum(g.probabilities.values()) == pytest.approx(1.0, abs=1e-12)
    for (k, l), p in list(g.probabilities.items())[::7]:
        assert g[(-k, -l)] == p


def test_square_modulus_swaps_axes():
    g = ll.law(1.0)
    for (k, l), p in g.probabilities.items():
        assert g[(l, k)] == pytest.approx(p, rel=1e-14)


def test_normaliser_factorises_into_thetas():
    z1 = ll.law(1.0).Z
    assert z1 == pytest.approx(th.theta(3, 0, math.exp(-math.pi / 2)).real ** 2, abs=1e-10)


def test_tail_bound_holds():
    g = ll.law(2.0, eps=1e-6)
    wide = ll.law(2.0, eps=1e-6, min_radius=g.K + 5)
    outside = math.fsum(p for (k, l), p in wide.probabilities.items() if max(abs(k), abs(l)) > g.K)
    assert outside < 1e-6


def test_law_rejects_bad_arguments():
    with pytest.raises(ValueError):
        ll.law(0.0)
    with pytest.raises(ValueError):
        ll.law(1.0, eps=0)
    with pytest.raises(ValueError):
        ll.limit_mgf(0, 0, -1)


def test_limit_mgf_normalisation_and_symmetry():
    assert ll.limit_mgf(0, 0, 1.3) == pytest.approx(1.0, abs=1e-15)
    assert ll.limit_mgf(0.3, -0.7, 1.3) == pytest.approx(ll.limit_mgf(-0.3, 0.7, 1.3), rel=1e-14)


def test_limit_mgf_matches_lattice_sum_identity():
    a, b, rho = 0.3, -0.4, 1.2
    z = ll.law(rho, eps=1e-15).Z
    via_sum = th.corollary10_sum(a, b, rho) * math.exp(math.pi * a * a * rho / 2) / (math.sqrt(2 / rho) * z)
    assert ll.limit_mgf(a, b, rho) == pytest.approx(via_sum, rel=1e-10)


def test_limit_mgf_matches_theta_product():
    a, b, rho = 0.4, 0.25, 0.8
    qk, ql = math.exp(-math.pi / (2 * rho)), math.exp(-math.pi * rho / 2)
    num = th.theta(3, 1j * math.pi * a / 2, qk) * th.theta(3, 1j * math.pi * b / 2, ql)
    den = th.theta(3, 0, qk) * th.theta(3, 0, ql)
    assert ll.limit_mgf(a, b, rho) == pytest.approx((num / den).real, rel=1e-12)


def test_limit_mgf_matches_explicit_sum():
    a, b, rho = -0.2, 0.5, 1.7
    g = ll.law(rho, eps=1e-15)
    direct = math.fsum(p * math.exp(-math.pi * (a * k + b * l)) for (k, l), p in g.probabilities.items())
    assert ll.limit_mgf(a, b, rho) == pytest.approx(direct, rel=1e-12)


def test_tv_distance_properties():
    table = en.brute_winding_table(hc.build(2, 6))
    assert ll.tv_distance(table, ll.table_law(table)) == 0
    rho = 6 / (3**0.5 * 2)
    d = ll.tv_distance(table, ll.law(rho, min_radius=ll.support_radius(table)))
    assert 0 < d < 1


def test_tv_distance_needs_wide_enough_law():
    table = en.WindingTable(1, 3, {(0, 0): 1, (30, 0): 1})
    with pytest.raises(ValueError):
        ll.tv_distance(table, ll.law(1.0))


def test_mgf_gap_is_zero_at_origin_only():
    table = en.brute_winding_table(hc.build(2, 6))
    rho = 6 / (3**0.5 * 2)
    assert ll.mgf_gap_max(table, rho, grid=(0.0,)) == pytest.approx(0.0, abs=1e-14)
    assert ll.mgf_gap_max(table, rho) > 0


@pytest.mark.parametrize("m,n", [(2, 6), (3, 9), (4, 12), (5, 15)])
def test_prediction_sign(m, n):
    pred = ll.theorem4_prediction(0.0, 0.0, m, n, -0.6461318944389)
    assert pred.value_if_representable().real * (-1) ** (m * n) > 0


def test_theorem4_magnitude_close_at_moderate_size():
    assert abs(ll.theorem4_ratio(0.0, 0.0, 8, 24)) == pytest.approx(1.0, abs=0.02)


def test_convergence_report_checks_sizes():
    with pytest.raises(ValueError):
        ll.convergence_report(3**0.5, [(2, 7)])
    with pytest.raises(ValueError):
        ll.convergence_report(3**0.5, [(2, 3)])


def test_convergence_report_writes_tables(tmp_path):
    rep = ll.convergence_report(3**0.5, [(2, 6)], out_dir=str(tmp_path))
    (entry,) = rep.entries
    assert entry.table_path.endswith("winding_m2_n6.csv")
    table = en.WindingTable.from_csv(2, 6, open(entry.table_path).read())
    assert table.total == 7248
    assert '"entries"' in rep.to_json()

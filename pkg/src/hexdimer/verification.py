"""Named numerical check suites shared by the CLI and the test-suite.

Each suite returns a list of Check records; a suite passes when all of its
checks pass. Grids use a fixed seed so reports are reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import spectral as sp
from . import theta as th

SEED = 20240607
TREND_SIZES = (4, 8, 16)


@dataclass(frozen=True)
class Check:
    check_name: str
    value: float
    target: float
    residual: float
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _below(name: str, value: float, limit: float, target: float = 0.0) -> Check:
    return Check(name, float(value), target, float(value), bool(value < limit))


def strictly_decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _trend(name: str, values: list[float]) -> Check:
    """Pass when the sequence strictly decreases; value is its last entry."""
    return Check(name, float(values[-1]), 0.0, float(values[-1]), strictly_decreasing(values))


# --- theta ---------------------------------------------------------------

def theta_suite() -> list[Check]:
    rng = np.random.default_rng(SEED)
    checks = []
    worst = 0.0
    for q in (0.1, 0.5, 0.9, -0.9, 0.7j, 0.6 + 0.6j):
        for _ in range(4):
            zeta = complex(rng.uniform(-math.pi, math.pi), rng.uniform(-1, 1))
            for i in range(1, 5):
                s = th.theta(i, zeta, q)
                p = th.theta_product(i, zeta, q)
                worst = max(worst, abs(s - p) / (1 + abs(s)))
    checks.append(_below("series_vs_product", worst, 1e-12))

    worst = 0.0
    for rho in (0.5, 1.0, 2.0):
        for _ in range(4):
            zeta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            a = th.theta_combination(zeta, 1j * rho, "sum")
            b = th.theta_combination(zeta, 1j * rho, "closed")
            worst = max(worst, abs(a - b))
    checks.append(_below("four_theta_recombination", worst, 1e-10))

    worst = 0.0
    for x in np.linspace(-1, 1, 5):
        for s in (0.5j, 1j, 2j, 0.3 + 1j, -0.4 + 0.8j):
            worst = max(worst, th.jacobi_transform_residual(float(x), s))
    checks.append(_below("jacobi_transform", worst, 1e-10))

    q = math.exp(-math.pi)
    p = th.euler_p(q).real
    lhs = (th.theta(2, 0, q) * th.theta(3, 0, q) * th.theta(4, 0, q)).real
    checks.append(_below("euler_p_jacobi_identity", abs(lhs - 2 * q**0.25 * p**3), 1e-10))

    a = th.corollary10_sum(0.3, -0.4, 1.2)
    b = th.theta_combination(math.pi / 2 * complex(1.2 * 0.3, -0.4), 1.2j, "sum").real
    checks.append(_below("lattice_sum_vs_theta", abs(a - b), 1e-10))
    return checks


# --- roots ---------------------------------------------------------------

def strip_grid(n_re: int = 20, n_im: int = 10, half_width: float = 0.55) -> list[complex]:
    return [complex(x, y)
            for x in np.linspace(-math.pi, 3 * math.pi, n_re)
            for y in np.linspace(-half_width, half_width, n_im)]


def halving_exponent(h: float = 1e-2) -> float:
    def err(t):
        return abs(sp.roots(t).r1 - sp.ROOT_AT_ZERO * cmath.exp(t / math.sqrt(3)))
    return math.log2(err(h) / err(h / 2))


def roots_suite() -> list[Check]:
    grid = strip_grid()
    prod = max(abs(sp.roots(p).r1 * sp.roots(p).r2 - 1) for p in grid)
    quad = max(sp.quadratic_residual(p) for p in grid)
    checks = [
        _below("r1_r2_product", prod, 1e-12),
        _below("quadratic_residual", quad, 1e-12),
    ]
    neg = max(sp.roots(p).r1.real for p in grid)
    checks.append(Check("re_r1_negative", neg, 0.0, max(neg, 0.0), neg < 0))
    args = [sp.roots(p).log_r1.imag for p in grid]
    ok = all(math.pi / 2 < a < 3 * math.pi / 2 for a in args)
    checks.append(Check("arg_r1_range", float(min(args)), math.pi / 2, 0.0 if ok else 1.0, ok))

    bad = 0
    for x in np.linspace(-math.pi, math.pi, 11):
        if abs(x) < 1e-12:
            continue
        for y in np.linspace(-0.5, 0.5, 10):
            mod = abs(sp.roots(complex(x, y)).r1)
            bad += not (mod > 1 if x > 0 else mod < 1)
    checks.append(Check("modulus_sign_rule", float(bad), 0.0, float(bad), bad == 0))

    unit = max(abs(abs(sp.roots(1j * y).r1) - 1) for y in np.linspace(-0.59, 0.59, 25))
    checks.append(_below("unit_modulus_on_imaginary_axis", unit, 1e-12))

    mono = True
    for y in (-0.1, 0.0, 0.1):
        mods = [abs(sp.roots(complex(x, y)).r1) for x in np.linspace(-math.pi, -1e-3, 60)]
        mono &= all(b >= a - 1e-15 for a, b in zip(mods, mods[1:]))
    checks.append(Check("modulus_monotone_left_half", float(mono), 1.0, 0.0 if mono else 1.0, mono))

    shift = max(sp.arg_shift_check(p) for p in (0, 0.5, 0.5 + 0.1j, -1 - 0.2j, 2.5 + 0.3j))
    checks.append(_below("arg_shift", shift, 1e-10))

    e = halving_exponent()
    checks.append(Check("expansion_halving_exponent", e, 2.0, abs(e - 2), abs(e - 2) <= 0.2))
    return checks


# --- bulk products and corollaries ----------------------------------------

def prop18_suite(sizes=TREND_SIZES, alpha: float = 0.5) -> list[Check]:
    f = sp.free_energy().value
    r0 = [sp.prop18_residuals(0.0, k, 3 * k, f) for k in sizes]
    ra = [sp.prop18_residuals(alpha, k, 3 * k, f) for k in sizes]
    return [
        _trend(f"part1_alpha{alpha}", [r.part1 for r in ra]),
        Check("part1_alpha0_exact", r0[-1].part1, 0.0, r0[-1].part1, max(r.part1 for r in r0) < 1e-12),
        _trend("part2_alpha0", [r.part2 for r in r0]),
        _trend(f"part2_alpha{alpha}", [r.part2 for r in ra]),
        _trend("part3", [r.part3 for r in r0]),
    ]


# Corollary trends: the two lambda-normalised terms at the symmetric point
# and all three non-degenerate terms at a generic perturbation.
COROLLARY_TRENDS = (
    ("11", 0.0, 0.0), ("10", 0.0, 0.0),
    ("11", 0.5, -0.5), ("10", 0.5, -0.5), ("01", 0.5, -0.5),
)


def corollary_trend(which: str, alpha: float, beta: float, sizes=TREND_SIZES) -> list[float]:
    return [sp.corollary_check(which, alpha, beta, k, 3 * k).log_ratio for k in sizes]


def corollaries_suite(sizes=TREND_SIZES) -> list[Check]:
    checks = [
        _trend(f"cor_{w}_alpha{a}_beta{b}", corollary_trend(w, a, b, sizes))
        for w, a, b in COROLLARY_TRENDS
    ]
    for k in sizes:
        c = sp.corollary_check("00", 0.0, 0.0, k, 3 * k)
        both = abs(c.finite) + abs(c.limit)
        checks.append(Check(f"cor_00_degenerate_k{k}", both, 0.0, both, both == 0))
    return checks


def lemma_suite(sizes=TREND_SIZES) -> list[Check]:
    reports = [sp.lemma12_13_report(0.0, 0.0, k, 3 * k) for k in sizes]
    big = sp.lemma12_13_report(0.0, 0.0, 16, 48)
    return [
        _below("lemma12_tails_16_48", big.tail_max, 1e-3),
        _trend("lemma12_tail_trend", [r.tail_max for r in reports]),
        _trend("lemma13_head_trend", [max(r.head_deviations) for r in reports]),
    ]


def free_energy_suite() -> list[Check]:
    vals = {m: sp.free_energy(m).value for m in sp.FREE_ENERGY_METHODS}
    ref = vals["double_integral"]
    spread = max(abs(v - ref) for v in vals.values())
    checks = [_below("methods_agree", spread, 1e-8, target=ref)]
    checks.append(Check("matches_known_value", ref, sp.FREE_ENERGY_REFERENCE,
                        abs(ref - sp.FREE_ENERGY_REFERENCE), abs(ref - sp.FREE_ENERGY_REFERENCE) < 1e-9))
    checks.append(Check("negative", ref, 0.0, max(ref, 0.0), ref < 0))
    return checks


SUITES = {
    "theta": theta_suite,
    "roots": roots_suite,
    "prop18": prop18_suite,
    "corollaries": corollaries_suite,
    "lemma12-13": lemma_suite,
    "free-energy": free_energy_suite,
}


def run_suite(name: str) -> tuple[list[Check], bool]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    checks = SUITES[name]()
    return checks, all(c.passed for c in checks)

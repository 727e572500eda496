"""Spectral roots r1, r2 of the honeycomb characteristic polynomial.

For a^2 z = exp(i phi) the w-roots of P(z, w) are b^2 r1(phi), b^2 r2(phi),
where r1 + 1/r1 = exp(i phi) - 2 and r1 r2 = 1. The branch of r1 is fixed by
Im r1 > 0 for Re phi in (-pi, pi), extended to Re phi in (pi, 3pi] through
r1(phi + 2pi) = r2(phi). With that choice log r1 is analytic on the strip
and its argument lies in (pi/2, 3pi/2).

This module also holds the bulk products Lambda and Gamma that carry the
exponential growth of the four Kasteleyn terms, their finite-size checks,
and the free energy by independent quadratures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import theta as th
from .kasteleyn import Perturbation, block_term
from .logproduct import LogProduct

TWO_PI = 2 * math.pi
# Half-width of the strip where Re r1 < 0 is guaranteed (needs Im phi > -log 2).
STRIP_HALF_WIDTH = 0.6
# r1 is analytic for |Im phi| < log 4; beyond that the branch point is reachable.
ANALYTIC_HALF_WIDTH = math.log(4)
ROOT_AT_ZERO = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
# Free energy per fundamental domain: twice the honeycomb dimer entropy
# 0.3230659472... per dimer, with the sign convention f = -lim log Z / (mn).
FREE_ENERGY_REFERENCE = -0.6461318944


@dataclass(frozen=True)
class BranchedRoot:
    phi: complex
    r1: complex
    r2: complex
    log_r1: complex


@dataclass(frozen=True)
class FreeEnergy:
    value: float
    method: str
    estimated_error: float


def _r1(phi: np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    shifted = phi.real > math.pi
    base = np.where(shifted, phi - TWO_PI, phi)
    s = np.exp(1j * base) - 2
    d = np.sqrt(s * s - 4)
    big, alt = (s + d) / 2, (s - d) / 2
    swap = np.abs(alt) > np.abs(big)
    big = np.where(swap, alt, big)
    small = 1 / big
    bx = base.real
    # Im r1 > 0 near Re phi = 0; away from it the same root is the one with
    # |r1| > 1 for Re phi > 0 and |r1| < 1 for Re phi < 0, which stays
    # well conditioned at Re phi = +-pi where both roots are real.
    by_imag = np.where(big.imag > 0, big, small)
    by_modulus = np.where(bx > 0, big, small)
    r = np.where(np.abs(bx) < math.pi / 2, by_imag, by_modulus)
    return np.where(shifted, 1 / r, r)


def _log_r1(r: np.ndarray) -> np.ndarray:
    return np.log(np.abs(r)) + 1j * np.mod(np.angle(r), TWO_PI)


def roots(phi: complex) -> BranchedRoot:
    """r1(phi), r2(phi) and log r1(phi) with arg in (0, 2 pi)."""
    phi = complex(phi)
    if not (-math.pi <= phi.real <= 3 * math.pi):
        raise ValueError(f"Re phi = {phi.real} outside [-pi, 3pi]")
    if abs(phi.imag) >= ANALYTIC_HALF_WIDTH:
        raise ValueError(f"|Im phi| = {abs(phi.imag)} reaches the branch point strip log 4")
    s = complex(np.exp(1j * phi)) - 2
    if abs(s * s - 4) < 1e-12:
        raise ValueError(f"phi = {phi} is a branch point of r1")
    r1 = complex(_r1(np.array([phi]))[0])
    return BranchedRoot(phi, r1, 1 / r1, complex(_log_r1(np.array([r1]))[0]))


def arg_shift_check(phi: complex) -> float:
    """|arg r1(phi + 2pi) + arg r1(phi) - 2pi| with arguments in (0, 2pi)."""
    a = roots(phi).log_r1.imag
    b = roots(complex(phi) + TWO_PI).log_r1.imag
    return abs(a + b - TWO_PI)


def quadratic_residual(phi: complex) -> float:
    r = roots(phi).r1
    return abs(r * r + r * (2 - np.exp(1j * complex(phi))) + 1)


# --- bulk products --------------------------------------------------------

def odd_grid(alpha: float, m: int) -> np.ndarray:
    return math.pi * (1j * alpha + 2 * np.arange(m) + 1) / m


def even_grid(alpha: float, m: int) -> np.ndarray:
    return math.pi * (1j * alpha + 2 * np.arange(1, m)) / m


def _check_grid(phis: np.ndarray) -> None:
    if phis.size and np.max(np.abs(phis.imag)) >= ANALYTIC_HALF_WIDTH:
        raise ValueError("pi*alpha/m leaves the analyticity strip; use a larger m or smaller alpha")


def log_lambda(alpha: float, m: int, n: int) -> complex:
    """n * sum_j log r1(pi(i alpha + 2j + 1)/m), j = 0..m-1, unwrapped."""
    phis = odd_grid(alpha, m)
    _check_grid(phis)
    return complex(n * _log_r1(_r1(phis)).sum())


def log_gamma(alpha: float, m: int, n: int) -> complex:
    """n * sum_j log r1(pi(i alpha + 2j)/m), j = 1..m-1, unwrapped."""
    phis = even_grid(alpha, m)
    _check_grid(phis)
    return complex(n * _log_r1(_r1(phis)).sum()) if phis.size else 0j


def log_gamma_paired(alpha: float, m: int, n: int) -> complex:
    """log of (-1)^n Gamma^1 Gamma^2 in the square-root pairing form.

    (-1)^n G1 G2 = (prod_{j=0}^{m-1} sqrt(r1(theta_j) r1(theta_{j+1})))^n with
    theta_j = pi(i alpha + 2j)/m; the endpoint roots r1(theta_0) and
    r1(theta_m) = r2(theta_0) enter with weight 1/2.
    """
    thetas = math.pi * (1j * alpha + 2 * np.arange(m + 1)) / m
    _check_grid(thetas)
    logs = _log_r1(_r1(thetas))
    return complex(n * (logs[:-1] + logs[1:]).sum() / 2)


def lambda_product(alpha: float, m: int, n: int) -> LogProduct:
    """Lambda^1 Lambda^2 (alpha) as a single product over the odd grid."""
    return LogProduct.from_log(log_lambda(alpha, m, n))


def gamma_product(alpha: float, m: int, n: int) -> LogProduct:
    """Gamma^1 Gamma^2 (alpha) as a single product over the even grid."""
    return LogProduct.from_log(log_gamma(alpha, m, n))


def lambda_split(alpha: float, m: int, n: int) -> tuple[complex, complex]:
    """(log Lambda^1, log Lambda^2) from their separate definitions."""
    j1 = np.arange((m - 1) // 2 + 1)
    j2 = np.arange(m // 2)
    r1 = _r1(math.pi * (1j * alpha + 2 * j1 + 1) / m)
    # r2(phi) = 1 / r1(phi) on Re phi in (-pi, 0)
    r2 = 1 / _r1(math.pi * (1j * alpha - (2 * j2 + 1)) / m)
    return complex(n * np.log(r1).sum()), complex(n * np.log(r2).sum())


def gamma_split(alpha: float, m: int, n: int) -> tuple[complex, complex]:
    """(log Gamma^1, log Gamma^2) from their separate definitions."""
    j1 = np.arange(1, (m - 1) // 2 + 1)
    j2 = np.arange(1, m // 2 + 1)
    r1 = _r1(math.pi * (1j * alpha + 2 * j1) / m)
    r2 = 1 / _r1(math.pi * (1j * alpha - 2 * j2) / m)
    return complex(n * np.log(r1).sum()), complex(n * np.log(r2).sum())


# --- finite-size checks ---------------------------------------------------

def rho_of(m: int, n: int) -> float:
    return n / (math.sqrt(3) * m)


@dataclass(frozen=True)
class CorollaryCheck:
    which: str
    finite: complex
    limit: complex

    @property
    def ratio(self) -> complex:
        return self.finite / self.limit

    @property
    def log_ratio(self) -> float:
        """|log(finite/limit)|, the convergence measure."""
        return abs(np.log(complex(self.ratio)))


CORRELATIONS = {"11": (1, 1, 3), "10": (1, 0, 4), "01": (0, 1, 2), "00": (0, 0, 1)}


def theta_limit(which: str, alpha: float, beta: float, rho: float) -> complex:
    """The theta expression each normalised Kasteleyn term tends to."""
    sigma, eta, idx = CORRELATIONS[which]
    zeta = math.pi / 2 * complex(rho * alpha, beta)
    q = math.exp(-rho * math.pi)
    p = th.euler_p(q).real
    val = th.theta(idx, zeta, q) * th.theta(idx, zeta.conjugate(), q) / p**2
    if which == "01":
        val *= q ** -0.5
    elif which == "00":
        val *= -(q ** -0.5)
    return complex(val)


def corollary_check(which: str, alpha: float, beta: float, m: int, n: int) -> CorollaryCheck:
    """(-1)^{mn} Z^{(sigma eta)} divided by its bulk product, next to its limit."""
    if which not in CORRELATIONS:
        raise ValueError(f"which must be one of {sorted(CORRELATIONS)}, got {which!r}")
    if m < 2 or n < 2:
        raise ValueError("corollary checks need m, n >= 2")
    sigma, eta, _ = CORRELATIONS[which]
    z = block_term(sigma, eta, Perturbation(alpha, beta), m, n)
    bulk = lambda_product(alpha, m, n) if sigma == 1 else gamma_product(alpha, m, n)
    if bulk.zero:
        raise ZeroDivisionError(f"bulk product for Z^({which}) is exactly zero")
    ratio = (z / bulk).scale((-1) ** (m * n))
    finite = ratio.value_if_representable()
    if finite is None:
        raise OverflowError(f"Z^({which}) / bulk is not representable")
    return CorollaryCheck(which, finite, theta_limit(which, alpha, beta, rho_of(m, n)))


@dataclass(frozen=True)
class Prop18Residuals:
    m: int
    n: int
    alpha: float
    part1: float
    part2: float
    part3: float


def prop18_residuals(alpha: float, m: int, n: int, f: float | None = None) -> Prop18Residuals:
    """Deviations of the three bulk-product asymptotics at finite size.

    part1: |log(A^{n/3} LL(alpha)/LL(0)) - pi alpha^2 rho/2|
    part2: |log(A^{n/3} (-1)^n GG(alpha)/LL(0)) - (pi alpha^2 rho/2 - pi rho/2)|
    part3: |Re log LL(0) - (-mn f + pi rho/6)|
    Logarithms are the unwrapped sums of log r1, so a leftover phase shows up
    in the residual instead of being hidden by branch reduction.
    """
    if f is None:
        f = free_energy("log_r1_integral").value
    rho = rho_of(m, n)
    ll0 = log_lambda(0.0, m, n)
    shift = math.pi * alpha * n / 3
    p1 = shift + log_lambda(alpha, m, n) - ll0 - math.pi * alpha**2 * rho / 2
    p2 = shift + log_gamma_paired(alpha, m, n) - ll0 - (math.pi * alpha**2 * rho / 2 - math.pi * rho / 2)
    p3 = ll0.real - (-m * n * f + math.pi * rho / 6)
    return Prop18Residuals(m, n, alpha, abs(p1), abs(p2), abs(p3))


@dataclass(frozen=True)
class LemmaReport:
    m: int
    n: int
    cutoff: int
    tail_deviations: tuple[float, float, float, float]
    head_values: tuple[complex, complex]
    head_targets: tuple[complex, complex]

    @property
    def head_deviations(self) -> tuple[float, float]:
        return tuple(abs(v - t) for v, t in zip(self.head_values, self.head_targets))

    @property
    def tail_max(self) -> float:
        return max(self.tail_deviations)


def lemma12_13_report(alpha: float, beta: float, m: int, n: int) -> LemmaReport:
    """Tail products (|r| far from 1) and head products (|r| near 1).

    With J = floor(m^(1/4)), phi+_j = pi(i alpha + 2j + 1)/m and
    phi-_j = pi(i alpha - (2j + 1))/m, the tails run over j >= J and should
    tend to 1; the heads run over j < J and should tend to
    theta_3(conj zeta, q)/P(q) and theta_3(zeta, q)/P(q).
    """
    J = int(math.floor(m ** 0.25 + 1e-12))
    if J < 1:
        raise ValueError("m too small: floor(m^(1/4)) must be at least 1")
    B = math.exp(math.pi * beta)

    def r1n(j, sign):
        phi = math.pi * (1j * alpha + sign * (2 * j + 1)) / m
        return complex(_r1(np.array([phi]))[0]) ** n

    def prod(terms):
        out = 1 + 0j
        for t in terms:
            out *= t
        return out

    up = range(J, (m - 1) // 2 + 1)
    down = range(J, m // 2)
    tails = (
        prod(1 + 1 / (B * r1n(j, +1)) for j in up),
        prod(1 + B / r1n(j, +1) for j in up),  # r2^n = r1^-n
        prod(1 + B * r1n(j, -1) for j in down),
        prod(1 + r1n(j, -1) / B for j in down),  # r2^-n = r1^n
    )
    heads = (
        prod((1 + 1 / (B * r1n(j, +1))) * (1 + B * r1n(j, -1)) for j in range(J)),
        prod((1 + B / r1n(j, +1)) * (1 + r1n(j, -1) / B) for j in range(J)),
    )
    rho = rho_of(m, n)
    zeta = math.pi / 2 * complex(rho * alpha, beta)
    q = math.exp(-rho * math.pi)
    p = th.euler_p(q).real
    targets = (complex(th.theta(3, zeta.conjugate(), q)) / p, complex(th.theta(3, zeta, q)) / p)
    return LemmaReport(m, n, J, tuple(abs(t - 1) for t in tails), heads, targets)


# --- free energy ----------------------------------------------------------

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def adaptive_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: list[float],
    tol: float,
    order: int = 20,
    max_depth: int = 60,
) -> tuple[float, float]:
    """Integrate a vectorised f over [breakpoints[0], breakpoints[-1]].

    Each panel is compared with the sum of its two halves and bisected until
    the difference is below its share of ``tol``. Returns (value, error
    estimate). Raises ArithmeticError if the depth limit is hit.
    """
    x, w = _gl(order)
    total_len = breakpoints[-1] - breakpoints[0]

    def rule(a, b):
        mid, half = (a + b) / 2, (b - a) / 2
        return half * np.dot(w, f(mid + half * x))

    value = 0.0
    err = 0.0
    stack = [(a, b, rule(a, b), 0) for a, b in zip(breakpoints[:-1], breakpoints[1:])]
    while stack:
        a, b, whole, depth = stack.pop()
        c = (a + b) / 2
        left, right = rule(a, c), rule(c, b)
        diff = abs(left + right - whole)
        if diff <= tol * (b - a) / total_len or diff < 1e-17:
            value += left + right
            err += diff
        elif depth >= max_depth:
            raise ArithmeticError(f"quadrature failed to reach tol={tol} near [{a}, {b}]")
        else:
            stack.append((a, c, left, depth + 1))
            stack.append((c, b, right, depth + 1))
    return float(value), float(err)


def _double_integral(tol: float) -> FreeEnergy:
    # log |2(cos psi + 1) - exp(i phi)| vanishes-argument set: phi = 0,
    # psi = 2pi/3, 4pi/3. Split both axes there so panels end on it.
    phi_breaks = [0.0, math.pi, TWO_PI]
    psi_breaks = [0.0, TWO_PI / 3, math.pi, 2 * TWO_PI / 3, TWO_PI]
    inner_err = [0.0]

    def inner(psis: np.ndarray) -> np.ndarray:
        out = np.empty_like(psis)
        for i, psi in enumerate(psis):
            c = 2 * (math.cos(psi) + 1)
            v, e = adaptive_gauss_legendre(
                lambda phi: np.log(np.abs(c - np.exp(1j * phi))), phi_breaks, tol)
            out[i] = v
            inner_err[0] = max(inner_err[0], e)
        return out

    val, err = adaptive_gauss_legendre(inner, psi_breaks, tol)
    scale = 1 / (4 * math.pi**2)
    return FreeEnergy(-val * scale, "double_integral", (err + TWO_PI * inner_err[0]) * scale)


def _log_r1_integral(tol: float) -> FreeEnergy:
    vals = []
    for component in (np.real, np.imag):
        v, e = adaptive_gauss_legendre(
            lambda phi: component(_log_r1(_r1(phi + 0j))), [0.0, math.pi, TWO_PI], tol)
        vals.append((v, e))
    (re, re_err), (im, _) = vals
    # the imaginary part is 2pi * pi by the arg-shift symmetry; only the real part matters
    return FreeEnergy(-re / TWO_PI, "log_r1_integral", re_err / TWO_PI)


def _half_range(tol: float) -> FreeEnergy:
    v, e = adaptive_gauss_legendre(
        lambda phi: np.log(np.abs(_r1(phi + 0j))), [0.0, math.pi], tol)
    return FreeEnergy(-v / math.pi, "half_range", e / math.pi)


FREE_ENERGY_METHODS = {
    "double_integral": _double_integral,
    "log_r1_integral": _log_r1_integral,
    "half_range": _half_range,
}


def free_energy(method: str = "log_r1_integral", tol: float = 1e-12) -> FreeEnergy:
    """Free energy per fundamental domain.

    ``double_integral``: -(1/4pi^2) double integral of log|2(cos psi + 1) - e^{i phi}|.
    ``log_r1_integral``: -(1/2pi) int_0^{2pi} log r1(phi) dphi (real part).
    ``half_range``:      -(1/pi) int_0^pi log|r1(phi)| dphi.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method not in FREE_ENERGY_METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(FREE_ENERGY_METHODS)}")
    return FREE_ENERGY_METHODS[method](tol)

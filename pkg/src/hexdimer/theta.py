"""Jacobi theta functions theta_1..theta_4 in the (zeta, q) convention.

    theta_3(zeta, q) = sum_k exp(2ik zeta) q^(k^2),

so that theta_i(zeta | tau) means q = exp(i pi tau). Every function is
available as a series and as an infinite product; the two are independent
and are checked against each other.

Evaluation runs in mpmath with guard digits. Callers get a Python complex
unless they pass ``dps``, in which case an ``mpc`` at that precision comes
back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

DEFAULT_TOL = 1e-14
GUARD_DIGITS = 15
HARDWARE_DPS = 15


@dataclass(frozen=True)
class Nome:
    """q with |q| < 1; when built from tau, q = exp(i pi tau) exactly."""

    q: complex
    tau: complex | None = None

    def __post_init__(self):
        if abs(self.q) >= 1:
            raise ValueError(f"nome must satisfy |q| < 1, got |q| = {abs(self.q)}")
        if self.tau is not None and complex(self.tau).imag <= 0:
            raise ValueError(f"tau must lie in the upper half plane, got {self.tau}")

    @classmethod
    def from_tau(cls, tau) -> "Nome":
        tau = mpmath.mpmathify(tau)
        if tau.imag <= 0:
            raise ValueError(f"tau must lie in the upper half plane, got {tau}")
        return cls(complex(mpmath.expjpi(tau)), tau)

    def log_q(self):
        """log q; i pi tau when tau is known, else the principal logarithm."""
        if self.tau is not None:
            return mpmath.mpc(0, 1) * mpmath.pi * mpmath.mpmathify(self.tau)
        return mpmath.log(mpmath.mpmathify(self.q))


def _nome(q) -> Nome:
    return q if isinstance(q, Nome) else Nome(q)


def _qpow(logq, x):
    return mpmath.exp(logq * x)


def _out(val, dps):
    return val if dps is not None else complex(val)


def _work(dps):
    return (dps or HARDWARE_DPS) + GUARD_DIGITS


def _check_index(i: int) -> None:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {i}")


def theta_series(i: int, zeta, q, dps: int | None = None, tol: float | None = None):
    """Series value of theta_i(zeta, q) and the number of terms summed.

    Summation runs outward from the centre and stops once three consecutive
    terms beyond the peak of |term| are below tol * (1 + |partial sum|).
    The (-1)^(k-1/2) factor of theta_1 is exp(i pi (k - 1/2)).
    """
    _check_index(i)
    nome = _nome(q)
    if nome.q == 0:
        return _out(mpmath.mpc({1: 0, 2: 0, 3: 1, 4: 1}[i]), dps), 1
    with mpmath.workdps(_work(dps)):
        tol = mpmath.mpf(tol if tol is not None else (10.0 ** -(dps + 2) if dps else DEFAULT_TOL))
        zeta = mpmath.mpmathify(zeta)
        logq = nome.log_q()
        half = i in (1, 2)
        # |term_k| ~ exp(Re(logq) k^2 + 2 |Im zeta| k) peaks near k_peak
        decay = -logq.real
        k_peak = abs(zeta.imag) / decay if decay > 0 else 0
        j = mpmath.mpc(0, 1)

        def term(k):
            if half:
                c = mpmath.expjpi(k - mpmath.mpf(1) / 2) if i == 1 else 1
                return c * mpmath.exp((2 * k + 1) * j * zeta) * _qpow(logq, (k + mpmath.mpf(1) / 2) ** 2)
            c = (-1) ** k if i == 4 else 1
            return c * mpmath.exp(2 * k * j * zeta) * _qpow(logq, k * k)

        total = term(0) + (term(-1) if half else 0)
        used = 2 if half else 1
        small = 0
        k = 1
        while small < 3:
            t = term(k) + (term(-k - 1) if half else term(-k))
            total += t
            used += 2
            if abs(t) < tol * (1 + abs(total)) and k > k_peak:
                small += 1
            else:
                small = 0
            k += 1
            if k > 100000:
                raise RuntimeError("theta series failed to converge")
        with mpmath.workdps(dps or HARDWARE_DPS):
            total = +total
        return _out(total, dps), used


def theta(i: int, zeta, q, dps: int | None = None, tol: float | None = None):
    """theta_i(zeta, q) by its series."""
    return theta_series(i, zeta, q, dps, tol)[0]


def theta_tau(i: int, zeta, tau, dps: int | None = None):
    """theta_i(zeta | tau)."""
    return theta(i, zeta, Nome.from_tau(tau), dps)


def _product(factor, start, tol, counter=None):
    acc = mpmath.mpc(1)
    ell = start
    small = 0
    while small < 3:
        f = factor(ell)
        acc *= f
        small = small + 1 if abs(f - 1) < tol else 0
        ell += 1
        if ell > 1000000:
            raise RuntimeError("theta product failed to converge")
    if counter is not None:
        counter.append(ell - start)
    return acc


def _euler_p(logq, tol, counter=None):
    return _product(lambda k: 1 - _qpow(logq, 2 * k), 1, tol, counter)


def euler_p(q, dps: int | None = None, tol: float | None = None):
    """P(q) = prod_{k >= 1} (1 - q^(2k))."""
    nome = _nome(q)
    with mpmath.workdps(_work(dps)):
        tol = mpmath.mpf(tol if tol is not None else (10.0 ** -(dps + 2) if dps else DEFAULT_TOL)) / 100
        val = _euler_p(nome.log_q(), tol) if nome.q != 0 else mpmath.mpc(1)
        with mpmath.workdps(dps or HARDWARE_DPS):
            return _out(+val, dps)


def theta_product(i: int, zeta, q, dps: int | None = None, tol: float | None = None):
    """theta_i(zeta, q) by its infinite-product form."""
    return theta_product_terms(i, zeta, q, dps, tol)[0]


def theta_product_terms(i: int, zeta, q, dps: int | None = None, tol: float | None = None):
    """Product value of theta_i(zeta, q) and the number of factors used."""
    _check_index(i)
    nome = _nome(q)
    with mpmath.workdps(_work(dps)):
        tol = mpmath.mpf(tol if tol is not None else (10.0 ** -(dps + 2) if dps else DEFAULT_TOL)) / 100
        zeta = mpmath.mpmathify(zeta)
        if nome.q == 0:
            val = {1: 0, 2: 0, 3: 1, 4: 1}[i]
            return _out(mpmath.mpc(val), dps), 0
        logq = nome.log_q()
        c2 = mpmath.cos(2 * zeta)
        used: list[int] = []
        p = _euler_p(logq, tol, used)
        if i == 1:
            val = 2 * _qpow(logq, mpmath.mpf(1) / 4) * mpmath.sin(zeta) * p * _product(
                lambda l: 1 - 2 * _qpow(logq, 2 * l) * c2 + _qpow(logq, 4 * l), 1, tol, used)
        elif i == 2:
            val = 2 * _qpow(logq, mpmath.mpf(1) / 4) * mpmath.cos(zeta) * p * _product(
                lambda l: 1 + 2 * _qpow(logq, 2 * l) * c2 + _qpow(logq, 4 * l), 1, tol, used)
        elif i == 3:
            val = p * _product(
                lambda l: 1 + 2 * _qpow(logq, 2 * l + 1) * c2 + _qpow(logq, 4 * l + 2), 0, tol, used)
        else:
            val = p * _product(
                lambda l: 1 - 2 * _qpow(logq, 2 * l + 1) * c2 + _qpow(logq, 4 * l + 2), 0, tol, used)
        with mpmath.workdps(dps or HARDWARE_DPS):
            return _out(+val, dps), sum(used)


def jacobi_transform_residual(u, sigma, dps: int | None = None) -> float:
    """|theta_3(u|s) - sqrt(i/s) exp(-i u^2/(pi s)) theta_3(u/s | -1/s)|."""
    with mpmath.workdps(_work(dps)):
        u = mpmath.mpmathify(u)
        sigma = mpmath.mpmathify(sigma)
        if sigma.imag <= 0:
            raise ValueError(f"sigma must lie in the upper half plane, got {sigma}")
        j = mpmath.mpc(0, 1)
        lhs = theta(3, u, Nome.from_tau(sigma), dps=_work(dps))
        rhs = (mpmath.sqrt(j / sigma) * mpmath.exp(-j * u**2 / (mpmath.pi * sigma))
               * theta(3, u / sigma, Nome.from_tau(-1 / sigma), dps=_work(dps)))
        return float(abs(lhs - rhs))


def theta_combination(zeta, tau, side: str = "sum", dps: int | None = None):
    """Either side of the four-theta recombination identity.

    ``sum``:    sum_i theta_i(zeta|tau) theta_i(conj(zeta)|tau)
    ``closed``: sqrt(2i/tau) exp(-2i x^2/(pi tau)) theta_3(x/tau | -1/(2 tau))
                * theta_3(i y | tau/2),  with zeta = x + i y.
    """
    with mpmath.workdps(_work(dps)):
        zeta = mpmath.mpmathify(zeta)
        tau = mpmath.mpmathify(tau)
        if tau.imag <= 0:
            raise ValueError(f"tau must lie in the upper half plane, got {tau}")
        wd = _work(dps)
        if side == "sum":
            nome = Nome.from_tau(tau)
            zc = mpmath.conj(zeta)
            val = mpmath.fsum(theta(i, zeta, nome, wd) * theta(i, zc, nome, wd) for i in range(1, 5))
        elif side == "closed":
            x, y = zeta.real, zeta.imag
            j = mpmath.mpc(0, 1)
            val = (mpmath.sqrt(2 * j / tau) * mpmath.exp(-2 * j * x**2 / (mpmath.pi * tau))
                   * theta(3, x / tau, Nome.from_tau(-1 / (2 * tau)), wd)
                   * theta(3, j * y, Nome.from_tau(tau / 2), wd))
        else:
            raise ValueError(f"side must be 'sum' or 'closed', got {side!r}")
        with mpmath.workdps(dps or HARDWARE_DPS):
            return _out(+val, dps)


def gaussian_radius(scale: float, tol: float) -> int:
    """Half-width R with exp(-pi R^2 / (2 scale)) below tol, plus slack."""
    return int(math.ceil(math.sqrt(2 * scale * (abs(math.log(tol)) + 5) / math.pi))) + 1


def corollary10_sum(alpha: float, beta: float, rho: float, tol: float = 1e-15) -> float:
    """sqrt(2/rho) exp(-pi alpha^2 rho/2) sum_{k,l} A^k B^l exp(-pi(k^2/rho + rho l^2)/2).

    The lattice sum is cut at a radius around its peak where the discarded
    Gaussian tail is below ``tol`` relative to the sum.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    with mpmath.workdps(30):
        pi = mpmath.pi
        kc, lc = alpha * rho, beta / rho
        rk, rl = gaussian_radius(rho, tol), gaussian_radius(1 / rho, tol)
        sk = mpmath.fsum(mpmath.exp(pi * alpha * k - pi * k * k / (2 * rho))
                         for k in range(int(kc) - rk, int(kc) + rk + 1))
        sl = mpmath.fsum(mpmath.exp(pi * beta * l - pi * rho * l * l / 2)
                         for l in range(int(lc) - rl, int(lc) + rl + 1))
        return float(mpmath.sqrt(2 / mpmath.mpf(rho)) * mpmath.exp(-pi * alpha**2 * rho / 2) * sk * sl)

"""Perturbed partition function of H_{m,n} from the 2x2 Kasteleyn block.

Type I edges carry weight a = exp(-alpha*pi/(2m)), type II edges 1/b and
type III edges b, with b = exp(beta*pi/(2n)). The partition function is the
signed combination of four products of the characteristic polynomial

    P(z, w) = w/b^2 + b^2/w + 2 - a^2 z

over the grids z^m = (-1)^sigma, w^n = (-1)^eta.

Two precision modes are supported everywhere: hardware floats (``dps=None``)
and mpmath at ``dps`` decimal digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .enumeration import WindingTable, winding_support
from .logproduct import ZERO, LogProduct, PrecisionError, signed_sum

DEFAULT_DPS = 50
ROUNDING_TOLERANCE = 1e-3
HARDWARE_FLOOR = 1e-8
MIN_DPS = 15

# (sigma, eta) -> coefficient in Z = 1/2((-1)^n(-Z00 + Z01) + Z10 + Z11)
BLOCKS = ((0, 0), (0, 1), (1, 0), (1, 1))


def block_coefficients(n: int) -> tuple[float, float, float, float]:
    s = (-1) ** n
    return (-0.5 * s, 0.5 * s, 0.5, 0.5)


@dataclass(frozen=True)
class Perturbation:
    alpha: complex = 0.0
    beta: complex = 0.0

    def a(self, m: int):
        return _exp(-self.alpha * _pi(self.alpha) / (2 * m))

    def b(self, n: int):
        return _exp(self.beta * _pi(self.beta) / (2 * n))

    @property
    def A(self):
        return _exp(self.alpha * _pi(self.alpha))

    @property
    def B(self):
        return _exp(self.beta * _pi(self.beta))

    def a2(self, m: int):
        return _exp(-self.alpha * _pi(self.alpha) / m)

    def b2(self, n: int):
        return _exp(self.beta * _pi(self.beta) / n)

    def to_mp(self) -> "Perturbation":
        return Perturbation(mpmath.mpmathify(self.alpha), mpmath.mpmathify(self.beta))


def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _pi(x):
    return mpmath.pi if _is_mp(x) else math.pi


def _exp(x):
    if _is_mp(x):
        return mpmath.exp(x)
    return complex(np.exp(complex(x))) if isinstance(x, complex) else math.exp(x)


def charpoly(z, w, p: Perturbation, m: int = 1, n: int = 1):
    """P(z, w) = w/b^2 + b^2/w + 2 - a^2 z, i.e. the 2x2 block determinant."""
    b2 = p.b2(n)
    return w / b2 + b2 / w + 2 - p.a2(m) * z


def block_matrix(z, w, p: Perturbation, m: int = 1, n: int = 1) -> np.ndarray:
    """The 2x2 Fourier block (rows w1, w2; columns b1, b2)."""
    a, b = p.a(m), p.b(n)
    return np.array([[1 / b + b / w, a], [a * z, b + w / b]], dtype=complex)


def root_grid(k: int, parity: int) -> np.ndarray:
    """The k-th roots of (-1)^parity."""
    return np.exp(1j * np.pi * (2 * np.arange(k) + parity) / k)


def _mp_root(k: int, parity: int, j: int):
    return mpmath.expjpi(mpmath.mpf(2 * j + parity) / k)


def _check_size(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise ValueError(f"m and n must be positive integers, got m={m!r}, n={n!r}")


def _check_dps(dps: int | None) -> None:
    if dps is not None and dps < MIN_DPS:
        raise ValueError(f"dps must be at least {MIN_DPS}, got {dps}")


def block_term(sigma: int, eta: int, p: Perturbation, m: int, n: int,
               dps: int | None = None) -> LogProduct:
    """Product of P over the (sigma, eta) root grid, in log form."""
    _check_size(m, n)
    _check_dps(dps)
    if dps is not None:
        with mpmath.workdps(dps):
            return _block_term_mp(sigma, eta, p.to_mp(), m, n)
    z = root_grid(m, sigma)[:, None]
    w = root_grid(n, eta)[None, :]
    b2 = complex(p.b2(n))
    a2 = complex(p.a2(m))
    vals = w / b2 + b2 / w + 2 - a2 * z
    scale = np.abs(w / b2) + np.abs(b2 / w) + 2 + np.abs(a2 * z)
    mags = np.abs(vals)
    if np.any(mags <= 64 * np.finfo(float).eps * scale):
        return ZERO
    return LogProduct.from_log(complex(np.sum(np.log(mags)), np.angle(vals).sum()))


def _block_term_mp(sigma, eta, p, m, n) -> LogProduct:
    b2 = p.b2(n)
    a2 = p.a2(m)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps - 8))
    zs = [a2 * _mp_root(m, sigma, j) for j in range(m)]
    ws = [_mp_root(n, eta, j) for j in range(n)]
    lhs = [w / b2 + b2 / w + 2 for w in ws]
    lhs_abs = [abs(w / b2) + abs(b2 / w) + 2 for w in ws]
    acc = mpmath.mpc(1)
    for az in zs:
        for base, scale in zip(lhs, lhs_abs):
            f = base - az
            if abs(f) <= eps * (scale + abs(az)):
                return ZERO
            acc *= f
    return LogProduct.from_complex(acc)


def block_term_closed(sigma: int, eta: int, p: Perturbation, m: int, n: int,
                      dps: int = DEFAULT_DPS):
    """Same product with the w-product done in closed form (mpmath value).

    prod_{w^n = e} P(z, w) = (-1)^(n+1) (e (B + 1/B) - V_n(a^2 z - 2)),
    where V_n(r + 1/r) = r^n + r^-n is built by the Chebyshev recurrence.
    Independent of the grid product; used as a cross-check.
    """
    with mpmath.workdps(dps):
        p = p.to_mp()
        e = (-1) ** eta
        B = p.B
        sign = (-1) ** (n + 1)
        a2 = p.a2(m)
        acc = mpmath.mpc(1)
        for j in range(m):
            s = a2 * _mp_root(m, sigma, j) - 2
            v_prev, v = mpmath.mpf(2), s
            for _ in range(n - 1):
                v_prev, v = v, s * v - v_prev
            acc *= sign * (e * (B + 1 / B) - v)
        return acc


def _floor_for(dps: int | None) -> float:
    if dps is None:
        return HARDWARE_FLOOR
    return 10.0 ** (-(dps // 2))


def partition(p: Perturbation, m: int, n: int, dps: int | None = None,
              floor: float | None = None) -> LogProduct:
    """Z_{m,n}(alpha, beta) as a LogProduct.

    Raises PrecisionError when the four-term combination cancels below
    ``floor`` (default 1e-8 in hardware precision, 10^-(dps/2) otherwise).
    """
    terms = [block_term(s, e, p, m, n, dps) for s, e in BLOCKS]
    coeffs = block_coefficients(n)
    with mpmath.workdps(dps or 15):
        return signed_sum(terms, coeffs, _floor_for(dps) if floor is None else floor)


def count(m: int, n: int, dps: int | None = None) -> int:
    """Number of perfect matchings of H_{m,n}, as an exact integer."""
    if dps is None:
        dps = _auto_dps(m, n)
    with mpmath.workdps(dps):
        z = partition(Perturbation(), m, n, dps).value()
        val = mpmath.nint(z.real)
        if abs(z - val) > ROUNDING_TOLERANCE:
            raise PrecisionError(f"Z_{{{m},{n}}}(0,0) = {z} is not near an integer")
        return int(val)


def mgf(alpha: float, beta: float, m: int, n: int, dps: int | None = None) -> float:
    """exp(pi alpha n/3) Z(alpha, beta) / Z(0, 0)."""
    with mpmath.workdps(dps or 15):
        num = partition(Perturbation(alpha, beta), m, n, dps)
        den = partition(Perturbation(), m, n, dps)
        ratio = num / den
        if not ratio.is_real(1e-6):
            raise PrecisionError(f"mgf phase {float(ratio.phase)} is not real")
        sign = 1 if abs(float(ratio.phase)) < 1 else -1
        log_val = ratio.log_magnitude + (mpmath.pi if dps else math.pi) * alpha * n / 3
        return sign * float(mpmath.exp(log_val) if dps else math.exp(log_val))


def _auto_dps(m: int, n: int) -> int:
    logz = partition(Perturbation(), m, n).log_magnitude
    return max(DEFAULT_DPS, int(logz / math.log(10)) + 25)


def fourier_grid_sizes(m: int, n: int) -> tuple[int, int]:
    return n + -(-n // 3) + 1, 2 * m + 1


def extract_winding_counts(m: int, n: int, dps: int | None = None) -> WindingTable:
    """Exact winding-count table by Fourier inversion of the MGF.

    Evaluates exp(pi alpha n/3) Z(alpha, beta) on a grid where
    (exp(-pi alpha), exp(-pi beta)) runs over roots of unity, inverts the
    finite Fourier sum and snaps to integers. Any coefficient further than
    1e-3 from a non-negative integer raises PrecisionError.
    """
    if n % 3:
        raise ValueError(f"winding tables need n divisible by 3, got n={n}")
    _check_size(m, n)
    _check_dps(dps)
    if dps is None:
        dps = _auto_dps(m, n)
    (k_lo, k_hi), (l_lo, l_hi) = winding_support(m, n)
    na, nb = fourier_grid_sizes(m, n)
    with mpmath.workdps(dps):
        coeffs = block_coefficients(n)
        values = {}
        for s in range(na):
            for t in range(nb):
                if (s, t) in values:
                    continue
                alpha = mpmath.mpc(0, -2) * s / na
                beta = mpmath.mpc(0, -2) * t / nb
                p = Perturbation(alpha, beta)
                terms = [_block_term_mp(si, et, p, m, n) for si, et in BLOCKS]
                z = signed_sum(terms, coeffs).value()
                g = z * mpmath.expjpi(-mpmath.mpf(2 * s * (n // 3)) / na)
                values[s, t] = g
                # real coefficients: G at the conjugate point is the conjugate
                values[(-s) % na, (-t) % nb] = mpmath.conj(g)
        # separable inverse transform: over t first, then over s
        ys = [[mpmath.expjpi(-2 * mpmath.mpf(t * l) / nb) for t in range(nb)]
              for l in range(l_lo, l_hi + 1)]
        xs = [[mpmath.expjpi(-2 * mpmath.mpf(s * k) / na) for s in range(na)]
              for k in range(k_lo, k_hi + 1)]
        half = [[mpmath.fsum(values[s, t] * yl[t] for t in range(nb)) for yl in ys]
                for s in range(na)]
        counts = {}
        norm = na * nb
        for ki, k in enumerate(range(k_lo, k_hi + 1)):
            for li, l in enumerate(range(l_lo, l_hi + 1)):
                acc = mpmath.fsum(half[s][li] * xs[ki][s] for s in range(na)) / norm
                c = mpmath.nint(acc.real)
                if abs(acc - c) > ROUNDING_TOLERANCE or c < 0:
                    raise PrecisionError(
                        f"coefficient C[{k},{l}] = {mpmath.nstr(acc, 12)} is not within "
                        f"{ROUNDING_TOLERANCE} of a non-negative integer at {dps} digits"
                    )
                if c:
                    counts[k, l] = int(c)
    return WindingTable(m, n, counts)

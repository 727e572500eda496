"""Discrete Gaussian limit law of the winding number and convergence diagnostics.

The limit law on Z^2 has weights exp(-pi(k^2/rho + rho l^2)/2). Finite-size
winding tables come from exact Fourier extraction and are compared with the
law at their own modulus rho = n/(sqrt(3) m).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import mpmath

from . import theta as th
from .enumeration import WindingTable
from .kasteleyn import Perturbation, extract_winding_counts, partition
from .logproduct import LogProduct
from .spectral import free_energy, rho_of

DEFAULT_TAIL = 1e-12
MGF_GRID = (-1.0, 0.0, 1.0)
RHO_TOLERANCE = 0.2


@dataclass
class DiscreteGaussianLaw:
    rho: float
    K: int
    Z: float
    probabilities: dict[tuple[int, int], float] = field(repr=False)

    def __getitem__(self, kl: tuple[int, int]) -> float:
        return self.probabilities.get(kl, 0.0)


def truncation_radius(rho: float, eps: float) -> int:
    return int(math.ceil(math.sqrt(2 * rho * max(1.0, 1 / rho) * abs(math.log(eps)) / math.pi)))


def law(rho: float, eps: float = DEFAULT_TAIL, min_radius: int = 0) -> DiscreteGaussianLaw:
    """Truncated limit law; ``min_radius`` widens K to cover a given support."""
    if rho <= 0 or eps <= 0:
        raise ValueError("rho and eps must be positive")
    K = max(truncation_radius(rho, eps), min_radius)
    weights = {
        (k, l): math.exp(-math.pi * (k * k / rho + rho * l * l) / 2)
        for k in range(-K, K + 1)
        for l in range(-K, K + 1)
    }
    Z = math.fsum(weights.values())
    return DiscreteGaussianLaw(rho, K, Z, {kl: w / Z for kl, w in weights.items()})


def _tilted_sum(t: float, var: float, radius: int) -> mpmath.mpf:
    """sum_k exp(pi t k - pi k^2 / (2 var)) around the peak k = t var."""
    c = int(round(t * var))
    return mpmath.fsum(
        mpmath.exp(mpmath.pi * t * k - mpmath.pi * k * k / (2 * var))
        for k in range(c - radius, c + radius + 1)
    )


def _gaussian_sum(alpha: float, beta: float, rho: float, eps: float) -> mpmath.mpf:
    """sum_{k,l} exp(pi(alpha k + beta l)) exp(-pi(k^2/rho + rho l^2)/2)."""
    rk = th.gaussian_radius(rho, eps)
    rl = th.gaussian_radius(1 / rho, eps)
    return _tilted_sum(alpha, rho, rk) * _tilted_sum(beta, 1 / rho, rl)


def limit_mgf(alpha: float, beta: float, rho: float, eps: float = 1e-15) -> float:
    """E[exp(-pi(alpha k + beta l))] under the limit law."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    with mpmath.workdps(30):
        return float(_gaussian_sum(-alpha, -beta, rho, eps) / _gaussian_sum(0, 0, rho, eps))


def theorem4_prediction(alpha: float, beta: float, m: int, n: int, f: float) -> LogProduct:
    """Leading-order asymptotic form of Z_{m,n}(alpha, beta), as a LogProduct."""
    rho = rho_of(m, n)
    q = math.exp(-rho * math.pi)
    with mpmath.workdps(30):
        p = mpmath.mpf(th.euler_p(q).real)
        s = _gaussian_sum(alpha, beta, rho, 1e-15)
        log_mag = (-math.pi * n * alpha / 3 - m * n * mpmath.mpf(f) + math.pi * rho / 6
                   - mpmath.log(2 * rho) / 2 - 2 * mpmath.log(p) + mpmath.log(s))
    return LogProduct(float(log_mag), math.pi if (m * n) % 2 else 0.0)


def theorem4_ratio(alpha: float, beta: float, m: int, n: int, f: float | None = None,
                   dps: int | None = None) -> float:
    """partition / theorem4_prediction (real, should tend to 1)."""
    if f is None:
        f = free_energy().value
    r = partition(Perturbation(alpha, beta), m, n, dps) / theorem4_prediction(alpha, beta, m, n, f)
    val = r.value_if_representable()
    if val is None:
        raise OverflowError("ratio not representable")
    return val.real


def tv_distance(table: WindingTable, law: DiscreteGaussianLaw) -> float:
    """Half the L1 distance between the table's law and the limit law."""
    outside = [kl for kl in table.counts if max(abs(kl[0]), abs(kl[1])) > law.K]
    if outside:
        raise ValueError(f"law truncation K={law.K} misses table entries {outside[:3]}")
    total = table.total
    keys = set(law.probabilities) | set(table.counts)
    return 0.5 * math.fsum(abs(table.counts.get(kl, 0) / total - law[kl]) for kl in keys)


def support_radius(table: WindingTable) -> int:
    return max(max(abs(k), abs(l)) for k, l in table.counts)


def table_law(table: WindingTable) -> DiscreteGaussianLaw:
    """The table's own distribution dressed as a law (used for sanity checks)."""
    return DiscreteGaussianLaw(float("nan"), support_radius(table), float(table.total), table.probabilities())


def mgf_gap_max(table: WindingTable, rho: float, grid=MGF_GRID) -> float:
    return max(abs(table.mgf(a, b) - limit_mgf(a, b, rho)) for a in grid for b in grid)


@dataclass(frozen=True)
class ConvergenceEntry:
    m: int
    n: int
    rho: float
    tv: float
    mgf_gap_max: float
    theorem4_ratio: float
    table_path: str | None


@dataclass
class ConvergenceReport:
    rho_target: float
    entries: list[ConvergenceEntry]

    def to_json(self) -> str:
        return json.dumps(
            {"rho_target": self.rho_target, "entries": [e.__dict__ for e in self.entries]},
            indent=2,
        )


def convergence_report(rho_target: float, sizes: list[tuple[int, int]], out_dir: str | None = None,
                       eps: float = DEFAULT_TAIL, f: float | None = None) -> ConvergenceReport:
    """Exact finite-size winding laws against the limit law, size by size.

    Each table is extracted exactly, compared with the law at its own
    modulus, and written to ``out_dir`` as CSV when a directory is given.
    """
    for m, n in sizes:
        if n % 3:
            raise ValueError(f"n must be divisible by 3, got ({m}, {n})")
        if abs(rho_of(m, n) - rho_target) > RHO_TOLERANCE * rho_target:
            raise ValueError(f"({m}, {n}) has rho={rho_of(m, n):.4f}, not within 20% of {rho_target}")
    if f is None:
        f = free_energy().value
    entries = []
    for m, n in sizes:
        rho = rho_of(m, n)
        table = extract_winding_counts(m, n)
        path = None
        if out_dir is not None:
            os.makedirs(out_dir, exist_ok=True)
            path = os.path.join(out_dir, f"winding_m{m}_n{n}.csv")
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(table.to_csv())
        entries.append(ConvergenceEntry(
            m, n, rho,
            tv_distance(table, law(rho, eps, support_radius(table))),
            mgf_gap_max(table, rho),
            theorem4_ratio(0.0, 0.0, m, n, f),
            path,
        ))
    return ConvergenceReport(rho_target, entries)

"""Command-line interface.

Exit codes: 0 success, 1 validation error (missing or invalid flags, bad
values, failed verification), 2 precision failure, 3 unknown command.
The default working precision comes from ``HEXDIMER_DPS`` when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

from . import __version__
from . import enumeration as en
from . import honeycomb as hc
from . import kasteleyn as ks
from . import limitlaw as ll
from . import spectral as sp
from . import theta as th
from . import verification as vf
from .logproduct import PrecisionError

EXIT_OK, EXIT_VALIDATION, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 3
DPS_ENV = "HEXDIMER_DPS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _precision_label(dps: int | None) -> str:
    return "hardware" if dps is None else f"mpmath dps={dps}"


def _default_dps() -> int | None:
    raw = os.environ.get(DPS_ENV)
    if raw in (None, ""):
        return None
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"{DPS_ENV} must be an integer, got {raw!r}") from None
    if val < 15:
        raise ValueError(f"{DPS_ENV} must be at least 15, got {val}")
    return val


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def _complex(c) -> dict:
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def _sizes(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            m, n = part.lower().split("x")
            out.append((int(m), int(n)))
        except ValueError:
            raise ValueError(f"sizes must look like 2x6,4x12; got {part!r}") from None
    return out


# --- commands -------------------------------------------------------------

def cmd_lattice_info(args) -> int:
    g = hc.build(args.m, args.n)
    if args.edges:
        import io
        buf = io.StringIO()
        hc.write_graph(g, buf)
        _emit(args, buf.getvalue())
        return EXIT_OK
    hc.check_invariants(g)
    info = {
        "m": g.m,
        "n": g.n,
        "vertices": g.num_vertices,
        "edges": len(g.edges),
        "edges_by_type": {name: sum(e.type == t for e in g.edges) for t, name in enumerate(hc.TYPE_NAMES)},
        "modulus": f"i*({g.modulus[0]})/sqrt(3)",
        "rho": g.rho,
        "reference_matching_size": len(hc.reference_matching(g)) if g.n % 3 == 0 else None,
        "precision": "exact",
    }
    _emit(args, _json(info))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = hc.build(args.m, args.n)
    out = {"m": g.m, "n": g.n, "count": en.count_matchings(g, args.max_vertices)}
    if g.n % 3 == 0:
        checked, bad = en.check_winding_agreement(g, args.max_vertices)
        out["winding_formula_agreement"] = {"checked": checked, "disagreements": bad}
    out["precision"] = "exact"
    _emit(args, _json(out))
    return EXIT_OK


def cmd_winding(args) -> int:
    if args.method == "brute":
        table = en.brute_winding_table(hc.build(args.m, args.n), args.max_vertices)
    else:
        table = ks.extract_winding_counts(args.m, args.n, args.dps)
    _emit(args, table.to_csv() if args.format == "csv" else table.to_json())
    return EXIT_OK


def cmd_partition(args) -> int:
    z = ks.partition(ks.Perturbation(args.alpha, args.beta), args.m, args.n, args.dps)
    val = z.value_if_representable()
    out = {
        "m": args.m, "n": args.n, "alpha": args.alpha, "beta": args.beta,
        "log_magnitude": float(z.log_magnitude),
        "phase": float(z.phase),
        "value_if_representable": None if val is None else _complex(val),
        "precision": _precision_label(args.dps),
    }
    if args.alpha == 0 and args.beta == 0:
        out["count"] = str(ks.count(args.m, args.n))
    _emit(args, _json(out))
    return EXIT_OK


def cmd_mgf(args) -> int:
    val = ks.mgf(args.alpha, args.beta, args.m, args.n, args.dps)
    out = {"m": args.m, "n": args.n, "alpha": args.alpha, "beta": args.beta,
           "mgf": val, "precision": _precision_label(args.dps)}
    _emit(args, _json(out))
    return EXIT_OK


def cmd_theta(args) -> int:
    zeta = complex(args.zeta_re, args.zeta_im)
    if args.tau_re is not None or args.tau_im is not None:
        nome = th.Nome.from_tau(complex(args.tau_re or 0.0, args.tau_im or 0.0))
    else:
        nome = th.Nome(complex(args.q_re, args.q_im))
    fn = th.theta_series if args.side == "series" else th.theta_product_terms
    val, used = fn(args.index, zeta, nome, args.dps)
    val = complex(val)
    out = {"index": args.index, "side": args.side, "value_re": val.real, "value_im": val.imag,
           "terms_used": used, "precision": _precision_label(args.dps)}
    _emit(args, _json(out))
    return EXIT_OK


def cmd_free_energy(args) -> int:
    fe = sp.free_energy(args.method, args.tol)
    out = {"method": fe.method, "value": fe.value, "estimated_error": fe.estimated_error,
           "tol": args.tol, "precision": "hardware"}
    _emit(args, _json(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks, ok = vf.run_suite(args.suite)
    out = {"suite": args.suite, "checks": [c.to_dict() for c in checks], "pass": ok,
           "precision": "hardware"}
    _emit(args, _json(out))
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_converge(args) -> int:
    sizes = _sizes(args.sizes)
    out_dir = args.out_dir
    report = ll.convergence_report(args.rho, sizes, out_dir)
    text = report.to_json()
    if out_dir is not None:
        with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")
    _emit(args, text)
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hexdimer", description="Winding statistics of dimers on the toroidal honeycomb lattice.")
    p.add_argument("--version", action="version", version=f"hexdimer {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text, size=True, dps=False):
        sp_ = sub.add_parser(name, help=help_text)
        if size:
            sp_.add_argument("--m", type=int, required=True)
            sp_.add_argument("--n", type=int, required=True)
        if dps:
            sp_.add_argument("--dps", type=int, default=None,
                             help=f"mpmath precision in decimal digits (default: ${DPS_ENV} or hardware)")
        sp_.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp_.set_defaults(func=func)
        return sp_

    s = add("lattice-info", cmd_lattice_info, "graph summary or edge list")
    s.add_argument("--edges", action="store_true", help="print the edge list instead of the summary")

    s = add("enumerate", cmd_enumerate, "brute-force matching count")
    s.add_argument("--max-vertices", type=int, default=None)

    s = add("winding", cmd_winding, "winding-number count table", dps=True)
    s.add_argument("--method", choices=("brute", "dft"), default="dft")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--max-vertices", type=int, default=None)

    for name, func, text in (("partition", cmd_partition, "perturbed partition function"),
                             ("mgf", cmd_mgf, "winding moment generating function")):
        s = add(name, func, text, dps=True)
        s.add_argument("--alpha", type=float, default=0.0)
        s.add_argument("--beta", type=float, default=0.0)

    s = add("theta", cmd_theta, "Jacobi theta function value", size=False, dps=True)
    s.add_argument("--index", type=int, choices=(1, 2, 3, 4), required=True)
    s.add_argument("--zeta-re", type=float, default=0.0)
    s.add_argument("--zeta-im", type=float, default=0.0)
    s.add_argument("--q-re", type=float, default=0.0)
    s.add_argument("--q-im", type=float, default=0.0)
    s.add_argument("--tau-re", type=float, default=None)
    s.add_argument("--tau-im", type=float, default=None)
    s.add_argument("--side", choices=("series", "product"), default="series")

    s = add("free-energy", cmd_free_energy, "free energy per fundamental domain", size=False)
    s.add_argument("--method", choices=sorted(sp.FREE_ENERGY_METHODS), default="log_r1_integral")
    s.add_argument("--tol", type=float, default=1e-12)

    s = add("verify", cmd_verify, "run a numerical check suite", size=False)
    s.add_argument("--suite", choices=sorted(vf.SUITES), required=True)

    s = add("converge", cmd_converge, "finite-size winding laws against the limit law", size=False)
    s.add_argument("--rho", type=float, default=math.sqrt(3))
    s.add_argument("--sizes", default="2x6,4x12,8x24", help="comma-separated MxN list")
    s.add_argument("--out-dir", default=None, help="directory for per-size CSV tables and summary.json")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        unknown = "argument command: invalid choice" in str(exc)
        return EXIT_USAGE if unknown else EXIT_VALIDATION
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        if hasattr(args, "dps") and args.dps is None:
            args.dps = _default_dps()
        if getattr(args, "dps", None) is not None and args.dps < 15:
            raise ValueError("--dps must be at least 15")
        return args.func(args)
    except (PrecisionError, OverflowError, ArithmeticError) as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, ZeroDivisionError, en.EnumerationCapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

"""Regenerate the golden trend files from the current implementation.

Run once after a verified build:  python3 tests/make_golden.py
The acceptance suite then requires later runs to reproduce these values.
"""

import json
import math
import pathlib

from hexdimer import limitlaw as ll
from hexdimer import spectral as sp
from hexdimer import verification as vf

HERE = pathlib.Path(__file__).parent / "golden"


def main() -> None:
    HERE.mkdir(exist_ok=True)
    report = ll.convergence_report(math.sqrt(3), [(k, 3 * k) for k in (2, 4, 8)])
    data = json.loads(report.to_json())
    (HERE / "convergence_rho_sqrt3.json").write_text(json.dumps(data, indent=2) + "\n")

    lemma = []
    for k in vf.TREND_SIZES:
        r = sp.lemma12_13_report(0.0, 0.0, k, 3 * k)
        lemma.append({"m": k, "n": 3 * k, "tail_max": r.tail_max, "head_max": max(r.head_deviations)})
    cor = {
        f"{w}@{a},{b}": vf.corollary_trend(w, a, b)
        for w, a, b in vf.COROLLARY_TRENDS + (("01", 0.0, 0.0),)
    }
    f = sp.free_energy().value
    prop = [sp.prop18_residuals(a, k, 3 * k, f).__dict__ for a in (0.0, 0.5) for k in vf.TREND_SIZES]
    out = {"sizes": list(vf.TREND_SIZES), "lemma12_13": lemma, "corollary_log_ratios": cor, "prop18": prop}
    (HERE / "trends_k4_8_16.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Emit the (delta, R) frontier CSVs for the two regimes q=16, A=3 and
q=49, A=6 (product envelope, optimized ruled curve, dominance table)."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ruledcodes.cli import main  # noqa: E402


def main_script():
    out_root = sys.argv[1] if len(sys.argv) > 1 else "asymptotics_out"
    rc = 0
    for q, A in ((16, 3.0), (49, 6.0)):
        out = os.path.join(out_root, f"q{q}")
        rc |= main(["asymptotics", "--q", str(q), "--A", str(A),
                    "--samples", "400", "--b-range", "0.3:0.98:120",
                    "--out-dir", out])
    return rc


if __name__ == "__main__":
    sys.exit(main_script())

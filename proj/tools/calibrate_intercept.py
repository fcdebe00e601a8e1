#!/usr/bin/env python3
"""Oracle intercept for a target share of healthy agents going out on a zero-prevalence day."""

import argparse
import math


def intercept(go_out: float) -> float:
    # logit of the stay-home probability
    stay = 1.0 - go_out
    return math.log(stay / go_out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("go_out", nargs="?", type=float, default=0.982,
                    help="probability a symptom-free agent leaves home when prevalence is 0 (default 0.982)")
    args = ap.parse_args()
    if not 0.0 < args.go_out < 1.0:
        ap.error("go_out must be strictly between 0 and 1")
    b0 = intercept(args.go_out)
    print(f"intercept {b0:.4f} (rounded {round(b0, 1)})")


if __name__ == "__main__":
    main()

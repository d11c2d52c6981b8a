"""Print the Koszul / Gorenstein / smooth / Calabi-Yau table for the bundled DG algebras.

    python3 scripts/classification_table.py [--cutoff 8] [--seed 0]
"""
import argparse
import time

from dgfrob.classify import classify
from dgfrob.config import RunConfig
from dgfrob.io import load_corpus

ENTRIES = ["example1", "ex3", "ex2", "ex5", "prop71", "prop72", "poly_z", "ground_field"]


def mark(b):
    return "yes" if b else "no"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cutoff", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = RunConfig(cutoff=args.cutoff, seed=args.seed)
    head = f"{'algebra':<13}{'Koszul':>8}{'Gorenstein':>12}{'smooth':>8}{'CY':>6}{'dim Ext':>9}{'time':>8}"
    print(head)
    print("-" * len(head))
    for name in ENTRIES:
        t = time.perf_counter()
        v = classify(load_corpus(name).dg_algebra(), cfg.cutoff, seed=cfg.seed, det_bound=cfg.det_bound)
        dt = time.perf_counter() - t
        print(
            f"{name:<13}{mark(v.koszul):>8}{mark(v.gorenstein):>12}"
            f"{mark(v.smooth.finite_basis_found):>8}{mark(v.calabi_yau):>6}"
            f"{v.ext.algebra.dim:>9}{dt:>7.1f}s"
        )


if __name__ == "__main__":
    main()

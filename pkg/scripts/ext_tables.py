"""Compute Ext-algebras from scratch and print their product tables.

    python3 scripts/ext_tables.py [names ...] [--cutoff 8]

Each table is followed by the Frobenius verdict.  With ``--bundled`` the
module stored in the corpus entry is used instead of a fresh resolution.
"""
import argparse

from dgfrob.cli import algebra_payload, frobenius_payload, render_frobenius, render_table
from dgfrob.config import RunConfig
from dgfrob.frobenius import analyze
from dgfrob.io import load_corpus
from dgfrob.semifree import ext_algebra, resolve_trivial

DEFAULT = ["example1", "ex3", "ex2", "prop71", "prop72"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=DEFAULT)
    ap.add_argument("--cutoff", type=int, default=8)
    ap.add_argument("--bundled", action="store_true")
    args = ap.parse_args()
    cfg = RunConfig(cutoff=args.cutoff)
    for name in args.names:
        doc = load_corpus(name)
        dg = doc.dg_algebra()
        F = doc.resolution if args.bundled and doc.resolution else resolve_trivial(dg, cfg.cutoff)
        E = ext_algebra(dg, F, cfg.cutoff).algebra
        print(f"== {name}: degrees " + ", ".join(f"{n}:{d}" for n, d in zip(E.names, E.degrees)))
        print(render_table(algebra_payload(E)))
        print(render_frobenius(frobenius_payload(analyze(E, seed=cfg.seed))))
        print()


if __name__ == "__main__":
    main()

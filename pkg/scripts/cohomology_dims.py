"""Print dim H^n for every bundled DG algebra, n = 0..cutoff."""
import sys

from dgfrob.dg import cohomology_dim
from dgfrob.io import corpus_names, load_corpus

cutoff = int(sys.argv[1]) if len(sys.argv) > 1 else 8
for name in corpus_names():
    doc = load_corpus(name)
    if doc.kind == "structure-constants":
        continue
    dg = doc.dg_algebra()
    dims = [cohomology_dim(dg, n) for n in range(cutoff + 1)]
    print(f"{name:<13}" + " ".join(f"{d:>3}" for d in dims))

"""Command-line front end.

    dgfrob <command> <input-file> [--max-degree N] [--format json|text] [--out PATH] [--seed U64]

Commands: cohomology, resolve, ext, frobenius, classify.  The input file is
a JSON document; a path that does not exist but whose stem names a bundled
corpus entry (``examples/ex3.json``, ``ex3``) loads that entry.

Exit status: 0 success, 1 input error, 2 window exceeded, 3 internal
invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import __version__
from .classify import classify
from .config import RunConfig
from .dg import cohomology, cohomology_dim
from .errors import InputError, InvariantError, WindowError
from .frobenius import analyze
from .io import digest, format_fraction, read_input
from .ncalg import NcPoly
from .semifree import check_resolution, ext_algebra, is_koszul, resolve_trivial, smoothness_report

COMMANDS = ("cohomology", "resolve", "ext", "frobenius", "classify")


def _q(x):
    return None if x is None else format_fraction(x)


def _qvec(v):
    return None if v is None else [format_fraction(x) for x in v]


def _qmat(m):
    return None if m is None else [[format_fraction(x) for x in row] for row in m]


def _linear(row, names):
    return NcPoly({(k,): c for k, c in row.items()}).format(names)


def table_entries(A):
    out = []
    for (i, j), row in sorted(A.table.items()):
        out.append({"left": A.names[i], "right": A.names[j], "product": _linear(row, A.names)})
    return out


def frobenius_payload(rep):
    return {
        "is_frobenius": rep.is_frobenius,
        "shift": rep.shift,
        "socle_degree": rep.socle_degree,
        "witness_functional": _qvec(rep.witness_functional),
        "gram": _qmat(rep.gram),
        "is_graded_symmetric": rep.is_graded_symmetric,
        "symmetric_witness": _qvec(rep.symmetric_witness),
        "nakayama": _qmat(rep.nakayama),
        "method": rep.method,
    }


def algebra_payload(A):
    return {
        "basis": list(A.names),
        "degrees": list(A.degrees),
        "unit": A.names[A.unit],
        "dims_by_degree": {str(k): v for k, v in A.dims_by_degree().items()},
        "table": table_entries(A),
    }


def module_payload(dg, F):
    alg = list(dg.names)
    gens = []
    for j in range(F.rank):
        gens.append({
            "name": F.names[j],
            "degree": F.degrees[j],
            "weight": F.weights[j] if F.weights else None,
            "differential": F.format_row(j, alg),
        })
    return {"generators": gens, "augmentation": F.names[F.augmentation]}


def run_command(cmd, doc, config: RunConfig | None = None):
    """Dispatch one command; returns the report as a JSON-ready dict."""
    config = config or RunConfig()
    max_degree, seed, bound = config.cutoff, config.seed, config.det_bound
    if cmd not in COMMANDS:
        raise InputError(f"unknown command {cmd!r}")
    report = {
        "engine": f"dgfrob {__version__}",
        "command": cmd,
        "input": {"kind": doc.kind, "name": doc.name, "digest": digest(doc)},
        "cutoff": max_degree,
    }
    if doc.kind == "structure-constants":
        if cmd != "frobenius":
            raise InputError(f"command {cmd!r} needs a DG or graded algebra, not structure constants")
        A = doc.algebra()
        rep = analyze(A, seed=seed, bound=bound)
        report["result"] = {"algebra": algebra_payload(A), "frobenius": frobenius_payload(rep)}
        return report
    dg = doc.dg_algebra()
    if cmd == "cohomology":
        rows = []
        for n in range(max_degree + 1):
            h = cohomology(dg, n)
            rows.append({
                "degree": n,
                "dim": h.dim,
                "representatives": [r.format(dg.names) for r in h.representatives],
            })
        report["result"] = {"cohomology": rows}
    elif cmd == "resolve":
        F = resolve_trivial(dg, max_degree, config.max_generators)
        sm = smoothness_report(dg, max_degree, F)
        report["result"] = {
            "resolution": module_payload(dg, F),
            "koszul": is_koszul(F),
            "exact_to_cutoff": check_resolution(dg, F, max_degree),
            "smoothness": {
                "finite_basis_found": sm.finite_basis_found,
                "basis_size": sm.basis_size,
                "certified_to": sm.certified_to,
                "margin": sm.margin,
            },
        }
    elif cmd == "ext":
        F = resolve_trivial(dg, max_degree, config.max_generators)
        E = ext_algebra(dg, F, max_degree)
        report["result"] = {"resolution": module_payload(dg, F), "ext": algebra_payload(E.algebra)}
    elif cmd == "frobenius":
        F = resolve_trivial(dg, max_degree, config.max_generators)
        E = ext_algebra(dg, F, max_degree)
        rep = analyze(E.algebra, seed=seed, bound=bound)
        report["result"] = {"algebra": algebra_payload(E.algebra), "frobenius": frobenius_payload(rep)}
    elif cmd == "classify":
        v = classify(dg, max_degree, seed=seed, det_bound=bound)
        report["result"] = {
            "koszul": v.koszul,
            "smooth": {
                "finite_basis_found": v.smooth.finite_basis_found,
                "verified_to": v.smooth.certified_to,
                "basis_size": v.smooth.basis_size,
            },
            "gorenstein": v.gorenstein,
            "calabi_yau": v.calabi_yau,
            "conditional_on_smoothness": v.conditional,
            "candidate_calabi_yau_shift": v.candidate_cy_shift,
            "ext_summary": algebra_payload(v.ext.algebra),
            "frobenius": frobenius_payload(v.frobenius),
            "resolution": module_payload(dg, v.resolution),
            "caveats": v.caveats,
            "notes": v.notes,
        }
    return report


# ------------------------------------------------------------ text rendering


def _mark(b):
    return "yes" if b else "no"


def render_table(alg):
    names = alg["basis"]
    cells = {(e["left"], e["right"]): e["product"] for e in alg["table"]}
    grid = [["·"] + names]
    for a in names:
        grid.append([a] + [cells.get((a, b), "0") for b in names])
    widths = [max(len(r[c]) for r in grid) for c in range(len(grid[0]))]
    lines = []
    for t, r in enumerate(grid):
        lines.append(" | ".join(x.rjust(w) for x, w in zip(r, widths)))
        if t == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def render_frobenius(fr):
    lines = [f"Frobenius: {_mark(fr['is_frobenius'])}"]
    if fr["is_frobenius"]:
        lines.append(f"shift: {fr['shift']}  (socle degree {fr['socle_degree']}, {fr['method']})")
        lines.append("witness: [" + ", ".join(fr["witness_functional"]) + "]")
        lines.append(f"graded symmetric: {_mark(fr['is_graded_symmetric'])}")
        if fr["symmetric_witness"]:
            lines.append("symmetric witness: [" + ", ".join(fr["symmetric_witness"]) + "]")
        lines.append("Nakayama:")
        lines += ["  [" + ", ".join(r) + "]" for r in fr["nakayama"]]
    return "\n".join(lines)


def render_module(mod):
    lines = []
    for g in mod["generators"]:
        lines.append(f"  {g['name']} (degree {g['degree']}, weight {g['weight']}): d = {g['differential']}")
    return "\n".join(lines)


def render_text(report):
    r = report["result"]
    cmd = report["command"]
    head = f"{cmd} of {report['input']['name'] or report['input']['digest']} (cutoff {report['cutoff']})"
    out = [head]
    if cmd == "cohomology":
        out.append(" n | dim H^n")
        for row in r["cohomology"]:
            out.append(f"{row['degree']:>2} | {row['dim']}")
        for row in r["cohomology"]:
            for rep in row["representatives"]:
                out.append(f"  [{rep}] in degree {row['degree']}")
    elif cmd == "resolve":
        out.append(render_module(r["resolution"]))
        sm = r["smoothness"]
        out.append(f"Koszul: {_mark(r['koszul'])}; exact to cutoff: {_mark(r['exact_to_cutoff'])}")
        out.append(f"finite semi-basis: {_mark(sm['finite_basis_found'])} (size {sm['basis_size']}, "
                   f"verified up to {sm['certified_to']})")
    elif cmd == "ext":
        out.append(render_module(r["resolution"]))
        out.append("degrees: " + ", ".join(f"{n}:{d}" for n, d in zip(r["ext"]["basis"], r["ext"]["degrees"])))
        out.append(render_table(r["ext"]))
    elif cmd == "frobenius":
        out.append(render_table(r["algebra"]))
        out.append(render_frobenius(r["frobenius"]))
    elif cmd == "classify":
        out.append(f"Koszul: {_mark(r['koszul'])}")
        out.append(f"homologically smooth: {_mark(r['smooth']['finite_basis_found'])} "
                   f"(verified up to {r['smooth']['verified_to']}, semi-basis size {r['smooth']['basis_size']})")
        out.append(f"Gorenstein: {_mark(r['gorenstein'])}")
        out.append(f"Calabi-Yau: {_mark(r['calabi_yau'])}")
        if r["candidate_calabi_yau_shift"] is not None:
            out.append(f"candidate Calabi-Yau shift: {r['candidate_calabi_yau_shift']}")
        out.append(render_table(r["ext_summary"]))
        out += [f"note: {c}" for c in r["caveats"] + r["notes"]]
    return "\n".join(out) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="dgfrob", description="Ext-algebras and Frobenius tests for DG algebras")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="JSON document or bundled corpus name")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(cutoff=args.max_degree, seed=args.seed)
        doc = read_input(args.input)
        report = run_command(args.command, doc, config)
    except InputError as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except WindowError as exc:
        print(f"window exceeded: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except Exception:  # anything else is a bug
        traceback.print_exc()
        return 3
    if args.format == "json":
        text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

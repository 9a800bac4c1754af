"""Command-line surface: realize nets, enumerate summands, run suites.

Exit codes: 0 success, 1 verification failure, 2 input error.  All output
is deterministic for fixed inputs and seed; every float in the JSON output
sits next to the exact rational/surd data it was computed from.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .crystal_nets import (
    VanishingSummand,
    distortion,
    energy,
    quadric_point_2d,
    realization_to_json_obj,
    realization_to_obj,
    standard_realization,
    torus_volume,
)
from .errors import CrystalFramesError, UnknownSuiteError
from .exact_lattice import enumerate_summands
from .graph_core import FiniteGraph, homology_basis, parse_graph_json, parse_graph_text
from .graph_jacobian import abel_jacobi, jacobian, jacobian_pairing, albanese
from .suites import run_suite


def _load_graph(path: str, allow_low_degree: bool) -> FiniteGraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_graph_json(text, allow_low_degree=allow_low_degree)
    return parse_graph_text(text, allow_low_degree=allow_low_degree)


def _parse_summand(spec: str, b1: int):
    """`zero`, or generator rows `a,b,..;c,d,..` in the printed cycle basis."""
    if spec == "zero":
        return []
    rows = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        row = [int(x) for x in part.split(",")]
        if len(row) != b1:
            raise CrystalFramesError(
                f"summand row {part!r} has {len(row)} entries, expected b1 = {b1}"
            )
        rows.append(row)
    return rows


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _basis_doc(hb) -> list:
    return [
        {
            "cycle": i,
            "edges": {str(idx): str(c) for idx, c in sorted(ch.coeffs.items())},
        }
        for i, ch in enumerate(hb.cycles)
    ]


def cmd_realize(args) -> int:
    g = _load_graph(args.graph, args.allow_low_degree)
    hb = homology_basis(g)
    rows = _parse_summand(args.summand, hb.b1)
    vs = VanishingSummand.make(g, rows, hb)
    r = standard_realization(vs)
    total, vol_sq, e_float = energy(r)
    force, ratio = distortion(r)
    report = {
        "dimension": vs.d,
        "betti_number": hb.b1,
        "cycle_basis": _basis_doc(hb),
        "summand": [list(c) for c in vs.lattice.basis],
        "verification": {
            "harmonic": r.cochain.is_harmonic(),
            "tight_constant_over_orientation": str(r.cochain.tight_constant()),
            "energy_sum_sq": str(total),
            "energy_vol_sq": str(vol_sq),
            "energy": e_float,
            "distortion_R": ratio,
            "torus_vol_sq": str(torus_volume(vs)),
        },
    }
    if vs.d == 2:
        qp = quadric_point_2d(vs)
        report["quadric"] = {
            "D": qp.D,
            "point": [z.to_json() for z in qp.canonical],
            "conjugate": [z.to_json() for z in qp.canonical_conjugate],
        }
    if args.export == "obj":
        payload = realization_to_obj(r, args.radius)
    else:
        report["net"] = realization_to_json_obj(r, args.radius)
        payload = _dump(report)
    if args.out:
        Path(args.out).write_text(payload)
        if args.export == "obj":
            print(_dump(report))
    else:
        print(payload)
    return 0


def cmd_enumerate(args) -> int:
    g = _load_graph(args.graph, args.allow_low_degree)
    hb = homology_basis(g)
    d = args.dim
    if not (1 <= d <= hb.b1):
        raise CrystalFramesError(f"dimension must be in 1..{hb.b1}")
    bound = Fraction(args.height_bound)
    summands = enumerate_summands(
        hb.b1, hb.b1 - d, bound, metric=hb.gram, max_results=args.max_rows
    )
    rows = []
    for lat in summands:
        vs = VanishingSummand.make(g, [list(c) for c in lat.basis], hb)
        row = {
            "summand": [list(c) for c in lat.basis],
            "height_sq": str(vs.height_sq()),
            "torus_vol_sq": str(torus_volume(vs)),
        }
        if d == 2:
            qp = quadric_point_2d(vs)
            row["D"] = qp.D
            row["point"] = [z.to_json() for z in qp.canonical]
        rows.append(row)
    print(
        _dump(
            {
                "graph": args.graph,
                "betti_number": hb.b1,
                "cycle_basis": _basis_doc(hb),
                "dimension": d,
                "height_bound_sq": str(bound),
                "count": len(rows),
                "rows": rows,
            }
        )
    )
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed)
    print(_dump(report))
    return 0 if report["passed"] else 1


def cmd_jacobian(args) -> int:
    g = _load_graph(args.graph, args.allow_low_degree)
    jd = jacobian(g)
    doc = {
        "invariants": list(jd.invariants.factors),
        "kappa": jd.kappa,
        "abel_jacobi_table": [
            list(abel_jacobi(g, x, 0).canonical_form)
            for x in range(g.vertex_count)
        ],
    }
    els = [albanese(g, x, 0) for x in range(g.vertex_count)]
    doc["pairing_table"] = [
        [str(jacobian_pairing(g, a, b)) for b in els] for a in els
    ]
    print(_dump(doc))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="crystalframes",
        description="Exact crystallographic tight frames, crystal nets, and graph Jacobians",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument(
        "--allow-low-degree",
        action="store_true",
        help="accept graphs with vertices of degree < 3",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="standard realization of a topological crystal")
    p.add_argument("graph", help="graph file (text or JSON format)")
    p.add_argument(
        "--summand",
        default="zero",
        help="'zero' or generator rows 'a,b,..;c,d,..' in the printed cycle basis",
    )
    p.add_argument("--radius", type=int, default=1, help="patch radius for export")
    p.add_argument("--export", choices=("json", "obj"), default="json")
    p.add_argument("--out", help="write the geometry to this path")
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("enumerate", help="summands below a height bound, with invariants")
    p.add_argument("graph")
    p.add_argument("--dim", type=int, required=True, help="crystal dimension d")
    p.add_argument(
        "--height-bound",
        required=True,
        help="bound on the SQUARED height h^2 (rational, e.g. 12 or 25/4)",
    )
    p.add_argument("--max-rows", type=int, default=20000)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help="jacobian|frames|nets|arithmetic|all")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("jacobian", help="invariants, kappa, Abel-Jacobi and pairing tables")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_jacobian)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CrystalFramesError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

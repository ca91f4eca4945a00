"""Command-line interface.

Exit codes: 0 success, 1 bad input, 2 guard exceeded, 3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import suites
from .errors import GuardExceeded, ZonotopalError
from .fileio import EXAMPLE_GRAPH, digest, load_graph, load_matrix, read_text
from .graphs import count_forests, count_spanning_trees, incidence_matrix
from .linalg import QMatrix
from .matroid import central_reduction, load_config, tutte
from .power_ideal import hilbert_of, ideal_generators, tutte_specialization
from .reconstruction import ProjMultiset, reconstruct
from .squarefree import make_length_oracle, subalgebra_hilbert
from .zequiv import unimodular_equiv_via_matroid, z_equivalent
from .zonotope import facet_data, interior_lattice_points, lattice_points, volume

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class RunReport:
    command: list[str]
    inputs_digest: str
    results: dict
    flags: dict = field(default_factory=dict)
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "inputs_digest": self.inputs_digest,
                           "results": self.results, "flags": self.flags, "seed": self.seed},
                          indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls(d["command"], d["inputs_digest"], d["results"], d["flags"], d["seed"])


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _matrix_json(A: QMatrix) -> list[list[str]]:
    return [[str(x) for x in A.row(i)] for i in range(A.rows)]


def _strip_zero_columns(A: QMatrix) -> tuple[QMatrix, int]:
    keep = [j for j, c in enumerate(A.columns()) if any(c)]
    return A.submatrix(cols=keep), A.cols - len(keep)


# ---------------------------------------------------------------------------
# subcommands; each returns (results, text lines, flags, exit code)


def cmd_hilbert(args):
    A = load_matrix(args.matrix)
    C = load_config(A)
    P = ideal_generators(facet_data(C), args.k)
    series = hilbert_of(C, args.k)
    res = {"k": args.k, "coefficients": list(series), "dimension": series.total(),
           "generators": [[list(eta), e] for eta, e in P.generators], "unit_ideal": P.unit_ideal}
    lines = [f"Hilbert series (k={args.k}): {series}",
             f"coefficients: {list(series)}",
             f"total dimension: {series.total()}"]
    if args.k in (-1, 0, 1):
        rhs = tutte_specialization(tutte(C), C.m, C.n, args.k)
        res["tutte_identity"] = rhs == series
        lines.append(f"Tutte specialisation agrees: {rhs == series}")
    return res, lines, {}, EXIT_OK


def cmd_tutte(args):
    C = load_config(load_matrix(args.matrix))
    T = tutte(C)
    res = {"coefficients": T.coefficient_grid(), "text": str(T), "T(1,1)": str(T(1, 1)), "T(2,1)": str(T(2, 1))}
    return res, [f"T(x, y) = {T}", f"T(1,1) = {T(1, 1)}", f"T(2,1) = {T(2, 1)}"], {}, EXIT_OK


def cmd_zonotope(args):
    C = load_config(load_matrix(args.matrix))
    Z = facet_data(C)
    show_all = not (args.lattice or args.interior or args.volume or args.facets)
    res, lines = {}, []
    if args.facets or show_all:
        res["facets"] = [{"normal": list(f.normal), "multiplicity": f.multiplicity,
                          "support_value": str(f.support_value)} for f in Z.facets]
        lines.append("facet normals (unoriented class: multiplicity):")
        lines += [f"  {list(f.normal)}: {f.multiplicity}" for f in Z.unoriented()]
    if args.lattice or show_all:
        count, pts = lattice_points(Z)
        res["lattice_points"] = count
        res["points"] = [list(p) for p in pts]
        lines.append(f"lattice points: {count}")
    if args.interior or show_all:
        res["interior_lattice_points"] = interior_lattice_points(Z)
        lines.append(f"interior lattice points: {res['interior_lattice_points']}")
    if args.volume or show_all:
        res["volume"] = str(volume(C))
        lines.append(f"volume: {res['volume']}")
    return res, lines, {}, EXIT_OK


def cmd_subalgebra(args):
    A = load_matrix(args.matrix)
    series = subalgebra_hilbert(A)
    return ({"coefficients": list(series), "dimension": series.total()},
            [f"subalgebra Hilbert series: {series}", f"coefficients: {list(series)}"], {}, EXIT_OK)


def cmd_reconstruct(args):
    A = load_matrix(args.matrix)
    load_config(A)
    B, zeros = _strip_zero_columns(A)
    got = reconstruct(make_length_oracle(B), trials=args.trials, seed=args.seed)
    want = ProjMultiset.from_columns(B)
    res = {"multiset": got.to_json(), "zero_columns_stripped": zeros, "matches_columns": got == want}
    lines = [f"reconstructed classes: {got}", f"zero columns stripped: {zeros}",
             f"matches the column classes: {got == want}"]
    return res, lines, {}, EXIT_OK


def cmd_zequiv(args):
    A1, A2 = load_matrix(args.a), load_matrix(args.b)
    if args.unimodular:
        r = unimodular_equiv_via_matroid(A1, A2, seed=args.seed)
    else:
        r = z_equivalent(A1, A2, seed=args.seed)
    res = {"equivalent": bool(r), "mode": r.mode, "reason": r.reason,
           "witness": r.witness.to_json() if r.witness else None}
    lines = [f"z-equivalent: {bool(r)} ({r.mode})"]
    if r.witness:
        w = r.witness
        lines += [f"g = {_matrix_json(w.g)}", f"perm = {list(w.perm)}",
                  f"scales = {[str(x) for x in w.scales]}"]
    elif r.reason:
        lines.append(f"reason: {r.reason}")
    return res, lines, {"verdict": r.mode}, EXIT_OK


def cmd_graph(args):
    G = load_graph(args.edges)
    res, lines = {}, []
    if args.emit_matrix:
        A = incidence_matrix(G)
        res["matrix"] = _matrix_json(A)
        lines.append(A.to_text().rstrip())
    if args.forests:
        res["forests"] = count_forests(G)
        lines.append(str(res["forests"]) if not (args.emit_matrix or args.trees) else f"forests: {res['forests']}")
    if args.trees:
        res["trees"] = count_spanning_trees(G)
        lines.append(str(res["trees"]) if not (args.emit_matrix or args.forests) else f"trees: {res['trees']}")
    return res, lines, {}, EXIT_OK


def cmd_reduce(args):
    red = central_reduction(load_matrix(args.matrix))
    res = {"matrix": _matrix_json(red.matrix), "shape": list(red.matrix.shape),
           "bridge_columns": list(red.bridges), "dropped_rows": list(red.dropped_rows)}
    lines = [f"bridge columns removed: {list(red.bridges)}",
             f"rows dropped: {list(red.dropped_rows)}",
             red.matrix.to_text().rstrip()]
    return res, lines, {}, EXIT_OK


def cmd_verify(args):
    checks = []
    if args.worked_example or args.corpus is None:
        checks.append(suites.worked_example())
    if args.corpus is not None:
        n = args.corpus
        for name, fn in suites.SUITES.items():
            checks.append(fn(count=n, seed=args.seed, workers=args.threads))
    ok = all(c.passed for c in checks)
    res = {"checks": [c.to_json() for c in checks], "passed": ok}
    lines = [c.line() for c in checks]
    lines.append("all checks passed" if ok else "VERIFICATION FAILED")
    return res, lines, {"verdict": "pass" if ok else "fail"}, EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--threads", type=int, default=1, help="worker processes for corpus runs")

    p = _Parser(prog="zonotopal", description="Exact computations with zonotopal algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert series of the quotient by I^(k)")
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_hilbert, files=["matrix"])

    s = sub.add_parser("tutte", parents=[common], help="Tutte polynomial of the columns")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_tutte, files=["matrix"])

    s = sub.add_parser("zonotope", parents=[common], help="facets, lattice points, volume")
    s.add_argument("--matrix", required=True)
    s.add_argument("--lattice", action="store_true")
    s.add_argument("--interior", action="store_true")
    s.add_argument("--volume", action="store_true")
    s.add_argument("--facets", action="store_true")
    s.set_defaults(func=cmd_zonotope, files=["matrix"])

    s = sub.add_parser("subalgebra", parents=[common], help="Hilbert series of the square-free model")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_subalgebra, files=["matrix"])

    s = sub.add_parser("reconstruct", parents=[common], help="recover column classes from lengths")
    s.add_argument("--matrix", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=5)
    s.set_defaults(func=cmd_reconstruct, files=["matrix"])

    s = sub.add_parser("zequiv", parents=[common], help="decide z-equivalence with a witness")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--unimodular", action="store_true", help="use the matroid-isomorphism route")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_zequiv, files=["a", "b"])

    s = sub.add_parser("graph", parents=[common], help="incidence matrix, forests, trees")
    s.add_argument("--edges", required=True)
    s.add_argument("--emit-matrix", action="store_true")
    s.add_argument("--forests", action="store_true")
    s.add_argument("--trees", action="store_true")
    s.set_defaults(func=cmd_graph, files=["edges"])

    s = sub.add_parser("reduce", parents=[common], help="delete bridge columns and matching rows")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_reduce, files=["matrix"])

    s = sub.add_parser("verify", parents=[common], help="replay the worked example and corpus checks")
    s.add_argument("--paper-example", dest="worked_example", action="store_true",
                   help="replay the triangle-with-doubled-edge example")
    s.add_argument("--corpus", type=int, default=None, metavar="N")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify, files=[])
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "graph" and not (args.emit_matrix or args.forests or args.trees):
        parser.error("graph needs at least one of --emit-matrix, --forests, --trees")
    try:
        texts = [read_text(getattr(args, f)) for f in args.files]
        if args.command == "verify":
            texts.append(read_text(EXAMPLE_GRAPH))
        results, lines, flags, code = args.func(args)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ZonotopalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = RunReport(argv, digest(*texts), results, flags, getattr(args, "seed", None))
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())

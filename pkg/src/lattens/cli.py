"""Command-line interface with machine-readable JSON and CSV output.

Every subcommand reads a polytope as {"vertices": [[int, ...], ...]} from
--input or stdin where one is needed, validates it, and prints JSON to
stdout.  Exit status: 0 on success or a passing verification, 1 when a
verification fails (a structured counterexample report is still printed),
2 on malformed input or out-of-range parameters.  All randomness is
seeded, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import classify, ehrhart, points, tri2d
from .arith import format_rational
from .polytope import (
    LatticePolytope,
    UnimodularMap,
    polytope_from_json_dict,
    random_unimodular,
)
from .tensor import SymTensor

EHRHART_MAX_RANK = 12
EHRHART_MAX_DIM = 6
PLANAR_MAX_RANK = 20
PRISM_MAX_DIM = 7
PRISM_MAX_RANK = 8


class InputError(ValueError):
    """Malformed input or parameters outside the supported desk-scale caps."""


@dataclass
class RunConfig:
    """Resolved invocation: subcommand plus the knobs that determine the output."""

    subcommand: str
    args: argparse.Namespace

    @property
    def seed(self) -> int:
        return getattr(self.args, "seed", 0)


def _read_polytope(args) -> LatticePolytope:
    path = getattr(args, "input", None)
    try:
        if path:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            data = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read polytope JSON: {exc}") from exc
    try:
        return polytope_from_json_dict(data, max_dim=EHRHART_MAX_DIM)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _check_rank(r: int) -> int:
    if not 0 <= r <= EHRHART_MAX_RANK:
        raise InputError(f"rank must be between 0 and {EHRHART_MAX_RANK}")
    return r


def _parse_vector(text: str, dim: int) -> tuple[int, ...]:
    try:
        vec = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad integer vector {text!r}") from exc
    if len(vec) != dim:
        raise InputError(f"vector {text!r} must have {dim} coordinates")
    return vec


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


# -- subcommand handlers ------------------------------------------------------------


def _cmd_count(args) -> int:
    p = _read_polytope(args)
    _emit({"closed": points.count(p), "relint": points.count_relint(p)})
    return 0


def _cmd_tensor(args) -> int:
    p = _read_polytope(args)
    r = _check_rank(args.rank)
    if args.moment and args.relint:
        raise InputError("choose at most one of --moment and --relint")
    if args.moment:
        try:
            t = ehrhart.moment_tensor(p, r)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    elif args.relint:
        t = ehrhart.discrete_moment_relint(p, r)
    else:
        t = ehrhart.discrete_moment(p, r)
    _emit(t.to_json_dict())
    return 0


def _cmd_ehrhart(args) -> int:
    p = _read_polytope(args)
    r = _check_rank(args.rank)
    expansion = ehrhart.ehrhart_tensors(p, r)
    if r == 0:
        _emit([format_rational(c.scalar_value()) for c in expansion.coefficients])
    else:
        _emit([c.to_json_dict() for c in expansion.coefficients])
    return 0


def _report_exit(report: ehrhart.CheckReport) -> int:
    _emit(report.to_json_dict())
    return 0 if report.ok else 1


def _cmd_reciprocity(args) -> int:
    p = _read_polytope(args)
    return _report_exit(ehrhart.check_reciprocity(p, _check_rank(args.rank)))


def _cmd_covariance(args) -> int:
    p = _read_polytope(args)
    y = _parse_vector(args.translation, p.ambient_dim)
    return _report_exit(ehrhart.check_translation_covariance(p, _check_rank(args.rank), y))


def _cmd_equivariance(args) -> int:
    p = _read_polytope(args)
    if args.matrix:
        try:
            rows = json.loads(args.matrix)
            phi = UnimodularMap.linear(tuple(tuple(int(x) for x in row) for row in rows))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad matrix: {exc}") from exc
    else:
        phi = random_unimodular(p.ambient_dim, seed=args.seed, steps=args.steps)
    return _report_exit(ehrhart.check_equivariance(p, _check_rank(args.rank), phi))


def _cmd_nval(args) -> int:
    p = _read_polytope(args)
    if p.ambient_dim != 2:
        raise InputError("nval needs a polygon in ambient dimension 2")
    value = tri2d.valuation_n(p)
    if args.check_independence == 0:
        _emit(value.to_json_dict())
        return 0
    trials = args.check_independence
    all_equal = True
    if p.dim == 2:
        base = tri2d.unimodular_triangulation(p)
        for i in range(trials):
            walked = tri2d.flip_walk(base, seed=args.seed + i, steps=2 * len(base.triangles))
            if tri2d.valuation_n(p, walked) != value:
                all_equal = False
                break
    _emit(
        {
            "tensor": value.to_json_dict(),
            "independence": {"trials": trials, "all_equal": all_equal},
        }
    )
    return 0 if all_equal else 1


def _survey_rows(entries) -> list[dict]:
    rows = []
    for entry in entries:
        for name in sorted(entry["assemblies"]):
            info = entry["assemblies"][name]
            rows.append(
                {
                    "r": entry["r"],
                    "assembly": name,
                    "unknowns": entry["unknowns"],
                    "rank": info["rank"],
                    "kernel_dim": info["kernel_dim"],
                    "matches_expected": info["matches_expected"],
                }
            )
    return rows


def _cmd_rank(args) -> int:
    if args.survey:
        entries = classify.high_rank_survey([9, 11, 13, 15, 17, 19])
        if args.format == "json":
            _emit(entries)
        else:
            buf = io.StringIO()
            writer = csv.DictWriter(
                buf, fieldnames=["r", "assembly", "unknowns", "rank", "kernel_dim", "matches_expected"]
            )
            writer.writeheader()
            writer.writerows(_survey_rows(entries))
            sys.stdout.write(buf.getvalue())
        return 0

    n, r = args.dim, args.rank
    if n == 2:
        if not 2 <= r <= PLANAR_MAX_RANK:
            raise InputError(f"planar rank must be between 2 and {PLANAR_MAX_RANK}")
        parity = {"+1": 1, "1": 1, "-1": -1}.get(args.parity)
        if parity is None:
            raise InputError("parity must be +1 or -1")
        system = classify.planar_system(r, parity)
    else:
        if not 3 <= n <= PRISM_MAX_DIM:
            raise InputError(f"prism dimension must be between 3 and {PRISM_MAX_DIM}")
        if not 2 <= r <= PRISM_MAX_RANK:
            raise InputError(f"prism rank must be between 2 and {PRISM_MAX_RANK}")
        system = classify.prism_system(n, r, args.filter)
    rank_value = classify.rank(system)
    payload = {
        "unknowns": system.unknowns,
        "rank": rank_value,
        "kernel_dim": system.unknowns - rank_value,
    }
    if args.kernel:
        basis = classify.kernel_basis(system)
        payload["kernel_basis"] = [
            SymTensor(len(system.labels[0]), r, dict(zip(system.labels, vec))).to_json_dict()
            for vec in basis
        ]
    _emit(payload)
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattens",
        description="Exact lattice polytope tensor computations (JSON in, JSON/CSV out)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_polytope_cmd(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--input", "-i", help="path to polytope JSON (default: stdin)")
        return cmd

    add_polytope_cmd("count", "closed and relative-interior lattice point counts")

    cmd = add_polytope_cmd("tensor", "discrete moment tensor of the polytope")
    cmd.add_argument("--rank", "-r", type=int, required=True)
    cmd.add_argument("--relint", action="store_true", help="sum over relative-interior points")
    cmd.add_argument("--moment", action="store_true", help="exact integral moment tensor instead")

    cmd = add_polytope_cmd("ehrhart", "expansion coefficients of the dilation polynomial")
    cmd.add_argument("--rank", "-r", type=int, required=True)

    cmd = add_polytope_cmd("reciprocity", "verify the interior reciprocity identities")
    cmd.add_argument("--rank", "-r", type=int, required=True)

    cmd = add_polytope_cmd("covariance", "verify the translation covariance identity")
    cmd.add_argument("--rank", "-r", type=int, required=True)
    cmd.add_argument("--translation", "-y", required=True, help="integer vector, e.g. \"1,-2\"")

    cmd = add_polytope_cmd("equivariance", "verify equivariance under a lattice map")
    cmd.add_argument("--rank", "-r", type=int, required=True)
    cmd.add_argument("--matrix", help="integer matrix as JSON rows, determinant +1")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--steps", type=int, default=6)

    cmd = add_polytope_cmd("nval", "rank-9 triangulation valuation of a lattice polygon")
    cmd.add_argument(
        "--check-independence",
        type=int,
        default=0,
        metavar="N",
        help="also recompute over N flip-walked triangulations",
    )
    cmd.add_argument("--seed", type=int, default=0)

    cmd = sub.add_parser("rank", help="exact rank and kernel of the classification systems")
    cmd.add_argument("--dim", "-n", "--n", type=int, default=2)
    cmd.add_argument("--rank", "-r", "--r", type=int, default=3)
    cmd.add_argument("--parity", default="+1", help="planar coordinate-swap parity (+1 or -1)")
    cmd.add_argument("--filter", default="all", choices=classify.PRISM_FILTERS)
    cmd.add_argument("--kernel", action="store_true", help="include a kernel basis")
    cmd.add_argument("--survey", action="store_true", help="emit the odd high-rank table")
    cmd.add_argument("--format", default="csv", choices=("json", "csv"))

    return parser


_HANDLERS = {
    "count": _cmd_count,
    "tensor": _cmd_tensor,
    "ehrhart": _cmd_ehrhart,
    "reciprocity": _cmd_reciprocity,
    "covariance": _cmd_covariance,
    "equivariance": _cmd_equivariance,
    "nval": _cmd_nval,
    "rank": _cmd_rank,
}


def run(config: RunConfig) -> int:
    """Dispatch a resolved configuration; returns the process exit status."""
    try:
        return _HANDLERS[config.subcommand](config.args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(RunConfig(subcommand=args.subcommand, args=args))


if __name__ == "__main__":
    sys.exit(main())

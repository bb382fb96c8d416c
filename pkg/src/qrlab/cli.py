"""Command-line front end: ``qrlab <subcommand> [flags]``.

Reports are written to standard output as JSON (one object or an array).
Exit codes: 0 all reports pass or are not applicable, 1 an applicable
report fails, 2 usage or parse error, 3 I/O error.
"""

import argparse
import csv
import json
import sys
from dataclasses import replace

import numpy as np

from . import constants as C
from . import harness as H
from .analytic_core import ComplexSeries
from .ball_harmonic import LinearBallMap, identity_map
from .errors import QrlabError
from .planar_harmonic import PlanarHarmonicMap
from .quadrature import DEFAULT_SPEC

SUBCOMMANDS = ("constants", "pichorides", "verbitsky", "green", "theorem1", "theorem1-ball",
               "theorem2", "sharpness", "equality", "suite")
NEEDS_P = {"pichorides", "verbitsky", "theorem1", "theorem1-ball", "theorem2", "sharpness"}


class UsageError(Exception):
    pass


class MapFileError(UsageError):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float)
    common.add_argument("--K", type=float, default=1.0)
    common.add_argument("--k", type=float, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--angles", type=int, default=None, help="circle nodes")
    common.add_argument("--radial", type=int, default=None, help="radial nodes")
    common.add_argument("--grid", type=int, default=100_000, help="points for pointwise scans")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--degree", type=int, default=None)
    common.add_argument("--beta-frac", type=float, default=0.99, dest="beta_frac")
    common.add_argument("--map", default=None, help="JSON map file")
    common.add_argument("--csv", default=None, help="also write flat rows to this path")
    common.add_argument("--json", action="store_true", help="JSON output (always on)")
    parser = argparse.ArgumentParser(prog="qrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(SUBCOMMANDS) + "}")
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def parse_args(argv):
    """Parse and validate; raises ``SystemExit(2)`` on usage errors."""
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        if args.command in NEEDS_P and args.p is None:
            raise UsageError(f"{args.command} requires --p")
        if args.p is not None:
            C.check_p(args.p)
        C.check_K(args.K)
        if args.k is not None and not 0.0 <= args.k < 1.0:
            raise UsageError("--k must lie in [0, 1)")
        if args.n is not None:
            C.check_n(args.n)
        if args.angles is not None or args.radial is not None:
            replace(DEFAULT_SPEC, n_angles=args.angles or DEFAULT_SPEC.n_angles,
                    n_radial=args.radial or DEFAULT_SPEC.n_radial)
    except (UsageError, QrlabError, ValueError) as e:
        parser.error(str(e))
    return args


# -- map files --------------------------------------------------------------------

def _pairs(data, key):
    arr = data.get(key)
    if not isinstance(arr, list) or not arr:
        raise MapFileError(f"field {key!r}: expected a nonempty array of [re, im] pairs")
    for i, pair in enumerate(arr):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, (int, float)) for v in pair)):
            raise MapFileError(f"field {key!r}[{i}]: expected [re, im], got {pair!r}")
    return ComplexSeries.from_pairs(arr)


def load_map(path):
    """Read a planar or ball-linear map from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MapFileError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise MapFileError(f"{path}: expected a JSON object")
    kind = data.get("kind")
    if kind == "planar":
        return PlanarHarmonicMap(_pairs(data, "g"), _pairs(data, "h"))
    if kind == "ball-linear":
        n = data.get("n")
        A, b = data.get("A"), data.get("b")
        if not isinstance(n, int) or n < 2:
            raise MapFileError("field 'n': expected an integer >= 2")
        if not isinstance(A, list) or len(A) != n * n:
            raise MapFileError(f"field 'A': expected {n * n} numbers in row-major order")
        if not isinstance(b, list) or len(b) != n:
            raise MapFileError(f"field 'b': expected {n} numbers")
        return LinearBallMap(np.array(A, dtype=float).reshape(n, n), np.array(b, dtype=float))
    raise MapFileError(f"field 'kind': expected 'planar' or 'ball-linear', got {kind!r}")


# -- dispatch ---------------------------------------------------------------------

def _spec(args):
    return replace(DEFAULT_SPEC, n_angles=args.angles or DEFAULT_SPEC.n_angles,
                   n_radial=args.radial or DEFAULT_SPEC.n_radial)


def _planar_maps(args, positive=False):
    if args.map:
        m = load_map(args.map)
        if not isinstance(m, PlanarHarmonicMap):
            raise MapFileError("this subcommand needs a planar map")
        return [m]
    k = 0.3 if args.k is None else args.k
    return H.random_qr_family(args.seed, args.samples or 20, args.degree or 8, k, positive=positive)


def _execute(args):
    """Return a dict (constants) or a list of reports."""
    spec = _spec(args)
    cmd = args.command
    if cmd == "constants":
        return C.all_constants(args.p if args.p is not None else 2.0, args.K, args.n or 2)
    if cmd == "pichorides":
        return [H.pichorides_report(args.p, args.grid)]
    if cmd == "verbitsky":
        return [H.verbitsky_report(args.p, args.grid)]
    if cmd == "green":
        ps = [args.p] if args.p is not None else [1.2, 1.5, 2.0]
        if args.map:
            maps = _planar_maps(args)
        else:
            maps = H.random_qr_family(args.seed, args.samples or 3, args.degree or 6, 0.3 if args.k is None else args.k)
        jobs = [(m, p) for m in maps for p in ps]
        out = H.parallel_map(lambda mp: H.green_identity_report(mp[0], mp[1], spec), jobs)
        return out + H.green_representation_reports(spec)
    if cmd == "theorem1":
        return H.parallel_map(lambda m: H.check_theorem1_plane(m, args.p, spec), _planar_maps(args))
    if cmd == "theorem1-ball":
        if args.map:
            m = load_map(args.map)
            if not isinstance(m, LinearBallMap):
                raise MapFileError("theorem1-ball needs a ball-linear map")
        else:
            m = identity_map(args.n or 3)
        return [H.check_theorem1_ball(m, args.p, spec)]
    if cmd == "theorem2":
        pairs = H.parallel_map(lambda m: H.check_theorem2(m, args.p, spec), _planar_maps(args, positive=True))
        return [r for pair in pairs for r in pair]
    if cmd == "sharpness":
        k = 0.0 if args.k is None else args.k
        return [H.sharpness_report(args.p, k, args.beta_frac, args.degree or 32, spec)]
    if cmd == "equality":
        return [H.equality_case_identity(args.n or 3, spec)]
    if cmd == "suite":
        return H.run_suite(args.seed, args.samples or 200, spec)
    raise UsageError(f"unknown subcommand {cmd!r}")


CSV_FIELDS = ("theorem_id", "status", "pass", "lhs", "rhs", "constant", "ratio", "p", "K", "k", "n", "notes")


def _write_csv(path, result):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if isinstance(result, dict):
            w.writerow(list(result))
            w.writerow([repr(v) for v in result.values()])
            return
        w.writerow(CSV_FIELDS)
        for r in result:
            d = r.to_dict()
            w.writerow([d["theorem_id"], d["status"], d["pass"], repr(d["lhs"]), repr(d["rhs"]),
                        repr(d["constant"]), repr(d["ratio"]), *(d["params"].get(x, "") for x in "pKkn"),
                        d["notes"]])


def run(args, stdout=None):
    """Execute a parsed command; returns the exit code."""
    stdout = stdout or sys.stdout
    try:
        result = _execute(args)
    except MapFileError as e:
        print(f"qrlab: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"qrlab: {e}", file=sys.stderr)
        return 3
    except QrlabError as e:
        print(f"qrlab: {e}", file=sys.stderr)
        return 1
    if isinstance(result, dict):
        payload, code = result, 0
    else:
        payload = [r.to_dict() for r in result]
        if len(payload) == 1:
            payload = payload[0]
        code = 1 if any(r.status == H.FAIL for r in result) else 0
    try:
        stdout.write(json.dumps(payload, indent=2, allow_nan=False) + "\n")
        if args.csv:
            _write_csv(args.csv, result)
    except OSError as e:
        print(f"qrlab: {e}", file=sys.stderr)
        return 3
    return code


def main(argv=None):
    args = parse_args(sys.argv[1:] if argv is None else argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Exit codes: 0 success, 1 input error (bad flags, malformed files), 2 semantic
failure (non-membership, inconsistent dims, rejected triples, failed
verification), 3 internal invariant violation (a cross-check that should
never fail did). Output JSON is canonical: sorted keys, rational strings.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from conelab import degrees as degrees_mod
from conelab import doubling, rank3, serialize
from conelab.core import ldl_decompose, verify_v_conditions
from conelab.errors import (
    ClosureViolationError,
    InconsistentDimsError,
    NotInSpaceError,
    SerializationError,
    StructureError,
)
from conelab.sampling import RationalSampler

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEMANTIC = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    options: dict

    def sampler(self):
        return RationalSampler(
            seed=self.options.get("seed", 0),
            max_numerator=self.options.get("max_numerator", 100),
            max_denominator=self.options.get("max_denominator", 10),
        )


class CommandFailure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2; flag mistakes are input errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(obj, out=None):
    if out:
        serialize.dump_file(out, obj)
    else:
        sys.stdout.write(serialize.dumps_canonical(obj))


def _load(path, reader, what):
    data = serialize.load_file(path)
    try:
        return reader(data)
    except StructureError as exc:
        raise SerializationError("%s: bad %s: %s" % (path, what, exc)) from exc


def _load_realization(path):
    return _load(path, serialize.realization_from_dict, "realization")


def _load_family(path):
    return _load(path, serialize.family_from_dict, "family")


def _extremal_dims(r):
    return degrees_mod.DimTable(
        r, {(k, j): 2 ** (k - j) for k in range(2, r + 1) for j in range(1, k)}
    )


def cmd_sigma(cfg):
    if cfg.options.get("family_dims") is not None:
        r = cfg.options["family_dims"]
        if r < 1:
            raise SerializationError("--family-dims needs a positive rank")
        table = _extremal_dims(r)
    else:
        table = _load(cfg.options["dims"], serialize.dims_from_dict, "dims")
    sigma = degrees_mod.sigma_from_dims(table)
    _emit(serialize.sigma_to_dict(sigma))
    return EXIT_OK


def cmd_theorem(cfg):
    r = cfg.options["rank"]
    if r < 1:
        raise SerializationError("--rank needs a positive integer")
    V = doubling.iterate_construction(r)
    report = verify_v_conditions(V)
    if not report.passed:
        raise CommandFailure(EXIT_INTERNAL, "constructed realization fails (V1)-(V3)")
    table = V.dims_table()
    if table != _extremal_dims(r):
        raise CommandFailure(EXIT_INTERNAL, "dimension table is not d_kj = 2^(k-j)")
    if V.partition.total != 2**r - 1:
        raise CommandFailure(EXIT_INTERNAL, "total size is not 2^r - 1")
    sigma = degrees_mod.sigma_from_dims(table)
    degs = degrees_mod.degrees_from_sigma(sigma)
    if degs[-1] != 2 ** (r - 1):
        raise CommandFailure(EXIT_INTERNAL, "last degree is not 2^(r-1)")
    _emit(
        {
            "N": V.partition.total,
            "dims": serialize.dims_to_dict(table)["dims"],
            "sigma": [list(row) for row in sigma.rows],
            "degrees": list(degs),
            "verified": True,
        }
    )
    return EXIT_OK


def cmd_double(cfg):
    V = _load_realization(cfg.options["infile"])
    _emit(serialize.realization_to_dict(doubling.double(V)), cfg.options.get("out"))
    return EXIT_OK


def cmd_iterate(cfg):
    r = cfg.options["rank"]
    if r < 1:
        raise SerializationError("--rank needs a positive integer")
    V = doubling.iterate_construction(r)
    _emit(serialize.realization_to_dict(V), cfg.options.get("out"))
    return EXIT_OK


def cmd_member(cfg):
    V = _load_realization(cfg.options["cone"])
    point = _load(
        cfg.options["point"], lambda d: serialize.element_from_dict(d, V), "point"
    )
    result = ldl_decompose(point, V)
    _emit(serialize.ldl_to_dict(result, approx=cfg.options.get("approx", False)))
    return EXIT_OK if result.is_member else EXIT_SEMANTIC


def cmd_verify(cfg):
    V = _load_realization(cfg.options["infile"])
    report = verify_v_conditions(V)
    _emit(serialize.verification_report_to_dict(report))
    return EXIT_OK if report.passed else EXIT_SEMANTIC


def cmd_rank3_family(cfg):
    F = rank3.composition_family(cfg.options["r"], cfg.options["n"])
    _emit(serialize.family_to_dict(F), cfg.options.get("out"))
    return EXIT_OK


def cmd_rank3_verify(cfg):
    F = _load_family(cfg.options["family"])
    comp = rank3.verify_composition(F)
    out = {
        "composition": {
            "passed": comp.passed,
            "pair": list(comp.pair) if comp.pair else None,
        }
    }
    ok = comp.passed
    if comp.passed:
        lr = rank3.consistency_LR(F)
        out["lr"] = {
            "passed": lr.passed,
            "mismatch": list(lr.mismatch) if lr.mismatch else None,
        }
        ok = lr.passed
    _emit(out)
    return EXIT_OK if ok else EXIT_SEMANTIC


def cmd_rank3_build(cfg):
    F = _load_family(cfg.options["family"])
    build = rank3.build_rank3_dual if cfg.options.get("dual") else rank3.build_rank3_cone
    _emit(serialize.realization_to_dict(build(F)), cfg.options.get("out"))
    return EXIT_OK


def cmd_rank3_classify(cfg):
    r, s, n = cfg.options["triple"]
    if min(r, s, n) < 0:
        # negative sizes are malformed input, not a refused classification
        raise SerializationError("--triple entries must be nonnegative")
    result = rank3.classify_degrees(r, s, n)
    _emit(serialize.classification_to_dict(result))
    return EXIT_OK


def cmd_rank3_det(cfg):
    F = _load_family(cfg.options["family"])
    if cfg.options.get("dual"):
        point = _load(
            cfg.options["point"], lambda d: serialize.dual_point_from_dict(d, F), "point"
        )
        value = rank3.det_rank3_dual_closed(point, F)
        matrix = rank3.embed_rank3_dual(point, F)
    else:
        point = _load(
            cfg.options["point"], lambda d: serialize.point_from_dict(d, F), "point"
        )
        value = rank3.det_rank3_closed(point, F)
        matrix = rank3.embed_rank3(point, F)
    from conelab.linalg import det_exact

    oracle = det_exact(matrix)
    if value != oracle:
        raise CommandFailure(
            EXIT_INTERNAL,
            "closed form %s disagrees with elimination oracle %s"
            % (serialize.rational_to_str(value), serialize.rational_to_str(oracle)),
        )
    out = {"det": serialize.rational_to_str(value)}
    if cfg.options.get("approx"):
        out["det_approx"] = float(Fraction(value))
    _emit(out)
    return EXIT_OK


def cmd_rank3_duality(cfg):
    F = _load_family(cfg.options["family"])
    sampler = cfg.sampler()
    count = cfg.options.get("samples", 10)
    V = rank3.build_rank3_cone(F)
    Vd = rank3.build_rank3_dual(F)
    for _ in range(count):
        X = sampler.interior_rank3(F, V)
        Xi = sampler.interior_rank3_dual(F, Vd)
        check = rank3.coupling_decomposition_check(X, Xi, F)
        if not check.passed:
            raise CommandFailure(
                EXIT_INTERNAL, "coupling decomposition identity failed"
            )
        if check.lhs <= 0:
            raise CommandFailure(
                EXIT_INTERNAL, "coupling not positive on interior pair"
            )
    _emit({"samples": count, "seed": cfg.options.get("seed", 0), "passed": True})
    return EXIT_OK


def _add_sampler_flags(p):
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-numerator", type=int, default=100, dest="max_numerator")
    p.add_argument("--max-denominator", type=int, default=10, dest="max_denominator")


def build_parser():
    parser = _Parser(prog="conelab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="sigma matrix and degrees from a dimension table")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dims", help="dimension table JSON file")
    group.add_argument(
        "--family-dims",
        type=int,
        dest="family_dims",
        help="use the extremal table d_kj = 2^(k-j) at this rank",
    )
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("theorem", help="build, verify and measure the extremal family")
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("double", help="apply the rank-raising step to a realization")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("iterate", help="iterate the construction from the half-line")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("member", help="cone membership by exact block elimination")
    p.add_argument("--cone", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("verify", help="check conditions (V1)-(V3) for a realization")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    r3 = sub.add_parser("rank3", help="rank-3 cones from composition families")
    r3sub = r3.add_subparsers(dest="rank3_command", required=True)

    p = r3sub.add_parser("family", help="generate a Hurwitz-Radon family for (r,n,n)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank3_family)

    p = r3sub.add_parser("verify", help="check composition relations and L/R consistency")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_rank3_verify)

    p = r3sub.add_parser("build", help="emit the realization attached to a family")
    p.add_argument("--family", required=True)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank3_build)

    p = r3sub.add_parser("classify", help="degree triple classification for (r,s,n)")
    p.add_argument("--triple", type=int, nargs=3, required=True, metavar=("R", "S", "N"))
    p.set_defaults(func=cmd_rank3_classify)

    p = r3sub.add_parser("det", help="closed-form determinant with oracle cross-check")
    p.add_argument("--family", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_rank3_det)

    p = r3sub.add_parser("duality", help="sampled coupling decomposition checks")
    p.add_argument("--family", required=True)
    _add_sampler_flags(p)
    p.set_defaults(func=cmd_rank3_duality)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on bad flags (our error() override) and on --help;
        # fold both into the return-code contract so main() always returns.
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    options = {k: v for k, v in vars(args).items() if k != "func"}
    cfg = RunConfig(command=options.pop("command"), options=options)
    try:
        return args.func(cfg)
    except SerializationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except InconsistentDimsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_SEMANTIC
    except NotInSpaceError as exc:
        block = getattr(exc, "block", None)
        where = " (block %s)" % (block,) if block else ""
        print("error: %s%s" % (exc, where), file=sys.stderr)
        return EXIT_SEMANTIC
    except StructureError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_SEMANTIC
    except ClosureViolationError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    except CommandFailure as exc:
        print("invariant violated: %s" % exc, file=sys.stderr)
        return exc.code
    except RuntimeError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line interface.

All inputs are JSON documents (a path or ``-`` for stdin); all outputs go to
stdout with floats rendered as ``%.15g`` so identical invocations are
byte-identical.  Exit codes: 0 success, 2 domain/validation error, 3
numerical breakdown; ``verify`` exits 1 when a check fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .domain import (
    EPoint,
    HPoint,
    cayley_to_disc,
    cayley_to_halfspace,
    e_contains,
    h_contains,
    random_hpoint,
)
from .errors import NotSymplectic, NumericalError, ValidationError
from .geometry import connect, distance, distance_params, volume_density
from .group import (
    MotionMatrix,
    Sl2Matrix,
    StabilizerParams,
    apply,
    assemble,
    classify,
    random_motion,
    reduce_pair,
    split,
    stabilizer_of_center,
    stabilizer_of_iI,
)
from .numkit import Mat4R
from .verify import run_suite

__all__ = ["main"]


def _fmt_float(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0 for byte-stable output
    return "%.15g" % x


def _to_json_text(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_to_json_text(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_to_json_text(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(obj) -> None:
    sys.stdout.write(_to_json_text(obj) + "\n")


def _read_doc(path: str):
    try:
        if path == "-":
            return json.loads(sys.stdin.read())
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path!r}: {exc}") from exc


def _pair(doc, what: str) -> complex:
    if (
        not isinstance(doc, list)
        or len(doc) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in doc)
    ):
        raise ValidationError(f"{what} must be a [re, im] pair of numbers")
    return complex(float(doc[0]), float(doc[1]))


def _parse_hpoint(doc) -> HPoint:
    if not isinstance(doc, dict) or "tau" not in doc or "z" not in doc:
        raise ValidationError('half-space point JSON needs fields "tau" and "z"')
    return HPoint(_pair(doc["tau"], "tau"), _pair(doc["z"], "z"))


def _parse_epoint(doc) -> EPoint:
    if not isinstance(doc, dict) or "z1" not in doc or "z2" not in doc:
        raise ValidationError('disc point JSON needs fields "z1" and "z2"')
    return EPoint(_pair(doc["z1"], "z1"), _pair(doc["z2"], "z2"))


def _parse_mat4(doc) -> Mat4R:
    if not isinstance(doc, dict) or "m" not in doc:
        raise ValidationError('matrix JSON needs field "m" (4 rows of 4 numbers)')
    rows = doc["m"]
    if not isinstance(rows, list) or len(rows) != 4 or any(
        not isinstance(r, list) or len(r) != 4 for r in rows
    ):
        raise ValidationError('"m" must be 4 rows of 4 numbers')
    try:
        return Mat4R(tuple(tuple(float(x) for x in row) for row in rows))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad matrix entries: {exc}") from exc


def _parse_motion(doc) -> MotionMatrix:
    motion = classify(_parse_mat4(doc))
    if isinstance(doc, dict) and "eps" in doc and int(doc["eps"]) != motion.eps:
        raise ValidationError(
            f"declared eps={doc['eps']} contradicts detected eps={motion.eps}"
        )
    return motion


def _parse_sl2(doc) -> Sl2Matrix:
    if not isinstance(doc, dict) or any(k not in doc for k in "abcd"):
        raise ValidationError('2x2 factor JSON needs fields "a", "b", "c", "d"')
    return Sl2Matrix(float(doc["a"]), float(doc["b"]), float(doc["c"]), float(doc["d"]))


def _parse_unit(text: str, what: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"{what} must look like RE,IM")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ValidationError(f"bad {what}: {exc}") from exc


def _parse_seed(text: str) -> int:
    try:
        seed = int(text, 10)
    except ValueError as exc:
        raise ValidationError(f"seed must be a decimal integer: {text!r}") from exc
    if not 0 <= seed < 2**64:
        raise ValidationError("seed must fit in an unsigned 64-bit integer")
    return seed


# --------------------------------------------------------------------------
# Subcommands


def _cmd_check(args) -> int:
    doc = _read_doc(args.file)
    if args.kind == "point":
        if isinstance(doc, dict) and "tau" in doc and "z" in doc:
            member = h_contains(_pair(doc["tau"], "tau"), _pair(doc["z"], "z"))
            _emit({"model": "halfspace", "member": member})
        elif isinstance(doc, dict) and "z1" in doc and "z2" in doc:
            member = e_contains(_pair(doc["z1"], "z1"), _pair(doc["z2"], "z2"))
            _emit({"model": "disc", "member": member})
        else:
            raise ValidationError("point JSON needs tau/z or z1/z2 fields")
        return 0
    m = _parse_mat4(doc)
    try:
        motion = classify(m)
        _emit({"symplectic": True, "motion": True, "eps": motion.eps})
    except ValidationError as exc:
        symplectic = not isinstance(exc, NotSymplectic)
        _emit({"symplectic": symplectic, "motion": False, "eps": None})
    return 0


def _cmd_act(args) -> int:
    motion = _parse_motion(_read_doc(args.matrix))
    point = _parse_hpoint(_read_doc(args.point))
    _emit(apply(motion, point).to_json_dict())
    return 0


def _cmd_cayley(args) -> int:
    doc = _read_doc(args.point)
    if args.to == "disc":
        _emit(cayley_to_disc(_parse_hpoint(doc)).to_json_dict())
    else:
        _emit(cayley_to_halfspace(_parse_epoint(doc)).to_json_dict())
    return 0


def _cmd_split(args) -> int:
    motion = _parse_motion(_read_doc(args.matrix))
    m1, m2 = split(motion)
    _emit({"m1": m1.to_json_dict(), "m2": m2.to_json_dict(), "eps": motion.eps})
    return 0


def _cmd_assemble(args) -> int:
    m1 = _parse_sl2(_read_doc(args.m1))
    m2 = _parse_sl2(_read_doc(args.m2))
    _emit(assemble(m1, m2, args.eps).to_json_dict())
    return 0


def _cmd_reduce(args) -> int:
    z1 = _parse_hpoint(_read_doc(args.z1))
    z = _parse_hpoint(_read_doc(args.z))
    red = reduce_pair(z1, z)
    _emit(
        {
            "lambda1": red.lambda1,
            "lambda2": red.lambda2,
            "mover": red.mover.to_json_dict(),
        }
    )
    return 0


def _cmd_distance(args) -> int:
    z1 = _parse_hpoint(_read_doc(args.z1))
    z2 = _parse_hpoint(_read_doc(args.z2))
    big_a, big_b = distance_params(z1, z2)
    _emit({"rho": distance(z1, z2), "A": big_a, "B": big_b})
    return 0


def _cmd_geodesic(args) -> int:
    z1 = _parse_hpoint(_read_doc(args.z1))
    z2 = _parse_hpoint(_read_doc(args.z2))
    if args.samples < 2:
        raise ValidationError("--samples must be at least 2")
    spec = connect(z1, z2)
    out = ["s,tau_re,tau_im,z_re,z_im"]
    for k in range(args.samples):
        s = spec.s0 * k / (args.samples - 1)
        p = spec.point(s)
        out.append(
            ",".join(
                _fmt_float(v)
                for v in (s, p.tau.real, p.tau.imag, p.z.real, p.z.imag)
            )
        )
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _cmd_volume(args) -> int:
    point = _parse_hpoint(_read_doc(args.point))
    _emit({"density": volume_density(point)})
    return 0


def _cmd_stabilizer(args) -> int:
    params = StabilizerParams(
        _parse_unit(args.xi1, "--xi1"), _parse_unit(args.xi2, "--xi2"), args.eps
    )
    if args.model == "disc":
        _emit(stabilizer_of_center(params).to_json_dict())
    else:
        _emit(stabilizer_of_iI(params).to_json_dict())
    return 0


def _cmd_random(args) -> int:
    rng = random.Random(_parse_seed(args.seed))
    if args.count < 1:
        raise ValidationError("--count must be positive")
    for _ in range(args.count):
        if args.kind == "point":
            _emit(random_hpoint(rng).to_json_dict())
        else:
            _emit(random_motion(rng).to_json_dict())
    return 0


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise ValidationError("--trials must be positive")
    results = run_suite(_parse_seed(args.seed), args.trials)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        sys.stdout.write(
            f"{r.name:<{width}}  trials={r.trials:<6d} max_residual={r.max_residual:.3e}  "
            f"tol={r.tolerance:.3e}  {status}\n"
        )
    sys.stdout.write(f"{len(results) - failures}/{len(results)} checks passed\n")
    return 0 if failures == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisiegel",
        description="Geometry of the bi-symmetric Siegel upper half space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="membership report for a point or matrix")
    p.add_argument("kind", choices=("point", "matrix"))
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("act", help="apply a motion to a half-space point")
    p.add_argument("--matrix", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("cayley", help="map between the half-space and disc models")
    p.add_argument("--to", choices=("disc", "halfspace"), required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_cayley)

    p = sub.add_parser("split", help="factor a motion into two unimodular 2x2 matrices")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("assemble", help="glue two unimodular factors into a motion")
    p.add_argument("--m1", required=True)
    p.add_argument("--m2", required=True)
    p.add_argument("--eps", type=int, choices=(1, -1), required=True)
    p.set_defaults(func=_cmd_assemble)

    p = sub.add_parser("reduce", help="canonical form of an ordered point pair")
    p.add_argument("--z1", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("distance", help="invariant distance between two points")
    p.add_argument("--z1", required=True)
    p.add_argument("--z2", required=True)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("geodesic", help="sample the geodesic segment as CSV")
    p.add_argument("--z1", required=True)
    p.add_argument("--z2", required=True)
    p.add_argument("--samples", type=int, default=101)
    p.set_defaults(func=_cmd_geodesic)

    p = sub.add_parser("volume", help="invariant volume density at a point")
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("stabilizer", help="motion fixing the base point")
    p.add_argument("--xi1", required=True, help="unit complex number as RE,IM")
    p.add_argument("--xi2", required=True, help="unit complex number as RE,IM")
    p.add_argument("--eps", type=int, choices=(1, -1), default=1)
    p.add_argument("--model", choices=("disc", "halfspace"), default="halfspace")
    p.set_defaults(func=_cmd_stabilizer)

    p = sub.add_parser("random", help="deterministic seeded samples, one JSON per line")
    p.add_argument("kind", choices=("point", "motion"))
    p.add_argument("--seed", required=True, help="unsigned 64-bit decimal seed")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("verify", help="run the seeded invariant suite")
    p.add_argument("--seed", required=True, help="unsigned 64-bit decimal seed")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: every operation as a subcommand with JSON I/O.

Inline JSON payloads are passed directly in flags; ``@path`` reads the
payload from a file.  Exit status: 0 on success or a passing verdict, 1 on
a failing verdict, 2 on usage or input errors.  The environment variable
STABLAT_MAX_N caps the number of curve factors (default 6).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import acceptance, serialize
from .charges import (
    abcd_functionals,
    charge_functional,
    linear_data_equal,
    phase,
    product_charge,
    quotient_datum,
    standard_datum,
    verify_zbw,
    weak_charge,
)
from .cohomology import (
    ProductSpace,
    ch_line_bundle,
    ch_skyscraper,
    coh_exp,
    coh_mul,
    euler_form,
    integrate,
    pushforward,
)
from .descent import check_equivariance, descend, hilbert_setup
from .errors import ParseError, StablatError
from .gaussian import format_rational, parse_rational
from .lattice import (
    image_lattice_of_charge,
    image_lattice_of_v,
    invariant_sublattice,
    lattice_for,
    quotient_by_kernel,
    v_map,
    v_recursive,
)
from .serialize import value_to_json
from .support import check_support, glue_check, kernel_basis, support_constant
from .support import is_negative_definite_on

DEFAULT_MAX_N = 6


def _max_n() -> int:
    raw = os.environ.get("STABLAT_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"STABLAT_MAX_N must be an integer, got {raw!r}")


def _parse_genera(text: str) -> ProductSpace:
    try:
        genera = [int(g) for g in text.split(",") if g != ""]
    except ValueError:
        raise ParseError(f"bad genera list {text!r}")
    space = ProductSpace(genera)
    if space.n > _max_n():
        raise ParseError(
            f"n={space.n} exceeds STABLAT_MAX_N={_max_n()}"
        )
    return space


def _load_json(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {text[1:]!r}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}")


def _coh_arg(text: str):
    return serialize.coh_from_json(_load_json(text))


def _emit(payload, args) -> None:
    if getattr(args, "float", False):
        payload = _with_float_display(payload)
    json.dump(payload, sys.stdout)
    sys.stdout.write("\n")


def _with_float_display(payload):
    """Attach display-only decimal renderings of rational leaves."""

    def _to_float(s):
        try:
            f = parse_rational(s)
        except ParseError:
            return None
        return float(f)

    def walk(node):
        if isinstance(node, dict):
            out = {}
            for k, v in node.items():
                out[k] = walk(v)
                if isinstance(v, str):
                    f = _to_float(v)
                    if f is not None:
                        out[k + "~"] = f"{f:.15g}"
            return out
        if isinstance(node, list):
            return [walk(v) for v in node]
        return node

    out = walk(payload)
    if isinstance(out, dict):
        out["float_display_note"] = "values suffixed ~ are display only"
    return out


def _vector_coords(text: str, rank=None):
    data = _load_json(text)
    if isinstance(data, list):
        return [parse_rational(str(x)) if not isinstance(x, str) else parse_rational(x) for x in data]
    vec = serialize.vector_from_json(data)
    return list(vec.coords)


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablat",
        description="Exact stability linear data on products of curves.",
    )
    parser.add_argument(
        "--float",
        action="store_true",
        help="add display-only decimal renderings to the output",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p

    p = cmd("space", "construct and describe a product space")
    p.add_argument("--genera", required=True)

    p = cmd("ch", "Chern character: line bundle, skyscraper, or raw class")
    p.add_argument("--genera", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degrees", help="comma-separated multidegree")
    group.add_argument("--skyscraper", action="store_true")
    group.add_argument("--raw", help="raw CohClass JSON (validated, normalized)")

    p = cmd("mul", "ring product of two classes")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = cmd("exp", "exponential of a nilpotent class")
    p.add_argument("--x", required=True)

    p = cmd("integrate", "integral over the product (top coefficient)")
    p.add_argument("--x", required=True)

    p = cmd("push", "pushforward forgetting one curve factor")
    p.add_argument("--x", required=True)
    p.add_argument("--r", required=True, type=int)

    p = cmd("euler", "Euler pairing of two classes")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = cmd("v", "closed-form class map to the lattice")
    p.add_argument("--x", required=True)

    p = cmd("v-rec", "recursive class map (twisted pushforwards)")
    p.add_argument("--x", required=True)
    p.add_argument("--m", type=int, default=0)

    p = cmd("charge", "distinguished charge functional or its value")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--class", dest="klass", choices=["skyscraper", "structure"])
    group.add_argument("--vector", help="lattice vector JSON")
    group.add_argument("--x", help="CohClass JSON (evaluated through the class map)")

    p = cmd("abcd", "the four real split functionals")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--vector", help="evaluate all four on a lattice vector")

    p = cmd("weak-charge", "weak charge built from the split functionals")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--vector")

    p = cmd("product-charge", "product charge built from the split functionals")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--vector")

    p = cmd("zbw-verify", "product charge at (omega, omega, B) vs the direct charge")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)

    p = cmd("phase", "exact ray and branch phase of a charge value")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--class", dest="klass", choices=["skyscraper", "structure"])
    group.add_argument("--vector")

    p = cmd("data-equal", "compare two stability data (composites and phases)")
    p.add_argument("--d1", help="StabilityDatum JSON")
    p.add_argument("--d2", help="StabilityDatum JSON")
    p.add_argument("--genera")
    p.add_argument("--B1")
    p.add_argument("--omega1")
    p.add_argument("--B2")
    p.add_argument("--omega2")
    p.add_argument("--quotient1", action="store_true",
                   help="build datum 1 on the quotient by the charge kernel")
    p.add_argument("--quotient2", action="store_true")

    p = cmd("kernel", "integer kernel basis of a charge functional")
    p.add_argument("--genera")
    p.add_argument("--B")
    p.add_argument("--omega")
    p.add_argument("--charge", help="explicit ChargeFunctional JSON")

    p = cmd("negdef", "negative definiteness of a form on a subspace")
    p.add_argument("--Q", required=True, help="QuadraticForm JSON")
    p.add_argument("--basis", required=True, help="JSON list of vectors")

    p = cmd("support-check", "kernel definiteness plus per-class positivity")
    p.add_argument("--Q", required=True)
    p.add_argument("--genera")
    p.add_argument("--B")
    p.add_argument("--omega")
    p.add_argument("--charge")
    p.add_argument("--classes", required=True, help="JSON list of lattice vectors")

    p = cmd("support-constant", "squared norm-form constant over supplied classes")
    p.add_argument("--genera")
    p.add_argument("--B")
    p.add_argument("--omega")
    p.add_argument("--charge")
    p.add_argument("--classes", required=True)

    p = cmd("glue-check", "kernel-intersection and skyscraper checks for gluing")
    p.add_argument("--genera", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)

    p = cmd("invariants", "saturated invariant sublattice of an integer action")
    p.add_argument("--action", help="IntegerMatrixAction JSON")
    p.add_argument("--hilbert", help="g1,g2,n for the pair-permutation action")
    p.add_argument("--kummer", action="store_true")

    p = cmd("descend", "invariant basis, restricted charge, skyscraper coordinates")
    p.add_argument("--g1", required=True, type=int)
    p.add_argument("--g2", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--kummer", action="store_true")
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)

    p = cmd("equivariance", "class-map equivariance and charge invariance")
    p.add_argument("--g1", required=True, type=int)
    p.add_argument("--g2", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--kummer", action="store_true")
    p.add_argument("--B", default="0")
    p.add_argument("--omega", default="1")
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int, default=7)

    p = cmd("image-v", "canonical basis of the subgroup generated by class images")
    p.add_argument("--classes", required=True, help="JSON list of CohClass objects")

    p = cmd("image-charge", "basis of the image subgroup of a charge in Q(i)")
    p.add_argument("--genera")
    p.add_argument("--B")
    p.add_argument("--omega")
    p.add_argument("--charge")

    p = cmd("verify-all", "run the acceptance suite")
    p.add_argument("--criterion", type=int, help="run a single criterion by number")

    return parser


def _charge_from_args(args, default_space=None):
    """Build a charge from --charge JSON or --genera/--B/--omega flags."""
    if getattr(args, "charge", None):
        return serialize.charge_from_json(_load_json(args.charge)), None
    if args.genera is None or args.B is None or args.omega is None:
        raise ParseError("need either --charge or all of --genera/--B/--omega")
    space = _parse_genera(args.genera)
    return charge_functional(space, _rational(args.B), _rational(args.omega)), space


def _standard_vector(space, name):
    if name == "skyscraper":
        return v_map(ch_skyscraper(space))
    return v_map(ch_line_bundle(space, [0] * space.n))


def _run(args) -> int:
    command = args.command
    if command == "space":
        space = _parse_genera(args.genera)
        _emit(
            {
                "n": space.n,
                "genera": list(space.genera),
                "all_positive_genus": space.all_positive_genus,
            },
            args,
        )
        return 0

    if command == "ch":
        space = _parse_genera(args.genera)
        if args.skyscraper:
            x = ch_skyscraper(space)
        elif args.degrees is not None:
            degrees = [int(d) for d in args.degrees.split(",")]
            x = ch_line_bundle(space, degrees)
        else:
            x = serialize.coh_from_json(_load_json(args.raw))
            if x.space != space:
                raise ParseError("--raw genera disagree with --genera")
        _emit(serialize.coh_to_json(x), args)
        return 0

    if command == "mul":
        x = _coh_arg(args.x)
        y = _coh_arg(args.y)
        _emit(serialize.coh_to_json(coh_mul(x, y)), args)
        return 0

    if command == "exp":
        _emit(serialize.coh_to_json(coh_exp(_coh_arg(args.x))), args)
        return 0

    if command == "integrate":
        _emit(value_to_json(integrate(_coh_arg(args.x))), args)
        return 0

    if command == "push":
        _emit(serialize.coh_to_json(pushforward(_coh_arg(args.x), args.r)), args)
        return 0

    if command == "euler":
        _emit(value_to_json(euler_form(_coh_arg(args.x), _coh_arg(args.y))), args)
        return 0

    if command == "v":
        _emit(serialize.vector_to_json(v_map(_coh_arg(args.x))), args)
        return 0

    if command == "v-rec":
        _emit(serialize.vector_to_json(v_recursive(_coh_arg(args.x), args.m)), args)
        return 0

    if command == "charge":
        space = _parse_genera(args.genera)
        z = charge_functional(space, _rational(args.B), _rational(args.omega))
        if args.klass:
            _emit(value_to_json(z(_standard_vector(space, args.klass))), args)
        elif args.vector:
            _emit(value_to_json(z(_vector_coords(args.vector))), args)
        elif getattr(args, "x", None):
            _emit(value_to_json(z(v_map(_coh_arg(args.x)))), args)
        else:
            _emit(serialize.charge_to_json(z), args)
        return 0

    if command == "abcd":
        space = _parse_genera(args.genera)
        a, b, c, d = abcd_functionals(space, _rational(args.B), _rational(args.omega))
        if args.vector:
            coords = _vector_coords(args.vector)
            _emit(
                {
                    "a": format_rational(a(coords).re),
                    "b": format_rational(b(coords).re),
                    "c": format_rational(c(coords).re),
                    "d": format_rational(d(coords).re),
                },
                args,
            )
        else:
            _emit(
                {
                    name: serialize.charge_to_json(f)
                    for name, f in zip("abcd", (a, b, c, d))
                },
                args,
            )
        return 0

    if command in ("weak-charge", "product-charge"):
        space = _parse_genera(args.genera)
        a, b, c, d = abcd_functionals(space, _rational(args.B), _rational(args.omega))
        if command == "weak-charge":
            z = weak_charge(a, b, c, d, _rational(args.t), _rational(args.beta))
        else:
            z = product_charge(
                a, b, c, d, _rational(args.s), _rational(args.t), _rational(args.beta)
            )
        if args.vector:
            _emit(value_to_json(z(_vector_coords(args.vector))), args)
        else:
            _emit(serialize.charge_to_json(z), args)
        return 0

    if command == "zbw-verify":
        space = _parse_genera(args.genera)
        report = verify_zbw(space, _rational(args.B), _rational(args.omega))
        payload = {"equal": report["equal"]}
        if not report["equal"]:
            payload["subset"] = report["subset"]
            payload["product_value"] = value_to_json(report["product_value"])
            payload["direct_value"] = value_to_json(report["direct_value"])
        _emit(payload, args)
        return 0 if report["equal"] else 1

    if command == "phase":
        space = _parse_genera(args.genera)
        z = charge_functional(space, _rational(args.B), _rational(args.omega))
        if args.klass:
            coords = _standard_vector(space, args.klass)
        else:
            coords = _vector_coords(args.vector)
        descriptor = phase(z, coords)
        _emit(
            {
                "ray": list(descriptor.ray),
                "phi": format_rational(descriptor.phi)
                if descriptor.phi is not None
                else None,
                "phi_approx_display_only": f"{descriptor.phi_approx:.15g}",
            },
            args,
        )
        return 0

    if command == "data-equal":
        if args.d1 and args.d2:
            d1 = serialize.datum_from_json(_load_json(args.d1))
            d2 = serialize.datum_from_json(_load_json(args.d2))
        else:
            if not (args.genera and args.B1 and args.omega1 and args.B2 and args.omega2):
                raise ParseError(
                    "need --d1/--d2 or --genera with --B1/--omega1/--B2/--omega2"
                )
            space = _parse_genera(args.genera)
            make1 = quotient_datum if args.quotient1 else standard_datum
            make2 = quotient_datum if args.quotient2 else standard_datum
            d1 = make1(space, _rational(args.B1), _rational(args.omega1))
            d2 = make2(space, _rational(args.B2), _rational(args.omega2))
        report = linear_data_equal(d1, d2)
        payload = {
            "composites_equal": report["composites_equal"],
            "skyscraper_phases_equal": report["skyscraper_phases_equal"],
            "equal": report["equal"],
            "scope": report["scope"],
        }
        if report["witness"]:
            payload["witness"] = {
                "subset": report["witness"]["subset"],
                "value1": value_to_json(report["witness"]["value1"]),
                "value2": value_to_json(report["witness"]["value2"]),
            }
        _emit(payload, args)
        return 0 if report["equal"] else 1

    if command == "kernel":
        z, _ = _charge_from_args(args)
        _emit({"basis": kernel_basis(z)}, args)
        return 0

    if command == "negdef":
        form = serialize.form_from_json(_load_json(args.Q))
        basis_raw = _load_json(args.basis)
        basis = [[parse_rational(str(x)) if not isinstance(x, str) else parse_rational(x) for x in row] for row in basis_raw]
        verdict = is_negative_definite_on(form, basis)
        _emit({"negative_definite": verdict}, args)
        return 0 if verdict else 1

    if command == "support-check":
        form = serialize.form_from_json(_load_json(args.Q))
        z, _ = _charge_from_args(args)
        classes = [
            [parse_rational(str(x)) if not isinstance(x, str) else parse_rational(x) for x in row]
            for row in _load_json(args.classes)
        ]
        report = check_support(form, z, classes)
        payload = {
            "kernel_rank": report["kernel_rank"],
            "kernel_basis": report["kernel_basis"],
            "negative_definite_on_kernel": report["negative_definite_on_kernel"],
            "classes": [
                {
                    "coords": [format_rational(c) for c in item["coords"]],
                    "value": format_rational(item["value"]),
                    "nonnegative": item["nonnegative"],
                }
                for item in report["classes"]
            ],
            "pass": report["pass"],
        }
        _emit(payload, args)
        return 0 if report["pass"] else 1

    if command == "support-constant":
        z, _ = _charge_from_args(args)
        classes = [
            [parse_rational(str(x)) if not isinstance(x, str) else parse_rational(x) for x in row]
            for row in _load_json(args.classes)
        ]
        value = support_constant(z, classes)
        _emit({"c_squared": format_rational(value)}, args)
        return 0

    if command == "glue-check":
        space = _parse_genera(args.genera)
        report = glue_check(space, _rational(args.B), _rational(args.omega))
        _emit(report, args)
        return 0 if report["pass"] else 1

    if command == "invariants":
        if args.hilbert:
            parts = [int(x) for x in args.hilbert.split(",")]
            if len(parts) != 3:
                raise ParseError("--hilbert expects g1,g2,n")
            setup = hilbert_setup(parts[0], parts[1], parts[2], kummer=args.kummer)
            if 2 * parts[2] > _max_n():
                raise ParseError(f"2n={2*parts[2]} exceeds STABLAT_MAX_N={_max_n()}")
            action = setup.action
        elif args.action:
            action = serialize.action_from_json(_load_json(args.action))
        else:
            raise ParseError("need --action or --hilbert")
        basis = invariant_sublattice(action)
        _emit({"rank": len(basis), "basis": [[int(x) for x in v] for v in basis]}, args)
        return 0

    if command == "descend":
        if 2 * args.n > _max_n():
            raise ParseError(f"2n={2*args.n} exceeds STABLAT_MAX_N={_max_n()}")
        setup = hilbert_setup(args.g1, args.g2, args.n, kummer=args.kummer)
        result = descend(setup, _rational(args.B), _rational(args.omega))
        _emit(serialize.descent_to_json(result), args)
        return 0

    if command == "equivariance":
        if 2 * args.n > _max_n():
            raise ParseError(f"2n={2*args.n} exceeds STABLAT_MAX_N={_max_n()}")
        setup = hilbert_setup(args.g1, args.g2, args.n, kummer=args.kummer)
        rng = random.Random(args.seed)
        classes = [
            ch_line_bundle(
                setup.space,
                [rng.randint(-4, 4) for _ in range(setup.space.n)],
            )
            for _ in range(args.samples)
        ]
        report = check_equivariance(
            setup, classes, _rational(args.B), _rational(args.omega)
        )
        _emit(report, args)
        return 0 if report["equivariant"] else 1

    if command == "image-v":
        classes = [serialize.coh_from_json(d) for d in _load_json(args.classes)]
        basis = image_lattice_of_v(classes)
        _emit(
            {
                "rank": len(basis),
                "basis": [[format_rational(Fraction(x)) for x in row] for row in basis],
            },
            args,
        )
        return 0

    if command == "image-charge":
        z, space = _charge_from_args(args)
        lattice = lattice_for(space) if space is not None else None
        if lattice is None:
            from .lattice import LatticeDesc

            lattice = LatticeDesc(rank=z.rank)
        rank, basis = image_lattice_of_charge(z, lattice)
        _emit(
            {
                "rank": rank,
                "basis": [
                    [format_rational(a), format_rational(b)] for a, b in basis
                ],
            },
            args,
        )
        return 0

    if command == "verify-all":
        checks = acceptance.run_all(only=args.criterion)
        for name, ok, detail in checks:
            status = "PASS" if ok else "FAIL"
            sys.stderr.write(f"[{status}] {name}: {detail}\n")
        all_ok = all(ok for _, ok, _ in checks)
        _emit(
            {
                "criteria": [
                    {"name": name, "pass": ok, "detail": detail}
                    for name, ok, detail in checks
                ],
                "pass": all_ok,
            },
            args,
        )
        return 0 if all_ok else 1

    raise ParseError(f"unknown command {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _run(args)
    except StablatError as exc:
        json.dump({"error": {"code": exc.code, "message": str(exc)}}, sys.stdout)
        sys.stdout.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

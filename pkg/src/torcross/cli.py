"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 datum validation failure,
3 computation or invariant failure.  Output is deterministic byte for byte
for a fixed seed and version.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .crossed_product import (CrossedProductError, extended_quotient_fiber)
from .datum import (DatumError, DatumFile, format_point, load_datum,
                    load_datum_file, parse_orbit)
from .finite_group import CocycleError, GroupError
from .graded_hecke import (GradedHeckeAlgebra, HeckeError, burnside_irreducible,
                           induced_module_I, is_discrete_series_weights,
                           is_tempered, tau_square_check, weight_orbit, weights)
from .homology import (HomologyError, hecke_hh_dimensions, hh0_specialization,
                       hh_summary, hp_dimensions, ktheory_ranks,
                       trace_pairing_matrix)
from .lattice_torus import TorusError, orbit_of_point
from .oracle import (DecompositionError, OracleError, completeness_certificate,
                     decompose_twisted_group_algebra, finite_quotient_algebra)
from .presets import preset_data, preset_names
from .scalars import ScalarError, format_rat, parse_gauss

USAGE_ERROR, DATUM_ERROR, COMPUTATION_ERROR = 1, 2, 3


def _add_common(p: argparse.ArgumentParser, orbit: bool = False,
                hecke: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--datum", help="path to a datum JSON file")
    src.add_argument("--preset", help="name of a shipped preset")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-group-order", type=int, default=10000)
    if orbit:
        p.add_argument("--orbit", required=True,
                       help='torsion point "p/q,p/q,..."')
    if hecke:
        p.add_argument("--k", default=None,
                       help='override the parameter k ("formal" or a rational)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torcross",
        description="Exact invariants of twisted crossed products over tori "
                    "and graded Hecke algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("validate", help="validate a datum file"))
    _add_common(sub.add_parser("irr", help="irreducibles over one orbit"),
                orbit=True)
    _add_common(sub.add_parser("hh", help="Hochschild homology summary"))
    _add_common(sub.add_parser("hh0", help="HH0 specialization at an orbit"),
                orbit=True)
    _add_common(sub.add_parser("hp", help="periodic cyclic dimensions"))
    _add_common(sub.add_parser("k", help="rational K-theory ranks"))
    _add_common(sub.add_parser("pairing", help="trace pairing matrix"),
                orbit=True)

    hecke = sub.add_parser("hecke", help="graded Hecke algebra commands")
    hsub = hecke.add_subparsers(dest="hecke_command", required=True)
    classify = hsub.add_parser("classify", help="classify I(lambda)")
    _add_common(classify, hecke=True)
    classify.add_argument("--lambda", dest="lam", required=True,
                          help='weight "a+bi,..." with rational a, b')
    tau = hsub.add_parser("tau-check", help="verify tau_s^2 = 1")
    _add_common(tau, hecke=True)

    oracle = sub.add_parser("oracle", help="independent verification")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    _add_common(osub.add_parser("verify", help="certify one orbit fiber"),
                orbit=True)

    preset = sub.add_parser("preset", help="preset utilities")
    psub = preset.add_subparsers(dest="preset_command", required=True)
    psub.add_parser("list", help="list shipped presets")
    return parser


def _resolve_datum(args) -> DatumFile:
    k_override = getattr(args, "k", None)
    if args.preset:
        return load_datum(preset_data(args.preset),
                          max_group_order=args.max_group_order,
                          k_override=k_override)
    if args.datum:
        return load_datum_file(args.datum,
                               max_group_order=args.max_group_order,
                               k_override=k_override)
    raise DatumError("one of --datum or --preset is required")


def _render_table(obj, indent: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and not _is_flat(val):
                lines.append(f"{indent}{key}:")
                lines.extend(_render_table(val, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_flat(val)}")
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            if isinstance(val, (dict, list)) and not _is_flat(val):
                lines.append(f"{indent}- [{i}]")
                lines.extend(_render_table(val, indent + "  "))
            else:
                lines.append(f"{indent}- {_flat(val)}")
    else:
        lines.append(f"{indent}{_flat(obj)}")
    return lines


def _is_flat(val) -> bool:
    if isinstance(val, list):
        return all(not isinstance(x, (dict, list)) for x in val)
    return not isinstance(val, (dict, list))


def _flat(val) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(str(x) for x in val) + "]"
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "table":
        sys.stdout.write("\n".join(_render_table(obj)) + "\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------------------
# command implementations

def _cmd_validate(args) -> dict:
    df = _resolve_datum(args)
    return {
        "valid": True,
        "rank": df.rank,
        "group_order": df.group.order,
        "conjugacy_classes": len(df.group.conjugacy_classes),
        "regular_classes": df.cocycle.irr_count,
        "cocycle_conductor": df.cocycle.conductor,
        "variant": df.variant,
        "has_hecke_section": df.hecke is not None,
    }


def _cmd_irr(args) -> dict:
    df = _resolve_datum(args)
    point = parse_orbit(args.orbit)
    datum = df.bernstein()
    fiber = extended_quotient_fiber(datum.crossed_algebra(point), point,
                                    seed=args.seed)
    return {
        "orbit": [format_point(p) for p in fiber.orbit],
        "orbit_size": len(fiber.orbit),
        "stabilizer_order": fiber.stabilizer_order,
        "label_count": fiber.label_count,
        "labels": [{"dim_rho": l.rho_dimension,
                    "dim_induced": l.induced_dimension}
                   for l in fiber.labels],
        "sum_of_squares": sum(l.induced_dimension ** 2 for l in fiber.labels),
    }


def _summary_json(summary) -> dict:
    return {
        "variant": summary.variant,
        "rank": summary.rank,
        "classes": [{
            "representative": c.representative,
            "class_size": c.class_size,
            "centralizer_size": c.centralizer_size,
            "fixed_set_empty": c.fixed_empty,
            "fixed_dimension": c.fixed_dimension,
            "component_count": c.component_count,
            "component_reps": [format_point(p) for p in c.component_reps],
            "component_orbits": c.component_orbits,
            "regular": c.regular,
            "free_ranks": c.free_ranks,
            "invariant_dims": c.inv_dims,
        } for c in summary.classes],
        "total_invariant_dims": summary.total_inv_dims(),
    }


def _cmd_hh(args) -> dict:
    df = _resolve_datum(args)
    return _summary_json(hh_summary(df.bernstein()))


def _cmd_hh0(args) -> dict:
    df = _resolve_datum(args)
    point = parse_orbit(args.orbit)
    datum = df.bernstein()
    dim = hh0_specialization(datum, point)
    orbit, stab = orbit_of_point(df.group, point)
    return {"dimension": dim, "orbit_size": len(orbit),
            "stabilizer_order": len(stab)}


def _cmd_hp(args) -> dict:
    df = _resolve_datum(args)
    report = hp_dimensions(df.bernstein())
    return {"HP0": report.hp0, "HP1": report.hp1,
            "per_class": [list(t) for t in report.per_class]}


def _cmd_k(args) -> dict:
    df = _resolve_datum(args)
    report = ktheory_ranks(df.bernstein())
    return {"K0_rank": report.hp0, "K1_rank": report.hp1,
            "per_class": [list(t) for t in report.per_class]}


def _cmd_pairing(args) -> dict:
    df = _resolve_datum(args)
    point = parse_orbit(args.orbit)
    matrix, det = trace_pairing_matrix(df.bernstein(), point)
    return {"size": len(matrix),
            "matrix": [[str(x) for x in row] for row in matrix],
            "determinant": str(det),
            "invertible": True}


def _cmd_hecke_classify(args) -> dict:
    df = _resolve_datum(args)
    alg = df.hecke_algebra()
    lam = tuple(parse_gauss(part) for part in args.lam.split(","))
    if len(lam) != alg.d:
        raise DatumError(f"lambda needs {alg.d} coordinates")
    module = induced_module_I(alg, lam)
    report = weights(module, weight_orbit(alg, lam))
    return {
        "dimension": module.dimension,
        "weights": [{"weight": [str(v) for v in w], "multiplicity": m}
                    for w, m in zip(report.weights, report.multiplicities)],
        "tempered": is_tempered(module, report),
        "discrete_series_weights": is_discrete_series_weights(module, report),
        "irreducible": burnside_irreducible(module),
    }


def _cmd_hecke_tau(args) -> dict:
    df = _resolve_datum(args)
    alg = df.hecke_algebra()
    checks = []
    for i in range(len(alg.datum.simple_roots)):
        checks.append({"simple_root": i,
                       "tau_squared_is_one": tau_square_check(alg, i)})
    ok = all(c["tau_squared_is_one"] for c in checks)
    if not ok:
        raise HomologyError("tau square check failed")  # pragma: no cover
    return {"checks": checks, "all_ok": ok,
            "k": "formal" if alg.formal_k else
                 [format_rat(v) for v in alg.datum.k_values]}


def _cmd_oracle_verify(args) -> dict:
    df = _resolve_datum(args)
    point = parse_orbit(args.orbit)
    datum = df.bernstein()
    alg = datum.crossed_algebra(point)
    fiber = extended_quotient_fiber(alg, point, seed=args.seed)
    quotient = finite_quotient_algebra(df.group, df.cocycle, fiber.orbit,
                                       conductor=alg.conductor, seed=args.seed)
    images = [m.quotient_basis_images(quotient) for m in fiber.modules]
    report = completeness_certificate(quotient, images)
    out = {
        "ok": report.ok,
        "failures": report.failures,
        "algebra_dimension": quotient.dimension,
        "center_dimension": quotient.center_dimension(),
        "module_dimensions": [m.dimension for m in fiber.modules],
        "sum_of_squares": sum(m.dimension ** 2 for m in fiber.modules),
        "associativity": quotient.associativity_mode,
    }
    if not report.ok:
        raise OracleError(json.dumps(out, sort_keys=True))
    return out


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else USAGE_ERROR
    try:
        if args.command == "validate":
            out = _cmd_validate(args)
        elif args.command == "irr":
            out = _cmd_irr(args)
        elif args.command == "hh":
            out = _cmd_hh(args)
        elif args.command == "hh0":
            out = _cmd_hh0(args)
        elif args.command == "hp":
            out = _cmd_hp(args)
        elif args.command == "k":
            out = _cmd_k(args)
        elif args.command == "pairing":
            out = _cmd_pairing(args)
        elif args.command == "hecke":
            out = (_cmd_hecke_classify(args) if args.hecke_command == "classify"
                   else _cmd_hecke_tau(args))
        elif args.command == "oracle":
            out = _cmd_oracle_verify(args)
        elif args.command == "preset":
            out = {"presets": preset_names()}
        else:  # pragma: no cover
            return USAGE_ERROR
    except (DatumError, CocycleError, GroupError, KeyError) as exc:
        sys.stderr.write(f"datum error: {exc}\n")
        return DATUM_ERROR
    except (OracleError, DecompositionError, CrossedProductError, HeckeError,
            HomologyError, TorusError, ScalarError) as exc:
        sys.stderr.write(f"computation error: {exc}\n")
        return COMPUTATION_ERROR
    _emit(out, args.format if hasattr(args, "format") else "json")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

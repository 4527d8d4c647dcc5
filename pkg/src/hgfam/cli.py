"""Command line front end: ``hgfam <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import HgfamError, ResourceLimitError
from .families import FamilyInstance, make_instance
from .formats import (
    format_matrix_text,
    fraction_str,
    load_matrix,
    matrix_to_dict,
    parse_int_vector,
    parse_rational_vector,
)
from .lattice import lattice_index
from .polytope import ConfigPolytope, normalized_volume, volume_dfact
from .semigroup import GradedSemigroup
from .system import assemble_system, predicted_stats, render_system
from .toric import toric_generators
from .verify import ratio_table, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
VARIANT_CHOICES = ["plain2", "plain3", "product", "hat", "hat-h"]


def instance_document(inst: FamilyInstance) -> dict:
    """Sidecar document describing how an instance was built."""
    st = predicted_stats(inst)
    return {
        "variant": inst.variant,
        "d": inst.d,
        "r": inst.r,
        "s": inst.s,
        "matrix": matrix_to_dict(inst.matrix),
        "parameter": [fraction_str(b) for b in inst.parameter],
        "beta0": None if inst.beta0 is None else fraction_str(inst.beta0),
        "blocks": list(inst.blocks),
        "added_columns": [
            {"index": g.index, "vector": list(g.vector),
             "sum_of": list(g.sum_of), "midpoint_of": list(g.midpoint_of)}
            for g in inst.added_columns
        ],
        "predicted": {
            "volume": st.volume,
            "rank": st.rank,
            "rank_is_lower_bound": st.rank_is_lower_bound,
            "jump": st.jump,
            "laurent_dim": st.laurent_dim,
            "sst_bound": st.sst_bound,
            "provenance": st.provenance,
        },
    }


def _instance(args) -> FamilyInstance:
    if args.variant in ("plain2", "plain3"):
        return make_instance(args.variant)
    if args.d is None:
        raise ValueError(f"--d is required for variant {args.variant}")
    return make_instance(args.variant, args.d, args.beta0)


def _matrix_and_beta(args, need_beta=False):
    if args.matrix:
        A = load_matrix(args.matrix)
        beta = None
        if args.beta:
            beta = parse_rational_vector(args.beta)
        elif need_beta:
            raise ValueError("--beta is required with --matrix")
        return A, beta
    inst = _instance(args)
    beta = parse_rational_vector(args.beta) if args.beta else inst.parameter
    return inst.matrix, beta


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    inst = _instance(args)
    if args.format == "json":
        _emit(json.dumps(instance_document(inst), indent=2) + "\n", args.out)
        return EXIT_OK
    _emit(format_matrix_text(inst.matrix), args.out)
    if args.out:
        sidecar = Path(args.out).with_suffix(".json")
        sidecar.write_text(json.dumps(instance_document(inst), indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _instance(args)
    report = verify(inst, args.depth, toric_max_d=args.toric_max_d)
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(report.to_text(), args.out)
    if not report.passed:
        return EXIT_FAIL
    return EXIT_LIMIT if report.resource_limited else EXIT_OK


def cmd_volume(args) -> int:
    A, _ = _matrix_and_beta(args)
    vol = normalized_volume(A)
    vd = volume_dfact(ConfigPolytope.from_matrix(A))
    idx = lattice_index(A)
    if args.format == "json":
        _emit(json.dumps({"volume": vol, "volume_dfact": vd, "lattice_index": idx}) + "\n", args.out)
    else:
        _emit(f"normalized volume: {vol}\nd! vol: {vd}\nlattice index: {idx}\n", args.out)
    return EXIT_OK


def cmd_toric(args) -> int:
    A, _ = _matrix_and_beta(args)
    G = toric_generators(A)
    if args.format == "json":
        _emit(json.dumps([g.render() for g in G], indent=2) + "\n", args.out)
    else:
        _emit("".join(g.render() + "\n" for g in G), args.out)
    return EXIT_OK


def cmd_hole(args) -> int:
    if args.matrix:
        A = load_matrix(args.matrix)
    else:
        A = _instance(args).matrix
    if not args.beta:
        raise ValueError("--beta is required")
    b = parse_int_vector(args.beta)
    S = GradedSemigroup(A)
    witness = S.member(b)
    hole = witness is None and S.is_hole(b)
    if args.format == "json":
        doc = {"beta": list(b), "member": witness is not None,
               "witness": None if witness is None else list(witness), "hole": hole}
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        _emit(f"hole: {str(hole).lower()}\nmember: {str(witness is not None).lower()}\n", args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    lo = args.d_min if args.d_min is not None else args.d
    hi = args.d_max if args.d_max is not None else args.d
    if lo is None or hi is None:
        raise ValueError("give --d or --d-min/--d-max")
    rows = ratio_table(lo, hi, args.variant, computed=args.computed, beta0=args.beta0)
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
        return EXIT_OK
    cols = ["d", "r", "s", "volume", "rank", "jump", "ratio", "ratio_decimal",
            "lower_bound_decimal", "sst_bound"]
    table = [cols] + [[str(row[c]) for c in cols] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    text = "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in table) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    A, beta = _matrix_and_beta(args, need_beta=True)
    system = assemble_system(A, beta)
    _emit(render_system(system, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgfam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--variant", choices=VARIANT_CHOICES, default="hat")
        p.add_argument("--d", type=int)
        p.add_argument("--beta0", default="0")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out")

    p = sub.add_parser("family", help="construct a family member")
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="run the claim catalog on a family member")
    common(p)
    p.add_argument("--depth", choices=["quick", "full"], default="quick")
    p.add_argument("--toric-max-d", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in [
        ("volume", cmd_volume, "normalized volume of a matrix"),
        ("toric", cmd_toric, "generators of the toric ideal"),
        ("hole", cmd_hole, "decide whether beta is a hole of NA"),
    ]:
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--matrix")
        p.add_argument("--beta")
        p.set_defaults(func=func)

    p = sub.add_parser("table", help="rank/volume ratio table")
    common(p)
    p.add_argument("--d-min", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--computed", action="store_true", help="compute volumes instead of closed forms")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("render", help="render the generators of H_A(beta)")
    common(p, formats=("text", "script"))
    p.add_argument("--matrix")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "variant", None) in ("plain2", "plain3") and args.command == "table":
        parser.error("table needs a family variant: product, hat or hat-h")
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"hgfam: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (HgfamError, ValueError, OSError) as e:
        print(f"hgfam: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

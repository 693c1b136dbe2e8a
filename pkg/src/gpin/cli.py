"""Command-line front end: parse spaces/elements/matrices from JSON files,
run the individual group operations, and execute named verification suites.

Exit codes: 0 success / suite pass, 1 failure or error, 2 suite passed its
checks but produced findings (anomalies worth human attention).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .centralizer import decompose, image_in_gpin, image_in_gspin, restrict_so
from .clifford import blade_name
from .conjugacy import conjugator, conjugator_gspin
from .errors import GpinError, NotMemberError
from .groups import (
    DEFAULT_CAP,
    center,
    enumerate_group,
    lift,
    membership,
)
from .serialize import (
    emit_element,
    emit_matrix,
    emit_poly,
    load_json,
    parse_element,
    parse_matrix,
    parse_space,
)
from .suites import SUITES, SuiteConfig, emit_report, run_suite


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


def _pretty(elem) -> str:
    return str(elem)


def _space_from(args):
    return parse_space(load_json(args.space))


def _cap(args) -> int:
    env = os.environ.get("GPIN_CAP")
    if env:
        return int(env)
    return getattr(args, "cap", None) or DEFAULT_CAP


def cmd_member(args) -> int:
    space = _space_from(args)
    elem = parse_element(load_json(args.element), space)
    try:
        g = membership(elem)
    except NotMemberError as exc:
        _emit({"member": False, "reason": exc.reason, "detail": str(exc)})
        return 0
    _emit(
        {
            "member": True,
            "parity": "even" if g.is_even else "odd",
            "norm": space.field.fmt(g.norm),
            "projection": emit_matrix(g.proj, space.field),
        }
    )
    return 0


def cmd_project(args) -> int:
    space = _space_from(args)
    g = membership(parse_element(load_json(args.element), space))
    _emit(
        {
            "matrix": emit_matrix(g.proj, space.field),
            "det": space.field.fmt(g.proj.determinant),
        }
    )
    return 0


def cmd_lift(args) -> int:
    space = _space_from(args)
    m = parse_matrix(load_json(args.matrix), space)
    g = lift(m)
    _emit(
        {
            "element": emit_element(g.value),
            "pretty": _pretty(g.value),
            "parity": "even" if g.is_even else "odd",
            "norm": space.field.fmt(g.norm),
        }
    )
    return 0


def cmd_center(args) -> int:
    space = _space_from(args)
    desc = center(space, "GSpin" if args.group == "gspin" else "GPin")
    _emit(
        {
            "group": desc.group,
            "dim": desc.dim,
            "has_zeta_coset": desc.has_zeta_coset,
            "commutative_whole_group": desc.commutative_whole_group,
            "description": desc.describe(),
        }
    )
    return 0


def cmd_enumerate(args) -> int:
    space = _space_from(args)
    elems = enumerate_group(space, args.group, _cap(args))
    if args.group in ("o", "so"):
        listing = [emit_matrix(m, space.field) for m in elems]
    else:
        listing = [emit_element(g.value) for g in elems]
    data = {"group": args.group, "order": len(elems)}
    if not args.count_only:
        data["elements"] = listing
    _emit(data)
    return 0


def _block_report(space, b) -> dict:
    F = space.field
    out = {"kind": b.kind, "dim": b.dim, "k": b.k}
    if b.kind in ("gl", "unitary"):
        out["extension_modulus"] = emit_poly(b.poly)
        out["extension_degree"] = b.ext.degree
    if b.kind == "unitary":
        out["hermitian_gram"] = [
            [[F.fmt(c) for c in entry] for entry in row] for row in b.hermitian_gram()
        ]
        out["basis"] = [[F.fmt(x) for x in v] for v in b.a_basis]
    elif b.kind == "gl":
        out["x_basis"] = [[F.fmt(x) for x in v] for v in b.x_basis]
        out["xstar_basis"] = [[F.fmt(x) for x in v] for v in b.xstar_basis]
    else:
        out["basis"] = [[F.fmt(x) for x in v] for v in b.ortho_vectors]
    if F.kind == "Fp":
        out["group_order"] = (
            b.group_order(F.p, space) if b.kind in ("plus", "minus") else b.group_order(F.p)
        )
    return out


def cmd_centralizer(args) -> int:
    space = _space_from(args)
    h = parse_matrix(load_json(args.matrix), space)
    d = decompose(h)
    data = {
        "minimal_polynomial": emit_poly(d.minimal_poly),
        "blocks": [_block_report(space, b) for b in d.blocks],
        "plus_dim": d.plus_dim,
        "minus_dim": d.minus_dim,
        "k_list": d.k_list,
    }
    if space.field.kind == "Fp":
        data["predicted_order"] = d.predicted_order()
    image = None
    if args.so:
        image = restrict_so(d, h)
    elif args.gpin_image:
        image = image_in_gpin(d)
    elif args.gspin_image:
        image = image_in_gspin(d)
    if image is not None:
        data["image"] = {"factors": image.describe()}
        if space.field.kind == "Fp":
            data["image"]["predicted_order"] = image.predicted_order()
    _emit(data)
    return 0


def cmd_conjugator(args) -> int:
    space = _space_from(args)
    g = membership(parse_element(load_json(args.element), space))
    cert = conjugator_gspin(g) if args.gspin else conjugator(g)
    _emit(
        {
            "eta": emit_element(cert.eta.value),
            "eta_pretty": _pretty(cert.eta.value),
            "sigma_target": emit_element(cert.sigma_target.value),
            "det_beta": cert.det_beta,
            "block_dets": cert.block_dets,
            "repaired": cert.repaired,
            "even_variant": cert.even_variant,
            "verified": cert.verify(),
            "det_constraint_ok": cert.det_constraint_ok(),
        }
    )
    return 0


def cmd_suite(args) -> int:
    cfg = SuiteConfig(
        field_spec=args.field,
        dim=args.dim,
        space=load_json(args.space) if args.space else None,
        seed=args.seed,
        slow=args.slow,
        cap=_cap(args),
    )
    report = run_suite(args.suite_id, cfg)
    print(emit_report(report, args.format, include_timing=args.timing))
    if report.failures:
        return 1
    if report.findings:
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpin",
        description="Exact Clifford-algebra group computations and verification suites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space(p):
        p.add_argument("--space", required=True, help="JSON file: {'field': 'Q'|'Fp:<p>', 'gram': [[...]]}")

    p = sub.add_parser("member", help="test group membership of an algebra element")
    add_space(p)
    p.add_argument("--element", required=True, help="JSON file mapping blade masks to scalars")
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("project", help="project a group element to its isometry")
    add_space(p)
    p.add_argument("--element", required=True)
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("lift", help="lift an isometry through the reflection section")
    add_space(p)
    p.add_argument("--matrix", required=True, help="JSON matrix in the original basis")
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("center", help="describe the center of the group")
    add_space(p)
    p.add_argument("--group", choices=["gpin", "gspin"], default="gpin")
    p.set_defaults(fn=cmd_center)

    p = sub.add_parser("enumerate", help="enumerate a group over a finite field")
    add_space(p)
    p.add_argument("--group", choices=["o", "so", "gpin", "gspin"], required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("centralizer", help="block decomposition under a semisimple isometry")
    add_space(p)
    p.add_argument("--matrix", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--so", action="store_true", help="special-orthogonal refinement")
    group.add_argument("--gpin-image", action="store_true", help="projected full-group centralizer")
    group.add_argument("--gspin-image", action="store_true", help="projected even-group centralizer")
    p.set_defaults(fn=cmd_centralizer)

    p = sub.add_parser("conjugator", help="certificate conjugating the involution image back")
    add_space(p)
    p.add_argument("--element", required=True)
    p.add_argument("--gspin", action="store_true", help="even-group variant")
    p.set_defaults(fn=cmd_conjugator)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("suite_id", choices=sorted(SUITES))
    p.add_argument("--space", default=None)
    p.add_argument("--field", default=None, help="Fp:<p> or Q")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slow", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GpinError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())

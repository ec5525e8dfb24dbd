"""Command line interface.

Every command reads a presentation from a JSON file and writes a JSON
report to stdout. Exit codes: 0 on success, 1 on invalid input or
exceeded search limits, 2 when a verification fails (a relation is
broken or the derivation is not homogeneous), 3 when nilpotency testing
hits its iteration cap without an answer.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    ExactDivisionFailed,
    InadmissibleDescriptor,
    InadmissibleTuple,
    LndDescriptor,
    NeedsNormalization,
    NoSuchFreeVariable,
    WrongType,
    build_lnd,
    class_report,
    enumerate_lnds,
    kernel_generators,
)
from .derivation import (
    DerivationFormatError,
    derivation_from_text,
    is_well_defined,
    kernel_member,
    nilpotency_check,
)
from .gaussian import ScalarParseError, gq_parse
from .grading import NonHomogeneous, derivation_degree, weight_assignment
from .oracle import BoxTooLarge, oracle_enumerate
from .poly import (
    NotDivisible,
    PolyParseError,
    UnknownGenerator,
    poly_format,
    poly_parse,
)
from .presentation import (
    PresentationError,
    TrinomialPresentation,
    all_ones_rescaling,
)
from .toric import Cone2D, RootOutOfRange, demazure_roots

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFICATION = 2
EXIT_INCONCLUSIVE = 3

_INPUT_ERRORS = (
    PresentationError,
    ScalarParseError,
    PolyParseError,
    UnknownGenerator,
    NotDivisible,
    DerivationFormatError,
    InadmissibleTuple,
    InadmissibleDescriptor,
    NoSuchFreeVariable,
    NeedsNormalization,
    WrongType,
    RootOutOfRange,
    BoxTooLarge,
    json.JSONDecodeError,
    OSError,
    ValueError,
)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load_presentation(path: str) -> TrinomialPresentation:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return TrinomialPresentation.from_json(text)


def _parse_lambdas(text):
    if text is None:
        return None
    return tuple(gq_parse(chunk.strip()) for chunk in text.split(",") if chunk.strip())


def _descriptor_from_json(text: str) -> LndDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InadmissibleDescriptor(f"descriptor is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "kind" not in data:
        raise InadmissibleDescriptor('descriptor must be an object with a "kind" field')
    unknown = set(data) - {"kind", "k", "c", "roles", "param"}
    if unknown:
        raise InadmissibleDescriptor(f"unknown descriptor fields: {sorted(unknown)}")
    param = data.get("param")
    if param is not None:
        if not isinstance(param, str):
            raise InadmissibleDescriptor("param must be a scalar string such as \"1+i\"")
        param = gq_parse(param)
    c = data.get("c")
    roles = data.get("roles")
    return LndDescriptor(
        kind=data["kind"],
        k=data.get("k"),
        c=tuple(c) if c is not None else None,
        roles=tuple(roles) if roles is not None else None,
        param=param,
    )


def _degree_info(delta, grading):
    if delta.is_zero():
        return None
    degree = derivation_degree(delta, grading)
    return {"degree": list(degree), "degree_label": grading.format_weight(degree)}


def cmd_analyze(args) -> int:
    P = _load_presentation(args.presentation)
    _emit(class_report(P).to_dict())
    return EXIT_OK


def cmd_lnds(args) -> int:
    P = _load_presentation(args.presentation)
    grading = weight_assignment(P)
    records = []
    for inst in enumerate_lnds(P, _parse_lambdas(args.lambdas)):
        record = {"descriptor": inst.descriptor.to_dict()}
        if inst.derivation is None:
            record["error"] = inst.error
        else:
            record["images"] = inst.derivation.image_strings()
            info = _degree_info(inst.derivation, grading)
            if info:
                record.update(info)
        records.append(record)
    _emit(
        {
            "presentation": P.to_input_dict(),
            "count": len(records),
            "lnds": records,
        }
    )
    return EXIT_OK


def cmd_kernel(args) -> int:
    P = _load_presentation(args.presentation)
    desc = _descriptor_from_json(args.descriptor)
    gens = kernel_generators(P, desc)
    out = {
        "presentation": P.to_input_dict(),
        "descriptor": desc.to_dict(),
        "kernel": [poly_format(g) for g in gens],
    }
    if args.member is not None:
        member = poly_parse(args.member, allowed=P.generators)
        delta = build_lnd(P, desc)
        out["member"] = {
            "poly": poly_format(member),
            "in_kernel": kernel_member(delta, member),
        }
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    P = _load_presentation(args.presentation)
    if args.derivation == "-":
        text = sys.stdin.read()
    else:
        with open(args.derivation, "r", encoding="utf-8") as fh:
            text = fh.read()
    delta = derivation_from_text(P, text)
    out = {"presentation": P.to_input_dict()}
    report = is_well_defined(delta)
    out["well_defined"] = report.ok
    if not report.ok:
        out["relation_index"] = report.relation_index
        out["residue"] = poly_format(report.residue)
        out["verified"] = False
        _emit(out)
        return EXIT_VERIFICATION
    grading = weight_assignment(P)
    try:
        info = _degree_info(delta, grading)
    except NonHomogeneous as exc:
        out["homogeneous"] = False
        out["witness"] = str(exc)
        out["verified"] = False
        _emit(out)
        return EXIT_VERIFICATION
    out["homogeneous"] = True
    if info:
        out.update(info)
    nil = nilpotency_check(delta, cap=args.cap)
    out["nilpotency"] = {"status": nil.status, "cap": nil.cap, "index": nil.index}
    out["verified"] = nil.status == "verified"
    _emit(out)
    return EXIT_OK if nil.status == "verified" else EXIT_INCONCLUSIVE


def cmd_oracle(args) -> int:
    P = _load_presentation(args.presentation)
    weights = None
    if args.weight:
        weights = []
        for chunk in args.weight:
            weights.append(tuple(int(x) for x in chunk.split(",")))
    report = oracle_enumerate(
        P,
        weights=weights,
        degree_bound=args.bound,
        cap=args.cap,
        max_unknowns=args.max_unknowns,
    )
    _emit(report.to_dict())
    return EXIT_OK


def cmd_demazure(args) -> int:
    try:
        first, second = args.rays.split(":")
        ray1 = tuple(int(x) for x in first.split(","))
        ray2 = tuple(int(x) for x in second.split(","))
    except ValueError:
        raise ValueError('rays must look like "x1,y1:x2,y2"') from None
    cone = Cone2D(ray1, ray2)
    family = demazure_roots(cone, args.ray)
    out = family.to_dict()
    out["rays"] = [list(cone.ray1), list(cone.ray2)]
    if args.materialize is not None:
        out["member"] = {
            "p": args.materialize,
            "root": list(family.root(args.materialize)),
        }
    _emit(out)
    return EXIT_OK


def cmd_normalize(args) -> int:
    P = _load_presentation(args.presentation)
    _emit(all_ones_rescaling(P).to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilnd",
        description="classify and verify graded locally nilpotent derivations "
        "of trinomial algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full classification report")
    p.add_argument("--presentation", required=True, help="path to a presentation JSON file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lnds", help="materialize one derivation per class")
    p.add_argument("--presentation", required=True)
    p.add_argument(
        "--lambdas",
        help="comma-separated parameter samples for infinite families, e.g. 0,1,-1,i",
    )
    p.set_defaults(func=cmd_lnds)

    p = sub.add_parser("kernel", help="kernel generators of a described derivation")
    p.add_argument("--presentation", required=True)
    p.add_argument(
        "--descriptor",
        required=True,
        help='derivation descriptor JSON, e.g. {"kind":"t2c","c":[1,1,1],"roles":[0,1,2],"param":"i"}',
    )
    p.add_argument("--member", help="polynomial to test for kernel membership")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="check a derivation given as gen = poly lines")
    p.add_argument("--presentation", required=True)
    p.add_argument("--derivation", required=True, help="path to the derivation text file")
    p.add_argument("--cap", type=int, default=64, help="nilpotency iteration cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="linear-algebra search per degree")
    p.add_argument("--presentation", required=True)
    p.add_argument(
        "--weight",
        action="append",
        help="degree shift as comma-separated integers; repeatable; "
        "defaults to the classifier-induced box",
    )
    p.add_argument("--bound", type=int, default=4, help="image degree bound")
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--max-unknowns", type=int, default=600, dest="max_unknowns")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demazure", help="root family of a ray of a plane cone")
    p.add_argument("--rays", required=True, help='cone rays as "x1,y1:x2,y2"')
    p.add_argument("--ray", type=int, required=True, choices=(1, 2))
    p.add_argument(
        "--materialize", type=int, help="also output the p-th member of the family"
    )
    p.set_defaults(func=cmd_demazure)

    p = sub.add_parser(
        "normalize", help="rescale variables so all trinomial coefficients become 1"
    )
    p.add_argument("--presentation", required=True)
    p.set_defaults(func=cmd_normalize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ExactDivisionFailed:
        raise
    except _INPUT_ERRORS as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

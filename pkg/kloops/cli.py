"""
Command line front end.

Usage example:

    kloops validate z5.tbl --as kloop
    kloops quotient z9.tbl --subloop 0,3,6
    kloops --format json invariants z5.tbl
    kloops enumerate --order 5 --out order5.tbl

Exit codes: 0 when the command succeeds or the checked property holds, 1 when
the property is false or no witness exists, 2 on malformed input, a violated
precondition or an exceeded cap.
"""
import argparse
from importlib.util import find_spec
import logging
from pathlib import Path
import sys
from typing import List, Tuple

from .constants import DEFAULT_CAP, ENUMERATION_ORDER_BOUND, OUTPUT_FORMATS, STRUCTURE_KINDS
from .constructions import enumerate_kloops
from .errors import AlgebraError, NotNormal, PreconditionError
from .interp import kloop_to_symetron, symetron_to_kloop
from .loops import (
    aip_witness,
    associativity_witness,
    bol_witness,
    check_kloop_identities,
    make_loop,
)
from .report import loop_kind, loop_report, symetron_report
from .subloops import (
    center_of_centralizer,
    centralizer,
    enumerate_subloops,
    find_isomorphism,
    is_normal,
    is_normal_by_cosets,
    is_subloop,
    quotient,
)
from .symetron import cover_by_translates, make_symetron
from .tables import SubsetMask, read_table, serialize_table
from .version import __version__

logger = logging.getLogger(__name__)

# (exit code, text lines, json payload)
Outcome = Tuple[int, List[str], dict]


def _load_loop(path):
    return make_loop(read_table(path))


def _load_symetron(path, kind: str):
    if kind == "symetron":
        return make_symetron(read_table(path))
    return kloop_to_symetron(_load_loop(path))


def _table_lines(t) -> List[str]:
    return serialize_table(t).split("\n")


def cmd_validate(file, kind, cap, **kwargs) -> Outcome:
    if kind == "symetron":
        S = make_symetron(read_table(file))
        return 0, ["valid: true", "kind: symetron", f"order: {S.order}"], {"valid": True, "kind": kind}

    L = _load_loop(file)
    lines = [f"order: {L.order}", f"kind: {loop_kind(L)}"]
    witness = None
    if kind in ("bol", "kloop"):
        witness = bol_witness(L)
        if witness is not None:
            lines.append(f"bol_witness: {','.join(map(str, witness))}")
    if witness is None and kind == "kloop":
        witness = aip_witness(L)
        if witness is not None:
            lines.append(f"aip_witness: {','.join(map(str, witness))}")

    valid = witness is None
    if L.flags.is_kloop and not L.flags.is_associative:
        lines.append(f"associativity_witness: {','.join(map(str, associativity_witness(L)))}")
    data = {
        "valid": valid,
        "kind": loop_kind(L),
        "order": L.order,
        "witness": list(witness) if witness else None,
    }
    return (0 if valid else 1), [f"valid: {'true' if valid else 'false'}"] + lines, data


def cmd_invariants(file, kind, cap, **kwargs) -> Outcome:
    if kind == "symetron":
        report = symetron_report(make_symetron(read_table(file)), cap)
    else:
        report = loop_report(_load_loop(file), cap)
    return 0, report.to_lines(), report.to_dict()


def cmd_identities(file, involution, cap, **kwargs) -> Outcome:
    L = _load_loop(file)
    report = check_kloop_identities(L, include_involution_item=involution, cap=cap)
    lines = [f"order: {report.order}", f"window: {report.window}"]
    items = {}
    for key, verdict in report.items.items():
        line = f"item.{key}: {'pass' if verdict.passed else 'fail'}"
        if verdict.witness is not None:
            line += f" {','.join(map(str, verdict.witness))}"
        lines.append(line)
        items[key] = {"passed": verdict.passed, "witness": verdict.witness}
    return (0 if report.passed else 1), lines, {"order": report.order, "items": items}


def cmd_convert(file, to, basepoint, **kwargs) -> Outcome:
    if to == "symetron":
        table = kloop_to_symetron(_load_loop(file)).table
    else:
        table = symetron_to_kloop(make_symetron(read_table(file)), basepoint).table
    return 0, _table_lines(table), {"table": table.rows()}


def cmd_subloops(file, cap, **kwargs) -> Outcome:
    found = enumerate_subloops(_load_loop(file), cap)
    return 0, [c.format() for c in found], {"subloops": [list(c.members) for c in found]}


def _subloop_arg(L, literal: str) -> SubsetMask:
    C = SubsetMask.parse(literal, L.order)
    if not is_subloop(L, C):
        raise PreconditionError(f"{C.format()} is not a subloop")
    return C


def cmd_normal(file, subloop, **kwargs) -> Outcome:
    L = _load_loop(file)
    C = _subloop_arg(L, subloop)
    normal = is_normal(L, C)
    by_cosets = is_normal_by_cosets(L, C)
    lines = [f"normal: {str(normal).lower()}", f"normal_by_cosets: {str(by_cosets).lower()}"]
    return (0 if normal else 1), lines, {"normal": normal, "normal_by_cosets": by_cosets}


def cmd_quotient(file, subloop, **kwargs) -> Outcome:
    L = _load_loop(file)
    C = _subloop_arg(L, subloop)
    try:
        q = quotient(L, C)
    except NotNormal as e:
        return 1, [f"normal: false ({e})"], {"normal": False}
    blocks = [b.format() for b in q.blocks]
    lines = [f"# block {i}: {b}" for i, b in enumerate(blocks)] + _table_lines(q.table)
    return 0, lines, {"blocks": blocks, "table": q.table.rows()}


def cmd_centralizer(file, element, cap, **kwargs) -> Outcome:
    L = _load_loop(file)
    if not 0 <= element < L.order:
        raise PreconditionError(f"element {element} is outside [0, {L.order})")
    c = centralizer(L, element)
    z = center_of_centralizer(L, element, cap)
    lines = [f"centralizer: {c.format()}", f"center: {z.format()}"]
    return 0, lines, {"centralizer": list(c.members), "center": list(z.members)}


def cmd_iso(file_a, file_b, **kwargs) -> Outcome:
    found = find_isomorphism(_load_loop(file_a), _load_loop(file_b))
    if found is None:
        return 1, ["isomorphic: false"], {"isomorphic": False}
    return 0, ["isomorphic: true", f"map: {','.join(map(str, found))}"], {"isomorphic": True, "map": list(found)}


def cmd_cover(file, subset, kind, cap, **kwargs) -> Outcome:
    S = _load_symetron(file, kind)
    pairs = cover_by_translates(S, SubsetMask.parse(subset, S.order), cap)
    lines = [f"translates: {len(pairs)}"] + [f"{u},{v}" for u, v in pairs]
    return 0, lines, {"translates": [list(p) for p in pairs]}


def cmd_enumerate(order, cap, **kwargs) -> Outcome:
    found = enumerate_kloops(order, cap)
    lines = [f"# order {order}: {len(found)} classes"]
    for i, t in enumerate(found):
        lines.append(f"# class {i}")
        lines += _table_lines(t)
    return 0, lines, {"order": order, "tables": [t.rows() for t in found]}


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="kloops",
        description="Validate and analyse finite loops, Bol loops, K-loops and symétrons given as Cayley tables.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="Cap for group closures and enumerations")
    parser.add_argument("--out", type=str, default=None, help="Write the report to this file instead of stdout")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="text", help="Report format")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log debug messages to stderr")

    sub = parser.add_subparsers(dest="name", required=True)

    p = sub.add_parser("validate", help="Check a table against the axioms of a structure kind")
    p.add_argument("file")
    p.add_argument("--as", dest="kind", choices=STRUCTURE_KINDS, default="kloop")
    p.set_defaults(command=cmd_validate)

    p = sub.add_parser("invariants", help="Print the invariant report")
    p.add_argument("file")
    p.add_argument("--as", dest="kind", choices=STRUCTURE_KINDS, default="kloop")
    p.set_defaults(command=cmd_invariants)

    p = sub.add_parser("identities", help="Run the K-loop identity suite")
    p.add_argument("file")
    p.add_argument(
        "--involution",
        action="store_true",
        help="Also check that the only involutive fixed-point-free automorphism is the negation",
    )
    p.set_defaults(command=cmd_identities)

    p = sub.add_parser("convert", help="Convert between a u2d K-loop and its symétron")
    p.add_argument("file")
    p.add_argument("--to", choices=("symetron", "kloop"), required=True)
    p.add_argument("--basepoint", type=int, default=0, help="Neutral element when converting to a K-loop")
    p.set_defaults(command=cmd_convert)

    p = sub.add_parser("subloops", help="List every subloop of a Bol loop")
    p.add_argument("file")
    p.set_defaults(command=cmd_subloops)

    for name, func, text in (
        ("normal", cmd_normal, "Check whether a subloop is normal"),
        ("quotient", cmd_quotient, "Print the quotient by a normal subloop"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--subloop", required=True, help="Comma-separated element indices")
        p.set_defaults(command=func)

    p = sub.add_parser("centralizer", help="Print C_B(x) and its center")
    p.add_argument("file")
    p.add_argument("--element", type=int, required=True)
    p.set_defaults(command=cmd_centralizer)

    p = sub.add_parser("iso", help="Search for an isomorphism between two loops")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(command=cmd_iso)

    p = sub.add_parser("cover", help="Cover a symétron by translates of a subset")
    p.add_argument("file")
    p.add_argument("--subset", required=True, help="Comma-separated element indices")
    p.add_argument("--as", dest="kind", choices=("kloop", "symetron"), default="kloop")
    p.set_defaults(command=cmd_cover)

    p = sub.add_parser("enumerate", help="List the K-loops of a given order up to isomorphism")
    p.add_argument("--order", type=int, required=True, help=f"At most {ENUMERATION_ORDER_BOUND}")
    p.set_defaults(command=cmd_enumerate)

    return parser.parse_args(argv)


def _dumps(data: dict) -> str:
    if find_spec("orjson") is not None:
        import orjson

        return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode()

    import json

    return json.dumps(data, sort_keys=True, indent=2)


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(Path(out).expanduser(), "w", encoding="utf-8") as f:
            f.write(text)


def main(command, format="text", out=None, verbose=False, **kwargs) -> int:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        code, lines, data = command(**kwargs)
    except AlgebraError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2

    text = _dumps(data) + "\n" if format == "json" else "\n".join(lines) + "\n"
    _emit(text, out)
    return code


def run(argv=None) -> int:
    args = parse_args(argv)
    kwargs = vars(args)
    kwargs.pop("name")
    return main(**kwargs)

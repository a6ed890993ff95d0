"""Command-line front end.

Every command reads instance documents (see :mod:`fintop.instances`) and
prints either a plain-text report or, with ``--json``, one canonical JSON
object. Exit status: 0 success, 1 a law fails / a counterexample is found /
certification fails, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .enumerator import (
    ALGEBRA_FLAGS,
    TOPOLOGY_FLAGS,
    SearchSpec,
    enum_spaces,
    enum_topmonoids,
    search,
)
from .errors import FintopError, InstanceKindMismatch, ParseError
from .finspace import (
    FiniteSpace,
    Partition,
    cellularity,
    map_profile,
    product,
    quotient_space,
    semiregularization,
    separation_profile,
)
from .instances import dumps, label, load_instance, partition_doc, serialize, to_document
from .laws import LAWS, Verdict, run_suite
from .reflections import SeparationAxiom, certify_universal, reflect
from .topmonoid import TopMonoid, assemble, product_topmonoid, quotient_topmonoid

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so dispatch owns the exit code."""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _space_of(obj) -> FiniteSpace:
    return obj.space if isinstance(obj, TopMonoid) else obj


def _emit(out, args, payload: dict, prose: list[str]) -> None:
    if args.json:
        out.write(dumps(payload) + "\n")
    else:
        out.write("\n".join(prose) + "\n")


def _flags_line(d: dict) -> str:
    return " ".join(f"{k}={'yes' if v else 'no'}" for k, v in d.items())


def _parse_partition(text: str, carrier) -> Partition:
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path="--partition") from None
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise ParseError("expected a list of blocks", path="--partition")
    names = {label(p): p for p in carrier}
    atoms = []
    for k, block in enumerate(blocks):
        row = []
        for a in block:
            if a not in names:
                raise ParseError(f"unknown point {a!r}", path=f"--partition[{k}]")
            row.append(names[a])
        atoms.append(row)
    return Partition.from_blocks(carrier, atoms)


# -- commands ----------------------------------------------------------------


def cmd_check(args, out) -> int:
    obj = load_instance(args.file)
    space = _space_of(obj)
    payload = {"instance": to_document(obj), "separation": separation_profile(space).as_dict()}
    prose = [f"points: {space.n}  opens: {len(space.opens)}", "separation: " + _flags_line(payload["separation"])]
    if isinstance(obj, TopMonoid):
        payload["profile"] = obj.profile.as_dict()
        prose.append("algebra: " + _flags_line(payload["profile"]))
    _emit(out, args, payload, prose)
    return EXIT_OK


def cmd_reflect(args, out) -> int:
    obj = load_instance(args.file)
    axiom = SeparationAxiom.parse(args.axiom)
    arrow = reflect(obj, axiom)
    payload = {
        "axiom": axiom.value,
        "source": to_document(arrow.source),
        "target": to_document(arrow.target),
        "morphism": {label(k): label(v) for k, v in arrow.morphism.as_dict().items()},
        "partition": partition_doc(arrow.partition),
    }
    prose = [
        f"reflection {axiom.value}: {_space_of(arrow.source).n} -> {_space_of(arrow.target).n} points",
        "classes: " + " ".join("{" + ",".join(b) + "}" for b in payload["partition"]),
        "target: " + serialize(arrow.target).strip(),
    ]
    code = EXIT_OK
    if args.certify:
        report = certify_universal(arrow, args.max_target_size)
        payload["certification"] = report.as_dict()
        prose.append(
            f"certification: {payload['certification']['result']} "
            f"(targets {report.targets}, maps {report.maps}, bound {report.bound})"
        )
        if not report.passed:
            code = EXIT_FAIL
    _emit(out, args, payload, prose)
    return code


def cmd_quotient(args, out) -> int:
    obj = load_instance(args.file)
    p = _parse_partition(args.partition, _space_of(obj).points)
    if isinstance(obj, TopMonoid):
        target, proj = quotient_topmonoid(obj, p)
    else:
        target, proj = quotient_space(obj, p)
    prof = map_profile(proj)
    payload = {
        "target": to_document(target),
        "projection": {label(k): label(v) for k, v in proj.as_dict().items()},
        "projection_profile": {"open": prof.open, "closed": prof.closed},
    }
    prose = [
        "target: " + serialize(target).strip(),
        f"projection: open={'yes' if prof.open else 'no'} closed={'yes' if prof.closed else 'no'}",
    ]
    _emit(out, args, payload, prose)
    return EXIT_OK


def cmd_product(args, out) -> int:
    a, b = load_instance(args.left), load_instance(args.right)
    if isinstance(a, TopMonoid) and isinstance(b, TopMonoid):
        result = product_topmonoid(a, b)
    elif isinstance(a, FiniteSpace) and isinstance(b, FiniteSpace):
        result = product(a, b)
    else:
        raise InstanceKindMismatch("product needs two spaces or two monoids")
    _emit(out, args, {"product": to_document(result)}, [serialize(result).strip()])
    return EXIT_OK


def cmd_cellularity(args, out) -> int:
    obj = load_instance(args.file)
    value = cellularity(_space_of(obj))
    _emit(out, args, {"cellularity": value}, [f"cellularity: {value}"])
    return EXIT_OK


def cmd_semiregularize(args, out) -> int:
    obj = load_instance(args.file)
    sr = semiregularization(_space_of(obj))
    result = assemble(sr, obj.algebra) if isinstance(obj, TopMonoid) else sr
    _emit(out, args, {"semiregularization": to_document(result)}, [serialize(result).strip()])
    return EXIT_OK


def _law_selection(text: str):
    if text == "all":
        return "all"
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_verify(args, out) -> int:
    obj = load_instance(args.file)
    instance = obj
    if args.pair_with:
        instance = (obj, load_instance(args.pair_with))
    elif args.partition:
        instance = (obj, _parse_partition(args.partition, _space_of(obj).points))
    reports = run_suite(instance, _law_selection(args.laws), certify=args.certify, bound=args.max_target_size)
    failed = any(r.verdict is Verdict.FAILS for r in reports)
    payload = {"reports": [r.as_dict(with_elapsed=False) for r in reports]}
    prose = [f"{'law':<5} {'title':<22} verdict"]
    for r in reports:
        extra = f" ({r.failed_hypothesis})" if r.failed_hypothesis else ""
        prose.append(f"{r.law_id:<5} {LAWS[r.law_id].title:<22} {r.verdict.value}{extra}")
    _emit(out, args, payload, prose)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_search(args, out) -> int:
    drop = frozenset(s.strip() for s in (args.drop or "").split(",") if s.strip())
    spec = SearchSpec(args.law, args.max_size, drop, args.budget)
    res = search(spec)
    payload = {
        "law": spec.law_id,
        "dropped": sorted(drop),
        "max_size": spec.max_size,
        "examined": res.examined,
        "found": res.found,
        "report": res.report.as_dict(with_elapsed=False) if res.found else None,
    }
    prose = [f"examined: {res.examined}"]
    if res.found:
        prose.append("counterexample: " + dumps(res.report.witness["instance"]))
    else:
        prose.append("no counterexample")
    _emit(out, args, payload, prose)
    return EXIT_FAIL if res.found else EXIT_OK


def cmd_enum(args, out) -> int:
    flags = frozenset(s.strip() for s in (args.filter or "").split(",") if s.strip())
    if args.kind == "space":
        if flags:
            raise _UsageError("--filter applies to monoids only")
        stream = enum_spaces(args.size)
    else:
        stream = enum_topmonoids(args.size, flags)
    if args.count:
        n = sum(1 for _ in stream)
        _emit(out, args, {"kind": args.kind, "size": args.size, "count": n}, [f"count: {n}"])
    else:
        for obj in stream:
            out.write(serialize(obj))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fintop", description="Finite topological spaces and monoids: reflections and law checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit canonical JSON")
        p.set_defaults(func=func)
        return p

    p = command("check", cmd_check, "validate an instance and print its profile")
    p.add_argument("file")

    p = command("reflect", cmd_reflect, "compute a separation reflection")
    p.add_argument("file")
    p.add_argument("--axiom", required=True, help="t0, t1, t2, t3, reg (or c0, c1, c2, c3, cr)")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--max-target-size", type=int, default=3)

    p = command("quotient", cmd_quotient, "quotient by a partition given as JSON blocks")
    p.add_argument("file")
    p.add_argument("--partition", required=True)

    p = command("product", cmd_product, "product of two spaces or two monoids")
    p.add_argument("left")
    p.add_argument("right")

    p = command("cellularity", cmd_cellularity, "largest family of pairwise disjoint nonempty opens")
    p.add_argument("file")

    p = command("semiregularize", cmd_semiregularize, "topology generated by the regular open sets")
    p.add_argument("file")

    p = command("verify", cmd_verify, "run laws on an instance")
    p.add_argument("file")
    p.add_argument("--laws", default="all", help='"all" or a comma list such as L1,L2')
    p.add_argument("--certify", action="store_true")
    p.add_argument("--max-target-size", type=int, default=3)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--pair-with", metavar="FILE", help="second factor for pair laws")
    group.add_argument("--partition", help="partition for quotient laws, as JSON blocks")

    p = command("search", cmd_search, "search small instances for a counterexample")
    p.add_argument("--law", required=True)
    p.add_argument("--drop", default="", help="comma list of hypotheses to drop")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)

    p = command("enum", cmd_enum, "list or count small instances")
    p.add_argument("--kind", choices=("space", "monoid"), required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--filter", default="", help="comma list of " + ", ".join(sorted(ALGEBRA_FLAGS | TOPOLOGY_FLAGS)))
    p.add_argument("--count", action="store_true")
    return parser


def dispatch(argv, out=None, err=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _UsageError as exc:
        err.write(f"fintop: usage error: {exc}\n")
    except FintopError as exc:
        err.write(f"fintop: {type(exc).__name__}: {exc}\n")
    except (OSError, ValueError) as exc:
        err.write(f"fintop: {type(exc).__name__}: {exc}\n")
    return EXIT_USAGE


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

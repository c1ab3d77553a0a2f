"""Command-line front door: validate, check, eval, gen."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compactify import bar, infinity, is_omega_sequential, is_s_compact, make_based, plus, wedge
from .errors import ParseError, PresentationError
from .exteriority import (
    ExtSpace,
    cocompact_ext_space,
    coreflect,
    e_report,
    is_e_open,
    is_exterior_seq,
    limit_points,
)
from .generate import generate_instances
from .maps import SpaceMap, compose_maps, map_properties
from .sequences import Seq, classify, convergence_ideal
from .serial import (
    canonical_dumps,
    entity_to_json,
    evset_from_json,
    ext_to_json,
    parse_entity,
    space_to_json,
)
from .spaces import Space, is_open, is_sequentially_open, set_properties, space_report
from .suites import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    default_budget,
    resolve_suite,
    run_suite,
    suite_names,
)


def _load(path: str):
    return parse_entity(path)


def _load_as(path: str, kind, what: str):
    entity = _load(path)
    if not isinstance(entity, kind):
        raise ParseError(f"{path}: expected {what}")
    return entity


def _load_evset(path: str, space: Space):
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return evset_from_json(raw, space.universe)


def _load_based(path: str):
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    base = raw.get("basePoint")
    if base is None:
        raise ParseError("based space file needs a basePoint field", ("basePoint",))
    space = _load_as(path, Space, "a space")
    return make_based(space, base)


def _based_json(b) -> dict:
    out = space_to_json(b.space)
    out["basePoint"] = b.base_point
    return out


def _cmd_validate(args) -> int:
    try:
        entity = _load(args.file)
    except ParseError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    print(canonical_dumps({"kind": type(entity).__name__, "entity": entity_to_json(entity)}), end="")
    return 0


EVAL_OPS = {}


def _op(name, *sig):
    def deco(fn):
        EVAL_OPS[name] = (sig, fn)
        return fn

    return deco


@_op("space-report", "space")
def _eval_space_report(space):
    return space_report(space)


@_op("set-properties", "space", "evset")
def _eval_set_properties(space, s):
    return set_properties(space, s)


@_op("is-open", "space", "evset")
def _eval_is_open(space, s):
    return {"open": is_open(space, s)}


@_op("is-seq-open", "space", "evset")
def _eval_is_seq_open(space, s):
    return {"sequentiallyOpen": is_sequentially_open(space, s)}


@_op("s-compact", "space", "evset")
def _eval_s_compact(space, s):
    return {"sCompact": is_s_compact(space, s)}


@_op("omega-sequential", "space")
def _eval_omega(space):
    return {"omegaSequential": is_omega_sequential(space)}


@_op("classify-seq", "space", "seq")
def _eval_classify(space, s):
    cls = classify(space, s)
    return {
        "convergent": cls.convergent,
        "limitSet": [entity_point(p) for p in sorted(cls.limit_set, key=repr)],
        "proper": cls.proper,
        "noConvSubseq": cls.no_conv_subseq,
    }


@_op("convergence-ideal", "space", "seq")
def _eval_ideal(space, s):
    shape = convergence_ideal(space, s)
    out = {"kind": shape.kind}
    if shape.witness:
        out["witness"] = {"a": shape.witness.a, "b": shape.witness.b}
    if shape.non_witness:
        out["nonWitness"] = {"a": shape.non_witness.a, "b": shape.non_witness.b}
    return out


@_op("map-properties", "map")
def _eval_map_props(f):
    return map_properties(f)


@_op("compose-maps", "map", "map")
def _eval_compose(f, g):
    return entity_to_json(compose_maps(f, g))


@_op("canonicalize", "ext")
def _eval_canonicalize(e):
    return ext_to_json(e)


@_op("cocompact", "space")
def _eval_cocompact(space):
    return ext_to_json(cocompact_ext_space(space))


@_op("limit-points", "ext")
def _eval_limit_points(e):
    return {"limitPoints": sorted(limit_points(e))}


@_op("is-e-open", "ext", "evset")
def _eval_is_e_open(e, s):
    return {"eOpen": is_e_open(e, s)}


@_op("is-exterior-seq", "ext", "seq")
def _eval_is_ext_seq(e, s):
    return {"exterior": is_exterior_seq(e, s)}


@_op("coreflect", "ext")
def _eval_coreflect(e):
    return ext_to_json(coreflect(e))


@_op("e-report", "ext")
def _eval_e_report(e):
    return e_report(e)


@_op("plus", "space")
def _eval_plus(space):
    return _based_json(plus(space))


@_op("wedge", "space")
def _eval_wedge(space):
    return _based_json(wedge(space))


@_op("infinity", "ext")
def _eval_infinity(e):
    return _based_json(infinity(e))


@_op("bar", "based")
def _eval_bar(b):
    return ext_to_json(bar(b))


def entity_point(p) -> object:
    from .serial import point_to_json

    return point_to_json(p)


def _coerce_result(result):
    if hasattr(result, "__dataclass_fields__"):
        return {k: getattr(result, k) for k in result.__dataclass_fields__}
    return result


def _cmd_eval(args) -> int:
    if args.op not in EVAL_OPS:
        print(f"unknown op {args.op!r}; known: {', '.join(sorted(EVAL_OPS))}", file=sys.stderr)
        return 1
    sig, fn = EVAL_OPS[args.op]
    if len(args.files) != len(sig):
        print(f"op {args.op} takes {len(sig)} file(s): {' '.join(sig)}", file=sys.stderr)
        return 1
    loaded = []
    try:
        pending_space = None
        for kind, path in zip(sig, args.files):
            if kind == "space":
                entity = _load_as(path, Space, "a space")
                pending_space = entity
            elif kind == "ext":
                entity = _load_as(path, ExtSpace, "an exterior space")
                pending_space = entity.space
            elif kind == "seq":
                entity = _load(path)
                if not isinstance(entity, Seq):
                    raise ParseError(f"{path}: expected a sequence")
            elif kind == "map":
                entity = _load_as(path, SpaceMap, "a map")
            elif kind == "evset":
                if pending_space is None:
                    raise ParseError("evset files follow the space they live over")
                entity = _load_evset(path, pending_space)
            elif kind == "based":
                entity = _load_based(path)
            else:
                raise AssertionError(kind)
            loaded.append(entity)
    except (ParseError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        result = fn(*loaded)
    except (ParseError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(canonical_dumps(_coerce_result(result)), end="")
    return 0


def _cmd_check(args) -> int:
    try:
        names = suite_names() if args.suite == "all" else [resolve_suite(args.suite)]
    except PresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    budget = args.budget if args.budget is not None else default_budget()
    reports = []
    for name in names:
        report = run_suite(name, args.seed, args.samples, budget)
        reports.append(report)
        status = "pass" if report.exit_code == 0 else ("FAIL" if report.exit_code == 1 else "unknown")
        print(
            f"{report.suite}: {status} "
            f"({report.passed}/{report.cases} passed, {report.failed} failed, "
            f"{report.unknown} unknown, {report.wall_ms} ms)"
        )
    if any(r.exit_code == 1 for r in reports):
        worst = 1
    elif any(r.exit_code == 2 for r in reports):
        worst = 2
    else:
        worst = 0
    if args.report:
        doc = (
            reports[0].to_json()
            if len(reports) == 1
            else {"suites": [r.to_json() for r in reports]}
        )
        Path(args.report).write_text(canonical_dumps(doc), encoding="utf-8")
    return worst


def _cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    insts = generate_instances(args.seed, args.count, args.profile)
    for i, inst in enumerate(insts):
        doc = {
            "ext": entity_to_json(inst.ext),
            "partner": entity_to_json(inst.partner),
            "seqs": [entity_to_json(s) for s in inst.seqs],
            "maps": [entity_to_json(f) for f in inst.maps],
        }
        (out / f"instance-{i:03d}.json").write_text(canonical_dumps(doc), encoding="utf-8")
    print(f"wrote {len(insts)} instance(s) to {out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="extseq",
        description="Exact deciders and property suites for proper and exterior sequentiality",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and validate one entity file")
    p_validate.add_argument("file")
    p_validate.set_defaults(fn=_cmd_validate)

    p_check = sub.add_parser("check", help="run a property suite")
    p_check.add_argument("--suite", default="all", help="suite name, tag, or 'all'")
    p_check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_check.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_check.add_argument("--budget", type=int, default=None)
    p_check.add_argument("--report", default=None, help="write the JSON report here")
    p_check.set_defaults(fn=_cmd_check)

    p_eval = sub.add_parser("eval", help="evaluate one operation on entity files")
    p_eval.add_argument("op")
    p_eval.add_argument("files", nargs="*")
    p_eval.set_defaults(fn=_cmd_eval)

    p_gen = sub.add_parser("gen", help="generate instance files")
    p_gen.add_argument("--profile", default="all", choices=["finite", "tailed", "s2-only", "all"])
    p_gen.add_argument("--count", type=int, default=10)
    p_gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(fn=_cmd_gen)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())

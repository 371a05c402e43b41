"""Command-line interface: deterministic JSON reports with contract exit codes.

Exit codes: 0 Certified/success, 2 Refuted, 3 Inconclusive, 1 input errors,
64 usage errors.  All reports carry sorted keys and a schema_version field.
The random seed comes from --seed, overridden by the LOCFIN_SEED environment
variable.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from locfin import ext as _ext
from locfin import gallery as _gallery
from locfin.coalg import (
    build_coalgebra,
    conilpotency_index,
    long_quotient,
    validate_coalgebra,
)
from locfin.frontier import check_left_strict, find_standard_frontier
from locfin.lift import (
    dualize_module,
    lift_to_comodule,
    lift_to_contramodule,
    minimal_big_submodule,
    theta,
    upsilon,
)
from locfin.lincat import Window, scope_cat, validate_category
from locfin.order import (
    check_interval_finiteness,
    check_upper_lower_finite,
    compute_preorder,
    longest_strict_chain,
)
from locfin.serialize import (
    SCHEMA_VERSION,
    BadInput,
    dump_json,
    load_category,
    load_module,
    module_to_json,
)
from locfin.verdict import Verdict

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(payload: dict, exit_code: int) -> int:
    payload = dict(payload)
    payload["schema_version"] = SCHEMA_VERSION
    sys.stdout.write(dump_json(payload))
    return exit_code


def _verdict_report(v: Verdict, **extra) -> tuple[dict, int]:
    out = {"verdict": v.to_json()}
    out.update(extra)
    return out, v.exit_code()


def _resolve_scope(args):
    ref = args.category
    if ref is None:
        raise BadInput("--category is required for this subcommand")
    if ref.startswith("gallery:") and getattr(args, "window", None):
        parts = ref.split(":", 2)
        return _gallery.gallery_instantiate(parts[1], args.window)
    return load_category(ref)


def _seed(args) -> int:
    env = os.environ.get("LOCFIN_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _cmd_validate(args) -> int:
    scope = _resolve_scope(args)
    v = validate_category(scope_cat(scope))
    report, code = _verdict_report(v, scope=_describe(scope))
    return _emit(report, code)


def _cmd_analyze(args) -> int:
    scope = _resolve_scope(args)
    an = compute_preorder(scope)
    interval = check_interval_finiteness(scope)
    upper, lower = check_upper_lower_finite(scope)
    report = {
        "scope": _describe(scope),
        "preorder": an.to_json(),
        "longest_strict_chain": longest_strict_chain(an),
        "interval_finiteness": interval.to_json(),
        "upper_finiteness": upper.to_json(),
        "lower_finiteness": lower.to_json(),
    }
    return _emit(report, EXIT_OK)


def _cmd_coalgebra(args) -> int:
    scope = _resolve_scope(args)
    g = build_coalgebra(scope)
    v = validate_coalgebra(g)
    report, code = _verdict_report(v, scope=_describe(scope))
    if v.is_certified:
        report["total_dim"] = g.total_dim()
        report["long_quotient_conilpotency_index"] = conilpotency_index(long_quotient(g))
    return _emit(report, code)


def _cmd_frontier(args) -> int:
    scope = _resolve_scope(args)
    cat = scope_cat(scope)
    target = args.object
    if target not in cat.objects:
        # gallery objects are sign-padded; accept the raw integer spelling
        try:
            from locfin.lincat import obj_id

            padded = obj_id(int(target))
        except ValueError:
            padded = target
        if padded in cat.objects:
            target = padded
    v = find_standard_frontier(scope, target)
    extra = {"scope": _describe(scope), "object": str(target)}
    if v.is_certified:
        extra["frontier"] = v.data["frontier"].to_json()
    if "growth" in v.data and v.data["growth"] is not None:
        extra["growth"] = [[spec, size] for spec, size in v.data["growth"]]
    report, code = _verdict_report(v, **extra)
    return _emit(report, code)


def _cmd_lift(args) -> int:
    scope = args.category and _resolve_scope(args)
    m, scope = load_module(args.module, scope)
    if args.to == "comodule":
        rep = lift_to_comodule(m, scope)
    else:
        rep = lift_to_contramodule(m, scope)
    report = {"scope": _describe(scope), "lift": rep.to_json(), "to": args.to}
    return _emit(report, rep.exit_code())


def _cmd_dualize(args) -> int:
    scope = args.category and _resolve_scope(args)
    m, scope = load_module(args.module, scope)
    dual = dualize_module(m)
    report = {
        "scope": _describe(scope),
        "dual": module_to_json(dual, category_ref=args.category or "(input scope)"),
    }
    return _emit(report, EXIT_OK)


def _cmd_bigmin(args) -> int:
    scope = args.category and _resolve_scope(args)
    m, scope = load_module(args.module, scope)
    sub, spaces, _ = minimal_big_submodule(m, scope)
    report = {
        "scope": _describe(scope),
        "minimal_big_submodule": {
            "dims": {str(x): d for x, d in sorted(sub.dims.items()) if d},
            "total_dim": sub.total_dim(),
        },
    }
    return _emit(report, EXIT_OK)


def _cmd_exttest(args) -> int:
    scope = _resolve_scope(args)
    if not isinstance(scope, Window) or scope.name != "zchain":
        raise BadInput("exttest runs over zchain windows")
    rng = random.Random(_seed(args))
    trials = args.trials
    failures = []
    for t in range(trials):
        p = _gallery.random_zchain_module(scope, rng, max_dim=2)
        q = _gallery.random_zchain_module(scope, rng, max_dim=2)
        coc = _ext.random_cocycle(p, q, rng)
        s = _ext.build_extension(coc)
        from locfin.lift import declare_zero_extension

        for mod in (s.sub, s.mid, s.quot):
            declare_zero_extension(mod, scope)
        v = _ext.closure_test(args.kind, s, scope)
        if not v.is_certified:
            failures.append({"trial": t, "verdict": v.to_json()})
    report = {
        "scope": _describe(scope),
        "kind": args.kind,
        "trials": trials,
        "failures": failures,
    }
    return _emit(report, EXIT_OK if not failures else EXIT_REFUTED)


def _cmd_gallery(args) -> int:
    if args.action == "list":
        return _emit({"entries": _gallery.gallery_names()}, EXIT_OK)
    report = {}
    for name in _gallery.gallery_names():
        entry = _gallery.GALLERY[name]
        report[name] = {"summary": entry.summary, "default_spec": entry.default_spec}
    return _emit({"entries": report}, EXIT_OK)


_NOTE_CHECKS = {
    "validate_category": lambda scope: validate_category(scope_cat(scope)),
    "check_left_strict": check_left_strict,
    "upper_finite": lambda scope: check_upper_lower_finite(scope)[0],
    "lower_finite": lambda scope: check_upper_lower_finite(scope)[1],
}


def _cmd_report(args) -> int:
    """Run every gallery entry's recorded claims and compare verdict kinds."""
    out = {}
    mismatches = 0
    for name in _gallery.gallery_names():
        entry = _gallery.GALLERY[name]
        scope = entry.instantiate(entry.default_spec)
        claims = []
        for claim, expected in entry.notes:
            got = _NOTE_CHECKS[claim](scope).kind
            claims.append({"claim": claim, "expected": expected, "computed": got})
            if got != expected:
                mismatches += 1
        out[name] = {"scope": _describe(scope), "claims": claims}
    return _emit({"gallery": out, "mismatches": mismatches},
                 EXIT_OK if mismatches == 0 else EXIT_REFUTED)


def _describe(scope) -> str:
    if isinstance(scope, Window):
        return scope.describe()
    return f"category({len(scope.objects)} objects)"


def _build_parser() -> _Parser:
    p = _Parser(prog="locfin", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def cat_opts(sp, required=True):
        sp.add_argument("--category", required=required,
                        help="category file or gallery:name[:window]")
        sp.add_argument("--window", help="window spec (lo..hi) for gallery references")

    sp = sub.add_parser("validate", help="check the category axioms")
    cat_opts(sp)
    sp.set_defaults(fn=_cmd_validate)

    sp = sub.add_parser("analyze", help="preorder, chains, finiteness predicates")
    cat_opts(sp)
    sp.set_defaults(fn=_cmd_analyze)

    sp = sub.add_parser("coalgebra", help="build and validate the dual coalgebra")
    cat_opts(sp)
    sp.set_defaults(fn=_cmd_coalgebra)

    sp = sub.add_parser("frontier", help="find a standard frontier below an object")
    cat_opts(sp)
    sp.add_argument("--object", required=True)
    sp.set_defaults(fn=_cmd_frontier)

    sp = sub.add_parser("lift", help="lift a module to a comodule or contramodule")
    cat_opts(sp, required=False)
    sp.add_argument("--to", choices=["comodule", "contramodule"], required=True)
    sp.add_argument("--module", required=True)
    sp.set_defaults(fn=_cmd_lift)

    sp = sub.add_parser("dualize", help="componentwise dual of a module")
    cat_opts(sp, required=False)
    sp.add_argument("--module", required=True)
    sp.set_defaults(fn=_cmd_dualize)

    sp = sub.add_parser("bigmin", help="minimal submodule with contrafinite quotient")
    cat_opts(sp, required=False)
    sp.add_argument("--module", required=True)
    sp.set_defaults(fn=_cmd_bigmin)

    sp = sub.add_parser("exttest", help="random extension closure trials")
    cat_opts(sp)
    sp.add_argument("--kind", choices=[_ext.CONTRAFINITE_LEFT, _ext.COFINITE_RIGHT,
                                       _ext.COMODULE_IMAGE_RIGHT],
                    default=_ext.CONTRAFINITE_LEFT)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=_cmd_exttest)

    sp = sub.add_parser("gallery", help="list built-in example categories")
    sp.add_argument("action", nargs="?", choices=["list", "describe"], default="list")
    sp.set_defaults(fn=_cmd_gallery)

    sp = sub.add_parser("report", help="run all recorded gallery claims")
    sp.set_defaults(fn=_cmd_report)

    return p


def _normalize_argv(argv) -> list:
    """Join `--flag value` into `--flag=value` so that values like -6..-1
    are not mistaken for options."""
    out = []
    i = 0
    joinable = {"--window", "--object", "--category", "--module", "--seed", "--trials"}
    while i < len(argv):
        tok = argv[i]
        if tok in joinable and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.fn(args)
    except BadInput as exc:
        print(f"locfin: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (_gallery.UnknownGallery, _gallery.BadWindow) as exc:
        print(f"locfin: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface: every feature, headless.

Exit codes: 0 success, 1 usage error, 2 input/data error.  Output defaults
to human-readable tables; `--format json` and `--format csv` emit exactly
the same machine schemas the HTTP service uses.  File outputs are written
atomically (temp file + rename), so failures never leave partial files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import analytics, engine, exchange, loggen
from .datasets import DATASET_NAMES, load_dataset
from .errors import AbacError
from .genkit import (
    GenConfig,
    generate_edocument,
    generate_workforce,
    parse_config_file,
)
from .model import Policy
from .parser import parse_policy, serialize_policy

TABLE, JSON, CSV = "table", "json", "csv"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1, not 2."""

    def error(self, message):
        raise _UsageError(message)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not hasattr(args, "func"):
        parser.print_help()
        return 1
    try:
        return args.func(args) or 0
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AbacError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="abacbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text, needs_policy=True, formats=True):
        p = sub.add_parser(name, help=help_text)
        if needs_policy:
            p.add_argument("policy", help="path to a .abac file, or a bundled dataset name")
        if formats:
            p.add_argument("--format", choices=[TABLE, JSON, CSV], default=TABLE)
        return p

    add("stats", "dataset statistics").set_defaults(func=_cmd_stats)

    p = add("eval", "evaluate one request or enumerate matching permissions")
    p.add_argument("--user")
    p.add_argument("--res")
    p.add_argument("--act")
    p.set_defaults(func=_cmd_eval)

    p = add("check", "run a batch request CSV (columns user,resource,action; * = all)", formats=False)
    p.add_argument("requests", help="request CSV file")
    p.add_argument("-o", "--output", help="write result CSV here instead of stdout")
    p.set_defaults(func=_cmd_check)

    p = add("coverage", "permissions granted per rule")
    p.add_argument("--rules", help="score an external rules file instead of the policy's own")
    p.add_argument("--permissions", action="store_true", help="list every granted permission")
    p.set_defaults(func=_cmd_coverage)

    add("heatmap", "rule x attribute usage matrix").set_defaults(func=_cmd_heatmap)

    add("resource-access", "top/bottom resources by distinct users").set_defaults(
        func=_cmd_resource_access
    )

    p = add("loggen", "generate a synthetic access log", formats=False)
    p.add_argument("-n", type=int, required=True, help="total number of entries")
    p.add_argument("--permit-ratio", type=float, required=True)
    p.add_argument("--over", type=float, default=0.0, help="over-permission rate")
    p.add_argument("--under", type=float, default=0.0, help="under-permission rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unique", action="store_true", help="sample without replacement")
    p.add_argument("-o", "--output", help="output CSV path (default stdout)")
    p.add_argument(
        "--emit-truth",
        action="store_true",
        help="also write a <output>.truth.csv sidecar with ground truth",
    )
    p.set_defaults(func=_cmd_loggen)

    p = add("convert", "export a policy", formats=False)
    p.add_argument("--to", choices=["csv", "canonical"], required=True)
    p.add_argument(
        "-o",
        "--output",
        help="directory for csv (users.csv, resources.csv, rules.abac) or file for canonical",
    )
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("gen", help="generate a case-study dataset")
    p.add_argument("case", choices=["workforce", "edocument"])
    p.add_argument("--config", help="key=value config file (seed and size controls)")
    p.add_argument("--seed", type=int, help="overrides the config file seed")
    p.add_argument("-o", "--output", help="output .abac path (default stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", help="directory of extra .abac files; uploads persist here")
    p.set_defaults(func=_cmd_serve)

    return parser


def _load(arg: str) -> Policy:
    path = Path(arg)
    if path.exists():
        return parse_policy(path.read_text(encoding="utf-8"), path.stem)
    if arg in DATASET_NAMES:
        return load_dataset(arg)
    raise AbacError(f"no such file or bundled dataset: {arg}")


def _emit(text: str, output: str | None = None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        _atomic_write(Path(output), text.encode("utf-8"))


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _table(rows, header) -> str:
    rows = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_stats(args) -> int:
    stats = analytics.statistics(_load(args.policy))
    if args.format == JSON:
        _emit(json.dumps(stats.to_json_dict(), indent=2) + "\n")
    elif args.format == CSV:
        _emit(analytics.stats_csv(stats))
    else:
        d = stats.to_json_dict()
        _emit(_table([[k, v] for k, v in d.items()], ["metric", "value"]))
    return 0


def _cmd_eval(args) -> int:
    policy = _load(args.policy)
    if args.user and args.res and args.act:
        decision = engine.evaluate(policy, args.user, args.res, args.act)
        payload = {
            "permitted": decision.permitted,
            "matchingRules": decision.matching_rules,
        }
        if decision.note:
            payload["note"] = decision.note
        if args.format == JSON:
            _emit(json.dumps(payload, indent=2) + "\n")
        elif args.format == CSV:
            rules = "|".join(str(i) for i in decision.matching_rules)
            _emit(f"permitted,matching_rules\n{str(decision.permitted).lower()},{rules}\n")
        else:
            verdict = "PERMIT" if decision.permitted else "DENY"
            detail = f" (rules: {', '.join(map(str, decision.matching_rules))})" if decision.matching_rules else ""
            note = f" [{decision.note}]" if decision.note else ""
            _emit(f"{verdict}{detail}{note}\n")
        return 0
    permissions = engine.query(policy, user=args.user, resource=args.res, action=args.act)
    if args.format == JSON:
        payload = {
            "permissions": [{"user": p.user, "resource": p.resource, "action": p.action} for p in permissions],
            "total": len(permissions),
        }
        _emit(json.dumps(payload, indent=2) + "\n")
    elif args.format == CSV:
        lines = ["user,resource,action"]
        lines.extend(f"{p.user},{p.resource},{p.action}" for p in permissions)
        _emit("\n".join(lines) + "\n")
    else:
        _emit(_table(permissions, ["user", "resource", "action"]))
    return 0


def _cmd_check(args) -> int:
    policy = _load(args.policy)
    text = Path(args.requests).read_text(encoding="utf-8")
    _emit(engine.check_requests_csv(policy, text), args.output)
    return 0


def _cmd_coverage(args) -> int:
    policy = _load(args.policy)
    if args.rules is not None:
        rules_text = Path(args.rules).read_text(encoding="utf-8")
        coverage = analytics.external_rule_coverage(policy, rules_text)
    else:
        coverage = analytics.rule_coverage(policy)
    if args.format == JSON:
        payload = [c.to_json_dict(with_permissions=args.permissions) for c in coverage]
        _emit(json.dumps(payload, indent=2) + "\n")
    elif args.format == CSV:
        _emit(analytics.coverage_csv(coverage, with_permissions=args.permissions))
    else:
        _emit(_table([[c.rule_index, c.granted_count] for c in coverage], ["rule", "count"]))
        if args.permissions:
            for c in coverage:
                _emit(f"\nrule {c.rule_index}:\n")
                _emit(_table(c.granted, ["user", "resource", "action"]))
    return 0


def _cmd_heatmap(args) -> int:
    matrix = analytics.attribute_usage(_load(args.policy))
    if args.format == JSON:
        _emit(json.dumps(matrix.to_json_dict(), indent=2) + "\n")
    elif args.format == CSV:
        _emit(analytics.heatmap_csv(matrix))
    else:
        header = ["rule"] + [f"u:{a}" for a in matrix.user_attrs] + [f"r:{a}" for a in matrix.resource_attrs]
        rows = [[r] + list(row) for r, row in zip(matrix.rules, matrix.cells)]
        _emit(_table(rows, header))
    return 0


def _cmd_resource_access(args) -> int:
    top, bottom = analytics.resource_access(_load(args.policy))
    if args.format == JSON:
        payload = {
            "top": [p.to_json_dict() for p in top],
            "bottom": [p.to_json_dict() for p in bottom],
        }
        _emit(json.dumps(payload, indent=2) + "\n")
    elif args.format == CSV:
        _emit(analytics.resource_access_csv(top, bottom))
    else:
        _emit("most accessible:\n")
        _emit(_table([[p.resource_id, p.distinct_users] for p in top], ["resource", "users"]))
        _emit("\nleast accessible:\n")
        _emit(_table([[p.resource_id, p.distinct_users] for p in bottom], ["resource", "users"]))
    return 0


def _cmd_loggen(args) -> int:
    if args.emit_truth and not args.output:
        raise _UsageError("--emit-truth requires -o/--output")
    policy = _load(args.policy)
    try:
        cfg = loggen.LogConfig(
            n=args.n,
            permit_ratio=args.permit_ratio,
            over_rate=args.over,
            under_rate=args.under,
            seed=args.seed,
            unique=args.unique,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    entries = loggen.generate_logs(policy, cfg)
    _emit(loggen.logs_to_csv(entries), args.output)
    if args.emit_truth:
        sidecar = Path(args.output).with_suffix(".truth.csv")
        _emit(loggen.logs_to_csv(entries, with_truth=True), str(sidecar))
    return 0


def _cmd_convert(args) -> int:
    policy = _load(args.policy)
    if args.to == "canonical":
        data = exchange.export_canonical(policy)
        if args.output is None:
            sys.stdout.write(data.decode("utf-8"))
        else:
            _atomic_write(Path(args.output), data)
        return 0
    if not args.output:
        raise _UsageError("convert --to csv requires -o DIRECTORY")
    users_csv, resources_csv, rules_text = exchange.to_csv(policy)
    out = Path(args.output)
    _atomic_write(out / "users.csv", users_csv.encode("utf-8"))
    _atomic_write(out / "resources.csv", resources_csv.encode("utf-8"))
    _atomic_write(out / "rules.abac", rules_text.encode("utf-8"))
    return 0


def _cmd_gen(args) -> int:
    if args.config:
        cfg = parse_config_file(Path(args.config).read_text(encoding="utf-8"))
    else:
        cfg = GenConfig()
    if args.seed is not None:
        cfg = GenConfig(seed=args.seed, size_controls=cfg.size_controls)
    generate = generate_workforce if args.case == "workforce" else generate_edocument
    policy = generate(cfg)
    _emit(serialize_policy(policy), args.output)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = Path("frontend/dist")  # built web UI, when running from a checkout
    app = create_app(
        data_dir=Path(args.data) if args.data else None,
        ui_dir=ui_dir if ui_dir.is_dir() else None,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line entry point `colombeau`.

Every computational command prints one JSON report on stdout (or a text
rendering of it with --format text). Exit codes: 0 decided, 2 undecidable,
1 on errors, failed demos and failed suites. Logging goes to stderr.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .config import Settings, load_settings
from .core.Errors import ColombeauError, ExpressionParseError
from .core.Grid import default_grid
from .core.Parsing import parse_number, parse_point
from .core.TriState import Decision
from .demos import DEMOS, run_demo
from .gsf.Extremes import extreme_values, image_enclosure
from .gsf.Gsf import CompactlySupportedGsf, Counterexample, Gsf
from .gsf.Support import DEFAULT_VERIFY_ORDER, verify_compact_support
from .models.payloads import BoxNetPayload, CommandReport, ReportModel
from .sets.Exhaustion import exhaustion, find_covering_index
from .sets.FunctionallyCompact import FunctionallyCompactSet, member_exterior
from .sets.InternalSets import AllOfRtilde, StronglyInternalSet, member_internal, member_strongly_internal
from .sets.Validator import BoxNetValidator
from .topology.Balls import ball_member, c_set_member, u_set_member
from .topology.Metrics import metric
from .topology.Norms import norm_m, norm_m_global
from .verify import SUITE_NAMES, run_suite

logger = logging.getLogger(__name__)

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNDECIDABLE = 2

# Flags that change how a run is reported, not what it computes
_UNCACHED_ARGS = {"func", "config", "log_level", "cache_dir", "format"}

Outcome = Tuple[ReportModel, int]


# ----------------------------------------------------------------------
# Input helpers
# ----------------------------------------------------------------------

def _compact(text: str, config: Settings) -> FunctionallyCompactSet:
    validator = BoxNetValidator(BoxNetPayload.parse(text), config)
    for warning in validator.get_warnings():
        logger.warning("%s", warning)
    return validator.build_compact()


def _domain(text: Optional[str], n: int, config: Settings) -> Union[StronglyInternalSet, AllOfRtilde]:
    if text is None:
        return AllOfRtilde(n)
    return BoxNetValidator(BoxNetPayload.parse(text), config).build_domain()


def _supported(expr: str, K: FunctionallyCompactSet, config: Settings, order: int = DEFAULT_VERIFY_ORDER,
               budget: Optional[int] = None) -> Union[CompactlySupportedGsf, Counterexample]:
    return verify_compact_support(Gsf.of([expr], K.dimension), K, order=order, budget=budget, config=config)


def _decision_outcome(command: str, decision: Decision, config: Settings, **extra: Any) -> Outcome:
    state = "undecidable" if decision.is_undecidable else "decided"
    report = CommandReport(command=command, state=state, result={"decision": decision.to_dict(), **extra},
                           config=_config_dict(config))
    return report, EXIT_UNDECIDABLE if decision.is_undecidable else EXIT_DECIDED


def _counterexample_outcome(command: str, failure: Counterexample, config: Settings) -> Outcome:
    report = CommandReport(command=command, state="decided" if failure.decided else "undecidable",
                           result={"supported": False, "counterexample": failure.to_dict()},
                           config=_config_dict(config))
    return report, EXIT_ERROR if failure.decided else EXIT_UNDECIDABLE


def _config_dict(config: Settings) -> Dict[str, Any]:
    return config.model_dump(mode="json", exclude={"cache_dir", "output_format"})


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _cmd_eval(args: argparse.Namespace, config: Settings) -> Outcome:
    grid = default_grid(config)
    x = parse_point(args.at, grid=grid, config=config)
    f = Gsf.of([args.expr], x.dimension)
    value = f.eval_scalar(x, config)
    estimate = value.estimate(config)
    result = {
        "function": f.to_text(),
        "point": x.to_text(),
        "value": value.to_dict(),
        "valuation": estimate.to_dict(),
    }
    if not estimate.reliable:
        logger.warning("Valuation of %s at %s is unreliable", f.to_text(), x.to_text())
    state = "decided" if estimate.reliable else "undecidable"
    report = CommandReport(command="eval", state=state, result=result, config=_config_dict(config))
    return report, EXIT_DECIDED if estimate.reliable else EXIT_UNDECIDABLE


def _cmd_derive(args: argparse.Namespace, config: Settings) -> Outcome:
    alpha = tuple(int(a) for a in args.alpha.split(","))
    if any(a < 0 for a in alpha):
        raise ColombeauError(f"multi-index {args.alpha} has a negative entry")
    f = Gsf.of([args.expr], len(alpha))
    derivative = f.derivative(alpha, config)
    result = {"function": f.to_text(), "alpha": list(alpha), "derivative": derivative.to_text()}
    return CommandReport(command="derive", result=result, config=_config_dict(config)), EXIT_DECIDED


def _cmd_extreme(args: argparse.Namespace, config: Settings) -> Outcome:
    K = _compact(args.set, config)
    f = Gsf.of([args.expr], K.dimension)
    extremes = extreme_values(f, K, config)
    result = {"set": K.describe(), **extremes.to_dict(), "image": image_enclosure(f, K, config).to_dict()}
    return CommandReport(command="extreme", result=result, config=_config_dict(config)), EXIT_DECIDED


def _cmd_verify_support(args: argparse.Namespace, config: Settings) -> Outcome:
    K = _compact(args.set, config)
    outcome = _supported(args.expr, K, config, order=args.order, budget=args.budget)
    if isinstance(outcome, Counterexample):
        return _counterexample_outcome("verify-support", outcome, config)
    result = {"supported": True, **outcome.describe()}
    return CommandReport(command="verify-support", result=result, config=_config_dict(config)), EXIT_DECIDED


def _cmd_norm(args: argparse.Namespace, config: Settings) -> Outcome:
    K = _compact(args.set, config)
    f = _supported(args.expr, K, config)
    if isinstance(f, Counterexample):
        return _counterexample_outcome("norm", f, config)
    norm = norm_m_global(f, args.m, config) if args.global_norm else norm_m(f, args.m, config)
    payload = norm.to_payload(config)
    result = {"function": f.gsf.to_text(), "norm": payload.model_dump(mode="json")}
    reliable = payload.valuation.reliable and not payload.mismatch
    state = "decided" if reliable else "undecidable"
    report = CommandReport(command="norm", state=state, result=result, config=_config_dict(config))
    return report, EXIT_DECIDED if reliable else EXIT_UNDECIDABLE


def _cmd_metric(args: argparse.Namespace, config: Settings) -> Outcome:
    K = _compact(args.set, config)
    f = _supported(args.expr1, K, config)
    if isinstance(f, Counterexample):
        return _counterexample_outcome("metric", f, config)
    g = _supported(args.expr2, K, config)
    if isinstance(g, Counterexample):
        return _counterexample_outcome("metric", g, config)
    report = metric(f, g, args.trunc, config)
    payload = report.to_payload()
    state = "undecidable" if payload.unreliable_orders else "decided"
    result = {"f": f.gsf.to_text(), "g": g.gsf.to_text(), "metric": payload.model_dump(mode="json")}
    out = CommandReport(command="metric", state=state, result=result, config=_config_dict(config))
    return out, EXIT_UNDECIDABLE if payload.unreliable_orders else EXIT_DECIDED


def _cmd_member(args: argparse.Namespace, config: Settings) -> Outcome:
    kind = args.kind
    if kind in ("exterior", "internal", "strong"):
        if args.point is None or args.set is None:
            raise ColombeauError(f"member --{kind} needs --point and --set")
        x = parse_point(args.point, grid=default_grid(config), config=config)
        if kind == "strong":
            U = _domain(args.set, x.dimension, config)
            return _decision_outcome("member", member_strongly_internal(x, U, config), config,
                                     kind=kind, point=x.to_text())
        K = _compact(args.set, config)
        decision = member_exterior(x, K, config) if kind == "exterior" else member_internal(x, K.internal, config)
        return _decision_outcome("member", decision, config, kind=kind, point=x.to_text(), set=K.describe())

    if args.f is None or args.set is None or args.radius is None:
        raise ColombeauError(f"member --{kind} needs --f, --set and --radius")
    K = _compact(args.set, config)
    functions: List[CompactlySupportedGsf] = []
    for expr in [args.f] + ([args.g] if args.g is not None else []):
        outcome = _supported(expr, K, config)
        if isinstance(outcome, Counterexample):
            return _counterexample_outcome("member", outcome, config)
        functions.append(outcome)
    f, g = functions[0], (functions[1] if len(functions) > 1 else None)
    extra = {"kind": kind, "m": args.m, "radius": args.radius}
    if kind == "cset":
        inside = c_set_member(f, g, args.m, float(args.radius), config)
        return _decision_outcome("member", Decision.of(inside), config, **extra)
    rho = parse_number(args.radius, grid=default_grid(config), config=config)
    test = ball_member if kind == "ball" else u_set_member
    return _decision_outcome("member", test(f, g, args.m, rho, config), config, **extra)


def _cmd_exhaust(args: argparse.Namespace, config: Settings) -> Outcome:
    U = BoxNetValidator(BoxNetPayload.parse(args.domain), config).build_domain()
    if args.compact is not None:
        K = _compact(args.compact, config)
        covering = find_covering_index(K, U, config)
        result = {"covering_index": covering.to_dict(), "K_j": exhaustion(U, covering.j, config).describe()}
    else:
        j = U.moderateness_witness(config) if args.j is None else args.j
        result = {"j": j, "K_j": exhaustion(U, j, config).describe()}
    return CommandReport(command="exhaust", result=result, config=_config_dict(config)), EXIT_DECIDED


def _cmd_demo(args: argparse.Namespace, config: Settings) -> Outcome:
    report = run_demo(args.name, config)
    if report.diff:
        print(report.diff, file=sys.stderr)
    return report, EXIT_DECIDED if report.passed else EXIT_ERROR


def _cmd_verify(args: argparse.Namespace, config: Settings) -> Outcome:
    report = run_suite(args.suite, seed=config.seed, config=config, cases=args.cases)
    return report, EXIT_DECIDED if report.passed else EXIT_ERROR


# ----------------------------------------------------------------------
# Rendering and cache
# ----------------------------------------------------------------------

def render_text(data: Dict[str, Any]) -> str:
    """Plain-text rendering of a dumped report"""
    if "suite" in data:
        lines = [f"suite {data['suite']} (seed {data['seed']}): {'PASS' if data['passed'] else 'FAIL'}"]
        for p in data["properties"]:
            status = "ok" if p["passed"] else "FAIL"
            lines.append(f"  {status:4} {p['name']}  cases={p['cases']} failures={p['failures']} "
                         f"skipped={p['skipped']}")
        return "\n".join(lines)
    if "assertions" in data:
        lines = [f"demo {data['name']}: {'PASS' if data['passed'] else 'FAIL'}"]
        lines += [f"  {'ok' if ok else 'FAIL':4} {k}" for k, ok in sorted(data["assertions"].items())]
        return "\n".join(lines)
    lines = [f"{data['command']} [{data['state']}]"]
    lines += [f"  {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(data["result"].items())]
    return "\n".join(lines)


def request_key(args: argparse.Namespace, config: Settings) -> str:
    """sha256 of the canonical request: command arguments plus the computational settings"""
    request = {k: v for k, v in sorted(vars(args).items()) if k not in _UNCACHED_ARGS}
    request["settings"] = _config_dict(config)
    canonical = json.dumps(request, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _cache_path(config: Settings, key: str) -> Optional[Path]:
    if not config.cache_dir:
        return None
    return Path(config.cache_dir) / f"{key}.json"


def run_command(args: argparse.Namespace, config: Settings) -> Tuple[Dict[str, Any], int]:
    """Run the parsed command, reading and writing the report cache when one is configured"""
    path = _cache_path(config, request_key(args, config))
    if path is not None and path.exists():
        logger.info("Cache hit %s", path.name)
        entry = json.loads(path.read_text(encoding="utf-8"))
        return entry["report"], int(entry["exit"])
    report, code = args.func(args, config)
    data = report.model_dump(mode="json")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"exit": code, "report": data}, sort_keys=True, indent=2), encoding="utf-8")
    return data, code


def _emit(data: Dict[str, Any], fmt: str) -> None:
    if fmt == "text":
        print(render_text(data))
    else:
        print(json.dumps(data, sort_keys=True, indent=2))


def _error(exc: Exception, fmt: str) -> int:
    payload: Dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ExpressionParseError):
        payload["position"] = exc.position
        payload["text"] = exc.text
    if fmt == "text":
        print(f"error: {payload['message']}", file=sys.stderr)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2), file=sys.stderr)
    return EXIT_ERROR


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colombeau",
                                     description="Generalized numbers, functionally compact sets and GSF")
    parser.add_argument("--grid-base", type=float, default=None, help="epsilon grid base (> 1)")
    parser.add_argument("--k-min", type=int, default=None)
    parser.add_argument("--k-max", type=int, default=None)
    parser.add_argument("--mmax", type=int, default=None, help="largest exponent tried by the order tests")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=["json", "text"], default=None)
    parser.add_argument("--config", default=None, help="JSON file with Settings fields")
    parser.add_argument("--log-level", default="WARNING")
    parser.add_argument("--cache-dir", default=None, help="directory for content-addressed reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="Evaluate an expression at a generalized point")
    p_eval.add_argument("expr")
    p_eval.add_argument("--at", required=True, help="point, e.g. '0, eps^2'")
    p_eval.set_defaults(func=_cmd_eval)

    p_derive = sub.add_parser("derive", help="Symbolic partial derivative")
    p_derive.add_argument("expr")
    p_derive.add_argument("--alpha", required=True, help="multi-index, e.g. '1' or '2,0'")
    p_derive.set_defaults(func=_cmd_derive)

    p_extreme = sub.add_parser("extreme", help="Extreme values on a functionally compact set")
    p_extreme.add_argument("expr")
    p_extreme.add_argument("--set", required=True, help="box net JSON")
    p_extreme.set_defaults(func=_cmd_extreme)

    p_norm = sub.add_parser("norm", help="Generalized norm ||f||_m on the support witness")
    p_norm.add_argument("expr")
    p_norm.add_argument("--set", required=True, help="support witness box net JSON")
    p_norm.add_argument("--m", "--order", dest="m", type=int, default=0)
    p_norm.add_argument("--global", dest="global_norm", action="store_true", help="sup over R^n")
    p_norm.set_defaults(func=_cmd_norm)

    p_metric = sub.add_parser("metric", help="d_e and d_2 distances between two functions")
    p_metric.add_argument("expr1")
    p_metric.add_argument("expr2")
    p_metric.add_argument("--set", default="[[-1, 1]]", help="common support witness box net JSON")
    p_metric.add_argument("--trunc", type=int, default=None)
    p_metric.set_defaults(func=_cmd_metric)

    p_member = sub.add_parser("member", help="Membership tests for sets, balls, C-sets and U-sets")
    kinds = p_member.add_mutually_exclusive_group(required=True)
    for kind in ("ball", "cset", "uset", "exterior", "internal", "strong"):
        kinds.add_argument(f"--{kind}", dest="kind", action="store_const", const=kind)
    p_member.add_argument("--point", default=None)
    p_member.add_argument("--set", default=None, help="box net JSON")
    p_member.add_argument("--f", default=None)
    p_member.add_argument("--g", default=None, help="defaults to 0")
    p_member.add_argument("--m", type=int, default=0)
    p_member.add_argument("--radius", default=None)
    p_member.set_defaults(func=_cmd_member)

    p_exhaust = sub.add_parser("exhaust", help="Exhaustion sets K_j of a strongly internal domain")
    p_exhaust.add_argument("--domain", required=True, help="box net JSON of the open domain")
    which = p_exhaust.add_mutually_exclusive_group()
    which.add_argument("--j", type=int, default=None)
    which.add_argument("--compact", default=None, help="box net JSON of K; finds j with K in K_j")
    p_exhaust.set_defaults(func=_cmd_exhaust)

    p_support = sub.add_parser("verify-support", help="Check that K witnesses the compact support")
    p_support.add_argument("expr")
    p_support.add_argument("--set", required=True, help="box net JSON")
    p_support.add_argument("--order", type=int, default=DEFAULT_VERIFY_ORDER)
    p_support.add_argument("--budget", type=int, default=None)
    p_support.set_defaults(func=_cmd_verify_support)

    p_demo = sub.add_parser("demo", help="Run a worked scenario")
    p_demo.add_argument("name", choices=sorted(DEMOS))
    p_demo.set_defaults(func=_cmd_demo)

    p_verify = sub.add_parser("verify", help="Run property suites")
    p_verify.add_argument("suite", choices=SUITE_NAMES)
    p_verify.add_argument("--cases", type=int, default=None, help="cap on random cases per property")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "grid_base": args.grid_base,
        "k_min": args.k_min,
        "k_max": args.k_max,
        "m_max": args.mmax,
        "seed": args.seed,
        "output_format": args.format,
        "cache_dir": args.cache_dir,
    }


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    fmt = args.format or "json"
    try:
        config = load_settings(args.config, _overrides(args))
    except (ValueError, OSError) as exc:
        return _error(exc, fmt)
    fmt = config.output_format

    try:
        data, code = run_command(args, config)
    except (ColombeauError, ValueError) as exc:  # includes pydantic and json decode errors
        logger.debug("Command %s failed", args.command, exc_info=True)
        return _error(exc, fmt)
    _emit(data, fmt)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

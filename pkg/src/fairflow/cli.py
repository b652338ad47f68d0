"""Command-line driver.

One problem file in, one JSON result document out (CSV for ``report``).
Exit codes: 0 ok, 1 infeasible or no fair flow exists, 2 input error.
Logs go to stderr; stdout carries only the result.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .certificates import build_level_cost, is_decmin
from .core import FlowProblem, focus_profile
from .decmin import incmax_flow, narrow_box
from .errors import (
    FairFlowError,
    InfeasibleError,
    NoDecMinError,
)
from .existence import exists_decmin
from .jsonio import (
    ProblemFormatError,
    bound_to_json,
    parse_flow,
    parse_problem,
)
from .maxflow import (
    CutCertificate,
    find_feasible_mflow,
    most_violating_set,
    require_feasible,
)
from .mincost import min_cost_mflow
from .newton import compute_beta
from .oracle import OracleLimits, enumerate_flows, oracle_decmin


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairflow",
        description="Fair (decreasingly minimal) integral modular flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, leading: tuple | None = None, **kwargs) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, **kwargs)
        if leading is not None:
            cmd.add_argument(leading[0], **leading[1])
        cmd.add_argument("input", nargs="?", help="problem file (JSON)")
        cmd.add_argument("--input", dest="input_flag", help="problem file (JSON)")
        cmd.add_argument(
            "--trace", action="store_true", help="include iteration/round traces"
        )
        return cmd

    add("feasible", help="find a feasible flow or a violating node set")
    add("violating-set", help="most violating node set (feasible or not)")
    add("beta", help="smallest feasible cap for the focus upper bounds")
    add("narrow-box", help="tightened bounds describing all fair flows")
    add("decmin", help="a fair flow")
    add("cheapest-decmin", help="cheapest fair flow under the edge costs")
    add("incmax", help="an increasingly maximal flow")
    add("exists", help="does a fair flow exist under infinite bounds")
    verify = add("verify", help="check a flow for fairness, with certificate")
    verify.add_argument("--flow", required=True, help="flow file (JSON)")
    oracle = add(
        "oracle",
        leading=(
            "oracle_op",
            {"choices": ["enumerate", "decmin"], "help": "oracle operation"},
        ),
        help="brute-force reference results",
    )
    oracle.add_argument(
        "--limits",
        action="append",
        default=[],
        metavar="K=V",
        help="override enumeration caps (max_edges, max_box_width, max_enumerations)",
    )
    add("report", help="per-round reduction trace as CSV plot data")
    return parser


def _load_json(path: str, what: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ProblemFormatError(what, f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(what, f"invalid JSON in {path}: {exc}")


def _parse_limits(pairs: list[str]) -> OracleLimits:
    allowed = {"max_edges", "max_box_width", "max_enumerations"}
    overrides: dict[str, int] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or key not in allowed:
            raise ProblemFormatError("--limits", f"expected K=V with K in {sorted(allowed)}")
        try:
            overrides[key] = int(value)
        except ValueError:
            raise ProblemFormatError("--limits", f"{key} needs an integer, got {value!r}")
    return OracleLimits(**overrides)


def _flow_payload(problem: FlowProblem, values) -> dict:
    return {
        "status": "ok",
        "values": list(values),
        "F_profile_sorted_desc": list(focus_profile(problem, values)),
    }


def _rounds_payload(rounds) -> list[dict]:
    out = []
    for i, rnd in enumerate(rounds):
        entry: dict[str, Any] = {
            "round": i,
            "beta": rnd.beta,
            "level_set": sorted(rnd.level_set),
            "narrowed": sorted(rnd.narrowed),
            "focus_next": sorted(rnd.focus_next),
            "removed_tight": list(rnd.removed_tight),
            "chain": [sorted(member) for member in rnd.chain.sets]
            if rnd.chain is not None
            else None,
        }
        if rnd.nd_trace is not None:
            entry["nd_trace"] = _trace_payload(rnd.nd_trace)
        out.append(entry)
    return out


def _trace_payload(trace) -> dict:
    return {
        "iterations": [
            {
                "mu": it.mu,
                "argmax": sorted(it.argmax),
                "p": it.p_value,
                "b": it.b_value,
            }
            for it in trace.iterations
        ],
        "mu_min": trace.mu_min,
    }


def _aux_arc_payload(arc) -> dict:
    return {
        "tail": arc.tail,
        "head": arc.head,
        "forward": arc.forward,
        "origin": arc.origin,
    }


def _inf_arc_payload(arc) -> dict:
    return {
        "tail": arc.tail,
        "head": arc.head,
        "origin": arc.origin,
        "reversed": arc.reversed_,
    }


def _run(args: argparse.Namespace) -> tuple[int, str]:
    path = args.input_flag or args.input
    if path is None:
        raise ProblemFormatError("input", "no problem file given")
    problem = parse_problem(_load_json(path, "input"))
    command = args.command

    if command == "feasible":
        outcome = find_feasible_mflow(problem)
        if isinstance(outcome, CutCertificate):
            payload = {
                "status": "infeasible",
                "violating_set": sorted(outcome.nodes),
                "deficiency": outcome.deficiency,
            }
            return 1, json.dumps(payload, indent=2)
        return 0, json.dumps(_flow_payload(problem, outcome), indent=2)

    if command == "violating-set":
        certificate = most_violating_set(problem)
        payload = {
            "status": "ok",
            "set": sorted(certificate.nodes),
            "deficiency": certificate.deficiency,
        }
        return 0, json.dumps(payload, indent=2)

    if command == "beta":
        result = compute_beta(problem)
        payload = {
            "status": "ok",
            "beta": result.beta,
            "level_set": sorted(result.saturated_level_set),
            "removed_tight_edges": list(result.removed_tight_edges),
            "clamped_upper": [bound_to_json(b) for b in result.clamped_upper],
        }
        if args.trace and result.nd_trace is not None:
            payload["nd_trace"] = _trace_payload(result.nd_trace)
        return 0, json.dumps(payload, indent=2)

    if command == "narrow-box":
        box, rounds = narrow_box(problem)
        payload = {
            "status": "ok",
            "f_star": [bound_to_json(b) for b in box.f_star],
            "g_star": [bound_to_json(b) for b in box.g_star],
        }
        if args.trace:
            payload["rounds"] = _rounds_payload(rounds)
        return 0, json.dumps(payload, indent=2)

    if command in ("decmin", "cheapest-decmin"):
        box, rounds = narrow_box(problem)
        boxed = problem.with_bounds(box.f_star, box.g_star)
        if command == "decmin":
            values = require_feasible(boxed)
            payload = _flow_payload(problem, values)
        else:
            values = min_cost_mflow(boxed)
            payload = _flow_payload(problem, values)
            cost = problem.cost or (0,) * problem.edge_count
            payload["cost"] = sum(c * z for c, z in zip(cost, values))
        if args.trace:
            payload["rounds"] = _rounds_payload(rounds)
        return 0, json.dumps(payload, indent=2)

    if command == "incmax":
        values = incmax_flow(problem)
        return 0, json.dumps(_flow_payload(problem, values), indent=2)

    if command == "exists":
        result = exists_decmin(problem)
        if result.exists:
            return 0, json.dumps({"status": "ok", "exists": True}, indent=2)
        payload = {
            "status": "no-decmin",
            "exists": False,
            "witness_circuit": [_inf_arc_payload(a) for a in result.witness],
        }
        return 1, json.dumps(payload, indent=2)

    if command == "verify":
        values = parse_flow(_load_json(args.flow, "flow"), problem.edge_count)
        verdict = is_decmin(problem, values)
        if verdict.decmin:
            _, cost = build_level_cost(problem, values)
            payload = {
                "status": "ok",
                "decmin": True,
                "potential": [list(vec) for vec in verdict.potential.values],
                "levels": list(cost.levels),
            }
        else:
            payload = {
                "status": "ok",
                "decmin": False,
                "improving_circuit": [_aux_arc_payload(a) for a in verdict.circuit],
            }
        return 0, json.dumps(payload, indent=2)

    if command == "oracle":
        limits = _parse_limits(args.limits)
        if args.oracle_op == "enumerate":
            flows = enumerate_flows(problem, limits)
            payload = {
                "status": "ok",
                "count": len(flows),
                "flows": [list(f) for f in flows],
            }
        else:
            profile, flows = oracle_decmin(problem, limits)
            payload = {
                "status": "ok",
                "F_profile_sorted_desc": list(profile),
                "flows": [list(f) for f in flows],
            }
        return 0, json.dumps(payload, indent=2)

    if command == "report":
        _, rounds = narrow_box(problem)
        lines = ["round,beta,L_size,L_prime_size,F_remaining,chain_depth"]
        for i, rnd in enumerate(rounds):
            depth = len(rnd.chain) if rnd.chain is not None else 0
            beta = rnd.beta if rnd.beta is not None else ""
            lines.append(
                f"{i},{beta},{len(rnd.level_set)},{len(rnd.narrowed)},"
                f"{len(rnd.focus_next)},{depth}"
            )
        return 0, "\n".join(lines)

    raise ProblemFormatError("command", f"unknown command {command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, output = _run(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        payload = {"status": "infeasible", "message": str(exc)}
        if exc.certificate is not None:
            payload["violating_set"] = sorted(exc.certificate.nodes)
            payload["deficiency"] = exc.certificate.deficiency
        print(json.dumps(payload, indent=2))
        return 1
    except NoDecMinError as exc:
        payload = {"status": "no-decmin", "message": str(exc)}
        if exc.witness is not None:
            payload["witness_circuit"] = [_inf_arc_payload(a) for a in exc.witness]
        print(json.dumps(payload, indent=2))
        return 1
    except FairFlowError as exc:
        print(json.dumps({"status": "error", "message": str(exc)}, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())

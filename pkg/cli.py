import argparse
import json
import sys
import time
from typing import Any, Callable, Literal

from pydantic import BaseModel, ValidationError

import params
from core_group import Element, FiniteAbelianGroup, Subgroup, parse_group, parse_subgroup
from database import write_log
from duality import DualSubgroup, dual_group
from errors import (
    CapacityError,
    GroupMismatchError,
    MalformedElementError,
    PreconditionError,
    SpecParseError,
    UnknownSuiteError,
)
from oracle import SUITE_IDS, TheoremReport, run_all, run_suite
from topology import (
    PrecompactTopology,
    classification_verdicts,
    closed_family,
    closure,
    greatest_same_family,
    is_closed,
    is_dense,
    minimal_same_family,
    same_closed_family,
    topology_from_dual,
)
from zee import IntSubgroup, M_s, classify_int, closure_int, m_s, parse_descriptor

VERSION = 1

Command = Literal["closure", "is-closed", "is-dense", "family", "same-family", "greatest", "minimals", "classify",
                  "z-closure", "z-classify", "z-ms", "z-MS", "verify"]
BOOLEAN_COMMANDS = {"is-closed": "closed", "is-dense": "dense", "same-family": "same_family"}


class QueryRequest(BaseModel):
    command: Command
    group: str | None = None
    h: str | None = None
    s: str | None = None
    s2: str | None = None
    k: int | None = None
    suite: str | None = None
    max_order: int | None = None
    jobs: int | None = None
    output: Literal["text", "json"] = "text"
    strict_exit: bool = False

    def inputs(self) -> dict[str, Any]:
        return self.model_dump(exclude={"command", "output", "strict_exit"}, exclude_none=True)

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--" + name.upper() if name in ("h", "s", "s2") else "--" + name for name in missing)
            raise SpecParseError(f"{self.command} needs {flags}", self.command, len(self.command))


def _group(request: QueryRequest) -> FiniteAbelianGroup:
    request.require("group")
    return parse_group(request.group)


def _dual_subgroup(G: FiniteAbelianGroup, text: str) -> DualSubgroup:
    # dual subgroups share the generator grammar; the prefix is optional
    return parse_subgroup(text.removeprefix("dual:"), dual_group(G))


def _topology(request: QueryRequest, field: str = "s") -> tuple[FiniteAbelianGroup, PrecompactTopology]:
    request.require("group", field)
    G = _group(request)
    return G, topology_from_dual(G, _dual_subgroup(G, getattr(request, field)))


def _closure(request: QueryRequest):
    request.require("h")
    G, topo = _topology(request)
    H = parse_subgroup(request.h, G)
    closed = closure(topo, H)
    return {"closure": closed, "closed": closed == H}, None


def _is_closed(request: QueryRequest):
    request.require("h")
    G, topo = _topology(request)
    verdict = is_closed(topo, parse_subgroup(request.h, G))
    return {"closed": verdict.holds}, verdict.witness


def _is_dense(request: QueryRequest):
    request.require("h")
    G, topo = _topology(request)
    verdict = is_dense(topo, parse_subgroup(request.h, G))
    return {"dense": verdict.holds}, verdict.witness


def _family(request: QueryRequest):
    _, topo = _topology(request)
    return {"closed_family": closed_family(topo)}, None


def _same_family(request: QueryRequest):
    _, topo1 = _topology(request)
    _, topo2 = _topology(request, "s2")
    verdict = same_closed_family(topo1, topo2)
    return {"same_family": verdict.holds}, verdict.witness


def _greatest(request: QueryRequest):
    _, topo = _topology(request)
    return {"greatest": greatest_same_family(topo)}, None


def _minimals(request: QueryRequest):
    _, topo = _topology(request)
    return {"minimals": minimal_same_family(topo)}, None


def _classify(request: QueryRequest):
    G, topo = _topology(request)
    verdicts = classification_verdicts(topo)
    result = {
        "group": str(G),
        "s": topo.s,
        "verdicts": {name: verdict.holds for name, verdict in verdicts.items()},
        "kernel": topo.kernel,
        "closed_family": closed_family(topo),
        "witnesses": {name: verdict.witness for name, verdict in verdicts.items()},
    }
    return result, None


def _z_closure(request: QueryRequest):
    request.require("s", "k")
    return {"closure": str(closure_int(parse_descriptor(request.s), IntSubgroup(k=request.k)))}, None


def _z_classify(request: QueryRequest):
    request.require("s")
    return classify_int(parse_descriptor(request.s)).model_dump(), None


def _z_ms(request: QueryRequest):
    request.require("s")
    return {"m_s": str(m_s(parse_descriptor(request.s)))}, None


def _z_MS(request: QueryRequest):
    request.require("s")
    return {"M_s": str(M_s(parse_descriptor(request.s)))}, None


def _verify(request: QueryRequest):
    request.require("max_order")
    suite = request.suite or "all"
    if suite == "all":
        reports = run_all(request.max_order, request.jobs)
    else:
        reports = [run_suite(suite, request.max_order, request.jobs)]
    result = {
        "suites": [report.model_dump() for report in reports],
        "instances_checked": sum(report.instances_checked for report in reports),
        "failures": sum(len(report.failures) for report in reports),
    }
    return result, None


COMMANDS: dict[str, Callable[[QueryRequest], tuple[dict, Any]]] = {
    "closure": _closure,
    "is-closed": _is_closed,
    "is-dense": _is_dense,
    "family": _family,
    "same-family": _same_family,
    "greatest": _greatest,
    "minimals": _minimals,
    "classify": _classify,
    "z-closure": _z_closure,
    "z-classify": _z_classify,
    "z-ms": _z_ms,
    "z-MS": _z_MS,
    "verify": _verify,
}


def _text_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, list):
        return " | ".join(_text_value(v) for v in value)
    return str(value)


def _text_lines(result: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in result.items():
        if isinstance(value, dict):
            lines += _text_lines(value, f"{prefix}{key}.")
        else:
            lines.append(f"{prefix}{key}: {_text_value(value)}")
    return lines


def _json_value(value: Any) -> Any:
    """ Subgroups become their sorted generator lists, elements their coordinate lists. """
    if isinstance(value, Subgroup):
        return [list(g.coords) for g in value.generators()]
    if isinstance(value, Element):
        return list(value.coords)
    if isinstance(value, dict):
        return {key: _json_value(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def emit_report(request: QueryRequest, result: dict, witness: Any = None) -> str:
    if request.output == "json":
        payload = {"version": VERSION, "command": request.command, "input": request.inputs(),
                   "result": _json_value(result), "witness": _json_value(witness)}
        return json.dumps(payload, indent=2)
    if request.command == "verify":
        lines = [TheoremReport.model_validate(report).to_text() for report in result["suites"]]
        lines.append(f"TOTAL CHECKED {result['instances_checked']} FAILURES {result['failures']}")
        return "\n".join(lines)
    if len(result) == 1 and not isinstance(next(iter(result.values())), dict):
        lines = [_text_value(next(iter(result.values())))]
    else:
        lines = _text_lines(result)
    if witness is not None:
        lines.append(f"witness: {witness}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="Precompact topologies on finite abelian groups and on Z")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("--strict-exit", dest="strict_exit", action="store_true",
                        help="exit 1 when a boolean query answers false or verify finds a failure")

    finite = argparse.ArgumentParser(add_help=False, parents=[common])
    finite.add_argument("--group", help="e.g. Z(2)xZ(4)")
    finite.add_argument("--S", dest="s", help="dual subgroup, e.g. dual:gens=[1,0]")
    for name in ["closure", "is-closed", "is-dense"]:
        sub = commands.add_parser(name, parents=[finite])
        sub.add_argument("--H", dest="h", help="subgroup, e.g. gens=[0,2]")
    for name in ["family", "greatest", "minimals", "classify"]:
        commands.add_parser(name, parents=[finite])
    same = commands.add_parser("same-family", parents=[finite])
    same.add_argument("--S2", dest="s2")

    integers = argparse.ArgumentParser(add_help=False, parents=[common])
    integers.add_argument("--S", dest="s", help="descriptor, e.g. tors=2^2*3,free=0")
    commands.add_parser("z-closure", parents=[integers]).add_argument("--k", type=int)
    for name in ["z-classify", "z-ms", "z-MS"]:
        commands.add_parser(name, parents=[integers])

    verify = commands.add_parser("verify", parents=[common])
    verify.add_argument("--suite", default="all", help="one of " + ", ".join(SUITE_IDS) + " or all")
    verify.add_argument("--max-order", dest="max_order", type=int, default=params.MAX_ORDER)
    verify.add_argument("--jobs", type=int, default=params.JOBS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        request = QueryRequest(**vars(args))
        write_log("cli", "command", f"{request.command} {request.inputs()}")
        result, witness = COMMANDS[request.command](request)
    except SpecParseError as exc:
        print(exc.annotated(), file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except (ValidationError, UnknownSuiteError, MalformedElementError, GroupMismatchError, PreconditionError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2

    print(emit_report(request, result, witness))
    print(f"{request.command} finished in {time.perf_counter() - start:.3f}s", file=sys.stderr)

    if not request.strict_exit:
        return 0
    if request.command == "verify":
        return 1 if result["failures"] else 0
    if request.command in BOOLEAN_COMMANDS and not result[BOOLEAN_COMMANDS[request.command]]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

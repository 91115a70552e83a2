"""Command-line entry point.

Every command prints a single JSON envelope {status, payload, timing_ms} on
stdout and exits 0/1/2/3 for ok / property failed / invalid input / cap
exceeded.  "-" reads stdin, and inputs wrapped in an envelope (or in a
gen payload) are unwrapped, so commands pipe into each other.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .coloring import dichromatic_bounds, proper_3_coloring
from .constructions import (CertifiedSet, le2_quasi_kernel_obstruction,
                            longest_path_transversal, small_quasi_kernel,
                            seymour_vertex)
from .digraph import Digraph, digraph_from_json, is_strong, parse_digraph, serialize_digraph
from .ears import EarDecomposition, find_ear_decomposition, find_le_decomposition, generate_random_le
from .errors import (BudgetExceededError, EarlabError, InvalidInputError,
                     PropertyFailedError)
from .kernels import extend_kernel, restrict_kernel, trace_kernels
from .oracles import (chromatic_oracles, kernel_oracle, longest_path_oracle,
                      oriented_chromatic_oracle, quasi_kernel_oracle)
from .oriented import (build_G, tournament_T, uniqueness_census,
                       validate_reference_walks, verify_walk_property)
from .oriented import oriented_coloring_le3

DEFAULT_BUDGET = 200_000


def worker_cap() -> int:
    """Worker limit from EARLAB_THREADS; every command currently runs on a
    single worker, so the cap is honored trivially."""
    raw = os.environ.get("EARLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {source}: {exc.strerror}") from exc


def _unwrap(doc):
    if isinstance(doc, dict) and "payload" in doc:
        doc = doc["payload"]
    return doc


def load_digraph(source: str) -> Digraph:
    text = _read_text(source).strip()
    if not text:
        raise InvalidInputError("empty input")
    if text.startswith("{"):
        try:
            doc = _unwrap(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad JSON: {exc}") from exc
        if isinstance(doc, dict) and "digraph" in doc:
            doc = doc["digraph"]
        return digraph_from_json(doc)
    return parse_digraph(text)


def load_decomposition(source: str, host: Digraph) -> EarDecomposition:
    try:
        doc = _unwrap(json.loads(_read_text(source)))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON: {exc}") from exc
    if isinstance(doc, dict) and "decomposition" in doc:
        doc = doc["decomposition"]
    return EarDecomposition.from_json(doc, host)


def load_vertex_set(source: str) -> tuple[int, ...]:
    try:
        doc = _unwrap(json.loads(_read_text(source)))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON: {exc}") from exc
    if isinstance(doc, dict) and "members" in doc:
        doc = doc["members"]
    if not isinstance(doc, list) or not all(isinstance(v, int) for v in doc):
        raise InvalidInputError("vertex set must be a JSON list of integers")
    return tuple(doc)


def _decomposition_for(d: Digraph, args, min_len: int,
                       path_ears_only: bool = False) -> EarDecomposition:
    if getattr(args, "decomposition", None):
        return load_decomposition(args.decomposition, d)
    budget = getattr(args, "budget", None) or DEFAULT_BUDGET
    found = find_le_decomposition(d, i=min_len, budget=budget,
                                  allow_cycle_ears=not path_ears_only)
    if found is None:
        raise PropertyFailedError(
            f"no ear decomposition with every ear length >= {min_len} exists")
    return found


def cmd_decompose(args) -> dict:
    d = load_digraph(args.input)
    if args.min_ear_length:
        e = find_le_decomposition(d, i=args.min_ear_length,
                                  budget=args.budget or DEFAULT_BUDGET)
        if e is None:
            raise PropertyFailedError(
                "provably none: no decomposition with every ear length "
                f">= {args.min_ear_length}")
    else:
        e = find_ear_decomposition(d)
    return {"decomposition": e.to_json(), "ear_count": len(e.ears),
            "min_ear_length": e.min_ear_length}


def cmd_classify(args) -> dict:
    d = load_digraph(args.input)
    strong = is_strong(d)
    levels: dict[str, object] = {}
    max_certified = None
    blocked = not strong
    for i in range(1, args.max_level + 1):
        if blocked:
            levels[str(i)] = False
            continue
        try:
            found = find_le_decomposition(d, i=i, budget=args.budget or DEFAULT_BUDGET)
        except BudgetExceededError:
            levels[str(i)] = "unknown"
            blocked = True
            continue
        levels[str(i)] = found is not None
        if found is not None:
            max_certified = i
        else:
            blocked = True
    return {"strong": strong, "levels": levels, "max_certified": max_certified}


def cmd_seymour(args) -> dict:
    d = load_digraph(args.input)
    e = _decomposition_for(d, args, 2)
    v, report = seymour_vertex(d, e)
    return {"vertex": v, "first_out": sorted(report.first_out),
            "second_out": sorted(report.second_out),
            "out_degree": report.out_degree,
            "second_out_degree": report.second_out_degree}


def cmd_transversal(args) -> dict:
    d = load_digraph(args.input)
    e = _decomposition_for(d, args, 2)
    return longest_path_transversal(d, e).to_json()


def cmd_quasi_kernel(args) -> dict:
    d = load_digraph(args.input)
    e = _decomposition_for(d, args, 3)
    return small_quasi_kernel(d, e).to_json()


def _last_stage_parts(d: Digraph, args):
    e = _decomposition_for(d, args, 2, path_ears_only=True)
    if not e.ears:
        raise InvalidInputError("decomposition has no ears to propagate across")
    return e.stage(len(e.ears) - 1), e.ears[-1]


def cmd_kernel(args) -> dict:
    d = load_digraph(args.input)
    if args.action == "trace":
        e = _decomposition_for(d, args, 2, path_ears_only=True)
        return trace_kernels(d, e, direction=args.direction).to_json()
    if not args.set:
        raise InvalidInputError(f"kernel {args.action} needs --set")
    members = load_vertex_set(args.set)
    stage, ear = _last_stage_parts(d, args)
    op = extend_kernel if args.action == "extend" else restrict_kernel
    result = op(stage, ear, members)
    if isinstance(result, CertifiedSet):
        return result.to_json()
    return {"obstruction": True, **result.to_json()}


def cmd_color(args) -> dict:
    d = load_digraph(args.input)
    e = _decomposition_for(d, args, 2)
    mapping = proper_3_coloring(d, e)
    bounds = dichromatic_bounds(d, e, force_exact=args.exact)
    return {"coloring": mapping.to_json(), "colors_used": mapping.colors_used(),
            "dichromatic": bounds.to_json()}


def cmd_oriented(args) -> dict:
    d = load_digraph(args.input)
    e = _decomposition_for(d, args, 3)
    mapping = oriented_coloring_le3(d, e)
    return {"mapping": mapping.to_json(),
            "colors_used": mapping.colors_used(),
            "target_order": 6}


def cmd_verify_t(args) -> dict:
    t = tournament_T()
    walks_ok = validate_reference_walks()
    property_ok = verify_walk_property(t)
    census = uniqueness_census()
    payload = {"code": t.code_string(), "out_degrees": list(t.out_degrees()),
               "reference_walks_valid": walks_ok, "walk_property": property_ok,
               "iso_class_count": census.iso_class_count,
               "census": census.to_json()}
    if not (walks_ok and property_ok and census.iso_class_count == 1
            and census.witness_isomorphic_to_reference):
        raise PropertyFailedError(f"verification failed: {json.dumps(payload)}")
    return payload


def cmd_census(args) -> dict:
    return uniqueness_census().to_json()


def cmd_gen(args) -> dict:
    if args.gi is not None:
        return serialize_digraph(build_G(args.gi))
    d, e = generate_random_le(
        base_length=args.base, ear_count=args.ears,
        min_ear_length=args.min_ear_length,
        max_ear_length=args.max_ear_length or max(args.min_ear_length, 1),
        cycle_ear_probability=args.cycle_ear_prob, seed=args.seed)
    return {"digraph": serialize_digraph(d), "decomposition": e.to_json()}


def cmd_oracle(args) -> dict:
    d = load_digraph(args.input)
    if args.kind == "kernel":
        report = kernel_oracle(d, enumerate_all=args.all)
    elif args.kind == "quasi-kernel":
        report = quasi_kernel_oracle(d, enumerate_all=args.all)
    elif args.kind == "chromatic":
        report = chromatic_oracles(d)
    elif args.kind == "oriented":
        report = oriented_chromatic_oracle(d, k_max=args.kmax)
    else:
        report = longest_path_oracle(d)
    return {"quantity": report.quantity, "value": _jsonable(report.value),
            "witness": _jsonable(report.witness),
            "search_space_size": report.search_space_size,
            "details": _jsonable(report.details)}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="earlab",
        description="Construct and verify certificates on strong digraphs "
                    "with long-ear decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", help="edge list or JSON digraph; '-' for stdin")
        return p

    def with_decomposition(p):
        p.add_argument("--decomposition", help="decomposition JSON file")
        p.add_argument("--budget", type=int, default=None,
                       help="search node budget when no decomposition given")
        return p

    p = with_input(sub.add_parser("decompose", help="find an ear decomposition"))
    p.add_argument("--min-ear-length", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(handler=cmd_decompose)

    p = with_input(sub.add_parser("classify", help="which minimum ear lengths hold"))
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(handler=cmd_classify)

    p = with_decomposition(with_input(sub.add_parser(
        "seymour", help="vertex with second neighborhood at least first")))
    p.set_defaults(handler=cmd_seymour)

    p = with_decomposition(with_input(sub.add_parser(
        "transversal", help="independent set meeting every longest path")))
    p.set_defaults(handler=cmd_transversal)

    p = with_decomposition(with_input(sub.add_parser(
        "quasi-kernel", help="small quasi-kernel construction")))
    p.set_defaults(handler=cmd_quasi_kernel)

    p = sub.add_parser("kernel", help="kernel propagation across the last ear")
    p.add_argument("action", choices=["extend", "restrict", "trace"])
    with_decomposition(with_input(p))
    p.add_argument("--set", help="vertex set JSON (kernel to propagate)")
    p.add_argument("--direction", choices=["forward", "backward"],
                   default="forward")
    p.set_defaults(handler=cmd_kernel)

    p = with_decomposition(with_input(sub.add_parser(
        "color", help="proper 3-coloring and dichromatic bounds")))
    p.add_argument("--exact", action="store_true",
                   help="force the exact dichromatic oracle")
    p.set_defaults(handler=cmd_color)

    p = with_decomposition(with_input(sub.add_parser(
        "oriented", help="homomorphism into the order-6 tournament")))
    p.set_defaults(handler=cmd_oriented)

    p = sub.add_parser("verify-T", help="walk property, fixtures, and census")
    p.set_defaults(handler=cmd_verify_t)

    p = sub.add_parser("census", help="order-6 walk-property census")
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser("gen", help="generate instances")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--le", action="store_true",
                       help="random digraph with an ear decomposition")
    group.add_argument("--gi", type=int, default=None,
                       help="quadratic-blowup family member")
    p.add_argument("--base", type=int, default=3)
    p.add_argument("--ears", type=int, default=3)
    p.add_argument("--min-ear-length", type=int, default=2)
    p.add_argument("--max-ear-length", type=int, default=None)
    p.add_argument("--cycle-ear-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive reference checks")
    p.add_argument("kind", choices=["kernel", "quasi-kernel", "chromatic",
                                    "oriented", "longest-path"])
    with_input(p)
    p.add_argument("--kmax", type=int, default=7)
    p.add_argument("--all", action="store_true",
                   help="enumerate every certificate, not just the witness")
    p.set_defaults(handler=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    status, payload, error, code = "ok", None, None, 0
    try:
        payload = args.handler(args)
    except EarlabError as exc:
        status, error, code = exc.status, str(exc), exc.exit_code
    envelope = {"status": status, "payload": payload,
                "timing_ms": int((time.perf_counter() - started) * 1000)}
    if error is not None:
        envelope["error"] = error
    json.dump(envelope, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

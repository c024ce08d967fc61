"""Command-line front end.

Every subcommand prints one JSON report on standard output.  Exit status is
0 on success, 1 when the input violates a mathematical precondition and 2
when the input is malformed.  Reports are byte-identical for identical
inputs; wall-clock timing is included only with ``--timing``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .errors import CoverToolError, DomainError, MalformedInput
from .graphcore import Graph, GraphAction, arc_regularity, quotient_by_involution
from .permgroup import Permutation, PermGroup

SUBCOMMANDS = ("classify", "cdc-test", "lift-check", "classes", "coset-graph",
               "family", "chain", "quotient", "sreg")


@dataclass
class RunReport:
    command: list[str]
    inputs_digest: str
    results: dict
    budget_flags: list[str] = field(default_factory=list)
    timing: float | None = None

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "budget_flags": self.budget_flags,
        }
        if self.timing is not None:
            out["timing_seconds"] = self.timing
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def loads(cls, text: str) -> RunReport:
        d = json.loads(text)
        return cls(d["command"], d["inputs_digest"], d["results"], d["budget_flags"], d.get("timing_seconds"))


# --- input resolution ------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg}") from None


def _digest_inputs(args: argparse.Namespace) -> str:
    h = hashlib.sha256()
    for key in sorted(vars(args)):
        if key in ("func", "timing", "json_out", "dot"):
            continue
        value = getattr(args, key)
        h.update(f"{key}={value!r};".encode())
        if isinstance(value, str) and os.path.isfile(value):
            with open(value, "rb") as fh:
                h.update(fh.read())
    return h.hexdigest()[:16]


def resolve_graph(spec: str):
    """A fixture (census name, GP(n,k), C(n;...)) or a graph JSON file."""
    from .fixtures import resolve

    if os.path.isfile(spec):
        return Graph.from_json(_read_json(spec)), None
    fx = resolve(spec)
    return fx.graph, fx


def _perm_from_json(item, degree: int) -> Permutation:
    if isinstance(item, str):
        return Permutation.parse(item, degree)
    if isinstance(item, list):
        try:
            return Permutation([int(x) for x in item])
        except (TypeError, ValueError):
            raise MalformedInput(f"bad permutation {item!r}") from None
    raise MalformedInput(f"bad permutation {item!r}")


def load_group_file(path: str) -> PermGroup:
    """``{"degree": n, "generators": [...]}``; generators in 1-based cycle notation or as image lists."""
    data = _read_json(path)
    try:
        degree = int(data["degree"])
        gens = [_perm_from_json(g, degree) for g in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"bad group JSON: {exc}") from None
    return PermGroup(degree, gens)


def resolve_group(spec: str, fixture, graph: Graph) -> PermGroup:
    if os.path.isfile(spec):
        G = load_group_file(spec)
    elif fixture is not None and spec in fixture.groups:
        G = fixture.groups[spec]
    else:
        known = sorted(fixture.groups) if fixture is not None else []
        raise MalformedInput(f"unknown group {spec!r}; this graph provides {known}")
    if G.degree != graph.n:
        raise MalformedInput(f"group degree {G.degree} differs from {graph.n} vertices")
    return G


def resolve_voltage(spec: str, graph: Graph, fixture):
    from .voltage import VoltageAssignment

    if spec in ("cdc", "all-ones"):
        return VoltageAssignment.constant(graph)
    if spec == "fixture":
        if fixture is None or fixture.voltage is None:
            raise MalformedInput("this graph has no stored voltage assignment")
        return fixture.voltage
    if os.path.isfile(spec):
        return VoltageAssignment.from_json(_read_json(spec), graph)
    text = spec[2:] if spec.lower().startswith("0x") else spec
    try:
        vec = int(text, 16)
    except ValueError:
        raise MalformedInput(f"voltage {spec!r} is not a file, 'cdc', 'all-ones' or a hex class vector") from None
    return VoltageAssignment.from_class_vector(graph, vec)


# --- subcommands -----------------------------------------------------------

def cmd_classify(args):
    from .lifting import classify_split, mixed_criterion
    from .voltage import derived_cover, is_cdc

    X, fx = resolve_graph(args.graph)
    zeta = resolve_voltage(args.voltage, X, fx)
    G = resolve_group(args.group, fx, X)
    report = classify_split(derived_cover(X, zeta), G)
    out = report.to_json()
    out["cdc"] = is_cdc(X, zeta)
    if report.kind.has_sectional:
        out["has_transitive_index2_subgroup"] = mixed_criterion(derived_cover(X, zeta), G, report)
    return out


def cmd_cdc_test(args):
    from .voltage import is_cdc, is_connected_cover

    X, fx = resolve_graph(args.graph)
    zeta = resolve_voltage(args.voltage, X, fx)
    return {"is_cdc": is_cdc(X, zeta), "connected": is_connected_cover(X, zeta)}


def cmd_lift_check(args):
    from .voltage import lifts_group, sectional_voltage_witness

    X, fx = resolve_graph(args.graph)
    zeta = resolve_voltage(args.voltage, X, fx)
    G = resolve_group(args.group, fx, X)
    out = {"lifts": lifts_group(X, zeta, G)}
    if out["lifts"]:
        w = sectional_voltage_witness(X, zeta, G)
        out["sectional_witness"] = None if w is None else [[u, v, b] for (u, v), b in zip(X.edges, w.bits)]
    return out


def cmd_classes(args):
    from .voltage import admissible_classes, derived_cover, is_cdc

    X, fx = resolve_graph(args.graph)
    G = resolve_group(args.group, fx, X)
    space = admissible_classes(X, G)
    classes = []
    for vec in space.vectors():
        zeta = space.voltage(vec)
        classes.append({"vector": format(vec, "x"), "cdc": is_cdc(X, zeta),
                        "connected": derived_cover(X, zeta).is_connected()})
    return {"betti": space.betti, "dimension": space.dimension,
            "basis": [format(v, "x") for v in space.basis], "classes": classes}


def cmd_coset_graph(args):
    from .cosetfam import CosetGraphSpec, coset_graph
    from .permgroup import Subgroup

    G = load_group_file(args.group)
    H = load_group_file(args.stabilizer)
    if H.degree != G.degree:
        raise MalformedInput("stabilizer degree differs from group degree")
    b = Permutation.parse(args.b, G.degree)
    spec = CosetGraphSpec.build(G, Subgroup(G, tuple(H.generators)), b)
    cg = coset_graph(spec, args.budget_vertices)
    return {
        "graph": cg.graph.to_json(),
        "valency": spec.valency,
        "double_coset_size": len(spec.D),
        "connected": cg.connected,
        "generator_actions": [a.tolist() for a in cg.generator_actions],
    }


def cmd_family(args):
    from .cosetfam import family_materialize, family_verify

    out = {}
    if args.verify or not args.materialize:
        out["verify"] = family_verify(args.k).to_json()
    if args.materialize:
        out["materialize"] = family_materialize(args.k, args.budget_vertices).to_json()
    return out


def cmd_chain(args):
    from .chains import explore, verify_atmost2

    X, fx = resolve_graph(args.graph)
    G = resolve_group(args.group, fx, X)
    summary = explore(X, G, args.depth, args.budget_vertices, follow=args.follow)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(summary.to_dot())
    out = summary.to_json()
    out["atmost2"] = verify_atmost2(summary)
    return out, summary.partial


def cmd_quotient(args):
    X, _ = resolve_graph(args.graph)
    c = Permutation.parse(args.involution, X.n)
    Q, zeta = quotient_by_involution(X, c)
    return {"quotient": Q.to_json(), "voltages": zeta.to_json()["voltages"]}


def cmd_sreg(args):
    X, fx = resolve_graph(args.graph)
    G = resolve_group(args.group, fx, X)
    reg = arc_regularity(GraphAction(X, G))
    return {"s": reg.s, "verified": reg.verified}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covertool", description="2-covers of symmetric graphs")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--json-out", help="also write the report to this path")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add(name, func, *opts):
        sp = sub.add_parser(name)
        for o in opts:
            o(sp)
        sp.set_defaults(func=func)
        return sp

    graph = lambda sp: sp.add_argument("--graph", required=True)
    group = lambda sp: sp.add_argument("--group", required=True)
    voltage = lambda sp: sp.add_argument("--voltage", required=True)
    budget = lambda sp: sp.add_argument("--budget-vertices", type=int, default=None)

    add("classify", cmd_classify, graph, voltage, group)
    add("cdc-test", cmd_cdc_test, graph, voltage)
    add("lift-check", cmd_lift_check, graph, voltage, group)
    add("classes", cmd_classes, graph, group)
    sp = add("coset-graph", cmd_coset_graph, group, budget)
    sp.add_argument("--stabilizer", required=True)
    sp.add_argument("--b", required=True)
    sp = add("family", cmd_family, budget)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--materialize", action="store_true")
    sp = add("chain", cmd_chain, graph, group, budget)
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--follow", choices=("all", "split", "nonsplit"), default="all")
    sp.add_argument("--dot", help="write the chain diagram in DOT format to this path")
    sp = add("quotient", cmd_quotient, graph)
    sp.add_argument("--involution", required=True, help="1-based cycle notation")
    add("sreg", cmd_sreg, graph, group)
    return p


_DEFAULT_BUDGETS = {"coset-graph": 1_000_000, "family": 1_000_000, "chain": 5000}


def dispatch(argv: list[str] | None = None) -> tuple[int, str]:
    """Run one command; returns the exit status and the JSON text printed."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), ""
    if getattr(args, "budget_vertices", 0) is None:
        args.budget_vertices = _DEFAULT_BUDGETS[args.subcommand]
    start = time.perf_counter()
    digest = _digest_inputs(args)
    flags: list[str] = []
    try:
        result = args.func(args)
        if isinstance(result, tuple):
            result, flags = result
        status = 0
    except MalformedInput as exc:
        result, status = {"error": {"type": type(exc).__name__, "message": str(exc)}}, 2
    except (DomainError, CoverToolError) as exc:
        result, status = {"error": {"type": type(exc).__name__, "message": str(exc)}}, 1
    timing = round(time.perf_counter() - start, 6) if args.timing else None
    report = RunReport(argv, digest, result, list(flags), timing)
    text = report.dumps()
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    return status, text


def main(argv: list[str] | None = None) -> int:
    status, text = dispatch(argv)
    if text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

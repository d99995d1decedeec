"""JSON formats for instances, parametric networks and solver results.

Rationals travel as "p/q" strings (plain integers are also accepted).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .flow import (SINK_SIDE, SOURCE_SIDE, LinearCapacity, ParametricNetwork, constant,
                   parametric)
from .oracles import DirectedCutOracle, HyperedgeCutOracle, OracleError, TableOracle
from .parametric import INF, ParametricCut
from .penalties import QuadraticPenalty, make_quadratic


class ParseError(ValueError):
    pass


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {v!r}") from exc
    raise ParseError(f"expected an integer or a 'p/q' string, got {v!r}")


def format_rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _int(v, what) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{what} must be an integer, got {v!r}")
    return v


@dataclass(frozen=True)
class Instance:
    n: int
    oracles: tuple
    penalty: QuadraticPenalty


def oracle_to_dict(o) -> dict:
    if isinstance(o, TableOracle):
        return {"type": "table", "support": list(o.support), "values": list(o.values)}
    if isinstance(o, HyperedgeCutOracle):
        return {"type": "hyperedge_cut", "support": list(o.support), "weight": o.weight}
    if isinstance(o, DirectedCutOracle):
        if len(o.arcs) == 1 and o.arcs[0][:2] == tuple(o.support):
            return {"type": "directed_edge", "support": list(o.support),
                    "capacity": o.arcs[0][2]}
        return {"type": "directed_edge", "support": list(o.support),
                "arcs": [list(a) for a in o.arcs]}
    raise TypeError(f"cannot serialize {o!r}")


def oracle_from_dict(d: dict, n: int):
    try:
        kind = d["type"]
        support = [_int(u, "support element") for u in d["support"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"function entry needs 'type' and 'support': {d!r}") from exc
    if any(u < 1 or u > n for u in support):
        raise OracleError(f"support {support} outside 1..{n}")
    if kind == "table":
        values = d.get("values")
        if not isinstance(values, list):
            raise ParseError("table function needs a 'values' list")
        return TableOracle(support, [_int(v, "table value") for v in values])
    if kind == "hyperedge_cut":
        return HyperedgeCutOracle(support, _int(d.get("weight"), "weight"))
    if kind == "directed_edge":
        if "arcs" in d:
            arcs = [(_int(u, "arc tail"), _int(v, "arc head"), _int(c, "capacity"))
                    for u, v, c in d["arcs"]]
        else:
            if len(support) != 2:
                raise ParseError("directed_edge with 'capacity' needs a support [tail, head]")
            arcs = [(support[0], support[1], _int(d.get("capacity"), "capacity"))]
        return DirectedCutOracle(support, arcs)
    raise ParseError(f"unknown function type {kind!r}")


def instance_to_dict(inst: Instance) -> dict:
    return {
        "ground_set": inst.n,
        "functions": [oracle_to_dict(o) for o in inst.oracles],
        "penalty": {"type": "quadratic",
                    "a": [format_rational(v) for v in inst.penalty.a],
                    "c": [format_rational(v) for v in inst.penalty.c]},
    }


def instance_from_dict(d: Any) -> Instance:
    if not isinstance(d, dict):
        raise ParseError("instance must be a JSON object")
    try:
        n = _int(d["ground_set"], "ground_set")
        funcs = d["functions"]
        pen = d["penalty"]
    except KeyError as exc:
        raise ParseError(f"instance is missing {exc}") from exc
    if n < 1:
        raise ParseError("ground_set must be at least 1")
    if not isinstance(funcs, list):
        raise ParseError("'functions' must be a list")
    if not isinstance(pen, dict) or pen.get("type") != "quadratic":
        raise ParseError("penalty must be {'type': 'quadratic', 'a': [...], 'c': [...]}")
    a = [parse_rational(v) for v in pen.get("a", [])]
    c = [parse_rational(v) for v in pen.get("c", [])]
    if len(a) != n or len(c) != n:
        raise ParseError(f"penalty vectors must have length {n}")
    oracles = tuple(oracle_from_dict(f, n) for f in funcs)
    return Instance(n, oracles, make_quadratic(a, c))


def network_from_dict(d: Any) -> ParametricNetwork:
    if not isinstance(d, dict):
        raise ParseError("network must be a JSON object")
    try:
        verts = list(d["vertices"])
        arcs_in = d["arcs"]
    except (KeyError, TypeError) as exc:
        raise ParseError("network needs 'vertices' and 'arcs'") from exc
    s = d.get("source", "s")
    t = d.get("sink", "t")
    for term in (s, t):
        if term not in verts:
            verts.append(term)
    arcs = {}
    for a in arcs_in:
        try:
            e = (a["from"], a["to"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"arc needs 'from' and 'to': {a!r}") from exc
        if "const" in a:
            cap = constant(parse_rational(a["const"]))
        elif "slope" in a:
            side = a.get("side")
            if side not in (SOURCE_SIDE, SINK_SIDE):
                raise ParseError(f"parametric arc {e} needs side 'source' or 'sink'")
            cap = parametric(LinearCapacity(parse_rational(a.get("base", 0)),
                                            parse_rational(a["slope"])), side)
        else:
            raise ParseError(f"arc {e} needs 'const' or 'slope'")
        if e in arcs:
            raise ParseError(f"duplicate arc {e}")
        arcs[e] = cap
    return ParametricNetwork(tuple(verts), s, t, arcs)


def network_to_dict(net: ParametricNetwork) -> dict:
    arcs = []
    for (u, v), c in net.arcs.items():
        if c.is_constant:
            arcs.append({"from": u, "to": v, "const": format_rational(c.shift)})
        elif isinstance(c.func, LinearCapacity) and c.shift == 0:
            arcs.append({"from": u, "to": v, "base": format_rational(c.func.base),
                         "slope": format_rational(c.func.slope), "side": c.side})
        else:
            raise TypeError(f"arc {(u, v)} has a capacity that cannot be serialized")
    return {"vertices": list(net.vertices), "source": net.source, "sink": net.sink,
            "arcs": arcs}


def cut_to_dict(cut: ParametricCut) -> dict:
    return {
        "lambda_min": format_rational(cut.lam_min),
        "lambda_max": format_rational(cut.lam_max),
        "breakpoints": [format_rational(b) for b in cut.breakpoints],
        "tau": {str(v): ("inf" if lam == INF else format_rational(lam))
                for v, lam in cut.tau.items()},
    }


def result_to_dict(res) -> dict:
    return {
        "x": [float(v) for v in res.x],
        "x_exact": [format_rational(v) for v in res.x],
        "y": list(res.y_scaled),
        "scale": res.scale,
        "y_exact": [format_rational(v) for v in res.y],
        "decomposition": [list(p) for p in res.decomposition],
        "constant_offset": res.constant_offset,
        "trace": [float(v) for v in res.trace],
        "delta": res.delta,
        "zeta": res.zeta,
        "epsilon": res.epsilon,
        "iterations": res.iterations,
        "iteration_bound": res.iteration_bound,
        "certificate": float(res.certificate),
        "breakpoints": cut_to_dict(res.final_cut) if res.final_cut is not None else None,
    }


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_instance(path: str) -> Instance:
    return instance_from_dict(load_json(path))


def load_network(path: str) -> ParametricNetwork:
    return network_from_dict(load_json(path))

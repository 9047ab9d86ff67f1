"""Problem files, command dispatch and report emission.

A problem file is a JSON object with exactly one of the keys ``toric``,
``orlov``, ``curves_pn``, ``curves_fm`` or ``preset``; see
``schemas/input.v1.json``. Reports are plain JSON-compatible dictionaries
wrapped in :class:`Report`, so ``Report.from_json(emit(r, "json")) == r``.
"""

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import jsonschema

from . import __version__, curves, lattice, orlov, presets, toric
from .errors import GkzError, SchemaError, UnsupportedFormat

SCHEMA_VERSION = "1"
COMMANDS = ("fan", "chamber", "k0", "collection", "orlov", "curves-count", "curves-abyss")
FORMATS = ("json", "text", "dot")

_KINDS = {
    "fan": ("toric",), "chamber": ("toric",), "k0": ("toric",), "collection": ("toric",),
    "orlov": ("orlov",), "curves-count": ("curves_pn",),
    "curves-abyss": ("curves_fm", "curves_pn"),
}


class UsageError(Exception):
    """Bad command-line usage (exit code 64)."""


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    data: dict


@dataclass
class Report:
    command: str
    input: dict
    result: dict
    provenance: dict

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "command": self.command,
                "input": self.input, "result": self.result,
                "provenance": self.provenance}

    @classmethod
    def from_dict(cls, obj) -> "Report":
        return cls(obj["command"], obj["input"], obj["result"], obj["provenance"])

    @classmethod
    def from_json(cls, text) -> "Report":
        return cls.from_dict(json.loads(text))


# Parsing ----------------------------------------------------------------------------

def input_schema() -> dict:
    text = resources.files("gkz").joinpath("schemas/input.v1.json").read_text("utf-8")
    return json.loads(text)


def _field(error) -> str:
    path = ".".join(str(p) for p in error.absolute_path)
    return path or "<root>"


def _rational(value, where):
    try:
        return lattice.to_fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise SchemaError(where, f"{value!r} is not an exact rational") from None


def parse_problem(obj) -> ProblemFile:
    """Validate a decoded problem file; presets are expanded here."""
    validator = jsonschema.Draft202012Validator(input_schema())
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(_field(err), err.message)
    (kind, data), = obj.items()
    if kind == "preset":
        return parse_problem(presets.expand(data["name"], data.get("parameters", [])))

    if kind == "toric":
        r = data["rank"]
        for i, col in enumerate(data["weights"]):
            if len(col) != r:
                raise SchemaError(f"toric.weights.{i}", f"expected {r} entries, got {len(col)}")
        if len(data["character"]) != r:
            raise SchemaError("toric.character", f"expected {r} entries")
        chars = [_rational(x, f"toric.character.{i}") for i, x in enumerate(data["character"])]
        data = dict(data, character=[lattice.format_rational(x) for x in chars])
        data.setdefault("twist_d", 0)
    elif kind in ("curves_pn", "curves_fm"):
        ws = [_rational(x, f"{kind}.weights.{i}") for i, x in enumerate(data["weights"])]
        for i, w in enumerate(ws):
            if w <= 0:
                raise SchemaError(f"{kind}.weights.{i}", "weights must be positive")
        data = dict(data, weights=[lattice.format_rational(x) for x in ws])
        if kind == "curves_pn":
            data.setdefault("group", "SL2")
        else:
            n = len(ws)
            entries = []
            raw = data.get("a", [])
            if isinstance(raw, dict):
                raw = [[[int(m) for m in k.split(",")], v] for k, v in raw.items()]
            for i, (S, v) in enumerate(raw):
                if sorted(set(S)) != S:
                    raise SchemaError(f"curves_fm.a.{i}", "subsets must be sorted arrays without repeats")
                if S and S[-1] > n:
                    raise SchemaError(f"curves_fm.a.{i}", f"mark {S[-1]} exceeds n={n}")
                q = _rational(v, f"curves_fm.a.{i}")
                if q > 0:
                    raise SchemaError(f"curves_fm.a.{i}", "coefficients must be nonpositive")
                entries.append([S, lattice.format_rational(q)])
            data = dict(data, a=entries)
    return ProblemFile(kind, data)


def parse_input(source=None) -> ProblemFile:
    """Read a problem file from a path, ``"-"``/None (stdin) or a file object."""
    try:
        if source is None or source == "-":
            text = sys.stdin.read()
        elif hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except UnicodeDecodeError as exc:
        raise SchemaError("<file>", f"not UTF-8: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("<file>", f"invalid JSON: {exc}") from None
    return parse_problem(obj)


# Building library objects -------------------------------------------------------------

def toric_problem(pf: ProblemFile):
    d = pf.data
    labels = tuple(d["labels"]) if d.get("labels") else None
    P = toric.GitProblem(d["rank"], tuple(tuple(c) for c in d["weights"]), labels)
    chi = tuple(Fraction(x) for x in d["character"])
    return P, chi


def fm_linearization(pf: ProblemFile) -> curves.FmLinearization:
    d = pf.data
    if pf.kind == "curves_pn":
        return curves.FmLinearization(0, tuple(Fraction(x) for x in d["weights"]))
    a = {frozenset(S): Fraction(v) for S, v in d.get("a", [])}
    try:
        return curves.FmLinearization(d["j"], tuple(Fraction(x) for x in d["weights"]), a,
                                      bound=d.get("bound"), mu_bound=d.get("mu_bound"))
    except ValueError as exc:
        raise SchemaError("curves_fm", str(exc)) from None


# Payloads -----------------------------------------------------------------------------

def _q(x) -> str:
    return lattice.format_rational(x)


def _qs(v) -> list:
    return [_q(x) for x in v]


def wall_payload(w: toric.WallCrossing) -> dict:
    return {"lambda": list(w.lam), "weights": list(w.weights),
            "fixed_columns": list(w.fixed), "nu_plus": w.nu_plus,
            "nu_minus": w.nu_minus, "t_plus": w.t_plus, "t_minus": w.t_minus,
            "mu": w.mu, "twist_lift": list(w.twist_lift), "twists": list(w.twist_range)}


def tree_payload(tree: toric.SodTree) -> dict:
    out = {"kind": tree.kind, "rank": tree.problem.rank,
           "columns": [list(c) for c in tree.problem.columns],
           "character": _qs(tree.character)}
    if tree.kind == "node":
        out["seed"] = tree.seed
        blocks = []
        for b in tree.blocks:
            entry = wall_payload(b.crossing.wall)
            entry["t"] = _q(b.crossing.t)
            entry["point"] = _qs(b.crossing.point)
            entry["copies"] = len(b.copies)
            entry["child"] = tree_payload(b.copies[0][1]) if b.copies else None
            blocks.append(entry)
        out["blocks"] = blocks
    return out


def _seeds(tree, acc=None):
    acc = set() if acc is None else acc
    if tree.kind == "node":
        acc.add(tree.seed)
        for b in tree.blocks:
            if b.copies:
                _seeds(b.copies[0][1], acc)
    return acc


def _toric_result(command, pf, seed, twist_d):
    P, chi = toric_problem(pf)
    P = toric.validate(P)
    prov = {}
    if command == "k0":
        result = {"k0": toric.k0_rank(P, chi)}
    elif command == "chamber":
        sig = toric.chamber_signature(P, chi)
        result = {"signature": sorted(list(s) for s in sig),
                  "sigma_bases": [{"sigma": list(s), "index": i}
                                  for s, i in toric.sigma_bases(P, chi)],
                  "k0": toric.k0_rank(P, chi),
                  "anticanonical": list(toric.anticanonical(P)),
                  "functional": list(P.functional)}
    elif command == "collection":
        d = pf.data.get("twist_d", 0) if twist_d is None else twist_d
        tree = toric.exceptional_collection(P, chi, d, seed)
        objs = toric.flatten(tree)
        k0 = toric.k0_rank(P, chi)
        result = {"tree": tree_payload(tree), "length": len(objs), "k0": k0,
                  "k0_matches": len(objs) == k0, "twist_d": d,
                  "objects": [{"character": list(o.character),
                               "chain": [{"lambda": list(l.lam), "fixed_columns": list(l.fixed),
                                          "twist": l.twist} for l in o.chain]}
                              for o in objs]}
        prov["seeds_used"] = sorted(_seeds(tree))
    else:  # fan
        g = toric.chamber_graph(P)
        idx = dict(toric._nonsingular_sigmas(P))
        result = {"chambers": [{"id": i, "empty": not sig,
                                "signature": sorted(list(s) for s in sig),
                                "k0": sum(idx[s] for s in sig)}
                               for i, sig in enumerate(g.nodes)],
                  "walls": [{"source": a, "target": b, "normal": list(h)} for a, b, h in g.edges],
                  "hyperplanes": [list(h) for h in toric.hyperplanes(P)]}
    return result, prov


def _orlov_result(pf, twist_d):
    spec = orlov.CISpec(pf.data["n"], tuple(pf.data["degrees"]))
    rep = orlov.orlov_report(spec, 0 if twist_d is None else twist_d)
    P, lam, pot = orlov.build_lg(spec)
    return {"a": rep.a, "case": rep.case, "engine_mu": rep.engine_mu,
            "sigma_side_objects": list(rep.sigma_side_objects),
            "lg_side_objects": list(rep.lg_side_objects),
            "sigma_side": rep.sigma_side, "lg_side": rep.lg_side,
            "model": {"columns": [list(c) for c in P.columns], "lambda": list(lam),
                      "potential_character": list(pot)},
            "twist_d": 0 if twist_d is None else twist_d}, {}


def _curves_count_result(pf, seed, group):
    group = group or pf.data.get("group", "SL2")
    d = tuple(Fraction(x) for x in pf.data["weights"])
    curves.PnLinearization(d, group)
    count = curves.collection_count_pn(d, seed)
    pgl2 = count.even if curves.pgl2_linearizable(d) else None
    return {"sl2": [count.even, count.odd], "pgl2": pgl2, "group": group,
            "cleared_weights": list(curves.cleared_weights(d))}, {}


def _abyss_result(pf, seed):
    lin = fm_linearization(pf)
    cert = curves.find_abyss_path(lin, seed)
    return {"j": lin.j, "bound": lin.bound, "mu_bound": lin.mu_bound,
            "method": cert.method, "start": _qs(cert.start),
            "crossings": [{"side": list(c.side), "wall": list(c.wall.marks),
                           "point": _qs(c.point), "mu": c.mu} for c in cert.crossings],
            "terminal": _qs(cert.terminal), "empty_mark": cert.empty_mark,
            "all_sides_small": all(2 * len(c.side) <= lin.n for c in cert.crossings)}, \
        {"seed_used": cert.seed}


def run(problem: ProblemFile, command: str, seed: int = 0, twist_d=None, group=None) -> Report:
    """Dispatch a command on a parsed problem."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    if problem.kind not in _KINDS[command]:
        raise UsageError(f"command {command!r} needs a {' or '.join(_KINDS[command])} problem, "
                         f"got {problem.kind}")
    if problem.kind == "toric":
        result, prov = _toric_result(command, problem, seed, twist_d)
    elif command == "orlov":
        result, prov = _orlov_result(problem, twist_d)
    elif command == "curves-count":
        result, prov = _curves_count_result(problem, seed, group)
    else:
        result, prov = _abyss_result(problem, seed)
    provenance = {"seed": seed, "version": __version__, **prov}
    return Report(command, {problem.kind: problem.data}, result, provenance)


# Emission ------------------------------------------------------------------------------

def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return _text(report)
    if fmt == "dot":
        if report.command != "fan":
            raise UnsupportedFormat("dot output is only available for the fan command")
        return _dot(report)
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _dot(report) -> str:
    lines = ["graph chambers {"]
    for c in report.result["chambers"]:
        label = "empty" if c["empty"] else f"k0={c['k0']}"
        lines.append(f'  c{c["id"]} [label="{label}"];')
    for w in report.result["walls"]:
        normal = ",".join(str(x) for x in w["normal"])
        lines.append(f'  c{w["source"]} -- c{w["target"]} [label="({normal})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _text(report) -> str:
    r = report.result
    cmd = report.command
    out = [f"gkz {cmd} (seed {report.provenance['seed']})"]
    if cmd == "k0":
        out.append(f"k0 rank: {r['k0']}")
    elif cmd == "chamber":
        out.append(f"signature: {r['signature']}")
        out.append(f"k0 rank: {r['k0']}")
    elif cmd == "collection":
        out.append(f"collection length: {r['length']} (k0 rank {r['k0']})")
        out.extend(_text_tree(r["tree"], 0))
    elif cmd == "fan":
        out.append(f"chambers: {len(r['chambers'])}, walls: {len(r['walls'])}")
        for c in r["chambers"]:
            out.append(f"  c{c['id']}: " + ("empty" if c["empty"] else f"k0={c['k0']}"))
    elif cmd == "orlov":
        out.append(f"a = {r['a']}: {r['case']} (engine mu {r['engine_mu']})")
        objs = r["sigma_side_objects"] or r["lg_side_objects"]
        if objs:
            out.append("extra objects: " + ", ".join(objs))
    elif cmd == "curves-count":
        out.append(f"SL2: even {r['sl2'][0]}, odd {r['sl2'][1]}")
        out.append(f"PGL2: {r['pgl2'] if r['pgl2'] is not None else 'not linearizable'}")
    else:
        out.append(f"{len(r['crossings'])} crossing(s) by {r['method']}, "
                   f"empty at mark {r['empty_mark']}")
        for c in r["crossings"]:
            out.append(f"  I={c['side']} mu={c['mu']}")
    return "\n".join(out) + "\n"


def _text_tree(node, depth):
    pad = "  " * (depth + 1)
    if node["kind"] == "unit":
        return [pad + "point"]
    if node["kind"] == "empty":
        return [pad + "empty"]
    lines = []
    for b in node["blocks"]:
        lines.append(f"{pad}wall lambda={b['lambda']} mu={b['mu']} twists={b['twists']}")
        if b["child"] is not None:
            lines.extend(_text_tree(b["child"], depth + 1))
    return lines


__all__ = ["ProblemFile", "Report", "UsageError", "parse_input", "parse_problem",
           "run", "emit", "COMMANDS", "FORMATS", "GkzError"]

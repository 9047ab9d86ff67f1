"""Named example problems, shared by the CLI and the demos.

Every preset returns a problem-file dictionary in the same shape the CLI
accepts on input, so presets and files go through one code path.
"""

from fractions import Fraction

from .curves import hassett_preset
from .errors import SchemaError
from .lattice import format_rational


def _ints(params, name, count=None, minimum=None):
    try:
        vals = [int(p) for p in params]
    except (TypeError, ValueError):
        raise SchemaError(f"preset.{name}", "parameters must be integers") from None
    if count is not None and len(vals) != count:
        raise SchemaError(f"preset.{name}", f"expected {count} parameter(s), got {len(vals)}")
    if minimum is not None and any(v < minimum for v in vals):
        raise SchemaError(f"preset.{name}", f"parameters must be at least {minimum}")
    return vals


def _toric(columns, character):
    return {"toric": {"rank": len(character), "weights": [list(c) for c in columns],
                      "character": [format_rational(x) for x in character]}}


def projective_space(params):
    (n,) = _ints(params, "projective-space", 1, 1)
    return _toric([[1]] * (n + 1), [1])


def weighted_projective(params):
    a = _ints(params, "weighted-projective", minimum=1)
    if len(a) < 2:
        raise SchemaError("preset.weighted-projective", "need at least two weights")
    return _toric([[x] for x in a], [1])


def hirzebruch(params):
    (a,) = _ints(params, "hirzebruch", 1, 0)
    return _toric([[1, 0], [1, 0], [0, 1], [-a, 1]], [1, 1])


def blowup_p2(params):
    _ints(params, "blowup-P2", 0)
    return _toric([[1, 0], [1, 0], [0, 1], [1, 1]], [2, 1])


def product_p1_p1(params):
    _ints(params, "product-P1-P1", 0)
    return _toric([[1, 0], [1, 0], [0, 1], [0, 1]], [1, 1])


def orlov(params):
    vals = _ints(params, "orlov", minimum=1)
    if not vals:
        raise SchemaError("preset.orlov", "need the number of variables")
    return {"orlov": {"n": vals[0], "degrees": vals[1:]}}


def pn_curves(params):
    try:
        d = [Fraction(str(p)) for p in params]
    except (ValueError, ZeroDivisionError):
        raise SchemaError("preset.pn-curves", "weights must be rationals") from None
    if len(d) < 3:
        raise SchemaError("preset.pn-curves", "need at least three weights")
    return {"curves_pn": {"weights": [format_rational(x) for x in d], "group": "SL2"}}


def hassett(params):
    n, j = _ints(params, "hassett", 2, 0)
    try:
        lin = hassett_preset(n, j)
    except ValueError as exc:
        raise SchemaError("preset.hassett", str(exc)) from None
    return {"curves_fm": {
        "j": lin.j,
        "weights": [format_rational(x) for x in lin.d],
        "a": [[sorted(S), format_rational(v)]
              for S, v in sorted(lin.a.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))],
    }}


PRESETS = {
    "projective-space": projective_space,
    "weighted-projective": weighted_projective,
    "hirzebruch": hirzebruch,
    "blowup-P2": blowup_p2,
    "product-P1-P1": product_p1_p1,
    "orlov": orlov,
    "pn-curves": pn_curves,
    "hassett": hassett,
}


def expand(name, params):
    """Problem-file dictionary for a named preset."""
    if name not in PRESETS:
        raise SchemaError("preset.name", f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[name](list(params))

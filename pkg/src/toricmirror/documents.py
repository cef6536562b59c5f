"""JSON document schemas: fans, invariant tables, potentials, reports.

JSON is the machine contract; rendered polynomial strings are display
conveniences. All serialization uses canonical key order and stable list
orders so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Mapping, Optional

from .errors import SchemaError
from .fan import Fan, validate_fan
from .gw import GWTable, validate_table
from .kahler import KahlerData
from .laurent import LaurentPoly, QPoly
from .linform import LinForm, parse_linear_form

_FAN_KEYS = {"dimension", "rays", "maximal_cones", "kahler", "q_basis"}
_KAHLER_KEYS = {"parameters", "lambdas"}
_TABLE_KEYS = {"fan_fingerprint", "basis", "entries"}
POTENTIAL_FORMAT = "toricmirror-potential/1"
CRITICAL_FORMAT = "toricmirror-critical/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(cond: bool, message: str):
    if not cond:
        raise SchemaError(message)


def _int_list(value, what: str) -> list:
    _require(isinstance(value, list), f"{what} must be a list")
    out = []
    for x in value:
        _require(isinstance(x, int) and not isinstance(x, bool),
                 f"{what} entries must be integers, got {x!r}")
        out.append(x)
    return out


def _int_matrix(value, what: str) -> list:
    _require(isinstance(value, list) and value, f"{what} must be a nonempty list")
    return [_int_list(row, f"{what} row") for row in value]


# --- fan documents ---

class FanDocument:
    """Parsed fan document: the validated fan plus optional Kahler data."""

    def __init__(self, fan: Fan, kahler: Optional[KahlerData],
                 parameters: tuple, lambdas_text: tuple, q_basis):
        self.fan = fan
        self.kahler = kahler
        self.parameters = parameters
        self.lambdas_text = lambdas_text
        self.q_basis = q_basis


def fan_from_document(obj) -> FanDocument:
    _require(isinstance(obj, dict), "fan document must be a JSON object")
    unknown = set(obj) - _FAN_KEYS
    _require(not unknown, f"unknown fan document fields: {sorted(unknown)}")
    _require("dimension" in obj, "fan document needs 'dimension'")
    _require("rays" in obj, "fan document needs 'rays'")
    dim = obj["dimension"]
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
             "'dimension' must be a positive integer")
    rays = _int_matrix(obj["rays"], "'rays'")
    cones = None
    if obj.get("maximal_cones") is not None:
        cones = _int_matrix(obj["maximal_cones"], "'maximal_cones'")
    fan = validate_fan(dim, rays, cones)

    q_basis = None
    if obj.get("q_basis") is not None:
        q_basis = [tuple(r) for r in _int_matrix(obj["q_basis"], "'q_basis'")]

    kahler = None
    parameters: tuple = ()
    lambdas_text: tuple = ()
    if obj.get("kahler") is not None:
        sub = obj["kahler"]
        _require(isinstance(sub, dict), "'kahler' must be an object")
        unknown = set(sub) - _KAHLER_KEYS
        _require(not unknown, f"unknown kahler fields: {sorted(unknown)}")
        params = sub.get("parameters", [])
        _require(isinstance(params, list) and all(isinstance(p, str) for p in params),
                 "'parameters' must be a list of names")
        _require(len(set(params)) == len(params), "duplicate parameter names")
        lams = sub.get("lambdas")
        _require(isinstance(lams, list) and len(lams) == fan.nrays,
                 f"'lambdas' must list one entry per ray ({fan.nrays})")
        parsed = []
        text = []
        for lam in lams:
            _require(isinstance(lam, (str, int)) and not isinstance(lam, bool),
                     f"lambda entries must be strings or integers, got {lam!r}")
            try:
                parsed.append(parse_linear_form(lam, params))
            except ValueError as exc:
                raise SchemaError(f"bad lambda expression {lam!r}: {exc}") from exc
            text.append(str(lam))
        parameters = tuple(params)
        lambdas_text = tuple(text)
        try:
            kahler = KahlerData(fan, parsed, q_basis)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return FanDocument(fan, kahler, parameters, lambdas_text, q_basis)


def load_fan_document(path) -> FanDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return fan_from_document(obj)


def fan_to_document(fan: Fan, *, parameters=None, lambdas=None, q_basis=None) -> dict:
    doc = {
        "dimension": fan.dimension,
        "rays": [list(r) for r in fan.rays],
        "maximal_cones": [list(c) for c in fan.maximal_cones],
    }
    if lambdas is not None:
        doc["kahler"] = {
            "parameters": list(parameters or []),
            "lambdas": [str(lam) for lam in lambdas],
        }
    if q_basis is not None:
        doc["q_basis"] = [list(b) for b in q_basis]
    return doc


def fan_fingerprint(fan: Fan) -> str:
    """Hash of the canonically sorted ray/cone data (ray order independent)."""
    order = sorted(range(fan.nrays), key=lambda i: fan.rays[i])
    position = {old: new for new, old in enumerate(order)}
    rays = [list(fan.rays[i]) for i in order]
    cones = sorted(sorted(position[i] for i in cone) for cone in fan.maximal_cones)
    payload = json.dumps(
        {"dimension": fan.dimension, "rays": rays, "maximal_cones": cones},
        sort_keys=True, separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# --- Gromov-Witten tables ---

def gw_table_from_document(obj, fan: Optional[Fan] = None) -> GWTable:
    _require(isinstance(obj, dict), "table document must be a JSON object")
    unknown = set(obj) - _TABLE_KEYS
    _require(not unknown, f"unknown table fields: {sorted(unknown)}")
    for key in _TABLE_KEYS:
        _require(key in obj, f"table document needs '{key}'")
    _require(isinstance(obj["fan_fingerprint"], str), "'fan_fingerprint' must be a string")
    basis = [tuple(r) for r in _int_matrix(obj["basis"], "'basis'")]
    _require(isinstance(obj["entries"], list), "'entries' must be a list")
    entries = {}
    for item in obj["entries"]:
        _require(isinstance(item, dict) and set(item) == {"class", "value"},
                 f"table entries must be objects with 'class' and 'value', got {item!r}")
        key = tuple(_int_list(item["class"], "entry class"))
        _require(len(key) == len(basis), "entry class length must match the basis size")
        try:
            value = Fraction(str(item["value"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational value {item['value']!r}") from exc
        _require(key not in entries, f"duplicate table key {key}")
        entries[key] = value
    return validate_table(obj["fan_fingerprint"], basis, entries, fan)


def load_gw_table(path, fan: Optional[Fan] = None) -> GWTable:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return gw_table_from_document(obj, fan)


# --- potential documents ---

def _qpoly_to_json(poly: QPoly) -> list:
    return [{"q": list(e), "value": str(c)} for e, c in poly.sorted_terms()]


def _qpoly_from_json(items, qvars: int) -> QPoly:
    _require(isinstance(items, list), "coefficient must be a list of q-terms")
    terms = {}
    for item in items:
        _require(isinstance(item, dict) and set(item) == {"q", "value"},
                 f"bad q-term {item!r}")
        exps = tuple(_int_list(item["q"], "q-exponents"))
        try:
            terms[exps] = Fraction(str(item["value"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational value {item['value']!r}") from exc
    try:
        return QPoly(qvars, terms)
    except ValueError as exc:
        raise SchemaError(f"bad coefficient polynomial: {exc}") from exc


def potential_to_document(poly: LaurentPoly, *, branch: str, fandoc: FanDocument,
                          cutoff: Optional[int] = None,
                          correction: Optional[QPoly] = None,
                          gw_records=()) -> dict:
    kahler = fandoc.kahler
    doc = {
        "format": POTENTIAL_FORMAT,
        "branch": branch,
        "cutoff": cutoff,
        "z_variables": poly.zvars,
        "q_variables": poly.qvars,
        "q_basis": [list(b) for b in kahler.q_basis],
        "parameters": list(kahler.parameter_names),
        "q_areas": [a.to_json() for a in kahler.basis_areas()],
        "correction": None if correction is None else _qpoly_to_json(correction),
        "gw_values": [
            {
                "class": list(rec.alpha),
                "q_exponents": list(rec.q_exponents),
                "value": str(rec.value),
                "source": rec.source,
            }
            for rec in gw_records
        ],
        "terms": [
            {"z": list(zexp), "coefficient": _qpoly_to_json(coeff)}
            for zexp, coeff in poly.sorted_terms()
        ],
        "rendered": str(poly),
        "fan": fan_to_document(
            fandoc.fan,
            parameters=fandoc.parameters,
            lambdas=fandoc.lambdas_text,
            q_basis=kahler.q_basis,
        ),
    }
    return doc


class PotentialDocument:
    def __init__(self, poly: LaurentPoly, branch: str, cutoff, parameters,
                 q_areas, fandoc: Optional[FanDocument], raw: dict):
        self.poly = poly
        self.branch = branch
        self.cutoff = cutoff
        self.parameters = parameters
        self.q_areas = q_areas
        self.fandoc = fandoc
        self.raw = raw

    def t_vector(self, values: Mapping) -> list:
        """Per-q-variable exponents t_j = area_j(parameter values)."""
        missing = sorted(
            {n for a in self.q_areas for n in a.variables} - set(values)
        )
        if missing:
            raise SchemaError(f"missing parameter values for {missing}")
        return [float(a.subs(values)) for a in self.q_areas]


def potential_from_document(obj) -> PotentialDocument:
    _require(isinstance(obj, dict), "potential document must be a JSON object")
    _require(obj.get("format") == POTENTIAL_FORMAT,
             f"unsupported potential format {obj.get('format')!r}")
    for key in ("z_variables", "q_variables", "terms", "q_areas", "parameters"):
        _require(key in obj, f"potential document needs '{key}'")
    zvars = obj["z_variables"]
    qvars = obj["q_variables"]
    for label, count in (("z_variables", zvars), ("q_variables", qvars)):
        _require(isinstance(count, int) and not isinstance(count, bool) and count >= 0,
                 f"'{label}' must be a nonnegative integer")
    terms = {}
    for item in obj["terms"]:
        _require(isinstance(item, dict) and set(item) == {"z", "coefficient"},
                 f"bad potential term {item!r}")
        zexp = tuple(_int_list(item["z"], "z-exponents"))
        terms[zexp] = _qpoly_from_json(item["coefficient"], qvars)
    try:
        poly = LaurentPoly(zvars, qvars, terms)
    except ValueError as exc:
        raise SchemaError(f"inconsistent potential terms: {exc}") from exc
    q_areas = [LinForm.from_json(a) for a in obj["q_areas"]]
    _require(len(q_areas) == qvars, "'q_areas' must list one area per q-variable")
    fandoc = None
    if obj.get("fan") is not None:
        fandoc = fan_from_document(obj["fan"])
    return PotentialDocument(
        poly=poly,
        branch=obj.get("branch", "unknown"),
        cutoff=obj.get("cutoff"),
        parameters=tuple(obj["parameters"]),
        q_areas=q_areas,
        fandoc=fandoc,
        raw=obj,
    )


def load_potential_document(path) -> PotentialDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return potential_from_document(obj)


# --- critical reports ---

def _complex_json(value: complex) -> list:
    return [value.real, value.imag]


def critical_report_to_document(report, t_values: Mapping) -> dict:
    return {
        "format": CRITICAL_FORMAT,
        "points": [[_complex_json(v) for v in point] for point in report.points],
        "values": [_complex_json(v) for v in report.values],
        "residuals": list(report.residuals),
        "multistart": {
            "attempted": report.attempted,
            "converged": report.converged,
            "deduped": report.deduped,
        },
        "options": report.options.to_json(),
        "t_values": {k: float(v) for k, v in sorted(t_values.items())},
    }

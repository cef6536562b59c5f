"""Command-line interface.

Subcommands:

* ``analyze``   fan document -> combinatorial report (homology, primitive
                collections and relations, positivity class, effective
                generators)
* ``bundle``    Fano fan document -> projectivized canonical bundle fan
* ``potential`` fan document (with Kahler data) -> superpotential document
* ``crit``      potential document + parameter values -> critical points

Exit codes: 0 success, 1 internal error, 2 schema/input error, 3 invalid or
unsupported fan, 4 base not Fano (bundle), 5 unknown invariant, 6 no
convergence.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .bundle import projectivize_canonical
from .critical import SolverOptions, find_critical_points, moduli_from_polytope
from .documents import (
    canonical_json,
    critical_report_to_document,
    fan_to_document,
    load_fan_document,
    load_gw_table,
    load_potential_document,
    potential_to_document,
)
from .errors import (
    BadChernDegree,
    FingerprintMismatch,
    InconsistentTable,
    InvalidFan,
    NoConvergence,
    NotBundleShaped,
    NotFano,
    SchemaError,
    ToricMirrorError,
    UnknownInvariant,
)
from .fan import Positivity, classify_positivity
from .gw import GWProvider
from .potential import corrected_potential, correction_details, hori_vafa

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_SCHEMA = 2
EXIT_INVALID_FAN = 3
EXIT_NOT_FANO = 4
EXIT_UNKNOWN_INVARIANT = 5
EXIT_NO_CONVERGENCE = 6


def _write(text: str, out_path):
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_analyze(args) -> int:
    doc = load_fan_document(args.fan)
    fan = doc.fan
    relations = fan.primitive_relations
    classification = classify_positivity(fan)
    if args.json:
        payload = {
            "valid": True,
            "dimension": fan.dimension,
            "rays": [list(r) for r in fan.rays],
            "maximal_cones": [list(c) for c in fan.maximal_cones],
            "homology_basis": [list(b) for b in fan.homology_basis],
            "primitive_collections": [list(c) for c in fan.primitive_collections],
            "primitive_relations": [
                {
                    "collection": list(r.collection),
                    "focus": list(r.focus),
                    "multiplicities": list(r.multiplicities),
                    "class": list(r.coords),
                    "degree": r.degree,
                }
                for r in relations
            ],
            "classification": classification.value,
            "effective_generators": [
                list(c) for c in sorted({r.coords for r in relations})
            ],
        }
        _write(canonical_json(payload), args.out)
        return EXIT_OK
    lines = [
        f"fan: dimension {fan.dimension}, {fan.nrays} rays, "
        f"{len(fan.maximal_cones)} maximal cones — valid",
        f"homology basis: {[list(b) for b in fan.homology_basis]}",
        f"primitive collections: {[list(c) for c in fan.primitive_collections]}",
        "primitive relations:",
    ]
    for r in relations:
        focus = (
            " + ".join(
                f"{m}*v{j}" if m != 1 else f"v{j}"
                for j, m in zip(r.focus, r.multiplicities)
            )
            or "0"
        )
        lhs = " + ".join(f"v{i}" for i in r.collection)
        lines.append(f"  {lhs} = {focus}   class {list(r.coords)}   degree {r.degree}")
    lines.append(f"classification: {classification.value}")
    gens = sorted({r.coords for r in relations})
    lines.append(f"effective generators: {[list(g) for g in gens]}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_bundle(args) -> int:
    doc = load_fan_document(args.fan)
    fan_x = projectivize_canonical(doc.fan)
    from .bundle import default_q_basis

    q_basis = default_q_basis(fan_x)
    out = fan_to_document(fan_x, q_basis=q_basis)
    _write(canonical_json(out), args.out)
    return EXIT_OK


def _cmd_potential(args) -> int:
    doc = load_fan_document(args.fan)
    if doc.kahler is None:
        raise SchemaError(
            "fan document carries no 'kahler' section; the potential needs "
            "support constants"
        )
    fan = doc.fan
    kahler = doc.kahler
    if classify_positivity(fan) is Positivity.FANO:
        poly = hori_vafa(fan, kahler)
        payload = potential_to_document(poly, branch="hori-vafa", fandoc=doc)
        _write(canonical_json(payload), args.out)
        return EXIT_OK
    table = None
    if args.gw_table:
        table = load_gw_table(args.gw_table, fan)
    gw = GWProvider(kahler, table=table, assume_zero=args.assume_zero_above_cutoff)
    factor, records = correction_details(fan, kahler, gw, args.cutoff)
    poly = corrected_potential(fan, kahler, gw, args.cutoff)
    payload = potential_to_document(
        poly,
        branch="corrected",
        fandoc=doc,
        cutoff=args.cutoff,
        correction=factor,
        gw_records=records,
    )
    _write(canonical_json(payload), args.out)
    return EXIT_OK


def _parse_assignments(pairs) -> dict:
    values = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SchemaError(f"expected name=value, got {pair!r}")
        name, _, raw = pair.partition("=")
        name = name.strip()
        try:
            values[name] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            try:
                values[name] = Fraction(repr(float(raw.strip())))
            except ValueError as exc:
                raise SchemaError(f"bad numeric value in {pair!r}") from exc
    return values


def _cmd_crit(args) -> int:
    doc = load_potential_document(args.potential)
    values = _parse_assignments(args.t)
    t = doc.t_vector(values)
    moduli = None
    if doc.fandoc is not None and doc.fandoc.kahler is not None:
        needed = doc.fandoc.kahler.parameter_names
        if all(n in values for n in needed):
            moduli = moduli_from_polytope(doc.fandoc.kahler, values)
    options = SolverOptions(
        phases_per_coord=args.phases,
        max_steps=args.max_steps,
        tol=args.tol,
        dedup_radius=args.dedup_radius,
        max_starts=args.max_starts,
        moduli_per_coord=moduli,
    )
    report = find_critical_points(doc.poly, t, options)
    payload = critical_report_to_document(report, {k: float(v) for k, v in values.items()})
    _write(canonical_json(payload), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricmirror",
        description="Toric fans, mirror superpotentials, critical points",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="combinatorial invariants of a fan")
    p.add_argument("fan", help="fan document (JSON)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bundle", help="projectivized canonical bundle of a Fano fan")
    p.add_argument("fan", help="base fan document (JSON)")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_bundle)

    p = sub.add_parser("potential", help="mirror superpotential document")
    p.add_argument("fan", help="fan document with kahler data (JSON)")
    p.add_argument("--cutoff", type=int, default=2,
                   help="bound on generator multiplicities in the correction sum")
    p.add_argument("--gw-table", default=None, help="invariant table (JSON)")
    p.add_argument("--assume-zero-above-cutoff", action="store_true",
                   help="zero-fill invariants absent from every source")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("crit", help="critical points of a potential document")
    p.add_argument("potential", help="potential document (JSON)")
    p.add_argument("--t", action="append", metavar="NAME=VALUE",
                   help="parameter value (repeatable); q = exp(-area(t))")
    p.add_argument("--phases", type=int, default=8)
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--dedup-radius", type=float, default=1e-8)
    p.add_argument("--max-starts", type=int, default=4096)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_crit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, FingerprintMismatch, BadChernDegree, InconsistentTable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (InvalidFan, NotBundleShaped) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_FAN
    except NotFano as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FANO
    except UnknownInvariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_INVARIANT
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ToricMirrorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

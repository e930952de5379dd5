"""Command-line front end.

One-shot queries only: humans read the text reports, programs pass --json.
Identical invocations produce byte-identical output (ANSI styling is applied
only on a terminal and can be disabled with HOMSPACE_NO_COLOR).

Exit codes: 0 success, 1 input error, 2 internal invariant violation.  Every
input error carries a machine-readable code plus the JSON path or flag that
caused it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .abgroups import FgAbGroup
from .extensions import (
    Character,
    character_to_extension,
    cocycle_class,
    cocycle_of,
    ext_group_via_characters,
)
from .groups import (
    GluingPair,
    ReductiveModel,
    as_semisimple,
    gluing_group,
    gluing_order,
    pi1,
    preset as build_preset,
    validate,
)
from .intlinalg import format_matrix_literal, parse_matrix_literal, smith_normal_form
from .invariants import invariant_report, picard_of_group, weight_brauer_table
from .rootdata import SimpleType, build_datum, center, center_element_from_coords

CONVENTION_NOTES = (
    "simple types use Bourbaki node numbering (see docs/conventions.md)",
    "extension classes use the sign convention fixed by the character round trip",
)


class CliError(Exception):
    """User-input error with a machine-readable code and location."""

    def __init__(self, code: str, where: str, message: str):
        super().__init__(message)
        self.code = code
        self.where = where
        self.message = message

    def render(self) -> str:
        return f"error[{self.code}] at {self.where}: {self.message}"


@dataclass(frozen=True)
class GroupSpecDocument:
    name: Optional[str]
    preset: Optional[str]
    semisimple: tuple
    torus_rank: int
    gluing: tuple  # raw (center coeff list, torus fraction strings) pairs
    unipotent_dim: int

    def to_model(self) -> ReductiveModel:
        if self.preset is not None:
            try:
                return build_preset(self.preset)
            except ValueError as exc:
                raise CliError("E_PRESET", "/preset", str(exc)) from exc
        try:
            datum = build_datum(tuple(SimpleType(f, r) for f, r in self.semisimple))
        except ValueError as exc:
            raise CliError("E_SCHEMA", "/semisimple", str(exc)) from exc
        pairs = []
        for i, (coeffs, fractions) in enumerate(self.gluing):
            orders = datum.pq_group.invariant_factors
            if len(coeffs) != len(orders):
                raise CliError(
                    "E_SCHEMA",
                    f"/gluing/{i}/center",
                    f"expected {len(orders)} coefficients over the center generators, got {len(coeffs)}",
                )
            if len(fractions) != self.torus_rank:
                raise CliError(
                    "E_SCHEMA",
                    f"/gluing/{i}/torus",
                    f"expected {self.torus_rank} fractions, got {len(fractions)}",
                )
            torus = []
            for j, text in enumerate(fractions):
                torus.append(_parse_fraction(text, f"/gluing/{i}/torus/{j}"))
            pairs.append(GluingPair(center_element_from_coords(datum, coeffs), tuple(torus)))
        try:
            return ReductiveModel(
                ss=datum,
                torus_rank=self.torus_rank,
                gluing=tuple(pairs),
                unipotent_dim=self.unipotent_dim,
                name=self.name,
            )
        except ValueError as exc:
            raise CliError("E_MODEL", "/", str(exc)) from exc


def _parse_fraction(text, where: str) -> Fraction:
    if not isinstance(text, str):
        raise CliError("E_SCHEMA", where, f"fractions are strings like \"1/2\", got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError("E_FRACTION", where, f"malformed fraction {text!r}") from exc
    if not 0 <= value < 1:
        raise CliError("E_FRACTION", where, f"fraction {text!r} must be reduced into [0, 1)")
    return value


_DOC_KEYS = {"name", "preset", "semisimple", "torus_rank", "gluing", "unipotent_dim"}


def parse_spec(text: str) -> GroupSpecDocument:
    """Validate a group-spec JSON document; errors carry JSON paths."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("E_JSON", "/", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError("E_SCHEMA", "/", "document must be a JSON object")
    for key in doc:
        if key not in _DOC_KEYS:
            raise CliError("E_SCHEMA", f"/{key}", "unknown field")

    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise CliError("E_SCHEMA", "/name", "name must be a string")
    preset = doc.get("preset")
    if preset is not None and not isinstance(preset, str):
        raise CliError("E_SCHEMA", "/preset", "preset must be a string")

    explicit = [k for k in ("semisimple", "torus_rank", "gluing", "unipotent_dim") if doc.get(k) is not None]
    if preset is not None and explicit:
        raise CliError(
            "E_SCHEMA", "/preset", f"preset and explicit fields are mutually exclusive (got {explicit})"
        )

    semisimple = []
    raw_ss = doc.get("semisimple") or []
    if not isinstance(raw_ss, list):
        raise CliError("E_SCHEMA", "/semisimple", "must be a list")
    for i, item in enumerate(raw_ss):
        if not isinstance(item, dict) or set(item) != {"family", "rank"}:
            raise CliError("E_SCHEMA", f"/semisimple/{i}", 'factors look like {"family": "D", "rank": 4}')
        fam, rank = item["family"], item["rank"]
        if not isinstance(fam, str) or not isinstance(rank, int) or isinstance(rank, bool):
            raise CliError("E_SCHEMA", f"/semisimple/{i}", "family must be a string and rank an integer")
        try:
            SimpleType(fam, rank)
        except ValueError as exc:
            raise CliError("E_SCHEMA", f"/semisimple/{i}", str(exc)) from exc
        semisimple.append((fam, rank))

    torus_rank = doc.get("torus_rank") or 0
    if not isinstance(torus_rank, int) or isinstance(torus_rank, bool) or torus_rank < 0:
        raise CliError("E_SCHEMA", "/torus_rank", "must be a nonnegative integer")

    unipotent_dim = doc.get("unipotent_dim") or 0
    if not isinstance(unipotent_dim, int) or isinstance(unipotent_dim, bool) or unipotent_dim < 0:
        raise CliError("E_SCHEMA", "/unipotent_dim", "must be a nonnegative integer")

    gluing = []
    raw_gluing = doc.get("gluing") or []
    if not isinstance(raw_gluing, list):
        raise CliError("E_SCHEMA", "/gluing", "must be a list")
    for i, item in enumerate(raw_gluing):
        if not isinstance(item, dict) or set(item) != {"center", "torus"}:
            raise CliError("E_SCHEMA", f"/gluing/{i}", 'generators look like {"center": [1], "torus": ["1/2"]}')
        coeffs = item["center"]
        if not isinstance(coeffs, list) or any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs):
            raise CliError("E_SCHEMA", f"/gluing/{i}/center", "must be a list of integers")
        torus = item["torus"]
        if not isinstance(torus, list):
            raise CliError("E_SCHEMA", f"/gluing/{i}/torus", "must be a list of fraction strings")
        gluing.append((tuple(coeffs), tuple(torus)))

    return GroupSpecDocument(
        name=name,
        preset=preset,
        semisimple=tuple(semisimple),
        torus_rank=torus_rank,
        gluing=tuple(gluing),
        unipotent_dim=unipotent_dim,
    )


def model_to_document(model: ReductiveModel) -> dict:
    """JSON expansion of a model (used by describe --expand)."""
    return {
        "name": model.name,
        "preset": None,
        "semisimple": [{"family": t.family, "rank": t.rank} for t in model.ss.factors],
        "torus_rank": model.torus_rank,
        "gluing": [
            {
                "center": list(pair.center.dual_coords()),
                "torus": [str(v) for v in pair.torus],
            }
            for pair in model.gluing
        ],
        "unipotent_dim": model.unipotent_dim,
    }


def _load_model(args) -> ReductiveModel:
    if getattr(args, "preset", None) and getattr(args, "spec", None):
        raise CliError("E_FLAGS", "--preset", "--preset and --spec are mutually exclusive")
    if getattr(args, "preset", None):
        try:
            return build_preset(args.preset)
        except ValueError as exc:
            raise CliError("E_PRESET", "--preset", str(exc)) from exc
    if getattr(args, "spec", None):
        try:
            with open(args.spec, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise CliError("E_IO", "--spec", f"cannot read {args.spec}: {exc}") from exc
        return parse_spec(text).to_model()
    raise CliError("E_FLAGS", "--preset", "one of --preset or --spec is required")


class _Printer:
    def __init__(self, stream):
        self.stream = stream
        self.color = stream.isatty() and "HOMSPACE_NO_COLOR" not in os.environ

    def line(self, text=""):
        self.stream.write(text + "\n")

    def header(self, text):
        if self.color:
            self.stream.write(f"\x1b[1m{text}\x1b[0m\n")
        else:
            self.stream.write(text + "\n")

    def json(self, payload):
        self.stream.write(json.dumps(payload, indent=2) + "\n")


def _group_str(group: FgAbGroup) -> str:
    return str(group)


def _lattice_rows(matrix) -> list:
    return [list(matrix.row(i)) for i in range(matrix.rows)]


# ---------------------------------------------------------------------------
# subcommands

def _cmd_describe(args, out: _Printer) -> int:
    model = _load_model(args)
    notes = validate(model)
    res = pi1(model)
    orders = model.ss.pq_group.invariant_factors
    if args.expand:
        out.json(model_to_document(model))
        return 0
    payload = {
        "tool": {"name": "homspace", "version": __version__},
        "model": model.describe(),
        "semisimple_type": str(model.ss),
        "torus_rank": model.torus_rank,
        "unipotent_dim": model.unipotent_dim,
        "center_generator_orders": list(orders),
        "gluing_order": gluing_order(model),
        "gluing_group": _group_str(gluing_group(model)),
        "pi1": _group_str(res.group),
        "pi1_derived": _group_str(res.derived_pi1),
        "certificates": notes,
    }
    if args.json:
        out.json(payload)
        return 0
    out.header(f"model {payload['model']}")
    out.line(f"semisimple type:         {payload['semisimple_type']}")
    out.line(f"torus rank:              {model.torus_rank}")
    out.line(f"unipotent dimension:     {model.unipotent_dim}")
    out.line(
        "center generator orders: "
        + (", ".join(str(d) for d in orders) if orders else "(trivial center)")
    )
    out.line(f"gluing subgroup:         {payload['gluing_group']} (order {payload['gluing_order']})")
    out.line(f"pi1(H):                  {payload['pi1']}")
    out.line(f"pi1 of derived subgroup: {payload['pi1_derived']}")
    for note in notes:
        out.line(f"  - {note}")
    return 0


def _weight_rows(rows) -> list:
    return [
        {
            "node": r.node,
            "weight": list(r.weight.coords),
            "restriction": list(r.restriction.coords),
            "brauer_class": list(r.brauer_class.coords),
            "trivial": r.is_trivial,
        }
        for r in rows
    ]


def _cmd_invariants(args, out: _Printer) -> int:
    model = _load_model(args)
    report = invariant_report(model)
    pic_of_h = picard_of_group(model)
    payload = {
        "tool": {"name": "homspace", "version": __version__},
        "spec": model_to_document(model),
        "conventions": list(CONVENTION_NOTES),
        "invariants": {
            "pic_lattice_basis": _lattice_rows(report.pic_lattice),
            "pic_group": _group_str(report.pic_group),
            "brauer": _group_str(report.brauer),
            "e_al": _group_str(report.e_al),
            "pi1_m": _group_str(report.pi1_m),
            "pi2_m": _group_str(report.pi2_m),
            "h2_m": _group_str(report.h2_m),
            "tors_h3_m": _group_str(report.tors_h3_m),
            "notes": list(report.notes),
        },
        "picard_of_group": _group_str(pic_of_h),
    }
    if model.torus_rank == 0 and model.unipotent_dim == 0:
        payload["weights"] = _weight_rows(weight_brauer_table(as_semisimple(model)))
    if args.json:
        out.json(payload)
        return 0
    out.header(f"invariants of G/H for H = {model.describe()}")
    out.line(f"Pic(G/H)       = {payload['invariants']['pic_group']}")
    if report.pic_lattice.rows:
        out.line(f"  lattice basis rows: {payload['invariants']['pic_lattice_basis']}")
    out.line(f"Br(G/H)        = {payload['invariants']['brauer']}   (= Br' = Br'an = Br an)")
    out.line(f"E_al(H, Gm)    = {payload['invariants']['e_al']}")
    out.line(f"Pic(H)         = {payload['picard_of_group']}")
    out.line(f"pi1(G/H)       = {payload['invariants']['pi1_m']}")
    out.line(f"pi2(G/H)       = {payload['invariants']['pi2_m']}")
    out.line(f"H^2(G/H, Z)    = {payload['invariants']['h2_m']}")
    out.line(f"Tors H^3(G/H)  = {payload['invariants']['tors_h3_m']}")
    for note in report.notes:
        out.line(f"  note: {note}")
    return 0


def _cmd_weights(args, out: _Printer) -> int:
    model = _load_model(args)
    try:
        sm = as_semisimple(model)
    except ValueError as exc:
        raise CliError("E_MODEL", "--preset" if args.preset else "--spec", str(exc)) from exc
    rows = weight_brauer_table(sm)
    payload = {
        "tool": {"name": "homspace", "version": __version__},
        "model": model.describe(),
        "pi1": _group_str(sm.kernel.computed),
        "brauer": _group_str(ext_group_via_characters(sm.kernel.computed)),
        "rows": _weight_rows(rows),
    }
    if args.json:
        out.json(payload)
        return 0
    out.header(f"fundamental-weight Brauer table for H = {model.describe()}")
    out.line(f"pi1(H) = {payload['pi1']}, Br(G/H) = {payload['brauer']}")
    for r in payload["rows"]:
        cls = "trivial" if r["trivial"] else f"class {r['brauer_class']}"
        out.line(f"  node {r['node']:>6}: restriction {r['restriction']} -> {cls}")
    return 0


def _parse_factors(text: str, where: str) -> FgAbGroup:
    try:
        factors = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise CliError("E_INPUT", where, f"bad factor list {text!r}") from exc
    try:
        return FgAbGroup(0, factors)
    except ValueError as exc:
        raise CliError("E_INPUT", where, str(exc)) from exc


def _cmd_ext(args, out: _Printer) -> int:
    group = _parse_factors(args.group, "--group")
    ext_group = ext_group_via_characters(group)
    payload = {
        "tool": {"name": "homspace", "version": __version__},
        "group": _group_str(group),
        "ext1_z": _group_str(ext_group),
    }
    if args.char is not None:
        parts = [p.strip() for p in args.char.split(",")] if args.char.strip() else []
        if len(parts) != group.ngens:
            raise CliError("E_INPUT", "--char", f"expected {group.ngens} fractions, got {len(parts)}")
        values = [_parse_fraction(p, "--char") for p in parts]
        try:
            chi = Character(group, tuple(values))
        except ValueError as exc:
            raise CliError("E_INPUT", "--char", str(exc)) from exc
        ext = character_to_extension(chi)
        back = cocycle_class(cocycle_of(ext))
        if back != chi:
            raise RuntimeError("internal invariant violation: extension round trip broke")
        payload.update(
            {
                "character": [str(v) for v in chi.values],
                "character_order": chi.order(),
                "middle_group": _group_str(ext.middle),
                "round_trip_ok": True,
            }
        )
    if args.json:
        out.json(payload)
        return 0
    out.header(f"central extensions of {payload['group']} by Z")
    out.line(f"Ext^1(Gamma, Z) = {payload['ext1_z']}")
    if args.char is not None:
        out.line(f"character {args.char} has order {payload['character_order']}")
        out.line(f"extension middle group: {payload['middle_group']}")
        out.line("class round trip: ok")
    return 0


def _cmd_snf(args, out: _Printer) -> int:
    try:
        matrix = parse_matrix_literal(args.matrix)
    except ValueError as exc:
        raise CliError("E_INPUT", "--matrix", str(exc)) from exc
    res = smith_normal_form(matrix)
    if res.u @ matrix @ res.v != res.d:
        raise RuntimeError("internal invariant violation: U*M*V != D")
    payload = {
        "tool": {"name": "homspace", "version": __version__},
        "matrix": format_matrix_literal(matrix),
        "d": format_matrix_literal(res.d),
        "u": format_matrix_literal(res.u),
        "v": format_matrix_literal(res.v),
        "diagonal": list(res.diagonal()),
    }
    if args.json:
        out.json(payload)
        return 0
    out.header("smith normal form")
    out.line(f"D = {payload['d']}")
    out.line(f"U = {payload['u']}")
    out.line(f"V = {payload['v']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homspace",
        description="Exact Picard/Brauer invariants of homogeneous spaces G/H from combinatorial models of H.",
    )
    parser.add_argument("--version", action="version", version=f"homspace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--preset", help="built-in model such as SO(7), GL(3), PGL(2), Spin(8), Sp(4)")
        p.add_argument("--spec", help="path to a group-spec JSON document")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("describe", help="show center generators/orders and pi1 data of a model")
    add_model_flags(p)
    p.add_argument("--expand", action="store_true", help="print the JSON expansion of the model")

    p = sub.add_parser("invariants", help="Picard/Brauer/topological invariant report for G/H")
    add_model_flags(p)

    p = sub.add_parser("weights", help="fundamental-weight Brauer table (semisimple models)")
    add_model_flags(p)

    p = sub.add_parser("ext", help="central extensions of a finite abelian group by Z")
    p.add_argument("--group", required=True, help='invariant factors, e.g. "2,4"')
    p.add_argument("--char", help='character values as fractions, e.g. "1/2,0"')
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help='row-major literal, e.g. "2,4;6,8"')
    p.add_argument("--json", action="store_true")
    return parser


_COMMANDS = {
    "describe": _cmd_describe,
    "invariants": _cmd_invariants,
    "weights": _cmd_weights,
    "ext": _cmd_ext,
    "snf": _cmd_snf,
}


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    out = _Printer(stdout)
    try:
        return _COMMANDS[args.command](args, out)
    except CliError as exc:
        stderr.write(exc.render() + "\n")
        return 1
    except ValueError as exc:
        stderr.write(f"error[E_INPUT] at {args.command}: {exc}\n")
        return 1
    except (AssertionError, RuntimeError) as exc:
        stderr.write(f"error[E_INTERNAL] invariant violation: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))

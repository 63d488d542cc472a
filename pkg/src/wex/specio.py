"""Document formats, the check pipeline, and report emission.

Two JSON document kinds exist: group specs (generators as matrices of
cyclotomic literals at a declared conductor) and character-table specs
(class data with power maps for k <= 6, irreducible values at the group
exponent, linear flags, and the natural character).  Emission is
canonical: sorted keys, canonical literals, no floats anywhere, so equal
inputs produce byte-identical reports.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources

from .characters import CharacterTable, _validate_orthogonality
from .cyclotomic import Cyclotomic, format_cyclotomic, parse_cyclotomic
from .errors import (
    OrthogonalityFailure,
    ParseError,
    ValidationError,
)
from .groups import FiniteMatrixGroup, GroupElement, closure
from .verdict import VerdictReport, verdict

__all__ = [
    "GroupSpec",
    "TableSpec",
    "PipelineResult",
    "parse_group_spec",
    "emit_group_spec",
    "parse_table_spec",
    "emit_table_spec",
    "table_from_spec",
    "group_spec_from_generators",
    "table_spec_from_table",
    "run_pipeline",
    "emit_report",
    "fixture_path",
]

GROUP_FORMAT = "wex.group"
TABLE_FORMAT = "wex.table"
MAX_TABLE_POWER = 6


@dataclass(frozen=True)
class GroupSpec:
    conductor: int
    degree: int
    generators: tuple[GroupElement, ...]
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str | None:
        return self.metadata.get("name")


@dataclass(frozen=True)
class TableSpec:
    order: int
    conductor: int
    class_sizes: tuple[int, ...]
    class_element_orders: tuple[int, ...]
    power_maps: dict[int, tuple[int, ...]]
    irreducible_values: tuple[tuple[Cyclotomic, ...], ...]
    linear_flags: tuple[bool, ...]
    natural: int | tuple[Cyclotomic, ...]
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str | None:
        return self.metadata.get("name")


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("document root must be a JSON object")
    return doc


def _need(doc: dict, key: str, where: str = "document"):
    if key not in doc:
        raise ValidationError(f"{where} is missing required key {key!r}")
    return doc[key]


def _positive_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValidationError(f"{where} must be a positive integer,"
                              f" got {value!r}")
    return value


def _parse_literal(text, m: int, where: str) -> Cyclotomic:
    if not isinstance(text, str):
        raise ValidationError(f"{where} must be a cyclotomic literal string")
    try:
        return parse_cyclotomic(text, m)
    except ParseError as e:
        raise ValidationError(f"{where}: {e}") from None


# ---------------------------------------------------------------------------
# group documents

def parse_group_spec(text: str) -> GroupSpec:
    doc = _loads(text)
    fmt = doc.get("format", GROUP_FORMAT)
    if fmt != GROUP_FORMAT:
        raise ValidationError(f"expected format {GROUP_FORMAT!r}, got {fmt!r}")
    conductor = _positive_int(_need(doc, "conductor"), "conductor")
    degree = _positive_int(_need(doc, "degree"), "degree")
    raw_gens = _need(doc, "generators")
    if not isinstance(raw_gens, list) or not raw_gens:
        raise ValidationError("generators must be a non-empty list")
    gens = []
    for gi, mat in enumerate(raw_gens):
        where = f"generators[{gi}]"
        if not isinstance(mat, list) or len(mat) != degree:
            raise ValidationError(
                f"{where} must be a {degree}x{degree} matrix"
            )
        rows = []
        for ri, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != degree:
                raise ValidationError(
                    f"{where}[{ri}] must have {degree} entries"
                )
            rows.append(
                [_parse_literal(x, conductor, f"{where}[{ri}][{ci}]")
                 for ci, x in enumerate(row)]
            )
        gens.append(GroupElement(rows))
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ValidationError("metadata must be an object")
    return GroupSpec(conductor=conductor, degree=degree,
                     generators=tuple(gens), metadata=metadata)


def emit_group_spec(spec: GroupSpec) -> str:
    doc = {
        "format": GROUP_FORMAT,
        "conductor": spec.conductor,
        "degree": spec.degree,
        "generators": [
            [[format_cyclotomic(x.embed(spec.conductor)) for x in row]
             for row in g.rows]
            for g in spec.generators
        ],
    }
    if spec.metadata:
        doc["metadata"] = spec.metadata
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def group_spec_from_generators(generators, metadata=None) -> GroupSpec:
    m = 1
    for g in generators:
        m = m * g.m // _gcd(m, g.m)
    gens = tuple(g.conductor_at(m) for g in generators)
    return GroupSpec(conductor=m, degree=gens[0].degree, generators=gens,
                     metadata=dict(metadata or {}))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# table documents

def parse_table_spec(text: str) -> TableSpec:
    doc = _loads(text)
    fmt = doc.get("format", TABLE_FORMAT)
    if fmt != TABLE_FORMAT:
        raise ValidationError(f"expected format {TABLE_FORMAT!r}, got {fmt!r}")
    order = _positive_int(_need(doc, "order"), "order")
    conductor = _positive_int(_need(doc, "conductor"), "conductor")
    raw_classes = _need(doc, "classes")
    if not isinstance(raw_classes, list) or not raw_classes:
        raise ValidationError("classes must be a non-empty list")
    r = len(raw_classes)
    sizes, orders = [], []
    maps: dict[int, list[int]] = {k: [] for k in range(1, MAX_TABLE_POWER + 1)}
    for ci, cls in enumerate(raw_classes):
        where = f"classes[{ci}]"
        sizes.append(_positive_int(_need(cls, "size", where),
                                   f"{where}.size"))
        orders.append(_positive_int(_need(cls, "element_order", where),
                                    f"{where}.element_order"))
        pm = _need(cls, "power_maps", where)
        if not isinstance(pm, dict):
            raise ValidationError(f"{where}.power_maps must be an object")
        for k in range(1, MAX_TABLE_POWER + 1):
            if str(k) not in pm:
                raise ValidationError(
                    f"{where}.power_maps must carry k = 1..{MAX_TABLE_POWER},"
                    f" missing {k}"
                )
            tgt = pm[str(k)]
            if not isinstance(tgt, int) or not 0 <= tgt < r:
                raise ValidationError(
                    f"{where}.power_maps[{k}] must be a class index"
                )
            maps[k].append(tgt)
    if sum(sizes) != order:
        raise ValidationError(
            f"class sizes sum to {sum(sizes)}, order says {order}"
        )
    if orders[0] != 1 or sizes[0] != 1:
        raise ValidationError("classes[0] must be the identity class")
    exponent = 1
    for o in orders:
        exponent = exponent * o // _gcd(exponent, o)
    if exponent != conductor:
        raise ValidationError(
            f"conductor {conductor} != lcm of element orders {exponent}"
        )
    for i in range(r):
        if maps[1][i] != i:
            raise ValidationError(f"power_maps[1] must fix class {i}")
        for k in range(1, MAX_TABLE_POWER + 1):
            km = k % orders[i]
            want = 0 if km == 0 else maps[km][i]
            if maps[k][i] != want:
                raise ValidationError(
                    f"classes[{i}].power_maps[{k}] inconsistent with element"
                    f" order {orders[i]}"
                )

    raw_irr = _need(doc, "irreducibles")
    if not isinstance(raw_irr, list) or len(raw_irr) != r:
        raise ValidationError(
            f"need exactly {r} irreducibles (one per class),"
            f" got {len(raw_irr) if isinstance(raw_irr, list) else '?'}"
        )
    values = []
    flags = []
    for ii, irr in enumerate(raw_irr):
        where = f"irreducibles[{ii}]"
        raw_vals = _need(irr, "values", where)
        if not isinstance(raw_vals, list) or len(raw_vals) != r:
            raise ValidationError(f"{where}.values must have {r} entries")
        row = tuple(
            _parse_literal(x, conductor, f"{where}.values[{ci}]")
            for ci, x in enumerate(raw_vals)
        )
        if "linear" not in irr:
            raise ValidationError(f"{where} is missing the linear flag")
        flag = irr["linear"]
        if not isinstance(flag, bool):
            raise ValidationError(f"{where}.linear must be a boolean")
        deg = row[0]
        if not deg.is_integer() or deg.as_integer() < 1:
            raise ValidationError(
                f"{where}.values[0] must be a positive integer dimension"
            )
        if flag != (deg.as_integer() == 1):
            raise ValidationError(
                f"{where}.linear = {flag} contradicts dimension"
                f" {deg.as_integer()}"
            )
        values.append(row)
        flags.append(flag)
    if sum(row[0].as_integer() ** 2 for row in values) != order:
        raise ValidationError("sum of squared dimensions != group order")
    try:
        _validate_orthogonality(sizes, values, order)
    except OrthogonalityFailure as e:
        raise ValidationError(f"character table invalid: {e}") from None

    raw_nat = _need(doc, "natural")
    if isinstance(raw_nat, int):
        if not 0 <= raw_nat < r:
            raise ValidationError("natural index out of range")
        natural: int | tuple = raw_nat
    elif isinstance(raw_nat, list):
        if len(raw_nat) != r:
            raise ValidationError(f"natural values must have {r} entries")
        natural = tuple(
            _parse_literal(x, conductor, f"natural[{ci}]")
            for ci, x in enumerate(raw_nat)
        )
    else:
        raise ValidationError("natural must be an index or a value list")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ValidationError("metadata must be an object")
    return TableSpec(
        order=order,
        conductor=conductor,
        class_sizes=tuple(sizes),
        class_element_orders=tuple(orders),
        power_maps={k: tuple(v) for k, v in maps.items()},
        irreducible_values=tuple(values),
        linear_flags=tuple(flags),
        natural=natural,
        metadata=metadata,
    )


def table_from_spec(spec: TableSpec) -> CharacterTable:
    if isinstance(spec.natural, int):
        natural_values = spec.irreducible_values[spec.natural]
    else:
        natural_values = spec.natural
    return CharacterTable(
        order=spec.order,
        class_sizes=spec.class_sizes,
        class_element_orders=spec.class_element_orders,
        irreducible_values=spec.irreducible_values,
        natural_values=natural_values,
        power_maps=spec.power_maps,
        metadata=spec.metadata,
    )


def table_spec_from_table(table: CharacterTable,
                          metadata=None) -> TableSpec:
    """Document form of a computed table; power maps filled for k <= 6 and
    values embedded at the exponent."""
    e = table.exponent
    r = table.num_classes
    maps = {
        k: tuple(table.power_class(i, k) for i in range(r))
        for k in range(1, MAX_TABLE_POWER + 1)
    }
    # character values live in the exponent field, whatever conductor the
    # source happened to store them at
    def at_exponent(v: Cyclotomic) -> Cyclotomic:
        w = v.reduced()
        if e % w.m != 0:
            raise ValidationError(
                f"character value {v} does not lie in the exponent-{e} field"
            )
        return w.embed(e)

    values = tuple(
        tuple(at_exponent(v) for v in chi.values)
        for chi in table.irreducibles
    )
    nat_vals = tuple(at_exponent(v) for v in table.natural.values)
    natural: int | tuple = nat_vals
    for i, chi in enumerate(values):
        if chi == nat_vals:
            natural = i
            break
    return TableSpec(
        order=table.order,
        conductor=e,
        class_sizes=table.class_sizes,
        class_element_orders=table.class_element_orders,
        power_maps=maps,
        irreducible_values=values,
        linear_flags=table.linear_flags,
        natural=natural,
        metadata=dict(metadata or table.metadata),
    )


def emit_table_spec(spec: TableSpec) -> str:
    classes = []
    r = len(spec.class_sizes)
    for i in range(r):
        classes.append({
            "size": spec.class_sizes[i],
            "element_order": spec.class_element_orders[i],
            "power_maps": {str(k): spec.power_maps[k][i]
                           for k in range(1, MAX_TABLE_POWER + 1)},
        })
    irreducibles = [
        {
            "values": [format_cyclotomic(v.embed(spec.conductor))
                       for v in row],
            "linear": flag,
        }
        for row, flag in zip(spec.irreducible_values, spec.linear_flags)
    ]
    if isinstance(spec.natural, int):
        natural = spec.natural
    else:
        natural = [format_cyclotomic(v.embed(spec.conductor))
                   for v in spec.natural]
    doc = {
        "format": TABLE_FORMAT,
        "order": spec.order,
        "conductor": spec.conductor,
        "classes": classes,
        "irreducibles": irreducibles,
        "natural": natural,
    }
    if spec.metadata:
        doc["metadata"] = spec.metadata
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# pipeline

@dataclass(frozen=True)
class PipelineResult:
    report: VerdictReport
    timings: dict[str, float]


def detect_format(text: str) -> str:
    doc = _loads(text)
    fmt = doc.get("format")
    if fmt in (GROUP_FORMAT, TABLE_FORMAT):
        return fmt
    if "generators" in doc:
        return GROUP_FORMAT
    if "irreducibles" in doc:
        return TABLE_FORMAT
    raise ValidationError("cannot tell whether this is a group or a table"
                          " document")


def run_pipeline(text: str, *, assume_table: bool | None = None,
                 rule: str | None = None, cap: int | None = None,
                 source_name: str | None = None) -> PipelineResult:
    """Parse, enumerate (group path) or load (table path), then decide."""
    timings: dict[str, float] = {}
    t0 = time.monotonic()
    if assume_table is None:
        fmt = detect_format(text)
    else:
        fmt = TABLE_FORMAT if assume_table else GROUP_FORMAT
    if fmt == GROUP_FORMAT:
        spec = parse_group_spec(text)
        timings["parse"] = time.monotonic() - t0
        t0 = time.monotonic()
        source: FiniteMatrixGroup | CharacterTable = closure(
            list(spec.generators), cap=cap
        )
        timings["closure"] = time.monotonic() - t0
    else:
        tspec = parse_table_spec(text)
        spec = tspec
        timings["parse"] = time.monotonic() - t0
        t0 = time.monotonic()
        source = table_from_spec(tspec)
        timings["load"] = time.monotonic() - t0
    name = source_name or spec.name
    t0 = time.monotonic()
    report = verdict(source, rule_hint=rule, name=name)
    timings["verdict"] = time.monotonic() - t0
    return PipelineResult(report=report, timings=timings)


def emit_report(report: VerdictReport, fmt: str = "json",
                timings: dict[str, float] | None = None) -> str:
    """json: canonical and machine-diffable (no timings, sorted keys).
    text: human-readable, includes timings when given."""
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValidationError(f"unknown report format {fmt!r}")
    lines = []
    title = f"verdict: {report.verdict}"
    lines.append(title)
    lines.append("-" * len(title))
    if report.source_name:
        lines.append(f"source:      {report.source_name}")
    lines.append(f"degree:      {report.degree}")
    lines.append(f"group order: {report.group_order}")
    lines.append(f"rule:        {report.rule}")
    lines.append("conditions:")
    for c in report.conditions:
        mark = {"pass": "+", "fail": "x", "unknown": "?"}[c.status]
        line = f"  [{mark}] {c.name}"
        if c.detail:
            line += f" -- {c.detail}"
        lines.append(line)
        if c.witness is not None:
            lines.append(f"      witness: {_witness_summary(c.witness)}")
    if timings:
        total = sum(timings.values())
        stages = ", ".join(f"{k} {v:.3f}s" for k, v in timings.items())
        lines.append(f"timing: {stages} (total {total:.3f}s)")
    return "\n".join(lines) + "\n"


def _witness_summary(w: dict) -> str:
    kind = w.get("kind")
    if kind == "semi_invariant":
        terms = [
            f"({c})*" + _mono_str(mono)
            for mono, c in zip(w["monomials"], w["coefficients"])
            if c != "0"
        ]
        return (f"degree-{w['degree']} semi-invariant "
                + " + ".join(terms)
                + f"  [z = primitive root of unity of order {w['conductor']}]")
    if kind == "invariant_subspace_candidate":
        parts = [f"{c['copies']}x(irr#{c['irreducible']}, dim {c['dim']})"
                 for c in w["constituents"]]
        return (f"{w['dimension']}-dim candidate inside"
                f" Sym^{w['sym_degree']}: " + " + ".join(parts))
    if kind == "reflection":
        return f"reflection matrix at conductor {w['conductor']}"
    if kind == "reducible_natural_representation":
        return f"<chi, chi> = {w['self_inner_product']}"
    if kind == "semi_invariant_count":
        return f"s_{w['degree']} = {w['count']}"
    return json.dumps(w, sort_keys=True)


def _mono_str(mono) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def fixture_path(name: str):
    """Filesystem path of a bundled fixture document."""
    return resources.files("wex") / "fixtures" / name

"""The wex command line.

Exit codes: 1 parse error, 2 validation/precondition error, 3 cap
exceeded, 4 internal inconsistency.  WEX_CAP overrides the closure cap.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from .characters import dixon_table, semiinvariant_profile
from .constructions import (
    PadicInstance,
    diagonal_group,
    heisenberg,
    lct_duval,
    noether_rank,
    padic_check,
    subvariety_bounds,
    surface_candidates_p4,
    threefold_survivor_p5,
)
from .errors import ParseError, ValidationError, WexError
from .groups import closure
from .specio import (
    TABLE_FORMAT,
    detect_format,
    emit_group_spec,
    emit_report,
    emit_table_spec,
    group_spec_from_generators,
    parse_group_spec,
    parse_table_spec,
    run_pipeline,
    table_from_spec,
    table_spec_from_table,
)


def _cap_from_env() -> int | None:
    raw = os.environ.get("WEX_CAP")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"WEX_CAP must be an integer, got {raw!r}")


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except WexError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _write_out(text: str, out: str | None):
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


@click.group()
def main():
    """Exact weak-exceptionality verdicts for quotient singularities."""


def _check_one(path: str, assume_table: bool | None, rule: str,
               fmt: str, cap: int | None) -> tuple[str, str]:
    with open(path) as fh:
        text = fh.read()
    result = run_pipeline(text, assume_table=assume_table, rule=rule,
                          cap=cap)
    timings = result.timings if fmt == "text" else None
    return path, emit_report(result.report, fmt=fmt, timings=timings)


@main.command()
@click.argument("files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--table", "assume_table", is_flag=True, default=False,
              help="Treat inputs as character-table documents.")
@click.option("--rule", default="auto",
              help="auto | dim | diagonal:<k>")
@click.option("--format", "fmt", default="text",
              type=click.Choice(["json", "text"]))
@click.option("-o", "out", default=None, help="Write the report here.")
@click.option("--jobs", default=1, show_default=True,
              help="Run this many files in parallel.")
@_handle_errors
def check(files, assume_table, rule, fmt, out, jobs):
    """Decide weak-exceptionality for group or table documents."""
    cap = _cap_from_env()
    if out is not None and len(files) > 1:
        raise ValidationError("-o needs a single input file")
    table_flag = True if assume_table else None
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(
                    functools.partial(_check_one, assume_table=table_flag,
                                      rule=rule, fmt=fmt, cap=cap),
                    files,
                )
            )
    else:
        results = [_check_one(p, table_flag, rule, fmt, cap) for p in files]
    for path, text in results:
        if len(files) > 1:
            click.echo(f"== {path}")
        _write_out(text, out)


@main.command()
@click.argument("group_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "out", required=True, help="Write the table here.")
@_handle_errors
def table(group_file, out):
    """Compute the full character table of a group document."""
    with open(group_file) as fh:
        spec = parse_group_spec(fh.read())
    G = closure(list(spec.generators), cap=_cap_from_env())
    tab = dixon_table(G)
    _write_out(emit_table_spec(table_spec_from_table(tab, spec.metadata)),
               out)


def _parse_degree_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    d = int(text)
    return range(d, d + 1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--degrees", required=True,
              help="Degree or inclusive range a..b.")
@click.option("--table", "assume_table", is_flag=True, default=False)
@click.option("--format", "fmt", default="text",
              type=click.Choice(["json", "text"]))
@_handle_errors
def semiinv(file, degrees, assume_table, fmt):
    """Count independent semi-invariants per degree."""
    with open(file) as fh:
        text = fh.read()
    is_table = assume_table or detect_format(text) == TABLE_FORMAT
    if is_table:
        source = table_from_spec(parse_table_spec(text))
    else:
        spec = parse_group_spec(text)
        source = closure(list(spec.generators), cap=_cap_from_env())
    profile = semiinvariant_profile(source, _parse_degree_range(degrees))
    if fmt == "json":
        click.echo(json.dumps({str(d): c for d, c in
                               sorted(profile.counts.items())},
                              sort_keys=True, indent=2))
    else:
        for d, c in sorted(profile.counts.items()):
            click.echo(f"s_{d} = {c}")


@main.group()
def construct():
    """Emit generator documents for the bundled families."""


@construct.command("heisenberg")
@click.argument("p", type=int)
@click.option("-o", "out", default=None)
@_handle_errors
def construct_heisenberg(p, out):
    """Shift and root-of-unity diagonal generating the extraspecial p^3
    subgroup of SL_p."""
    spec = group_spec_from_generators(
        heisenberg(p), metadata={"name": f"heisenberg-{p}"}
    )
    _write_out(emit_group_spec(spec), out)


@construct.command("diagonal")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--perm", type=click.Choice(["cyclic", "none"]),
              default="none", show_default=True)
@click.option("-o", "out", default=None)
@_handle_errors
def construct_diagonal(n, k, perm, out):
    """The n diagonal torsion generators in GL_{n+1}, optionally with the
    coordinate cycle."""
    spec = group_spec_from_generators(
        diagonal_group(n, k, perm),
        metadata={"name": f"diagonal-n{n}-k{k}-{perm}"},
    )
    _write_out(emit_group_spec(spec), out)


@main.group()
def lct():
    """Log canonical threshold helpers."""


@lct.command("duval")
@click.option("--arms", required=True, help="Three arm lengths n1,n2,n3.")
@_handle_errors
def lct_duval_cmd(arms):
    """Exact lct of a Du Val fork from its three arm lengths."""
    parts = [int(x) for x in arms.split(",")]
    if len(parts) != 3:
        raise ValidationError("--arms needs exactly three integers")
    fork = lct_duval(*parts)
    click.echo(f"arms {fork.arms}: lct = {fork.lct}")


@main.group()
def bookkeeping():
    """Exact enumeration traces for the surface and threefold systems."""


@bookkeeping.command("surface-p4")
@_handle_errors
def bookkeeping_surface():
    """Possible degrees of the invariant surface in P^4."""
    rep = surface_candidates_p4()
    for line in rep.trace:
        click.echo(line)
    click.echo(f"candidates: {sorted(rep.candidates)}")


@bookkeeping.command("threefold-p5")
@_handle_errors
def bookkeeping_threefold():
    """The surviving degree-6 threefold in P^5 with its elimination trace."""
    rep = threefold_survivor_p5()
    for line in rep.trace:
        click.echo(line)
    s = rep.survivor
    click.echo(
        f"survivor: d={s.d}, k={s.k}, gamma={s.gamma},"
        f" cubics through X = {s.h0_cubics}, sectional genus"
        f" {s.sectional_genus}"
    )


@bookkeeping.command("noether")
@click.option("--k2", type=int, required=True)
@click.option("--milnor", default="", help="Comma-separated Milnor numbers.")
@_handle_errors
def bookkeeping_noether(k2, milnor):
    """Picard rank from K^2 and Milnor numbers (sum = 10)."""
    mu = [int(x) for x in milnor.split(",") if x.strip() != ""]
    data = noether_rank(k2, mu)
    click.echo(
        f"picard_rank = 10 - ({data.K2}) - {sum(data.milnor)}"
        f" = {data.picard_rank}"
    )


@bookkeeping.command("bounds")
@click.option("--n", "n", type=int, required=True)
@click.option("--dim", "dim", type=int, required=True)
@_handle_errors
def bookkeeping_bounds(n, dim):
    """Degree and hypersurface-count bounds for an invariant subvariety."""
    b = subvariety_bounds(n, dim)
    click.echo(f"deg(V) <= C({n},{dim}) = {b.degree_bound}")
    click.echo(
        f"h0(hypersurfaces of degree dim+1 through V) >= C({n},{dim + 1})"
        f" = {b.cubic_count_bound}"
    )


@main.command()
@click.option("--coeffs", required=True,
              help='Rising-power coefficients "b0/c0,b1/c1,...".')
@click.option("--shift", type=int, default=0, show_default=True)
@click.option("--prime", type=int, required=True)
@_handle_errors
def padic(coeffs, shift, prime):
    """Check the p-divisibility hypothesis and conclusion for a
    rational-coefficient polynomial."""
    try:
        parsed = tuple(Fraction(x.strip()) for x in coeffs.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad coefficient list: {e}")
    inst = PadicInstance(coefficients=parsed, shift=shift, prime=prime)
    hyp, concl = padic_check(inst)
    click.echo(f"hypothesis (values at {shift}..{shift + inst.degree}"
               f" have numerators divisible by {prime}): {hyp}")
    click.echo(f"conclusion (all coefficient numerators divisible by"
               f" {prime}): {concl}")


if __name__ == "__main__":
    main()

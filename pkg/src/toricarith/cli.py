"""Command-line front end over JSON documents.

Exit codes: 0 success, 2 validation/parse error, 3 numeric-tolerance
failure.  Exact results print as integers/rationals; numeric results
carry an explicit error field.
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction

import click

from . import formats
from .bernstein import NoApplicableBoundError, bk_bound, bk_verify
from .cones import FanValidationError
from .divisors import TDivisor, divisor_of_polytope
from .intersection import degree as weight_degree
from .intersection import jd_presentation, mixed_volume
from .mahler import canonical_height_point, mahler_numeric
from .polytopes import normal_fan

VALIDATION_EXIT = 2
NUMERIC_EXIT = 3


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(report: dict, as_json: bool, lines):
    if as_json:
        click.echo(json.dumps(report, indent=2))
    else:
        for line in lines:
            click.echo(line)


def _load(path, expect):
    try:
        return formats.load(path, expect=expect)
    except (formats.FormatError, FanValidationError, ValueError, OSError) as exc:
        _fail(str(exc), VALIDATION_EXIT)


@click.group()
def main():
    """Exact toric intersection theory, Mahler measures, and heights."""


@main.command()
@click.argument("fan_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def check(fan_file, as_json):
    """Validate a fan file and report smoothness/completeness."""
    fan = _load(fan_file, "fan")
    smooth = fan.is_smooth()
    complete = fan.is_complete()
    report = {
        "rays": len(fan.rays),
        "maximal_cones": len(fan.maximal),
        "smooth": smooth,
        "complete": complete,
    }
    flags = ("smooth " if smooth else "not smooth, ") + (
        "complete" if complete else "not complete"
    )
    _emit(
        report,
        as_json,
        [f"{flags}, {report['rays']} rays, {report['maximal_cones']} maximal cones"],
    )


@main.command("normal-fan")
@click.argument("polytope_file", type=click.Path(exists=True))
@click.option("--fan-out", type=click.Path(), help="write the fan document here")
@click.option("--divisor-out", type=click.Path(), help="write the divisor document here")
@click.option("--json", "as_json", is_flag=True)
def normal_fan_cmd(polytope_file, fan_out, divisor_out, as_json):
    """Normal fan of a full-dimensional lattice polytope, plus the divisor
    whose section polytope recovers it."""
    K = _load(polytope_file, "polytope")
    if not K.is_full_dimensional():
        _fail("polytope is not full-dimensional", VALIDATION_EXIT)
    fan, coeffs = normal_fan(K)
    fan_doc = formats.fan_to_doc(fan)
    div_doc = formats.divisor_to_doc(TDivisor(fan, coeffs))
    if fan_out:
        formats.dump(fan_doc, fan_out)
    if divisor_out:
        formats.dump(div_doc, divisor_out)
    report = {"fan": fan_doc, "divisor_coefficients": list(coeffs)}
    _emit(
        report,
        as_json,
        [
            f"rays: {[tuple(r) for r in fan.rays]}",
            f"maximal cones: {sorted(sorted(c) for c in fan.maximal)}",
            f"divisor coefficients: {list(coeffs)}",
        ],
    )


@main.command("degree")
@click.argument("fan_file", type=click.Path(exists=True))
@click.argument("divisor_files", nargs=-1, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def degree_cmd(fan_file, divisor_files, as_json):
    """Intersection number of d divisors on a smooth complete fan."""
    fan = _load(fan_file, "fan")
    divisors = []
    for path in divisor_files:
        div = _load(path, "divisor")
        if [tuple(u) for u in div.fan.rays] != [tuple(u) for u in fan.rays]:
            _fail(f"{path}: divisor fan rays differ from the base fan", VALIDATION_EXIT)
        divisors.append(TDivisor(fan, div.coefficients))
    try:
        deg = weight_degree(fan, divisors)
    except ValueError as exc:
        _fail(str(exc), VALIDATION_EXIT)
    _emit({"degree": deg}, as_json, [str(deg)])


@main.command("mixed-volume")
@click.argument("polytope_files", nargs=-1, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def mixed_volume_cmd(polytope_files, as_json):
    """Normalized mixed volume of d polytopes in dimension d."""
    polys = [_load(p, "polytope") for p in polytope_files]
    if not polys:
        _fail("no polytope files given", VALIDATION_EXIT)
    try:
        v = mixed_volume(polys)
    except ValueError as exc:
        _fail(str(exc), VALIDATION_EXIT)
    _emit(
        {"mixed_volume": formats._encode_fraction(v)},
        as_json,
        [formats._encode_fraction(v)],
    )


@main.command("mahler")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--max-grid", type=int, default=1 << 22, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def mahler_cmd(system_file, tol, max_grid, as_json):
    """Numeric Mahler measure of each polynomial of a system."""
    polys, _ = _load(system_file, "system")
    results = []
    for p in polys:
        try:
            est = mahler_numeric(p, tol=tol, max_points=max_grid)
        except (ValueError, ArithmeticError) as exc:
            _fail(str(exc), VALIDATION_EXIT)
        results.append(est)
    bad = any(math.isfinite(e.error) and e.error > tol for e in results)
    report = {
        "estimates": [
            {"value": e.value, "error": e.error, "grid": e.grid} for e in results
        ],
        "tol": tol,
    }
    lines = [f"{e.value:.12g} (err {e.error:.3g}, grid {e.grid})" for e in results]
    _emit(report, as_json, lines)
    if bad:
        _fail("estimate did not converge within tolerance", NUMERIC_EXIT)


@main.command("height")
@click.argument("polytope_file", type=click.Path(exists=True))
@click.argument("point", nargs=-1)
@click.option("--json", "as_json", is_flag=True)
def height_cmd(polytope_file, point, as_json):
    """Canonical height of a rational torus point for a polytope."""
    K = _load(polytope_file, "polytope")
    try:
        x = tuple(Fraction(c) for c in point)
        h = canonical_height_point(K, x)
    except (ValueError, ZeroDivisionError) as exc:
        _fail(str(exc), VALIDATION_EXIT)
    _emit({"height": h}, as_json, [f"{h:.12g}"])


@main.command("bk")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def bk_cmd(system_file, tol, as_json):
    """Root-height bound for a square system; verifies the inequality
    when the system file carries roots."""
    polys, roots = _load(system_file, "system")
    try:
        if roots is None:
            report = bk_bound(polys, tol=tol)
        else:
            report = bk_verify(polys, roots, tol=tol)
    except (ValueError, NoApplicableBoundError) as exc:
        _fail(str(exc), VALIDATION_EXIT)
    doc = {
        "dimension": report.dimension,
        "mixed_volumes": [formats._encode_fraction(v) for v in report.mixed_volumes],
        "mahler": report.mahler,
        "l_bounds": report.l_bounds,
        "rhs": report.rhs,
        "tol": tol,
    }
    if report.lhs is not None:
        doc.update(lhs=report.lhs, slack=report.slack, holds=report.holds)
    _emit(doc, as_json, [report.summary()])
    if report.holds is False:
        _fail("height inequality violated beyond tolerance", NUMERIC_EXIT)


@main.command("jd")
@click.argument("fan_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def jd_cmd(fan_file, as_json):
    """Chow-ring presentation of a smooth complete fan."""
    fan = _load(fan_file, "fan")
    try:
        pres = jd_presentation(fan)
    except ValueError as exc:
        _fail(str(exc), VALIDATION_EXIT)
    lines = [
        "variables: " + " ".join(pres["variables"]),
        "nonface monomials: "
        + "; ".join(
            "*".join(pres["variables"][i] for i in mono)
            for mono in pres["nonface_monomials"]
        ),
        "linear forms: "
        + "; ".join(
            " + ".join(
                f"{c}*{pres['variables'][i]}" for i, c in enumerate(row) if c
            )
            or "0"
            for row in pres["linear_forms"]
        ),
    ]
    _emit(pres, as_json, lines)


if __name__ == "__main__":
    main()

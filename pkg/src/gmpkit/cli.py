"""``gmpkit`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 conversion-precondition error, 4 distance-enumeration cap exceeded.
"""

from __future__ import annotations

import functools
import json
import sys
from collections.abc import Callable
from pathlib import Path

import click

from gmpkit.bounds import BoundError, BoundReport, bound_thm61, bound_thm62
from gmpkit.code import DEFAULT_CAP, CapExceededError, TrivialCodeError
from gmpkit.field import FieldError
from gmpkit.gmp import gmp_generator
from gmpkit.matrix import ShapeError
from gmpkit.qt import ConversionError, gmp_to_qt, qt_invariance_check, qt_to_gmp
from gmpkit.registry import BkpStore, RegistryError
from gmpkit.regression import case_names, load_case, run_case
from gmpkit.ring import PolyError
from gmpkit.specio import (
    SpecError,
    gmp_spec_to_json,
    load_json,
    parse_code,
    parse_field,
    parse_gmp_spec,
    parse_qt_spec,
    qt_spec_to_json,
)

EXIT_FAIL, EXIT_INPUT, EXIT_CONVERSION, EXIT_CAP = 1, 2, 3, 4


def _fail(code: int, msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _guarded(fn: Callable) -> Callable:
    """Map library exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConversionError as exc:
            _fail(EXIT_CONVERSION, str(exc))
        except CapExceededError as exc:
            _fail(EXIT_CAP, f"{exc}; raise --cap to enumerate anyway")
        except (SpecError, FieldError, ShapeError, PolyError, RegistryError, BoundError, TrivialCodeError) as exc:
            _fail(EXIT_INPUT, str(exc))

    return wrapper


def common_options(fn: Callable) -> Callable:
    fn = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                      show_default=True, help="Output format.")(fn)
    fn = click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP, show_default=True,
                      help="Maximum number of codewords enumerated for a minimum distance.")(fn)
    fn = click.option("--bkp", "bkp_path", type=click.Path(dir_okay=False), default=None,
                      help="Best-known-parameter CSV (default: $GMPKIT_BKP, else the bundled table).")(fn)
    return fn


def _load_spec(path: str) -> dict:
    """A spec file, or a bundled-style case file (its ``spec`` member is used)."""
    obj = load_json(path)
    if "spec" in obj and "kind" in obj and isinstance(obj["spec"], dict):
        return obj["spec"]
    return obj


def _emit_json(obj: dict) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _write_spec(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Construct and analyze generalized matrix product (GMP) codes."""


# ---------------------------------------------------------------- gmp


@main.group()
def gmp() -> None:
    """GMP code commands."""


@gmp.command("analyze")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--distance/--no-distance", default=True, show_default=True, help="Compute d(Q) exhaustively.")
@common_options
@_guarded
def gmp_analyze(spec_path: str, distance: bool, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Generator matrix rank data, dimension and (optionally) minimum distance."""
    spec = parse_gmp_spec(_load_spec(spec_path), Path(spec_path).name)
    a = gmp_generator(spec)
    mM = spec.m * spec.M
    predicted = sum(c.dimension for c in spec.codes) if a.rank_condition_met else None
    report = {
        "n": spec.length,
        "m": spec.m,
        "M": spec.M,
        "N": spec.N,
        "r": spec.r,
        "sigma_rank": a.sigma_rank,
        "mM": mM,
        "rank_condition_met": a.rank_condition_met,
        "predicted_dim": predicted,
        "dim": a.dim,
        "is_mp": a.is_mp,
        "d": None,
        "bkp": None,
    }
    if distance and a.dim > 0:
        d = a.code.min_distance(cap)
        report["d"] = d
        report["bkp"] = str(BkpStore.default(bkp_path).classify(spec.field.q, spec.length, a.dim, d))
    if fmt == "json":
        _emit_json(report)
        return
    head = f"n={report['n']} dim={report['dim']}"
    if report["d"] is not None:
        head += f" d={report['d']} bkp={report['bkp']}"
    click.echo(head)
    verdict = "met" if a.rank_condition_met else "not met"
    click.echo(f"sigma_rank={a.sigma_rank} mM={mM} rank_condition={verdict}")
    if predicted is not None:
        click.echo(f"predicted_dim={predicted}")
    click.echo(f"is_mp={'yes' if a.is_mp else 'no'} m={spec.m} M={spec.M} N={spec.N} r={spec.r}")


# ---------------------------------------------------------------- bounds


def _bound_text(rep: BoundReport) -> list[str]:
    if not rep.applicable:
        line = f"{rep.method}: inapplicable ({rep.reason})"
        if rep.actual is not None:
            line += f" actual={rep.actual}"
        return [line]
    param = {"thm61": "D_t", "thm62": "tau_t"}.get(rep.method, "param")
    line = f"{rep.method}: bound={rep.bound}"
    if rep.actual is not None:
        line += f" actual={rep.actual} {rep.verdict}"
    out = [line, f"  {'t':>3} {param:>6} {'d(C_t)':>7} {'term':>6}"]
    out += [f"  {p.t:>3} {p.param:>6} {p.distance:>7} {p.term:>6}" for p in rep.per_t]
    return out


@main.command("bounds")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["thm61", "thm62", "both"]), default="both", show_default=True)
@click.option("--actual/--no-actual", default=False, help="Also compute the true minimum distance.")
@common_options
@_guarded
def bounds_cmd(spec_path: str, method: str, actual: bool, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Evaluate the D_t-based (thm61) and tau_t-based (thm62) distance lower bounds."""
    spec = parse_gmp_spec(_load_spec(spec_path), Path(spec_path).name)
    fns = {"thm61": bound_thm61, "thm62": bound_thm62}
    names = ["thm61", "thm62"] if method == "both" else [method]
    reports = [fns[n](spec, actual=actual, cap=cap) for n in names]
    if fmt == "json":
        _emit_json({"reports": [r.as_dict() for r in reports]})
        return
    for r in reports:
        for line in _bound_text(r):
            click.echo(line)


# ---------------------------------------------------------------- qt


@main.group()
def qt() -> None:
    """Quasi-twisted code conversions."""


@qt.command("to-gmp")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the GMP spec here.")
@common_options
@_guarded
def qt_to_gmp_cmd(spec_path: str, output: str | None, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Factor a generator polynomial matrix into GMP form."""
    code = parse_qt_spec(_load_spec(spec_path), Path(spec_path).name)
    dec, spec = qt_to_gmp(code)
    obj = gmp_spec_to_json(spec)
    if output:
        _write_spec(obj, output)
    if fmt == "json":
        _emit_json({"gs": [str(g) for g in dec.gs], "spec": obj})
        return
    if not output:
        _write_spec(obj, None)
        return
    for i, g in enumerate(dec.gs, 1):
        click.echo(f"g_{i} = {g}")
    for k, a in enumerate(dec.mats):
        click.echo(f"A_{k} = {a.to_literal()}")
    click.echo(f"wrote {output}")


@qt.command("from-gmp")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the QT spec here.")
@common_options
@_guarded
def qt_from_gmp_cmd(spec_path: str, output: str | None, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Build a generator polynomial matrix from a GMP spec with T = T_lambda."""
    spec = parse_gmp_spec(_load_spec(spec_path), Path(spec_path).name)
    code = gmp_to_qt(spec)
    obj = qt_spec_to_json(code)
    if output:
        _write_spec(obj, output)
    if fmt == "json":
        _emit_json({"spec": obj})
        return
    if not output:
        _write_spec(obj, None)
        return
    for row in obj["gpm"]:
        click.echo("[" + ", ".join(row) + "]")
    click.echo(f"wrote {output}")


@qt.command("expand")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--distance/--no-distance", default=True, show_default=True)
@common_options
@_guarded
def qt_expand_cmd(spec_path: str, distance: bool, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Expand a QT code to an F_q generator matrix; report [n,k,d] and T_lambda-invariance."""
    code = parse_qt_spec(_load_spec(spec_path), Path(spec_path).name)
    lin = code.expand()
    report = {
        "n": lin.length,
        "k": lin.dimension,
        "d": None,
        "q": code.field.q,
        "invariant": qt_invariance_check(lin, code.m, code.ring.lam),
        "bkp": None,
    }
    if distance and lin.dimension > 0:
        report["d"] = lin.min_distance(cap)
        report["bkp"] = str(BkpStore.default(bkp_path).classify(code.field.q, lin.length, lin.dimension, report["d"]))
    if fmt == "json":
        _emit_json(report)
        return
    d = "?" if report["d"] is None else report["d"]
    line = f"[{report['n']},{report['k']},{d}]_{report['q']} invariant={'yes' if report['invariant'] else 'no'}"
    if report["bkp"]:
        line += f" bkp={report['bkp']}"
    click.echo(line)


# ---------------------------------------------------------------- code


@main.group("code")
def code_group() -> None:
    """Plain linear code commands."""


@code_group.command("info")
@click.argument("spec_path", type=click.Path(exists=True, dir_okay=False))
@common_options
@_guarded
def code_info(spec_path: str, fmt: str, cap: int, bkp_path: str | None) -> None:
    """Parameters of a code given as {"field": .., "gen" | "constacyclic": ..}."""
    obj = _load_spec(spec_path)
    where = Path(spec_path).name
    if "field" not in obj:
        raise SpecError(f"{where}: missing field 'field'")
    field = parse_field(obj["field"], f"{where}.field")
    lin = parse_code(field, obj.get("code", obj), where)
    n, k = lin.length, lin.dimension
    d = lin.min_distance(cap) if k > 0 else None
    verdict = str(BkpStore.default(bkp_path).classify(field.q, n, k, d)) if d is not None else None
    report = {"q": field.q, "n": n, "k": k, "d": d, "bkp": verdict}
    if fmt == "json":
        _emit_json(report)
        return
    click.echo(f"[{n},{k},{'?' if d is None else d}]_{field.q}" + (f" bkp={verdict}" if verdict else ""))


# ---------------------------------------------------------------- bkp


@main.group()
def bkp() -> None:
    """Best-known-parameter registry."""


@bkp.command("check")
@click.argument("q", type=int)
@click.argument("n", type=int)
@click.argument("k", type=int)
@click.argument("d", type=int)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--bkp", "bkp_path", type=click.Path(dir_okay=False), default=None)
@_guarded
def bkp_check(q: int, n: int, k: int, d: int, fmt: str, bkp_path: str | None) -> None:
    """Classify a [n,k,d]_q code against the registry."""
    store = BkpStore.default(bkp_path)
    v = store.classify(q, n, k, d)
    if fmt == "json":
        _emit_json({"q": q, "n": n, "k": k, "d": d, "d_best": v.d_best, "verdict": str(v)})
        return
    line = f"[{n},{k},{d}]_{q}: {v}"
    if v.d_best is not None:
        line += f" (d_best={v.d_best})"
    click.echo(line)


# ---------------------------------------------------------------- verify-paper


@main.command("verify-paper")
@click.option("--filter", "filters", multiple=True, help="Run only the named case(s), e.g. ex4.1.")
@click.option("--case", "case_files", multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="Run a case file instead of the bundled ones.")
@common_options
@_guarded
def verify_paper(filters: tuple[str, ...], case_files: tuple[str, ...], fmt: str, cap: int, bkp_path: str | None) -> None:
    """Replay the bundled worked examples; exit 0 iff all pass."""
    names: list[str] = list(case_files) or case_names()
    if filters and not case_files:
        unknown = [f for f in filters if f not in names]
        if unknown:
            raise SpecError(f"unknown case(s): {', '.join(unknown)}; available: {', '.join(names)}")
        names = [n for n in names if n in filters]
    store = BkpStore.default(bkp_path)
    results = [run_case(load_case(n), cap=cap, store=store) for n in names]
    passed = sum(r.passed for r in results)
    if fmt == "json":
        _emit_json({"passed": passed, "total": len(results), "cases": [r.as_dict() for r in results]})
    else:
        for r in results:
            click.echo(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
            for c in r.failures():
                click.echo(f"    {c.describe()}")
        click.echo(f"{passed}/{len(results)} PASS")
    if passed != len(results):
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":  # pragma: no cover
    main()

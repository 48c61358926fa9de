"""Replay the bundled worked examples and compare against recorded expectations.

Each case file under ``data/cases`` holds a spec (in the :mod:`gmpkit.specio`
formats) and an ``expect`` table.  Only the keys present in ``expect`` are
checked, so a case pins exactly the numbers it records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from gmpkit.bounds import bound_thm61, bound_thm62, compute_Dt, compute_tau, is_nsc, rank_condition
from gmpkit.code import DEFAULT_CAP
from gmpkit.gmp import gmp_generator
from gmpkit.matrix import Matrix
from gmpkit.qt import QtCode, gmp_to_qt, qt_invariance_check, qt_to_gmp
from gmpkit.registry import BkpStore
from gmpkit.ring import RingElem
from gmpkit.specio import SpecError, parse_field, parse_gmp_spec, parse_matrix, parse_poly, parse_qt_spec

KINDS = ("gmp", "bounds", "gmp_to_qt", "qt_to_gmp", "matrix")


@dataclass
class Check:
    label: str
    expected: Any
    got: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def describe(self) -> str:
        return f"{self.label}: expected {_show(self.expected)}, got {_show(self.got)}"


@dataclass
class CaseResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"label": c.label, "expected": _jsonable(c.expected), "got": _jsonable(c.got), "ok": c.ok}
                for c in self.checks
            ],
        }


def _show(v: Any) -> str:
    if isinstance(v, Matrix):
        return v.to_literal()
    if isinstance(v, list) and v and isinstance(v[0], Matrix):
        return "[" + " | ".join(a.to_literal() for a in v) + "]"
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, Matrix):
        return v.to_literal()
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def _cases_dir():
    return resources.files("gmpkit") / "data" / "cases"


def case_names() -> list[str]:
    return sorted(p.name[: -len(".json")] for p in _cases_dir().iterdir() if p.name.endswith(".json"))


def load_case(name_or_path: str | Path) -> dict:
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        ref = _cases_dir() / f"{name_or_path}.json"
        if not ref.is_file():
            raise SpecError(f"no bundled case named {name_or_path!r}")
        text = ref.read_text(encoding="utf-8")
    case = json.loads(text)
    if case.get("kind") not in KINDS:
        raise SpecError(f"{case.get('name', name_or_path)}: unknown case kind {case.get('kind')!r}")
    return case


class _Checker:
    def __init__(self, result: CaseResult, expect: dict) -> None:
        self.result = result
        self.expect = expect

    def want(self, key: str) -> bool:
        return key in self.expect

    def add(self, key: str, got: Any, expected: Any = None) -> None:
        self.result.checks.append(Check(key, self.expect[key] if expected is None else expected, got))


def run_case(case: dict, *, cap: int = DEFAULT_CAP, store: BkpStore | None = None) -> CaseResult:
    """Evaluate one case; raises CapExceededError if a distance exceeds ``cap``."""
    store = store or BkpStore.default()
    result = CaseResult(case["name"])
    ck = _Checker(result, case["expect"])
    kind, spec_obj = case["kind"], case["spec"]
    where = case["name"]

    if kind == "matrix":
        F = parse_field(spec_obj["field"], f"{where}.field")
        mats = [parse_matrix(F, a, f"{where}.mats[{k}]") for k, a in enumerate(spec_obj["mats"])]
        _matrix_checks(ck, mats, cap)
        return result

    if kind in ("gmp", "bounds", "gmp_to_qt"):
        spec = parse_gmp_spec(spec_obj, where)
        F = spec.field
        analysis = gmp_generator(spec)
        code = analysis.code
        if ck.want("n"):
            ck.add("n", spec.length)
        if ck.want("sigma_rank"):
            ck.add("sigma_rank", analysis.sigma_rank)
        if ck.want("size_condition"):
            ck.add("size_condition", analysis.rank_condition_met)
        if ck.want("gen"):
            ck.add("gen", analysis.gen, parse_matrix(F, ck.expect["gen"], f"{where}.expect.gen"))
        _matrix_checks(ck, spec.mats, cap)
        if ck.want("thm61"):
            ck.add("thm61", bound_thm61(spec, cap=cap).bound)
        if ck.want("thm62"):
            ck.add("thm62", bound_thm62(spec, cap=cap).bound)
        if kind == "gmp_to_qt":
            qt = gmp_to_qt(spec)
            if ck.want("gpm_factored"):
                ck.add("gpm", _gpm_strings(qt), _factored(qt, ck.expect["gpm_factored"], where))
            expanded = qt.expand()
            ck.result.checks.append(Check("qt expansion = GMP code", True, expanded.same_code(code)))
            if ck.want("invariant"):
                ck.add("invariant", qt_invariance_check(expanded, qt.m, qt.ring.lam))
        _code_checks(ck, F.q, code, store, cap)
        return result

    # qt_to_gmp
    qt = parse_qt_spec(spec_obj, where)
    F = qt.field
    dec, spec = qt_to_gmp(qt)
    expanded = qt.expand()
    if ck.want("gs"):
        ck.add("gs", [str(g) for g in dec.gs], [str(parse_poly(F, g, f"{where}.expect.gs")) for g in ck.expect["gs"]])
    if ck.want("mats"):
        ck.add("mats", dec.mats, [parse_matrix(F, a, f"{where}.expect.mats") for a in ck.expect["mats"]])
    ck.result.checks.append(Check("GMP code = qt expansion", True, gmp_generator(spec).code.same_code(expanded)))
    if ck.want("n"):
        ck.add("n", expanded.length)
    if ck.want("invariant"):
        ck.add("invariant", qt_invariance_check(expanded, qt.m, qt.ring.lam))
    if ck.want("equivalent_gpm"):
        other = QtCode(qt.ring, [[qt.ring(parse_poly(F, e, f"{where}.expect.equivalent_gpm")) for e in row]
                                 for row in ck.expect["equivalent_gpm"]])
        ck.result.checks.append(Check("equivalent_gpm spans the same code", True, other.expand().same_code(expanded)))
        if ck.want("equivalent_mats"):
            ck.add("equivalent_mats", qt_to_gmp(other)[0].mats,
                   [parse_matrix(F, a, f"{where}.expect.equivalent_mats") for a in ck.expect["equivalent_mats"]])
    _code_checks(ck, F.q, expanded, store, cap)
    return result


def _matrix_checks(ck: _Checker, mats: list[Matrix], cap: int) -> None:
    M = mats[0].rows
    if ck.want("nsc"):
        ck.add("nsc", is_nsc(mats[0]))
    if ck.want("rank_condition"):
        ck.add("rank_condition", rank_condition(mats))
    if ck.want("D"):
        ck.add("D", [compute_Dt(mats, t, cap) for t in range(1, M + 1)])
    if ck.want("tau"):
        ck.add("tau", [compute_tau(mats, t) for t in range(1, M + 1)])


def _code_checks(ck: _Checker, q: int, code, store: BkpStore, cap: int) -> None:
    if ck.want("dim"):
        ck.add("dim", code.dimension)
    d = None
    if ck.want("d") or ck.want("bkp"):
        d = code.min_distance(cap)
    if ck.want("d"):
        ck.add("d", d)
    if ck.want("bkp"):
        ck.add("bkp", str(store.classify(q, code.length, code.dimension, d)))


def _gpm_strings(qt: QtCode) -> list[list[str]]:
    return qt.to_strings()


def _factored(qt: QtCode, fac: dict, where: str) -> list[list[str]]:
    ring, F = qt.ring, qt.field
    out = []
    for g_txt, row in zip(fac["g"], fac["cofactor"]):
        g = parse_poly(F, g_txt, f"{where}.expect.gpm_factored.g")
        out.append([str(RingElem(ring, ring.reduce(g * parse_poly(F, e, f"{where}.expect.gpm_factored")))) for e in row])
    return out


def run_all(names: list[str] | None = None, *, cap: int = DEFAULT_CAP, store: BkpStore | None = None) -> list[CaseResult]:
    store = store or BkpStore.default()
    return [run_case(load_case(n), cap=cap, store=store) for n in (names or case_names())]

"""Batch command line: solve configured states, reproduce the built-in tables,
compare against the shooting solver.

Exit status: 0 ok, 1 invalid input, 2 a state failed to solve, 3 a
``--check`` comparison exceeded its tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from . import __version__
from .effective import EquationKind, PotentialSpec, build_effective, ell_from_kappa
from .errors import ConfigError, DegenerateDenominatorError, PsletError
from .exact import ExactCase, ExactKind
from .powerlaw import reduced_problem
from .powersum import PowerSum, exact
from .presets import TABLES, TablePreset
from .recursion import energy_corrections
from .shooting import ShootingConfig, shoot_eigenvalue
from .summation import pade, partial_sum, stabilization

EXIT_OK, EXIT_VALIDATION, EXIT_SOLVER, EXIT_CHECK = 0, 1, 2, 3
SCHEMA_VERSION = 1
DEFAULT_COMPARE_TOL = 1e-6
ORACLE_DIGITS = 12


# --- configuration -----------------------------------------------------------

@dataclass(frozen=True)
class StateSpec:
    k: int
    ell: int
    kappa: int | None = None

    @property
    def key(self):
        return (self.k, self.ell, self.kappa if self.kappa is not None else 0)

    @property
    def label(self) -> str:
        base = f"k={self.k} l={self.ell}"
        return base if self.kappa is None else f"{base} kappa={self.kappa}"


@dataclass(frozen=True)
class RunConfig:
    equation: EquationKind
    mass: Fraction
    vector: PowerSum
    scalar: PowerSum
    states: tuple
    order: int = 14
    precision_digits: int = 60
    pade: tuple = ()
    branch: int = 1
    report_mass: bool = False
    oracle: ShootingConfig = field(default_factory=ShootingConfig)
    tolerance: float = DEFAULT_COMPARE_TOL
    # raw potential terms, kept so the config can be shipped to workers
    raw: dict = field(default_factory=dict, compare=False)

    def spec_for(self, state: StateSpec) -> PotentialSpec:
        kappa = state.kappa if state.kappa is not None else -(state.ell + 1)
        return PotentialSpec(self.vector, self.scalar, self.mass, self.equation, kappa)

    def problem_for(self, state: StateSpec):
        return build_effective(self.spec_for(state), state.ell)


def _need(data, key, path, types, default=None, required=False):
    if key not in data:
        if required:
            raise ConfigError("is required", f"{path}{key}")
        return default
    value = data[key]
    if isinstance(value, bool) and bool not in types:
        raise ConfigError(f"must be {_type_names(types)}", f"{path}{key}")
    if not isinstance(value, types):
        raise ConfigError(f"must be {_type_names(types)}", f"{path}{key}")
    return value


def _type_names(types):
    names = {int: "an integer", float: "a number", str: "a string", list: "a list",
             dict: "an object", bool: "a boolean"}
    return " or ".join(names.get(t, t.__name__) for t in types)


def _number(value, path) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError("must be a number or numeric string", path)
    try:
        return exact(value)
    except (ValueError, ZeroDivisionError, PsletError) as exc:
        raise ConfigError(f"is not a number ({exc})", path) from None


def _terms(items, path) -> PowerSum:
    if not isinstance(items, list):
        raise ConfigError("must be a list of {coeff, power}", path)
    terms = []
    for i, item in enumerate(items):
        p = f"{path}[{i}]"
        if not isinstance(item, dict):
            raise ConfigError("must be an object with coeff and power", p)
        unknown = set(item) - {"coeff", "power"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)}", p)
        for key in ("coeff", "power"):
            if key not in item:
                raise ConfigError("is required", f"{p}.{key}")
        terms.append((_number(item["coeff"], f"{p}.coeff"), _number(item["power"], f"{p}.power")))
    return PowerSum(terms)


_KNOWN_KEYS = {"schema", "equation", "mass", "potential", "states", "order", "precision_digits",
               "pade", "branch", "report_mass", "oracle", "tolerance"}


def parse_config(data) -> RunConfig:
    """Validate a decoded JSON document; errors carry a field path."""
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object", "$")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", "$")
    schema = _need(data, "schema", "", (int,), required=True)
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema {schema}; expected {SCHEMA_VERSION}", "schema")
    try:
        equation = EquationKind.parse(_need(data, "equation", "", (str,), required=True))
    except PsletError as exc:
        raise ConfigError(str(exc), "equation") from None
    if "mass" not in data:
        raise ConfigError("is required", "mass")
    mass = _number(data["mass"], "mass")
    if not mass > 0:
        raise ConfigError("must be positive", "mass")

    pot = _need(data, "potential", "", (dict,), required=True)
    unknown = set(pot) - {"vector", "scalar"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", "potential")
    vector = _terms(pot.get("vector", []), "potential.vector")
    scalar = _terms(pot.get("scalar", []), "potential.scalar")

    raw_states = _need(data, "states", "", (list,), required=True)
    if not raw_states:
        raise ConfigError("must list at least one state", "states")
    states = []
    for i, st in enumerate(raw_states):
        p = f"states[{i}]."
        if not isinstance(st, dict):
            raise ConfigError("must be an object with k and ell", f"states[{i}]")
        unknown = set(st) - {"k", "ell", "kappa"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)}", f"states[{i}]")
        k = _need(st, "k", p, (int,), required=True)
        ell = _need(st, "ell", p, (int,), required=True)
        kappa = _need(st, "kappa", p, (int,))
        if k < 0:
            raise ConfigError("must be non-negative", f"{p}k")
        if ell < 0:
            raise ConfigError("must be non-negative", f"{p}ell")
        if equation is EquationKind.DIRAC:
            if kappa is None:
                kappa = -(ell + 1)
            if kappa == 0 or ell_from_kappa(kappa) != ell:
                raise ConfigError(f"kappa={kappa} does not belong to ell={ell}", f"{p}kappa")
        elif kappa is not None:
            raise ConfigError("only meaningful for the Dirac equation", f"{p}kappa")
        states.append(StateSpec(k, ell, kappa))
    if len({s.key for s in states}) != len(states):
        raise ConfigError("contains duplicate states", "states")

    order = _need(data, "order", "", (int,), 14)
    if order < 1:
        raise ConfigError("must be at least 1", "order")
    digits = _need(data, "precision_digits", "", (int,), 60)
    if digits < 30:
        raise ConfigError("must be at least 30", "precision_digits")
    pade_list = []
    for i, pair in enumerate(_need(data, "pade", "", (list,), [])):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0
                           for x in pair)):
            raise ConfigError("must be a pair [i, j] of non-negative integers", f"pade[{i}]")
        pade_list.append(tuple(pair))
    branch_raw = _need(data, "branch", "", (str,), "+")
    branches = {"+": 1, "-": -1, "−": -1}
    if branch_raw not in branches:
        raise ConfigError("must be '+' or '-'", "branch")
    report_mass = _need(data, "report_mass", "", (bool,), False)
    tol = _need(data, "tolerance", "", (int, float), DEFAULT_COMPARE_TOL)
    if not tol > 0:
        raise ConfigError("must be positive", "tolerance")
    oracle_raw = _need(data, "oracle", "", (dict,), {})
    allowed = {"r_min", "r_max", "steps", "bisection_tol", "energy_bracket"}
    unknown = set(oracle_raw) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", "oracle")
    try:
        oracle_kw = dict(oracle_raw)
        if "energy_bracket" in oracle_kw:
            oracle_kw["energy_bracket"] = tuple(oracle_kw["energy_bracket"])
        oracle = ShootingConfig(**oracle_kw)
    except ConfigError as exc:
        raise ConfigError(exc.message, f"oracle.{exc.field}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), "oracle") from None

    return RunConfig(equation, mass, vector, scalar, tuple(states), order, digits,
                     tuple(pade_list), branches[branch_raw], report_mass, oracle, float(tol),
                     raw=data)


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON config file.

    Syntax errors are reported with line and column.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read: {exc.strerror}", path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                          path) from None
    return parse_config(data)


# --- per-state work ------------------------------------------------------------

def _fmt(x, digits) -> str:
    return mpmath.nstr(mpf(x), digits, strip_zeros=False) if x != 0 else "0"


def _exact_case(cfg: RunConfig, state: StateSpec):
    """Closed-form case matching this configuration, if there is one."""
    V, S = cfg.vector.terms, cfg.scalar.terms
    coul = lambda t: len(t) == 1 and t[0][1] == -1 and t[0][0] < 0  # noqa: E731
    if coul(V) and coul(S) and V[0][0] == S[0][0]:
        return ExactCase(ExactKind.MIXED_COULOMB,
                         dict(m=cfg.mass, A=-V[0][0], k=state.k, ell=state.ell))
    if cfg.equation is EquationKind.KLEIN_GORDON:
        if coul(V) and not S:
            return ExactCase(ExactKind.KG_VECTOR_COULOMB,
                             dict(m=cfg.mass, A=-V[0][0], k=state.k, ell=state.ell))
        if coul(S) and not V:
            return ExactCase(ExactKind.KG_SCALAR_COULOMB,
                             dict(m=cfg.mass, A=-S[0][0], k=state.k, ell=state.ell))
    return None


def _row(order, value, method, digits):
    return {"order": str(order), "value": _fmt(value, digits), "method": method}


def solve_state(cfg: RunConfig, state: StateSpec, with_oracle: bool = False,
                pade_all: bool = False) -> dict:
    """All requested numbers for one state, formatted, or an error record."""
    out = {"state": state.label, "k": state.k, "ell": state.ell, "kappa": state.kappa,
           "rows": [], "error": None, "stabilization": None}
    digits = cfg.precision_digits
    scale = 2 if cfg.report_mass else 1
    with mpmath.workdps(digits):
        try:
            prob = cfg.problem_for(state)
            series = energy_corrections(prob, state.k, cfg.order, branch=cfg.branch)
        except PsletError as exc:
            out["error"] = f"{type(exc).__name__}: {exc}"
            return out
        rows = out["rows"]
        rows.append(_row(-1, scale * series.coefficient(-1), "leading", digits))
        for N in range(1, cfg.order + 1):
            rows.append(_row(N, scale * partial_sum(series, N), "partial_sum", digits))
        pairs = list(cfg.pade)
        if pade_all:
            pairs += [(i, t - i) for t in range(cfg.order) for i in range(t + 1)]
        for i, j in dict.fromkeys(pairs):
            for conv in ("full", "corrections"):
                method = "pade" if conv == "full" else "pade_corrections"
                try:
                    res = pade(series, i, j, conv)
                except DegenerateDenominatorError:
                    rows.append({"order": f"{i}/{j}", "value": "degenerate", "method": method})
                    continue
                except PsletError as exc:
                    out["error"] = f"{type(exc).__name__}: {exc}"
                    return out
                flag = "_pole" if res.pole_on_disc else ""
                rows.append(_row(f"{i}/{j}", scale * res.energy, method + flag, digits))
        try:
            N, val = stabilization(series)
            out["stabilization"] = N
            rows.append(_row(N, scale * val, "stabilization", digits))
        except PsletError:
            rows.append({"order": "", "value": "none", "method": "stabilization"})
        if with_oracle:
            last = partial_sum(series, cfg.order)
            try:
                res = shoot_eigenvalue(prob, state.k, cfg.oracle)
            except PsletError as exc:
                out["error"] = f"{type(exc).__name__}: {exc}"
                return out
            rows.append(_row("", scale * mpf(res.E_num), "oracle", ORACLE_DIGITS))
            rows.append({"order": "", "value": f"{res.mesh_halving_delta:.3e}",
                         "method": "oracle_mesh_delta"})
            worst = abs(mpf(res.E_num) - last) / max(abs(last), mpf(1))
            case = _exact_case(cfg, state)
            if case is not None:
                ex = case.value()
                rows.append(_row("", scale * ex, "exact", digits))
                worst = max(worst, abs(ex - last) / max(abs(ex), mpf(1)),
                            abs(ex - mpf(res.E_num)) / max(abs(ex), mpf(1)))
            out["compare_ok"] = bool(worst <= cfg.tolerance)
            rows.append({"order": "", "value": f"{float(worst):.3e}",
                         "method": "max_relative_difference"})
    return out


def _solve_job(payload):
    raw, state, with_oracle, pade_all = payload
    cfg = parse_config(raw)
    return solve_state(cfg, state, with_oracle, pade_all)


def _map_jobs(fn, payloads, jobs):
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, payloads))
    return [fn(p) for p in payloads]


def run_config(cfg: RunConfig, with_oracle=False, pade_all=False, jobs=1) -> list:
    """Solve every state, ordered by ``(k, l, kappa)``."""
    states = sorted(cfg.states, key=lambda s: s.key)
    payloads = [(cfg.raw, s, with_oracle, pade_all) for s in states]
    return _map_jobs(_solve_job, payloads, jobs)


# --- built-in tables -------------------------------------------------------------

def _table_state(preset: TablePreset, state, with_oracle: bool) -> dict:
    """Computed quantities for one state of a built-in table, keyed by label."""
    cfg = preset.config
    digits = cfg["precision_digits"]
    k, ell = state
    values = {}
    with mpmath.workdps(digits):
        if preset.kind == "powerlaw":
            prob = reduced_problem(cfg["nu"], ell)
            series = energy_corrections(prob, k, cfg["order"])
            N, val = stabilization(series, transform=lambda e: e * e)
            values["N"] = N
            values["Ec"] = val
            if with_oracle:
                values["E_num"] = mpf(shoot_eigenvalue(prob, k).E_num) ** 2
            return {"state": state, "values": _stringify(values)}
        kappa = None
        if cfg["equation"] == "dirac":
            kappa = -(ell + 1) if preset.table_id in (1, 4) else ell
        run = parse_config({**cfg, "states": [{"k": k, "ell": ell}
                                              | ({"kappa": kappa} if kappa is not None else {})]})
        st = run.states[0]
        prob = run.problem_for(st)
        series = energy_corrections(prob, k, run.order)
        q = "M" if run.report_mass else "E"
        scale = 2 if run.report_mass else 1
        for N in range(1, run.order + 1):
            values[f"{q}({N})"] = scale * partial_sum(series, N)
        for label in preset.published.get(state, {}):
            if label.startswith(f"{q}[") and label.endswith("]"):
                i, j = (int(x) for x in label[2:-1].split(","))
                for conv, suffix in (("full", ""), ("corrections", "*")):
                    try:
                        values[label + suffix] = scale * pade(series, i, j, conv).energy
                    except DegenerateDenominatorError:
                        values[label + suffix] = None
        try:
            values["stab"] = stabilization(series)[0]
        except PsletError:
            values["stab"] = None
        if with_oracle:
            values[f"{q}_num"] = scale * mpf(shoot_eigenvalue(prob, k, run.oracle).E_num)
    return {"state": state, "values": _stringify(values)}


def _stringify(values):
    out = {}
    for key, v in values.items():
        if v is None or isinstance(v, int):
            out[key] = v
        else:
            out[key] = mpmath.nstr(v, 15, strip_zeros=False)
    return out


def _table_job(payload):
    table_id, state, with_oracle = payload
    preset = TABLES[table_id]
    try:
        return _table_state(preset, state, with_oracle)
    except PsletError as exc:
        return {"state": state, "values": {}, "error": f"{type(exc).__name__}: {exc}"}


def _decimals(text: str) -> int:
    return len(text.split(".")[1]) if "." in text else 0


def run_table(table_id: int, with_oracle=False, jobs=1) -> dict:
    """Computed versus published values for one built-in table.

    Every comparison row carries ``computed``, ``published``, ``difference``
    and ``status`` (``ok``, ``FAIL``, ``shown`` or ``excluded``).
    """
    preset = TABLES[table_id]
    states = sorted(preset.published)
    results = _map_jobs(_table_job, [(table_id, s, with_oracle) for s in states], jobs)
    report = {"table": table_id, "title": preset.title, "states": [], "failures": 0,
              "errors": 0}
    for res in results:
        state = res["state"]
        entry = {"state": list(state), "rows": [], "error": res.get("error")}
        if entry["error"]:
            report["errors"] += 1
            report["states"].append(entry)
            continue
        vals = res["values"]
        checks = preset.checks_for(state)
        published = dict(preset.published[state])
        excluded = preset.excluded.get(state, {})
        labels = list(published) + [lab for lab in excluded if lab not in published]
        for label in labels:
            pub = published.get(label, excluded.get(label))
            comp = vals.get(label)
            row = {"quantity": label, "computed": comp, "published": str(pub),
                   "difference": None, "status": "shown"}
            if label in excluded:
                row["status"] = "excluded"
            if comp is not None and label != "N":
                diff = mpf(comp) - mpf(pub)
                row["difference"] = f"{float(diff):+.2e}"
                row["computed"] = _round_like(comp, str(pub))
                if label in checks and row["status"] != "excluded":
                    row["status"] = "ok" if abs(diff) <= checks[label] else "FAIL"
                    row["tolerance"] = checks[label]
                elif label.endswith("_num") and preset.oracle_rel_tol is not None:
                    ok = abs(diff) <= preset.oracle_rel_tol * abs(mpf(pub))
                    row["status"] = "ok" if ok else "FAIL"
                    row["tolerance"] = f"{preset.oracle_rel_tol} rel"
            if label == "N":
                row["computed"] = comp
            if row["status"] == "FAIL":
                report["failures"] += 1
            entry["rows"].append(row)
            if label + "*" in vals and vals[label + "*"] is not None:
                alt = vals[label + "*"]
                entry["rows"].append({
                    "quantity": label + " (corrections)", "computed": _round_like(alt, str(pub)),
                    "published": str(pub), "difference": f"{float(mpf(alt) - mpf(pub)):+.2e}",
                    "status": "shown"})
        for comp_label, pub_label, tol in preset.cross_checks:
            if comp_label in vals and pub_label in published:
                diff = mpf(vals[comp_label]) - mpf(published[pub_label])
                ok = abs(diff) <= tol
                report["failures"] += 0 if ok else 1
                entry["rows"].append({
                    "quantity": f"{comp_label} vs {pub_label}",
                    "computed": _round_like(vals[comp_label], published[pub_label]),
                    "published": published[pub_label], "difference": f"{float(diff):+.2e}",
                    "status": "ok" if ok else "FAIL", "tolerance": tol})
        if preset.kind != "powerlaw":
            entry["stabilization"] = vals.get("stab")
        report["states"].append(entry)
    return report


def _round_like(value: str, published: str) -> str:
    places = max(_decimals(published) + 2, 6)
    return mpmath.nstr(mpf(value), places + 1, strip_zeros=False, min_fixed=-mpmath.inf,
                       max_fixed=mpmath.inf)


# --- output ------------------------------------------------------------------

def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def format_solve(results, fmt, report_mass) -> str:
    q = "M" if report_mass else "E"
    if fmt == "json":
        return json.dumps({"schema": SCHEMA_VERSION, "quantity": q, "states": results},
                          indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = []
        for res in results:
            if res["error"]:
                rows.append([res["state"], "", res["error"], "error"])
            rows += [[res["state"], r["order"], r["value"], r["method"]] for r in res["rows"]]
        return _csv(rows, ["state", "order", "value", "method"])
    lines = []
    for res in results:
        lines.append(f"[{res['state']}]")
        if res["error"]:
            lines.append(f"  error: {res['error']}")
            continue
        for r in res["rows"]:
            lab = _text_label(q, r)
            lines.append(f"  {lab:<24} {r['value']}")
    return "\n".join(lines) + "\n"


def _text_label(q, r):
    m, o = r["method"], r["order"]
    if m == "leading":
        return f"{q}^(-1) term"
    if m == "partial_sum":
        return f"{q}({o})"
    if m.startswith("pade"):
        conv = " corr" if "corrections" in m else ""
        pole = " (pole)" if m.endswith("_pole") else ""
        return f"{q}[{o}]{conv}{pole}"
    if m == "stabilization":
        return f"stable at N={o}" if o else "stable: none"
    return m


def format_table(report, fmt) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = []
        for st in report["states"]:
            label = f"k={st['state'][0]} l={st['state'][1]}"
            if st["error"]:
                rows.append([label, "", st["error"], "error", "", "", ""])
            for r in st["rows"]:
                rows.append([label, r["quantity"], r["computed"] if r["computed"] is not None else "",
                             "table", r["published"], r["difference"] or "", r["status"]])
        return _csv(rows, ["state", "order", "value", "method", "published", "difference",
                           "status"])
    lines = [f"Table {report['table']}: {report['title']}"]
    for st in report["states"]:
        lines.append(f"(k, l) = ({st['state'][0]}, {st['state'][1]})")
        if st["error"]:
            lines.append(f"  error: {st['error']}")
            continue
        lines.append(f"  {'quantity':<22}{'computed':>16}{'published':>14}{'difference':>12}  status")
        for r in st["rows"]:
            comp = "" if r["computed"] is None else str(r["computed"])
            lines.append(f"  {r['quantity']:<22}{comp:>16}{r['published']:>14}"
                         f"{r['difference'] or '':>12}  {r['status']}")
        if st.get("stabilization") is not None:
            lines.append(f"  partial sums stabilize at N={st['stabilization']}")
    lines.append(f"comparisons failed: {report['failures']}")
    return "\n".join(lines) + "\n"


def _meta(fmt, started) -> str:
    info = {"version": __version__, "python": platform.python_version(),
            "started": time.strftime("%Y-%m-%dT%H:%M:%S", time.localtime(started)),
            "elapsed_s": round(time.time() - started, 3)}
    if fmt == "json":
        return json.dumps({"meta": info}, sort_keys=True) + "\n"
    return "# " + " ".join(f"{k}={v}" for k, v in info.items()) + "\n"


# --- entry point --------------------------------------------------------------

def _pade_pair(text):
    if text == "all":
        return "all"
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j or 'all', got {text!r}") from None
    if i < 0 or j < 0:
        raise argparse.ArgumentTypeError("Pade degrees must be non-negative")
    return (i, j)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pslet",
        description="Bound-state energies from the shifted-l large-order expansion.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON run configuration")
    src.add_argument("--table", type=int, choices=sorted(TABLES),
                     help="reproduce a built-in reference table")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--order", type=int, help="number of corrections (overrides config)")
    p.add_argument("--precision", type=int, metavar="D", help="working digits (overrides config)")
    p.add_argument("--pade", type=_pade_pair, action="append", default=[], metavar="i,j",
                   help="add a Pade approximant; 'all' lists every supported one")
    p.add_argument("--oracle", action="store_true",
                   help="also run the shooting solver and the closed form when one applies")
    p.add_argument("--check", action="store_true",
                   help="exit 3 when a comparison exceeds its tolerance")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--meta", action="store_true", help="append run metadata")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.time()
    out = sys.stdout
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_VALIDATION

    if args.table is not None:
        if args.order or args.precision or args.pade:
            print("error: --order, --precision and --pade apply to --config runs",
                  file=sys.stderr)
            return EXIT_VALIDATION
        report = run_table(args.table, with_oracle=args.oracle, jobs=args.jobs)
        out.write(format_table(report, args.format))
        if args.meta:
            out.write(_meta(args.format, started))
        if report["errors"]:
            return EXIT_SOLVER
        return EXIT_CHECK if args.check and report["failures"] else EXIT_OK

    try:
        cfg = load_config(args.config)
        raw = dict(cfg.raw)
        if args.order is not None:
            raw["order"] = args.order
        if args.precision is not None:
            raw["precision_digits"] = args.precision
        pairs = [p for p in args.pade if p != "all"]
        if pairs:
            raw["pade"] = [list(p) for p in dict.fromkeys(
                [tuple(x) for x in raw.get("pade", [])] + pairs)]
        cfg = parse_config(raw)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    results = run_config(cfg, with_oracle=args.oracle, pade_all="all" in args.pade,
                         jobs=args.jobs)
    out.write(format_solve(results, args.format, cfg.report_mass))
    if args.meta:
        out.write(_meta(args.format, started))
    failed = [r for r in results if r["error"]]
    for r in failed:
        print(f"solver error [{r['state']}]: {r['error']}", file=sys.stderr)
    if failed:
        return EXIT_SOLVER
    if args.check and args.oracle and not all(r.get("compare_ok", True) for r in results):
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

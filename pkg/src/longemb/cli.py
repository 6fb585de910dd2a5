"""Command-line interface: ``longemb {euler,homology,verify,emb-adjust,stiefel}``.

Everything written to stdout is deterministic; cache status goes to stderr
so warm and cold runs print identical output.
"""
from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

import click

from . import cache, complex_e, complex_hh, emb, genfunc, reference, symfunc
from .exactq import rank
from .genfunc import Table

METHODS = ("complex-e", "complex-hh", "pairing", "genfunc")
SUITES = ("appendix", "small-complexity", "cross-method", "d-squared")
FORMATS = ("csv", "json", "md")
# enumeration limits of the direct methods
MAX_T = {"complex-e": 6, "complex-hh": 4}
# representatives used when only a parity is requested
REP_M = {1: 3, 0: 2}
REP_N = {1: 9, 0: 8}
PARITY_REPS = [(3, 9), (3, 8), (2, 7), (2, 6)]


class ParityOrInt(click.ParamType):
    name = "odd|even|INT"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        v = str(value).lower()
        if v in ("odd", "even"):
            return v
        try:
            return int(v)
        except ValueError:
            self.fail(f"{value!r} is neither a parity nor an integer", param, ctx)


@dataclass
class JobSpec:
    command: str
    m: int
    n: int
    max_s: int = 0
    max_t: int = 0
    method: str = "genfunc"
    output: str = "csv"
    cache_dir: Optional[str] = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.max_s < 0 or self.max_t < 0:
            raise click.UsageError("ranges must be nonnegative")
        if self.method not in METHODS:
            raise click.UsageError(f"unknown method {self.method!r}")
        limit = MAX_T.get(self.method)
        if limit is not None and self.max_t > limit:
            raise click.UsageError(
                f"--method {self.method} enumerates graphs and stops at t = {limit}; use genfunc")


def _resolve(value, reps: Dict[int, int]) -> int:
    if value == "odd":
        return reps[1]
    if value == "even":
        return reps[0]
    return int(value)


def _map(fn: Callable, items: List, jobs: int) -> List:
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_star, [(fn, it) for it in items]))


def _star(arg):
    fn, it = arg
    return fn(*it)


# ---------------------------------------------------------------------------
# euler


def _euler_epi_job(m, n, s, t):
    return (s, t), complex_e.euler_epi(m, n, s, t)


def _euler_hh_job(m, n, s, t, connected, cache_dir):
    sl = complex_hh.build_hh_slice(m, n, s, t, connected, cache_dir)
    return (s, t), sum((-1) ** (d % 2) * len(b) for d, b in sl.bases.items())


def _nonzero(table: Dict) -> Table:
    return {k: v for k, v in sorted(table.items()) if v}


def compute_euler(spec: JobSpec, homotopy: bool) -> Table:
    """Euler characteristics for 1 <= t <= max_t, 1 <= s <= max_s."""
    m, n, S, T = spec.m, spec.n, spec.max_s, spec.max_t
    if T == 0:
        return {} if homotopy else {(0, 0): 1}
    if spec.method == "genfunc":
        pi, full = genfunc.euler_tables(m, n, S, T)
        table = pi if homotopy else full
    elif spec.method == "pairing":
        full0 = symfunc.euler_table_via_pairing(m, n, S, T)
        if homotopy:
            table = genfunc.chi_pi_from_F(genfunc.BiSeries.from_dict(full0, S, T))
        else:
            table = full0
    elif spec.method == "complex-e":
        jobs = [(m, n, s, t) for t in range(1, T + 1) for s in range(1, min(S, t + 1) + 1)]
        pi = dict(_map(_euler_epi_job, jobs, spec.jobs))
        table = pi if homotopy else complex_e.euler_h_from_pi(_nonzero(pi), S, T)
    else:
        top = (lambda t: t + 1) if homotopy else (lambda t: 2 * t)
        jobs = [(m, n, s, t, homotopy, spec.cache_dir)
                for t in range(1, T + 1) for s in range(1, min(S, top(t)) + 1)]
        table = dict(_map(_euler_hh_job, jobs, spec.jobs))
    return _nonzero({(s, t): v for (s, t), v in table.items() if 1 <= s <= S and 1 <= t <= T})


def render_euler(table: Table, spec: JobSpec) -> str:
    if spec.max_t == 0:
        return genfunc.emit_table(table, spec.output, S=0, T=0, min_t=0)
    return genfunc.emit_table(table, spec.output, S=spec.max_s, T=spec.max_t, min_t=1)


# ---------------------------------------------------------------------------
# homology


def homology_report(m: int, n: int, s: int, t: int, which: str, reduced: bool,
                    full: bool, cache_dir: Optional[str]) -> Tuple[List[dict], bool]:
    if which == "e":
        sl = complex_e.build_epi_slice(m, n, s, t, reduced=reduced, cache_dir=cache_dir)
        step = -1
    else:
        sl = complex_hh.build_hh_slice(m, n, s, t, connected=not full, cache_dir=cache_dir)
        step = 1
    ranks = {d: rank(mat) for d, mat in sl.differentials.items()}
    rows = []
    for d in sorted(sl.bases):
        size = len(sl.bases[d])
        out_rank = ranks.get(d, 0)
        rows.append({
            "degree": d,
            "basis": size,
            "d_rank": out_rank,
            "homology": size - out_rank - ranks.get(d - step, 0),
        })
    return rows, sl.from_cache


def _render_rows(rows: List[dict], columns: List[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, sort_keys=True) + "\n"
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        lines += ["| " + " | ".join(str(r[c]) for c in columns) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    lines = [",".join(columns)] + [",".join(str(r[c]) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class Report:
    suite: str
    checks: List[dict] = field(default_factory=list)

    def add(self, name: str, ok: bool, diff=None) -> None:
        entry = {"suite": self.suite, "check": name, "pass": bool(ok)}
        if not ok and diff is not None:
            entry["diff"] = diff
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)


def _table_diff(got: Dict, want: Dict) -> List[str]:
    keys = sorted(set(got) | set(want))
    return [f"{k}: got {got.get(k, 0)} want {want.get(k, 0)}" for k in keys if got.get(k, 0) != want.get(k, 0)][:20]


def golden_csv(name: str) -> str:
    return resources.files("longemb").joinpath(f"data/golden/{name}.csv").read_text()


def golden_name(m: int, n: int, connected: bool) -> str:
    return f"{'pi' if connected else 'full'}_{reference.PARITY_NAMES[(m % 2, n % 2)]}"


def suite_appendix(max_t: int, **_) -> Report:
    rep = Report("appendix")
    T = min(max_t, 23)
    for m, n in PARITY_REPS:
        pi, full = genfunc.euler_tables(m, n, 23, T)
        for connected, table in ((True, pi), (False, full)):
            want = {k: v for k, v in reference.appendix_table(m, n, connected).items() if k[1] <= T}
            name = golden_name(m, n, connected)
            rep.add(f"{name} values", table == want, _table_diff(table, want))
            if T == 23:
                csv = genfunc.emit_table(table, "csv", S=23, T=23)
                rep.add(f"{name} golden csv", csv == golden_csv(name))
    return rep


def suite_small_complexity(max_t: int, cache_dir=None, jobs: int = 1, **_) -> Report:
    rep = Report("small-complexity")
    for m, n in reference.SMALL_COMPLEXITY_PAIRS:
        if n < 2 * m + 2:
            continue
        for t in range(1, min(max_t, 3) + 1):
            got = {}
            for s in range(1, t + 2):
                for d, r in complex_e.homology_ranks_epi(m, n, s, t, cache_dir=cache_dir).items():
                    got[(s, d)] = r
            want = reference.expected_low_complexity(m, n, t)
            rep.add(f"(m,n)=({m},{n}) t={t}", got == want, _table_diff(got, want))
    return rep


def suite_cross_method(max_t: int, cache_dir=None, jobs: int = 1, **_) -> Report:
    rep = Report("cross-method")
    T = min(max_t, 5)
    for m, n in PARITY_REPS:
        pi, full = genfunc.euler_tables(m, n, 2 * T, T)
        jobs_e = [(m, n, s, t) for t in range(1, T + 1) for s in range(1, t + 2)]
        epi = _nonzero(dict(_map(_euler_epi_job, jobs_e, jobs)))
        rep.add(f"({m},{n}) complex-e vs genfunc", epi == pi, _table_diff(epi, pi))
        pair = symfunc.euler_table_via_pairing(m, n, 2 * T, T)
        pair = _nonzero({k: v for k, v in pair.items() if k[0] >= 1 and k[1] >= 1})
        rep.add(f"({m},{n}) pairing vs genfunc", pair == full, _table_diff(pair, full))
        th = min(T, 3)
        for connected, want in ((True, pi), (False, full)):
            top = (lambda t: t + 1) if connected else (lambda t: 2 * t)
            jobs_h = [(m, n, s, t, connected, cache_dir) for t in range(1, th + 1) for s in range(1, top(t) + 1)]
            got = _nonzero(dict(_map(_euler_hh_job, jobs_h, jobs)))
            sub = {k: v for k, v in want.items() if k[1] <= th}
            label = "connected" if connected else "full"
            rep.add(f"({m},{n}) complex-hh {label} vs genfunc", got == sub, _table_diff(got, sub))
    return rep


def _d2_epi_job(m, n, s, t, cache_dir):
    sl = complex_e.build_epi_slice(m, n, s, t, cache_dir=cache_dir)
    return all((sl.differentials[d - 1] @ mat).is_zero()
               for d, mat in sl.differentials.items() if d - 1 in sl.differentials)


def _d2_hh_job(m, n, s, t, cache_dir):
    sl = complex_hh.build_hh_slice(m, n, s, t, True, cache_dir)
    return all((sl.differentials[d + 1] @ mat).is_zero()
               for d, mat in sl.differentials.items() if d + 1 in sl.differentials)


def suite_d_squared(max_t: int, cache_dir=None, jobs: int = 1, **_) -> Report:
    rep = Report("d-squared")
    for m, n in PARITY_REPS:
        items = [(m, n, s, t, cache_dir) for t in range(1, max_t + 1) for s in range(1, t + 2)]
        for it, ok in zip(items, _map(_d2_epi_job, items, jobs)):
            rep.add(f"E ({m},{n}) s={it[2]} t={it[3]}", ok)
        items = [(m, n, s, t, cache_dir) for t in range(1, min(max_t, 3) + 1) for s in range(1, t + 2)]
        for it, ok in zip(items, _map(_d2_hh_job, items, jobs)):
            rep.add(f"HH ({m},{n}) s={it[2]} t={it[3]}", ok)
    return rep


SUITE_FUNCS = {
    "appendix": (suite_appendix, 23),
    "small-complexity": (suite_small_complexity, 3),
    "cross-method": (suite_cross_method, 4),
    "d-squared": (suite_d_squared, 4),
}


# ---------------------------------------------------------------------------
# embedding calculus


def bar_ranks(m: int, n: int, max_t: int, max_degree: int,
              cache_dir: Optional[str] = None) -> Dict[int, int]:
    """Ranks of the fiber's rational homotopy by degree, from the graph complex."""
    out: Dict[int, int] = {}
    for t in range(1, max_t + 1):
        for s in range(1, t + 2):
            for d, r in complex_e.homology_ranks_epi(m, n, s, t, cache_dir=cache_dir).items():
                if d <= max_degree:
                    out[d] = out.get(d, 0) + r
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# click wiring


def _cache_option(f):
    return click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                        help="Cache directory (falls back to $LONGEMB_CACHE_DIR).")(f)


def _jobs_option(f):
    return click.option("--jobs", type=click.IntRange(1), default=1, show_default=True,
                        help="Worker processes for independent slices.")(f)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Rational homotopy of long embedding spaces via graph complexes."""


@main.command()
@click.option("--m", "m", type=ParityOrInt(), default="odd", show_default=True)
@click.option("--n", "n", type=ParityOrInt(), default="odd", show_default=True)
@click.option("--max-t", type=click.IntRange(0), default=10, show_default=True)
@click.option("--max-s", type=click.IntRange(0), default=None, help="Defaults to 2 * max-t.")
@click.option("--method", type=click.Choice(METHODS), default="genfunc", show_default=True)
@click.option("--homotopy", is_flag=True, help="Connected graphs only (rational homotopy).")
@click.option("--output", type=click.Choice(FORMATS), default="csv", show_default=True)
@_cache_option
@_jobs_option
def euler(m, n, max_t, max_s, method, homotopy, output, cache_dir, jobs) -> None:
    """Table of Euler characteristics, rows by t and columns by s."""
    spec = JobSpec("euler", _resolve(m, REP_M), _resolve(n, REP_N),
                   2 * max_t if max_s is None else max_s, max_t, method, output, cache_dir, jobs)
    click.echo(render_euler(compute_euler(spec, homotopy), spec), nl=False)


@main.command()
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--s", "s", type=click.IntRange(1), required=True)
@click.option("--t", "t", type=click.IntRange(1), required=True)
@click.option("--complex", "which", type=click.Choice(["e", "hh"]), default="e", show_default=True)
@click.option("--reduced", is_flag=True, help="Drop graphs with loops (n even, t >= 2).")
@click.option("--full", is_flag=True, help="For hh: allow disconnected graphs.")
@click.option("--output", type=click.Choice(FORMATS), default="csv", show_default=True)
@_cache_option
def homology(m, n, s, t, which, reduced, full, output, cache_dir) -> None:
    """Per-degree basis sizes, differential ranks and homology of one slice."""
    rows, hit = homology_report(m, n, s, t, which, reduced, full, cache_dir)
    click.echo(_render_rows(rows, ["degree", "basis", "d_rank", "homology"], output), nl=False)
    if cache_dir or cache.ENV_VAR in os.environ:
        click.echo(f"cache: {'hit' if hit else 'miss'}", err=True)


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--max-t", type=click.IntRange(1), default=None)
@_cache_option
@_jobs_option
def verify(suite, max_t, cache_dir, jobs) -> None:
    """Run a verification suite; one JSON line per check, exit 1 on failure."""
    fn, default_t = SUITE_FUNCS[suite]
    report = fn(max_t=default_t if max_t is None else max_t, cache_dir=cache_dir, jobs=jobs)
    for entry in report.checks:
        click.echo(json.dumps(entry, sort_keys=True))
    click.echo(json.dumps({"suite": suite, "pass": report.passed,
                           "checks": len(report.checks)}, sort_keys=True))
    sys.exit(0 if report.passed else 1)


@main.command("emb-adjust")
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--max-t", type=click.IntRange(1), default=4, show_default=True)
@click.option("--max-degree", type=int, default=None, help="Defaults to 3n - m - 7.")
@click.option("--output", type=click.Choice(FORMATS), default="csv", show_default=True)
@_cache_option
def emb_adjust(m, n, max_t, max_degree, output, cache_dir) -> None:
    """Ranks of the embedding space's rational homotopy in low degrees."""
    if n < 2 * m + 2:
        raise click.UsageError("need n >= 2m + 2")
    bound = 3 * n - m - 7 if max_degree is None else max_degree
    bar = bar_ranks(m, n, max_t, bound, cache_dir)
    adj = emb.rank_adjustments(m, n)
    try:
        full = emb.emb_rank_adjust(m, n, bar)
    except ValueError as exc:
        raise click.UsageError(f"{exc}; raise --max-degree") from exc
    degrees = sorted(d for d in set(bar) | set(adj) if d <= bound)
    rows = [{"degree": d, "fiber": bar.get(d, 0), "adjust": adj.get(d, 0), "emb": full.get(d, 0)}
            for d in degrees]
    click.echo(_render_rows(rows, ["degree", "fiber", "adjust", "emb"], output), nl=False)


@main.command()
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--output", type=click.Choice(FORMATS), default="csv", show_default=True)
def stiefel(m, n, output) -> None:
    """Rational homotopy of Inj(R^m, R^n) and its image under the connecting map."""
    try:
        classes = emb.stiefel_homotopy(m, n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    image = {c.degree + m + 1: c for c in emb.connecting_image(m, n)} if n >= 2 * m + 2 else {}
    rows = []
    for c in sorted(classes, key=lambda c: (c.degree, c.label)):
        hit = image.get(c.degree)
        rows.append({"degree": c.degree, "class": c.label,
                     "image": f"{hit.graph}@{hit.degree}" if hit else "-"})
    click.echo(_render_rows(rows, ["degree", "class", "image"], output), nl=False)


if __name__ == "__main__":
    main()

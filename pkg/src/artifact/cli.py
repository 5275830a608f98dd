"""Command-line front end: counting, verification, symmetry and Wilf scans.

Every command assembles a report document (command echo, inputs,
results, verdict, duration) and renders it as text, JSON, or CSV.
Exit codes: 0 all comparisons passed, 1 a comparison failed, 2 usage.
"""

from __future__ import annotations

import json
import sys
import time
from itertools import combinations, permutations

import click

from . import gf_catalog, recurrences
from .enumerate import CountTable, FilterSpec, count_avoiders, count_filtered
from .perm_core import PatternSet, Permutation, symmetry_class

ENGINES = {
    131: recurrences.case131_counts,
    164: recurrences.case164_counts,
    194: recurrences.case194_counts,
    199: recurrences.case199_counts,
    222: recurrences.case222_counts,
    232: recurrences.case232_counts,
    242: recurrences.case242_counts,
}

FORMATS = click.Choice(["text", "json", "csv"])


def _report(command: str, inputs: dict, results, verdict: str,
            started: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "verdict": verdict,
        "duration_seconds": round(time.time() - started, 3),
    }


def _emit(report: dict, fmt: str, text_lines, csv_text=None) -> None:
    if fmt == "json":
        click.echo(json.dumps(report, indent=2))
    elif fmt == "csv":
        if csv_text is None:
            raise click.UsageError(
                f"csv output is not defined for {report['command']}")
        click.echo(csv_text, nl=False)
    else:
        for line in text_lines:
            click.echo(line)


def _exit(report: dict) -> None:
    sys.exit(0 if report["verdict"] == "pass" else 1)


def _parse_patterns(text: str) -> PatternSet:
    try:
        return PatternSet.from_string(text)
    except ValueError as exc:
        raise click.UsageError(f"bad --patterns value: {exc}")


def _require_case(case_id: int) -> None:
    if case_id not in gf_catalog.REGISTRY:
        valid = ", ".join(str(c) for c in gf_catalog.CASE_IDS)
        raise click.UsageError(
            f"unknown case {case_id}; valid case ids: {valid}")


@click.group()
def main() -> None:
    """Exact enumeration and verification of pattern-avoiding permutations."""


@main.command()
@click.option("--patterns", required=True,
              help="Comma-separated forbidden patterns, e.g. 1342,2143,2314.")
@click.option("--n", "n_max", type=int, default=9, show_default=True,
              help="Count avoiders for lengths 0..n.")
@click.option("--filter", "filter_text", default=None,
              help='Statistic filter, e.g. "lr_max_count==2".')
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True)
def count(patterns: str, n_max: int, filter_text: str | None,
          fmt: str) -> None:
    """Count avoiders of a pattern set, optionally filtered."""
    started = time.time()
    t = _parse_patterns(patterns)
    if n_max < 0:
        raise click.UsageError("--n must be >= 0")
    if filter_text:
        try:
            spec = FilterSpec.parse(filter_text)
        except ValueError as exc:
            raise click.UsageError(f"bad --filter value: {exc}")
        table = count_filtered(t, n_max, spec)
    else:
        table = count_avoiders(t, n_max)
    report = _report("count",
                     {"patterns": str(t), "n": n_max,
                      "filter": filter_text},
                     json.loads(table.to_json()), "pass", started)
    lines = [f"avoiders of {{{t}}}" + (f" with {filter_text}"
                                       if filter_text else "")]
    lines += [f"{n:>3}  {table[n]}" for n in table.lengths()]
    _emit(report, fmt, lines, table.to_csv())
    _exit(report)


def _verify_one(case_id: int, n_max: int) -> dict:
    result = gf_catalog.verify_case(case_id, n_max)
    engines = {}
    if case_id in ENGINES:
        oracle = count_avoiders(gf_catalog.REGISTRY[case_id].patterns, n_max)
        table = ENGINES[case_id](n_max)
        ok = all(table[n] == oracle[n] for n in range(n_max + 1))
        engines[table.engine or f"case{case_id}"] = "pass" if ok else "fail"
        if not ok:
            result["verdict"] = "fail"
    result["engines"] = engines
    return result


@main.command()
@click.option("--case", "case_id", type=int, default=None,
              help="Verify one registered case.")
@click.option("--all", "do_all", is_flag=True,
              help="Verify every registered case.")
@click.option("--n", "n_max", type=int, default=9, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True)
def verify(case_id: int | None, do_all: bool, n_max: int, fmt: str) -> None:
    """Check registered series (and engines) against brute-force counts."""
    started = time.time()
    if do_all == (case_id is not None):
        raise click.UsageError("choose exactly one of --case or --all")
    if n_max < 0:
        raise click.UsageError("--n must be >= 0")
    if case_id is not None:
        _require_case(case_id)
        ids = [case_id]
    else:
        ids = list(gf_catalog.CASE_IDS)
    results = [_verify_one(c, n_max) for c in ids]
    verdict = ("pass" if all(r["verdict"] == "pass" for r in results)
               else "fail")
    report = _report("verify", {"cases": ids, "n": n_max},
                     results, verdict, started)
    lines = []
    for r in results:
        extras = [f"{len(r['auxiliaries'])} auxiliaries"]
        if r["cross_checks"]:
            extras.append(f"{len(r['cross_checks'])} cross-checks")
        if r["engines"]:
            extras.append("engine " + ",".join(r["engines"]))
        lines.append(f"case {r['case_id']:>3} [{r['patterns']}] "
                     f"{r['verdict']}  ({'; '.join(extras)})")
    lines.append(f"overall: {verdict} "
                 f"({sum(r['verdict'] == 'pass' for r in results)}"
                 f"/{len(results)} cases)")
    _emit(report, fmt, lines)
    _exit(report)


@main.command()
@click.option("--case", "case_id", type=int, required=True)
@click.option("--terms", type=int, default=10, show_default=True,
              help="Number of leading coefficients to print.")
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True)
def series(case_id: int, terms: int, fmt: str) -> None:
    """Print leading coefficients of a registered counting series."""
    started = time.time()
    _require_case(case_id)
    if terms < 1:
        raise click.UsageError("--terms must be >= 1")
    s = gf_catalog.evaluate_case(case_id, terms)
    try:
        coeffs = s.integer_coefficients()
        verdict = "pass"
    except ValueError as exc:
        raise click.ClickException(
            f"non-integer coefficient in counting series: {exc}")
    report = _report("series", {"case": case_id, "terms": terms},
                     [str(c) for c in coeffs], verdict, started)
    csv_text = "n,count\n" + "".join(
        f"{n},{c}\n" for n, c in enumerate(coeffs))
    _emit(report, fmt, [" ".join(str(c) for c in coeffs)], csv_text)
    _exit(report)


@main.command()
@click.option("--patterns", required=True)
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True)
def symmetry(patterns: str, fmt: str) -> None:
    """Print the orbit of a pattern set under reverse/complement/inverse."""
    started = time.time()
    t = _parse_patterns(patterns)
    orbit = sorted(symmetry_class(t))
    report = _report("symmetry", {"patterns": str(t)},
                     {"orbit": [str(s) for s in orbit],
                      "orbit_size": len(orbit)}, "pass", started)
    lines = [f"orbit size {len(orbit)}:"] + [f"  {s}" for s in orbit]
    _emit(report, fmt, lines)
    _exit(report)


def scan_triples(n_max: int) -> dict[tuple[int, ...], list[PatternSet]]:
    """Group triples of distinct 4-letter patterns containing 1342 by
    their count vector (|S_5|, ..., |S_n|)."""
    base = Permutation.from_string("1342")
    others = [Permutation(p) for p in permutations(range(1, 5))
              if p != base.values]
    classes: dict[tuple[int, ...], list[PatternSet]] = {}
    for pair in combinations(others, 2):
        t = PatternSet([base, *pair])
        table = count_avoiders(t, n_max)
        key = tuple(table[n] for n in range(5, n_max + 1))
        classes.setdefault(key, []).append(t)
    return classes


@main.command("wilf-scan")
@click.option("--n", "n_max", type=int, default=7, show_default=True,
              help="Group by the count vector (|S_5|, ..., |S_n|).")
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True)
def wilf_scan(n_max: int, fmt: str) -> None:
    """Group all triples containing 1342 by their avoider count vector."""
    started = time.time()
    if n_max < 5:
        raise click.UsageError("--n must be >= 5")
    classes = scan_triples(n_max)
    registered = {spec.patterns: case_id
                  for case_id, spec in gf_catalog.REGISTRY.items()}
    flags = []
    rows = []
    for key, members in sorted(classes.items(), reverse=True):
        cases = sorted(registered[t] for t in members if t in registered)
        rows.append({"counts": list(key), "size": len(members),
                     "members": [str(t) for t in members],
                     "registered_cases": cases})
        if len(cases) >= 2:
            series_by_case = {
                c: gf_catalog.evaluate_case(c, n_max + 1)
                .integer_coefficients() for c in cases}
            values = list(series_by_case.values())
            if any(v != values[0] for v in values[1:]):
                flags.append(cases)
    verdict = "pass" if not flags else "fail"
    report = _report("wilf-scan", {"n": n_max},
                     {"classes": rows, "class_count": len(rows),
                      "triples": sum(r["size"] for r in rows),
                      "flags": flags}, verdict, started)
    lines = [f"{sum(r['size'] for r in rows)} triples in "
             f"{len(rows)} classes by (|S_5|..|S_{n_max}|):"]
    for r in rows:
        tag = (f"  cases {r['registered_cases']}"
               if r["registered_cases"] else "")
        lines.append(f"  {tuple(r['counts'])}: {r['size']} triples{tag}")
    if flags:
        lines.append(f"FLAGGED: registered series disagree within "
                     f"classes {flags}")
    _emit(report, fmt, lines)
    _exit(report)


if __name__ == "__main__":
    main()

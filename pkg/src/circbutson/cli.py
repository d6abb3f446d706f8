"""circbutson command line: verify, construct, search, dualize, obstruct, table, audit.

Structured output is JSON on stdout with a fixed key order; diagnostics go to
stderr.  Exit codes: 0 success, 1 verification failure or aborted search,
2 usage error.
"""

from __future__ import annotations

import json
import sys
from dataclasses import asdict
from pathlib import Path

import click

from .circulant import (
    ExponentRow,
    cyclic_root_product_is_one,
    format_rows,
    is_hadamard,
    is_hermitian,
    parse_rows,
    row_to_cyclic_root,
    verify_cyclic_root,
)
from .constructions import (
    BackelinParams,
    InvalidParams,
    QuadraticCoeffs,
    backelin_circulant,
    fourier_circulant,
    quadratic_row,
)
from .duality import dual_matrix, format_complex_rows
from .obstructions import (
    check_obstructions,
    intersection_bound_sweep,
    lemma_cycles_audit,
    planar_theorem_audit,
)
from .search import (
    BudgetExceeded,
    EquivalenceGroup,
    SearchConfig,
    classify_cell,
    classify_hermitian,
    prime_uniqueness_report,
    render_table,
    sweep_table,
)
from .search.engine import DEFAULT_BUDGET


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _read_rows(source) -> list[ExponentRow]:
    try:
        rows = parse_rows(source.read())
    except ValueError as exc:
        raise click.UsageError(f"input: {exc}") from None
    if not rows:
        raise click.UsageError("input: no rows")
    return rows


def _config(workers: int, budget: int, reversal: bool, checkpoint: Path | None = None) -> SearchConfig:
    group = EquivalenceGroup.RotateConstantAndReversal if reversal else EquivalenceGroup.RotateAndConstant
    return SearchConfig(group, workers, budget, checkpoint)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Circulant Butson complex Hadamard matrices."""


@main.command()
@click.argument("source", type=click.File("r"), default="-")
def verify(source) -> None:
    """Check rows in the '# n=.. l=..' text format (stdin by default)."""
    rows = _read_rows(source)
    reports = []
    for row in rows:
        z = row_to_cyclic_root(row)
        reports.append(
            {
                "n": row.n,
                "l": row.l,
                "e": list(row.e),
                "hadamard": is_hadamard(row),
                "hermitian": is_hermitian(row),
                "cyclic_root": verify_cyclic_root(z),
                "product_one": cyclic_root_product_is_one(z),
            }
        )
    ok = all(r["hadamard"] for r in reports)
    _emit(
        {
            "hadamard": ok,
            "hermitian": all(r["hermitian"] for r in reports),
            "rows": reports,
        }
    )
    sys.exit(0 if ok else 1)


@main.command()
@click.argument("family", type=click.Choice(["fourier", "backelin", "quadratic"]))
@click.option("--n", "n", type=int, help="Order (fourier, backelin).")
@click.option("--m", "m", type=int, help="Block size, must divide n (backelin).")
@click.option("--p", "p", type=int, help="Prime (quadratic).")
@click.option("--a", "a", type=int, default=1, show_default=True)
@click.option("--b", "b", type=int, default=0, show_default=True)
@click.option("--c", "c", type=int, default=0, show_default=True)
def construct(family: str, n, m, p, a: int, b: int, c: int) -> None:
    """Emit a known circulant Hadamard row in the row text format."""
    try:
        if family == "fourier":
            if n is None:
                raise click.UsageError("fourier needs --n")
            row = fourier_circulant(n)
        elif family == "backelin":
            if n is None or m is None:
                raise click.UsageError("backelin needs --n and --m")
            row = backelin_circulant(BackelinParams(n, m))
        else:
            if p is None:
                raise click.UsageError("quadratic needs --p")
            row = quadratic_row(QuadraticCoeffs(p, a % p, b % p, c % p))
    except InvalidParams as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(format_rows([row]), nl=False)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.option("--hermitian", is_flag=True, help="Only classes of self-adjoint rows.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--budget", type=click.IntRange(min=1), default=DEFAULT_BUDGET, show_default=True)
@click.option("--reversal", is_flag=True, help="Also identify a row with its reversal.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write representatives here.")
@click.option("--checkpoint", type=click.Path(dir_okay=False, path_type=Path), help="Resume file.")
@click.option("--timing", is_flag=True, help="Add wall-clock seconds to the report.")
def search(n, l, hermitian, workers, budget, reversal, out, checkpoint, timing) -> None:
    """Classify C_n(l) circulant rows up to rotation and constant phase."""
    if n < 2 or l < 2:
        raise click.UsageError("--n and --l must be at least 2")
    config = _config(workers, budget, reversal, checkpoint)
    try:
        report = classify_hermitian(n, l, config) if hermitian else classify_cell(n, l, config)
    except (BudgetExceeded, OverflowError) as exc:
        click.echo(f"search aborted: {exc}", err=True)
        sys.exit(1)
    if out is not None:
        text = format_rows(report.representatives) if report.representatives else f"# n={n} l={l}\n"
        out.write_text(text)
    _emit(report.to_dict(timing=timing))


@main.command()
@click.argument("source", type=click.File("r"), default="-")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write dual rows (complex format).")
def dualize(source, out) -> None:
    """Fourier dual x -> Fx of each row; reports unimodularity and Hermitian symmetry."""
    rows = _read_rows(source)
    reports = [dual_matrix(r) for r in rows]
    if out is not None:
        out.write_text(format_complex_rows([r.values for r in reports]))
    _emit(
        {
            "unimodular": all(r.unimodular for r in reports),
            "rows": [
                {"e": list(row.e), "unimodular": r.unimodular, "hermitian": r.hermitian}
                for row, r in zip(rows, reports)
            ],
        }
    )


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--l", "l", type=click.IntRange(min=1), required=True)
def obstruct(n: int, l: int) -> None:
    """Known reason (if any) that C_n(l) has no circulant member."""
    _emit(check_obstructions(n, l).to_dict())


@main.command()
@click.option("--n-max", type=click.IntRange(min=2), required=True)
@click.option("--l-max", type=click.IntRange(min=2), required=True)
@click.option("--n-min", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--l-min", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--budget", type=click.IntRange(min=1), default=DEFAULT_BUDGET, show_default=True)
@click.option("--reversal", is_flag=True)
@click.option("--json", "as_json", is_flag=True, help="Emit cells as JSON instead of text.")
def table(n_max, l_max, n_min, l_min, workers, budget, reversal, as_json) -> None:
    """Obstruction symbols and class counts over a grid of cells."""
    cells = sweep_table(n_max, l_max, _config(workers, budget, reversal), n_min, l_min)
    if as_json:
        _emit([{"n": c.n, "l": c.l, "cell": c.render(), "count": c.count} for c in cells])
    else:
        click.echo(render_table(cells), nl=False)


@main.command()
@click.option("--planar", "mode", flag_value="planar", help="planar <=> quadratic <=> Hadamard over Z/p.")
@click.option("--prime", "mode", flag_value="prime", help="Uniqueness of C_p(p) up to equivalence.")
@click.option("--intersection", "mode", flag_value="intersection", help="Intersection bound on Z/n.")
@click.option("--lemma", "mode", flag_value="lemma", help="Cycle decomposition of C_{p+q}(pq) sums.")
@click.option("--p", "p", type=int)
@click.option("--q", "q", type=int)
@click.option("--n", "n", type=int)
def audit(mode, p, q, n) -> None:
    """Exhaustive checks of the structural statements at small size."""
    if mode is None:
        raise click.UsageError("choose one of --planar, --prime, --intersection, --lemma")
    try:
        if mode == "planar":
            if p is None:
                raise click.UsageError("--planar needs --p")
            result = planar_theorem_audit(p)
            _emit(result.to_dict())
            ok = result.passed
        elif mode == "prime":
            if p is None:
                raise click.UsageError("--prime needs --p")
            result = prime_uniqueness_report(p)
            _emit(result.to_dict())
            ok = result.passed
        elif mode == "intersection":
            if n is None:
                raise click.UsageError("--intersection needs --n")
            sweep = intersection_bound_sweep(n)
            payload = asdict(sweep)
            payload["violations_all"] = [list(v) for v in sweep.violations_all]
            payload["violations_nonzero"] = [list(v) for v in sweep.violations_nonzero]
            payload["violations_squared"] = [list(v) for v in sweep.violations_squared]
            _emit(payload)
            ok = not sweep.violations_all
        else:
            if p is None or q is None:
                raise click.UsageError("--lemma needs --p and --q")
            cell = classify_cell(p + q, p * q)
            result = lemma_cycles_audit(p, q, cell.representatives or None)
            _emit(asdict(result))
            ok = result.failures == 0
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()

"""Exhaustive classification of circulant Butson rows, built on the compiled DFS."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Sequence

import numpy as np

from ..circulant import ExponentRow, canonical_form, hadamard_mask, is_hadamard
from ..constructions import is_fourier_equivalent, reduce_to_fourier
from ..cyclotomic import is_prime, power_table
from ..obstructions import (
    SYMBOLS,
    NotQuadratic,
    PlanarFunction,
    check_obstructions,
    fit_quadratic,
)
from . import kernel

DEFAULT_BUDGET = 500_000_000


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search finished."""


class EquivalenceGroup(str, Enum):
    RotateAndConstant = "RotateAndConstant"
    RotateConstantAndReversal = "RotateConstantAndReversal"

    @property
    def reversal(self) -> bool:
        return self is EquivalenceGroup.RotateConstantAndReversal


@dataclass(frozen=True)
class SearchConfig:
    equivalence_group: EquivalenceGroup = EquivalenceGroup.RotateAndConstant
    worker_count: int = 1
    budget: int = DEFAULT_BUDGET
    checkpoint_path: Path | None = None

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        object.__setattr__(self, "equivalence_group", EquivalenceGroup(self.equivalence_group))


@dataclass
class SearchReport:
    n: int
    l: int
    class_count: int
    representatives: list[ExponentRow]
    nodes_visited: int = 0
    pruned: int = 0
    wall_time: float = 0.0
    equivalence_group: str = EquivalenceGroup.RotateAndConstant.value
    # prime n only: number of classes up to row/column permutation and phases
    # (every representative Fourier-equivalent -> 1); None where not computed
    hadamard_class_count: int | None = None
    hermitian: bool = False

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "l": self.l,
            "class_count": self.class_count,
            "representatives": [list(r.e) for r in self.representatives],
            "nodes": self.nodes_visited,
            "pruned": self.pruned,
            "equivalence_group": self.equivalence_group,
            "hadamard_class_count": self.hadamard_class_count,
            "hermitian": self.hermitian,
        }
        if timing:
            out["seconds"] = round(self.wall_time, 3)
        return out


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class _Tables:
    delta: np.ndarray
    reach_keys: np.ndarray
    reach_len: np.ndarray
    neg_base: int
    remaining: np.ndarray


def _remaining(n: int) -> np.ndarray:
    # lag d term j needs e[j] and e[(j+d) % n]; it is fixed once both indices are <= k
    h = n // 2
    out = np.zeros((h + 1, n), dtype=np.int64)
    j = np.arange(n)
    for d in range(1, h + 1):
        last = np.maximum(j, (j + d) % n)
        for k in range(n):
            out[d, k] = n - int(np.count_nonzero(last <= k))
    return out


@lru_cache(maxsize=64)
def _tables(n: int, l: int) -> _Tables:
    table = np.asarray(power_table(l), dtype=np.int64)
    phi = table.shape[1]
    bound = max(1, int(np.abs(table).max()))
    offset = n * bound
    base = 2 * offset + 1
    if phi * np.log2(base) >= 62:
        raise OverflowError(f"lag sums for n={n}, l={l} do not fit one 64-bit code")
    weights = np.array([base**i for i in range(phi)], dtype=np.int64)
    delta = table @ weights
    neg_base = int(offset * weights.sum())
    # reach[r] = codes of all sums of r roots
    levels = [np.zeros(1, dtype=np.int64)]
    for _ in range(n):
        levels.append(np.unique((levels[-1][:, None] + delta[None, :]).ravel()))
    width = max(len(x) for x in levels)
    keys = np.full((n + 1, width), np.iinfo(np.int64).max, dtype=np.int64)
    lens = np.zeros(n + 1, dtype=np.int64)
    for r, lev in enumerate(levels):
        # offset codes: the kernel looks up neg_base - lin(partial) = neg_base + lin(-partial)
        shifted = np.sort(neg_base + lev)
        keys[r, : len(shifted)] = shifted
        lens[r] = len(shifted)
    return _Tables(delta, keys, lens, neg_base, _remaining(n))


# ---------------------------------------------------------------- DFS driver


def _run_subtree(n: int, l: int, first_values: Sequence[int], budget: int):
    t = _tables(n, l)
    fv = np.asarray(first_values, dtype=np.int64)
    cap = 1024
    while True:
        out = np.zeros((cap, n), dtype=np.int64)
        status, found, nodes, pruned = kernel.dfs(
            n, l, t.delta, t.reach_keys, t.reach_len, t.neg_base, t.remaining, fv, budget, out
        )
        if status == kernel.STATUS_FULL:
            cap *= 8
            continue
        rows = [tuple(int(x) for x in r) for r in out[:found]]
        return int(status), rows, int(nodes), int(pruned)


def _load_checkpoint(path: Path | None, n: int, l: int) -> dict:
    if path is None or not path.exists():
        return {}
    data = json.loads(path.read_text())
    if data.get("n") != n or data.get("l") != l:
        return {}
    return {int(k): v for k, v in data["done"].items()}


def _save_checkpoint(path: Path | None, n: int, l: int, done: dict) -> None:
    if path is None:
        return
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({"n": n, "l": l, "done": {str(k): v for k, v in sorted(done.items())}}))
    os.replace(tmp, path)


def _enumerate_canonical(n: int, l: int, config: SearchConfig) -> tuple[list[tuple[int, ...]], int, int]:
    """Canonical (rotation + constant) Hadamard rows of C_n(l), via the DFS."""
    if n == 1:
        return [(0,)], 1, 0
    done = _load_checkpoint(config.checkpoint_path, n, l)
    todo = [v for v in range(l) if v not in done]
    spent = sum(rec["nodes"] for rec in done.values())

    def record(v: int, res) -> None:
        nonlocal spent
        status, rows, nodes, pruned = res
        spent += nodes
        if status == kernel.STATUS_BUDGET or spent > config.budget:
            raise BudgetExceeded(f"node budget {config.budget} exhausted at n={n}, l={l}")
        done[v] = {"rows": [list(r) for r in rows], "nodes": nodes, "pruned": pruned}
        _save_checkpoint(config.checkpoint_path, n, l, done)

    if config.worker_count == 1 or len(todo) <= 1:
        for v in todo:
            record(v, _run_subtree(n, l, [v], max(1, config.budget - spent)))
    else:
        with ProcessPoolExecutor(config.worker_count) as pool:
            futures = {v: pool.submit(_run_subtree, n, l, [v], config.budget) for v in todo}
            for v in todo:
                record(v, futures[v].result())
    rows = sorted({tuple(r) for rec in done.values() for r in rec["rows"]})
    nodes = sum(rec["nodes"] for rec in done.values())
    pruned = sum(rec["pruned"] for rec in done.values())
    return rows, nodes, pruned


def _dedup(rows: Sequence[tuple[int, ...]], l: int, reversal: bool) -> list[tuple[int, ...]]:
    return sorted({canonical_form(r, l, reversal) for r in rows})


def _hadamard_classes(n: int, reps: Sequence[ExponentRow]) -> int | None:
    if not is_prime(n):
        return None
    if not reps:
        return 0
    if all(is_fourier_equivalent(r) for r in reps):
        return 1
    return None


def _check_cell(n: int, l: int) -> None:
    if n < 2 or l < 2:
        raise ValueError(f"need n >= 2 and l >= 2, got n={n}, l={l}")


def classify_cell(n: int, l: int, config: SearchConfig | None = None) -> SearchReport:
    """Every circulant Butson row of order n over l-th roots, one per equivalence class."""
    config = config or SearchConfig()
    _check_cell(n, l)
    start = time.perf_counter()
    rows, nodes, pruned = _enumerate_canonical(n, l, config)
    reps = [ExponentRow(n, l, e) for e in _dedup(rows, l, config.equivalence_group.reversal)]
    return SearchReport(
        n,
        l,
        len(reps),
        reps,
        nodes,
        pruned,
        time.perf_counter() - start,
        config.equivalence_group.value,
        _hadamard_classes(n, reps),
    )


def _hermitian_rows(n: int, l: int) -> np.ndarray:
    """All Hermitian rows: e[n-k] = -e[k], so e[0] and e[n/2] are 0 or l/2 (when l is even)."""
    self_paired = [k for k in range(n) if (-k) % n == k]
    free = [k for k in range(1, n) if k < (-k) % n]
    fixed_values = [0, l // 2] if l % 2 == 0 else [0]
    rows = []
    for sp in product(fixed_values, repeat=len(self_paired)):
        for fv in product(range(l), repeat=len(free)):
            e = [0] * n
            for k, v in zip(self_paired, sp):
                e[k] = v
            for k, v in zip(free, fv):
                e[k] = v
                e[(-k) % n] = (-v) % l
            rows.append(e)
    return np.asarray(rows, dtype=np.int64).reshape(-1, n)


def classify_hermitian(n: int, l: int, config: SearchConfig | None = None) -> SearchReport:
    """Classes of C_n(l) containing a Hermitian (self-adjoint) circulant row."""
    config = config or SearchConfig()
    _check_cell(n, l)
    start = time.perf_counter()
    reversal = config.equivalence_group.reversal
    free = (n - 1) // 2
    volume = l**free * (4 if l % 2 == 0 else 1)
    if volume > config.budget:
        raise BudgetExceeded(f"{volume} Hermitian rows exceed the node budget {config.budget}")
    found: set[tuple[int, ...]] = set()
    nodes = 0
    chunk = 1 << 18
    rows = _hermitian_rows(n, l)
    for i in range(0, len(rows), chunk):
        block = rows[i : i + chunk]
        nodes += len(block)
        for e in block[hadamard_mask(block, l)]:
            found.add(canonical_form(tuple(int(x) for x in e), l, reversal))
    reps = [ExponentRow(n, l, e) for e in sorted(found)]
    return SearchReport(
        n,
        l,
        len(reps),
        reps,
        nodes,
        0,
        time.perf_counter() - start,
        config.equivalence_group.value,
        _hadamard_classes(n, reps),
        hermitian=True,
    )


# ---------------------------------------------------------------- oracles and audits


def naive_classes(n: int, l: int, reversal: bool = False) -> list[tuple[int, ...]]:
    """Oracle: all l^n rows, exact Hadamard filter, canonical forms."""
    grids = np.indices((l,) * n).reshape(n, -1).T
    ok = hadamard_mask(grids, l)
    return sorted({canonical_form(tuple(int(x) for x in e), l, reversal) for e in grids[ok]})


def _gauge_quadratic(row: ExponentRow) -> bool:
    # try every rotation and constant shift until a quadratic fits
    p = row.n
    for s in range(p):
        for c in range(p):
            u = tuple((row.e[(j + s) % p] + c) % p for j in range(p))
            try:
                fit_quadratic(PlanarFunction(p, u))
                return True
            except NotQuadratic:
                continue
    return False


@dataclass
class PrimeAudit:
    p: int
    method: str
    circulant_classes: int
    hadamard_classes: int
    all_quadratic: bool
    all_fourier: bool
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.all_quadratic and self.all_fourier and self.hadamard_classes == 1

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "method": self.method,
            "circulant_classes": self.circulant_classes,
            "hadamard_classes": self.hadamard_classes,
            "all_quadratic": self.all_quadratic,
            "all_fourier": self.all_fourier,
            "passed": self.passed,
        }


def _reduces(row: ExponentRow) -> bool:
    try:
        reduce_to_fourier(row)
        return True
    except (ArithmeticError, ValueError):
        return False


def prime_uniqueness_report(p: int, config: SearchConfig | None = None) -> PrimeAudit:
    """C_p(p) up to Hadamard equivalence: every class quadratic and reducible to F_p.

    p <= 7 runs the exhaustive search; larger primes enumerate the quadratic
    rows, which are exactly the Hadamard rows over Z/pZ.
    """
    if not is_prime(p) or p > 13:
        raise ValueError("p must be a prime at most 13")
    if p <= 7:
        reps = classify_cell(p, p, config).representatives
        method = "search"
    else:
        seen = set()
        for a in range(1, p):
            for b in range(p):
                e = tuple((a * j * j + b * j) % p for j in range(p))
                seen.add(canonical_form(e, p))
        reps = [ExponentRow(p, p, e) for e in sorted(seen)]
        if not all(is_hadamard(r) for r in reps):
            return PrimeAudit(p, "planar", len(reps), 0, False, False)
        method = "planar"
    quadratic = all(_gauge_quadratic(r) for r in reps)
    fourier = all(is_fourier_equivalent(r) and _reduces(r) for r in reps)
    return PrimeAudit(p, method, len(reps), 1 if reps and fourier else 0, quadratic, fourier)


def prime_uniqueness_audit(p: int, config: SearchConfig | None = None) -> bool:
    return prime_uniqueness_report(p, config).passed


# ---------------------------------------------------------------- table


@dataclass(frozen=True)
class TableCell:
    n: int
    l: int
    symbol: str | None = None
    count: int | None = None
    fourier: bool = False

    def render(self) -> str:
        if self.symbol is not None:
            return self.symbol
        if self.count is None:
            return ""
        if self.fourier:
            return f"F_{self.n}" if self.n == self.l else f"(F_{self.n})"
        return str(self.count)


def sweep_table(
    n_max: int,
    l_max: int,
    config: SearchConfig | None = None,
    n_min: int = 2,
    l_min: int = 2,
) -> list[TableCell]:
    config = config or SearchConfig()
    cells = []
    for n in range(n_min, n_max + 1):
        for l in range(l_min, l_max + 1):
            verdict = check_obstructions(n, l)
            if verdict.obstructed:
                cells.append(TableCell(n, l, symbol=SYMBOLS[verdict.reason]))
                continue
            try:
                rep = classify_cell(n, l, config)
            except (BudgetExceeded, OverflowError):
                cells.append(TableCell(n, l))
                continue
            fourier = rep.hadamard_class_count == 1
            cells.append(TableCell(n, l, count=rep.class_count, fourier=fourier))
    return cells


def render_table(cells: Sequence[TableCell]) -> str:
    ns = sorted({c.n for c in cells})
    ls = sorted({c.l for c in cells})
    grid = {(c.n, c.l): c.render() for c in cells}
    header = ["n\\l"] + [str(l) for l in ls]
    body = [[str(n)] + [grid.get((n, l), "") for l in ls] for n in ns]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(x.rjust(w) for x, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines) + "\n"

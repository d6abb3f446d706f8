"""Circulant Butson matrices encoded by their first-row exponents.

The row ``e = (e_0, ..., e_{n-1})`` over Z/lZ encodes the matrix
``H[i, j] = w ** e[(j - i) % n]`` with ``w = exp(2 pi i / l)``.  Two rows are
equivalent when one is obtained from the other by a cyclic rotation and by
adding a constant to every exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .cyclotomic import CycPoly, is_zero_sum, power_table


@dataclass(frozen=True, order=True)
class ExponentRow:
    n: int
    l: int
    e: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.l < 1:
            raise ValueError(f"need n >= 1 and l >= 1, got n={self.n}, l={self.l}")
        if len(self.e) != self.n:
            raise ValueError(f"row has {len(self.e)} entries, expected {self.n}")
        if any(not 0 <= x < self.l for x in self.e):
            raise ValueError(f"exponents must lie in [0, {self.l}): {self.e}")

    @classmethod
    def of(cls, e: Iterable[int], l: int) -> "ExponentRow":
        e = tuple(int(x) % l for x in e)
        return cls(len(e), l, e)

    def matrix(self) -> np.ndarray:
        """Exponent matrix m[i, j] = e[(j - i) % n]."""
        idx = (np.arange(self.n)[None, :] - np.arange(self.n)[:, None]) % self.n
        return np.asarray(self.e, dtype=np.int64)[idx]

    def complex_row(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.asarray(self.e) / self.l)

    def complex_matrix(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.matrix() / self.l)

    def difference(self, i: int, j: int) -> tuple[int, ...]:
        """Row difference L_j - L_i as exponents, k -> e[k - j] - e[k - i]."""
        n, l, e = self.n, self.l, self.e
        return tuple((e[(k - j) % n] - e[(k - i) % n]) % l for k in range(n))


def lag_sum(row: ExponentRow, d: int) -> CycPoly:
    """Periodic autocorrelation at lag d as an element of Z[w]."""
    n, e = row.n, row.e
    return CycPoly.from_exponents([e[(k + d) % n] - e[k] for k in range(n)], row.l)


def is_hadamard(row: ExponentRow) -> bool:
    # lags d and n - d are conjugate, so half of them suffice
    return all(is_zero_sum(lag_sum(row, d)) for d in range(1, row.n // 2 + 1))


def hadamard_mask(rows: np.ndarray, l: int) -> np.ndarray:
    """Exact batch version of :func:`is_hadamard` for an (m, n) array of exponents."""
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    table = np.asarray(power_table(l), dtype=np.int64)
    ok = np.ones(rows.shape[0], dtype=bool)
    for d in range(1, n // 2 + 1):
        diffs = (np.roll(rows, -d, axis=1) - rows) % l
        ok &= ~table[diffs].sum(axis=1).any(axis=1)
    return ok


def is_hermitian(row: ExponentRow) -> bool:
    n, l, e = row.n, row.l, row.e
    return all(e[(n - k) % n] == (-e[k]) % l for k in range(n))


@dataclass(frozen=True)
class CyclicRoot:
    """Vector z with z_i = xi_i / xi_{i-1}; exponents mod l, or complex values."""

    n: int
    kind: Literal["exact", "numeric"]
    values: tuple
    l: int | None = None

    def __post_init__(self):
        if len(self.values) != self.n:
            raise ValueError("length mismatch")
        if self.kind == "exact":
            if self.l is None:
                raise ValueError("exact cyclic roots need a modulus")
        elif self.kind == "numeric":
            if any(abs(abs(z) - 1) > 1e-12 for z in self.values):
                raise ValueError("numeric cyclic root entries must be unimodular")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def numeric(cls, values: Sequence[complex]) -> "CyclicRoot":
        return cls(len(values), "numeric", tuple(complex(z) for z in values))

    @classmethod
    def exact(cls, exponents: Sequence[int], l: int) -> "CyclicRoot":
        return cls(len(exponents), "exact", tuple(int(z) % l for z in exponents), l)


def row_to_cyclic_root(row: ExponentRow) -> CyclicRoot:
    e, n = row.e, row.n
    return CyclicRoot.exact([e[i] - e[(i - 1) % n] for i in range(n)], row.l)


def cyclic_root_to_row(z: CyclicRoot) -> ExponentRow:
    """Row with xi_0 = 1 and xi_k = z_1 ... z_k (exact roots only)."""
    if z.kind != "exact":
        raise ValueError("only exact cyclic roots convert to exponent rows")
    acc, e = 0, [0]
    for k in range(1, z.n):
        acc += z.values[k]
        e.append(acc)
    return ExponentRow.of(e, z.l)


def cyclic_root_sums(z: CyclicRoot):
    """The n-1 window sums sum_i z_i z_{i+1} ... z_{i+k-1}, k = 1..n-1."""
    n = z.n
    if z.kind == "exact":
        for k in range(1, n):
            yield CycPoly.from_exponents(
                [sum(z.values[(i + m) % n] for m in range(k)) for i in range(n)], z.l
            )
    else:
        vals = np.asarray(z.values)
        for k in range(1, n):
            yield sum(np.prod([vals[(i + m) % n] for m in range(k)]) for i in range(n))


def cyclic_root_product_is_one(z: CyclicRoot, tol: float = 1e-9) -> bool:
    if z.kind == "exact":
        return sum(z.values) % z.l == 0
    return abs(np.prod(np.asarray(z.values)) - 1) < tol


def verify_cyclic_root(z: CyclicRoot, tol: float = 1e-9) -> bool:
    if not cyclic_root_product_is_one(z, tol):
        return False
    if z.kind == "exact":
        return all(is_zero_sum(s) for s in cyclic_root_sums(z))
    return all(abs(s) < tol for s in cyclic_root_sums(z))


def dephase(row: ExponentRow) -> np.ndarray:
    """Dephased exponent matrix built from the cyclic root of the row.

    Entry (i, j) is (z_{n-i+1} ... z_n) / (z_{j-i+1} ... z_j), written additively.
    """
    n, l = row.n, row.l
    z = row_to_cyclic_root(row).values

    def window(stop: int, length: int) -> int:
        # z_{stop-length+1} + ... + z_stop, indices mod n
        return sum(z[(stop - m) % n] for m in range(length))

    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        num = window(n, i)
        for j in range(n):
            out[i, j] = (num - window(j, i)) % l
    return out


def transforms(e: Sequence[int], l: int, reversal: bool = False):
    """All rows reachable by rotation, constant shift and optionally reversal."""
    n = len(e)
    seqs = [tuple(e)]
    if reversal:
        seqs.append(tuple(e[(-k) % n] for k in range(n)))
    for seq in seqs:
        for s in range(n):
            rot = seq[s:] + seq[:s]
            for c in range(l):
                yield tuple((x + c) % l for x in rot)


def canonical_form(e: Sequence[int], l: int, reversal: bool = False) -> tuple[int, ...]:
    """Lexicographically least row in the orbit (only e0 = 0 transforms can win)."""
    n = len(e)
    seqs = [tuple(e)]
    if reversal:
        seqs.append(tuple(e[(-k) % n] for k in range(n)))
    best = None
    for seq in seqs:
        for s in range(n):
            cand = tuple((seq[(s + k) % n] - seq[s]) % l for k in range(n))
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class CanonicalClass:
    representative: ExponentRow
    orbit_size: int


def canonicalize(row: ExponentRow, reversal: bool = False) -> CanonicalClass:
    orbit = set(transforms(row.e, row.l, reversal))
    rep = min(orbit)
    return CanonicalClass(ExponentRow(row.n, row.l, rep), len(orbit))


def gram_residual(row: ExponentRow) -> float:
    """max |H H* - n I| in floating point; an oracle independent of Z[w] arithmetic."""
    h = row.complex_matrix()
    return float(np.abs(h @ h.conj().T - row.n * np.eye(row.n)).max())


def format_rows(rows: Sequence[ExponentRow]) -> str:
    """Row text format: '# n=<n> l=<l>' header, then one comma-separated row per line."""
    if not rows:
        raise ValueError("nothing to format")
    n, l = rows[0].n, rows[0].l
    if any(r.n != n or r.l != l for r in rows):
        raise ValueError("all rows in one block must share n and l")
    lines = [f"# n={n} l={l}"]
    lines += [",".join(str(x) for x in r.e) for r in rows]
    return "\n".join(lines) + "\n"


def parse_rows(text: str) -> list[ExponentRow]:
    n = l = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            try:
                n, l = int(fields["n"]), int(fields["l"])
            except (KeyError, ValueError):
                raise ValueError(f"line {lineno}: bad header {raw!r}") from None
            continue
        if n is None:
            raise ValueError(f"line {lineno}: row before '# n=.. l=..' header")
        try:
            e = tuple(int(tok) for tok in line.split(","))
        except ValueError:
            raise ValueError(f"line {lineno}: bad row {raw!r}") from None
        if len(e) != n:
            raise ValueError(f"line {lineno}: expected {n} entries, got {len(e)}")
        rows.append(ExponentRow(n, l, e))
    return rows

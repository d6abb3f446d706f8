"""Fourier duality x -> Fx on first rows of circulant matrices.

F is the normalized Fourier matrix, F[j, k] = exp(2 pi i jk / n) / sqrt(n).
A circulant matrix is complex Hadamard exactly when the dual of its first
row is unimodular, and real Hadamard rows go to Hermitian ones.  The
partition sums f_pi, g_pi are exchanged by the duality up to a power of n,
so the sets on which they are all real are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .circulant import ExponentRow

UNIMODULAR_TOL = 1e-9

Partition = tuple[tuple[int, ...], ...]


def dual(x: Sequence[complex]) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return np.fft.ifft(x) * np.sqrt(len(x))


def inverse_dual(y: Sequence[complex]) -> np.ndarray:
    y = np.asarray(y, dtype=complex)
    return np.fft.fft(y) / np.sqrt(len(y))


def is_unimodular(x: np.ndarray, tol: float = UNIMODULAR_TOL) -> bool:
    return bool(np.all(np.abs(np.abs(x) - 1) < tol))


def is_hermitian_row(y: np.ndarray, tol: float = UNIMODULAR_TOL) -> bool:
    """conj(y[-k]) == y[k] for all k, i.e. the circulant matrix is self-adjoint."""
    return bool(np.all(np.abs(np.conj(np.roll(y[::-1], 1)) - y) < tol))


@dataclass(frozen=True)
class DualReport:
    values: np.ndarray
    unimodular: bool
    hermitian: bool


def dual_matrix(row: ExponentRow) -> DualReport:
    y = dual(row.complex_row())
    return DualReport(y, is_unimodular(y), is_hermitian_row(y))


def set_partitions(p: int) -> Iterator[Partition]:
    """Partitions of {1..p} in restricted-growth-string order."""
    if p < 1:
        return

    def rgs(prefix: list[int], top: int):
        if len(prefix) == p:
            yield prefix
            return
        for b in range(top + 2):
            yield from rgs(prefix + [b], max(top, b))

    for code in rgs([0], 0):
        blocks: dict[int, list[int]] = {}
        for pos, b in enumerate(code, 1):
            blocks.setdefault(b, []).append(pos)
        yield tuple(tuple(v) for _, v in sorted(blocks.items()))


def _power_sum(x: np.ndarray, s: int) -> complex:
    return complex(np.sum(x**s))


def _zero_sum_power(x: np.ndarray, s: int) -> complex:
    # sum of x_{i_1} ... x_{i_s} over i_1 + ... + i_s = 0 mod n, by cyclic convolution
    n = len(x)
    acc = np.zeros(n, dtype=complex)
    acc[0] = 1.0
    for _ in range(s):
        nxt = np.zeros(n, dtype=complex)
        for k in range(n):
            nxt += x[k] * np.roll(acc, k)
        acc = nxt
    return complex(acc[0])


def f_pi(x: Sequence[complex], pi: Partition) -> complex:
    """Sum over multi-indices constant on the blocks of pi."""
    x = np.asarray(x, dtype=complex)
    out = 1.0 + 0j
    for block in pi:
        out *= _power_sum(x, len(block))
    return out


def g_pi(x: Sequence[complex], pi: Partition) -> complex:
    """Sum over multi-indices whose entries add to 0 mod n inside each block."""
    x = np.asarray(x, dtype=complex)
    out = 1.0 + 0j
    for block in pi:
        out *= _zero_sum_power(x, len(block))
    return out


@dataclass(frozen=True)
class RealityCondition:
    label: str
    value: complex

    def is_real(self, tol: float = UNIMODULAR_TOL) -> bool:
        return abs(self.value.imag) < tol


def x_set_conditions(x: Sequence[complex], p: int) -> list[RealityCondition]:
    """Every f_pi and g_pi for pi a partition of {1..p}, each reported on its own."""
    out = []
    for pi in set_partitions(p):
        tag = "".join("{" + ",".join(map(str, b)) + "}" for b in pi)
        out.append(RealityCondition(f"f{tag}", f_pi(x, pi)))
        out.append(RealityCondition(f"g{tag}", g_pi(x, pi)))
    return out


def x_set_membership(row: ExponentRow, I: Sequence[int]) -> dict[int, bool]:
    x = row.complex_row()
    out = {}
    for p in I:
        if not 1 <= p <= 5:
            raise ValueError("partition sums are only evaluated for 1 <= p <= 5")
        out[p] = all(c.is_real() for c in x_set_conditions(x, p))
    return out


def format_complex_rows(rows: Sequence[np.ndarray]) -> str:
    """Complex row text format: '# n=<n> complex', entries 're im' joined by commas."""
    n = len(rows[0])
    lines = [f"# n={n} complex"]
    for y in rows:
        lines.append(",".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in np.asarray(y, dtype=complex)))
    return "\n".join(lines) + "\n"


def parse_complex_rows(text: str) -> list[np.ndarray]:
    rows, n = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            n = int(fields["n"])
            continue
        try:
            vals = [complex(float(a), float(b)) for a, b in (tok.split() for tok in line.split(","))]
        except ValueError:
            raise ValueError(f"line {lineno}: bad complex row {raw!r}") from None
        if n is not None and len(vals) != n:
            raise ValueError(f"line {lineno}: expected {n} entries, got {len(vals)}")
        rows.append(np.asarray(vals))
    return rows

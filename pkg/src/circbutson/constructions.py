"""Explicit circulant Butson families and the quadratic-to-Fourier reduction."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .circulant import ExponentRow, dephase
from .cyclotomic import is_prime


class InvalidParams(ValueError):
    pass


class NotQuadratic(ValueError):
    """No polynomial of degree exactly two fits the row."""


@dataclass(frozen=True)
class QuadraticCoeffs:
    p: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParams(f"{self.p} is not prime")
        if self.a % self.p == 0:
            raise InvalidParams("leading coefficient must be nonzero mod p")

    def __call__(self, j: int) -> int:
        return (self.a * j * j + self.b * j + self.c) % self.p


@dataclass(frozen=True)
class BackelinParams:
    n: int
    m: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.n % self.m:
            raise InvalidParams(f"m={self.m} must divide n={self.n}")

    @property
    def c(self) -> int:
        return (self.m * (self.n - 1)) % 2


def _minimal_modulus(e: list[int], l: int) -> ExponentRow:
    g = l
    for x in e:
        g = gcd(g, x % l)
    return ExponentRow.of([x // g for x in e], l // g)


def _row_from_root(z: list[int], l: int) -> ExponentRow:
    # xi_0 = 1, xi_k = z_1 ... z_k; the total product must be 1
    if sum(z) % l:
        raise ArithmeticError("cyclic root product is not 1")
    acc, e = 0, [0]
    for k in range(1, len(z)):
        acc += z[k]
        e.append(acc % l)
    return ExponentRow.of(e, l)


def fourier_circulant(n: int) -> ExponentRow:
    """Circulant form of F_n: z_k = w^k (n odd, l = n) or z_k = rho^(2k+1) (n even, l = 2n)."""
    if n < 2:
        raise InvalidParams("n must be at least 2")
    if n % 2:
        return _row_from_root(list(range(n)), n)
    return _row_from_root([2 * k + 1 for k in range(n)], 2 * n)


def backelin_circulant(params: BackelinParams) -> ExponentRow:
    """Circulant row of order mn from the root rho^c (1^m, w^m, ..., (w^(n-1))^m).

    Built over 2mn-th roots (rho = exp(i pi / mn)) and returned over the
    smallest modulus that still holds every exponent.
    """
    n, m, c = params.n, params.m, params.c
    l = 2 * m * n
    # w = rho^(2m); flat index k = m*i + a carries w^i
    z = [c + 2 * m * (k // m) for k in range(m * n)]
    row = _row_from_root(z, l)
    return _minimal_modulus(list(row.e), l)


def backelin_dephased(params: BackelinParams) -> np.ndarray:
    """Exponents of H_{ia,jb} = w^-(mij + ib + ja) over Z/nZ, flattened as k = m*i + a."""
    n, m = params.n, params.m
    out = np.empty((m * n, m * n), dtype=np.int64)
    for i in range(n):
        for a in range(m):
            for j in range(n):
                for b in range(m):
                    out[m * i + a, m * j + b] = -(m * i * j + i * b + j * a) % n
    return out


def quadratic_row(coeffs: QuadraticCoeffs) -> ExponentRow:
    p = coeffs.p
    return ExponentRow(p, p, tuple(coeffs(j) for j in range(p)))


@dataclass(frozen=True)
class ReductionStep:
    name: str
    matrix: np.ndarray


def reduce_to_fourier(row: ExponentRow) -> tuple[list[ReductionStep], np.ndarray]:
    """Reduce a quadratic circulant over Z/pZ to the Fourier exponents (ij mod p).

    Subtract each column's first entry, then each row's first entry, then send
    row i to row -2ai.
    """
    from .obstructions import PlanarFunction, fit_quadratic

    p = row.n
    if row.l != p or not is_prime(p):
        raise InvalidParams("reduction needs n = l = p prime")
    q = fit_quadratic(PlanarFunction(p, row.e))
    m = row.matrix()
    m1 = (m - m[0:1, :]) % p
    m2 = (m1 - m1[:, 0:1]) % p
    m3 = np.empty_like(m2)
    for i in range(p):
        m3[(-2 * q.a * i) % p] = m2[i]
    steps = [
        ReductionStep("circulant", m),
        ReductionStep("columns dephased", m1),
        ReductionStep("rows dephased", m2),
        ReductionStep("rows permuted", m3),
    ]
    fourier = np.outer(np.arange(p), np.arange(p)) % p
    if not np.array_equal(m3, fourier):
        raise ArithmeticError("reduction did not reach the Fourier matrix")
    return steps, m3


def is_fourier_equivalent(row: ExponentRow) -> bool:
    """Hadamard equivalence with F_p for a circulant row of prime order p, p | l.

    The dephased matrix must consist of p-th roots and, after ordering the
    columns by the values of its second row, have rows k * j mod p.
    """
    p, l = row.n, row.l
    if not is_prime(p) or l % p:
        return False
    d = dephase(row)
    if np.any(d % (l // p)):
        return False
    d = d // (l // p)
    order = np.argsort(d[1])
    if sorted(d[1].tolist()) != list(range(p)):
        return False
    permuted = d[:, order]
    multipliers = permuted[:, 1]
    if sorted(multipliers.tolist()) != list(range(p)):
        return False
    return bool(np.array_equal(permuted, np.outer(multipliers, np.arange(p)) % p))

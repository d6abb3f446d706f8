"""Exact arithmetic with sums of l-th roots of unity.

A sum ``c_0 + c_1 w + ... + c_{l-1} w^{l-1}`` with ``w = exp(2 pi i / l)`` is
stored as its integer coefficient vector.  It vanishes exactly when the
integer polynomial ``sum c_t x^t`` is divisible by the cyclotomic
polynomial of index ``l``; that remainder test is the only zero test used
anywhere in the package.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

_INT64_MAX = 2**63 - 1


class NotVanishing(ValueError):
    """The given sum of roots of unity is not zero."""


class NoDecomposition(RuntimeError):
    """A vanishing sum did not split into the expected p- and q-cycles."""


def _polydivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists are lowest degree first; den must be monic
    num = list(num)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        coef = num[i]
        if coef:
            quot[i - dd] = coef
            for j in range(dd + 1):
                num[i - dd + j] -= coef * den[j]
    rem = num[:dd] if dd else [0]
    return quot, rem


def _trim(poly: list[int]) -> list[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


@dataclass(frozen=True)
class CyclotomicPolynomial:
    l: int
    coeffs: tuple[int, ...]  # lowest degree first, monic

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@lru_cache(maxsize=None)
def cyclotomic_polynomial(l: int) -> CyclotomicPolynomial:
    """Phi_l, by dividing x^l - 1 by Phi_d for every proper divisor d."""
    if l < 1:
        raise ValueError(f"index must be >= 1, got {l}")
    poly = [-1] + [0] * (l - 1) + [1]
    for d in divisors(l)[:-1]:
        quot, rem = _polydivmod(poly, list(cyclotomic_polynomial(d).coeffs))
        if any(rem):
            raise ArithmeticError(f"Phi_{d} does not divide x^{l} - 1")
        poly = _trim(quot)
    return CyclotomicPolynomial(l, tuple(poly))


def cyclotomic_product_check(l: int) -> bool:
    """Check that the product of Phi_d over d | l is x^l - 1."""
    prod = [1]
    for d in divisors(l):
        prod = _polymul(prod, cyclotomic_polynomial(d).coeffs)
    return prod == [-1] + [0] * (l - 1) + [1]


def reduce_mod_cyclotomic(coeffs: Sequence[int], l: int) -> tuple[int, ...]:
    """Remainder of ``sum coeffs[t] x^t`` modulo Phi_l, padded to phi(l) entries."""
    phi = cyclotomic_polynomial(l).coeffs
    _, rem = _polydivmod(list(coeffs), list(phi))
    deg = len(phi) - 1
    rem = list(rem) + [0] * (deg - len(rem))
    return tuple(rem[:deg])


@lru_cache(maxsize=None)
def power_table(l: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of w^t for t = 0..l-1 in the basis 1, w, ..., w^(phi-1)."""
    rows = []
    for t in range(l):
        mono = [0] * (t + 1)
        mono[t] = 1
        rows.append(reduce_mod_cyclotomic(mono, l))
    return tuple(rows)


@dataclass(frozen=True)
class CycPoly:
    """The element ``sum coeffs[t] * w^t`` of Z[w], w a primitive l-th root."""

    l: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if len(self.coeffs) != self.l:
            raise ValueError(f"expected {self.l} coefficients, got {len(self.coeffs)}")
        if any(abs(c) > _INT64_MAX for c in self.coeffs):
            raise OverflowError("coefficient exceeds 64-bit range")

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], l: int) -> "CycPoly":
        """Sum of w^e over the given exponents (a multiset of roots)."""
        coeffs = [0] * l
        for e in exponents:
            coeffs[e % l] += 1
        return cls(l, tuple(coeffs))

    def _check(self, other: "CycPoly") -> None:
        if not isinstance(other, CycPoly) or other.l != self.l:
            raise TypeError("operands must be CycPoly values with the same l")

    def __add__(self, other: "CycPoly") -> "CycPoly":
        self._check(other)
        return CycPoly(self.l, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycPoly":
        return CycPoly(self.l, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycPoly") -> "CycPoly":
        return self + (-other)

    def __mul__(self, other: "CycPoly") -> "CycPoly":
        self._check(other)
        out = [0] * self.l
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[(i + j) % self.l] += a * b
        return CycPoly(self.l, tuple(out))

    def conj(self) -> "CycPoly":
        return CycPoly(self.l, tuple(self.coeffs[-t % self.l] for t in range(self.l)))

    def reduced(self) -> tuple[int, ...]:
        return reduce_mod_cyclotomic(self.coeffs, self.l)

    def __complex__(self) -> complex:
        import cmath

        return sum(c * cmath.exp(2j * cmath.pi * t / self.l) for t, c in enumerate(self.coeffs) if c)


def is_zero_sum(s: CycPoly) -> bool:
    return not any(s.reduced())


@dataclass(frozen=True)
class VanishingDecomposition:
    """Split of a vanishing sum of p+q pq-th roots: a doubled value r, a
    p-cycle through r (minus r) on P and a q-cycle through r (minus r) on Q."""

    p: int
    q: int
    r: int
    P: frozenset[int]
    Q: frozenset[int]
    R: frozenset[int]

    @property
    def P_plus(self) -> frozenset[int]:
        return self.P | self.R

    @property
    def Q_plus(self) -> frozenset[int]:
        return self.Q | self.R

    def values(self) -> Counter:
        """Multiset of values this decomposition describes."""
        m = self.p * self.q
        out = Counter({self.r: 2})
        out.update((self.r + self.q * k) % m for k in range(1, self.p))
        out.update((self.r + self.p * k) % m for k in range(1, self.q))
        return out


def decompose_vanishing_sum(values: Sequence[int], p: int, q: int) -> VanishingDecomposition:
    if p == q or not (is_prime(p) and is_prime(q)):
        raise ValueError(f"p and q must be distinct primes, got {p}, {q}")
    m = p * q
    if len(values) != p + q:
        raise ValueError(f"expected {p + q} values, got {len(values)}")
    vals = [v % m for v in values]
    if not is_zero_sum(CycPoly.from_exponents(vals, m)):
        raise NotVanishing(f"sum of w^v over {vals} is nonzero (l={m})")

    counts = Counter(vals)
    found = []
    for r in range(m):
        if counts[r] != 2:
            continue
        p_vals = {(r + q * k) % m for k in range(1, p)}
        q_vals = {(r + p * k) % m for k in range(1, q)}
        expected = Counter({r: 2})
        expected.update(p_vals)
        expected.update(q_vals)
        if expected != counts:
            continue
        P = frozenset(i for i, v in enumerate(vals) if v in p_vals)
        Q = frozenset(i for i, v in enumerate(vals) if v in q_vals)
        R = frozenset(i for i, v in enumerate(vals) if v == r)
        found.append(VanishingDecomposition(p, q, r, P, Q, R))
    if len(found) != 1:
        raise NoDecomposition(f"{len(found)} candidate decompositions for {vals}")
    return found[0]

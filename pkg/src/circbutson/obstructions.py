"""Existence obstructions for C_n(l) and the structural checks behind the p+q theorem."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .circulant import ExponentRow, hadamard_mask, is_hadamard
from .constructions import NotQuadratic, QuadraticCoeffs
from .cyclotomic import (
    CycPoly,
    decompose_vanishing_sum,
    is_prime,
    is_zero_sum,
    prime_factors,
)


class Reason(str, Enum):
    LAM_LEUNG = "LamLeung"
    SYLVESTER = "Sylvester"
    SYLVESTER_PRIME = "SylvesterPrime"
    SYLVESTER_DOUBLE_PRIME = "SylvesterDoublePrime"
    HAAGERUP5 = "Haagerup5"
    PQ_THEOREM = "PQTheorem"


# Table 1 symbols; the table marks n = 2q cells with the Sylvester symbol
SYMBOLS = {
    Reason.LAM_LEUNG: "x",
    Reason.SYLVESTER: "x_s",
    Reason.SYLVESTER_PRIME: "x_pq",
    Reason.SYLVESTER_DOUBLE_PRIME: "x_s",
    Reason.HAAGERUP5: "x_h",
    Reason.PQ_THEOREM: "x_pq",
}


@dataclass(frozen=True)
class ObstructionVerdict:
    n: int
    l: int
    reason: Reason | None = None

    @property
    def obstructed(self) -> bool:
        return self.reason is not None

    @property
    def status(self) -> str:
        return "obstructed" if self.obstructed else "no_known_obstruction"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "status": self.status,
            "reason": self.reason.value if self.reason else None,
        }


def _representable(n: int, parts: Sequence[int]) -> bool:
    reach = [True] + [False] * n
    for k in range(1, n + 1):
        reach[k] = any(k >= p and reach[k - p] for p in parts)
    return reach[n]


def _prime_power_exponent(x: int, p: int) -> int | None:
    """b with x == p**b, or None."""
    b = 0
    while x % p == 0:
        x //= p
        b += 1
    return b if x == 1 else None


def _sylvester_prime(n: int, l: int) -> bool:
    # n = p + 2 with p >= 3 prime, l = 2 p^b, b >= 1
    p = n - 2
    if p < 3 or not is_prime(p) or l % 2:
        return False
    b = _prime_power_exponent(l // 2, p)
    return b is not None and b >= 1


def _sylvester_double_prime(n: int, l: int) -> bool:
    # n = 2q, l = 2^a p^b with p > q >= 3 primes, b >= 1
    if n % 2:
        return False
    q = n // 2
    if q < 3 or not is_prime(q):
        return False
    odd = l
    while odd % 2 == 0:
        odd //= 2
    factors = prime_factors(odd)
    return len(factors) == 1 and factors[0] > q


def _pq_theorem(n: int, l: int) -> bool:
    # n = p + q, l = pq, p != q primes, both >= 5
    for p in range(5, n):
        q = n - p
        if q > p and is_prime(p) and is_prime(q) and p * q == l:
            return True
    return False


def check_obstructions(n: int, l: int) -> ObstructionVerdict:
    """First applicable obstruction, in Table 1 precedence order."""
    if n < 2 or l < 2:
        raise ValueError(f"need n >= 2 and l >= 2, got ({n}, {l})")
    if not _representable(n, prime_factors(l)):
        return ObstructionVerdict(n, l, Reason.LAM_LEUNG)
    if l == 2 and not (n == 2 or n % 4 == 0):
        return ObstructionVerdict(n, l, Reason.SYLVESTER)
    if _sylvester_prime(n, l):
        return ObstructionVerdict(n, l, Reason.SYLVESTER_PRIME)
    if _sylvester_double_prime(n, l):
        return ObstructionVerdict(n, l, Reason.SYLVESTER_DOUBLE_PRIME)
    if n == 5 and l % 5:
        return ObstructionVerdict(n, l, Reason.HAAGERUP5)
    if _pq_theorem(n, l):
        return ObstructionVerdict(n, l, Reason.PQ_THEOREM)
    return ObstructionVerdict(n, l)


@dataclass(frozen=True)
class PlanarFunction:
    p: int
    u: tuple[int, ...]

    def __post_init__(self):
        if len(self.u) != self.p:
            raise ValueError(f"need {self.p} values, got {len(self.u)}")


def is_planar(f: PlanarFunction) -> bool:
    p, u = f.p, f.u
    for s in range(1, p):
        if len({(u[(k + s) % p] - u[k]) % p for k in range(p)}) != p:
            return False
    return True


def fit_quadratic(f: PlanarFunction) -> QuadraticCoeffs:
    """Interpolate through j = 0, 1, 2 and check the fit everywhere."""
    p, u = f.p, f.u
    if p < 3 or not is_prime(p):
        raise ValueError("fit_quadratic needs a prime p >= 3")
    inv2 = pow(2, -1, p)
    c = u[0] % p
    a = (u[2] - 2 * u[1] + u[0]) * inv2 % p
    b = (u[1] - c - a) % p
    if a == 0 or any((a * j * j + b * j + c - u[j]) % p for j in range(p)):
        raise NotQuadratic(f"{u} is not a degree-2 polynomial mod {p}")
    return QuadraticCoeffs(p, a, b, c)


def _planar_mask(funcs: np.ndarray, p: int) -> np.ndarray:
    ok = np.ones(len(funcs), dtype=bool)
    for s in range(1, p):
        diff = (np.roll(funcs, -s, axis=1) - funcs) % p
        hits = np.zeros((len(funcs), p), dtype=np.int64)
        np.put_along_axis(hits, diff, 1, axis=1)
        ok &= hits.sum(axis=1) == p
    return ok


def _quadratic_mask(funcs: np.ndarray, p: int) -> np.ndarray:
    j = np.arange(p)
    inv2 = pow(2, -1, p)
    c = funcs[:, 0]
    a = (funcs[:, 2] - 2 * funcs[:, 1] + funcs[:, 0]) * inv2 % p
    b = (funcs[:, 1] - c - a) % p
    fitted = (a[:, None] * j * j + b[:, None] * j + c[:, None]) % p
    return (a != 0) & (fitted == funcs).all(axis=1)


@dataclass
class PlanarAudit:
    p: int
    functions: int
    planar_count: int
    quadratic_count: int
    hadamard_count: int
    planar_iff_quadratic: bool
    planar_iff_hadamard: bool

    @property
    def all_quadratic(self) -> bool:
        return self.planar_iff_quadratic

    @property
    def passed(self) -> bool:
        return (
            self.planar_iff_quadratic
            and self.planar_iff_hadamard
            and self.planar_count == self.p**2 * (self.p - 1)
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "functions": self.functions,
            "planar_count": self.planar_count,
            "quadratic_count": self.quadratic_count,
            "hadamard_count": self.hadamard_count,
            "all_quadratic": self.all_quadratic,
            "planar_iff_hadamard": self.planar_iff_hadamard,
            "passed": self.passed,
        }


def planar_theorem_audit(p: int, chunk: int = 200_000) -> PlanarAudit:
    """Enumerate all p^p maps Z/p -> Z/p: planar <=> quadratic <=> Hadamard row."""
    if not is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    total = p**p
    planar = quad = had = 0
    pq_ok = ph_ok = True
    powers = p ** np.arange(p - 1, -1, -1)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        funcs = (idx[:, None] // powers) % p
        pm = _planar_mask(funcs, p)
        qm = _quadratic_mask(funcs, p)
        hm = hadamard_mask(funcs, p)
        planar += int(pm.sum())
        quad += int(qm.sum())
        had += int(hm.sum())
        pq_ok &= bool((pm == qm).all())
        ph_ok &= bool((pm == hm).all())
    return PlanarAudit(p, total, planar, quad, had, pq_ok, ph_ok)


@dataclass(frozen=True)
class IntersectionCheck:
    n: int
    a: int
    b_all: int  # min over every shift y, y = 0 included
    b_nonzero: int  # min over y != 0
    holds_all: bool  # a >= b_all * sqrt(n), as stated
    holds_nonzero: bool  # a >= b_nonzero * sqrt(n)
    holds_squared: bool  # a^2 >= n * b_all, which always holds


def intersection_bound_check(A: Iterable[int], n: int) -> IntersectionCheck:
    A = {x % n for x in A}
    if not A:
        raise ValueError("A must be nonempty")
    a = len(A)
    sizes = [len(A & {(x + y) % n for x in A}) for y in range(n)]
    b_all = min(sizes)
    b_nonzero = min(sizes[1:]) if n > 1 else sizes[0]
    root = math.sqrt(n)
    return IntersectionCheck(
        n=n,
        a=a,
        b_all=b_all,
        b_nonzero=b_nonzero,
        holds_all=a >= b_all * root,
        holds_nonzero=a >= b_nonzero * root,
        holds_squared=a * a >= n * b_all,
    )


@dataclass
class IntersectionSweep:
    n: int
    subsets: int
    violations_all: list[tuple[int, ...]] = field(default_factory=list)
    violations_nonzero: list[tuple[int, ...]] = field(default_factory=list)
    violations_squared: list[tuple[int, ...]] = field(default_factory=list)


def intersection_bound_sweep(n: int) -> IntersectionSweep:
    """Run the check on all nonempty subsets of Z/nZ and collect every violation."""
    out = IntersectionSweep(n, 0)
    for mask in range(1, 2**n):
        A = tuple(k for k in range(n) if mask >> k & 1)
        chk = intersection_bound_check(A, n)
        out.subsets += 1
        if not chk.holds_all:
            out.violations_all.append(A)
        if not chk.holds_nonzero:
            out.violations_nonzero.append(A)
        if not chk.holds_squared:
            out.violations_squared.append(A)
    return out


def pq_intersection_contradiction(p: int, q: int) -> bool:
    """True when a = p-1, b = p-3 on Z/(p+q) already violates a^2 >= n b."""
    return (p - 1) ** 2 < (p + q) * (p - 3)


def haagerup_count_bound(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return math.comb(2 * p - 2, p - 1)


def verify_determinant_identity(row: ExponentRow, rtol: float = 1e-6) -> bool:
    """|det H|^2 = n^n, which every n x n complex Hadamard matrix satisfies."""
    det = np.linalg.det(row.complex_matrix())
    target = float(row.n) ** row.n
    return abs(abs(det) ** 2 - target) <= rtol * target


@dataclass
class LemmaAudit:
    p: int
    q: int
    source: str  # "circulant" or "synthetic"
    pairs_checked: int
    failures: int


def lemma_cycles_audit(p: int, q: int, rows: Sequence[ExponentRow] | None = None) -> LemmaAudit:
    """Decompose every row difference L_ij of the given C_{p+q}(pq) rows.

    With no rows (the circulant cell is empty) every vanishing multiset of
    p+q pq-th roots is decomposed instead, in all of its distinct orderings
    up to a cap.
    """
    m = p * q
    checked = failures = 0
    if rows:
        for row in rows:
            if (row.n, row.l) != (p + q, m) or not is_hadamard(row):
                raise ValueError(f"{row} is not in C_{p + q}({m})")
            for i, j in itertools.permutations(range(row.n), 2):
                vals = row.difference(i, j)
                dec = decompose_vanishing_sum(vals, p, q)
                checked += 1
                if sorted(dec.values().elements()) != sorted(vals):
                    failures += 1
        return LemmaAudit(p, q, "circulant", checked, failures)
    for combo in itertools.combinations_with_replacement(range(m), p + q):
        if not is_zero_sum(CycPoly.from_exponents(combo, m)):
            continue
        for order in itertools.islice(set(itertools.permutations(combo)), 200):
            dec = decompose_vanishing_sum(order, p, q)
            checked += 1
            ok = dec.P.isdisjoint(dec.Q) and dec.R.isdisjoint(dec.P | dec.Q)
            ok &= sorted(dec.values().elements()) == sorted(order)
            ok &= all(order[k] == dec.r for k in dec.R)
            failures += not ok
    return LemmaAudit(p, q, "synthetic", checked, failures)

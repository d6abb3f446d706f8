import numpy as np
import pytest

from circbutson.circulant import ExponentRow, dephase, gram_residual, is_hadamard, row_to_cyclic_root
from circbutson.constructions import (
    BackelinParams,
    InvalidParams,
    QuadraticCoeffs,
    backelin_circulant,
    backelin_dephased,
    fourier_circulant,
    is_fourier_equivalent,
    quadratic_row,
    reduce_to_fourier,
)


@pytest.mark.parametrize(
    "n, l, e",
    [(3, 3, (0, 1, 0)), (5, 5, (0, 1, 3, 1, 0)), (4, 8, (0, 3, 0, 7)), (2, 4, (0, 3))],
)
def test_fourier_circulant_values(n, l, e):
    assert fourier_circulant(n) == ExponentRow(n, l, e)


@pytest.mark.parametrize("n", range(2, 17))
def test_fourier_circulant_is_hadamard(n):
    row = fourier_circulant(n)
    assert is_hadamard(row)
    assert gram_residual(row) < 1e-8


def test_fourier_circulant_root():
    # odd n: z_k = w^k
    assert row_to_cyclic_root(fourier_circulant(7)).values == tuple(range(7))


def test_fourier_circulant_rejects_small_n():
    with pytest.raises(InvalidParams):
        fourier_circulant(1)


def test_backelin_small_example():
    row = backelin_circulant(BackelinParams(2, 2))
    assert row == ExponentRow(4, 2, (0, 0, 1, 0))


def test_backelin_rejects_nondivisor():
    with pytest.raises(InvalidParams):
        BackelinParams(6, 4)


def _backelin_cases(limit=12):
    return [(n, m) for n in range(1, limit + 1) for m in range(1, limit + 1) if n % m == 0 and 2 <= m * n <= limit]


@pytest.mark.parametrize("n, m", _backelin_cases())
def test_backelin_is_hadamard(n, m):
    row = backelin_circulant(BackelinParams(n, m))
    assert row.n == m * n
    assert (2 * m * n) % row.l == 0
    assert is_hadamard(row)


@pytest.mark.parametrize("n, m", [c for c in _backelin_cases() if c[1] <= 2])
def test_backelin_dephased_form(n, m):
    row = backelin_circulant(BackelinParams(n, m))
    d = dephase(row)
    # dephased entries are n-th roots; rescale exponents from Z/l to Z/n
    assert not (d * n % row.l).any()
    assert np.array_equal(d * n // row.l % n, backelin_dephased(BackelinParams(n, m)))


def test_quadratic_coeffs_validation():
    with pytest.raises(InvalidParams):
        QuadraticCoeffs(6, 1, 0, 0)
    with pytest.raises(InvalidParams):
        QuadraticCoeffs(5, 0, 1, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_quadratic_rows_reduce_to_fourier(p):
    for a in range(1, p):
        for b in range(p):
            row = quadratic_row(QuadraticCoeffs(p, a, b, (a + b) % p))
            assert is_hadamard(row)
            steps, final = reduce_to_fourier(row)
            assert [s.name for s in steps] == ["circulant", "columns dephased", "rows dephased", "rows permuted"]
            assert np.array_equal(final, np.outer(np.arange(p), np.arange(p)) % p)
            assert is_fourier_equivalent(row)


def test_reduce_rejects_non_prime_cells():
    with pytest.raises(InvalidParams):
        reduce_to_fourier(ExponentRow.of((1, 0, 0, 0), 2))


def test_fourier_equivalence_detection():
    assert is_fourier_equivalent(fourier_circulant(5))
    assert not is_fourier_equivalent(ExponentRow.of((0, 0, 0, 0, 0), 5))
    assert not is_fourier_equivalent(ExponentRow.of((1, 0, 0, 0), 2))

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circbutson.circulant import (
    CyclicRoot,
    ExponentRow,
    canonical_form,
    canonicalize,
    cyclic_root_product_is_one,
    cyclic_root_to_row,
    dephase,
    format_rows,
    gram_residual,
    hadamard_mask,
    is_hadamard,
    is_hermitian,
    parse_rows,
    row_to_cyclic_root,
    transforms,
    verify_cyclic_root,
)

K4 = ExponentRow.of((1, 0, 0, 0), 2)
F3 = ExponentRow.of((0, 1, 0), 3)


def rows_strategy(max_n=8, max_l=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.integers(1, max_l).flatmap(
            lambda l: st.lists(st.integers(0, l - 1), min_size=n, max_size=n).map(
                lambda e: ExponentRow.of(e, l)
            )
        )
    )


def test_row_validation():
    with pytest.raises(ValueError):
        ExponentRow(3, 3, (0, 1))
    with pytest.raises(ValueError):
        ExponentRow(2, 3, (0, 3))


def test_matrix_is_circulant():
    m = ExponentRow.of((0, 1, 2, 5), 6).matrix()
    for i, j in itertools.product(range(4), repeat=2):
        assert m[i, j] == m[(i + 1) % 4, (j + 1) % 4]
    assert list(m[0]) == [0, 1, 2, 5]


def test_hadamard_examples():
    assert is_hadamard(K4)
    assert is_hadamard(F3)
    assert not is_hadamard(ExponentRow.of((0, 0, 0), 3))


def test_hadamard_matches_gram_oracle_exhaustively():
    for n in range(1, 6):
        for l in range(1, 7):
            grid = np.indices((l,) * n).reshape(n, -1).T
            mask = hadamard_mask(grid, l)
            for e, flag in zip(grid, mask):
                row = ExponentRow(n, l, tuple(int(x) for x in e))
                assert flag == (gram_residual(row) < 1e-8)
                assert flag == is_hadamard(row)


@settings(max_examples=200, deadline=None)
@given(rows_strategy())
def test_hadamard_constant_on_orbits(row):
    flag = is_hadamard(row)
    for e in itertools.islice(transforms(row.e, row.l), 30):
        assert is_hadamard(ExponentRow(row.n, row.l, e)) == flag


def test_cyclic_root_examples():
    assert row_to_cyclic_root(F3).values == (0, 1, 2)
    # consecutive differences of (1,0,0,0) mod 2; they telescope to 0
    assert row_to_cyclic_root(K4).values == (1, 1, 0, 0)
    assert row_to_cyclic_root(ExponentRow.of((2, 2, 2), 5)).values == (0, 0, 0)


def test_verify_cyclic_root_examples():
    assert verify_cyclic_root(CyclicRoot.exact((0, 1, 2), 3))
    assert verify_cyclic_root(CyclicRoot.numeric((1, 1, -1, -1)))
    assert not verify_cyclic_root(CyclicRoot.numeric((1, 1)))


def test_numeric_root_must_be_unimodular():
    with pytest.raises(ValueError):
        CyclicRoot.numeric((1, 0.5))


@settings(max_examples=200, deadline=None)
@given(rows_strategy())
def test_cyclic_root_round_trip(row):
    e0 = ExponentRow.of([x - row.e[0] for x in row.e], row.l)
    assert cyclic_root_to_row(row_to_cyclic_root(e0)) == e0


@settings(max_examples=200, deadline=None)
@given(rows_strategy(max_n=7, max_l=8))
def test_cyclic_root_equations_match_hadamard(row):
    z = row_to_cyclic_root(row)
    assert cyclic_root_product_is_one(z)  # always true for rows: the z telescope
    assert verify_cyclic_root(z) == is_hadamard(row)


def test_dephase_examples():
    assert not dephase(ExponentRow.of((0, 0, 0, 0), 5)).any()
    d = dephase(F3)
    fourier = {tuple((i * j) % 3 for j in range(3)) for i in range(3)}
    assert {tuple(r) for r in d} == fourier
    d = dephase(K4)
    assert sorted(map(tuple, d)) == [(0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0)]


@settings(max_examples=200, deadline=None)
@given(rows_strategy())
def test_dephase_normalised_and_equivalent(row):
    d = dephase(row)
    assert not d[0].any() and not d[:, 0].any()
    # Hadamard-equivalent: d = m + (row phase) + (column phase)
    m = row.matrix()
    r = (d - m) % row.l
    assert all(len(set((r[i] - r[0]) % row.l)) == 1 for i in range(row.n))


def test_hermitian_examples():
    assert is_hermitian(ExponentRow.of((0, 2, 2, 2), 4))
    assert not is_hermitian(F3)
    assert is_hermitian(ExponentRow.of((0, 0, 0), 5))
    assert is_hermitian(K4)


@settings(max_examples=200, deadline=None)
@given(rows_strategy())
def test_hermitian_means_self_adjoint(row):
    h = row.complex_matrix()
    assert is_hermitian(row) == bool(np.allclose(h, h.conj().T))


def test_canonicalize_examples():
    c = canonicalize(F3)
    assert c.representative.e == (0, 0, 1) and c.orbit_size == 9
    c = canonicalize(K4)
    assert c.representative.e == (0, 0, 0, 1) and c.orbit_size == 8
    c = canonicalize(ExponentRow.of((3, 3, 3), 7))
    assert c.representative.e == (0, 0, 0) and c.orbit_size == 7


@settings(max_examples=200, deadline=None)
@given(rows_strategy())
def test_canonical_form_is_orbit_minimum(row):
    c = canonicalize(row)
    assert c.representative.e == canonical_form(row.e, row.l)
    assert (row.n * row.l) % c.orbit_size == 0
    assert canonicalize(c.representative).representative == c.representative


def test_reversal_merges_mirror_rows():
    e = (0, 0, 1, 3)
    mirror = (0, 3, 1, 0)
    assert canonical_form(e, 4) != canonical_form(mirror, 4)
    assert canonical_form(e, 4, reversal=True) == canonical_form(mirror, 4, reversal=True)


def test_text_format_round_trip():
    rows = [ExponentRow.of((0, 1, 3, 1, 0), 5), ExponentRow.of((0, 0, 1, 2, 4), 5)]
    text = format_rows(rows)
    assert text.startswith("# n=5 l=5\n")
    assert parse_rows(text) == rows
    assert format_rows(parse_rows(text)) == text


@pytest.mark.parametrize(
    "text, where",
    [
        ("0,1,0\n", "line 1"),
        ("# n=3 l=3\n0,1\n", "line 2"),
        ("# n=3 l=3\n0,x,0\n", "line 2"),
        ("# n=3\n0,1,0\n", "line 1"),
    ],
)
def test_parse_errors_carry_line_numbers(text, where):
    with pytest.raises(ValueError, match=where):
        parse_rows(text)

import json

import pytest

from circbutson.circulant import ExponentRow, canonicalize, gram_residual, is_hadamard, is_hermitian
from circbutson.search import (
    BudgetExceeded,
    EquivalenceGroup,
    SearchConfig,
    classify_cell,
    classify_hermitian,
    naive_classes,
    prime_uniqueness_audit,
    prime_uniqueness_report,
    render_table,
    sweep_table,
)
from circbutson.search.engine import _remaining


@pytest.mark.parametrize(
    "n, l, count",
    [(4, 2, 1), (4, 4, 2), (9, 3, 6), (6, 3, 0), (8, 4, 4), (9, 6, 24), (7, 12, 0)],
)
def test_class_counts(n, l, count):
    assert classify_cell(n, l).class_count == count


@pytest.mark.parametrize("n, l", [(3, 3), (5, 5), (3, 6), (5, 10), (7, 7)])
def test_prime_cells_are_fourier(n, l):
    rep = classify_cell(n, l)
    assert rep.hadamard_class_count == 1
    assert rep.class_count == n - 1 if l == n else rep.class_count >= 1


@pytest.mark.parametrize("n, l", [(4, 6), (5, 10), (6, 12), (8, 8), (9, 9)])
def test_report_invariants(n, l):
    rep = classify_cell(n, l)
    assert rep.class_count == len(rep.representatives)
    forms = set()
    for row in rep.representatives:
        assert is_hadamard(row)
        assert gram_residual(row) < 1e-8
        assert canonicalize(row).representative == row
        forms.add(row.e)
    assert len(forms) == rep.class_count


@pytest.mark.parametrize(
    "n, l",
    [(n, l) for n in range(2, 7) for l in range(2, 9) if l ** (n - 1) <= 20_000],
)
def test_matches_naive_oracle(n, l):
    assert [r.e for r in classify_cell(n, l).representatives] == naive_classes(n, l)


def test_reversal_group_matches_oracle():
    cfg = SearchConfig(EquivalenceGroup.RotateConstantAndReversal)
    for n, l in [(4, 6), (4, 8), (5, 10), (6, 4)]:
        got = [r.e for r in classify_cell(n, l, cfg).representatives]
        assert got == naive_classes(n, l, reversal=True)


def test_gauge_completeness():
    # every Hadamard row has an orbit member with e[0] = 0 that the search finds
    rows = naive_classes(4, 10)
    assert all(e[0] == 0 for e in rows)


def test_workers_do_not_change_results():
    one = classify_cell(8, 8, SearchConfig(worker_count=1))
    two = classify_cell(8, 8, SearchConfig(worker_count=2))
    assert one.representatives == two.representatives
    assert one.nodes_visited == two.nodes_visited


def test_budget_exceeded_is_not_partial():
    with pytest.raises(BudgetExceeded):
        classify_cell(9, 9, SearchConfig(budget=1000))


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(worker_count=0)
    assert SearchConfig("RotateConstantAndReversal").equivalence_group.reversal


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "ck.json"
    first = classify_cell(6, 12, SearchConfig(checkpoint_path=path))
    data = json.loads(path.read_text())
    assert data["n"] == 6 and len(data["done"]) == 12
    again = classify_cell(6, 12, SearchConfig(checkpoint_path=path))
    assert again.representatives == first.representatives
    assert again.nodes_visited == first.nodes_visited


def test_remaining_table():
    rem = _remaining(4)
    # lag 1 terms (0,1),(1,2),(2,3),(3,0) complete at k = 1, 2, 3, 3
    assert list(rem[1]) == [4, 3, 2, 0]
    assert list(rem[2]) == [4, 4, 2, 0]


def test_invalid_cells():
    with pytest.raises(ValueError):
        classify_cell(1, 4)
    with pytest.raises(ValueError):
        classify_cell(4, 1)


def test_hermitian_examples():
    rep = classify_hermitian(4, 2)
    assert rep.class_count >= 1 and rep.hermitian
    assert all(is_hadamard(r) for r in rep.representatives)
    assert classify_hermitian(8, 2).class_count == 0
    assert classify_hermitian(8, 4).class_count == 0


def test_hermitian_classes_are_subset_of_all_classes():
    for n, l in [(4, 4), (4, 8), (6, 12)]:
        herm = {r.e for r in classify_hermitian(n, l).representatives}
        assert herm <= {r.e for r in classify_cell(n, l).representatives}


def test_hermitian_classes_contain_hermitian_rows():
    full = naive_classes(4, 8)
    from circbutson.circulant import transforms

    expected = [e for e in full if any(is_hermitian(ExponentRow(4, 8, t)) for t in transforms(e, 8))]
    assert [r.e for r in classify_hermitian(4, 8).representatives] == expected


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prime_uniqueness(p):
    rep = prime_uniqueness_report(p)
    assert rep.passed and rep.hadamard_classes == 1
    assert rep.circulant_classes == p - 1
    assert rep.method == ("search" if p <= 7 else "planar")


def test_prime_uniqueness_rejects_composites():
    with pytest.raises(ValueError):
        prime_uniqueness_audit(9)


def test_sweep_small_block():
    cells = {(c.n, c.l): c.render() for c in sweep_table(6, 8)}
    assert cells[(5, 6)] == "x_pq"
    assert cells[(3, 3)] == "F_3" and cells[(3, 6)] == "(F_3)"
    assert cells[(5, 5)] == "F_5"
    assert cells[(6, 2)] == "x_s"
    assert cells[(4, 2)] == "1" and cells[(4, 4)] == "2"
    assert [cells[(6, l)] for l in (3, 4, 6, 8)] == ["0"] * 4


def test_sweep_marks_over_budget_blank():
    cells = sweep_table(9, 9, SearchConfig(budget=10), n_min=9, l_min=9)
    assert cells[0].render() == ""


def test_cell_10_4_is_zero():
    (cell,) = sweep_table(10, 4, n_min=10, l_min=4)
    assert cell.render() == "0"


def test_render_table_alignment():
    text = render_table(sweep_table(4, 4, n_min=3, l_min=2))
    lines = text.splitlines()
    assert lines[0].split() == ["n\\l", "2", "3", "4"]
    assert lines[1].split() == ["3", "x", "F_3", "x"]

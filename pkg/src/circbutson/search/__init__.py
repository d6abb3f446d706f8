"""Symmetry-reduced exhaustive search over circulant Butson rows."""

from .engine import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    EquivalenceGroup,
    PrimeAudit,
    SearchConfig,
    SearchReport,
    TableCell,
    classify_cell,
    classify_hermitian,
    naive_classes,
    prime_uniqueness_audit,
    prime_uniqueness_report,
    render_table,
    sweep_table,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "EquivalenceGroup",
    "PrimeAudit",
    "SearchConfig",
    "SearchReport",
    "TableCell",
    "classify_cell",
    "classify_hermitian",
    "naive_classes",
    "prime_uniqueness_audit",
    "prime_uniqueness_report",
    "render_table",
    "sweep_table",
]

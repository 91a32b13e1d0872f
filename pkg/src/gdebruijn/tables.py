"""Golden copies of the published tables and routines that recompute them."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from gdebruijn.enumeration import Budget, count_gdb, debruijn_count_formula, max_sc_search
from gdebruijn.words import ilog


def _read(name: str) -> list[dict[str, str]]:
    text = resources.files("gdebruijn").joinpath("data", name).read_text(encoding="utf-8")
    return list(csv.DictReader(io.StringIO(text)))


def golden_table1() -> dict[int, tuple[str, int]]:
    """N -> (least binary generalized de Bruijn word, number of classes)."""
    return {int(row["N"]): (row["least"], int(row["count"])) for row in _read("table1.csv")}


def golden_table2() -> dict[int, int]:
    return {int(row["N"]): int(row["max_sc"]) for row in _read("table2.csv")}


def golden_table3() -> dict[tuple[int, int], tuple[str, ...]]:
    """(k, N) -> maximizing words up to rotation and exchange of letters."""
    return {(int(row["k"]), int(row["N"])): tuple(row["words"].split(",")) for row in _read("table3.csv")}


def golden_table4() -> dict[int, int]:
    return {int(row["N"]): int(row["count"]) for row in _read("table4.csv")}


@dataclass(frozen=True)
class Row:
    key: tuple
    values: tuple
    expected: tuple | None

    @property
    def matches(self) -> bool | None:
        return None if self.expected is None else self.values == self.expected


def table1_rows(max_n: int, budget: Budget | None = None, jobs: int = 1, min_n: int = 1) -> list[Row]:
    golden = golden_table1()
    rows = []
    for n in range(min_n, max_n + 1):
        result = count_gdb(n, 2, budget=budget, jobs=jobs)
        rows.append(Row((n,), (str(result.least), result.count), golden.get(n)))
    return rows


def table2_rows(max_n: int, budget: Budget | None = None, jobs: int = 1, min_n: int = 1) -> list[Row]:
    golden = golden_table2()
    rows = []
    for n in range(min_n, max_n + 1):
        result = max_sc_search(n, 2, budget=budget, jobs=jobs)
        expected = golden.get(n)
        rows.append(Row((n,), (result.max_sc,), None if expected is None else (expected,)))
    return rows


def table3_rows(budget: Budget | None = None, jobs: int = 1, max_n: int | None = None) -> list[Row]:
    rows = []
    for (k, n), words in golden_table3().items():
        if max_n is not None and n > max_n:
            continue
        result = max_sc_search(n, k, budget=budget, jobs=jobs)
        rows.append(Row((k, n), result.words, words))
    return rows


def table4_rows(
    max_n: int, budget: Budget | None = None, jobs: int = 1, min_n: int = 32, formula_only: bool = False
) -> list[Row]:
    """Longer binary counts; with ``formula_only`` just the rows where N is a power of two."""
    golden = golden_table4()
    rows = []
    for n in range(min_n, max_n + 1):
        expected = golden.get(n)
        expected = None if expected is None else (expected,)
        if formula_only:
            r = ilog(n, 2)
            if 2**r == n:
                rows.append(Row((n,), (debruijn_count_formula(r, 2),), expected))
            continue
        rows.append(Row((n,), (count_gdb(n, 2, budget=budget, jobs=jobs).count,), expected))
    return rows

import pytest

from gdebruijn.enumeration import (
    Budget,
    BudgetExceeded,
    count_gdb,
    debruijn_count_formula,
    list_gdb,
    max_sc_search,
    naive_gdb_classes,
    necklaces,
    normalize_up_to_letters,
    ternary_spot_checks,
)
from gdebruijn.tables import golden_table1, golden_table4, table4_rows
from gdebruijn.words import (
    CircularWord,
    canonical_rotation,
    is_generalized_de_bruijn,
    is_generalized_de_bruijn_by_definition,
    parse_word,
)

UNLIMITED = Budget()


def test_count_examples():
    twelve = count_gdb(12, 2, budget=UNLIMITED)
    assert twelve.count == 13 and str(twelve.least) == "000010100111"
    assert count_gdb(20, 2, budget=UNLIMITED).count == 141
    one = count_gdb(1, 2, budget=UNLIMITED)
    assert one.count == 2 and str(one.least) == "0"
    assert one.complete


def test_count_matches_table1_up_to_20():
    golden = golden_table1()
    for n in range(1, 21):
        result = count_gdb(n, 2, budget=UNLIMITED)
        assert (str(result.least), result.count) == golden[n], n


def test_list_examples():
    assert [str(w) for w in list_gdb(7, 2, 1, budget=UNLIMITED)] == ["0001011"]
    assert [str(w) for w in list_gdb(31, 2, 1, budget=UNLIMITED)] == ["0000010001100101001110101101111"]
    ternary = [str(w) for w in list_gdb(3, 3, budget=UNLIMITED)]
    assert ternary == ["012", "021"]
    assert "012" in {str(normalize_up_to_letters(parse_word(w))) for w in ternary}


def test_listed_words_are_canonical_and_sorted():
    words = list_gdb(14, 2, budget=UNLIMITED)
    assert len(words) == count_gdb(14, 2, budget=UNLIMITED).count
    assert [w.letters for w in words] == sorted(w.letters for w in words)
    for w in words:
        assert canonical_rotation(w) == w
        assert is_generalized_de_bruijn(w)


@pytest.mark.parametrize("k, max_n", [(2, 14), (3, 8), (4, 5)])
def test_pruned_search_matches_naive(k, max_n):
    for n in range(1, max_n + 1):
        fast = list_gdb(n, k, budget=UNLIMITED)
        slow = naive_gdb_classes(n, k, is_generalized_de_bruijn_by_definition)
        assert fast == slow, (n, k)


def test_necklaces_are_least_rotations():
    for n in range(1, 9):
        seen = list(necklaces(n, 2))
        assert seen == sorted(seen)
        assert all(canonical_rotation(CircularWord(w, 2)).letters == w for w in seen)
        classes = {canonical_rotation(CircularWord(tuple(int(b) for b in f"{x:0{n}b}"), 2)).letters for x in range(2**n)}
        assert set(seen) == classes


@pytest.mark.parametrize("n, k", [(19, 2), (22, 2), (9, 3), (10, 3), (6, 4)])
def test_count_independent_of_jobs(n, k):
    serial = count_gdb(n, k, budget=UNLIMITED, jobs=1)
    sharded = count_gdb(n, k, budget=UNLIMITED, jobs=2)
    assert (serial.count, serial.least) == (sharded.count, sharded.least)
    assert list_gdb(n, k, budget=UNLIMITED, jobs=2) == list_gdb(n, k, budget=UNLIMITED)


@pytest.mark.parametrize("jobs", [1, 2])
def test_budget_exhaustion_reports_partial(jobs):
    with pytest.raises(BudgetExceeded) as info:
        count_gdb(24, 2, budget=Budget(max_nodes=500), jobs=jobs)
    partial = info.value.partial
    assert partial is not None and not partial.complete
    assert partial.count < golden_table1()[24][1]


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("GDB_MAX_NODES", "100")
    monkeypatch.setenv("GDB_MAX_SECONDS", "2.5")
    assert Budget.from_env() == Budget(100, 2.5)
    with pytest.raises(BudgetExceeded):
        count_gdb(20, 2)
    monkeypatch.delenv("GDB_MAX_NODES")
    monkeypatch.delenv("GDB_MAX_SECONDS")
    assert Budget.from_env() == Budget()


def test_max_sc_budget():
    with pytest.raises(BudgetExceeded):
        max_sc_search(10, 2, budget=Budget(max_nodes=10))


def test_formula_examples():
    assert debruijn_count_formula(4, 2) == 16
    assert debruijn_count_formula(5, 2) == 2048 == golden_table4()[32]
    assert debruijn_count_formula(1, 2) == 1
    assert debruijn_count_formula(2, 3) == 24
    with pytest.raises(ValueError):
        debruijn_count_formula(0, 2)


def test_formula_matches_enumeration():
    for n in range(1, 5):
        assert count_gdb(2**n, 2, budget=UNLIMITED).count == debruijn_count_formula(n, 2)
    assert count_gdb(9, 3, budget=UNLIMITED).count == debruijn_count_formula(2, 3)
    assert count_gdb(4, 4, budget=UNLIMITED).count == debruijn_count_formula(1, 4)


def test_ternary_spot_checks():
    for n, (got, want) in ternary_spot_checks(budget=UNLIMITED).items():
        assert got == want, n


def test_doubling_next_to_powers_of_two():
    # observed for small n only; not assumed beyond
    for n in range(1, 5):
        base = count_gdb(2**n, 2, budget=UNLIMITED).count
        assert count_gdb(2**n + 1, 2, budget=UNLIMITED).count == 2 * base
        if n >= 2:
            assert count_gdb(2**n - 1, 2, budget=UNLIMITED).count == 2 * base


def test_max_sc_examples():
    six = max_sc_search(6, 2, budget=UNLIMITED)
    assert (six.max_sc, six.words) == (21, ("000111", "001011"))
    nine = max_sc_search(9, 2, budget=UNLIMITED)
    assert (nine.max_sc, nine.words) == (49, ("000010111", "000011101"))
    assert max_sc_search(4, 4, budget=UNLIMITED).words == ("0123",)
    serial = max_sc_search(8, 2, budget=UNLIMITED)
    sharded = max_sc_search(8, 2, budget=UNLIMITED, jobs=2)
    assert (serial.max_sc, serial.words) == (sharded.max_sc, sharded.words) == (39, ("00010111",))


def test_normalize_up_to_letters():
    assert str(normalize_up_to_letters(parse_word("1110"))) == "0001"
    assert str(normalize_up_to_letters(parse_word("2101", 3))) == "0102"


def test_table4_formula_rows():
    rows = table4_rows(64, formula_only=True)
    assert [row.key for row in rows] == [(32,), (64,)]
    assert rows[0].matches
    # the published value for N = 64 is 2^28; the closed form gives 2^26
    assert rows[1].values == (2**26,)
    assert rows[1].expected == (2**28,)


@pytest.mark.slow
@pytest.mark.parametrize("n", [32, 33, 34])
def test_table4_rows_by_enumeration(n):
    assert count_gdb(n, 2, budget=UNLIMITED).count == golden_table4()[n]

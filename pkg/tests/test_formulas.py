"""Closed-form maxima, ring models and the constructive comparison."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entmat.errors import DomainError, SizeLimitError, UnsupportedParityError
from entmat.formulas import (
    EVEN_C_HALF_INT,
    EVEN_C_HALF_NONINT,
    MULTIPLE_OF_12,
    ODD,
    branch_value,
    case_tag,
    census_row,
    census_table,
    compare_report,
    degree_count_model,
    emax_constructive,
    emax_formula,
    plot_series,
    replacement_model,
)
from entmat.geometry import build_midpoint_census
from entmat.graphs import complete_graph
from entmat.matrix import build_entanglement_matrix, total_entanglement


@pytest.mark.parametrize(
    "n, value, tag",
    [
        (2, 2, EVEN_C_HALF_INT),
        (3, 6, ODD),
        (4, 12, EVEN_C_HALF_NONINT),
        (6, 36, EVEN_C_HALF_INT),
        (8, 64, EVEN_C_HALF_NONINT),
        (10, 110, EVEN_C_HALF_INT),
        (11, 110, ODD),
        (12, 180, MULTIPLE_OF_12),
        (14, 224, EVEN_C_HALF_INT),
        (24, 720, MULTIPLE_OF_12),
    ],
)
def test_formula_values(n, value, tag):
    assert emax_formula(n) == (value, tag)


@given(st.integers(2, 400))
def test_formula_is_exact_integer_of_the_branch(n):
    value, tag = emax_formula(n)
    assert isinstance(value, int)
    if tag == ODD:
        assert value == n * n - n
    else:
        # compare against the rational form with exact arithmetic
        from fractions import Fraction

        base = Fraction(5 * n * n, 4)
        assert value == base - {MULTIPLE_OF_12: 0, EVEN_C_HALF_INT: Fraction(3 * n, 2), EVEN_C_HALF_NONINT: 2 * n}[tag]


def test_formula_domain():
    for bad in (0, 1, -4):
        with pytest.raises(DomainError):
            emax_formula(bad)
    with pytest.raises(UnsupportedParityError):
        branch_value(7, MULTIPLE_OF_12)
    with pytest.raises(DomainError):
        branch_value(8, "nope")


def test_case_tags_cover_each_branch():
    assert [case_tag(n) for n in (5, 6, 8, 36)] == [ODD, EVEN_C_HALF_INT, EVEN_C_HALF_NONINT, MULTIPLE_OF_12]


@pytest.mark.parametrize("n", [4, 6, 8, 10, 14, 16, 18, 20, 22, 26, 28, 30])
def test_degree_count_model_matches_census(n):
    twos, fours, center = degree_count_model(n)
    census = build_midpoint_census(n)
    assert census.center.degree == center == n
    ring = [r.degree for r in census.records if r is not census.center]
    assert ring.count(2) == twos and ring.count(4) == fours and len(ring) == twos + fours


def test_degree_count_model_domain():
    with pytest.raises(UnsupportedParityError):
        degree_count_model(9)
    with pytest.raises(DomainError):
        degree_count_model(24)


@pytest.mark.parametrize(
    "n, text", [(12, "2 replaced by 6"), (24, "4 replaced by 8"), (36, "2 replaced by 6"), (48, "4 replaced by 8")]
)
def test_replacement_model(n, text):
    m = replacement_model(n)
    assert m.description == text
    assert m.total() == emax_formula(n)[0]
    hist = build_midpoint_census(n).degree_histogram()
    assert hist[m.new_degree] == m.ring_size


def test_replacement_model_domain():
    with pytest.raises(DomainError):
        replacement_model(18)


def test_constructive_breakdown_for_hexagon():
    b = emax_constructive(6)
    assert b.primary_block == 6 + 15
    assert [(r.separation, r.count, r.multiplicity) for r in b.per_ring] == [(2, 6, 2)]
    assert b.center == 3
    assert b.constructive_total == 36 and b.match


def test_constructive_equals_complete_graph_matrix():
    for n in range(2, 12):
        em = build_entanglement_matrix(complete_graph(n))
        assert emax_constructive(n).constructive_total == total_entanglement(em)


def test_constructive_matches_formula_up_to_48():
    rows = compare_report(2, 48)
    assert [r.n for r in rows if not r.match] == []


def test_constructive_limits():
    with pytest.raises(SizeLimitError):
        emax_constructive(49)
    with pytest.raises(DomainError):
        compare_report(5, 3)


def test_census_table_rows():
    rows = census_table(8)
    assert [r.n for r in rows] == list(range(3, 9))
    assert census_row(6).histogram == {2: 6, 4: 6, 6: 1}
    assert census_row(6).total_midpoints == 13 and census_row(6).rings == 2
    assert census_row(6).histogram_str() == "2:6 4:6 6:1"
    with pytest.raises(SizeLimitError):
        census_table(49)


def test_plot_series_families():
    s = plot_series(compare_report(10, 14))
    assert s == {"odd": [(11, 110), (13, 156)], "even": [(10, 110), (14, 224)], "multiple-of-12": [(12, 180)]}

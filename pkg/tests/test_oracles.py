import pytest

from burn_engine import validate
from errors import BudgetExceededError, InvalidInputError, OracleCapError
from graph_core import DirectedTree, UndirectedGraph
from oracles import (baseline_3approx, baseline_guess, cycle_formula, cycle_schedule,
                     exact_burning_number)


# ============================================
# exact_burning_number
# ============================================

def test_exact_single_vertex():
    result = exact_burning_number(UndirectedGraph.from_edges(1, []))
    assert result.b == 1
    assert result.witness.sources == (0,)


def test_exact_path4(make_path):
    result = exact_burning_number(make_path(4))
    assert result.b == 2
    assert validate(make_path(4), result.witness)
    assert result.witness.length == 2


def test_exact_cycle9(make_cycle):
    assert exact_burning_number(make_cycle(9)).b == 3


def test_exact_complete_graph_needs_two():
    k2 = UndirectedGraph.from_edges(2, [(0, 1)])
    assert exact_burning_number(k2).b == 2


def test_exact_directed_star():
    t = DirectedTree.from_arcs(4, [(0, 1), (0, 2), (0, 3)])
    result = exact_burning_number(t, directed=True)
    assert result.b == 2
    assert validate(t, result.witness, directed=True)


def test_exact_directed_roots_must_be_sources():
    t = DirectedTree.from_arcs(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
    assert exact_burning_number(t, directed=True).b == 4


def test_exact_cap(make_path, monkeypatch):
    with pytest.raises(OracleCapError):
        exact_burning_number(make_path(15))
    monkeypatch.setenv('BURNLAB_ORACLE_CAP', '20')
    assert exact_burning_number(make_path(15)).b == 4


def test_exact_budget(make_path):
    with pytest.raises(BudgetExceededError):
        exact_burning_number(make_path(10), budget=1)


# ============================================
# cycle_formula / cycle_schedule
# ============================================

@pytest.mark.parametrize('n, b', [(3, 2), (4, 2), (5, 3), (9, 3), (10, 4), (16, 4), (17, 5)])
def test_cycle_formula(n, b):
    assert cycle_formula(n) == b


def test_cycle_formula_needs_three():
    with pytest.raises(InvalidInputError):
        cycle_formula(2)


@pytest.mark.parametrize('n', [3, 4, 7, 9, 10, 26])
def test_cycle_schedule_is_optimal(make_cycle, n):
    g = make_cycle(n)
    schedule = cycle_schedule(g)
    assert validate(g, schedule)
    assert schedule.length == cycle_formula(n)


def test_cycle_schedule_small_graphs(make_path):
    assert cycle_schedule(UndirectedGraph.from_edges(1, [])).sources == (0,)
    assert cycle_schedule(make_path(2)).length == 2
    assert cycle_schedule(make_path(10)).length == 4


def test_cycle_schedule_rejects_star(make_star):
    with pytest.raises(InvalidInputError):
        cycle_schedule(make_star(3))


# ============================================
# baseline
# ============================================

def test_baseline_guess_path4(make_path):
    g = make_path(4)
    assert baseline_guess(g, 1).tag == 'too_many_centers'
    outcome = baseline_guess(g, 2)
    assert outcome.ok
    assert outcome.centers.groups == (((0, 3), 2),)


def test_baseline_path4(make_path):
    result = baseline_3approx(make_path(4))
    assert result.b_star == 2
    assert result.schedule.sources == (0, 3, 2)


def test_baseline_single_vertex():
    assert baseline_3approx(UndirectedGraph.from_edges(1, [])).length == 1


def test_baseline_rejects_disconnected():
    with pytest.raises(InvalidInputError):
        baseline_3approx(UndirectedGraph.from_edges(3, [(0, 1)]))

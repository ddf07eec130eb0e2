import pytest

from burn_engine import validate
from ditree_burn import (CutTree, approx_arborescence, approx_polytree, b_cutting,
                         centers_multirooted, centers_singlerooted, downward_path,
                         guess_arborescence, lca_length, merge_and_burn, plan_merges,
                         s_certificate)
from errors import InvalidInputError
from gen import GenSpec, generate_instance
from graph_core import DirectedTree, ball
from oracles import exact_burning_number


@pytest.fixture
def two_roots():
    """0 -> 2 <- 1"""
    return DirectedTree.from_arcs(3, [(0, 2), (1, 2)])


@pytest.fixture
def out_star():
    return DirectedTree.from_arcs(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def binary_tree():
    return DirectedTree.from_arcs(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])


# ============================================
# b_cutting
# ============================================

def test_cutting_chain(make_chain):
    t = make_chain(4)
    assert b_cutting(t, 1).surviving == {0, 1, 2}
    assert b_cutting(t, 3).surviving == {0}
    assert b_cutting(t, 0) == CutTree.of(t)


def test_cutting_never_removes_merge_vertex(two_roots):
    assert b_cutting(two_roots, 5).surviving == {0, 1, 2}


def test_cutting_composes(binary_tree):
    for a in range(4):
        for c in range(4):
            assert b_cutting(b_cutting(binary_tree, a), c) == b_cutting(binary_tree, a + c)


def test_cutting_negative_rounds(make_chain):
    with pytest.raises(InvalidInputError):
        b_cutting(make_chain(3), -1)


def test_cut_tree_degrees_after_remove(binary_tree):
    ct = CutTree.of(binary_tree).remove({3, 4})
    assert ct.out_degree[1] == 0
    assert ct.sinks() == [1, 5, 6]


# ============================================
# centers_multirooted / approx_polytree
# ============================================

def test_multirooted_single_vertex():
    outcome = centers_multirooted(DirectedTree.from_arcs(1, []), 1)
    assert outcome.ok
    assert outcome.detail.bs == (0,)


def test_multirooted_star_overflows(out_star):
    outcome = centers_multirooted(out_star, 1)
    assert outcome.tag == 'bs_overflow'
    assert exact_burning_number(out_star, directed=True).b == 2


def test_multirooted_merge_vertex_goes_to_bs_prime(two_roots):
    assert centers_multirooted(two_roots, 1).tag == 'bs_overflow'
    outcome = centers_multirooted(two_roots, 2)
    assert outcome.ok
    assert outcome.detail.bs_prime == (2,)
    assert outcome.detail.bs == (0, 1)


def test_multirooted_rejects_invalid():
    with pytest.raises(InvalidInputError):
        centers_multirooted(DirectedTree.from_arcs(2, [(0, 1), (1, 0)]), 1)


def test_multirooted_arborescence_has_no_bs_prime(binary_tree):
    for b in range(1, 5):
        assert centers_multirooted(binary_tree, b).detail.bs_prime == ()


def test_approx_polytree_two_roots(two_roots):
    result = approx_polytree(two_roots)
    assert result.b_star == 2
    assert result.bound == 6
    assert validate(two_roots, result.schedule, directed=True)
    assert result.length <= 3 * exact_burning_number(two_roots, directed=True).b


def test_approx_polytree_on_arborescence(make_chain):
    t = make_chain(3)
    result = approx_polytree(t)
    assert result.algorithm == 'arb2'
    assert result.length <= 2 * exact_burning_number(t, directed=True).b


# ============================================
# centers_singlerooted
# ============================================

def test_singlerooted_chain(make_chain):
    assert centers_singlerooted(make_chain(4), 2) == [2, 0]


def test_singlerooted_single_vertex():
    assert centers_singlerooted(DirectedTree.from_arcs(1, []), 3) == [0]


def test_singlerooted_short_tree(binary_tree):
    assert centers_singlerooted(binary_tree, 3) == [0]


@pytest.mark.parametrize('seed', range(20))
def test_singlerooted_subtrees_partition_vertices(seed):
    t = generate_instance(GenSpec('arborescence', 5 + 2 * seed, seed))
    for b in range(1, 6):
        # 先に選ばれた中心ほど深い。各中心の部分木は子孫から割り当て済みの頂点を除いたもの
        assigned = set()
        for c in centers_singlerooted(t, b):
            assert c not in assigned
            subtree = ball(t, c, t.n, directed=True) - assigned
            assert subtree <= ball(t, c, b - 1, directed=True)
            assigned |= subtree
        assert assigned == set(range(t.n))


def test_singlerooted_rejects_polytree(two_roots):
    with pytest.raises(InvalidInputError):
        centers_singlerooted(two_roots, 1)


# ============================================
# lca_length / merge_and_burn
# ============================================

def test_lca_length(fork_tree, make_chain):
    assert lca_length(fork_tree, 1, 2) == 1
    assert lca_length(make_chain(5), 1, 4) == 3
    deep = DirectedTree.from_arcs(9, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8)])
    assert lca_length(deep, 3, 8) == 5


def test_merge_pair_into_lca(fork_tree):
    outcome = merge_and_burn(fork_tree, 2, [1, 2])
    assert outcome.ok
    plan = outcome.detail
    assert plan.bs2 == [0]
    assert plan.bs1 == []
    assert plan.pairs == [(1, 2)]
    assert plan.consumed == [4]
    assert outcome.centers.groups[0] == ((0,), 4)


def test_merge_single_center(fork_tree):
    plan = plan_merges(fork_tree, 2, [1])
    assert plan.bs1 == [1]
    assert plan.consumed == [2]


def test_merge_budget_exhausted(make_chain):
    outcome = merge_and_burn(make_chain(10), 1, [9, 5, 1])
    assert outcome.tag == 'budget_exhausted'
    assert outcome.detail.bs1 == [9, 5]


def test_merge_conservation(binary_tree):
    bs = [3, 4, 5, 6]
    plan = plan_merges(binary_tree, 4, bs)
    assert len(plan.bs1) + 2 * len(plan.bs2) == len(bs)
    assert len(set(plan.consumed)) == len(plan.consumed)


def test_guess_arborescence_overflow(out_star):
    assert guess_arborescence(out_star, 1).tag == 'bs_overflow'


# ============================================
# approx_arborescence
# ============================================

def test_approx_arborescence_single_vertex():
    result = approx_arborescence(DirectedTree.from_arcs(1, []))
    assert result.schedule.sources == (0,)
    assert result.b_star == 1


def test_approx_arborescence_chain(make_chain):
    t = make_chain(10)
    result = approx_arborescence(t)
    b = exact_burning_number(t, directed=True).b
    assert validate(t, result.schedule, directed=True)
    assert result.length <= -(-1905 * b // 1000) + 1


def test_approx_arborescence_rejects_polytree(two_roots):
    with pytest.raises(InvalidInputError):
        approx_arborescence(two_roots)


# ============================================
# s_certificate
# ============================================

def test_downward_path_prefers_taller_child():
    t = DirectedTree.from_arcs(5, [(0, 1), (0, 2), (2, 3), (3, 4)])
    assert downward_path(t, 0, 3) == [0, 2, 3]


def test_s_certificate_strips_ends(make_chain):
    cert = s_certificate(make_chain(31), 11, [12])
    assert cert.s_b == 66
    assert cert.s_size == 5
    assert not cert.exceeds


def test_s_certificate_empty():
    cert = s_certificate(DirectedTree.from_arcs(1, []), 1, [])
    assert cert.s_b == 1
    assert cert.s_size == 0

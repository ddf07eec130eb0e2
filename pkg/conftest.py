"""テスト共通フィクスチャ"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from graph_core import DirectedTree, UndirectedGraph, ball  # noqa: E402


def path_graph(n):
    return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves):
    return UndirectedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def chain_tree(n):
    return DirectedTree.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def union_of_balls(g, sources, directed=False):
    L = len(sources)
    covered = set()
    for i, v in enumerate(sources):
        covered |= ball(g, v, L - 1 - i, directed)
    return covered


@pytest.fixture
def make_path():
    return path_graph


@pytest.fixture
def make_cycle():
    return cycle_graph


@pytest.fixture
def make_star():
    return star_graph


@pytest.fixture
def make_chain():
    return chain_tree


@pytest.fixture
def two_triangles():
    """頂点 2 を共有する 2 つの三角形"""
    return UndirectedGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


@pytest.fixture
def fork_tree():
    """r=0 -> u=1, v=2; u -> 3, v -> 4"""
    return DirectedTree.from_arcs(5, [(0, 1), (0, 2), (1, 3), (2, 4)])


@pytest.fixture
def oracle_env(monkeypatch):
    monkeypatch.setenv('BURNLAB_ORACLE_CAP', '14')
    monkeypatch.setenv('BURNLAB_ORACLE_BUDGET', '2000000')

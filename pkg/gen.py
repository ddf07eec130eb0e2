"""シード付きランダムインスタンス生成

乱数は numpy の PCG64 (np.random.default_rng) だけを使うので、同じシードなら同じグラフになる。

- 木: ランダムな Prüfer 列を networkx で木に復号する
- カクタス: 木を作り、根付き木の親方向へ辿る長さ 2 以上のパス（まだ閉路に使われていない辺だけ）
  に弦を 1 本足して閉路にする。各木辺は高々 1 つの閉路にしか入らない。
- 有向根付き木: 木をランダムな根から外向きに向き付ける
- ポリツリー: 木の各辺をランダムに向き付け、根が 2 つ未満なら葉への弧を反転する
"""
import logging
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import networkx as nx
import numpy as np

from errors import GenSpecError
from graph_core import DirectedTree, UndirectedGraph

logger = logging.getLogger(__name__)

GRAPH_CLASSES = ('cactus', 'polytree', 'arborescence')
DEFAULT_CYCLE_FRACTION = 0.08
# 弦で閉じるパスの辺数の範囲 [2, MAX_CHORD_SPAN]
MAX_CHORD_SPAN = 7


@dataclass(frozen=True)
class GenSpec:
    graph_class: str
    n: int
    seed: int = 0
    cycle_fraction: float = DEFAULT_CYCLE_FRACTION
    max_out_degree: Optional[int] = None

    def __post_init__(self):
        if self.graph_class not in GRAPH_CLASSES:
            raise GenSpecError(f'unknown graph class {self.graph_class!r}')
        if self.n < 1:
            raise GenSpecError(f'n must be at least 1, got {self.n}')
        if self.seed < 0:
            raise GenSpecError(f'seed must be non-negative, got {self.seed}')
        if not 0 <= self.cycle_fraction <= 1:
            raise GenSpecError(f'cycle_fraction must be in [0, 1], got {self.cycle_fraction}')
        if self.max_out_degree is not None and self.max_out_degree < 1:
            raise GenSpecError(f'max_out_degree must be at least 1, got {self.max_out_degree}')

    @property
    def name(self) -> str:
        return f'{self.graph_class}_n{self.n}_s{self.seed}'


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.default_rng(spec.seed)


def _random_tree_edges(n: int, rng: np.random.Generator, max_degree: Optional[int] = None) -> list:
    """n 頂点のランダムな木の辺 (親, 子) を返す。max_degree 指定時は子の数を制限する。"""
    if n == 1:
        return []
    if max_degree is not None:
        # 子の数が上限未満の頂点に 1 頂点ずつ接続し、最後にラベルを並べ替える
        children = [0] * n
        open_ = [0]
        edges = []
        for v in range(1, n):
            p = open_[int(rng.integers(len(open_)))]
            edges.append((p, v))
            children[p] += 1
            if children[p] == max_degree:
                open_.remove(p)
            open_.append(v)
        perm = rng.permutation(n)
        return [(int(perm[a]), int(perm[b])) for a, b in edges]
    if n == 2:
        return [(0, 1)]
    prufer = [int(x) for x in rng.integers(0, n, size=n - 2)]
    tree = nx.from_prufer_sequence(prufer)
    root = int(rng.integers(n))
    return [(int(a), int(b)) for a, b in nx.bfs_edges(tree, root, sort_neighbors=sorted)]


def random_cactus(spec: GenSpec) -> UndirectedGraph:
    rng = _rng(spec)
    n = spec.n
    tree_edges = _random_tree_edges(n, rng)
    parent = [None] * n
    for p, c in tree_edges:
        parent[c] = p

    chords = []
    target = int(round(spec.cycle_fraction * (n - 1)))
    used = set()
    attempts = 0
    while len(chords) < target and attempts < 8 * target + 8:
        attempts += 1
        v = int(rng.integers(n))
        span = int(rng.integers(2, MAX_CHORD_SPAN + 1))
        path_edges = []
        top = v
        while len(path_edges) < span and parent[top] is not None and top not in used:
            path_edges.append(top)
            top = parent[top]
        if len(path_edges) < 2:
            continue
        # 子頂点 x で木辺 (parent[x], x) を表す
        used.update(path_edges)
        chords.append((top, v))
    logger.debug('random_cactus n=%d: %d chords', n, len(chords))
    return UndirectedGraph.from_edges(n, tree_edges + chords)


def random_arborescence(spec: GenSpec) -> DirectedTree:
    rng = _rng(spec)
    return DirectedTree.from_arcs(spec.n, _random_tree_edges(spec.n, rng, spec.max_out_degree))


def random_polytree(spec: GenSpec) -> DirectedTree:
    rng = _rng(spec)
    n = spec.n
    edges = _random_tree_edges(n, rng, spec.max_out_degree)
    flips = rng.integers(0, 2, size=len(edges))
    arcs = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
    if n >= 3:
        degree = [0] * n
        for a, b in arcs:
            degree[a] += 1
            degree[b] += 1
        while True:
            heads = {b for _, b in arcs}
            if n - len(heads) >= 2:
                break
            leaf = min(v for v in range(n) if degree[v] == 1 and v in heads)
            i = next(i for i, (_, b) in enumerate(arcs) if b == leaf)
            a, b = arcs[i]
            arcs[i] = (b, a)
    return DirectedTree.from_arcs(n, arcs)


GENERATORS = {
    'cactus': random_cactus,
    'polytree': random_polytree,
    'arborescence': random_arborescence,
}


def generate_instance(spec: GenSpec):
    return GENERATORS[spec.graph_class](spec)


def fixture_path(root, spec: GenSpec) -> Path:
    return Path(root) / spec.graph_class / f'n{spec.n}_s{spec.seed}.graph'

"""カクタスグラフの 2.75-近似

推定値 b ごとに、根 r から最も遠い未マーク頂点 f を取り、f と r を分離する関節点 v_k が
距離窓 [⌈0.25b⌉, ⌈1.75b⌉] にあれば v_k を半径 ⌈1.75b⌉ で燃やし (BS1)、無ければ f を半径
2b-2 で燃やす (BS2)。BS1 は ⌈0.25b⌉ 個、BS2 は ⌈0.75b⌉ 個まで。
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from burn_engine import (ApproxResult, CenterSets, GuessOutcome, burn_centers, ceil_range,
                         first_success)
from errors import InvalidInputError
from graph_core import (BlockCutTree, UndirectedGraph, articulation_points, ball, bfs_distances,
                        is_cactus, require_connected)
from oracles import cycle_schedule

logger = logging.getLogger(__name__)


@dataclass
class CactusGuessState:
    b: int
    b1: int
    b2: int
    root: int
    marked: set = field(default_factory=set)
    bs1: list = field(default_factory=list)
    bs2: list = field(default_factory=list)

    @classmethod
    def start(cls, b: int, root: int) -> 'CactusGuessState':
        return cls(b, ceil_range(b, 0.25), ceil_range(b, 0.75), root)


class CactusIndex:
    """推定値 b に依存しない前処理: 根・根からの距離・ブロック・カット木"""

    def __init__(self, g: UndirectedGraph, root: Optional[int] = None, seed: Optional[int] = None):
        require_connected(g)
        if not is_cactus(g):
            raise InvalidInputError('graph is not a cactus')
        self.g = g
        self.cut_vertices = sorted(articulation_points(g))
        if root is None:
            if not self.cut_vertices:
                raise InvalidInputError('cactus has no articulation point; burn it with cycle_schedule')
            if seed is None:
                root = self.cut_vertices[0]
            else:
                rng = np.random.default_rng(seed)
                root = self.cut_vertices[int(rng.integers(len(self.cut_vertices)))]
        self.root = root
        self.dist = bfs_distances(g, root).dist
        self.block_cut = BlockCutTree(g, root)
        # 根から遠い順（同距離は id 順）。未マークの先頭は farthest_from(g, root, 未マーク) と同じ頂点
        self.order = sorted(range(g.n), key=lambda v: (-self.dist[v], v))


def articulation_on_path(g: UndirectedGraph, f: int, r: int, b: int,
                         index: Optional[CactusIndex] = None) -> Optional[int]:
    """f と r を分離する関節点のうち ⌈0.25b⌉ <= d(f, v) <= ⌈1.75b⌉ を満たし d が最大のもの"""
    if index is None or index.root != r:
        index = CactusIndex(g, root=r)
    lo, hi = ceil_range(b, 0.25), ceil_range(b, 1.75)
    best = None
    for c in index.block_cut.separators(f):
        # 分離点はすべての f-r パス上にあるので d(f, c) = d(r, f) - d(r, c)
        d = index.dist[f] - index.dist[c]
        if d > hi:
            break
        if d >= lo:
            best = c
    return best


def _check_inclusion(g, f, vk, b, radius, marked):
    inner = ball(g, f, max(2 * b - 2, 0)) - marked
    outer = ball(g, vk, radius)
    if not inner <= outer:
        raise AssertionError(
            f'ball inclusion failed at b={b}: f={f}, v_k={vk}, missing {sorted(inner - outer)[:5]}')


def burn_guess_cactus(g: UndirectedGraph, b: int, index: Optional[CactusIndex] = None,
                      check_inclusion: bool = False) -> GuessOutcome:
    """推定値 b で 1 回試行する。成功なら CenterSets、失敗なら BAD-GUESS。

    Args:
        check_inclusion: True なら v_k を選ぶたびに N_{2b-2}[f]（未マーク部分）⊆ N_{⌈1.75b⌉}[v_k] を確認する
    """
    index = index or CactusIndex(g)
    state = CactusGuessState.start(b, index.root)
    big = ceil_range(b, 1.75)
    small = max(2 * b - 2, 0)
    cursor = 0
    while True:
        while cursor < g.n and index.order[cursor] in state.marked:
            cursor += 1
        if cursor == g.n:
            break
        f = index.order[cursor]
        vk = articulation_on_path(g, f, state.root, b, index) if state.b1 >= 1 else None
        if vk is not None:
            if check_inclusion:
                _check_inclusion(g, f, vk, b, big, state.marked)
            state.marked |= ball(g, vk, big)
            state.bs1.append(vk)
            state.b1 -= 1
        elif state.b2 >= 1:
            state.marked |= ball(g, f, small)
            state.bs2.append(f)
            state.b2 -= 1
        else:
            tag = 'both_exhausted' if state.b1 == 0 else 'budget2_exhausted'
            return GuessOutcome.bad(b, tag, detail=state)
    return GuessOutcome.success(b, CenterSets.build([(state.bs1, big), (state.bs2, small)]),
                                detail=state)


def approx_cactus(g: UndirectedGraph, seed: Optional[int] = None,
                  check_inclusion: bool = False) -> ApproxResult:
    require_connected(g)
    if not is_cactus(g):
        raise InvalidInputError('graph is not a cactus')
    if not articulation_points(g):
        # 1 頂点・1 辺・単一閉路は閉形式で最適に燃やせる
        schedule = cycle_schedule(g)
        return ApproxResult(schedule, schedule.length, ceil_range(schedule.length, 2.75), 'cactus275')

    index = CactusIndex(g, seed=seed)
    outcome = first_success(
        g.n, lambda b: burn_guess_cactus(g, b, index, check_inclusion), 'cactus275')
    schedule = burn_centers(g, outcome.centers)
    bound = ceil_range(outcome.b, 2.75)
    if schedule.length > bound:
        logger.warning('cactus275: realized length %d exceeds ⌈2.75·%d⌉=%d',
                       schedule.length, outcome.b, bound)
    logger.info('cactus275: b_star=%d length=%d', outcome.b, schedule.length)
    return ApproxResult(schedule, outcome.b, bound, 'cactus275')

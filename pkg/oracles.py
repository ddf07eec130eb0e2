"""厳密解・閉形式・3-近似ベースライン

exact_burning_number は小さなグラフ専用（頂点数の上限は BURNLAB_ORACLE_CAP）。
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import config
from burn_engine import (ApproxResult, BurningSchedule, CenterSets, GuessOutcome, assemble,
                         burn_centers, first_success)
from errors import BudgetExceededError, InvalidInputError, OracleCapError
from graph_core import UndirectedGraph, ball, bfs_distances, is_connected, require_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactResult:
    b: int
    witness: BurningSchedule
    expanded: int = 0


# ============================================
# 厳密解（反復深化 + 被覆ビットマスク）
# ============================================

def _ball_masks(g, directed):
    n = g.n
    masks = []
    for v in range(n):
        dist = bfs_distances(g, v, directed).dist
        row = [0] * n
        for u, d in enumerate(dist):
            if d is not None:
                for r in range(d, n):
                    row[r] |= 1 << u
        masks.append(row)
    return masks


class _CoverSearch:
    """半径 L-1, L-2, ..., 0 の球（各半径 1 個まで）で全頂点を覆えるかを調べる"""

    def __init__(self, g, directed, budget):
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.masks = _ball_masks(g, directed)
        self.max_cover = [max(bin(self.masks[v][r]).count('1') for v in range(g.n))
                          for r in range(g.n)]
        self.budget = budget
        self.expanded = 0

    def run(self, L):
        self.radii = [L - 1 - j for j in range(L)]
        self.failed = set()
        self.chosen = []
        return self._dfs(0, 0)

    def _dfs(self, covered, used):
        if covered == self.full:
            return True
        key = (covered, used)
        if key in self.failed:
            return False
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExceededError(f'exact search exceeded {self.budget} node expansions')

        uncovered = self.full & ~covered
        capacity = sum(self.max_cover[r] for j, r in enumerate(self.radii) if not used >> j & 1)
        if capacity < bin(uncovered).count('1'):
            self.failed.add(key)
            return False

        # 未被覆で最小 id の頂点 u をどの (位置, 中心) で覆うかで分岐する
        u = (uncovered & -uncovered).bit_length() - 1
        for j, r in enumerate(self.radii):
            if used >> j & 1:
                continue
            options = []
            for v in range(self.n):
                m = self.masks[v][r]
                if m >> u & 1:
                    options.append((m | covered, v))
            # 同じ被覆を与える候補・他に含まれる候補は除く
            options.sort(key=lambda item: -bin(item[0]).count('1'))
            kept = []
            for new, v in options:
                if any(new | k == k for k, _ in kept):
                    continue
                kept.append((new, v))
            for new, v in kept:
                self.chosen.append((j, v))
                if self._dfs(new, used | 1 << j):
                    return True
                self.chosen.pop()
        self.failed.add(key)
        return False


def exact_burning_number(g, directed: bool = False, budget: Optional[int] = None,
                         cap: Optional[int] = None) -> ExactResult:
    """厳密な燃焼数と最適系列を 1 つ返す

    Args:
        g: グラフ（directed=True なら出方向の球で燃やす）
        budget: 展開ノード数の上限（省略時 BURNLAB_ORACLE_BUDGET）
        cap: 頂点数の上限（省略時 BURNLAB_ORACLE_CAP）
    """
    cap = config.oracle_cap() if cap is None else cap
    budget = config.oracle_budget() if budget is None else budget
    if g.n == 0:
        raise InvalidInputError('exact oracle needs a non-empty graph')
    if g.n > cap:
        raise OracleCapError(f'graph has {g.n} vertices, exact oracle cap is {cap}')

    search = _CoverSearch(g, directed, budget)
    for L in range(1, g.n + 1):
        if not search.run(L):
            continue
        # 位置 j の中心の半径は L-1-j
        groups = [((v,), L - 1 - j) for j, v in search.chosen]
        witness = assemble(g, CenterSets.build(groups), L, directed)
        logger.debug('exact burning number %d after %d expansions', L, search.expanded)
        return ExactResult(L, witness, search.expanded)
    # n 個の半径 0 以上の球で必ず覆えるのでここには来ない
    raise InvalidInputError('graph cannot be burned (is it connected?)')


# ============================================
# 閉路・パス
# ============================================

def cycle_formula(n: int) -> int:
    """閉路 C_n の燃焼数 ⌈√n⌉"""
    if n < 3:
        raise InvalidInputError(f'a cycle needs at least 3 vertices, got {n}')
    return math.isqrt(n - 1) + 1


def _walk_order(g: UndirectedGraph) -> list:
    ends = [v for v in range(g.n) if len(g.neighbors(v)) == 1]
    start = ends[0] if ends else 0
    order, prev, cur = [start], None, start
    while len(order) < g.n:
        nxt = next(w for w in g.neighbors(cur) if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def cycle_schedule(g: UndirectedGraph) -> BurningSchedule:
    """閉路・パス（K1, K2 を含む）の最適燃焼系列

    頂点を一周（または端から端へ）並べ、長さ 2r+1 の区間を r = k-1, ..., 0 の順に切り出して
    各区間の中央付近を中心にする。
    """
    if not is_connected(g) or any(len(g.neighbors(v)) > 2 for v in range(g.n)):
        raise InvalidInputError('cycle_schedule needs a connected cycle or path')
    order = _walk_order(g)
    n = g.n
    k = math.isqrt(n - 1) + 1
    groups, start = [], 0
    for r in range(k - 1, -1, -1):
        if start >= n:
            break
        groups.append(((order[min(start + r, n - 1)],), r))
        start += 2 * r + 1
    return assemble(g, CenterSets.build(groups), k)


# ============================================
# 3-近似ベースライン
# ============================================

def baseline_guess(g: UndirectedGraph, b: int) -> GuessOutcome:
    """未マークの最小 id 頂点を中心に (2b-2)-球をマークしていく。中心が b 個を超えたら BAD-GUESS。"""
    radius = max(2 * b - 2, 0)
    marked = [False] * g.n
    centers = []
    for v in range(g.n):
        if marked[v]:
            continue
        centers.append(v)
        if len(centers) > b:
            return GuessOutcome.bad(b, 'too_many_centers', detail=centers)
        for u in ball(g, v, radius):
            marked[u] = True
    return GuessOutcome.success(b, CenterSets.build([(centers, radius)]))


def baseline_3approx(g: UndirectedGraph) -> ApproxResult:
    require_connected(g)
    outcome = first_success(g.n, lambda b: baseline_guess(g, b), 'baseline3')
    schedule = burn_centers(g, outcome.centers)
    logger.info('baseline3: b_star=%d length=%d', outcome.b, schedule.length)
    return ApproxResult(schedule, outcome.b, 3 * outcome.b, 'baseline3')

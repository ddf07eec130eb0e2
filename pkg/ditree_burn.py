"""有向木（ポリツリー・有向根付き木）の近似アルゴリズム

- b_cutting: 出次数 0 かつ入次数 1 の頂点を 1 ラウンドずつ同時に取り除く
- centers_multirooted / approx_polytree: ポリツリーの 3-近似（有向根付き木では 2-近似）
- centers_singlerooted / merge_and_burn / approx_arborescence: 有向根付き木の 1.905-近似
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from burn_engine import (ApproxResult, CenterSets, GuessOutcome, RangeBudget, burn_centers,
                         ceil_range, first_success)
from errors import InvalidInputError
from graph_core import AncestorIndex, DirectedTree, DitreeClass, classify_ditree

logger = logging.getLogger(__name__)


# ============================================
# カット木
# ============================================

@dataclass(frozen=True)
class CutTree:
    """DirectedTree の頂点部分集合と、その誘導部分グラフでの入次数・出次数"""
    tree: DirectedTree = field(compare=False, repr=False)
    surviving: frozenset
    in_degree: dict = field(compare=False, repr=False)
    out_degree: dict = field(compare=False, repr=False)

    @classmethod
    def of(cls, t: DirectedTree, vertices: Optional[Iterable[int]] = None) -> 'CutTree':
        alive = frozenset(range(t.n)) if vertices is None else frozenset(vertices)
        in_deg = {v: sum(1 for p in t.in_adjacency[v] if p in alive) for v in alive}
        out_deg = {v: sum(1 for c in t.out_adjacency[v] if c in alive) for v in alive}
        return cls(t, alive, in_deg, out_deg)

    def __len__(self):
        return len(self.surviving)

    def __contains__(self, v):
        return v in self.surviving

    def vertices(self) -> list:
        return sorted(self.surviving)

    def sinks(self) -> list:
        return sorted(v for v in self.surviving if self.out_degree[v] == 0)

    def descendants(self, v: int, radius: Optional[int] = None) -> set:
        """v から出方向に radius 以内で到達できる残存頂点"""
        seen = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            if radius is not None and seen[x] >= radius:
                continue
            for c in self.tree.out_adjacency[x]:
                if c in self.surviving and c not in seen:
                    seen[c] = seen[x] + 1
                    queue.append(c)
        return set(seen)

    def remove(self, vertices: Iterable[int]) -> 'CutTree':
        gone = set(vertices) & self.surviving
        alive = self.surviving - gone
        in_deg = {v: d for v, d in self.in_degree.items() if v in alive}
        out_deg = {v: d for v, d in self.out_degree.items() if v in alive}
        for v in gone:
            for c in self.tree.out_adjacency[v]:
                if c in alive:
                    in_deg[c] -= 1
            for p in self.tree.in_adjacency[v]:
                if p in alive:
                    out_deg[p] -= 1
        return CutTree(self.tree, alive, in_deg, out_deg)


def b_cutting(t: Union[DirectedTree, CutTree], k: int) -> CutTree:
    """k ラウンドの b-cutting。各ラウンドの削除対象はラウンド開始時点の次数で決める。"""
    if k < 0:
        raise InvalidInputError(f'number of cutting rounds must be non-negative, got {k}')
    current = t if isinstance(t, CutTree) else CutTree.of(t)
    tree = current.tree
    alive = set(current.surviving)
    in_deg = dict(current.in_degree)
    out_deg = dict(current.out_degree)
    candidates = [v for v in alive if out_deg[v] == 0 and in_deg[v] == 1]
    for _ in range(k):
        if not candidates:
            break
        parents = set()
        for v in candidates:
            alive.discard(v)
            del in_deg[v], out_deg[v]
        for v in candidates:
            for p in tree.in_adjacency[v]:
                if p in alive:
                    out_deg[p] -= 1
                    parents.add(p)
        # 次のラウンドで新たに条件を満たしうるのは削除された頂点の親だけ
        candidates = [p for p in parents if out_deg[p] == 0 and in_deg[p] == 1]
    return CutTree(tree, frozenset(alive), in_deg, out_deg)


# ============================================
# ポリツリー: 3-近似（有向根付き木では 2-近似）
# ============================================

def _require(t: DirectedTree, *allowed: DitreeClass) -> DitreeClass:
    kind = classify_ditree(t)
    if kind not in allowed:
        names = ' or '.join(a.value for a in allowed)
        raise InvalidInputError(f'directed tree must be {names}, got {kind.value}')
    return kind


@dataclass(frozen=True)
class DitreeCenters:
    bs: tuple
    bs_prime: tuple


def centers_multirooted(t: DirectedTree, b: int) -> GuessOutcome:
    _require(t, DitreeClass.POLYTREE, DitreeClass.ARBORESCENCE)
    work = CutTree.of(t)
    bs, bs_prime = [], []
    rounds = 0
    # 各ラウンドで少なくとも 1 頂点は消えるので |V| ラウンドで必ず空になる
    while len(work) and rounds < t.n:
        rounds += 1
        cut = b_cutting(work, b - 1)
        removed = set()
        for v in cut.sinks():
            (bs if cut.in_degree[v] <= 1 else bs_prime).append(v)
            removed |= work.descendants(v, b)
        work = work.remove(removed)
        if len(bs) > b or len(bs_prime) > b:
            break
    centers = DitreeCenters(tuple(bs), tuple(bs_prime))
    if len(bs) > b:
        return GuessOutcome.bad(b, 'bs_overflow', detail=centers)
    if len(bs_prime) > b:
        return GuessOutcome.bad(b, 'bs_prime_overflow', detail=centers)
    return GuessOutcome.success(b, CenterSets.build([(bs_prime, b), (bs, b)]), detail=centers)


def approx_polytree(t: DirectedTree) -> ApproxResult:
    """ポリツリーは 3b*、有向根付き木は 2b* が長さの上限"""
    kind = _require(t, DitreeClass.POLYTREE, DitreeClass.ARBORESCENCE)
    outcome = first_success(t.n, lambda b: centers_multirooted(t, b), 'poly3')
    schedule = burn_centers(t, outcome.centers, directed=True)
    factor = 2 if kind is DitreeClass.ARBORESCENCE else 3
    name = 'arb2' if kind is DitreeClass.ARBORESCENCE else 'poly3'
    logger.info('%s: b_star=%d length=%d', name, outcome.b, schedule.length)
    return ApproxResult(schedule, outcome.b, factor * outcome.b, name)


# ============================================
# 有向根付き木: 1.905-近似
# ============================================

def centers_singlerooted(t: DirectedTree, b: int, stop_after: Optional[int] = None) -> list:
    """作業木を高さ b-1 以下の互いに素な部分木に分割し、その根を順に返す

    Args:
        stop_after: 中心がこの個数を超えた時点で打ち切る（BAD-GUESS が確定した後の計算を省く）
    """
    _require(t, DitreeClass.ARBORESCENCE)
    work = CutTree.of(t)
    bs = []
    while len(work):
        cut = b_cutting(work, b - 1)
        removed = set()
        for v in cut.sinks():
            bs.append(v)
            removed |= work.descendants(v)
        work = work.remove(removed)
        if stop_after is not None and len(bs) > stop_after:
            break
    return bs


def lca_length(t: DirectedTree, u: int, v: int, index: Optional[AncestorIndex] = None) -> int:
    """LCA から u, v の両方へ届く半径 max(d(lca, u), d(lca, v))"""
    index = index or AncestorIndex(t)
    w = index.lca(u, v)
    return max(index.depth[u], index.depth[v]) - index.depth[w]


@dataclass
class MergePlan:
    b: int
    bs1: list
    bs2: list
    pairs: list
    budget: RangeBudget
    failed: bool = False

    @property
    def consumed(self) -> list:
        return self.budget.consumed

    def center_sets(self) -> CenterSets:
        return CenterSets.build([(self.bs2, ceil_range(self.b, 1.81)), (self.bs1, self.b)])


def plan_merges(t: DirectedTree, b: int, bs: list,
                index: Optional[AncestorIndex] = None) -> MergePlan:
    index = index or AncestorIndex(t)
    reach = ceil_range(b, 0.81)
    merge_range = ceil_range(b, 1.81)
    plan = MergePlan(b, [], [], [], RangeBudget.upto(ceil_range(b, 1.905)))
    pending = list(bs)
    while pending:
        v = pending.pop(0)
        partner = None
        if plan.budget.has_at_least(merge_range):
            partner = next((u for u in pending if u != v and lca_length(t, v, u, index) <= reach), None)
        if partner is not None:
            pending.remove(partner)
            plan.budget.take_at_least(merge_range)
            plan.bs2.append(index.lca(v, partner))
            plan.pairs.append((v, partner))
            continue
        if plan.budget.take_at_least(b) is None:
            plan.failed = True
            return plan
        plan.bs1.append(v)
    return plan


def merge_and_burn(t: DirectedTree, b: int, bs: list,
                   index: Optional[AncestorIndex] = None) -> GuessOutcome:
    _require(t, DitreeClass.ARBORESCENCE)
    plan = plan_merges(t, b, bs, index)
    if plan.failed:
        return GuessOutcome.bad(b, 'budget_exhausted', detail=plan)
    logger.debug('merge_and_burn b=%d: %d merges, %d single centers', b, len(plan.bs2), len(plan.bs1))
    return GuessOutcome.success(b, plan.center_sets(), detail=plan)


def guess_arborescence(t: DirectedTree, b: int, index: Optional[AncestorIndex] = None) -> GuessOutcome:
    bs = centers_singlerooted(t, b, stop_after=b)
    if len(bs) > b:
        return GuessOutcome.bad(b, 'bs_overflow', detail=bs)
    return merge_and_burn(t, b, bs, index)


def approx_arborescence(t: DirectedTree) -> ApproxResult:
    _require(t, DitreeClass.ARBORESCENCE)
    index = AncestorIndex(t)
    outcome = first_success(t.n, lambda b: guess_arborescence(t, b, index), 'arb1905')
    schedule = burn_centers(t, outcome.centers, directed=True)
    logger.info('arb1905: b_star=%d length=%d', outcome.b, schedule.length)
    return ApproxResult(schedule, outcome.b, ceil_range(outcome.b, 1.905) + 1, 'arb1905')


# ============================================
# 診断: 中央部分パスの和集合 S とその上限 S_b
# ============================================

@dataclass(frozen=True)
class SCertificate:
    b: int
    s_b: int
    s_size: int

    @property
    def exceeds(self) -> bool:
        return self.s_size > self.s_b


def _heights(t: DirectedTree) -> list:
    order = []
    queue = deque(t.roots)
    while queue:
        v = queue.popleft()
        order.append(v)
        queue.extend(t.out_adjacency[v])
    height = [1] * t.n
    for v in reversed(order):
        for c in t.out_adjacency[v]:
            height[v] = max(height[v], height[c] + 1)
    return height


def downward_path(t: DirectedTree, v: int, length: int, height: Optional[list] = None) -> list:
    """v から最も高い子（同じ高さなら最小 id）を辿る最大 length 頂点のパス"""
    height = height or _heights(t)
    path = [v]
    while len(path) < length and t.out_adjacency[path[-1]]:
        x = path[-1]
        path.append(min(t.out_adjacency[x], key=lambda c: (-height[c], c)))
    return path


def s_certificate(t: DirectedTree, b: int, unmerged_centers: Iterable[int]) -> SCertificate:
    strip = ceil_range(b, 0.19)
    height = _heights(t)
    s = set()
    for c in unmerged_centers:
        path = downward_path(t, c, b, height)
        s.update(path[strip:len(path) - strip])
    return SCertificate(b, b * (b + 1) // 2, len(s))

"""燃焼過程のシミュレーション・検証・スケジュール組み立て

ラウンド t では (1) 前ラウンドまでに着火した頂点が隣接頂点へ延焼し、(2) 新しい発火点を 1 つ選ぶ。
発火点は「それより前のラウンドで燃えていない」頂点でなければならない（同じラウンドの延焼で
燃えた頂点は選んでよい）。長さ L の系列では位置 i の発火点の燃焼半径は L-1-i になる。
"""
import bisect
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from errors import BurnlabError, InfeasibleScheduleError, InvalidInputError, ScheduleError
from graph_core import Graph, neighbor_fn

logger = logging.getLogger(__name__)


def ceil_range(b: int, k) -> int:
    """燃焼範囲 b*k の切り上げ ⌈b·k⌉（浮動小数点を使わずに計算する）

    Args:
        b: 推定燃焼数 (>= 1)
        k: 係数。float は 10 進表記のまま有理数に変換する (0.19 -> 19/100)
    """
    if b < 1:
        raise InvalidInputError(f'b must be positive, got {b}')
    k = Fraction(str(k)) if isinstance(k, float) else Fraction(k)
    if k < 0:
        raise InvalidInputError(f'coefficient must be non-negative, got {k}')
    return math.ceil(b * k)


# ============================================
# データ型
# ============================================

@dataclass(frozen=True)
class BurningSchedule:
    sources: tuple

    def __post_init__(self):
        object.__setattr__(self, 'sources', tuple(int(v) for v in self.sources))

    def __len__(self):
        return len(self.sources)

    def __iter__(self):
        return iter(self.sources)

    @property
    def length(self) -> int:
        return len(self.sources)

    def radius_at(self, i: int) -> int:
        return len(self.sources) - 1 - i

    def to_line(self) -> str:
        return ' '.join(str(v) for v in self.sources)

    @classmethod
    def from_line(cls, text: str) -> 'BurningSchedule':
        try:
            return cls(tuple(int(tok) for tok in text.split()))
        except ValueError:
            raise ScheduleError(f'schedule line must contain integer vertex ids: {text.strip()!r}') from None


@dataclass(frozen=True)
class CenterSets:
    """中心集合のグループ列。各グループは (頂点のタプル, 必要な燃焼半径)。"""
    groups: tuple

    @classmethod
    def build(cls, groups: Iterable) -> 'CenterSets':
        """グループを正規化する。

        同じ頂点が複数のグループに現れた場合は半径の大きいグループにだけ残す
        （大きい球が小さい球を含むため被覆は変わらない）。
        """
        groups = [(tuple(vs), int(r)) for vs, r in groups]
        for _, r in groups:
            if r < 0:
                raise InvalidInputError(f'required radius must be non-negative, got {r}')
        order = sorted(range(len(groups)), key=lambda i: -groups[i][1])
        seen = set()
        kept = [None] * len(groups)
        for i in order:
            vs, r = groups[i]
            unique = []
            for v in vs:
                if v not in seen:
                    seen.add(v)
                    unique.append(v)
            kept[i] = (tuple(unique), r)
        return cls(tuple(kept))

    @property
    def size(self) -> int:
        return sum(len(vs) for vs, _ in self.groups)

    def ordered(self) -> list:
        """(頂点, 半径) を半径の降順に並べる（同半径ではグループ順・グループ内順を保つ）"""
        flat = [(v, r) for vs, r in self.groups for v in vs]
        return sorted(flat, key=lambda item: -item[1])

    def vertices(self) -> set:
        return {v for vs, _ in self.groups for v in vs}


def required_length(centers: CenterSets) -> int:
    """半径の降順に並べたとき全中心が必要半径を得られる最小の系列長"""
    need = [j + 1 + r for j, (_, r) in enumerate(centers.ordered())]
    return max(need, default=1)


class RangeBudget:
    """使用可能な燃焼範囲の多重集合。初期値は {0, 1, ..., max_range}。"""

    def __init__(self, ranges: Iterable[int]):
        self.available = sorted(ranges)
        self.consumed = []

    @classmethod
    def upto(cls, max_range: int) -> 'RangeBudget':
        return cls(range(max_range + 1))

    def has_at_least(self, threshold: int) -> bool:
        return bool(self.available) and self.available[-1] >= threshold

    def take_at_least(self, threshold: int) -> Optional[int]:
        """threshold 以上で最小の範囲を取り出す。無ければ None。"""
        i = bisect.bisect_left(self.available, threshold)
        if i == len(self.available):
            return None
        value = self.available.pop(i)
        self.consumed.append(value)
        return value

    def __len__(self):
        return len(self.available)


@dataclass(frozen=True)
class GuessOutcome:
    """推定値 b に対する判定結果。centers があれば成功、tag があれば BAD-GUESS。"""
    b: int
    centers: Optional[CenterSets] = None
    tag: Optional[str] = None
    detail: object = field(default=None, compare=False)

    @classmethod
    def success(cls, b, centers, detail=None):
        return cls(b, centers=centers, detail=detail)

    @classmethod
    def bad(cls, b, tag, detail=None):
        return cls(b, tag=tag, detail=detail)

    @property
    def ok(self) -> bool:
        return self.centers is not None


@dataclass(frozen=True)
class ApproxResult:
    schedule: BurningSchedule
    b_star: int
    bound: int
    algorithm: str

    @property
    def length(self) -> int:
        return self.schedule.length


@dataclass(frozen=True)
class SimulationResult:
    burned: frozenset
    rounds_to_cover: Optional[int]


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    rule: Optional[str] = None
    reason: Optional[str] = None
    rounds_to_cover: Optional[int] = None

    def __bool__(self):
        return self.accepted


# ============================================
# 燃焼過程
# ============================================

class BurnProcess:
    """ラウンドごとの延焼状態"""

    def __init__(self, g: Graph, directed: bool = False):
        self.g = g
        self._nbrs = neighbor_fn(g, directed)
        self.burned_at = [None] * g.n
        self.round = 0
        self.burned_count = 0
        self._frontier = []
        self._cursor = 0

    def spread(self) -> list:
        """次のラウンドを開始して延焼させ、このラウンドで新たに燃えた頂点を返す"""
        self.round += 1
        newly = []
        for v in self._frontier:
            for w in self._nbrs(v):
                if self.burned_at[w] is None:
                    self.burned_at[w] = self.round
                    newly.append(w)
        self.burned_count += len(newly)
        self._frontier = newly
        return newly

    def can_ignite(self, v: int) -> bool:
        t = self.burned_at[v]
        return t is None or t == self.round

    def ignite(self, v: int):
        t = self.burned_at[v]
        if t is None:
            self.burned_at[v] = self.round
            self.burned_count += 1
            self._frontier.append(v)
        elif t != self.round:
            raise ScheduleError(
                f'source {v} selected in round {self.round} was already burned in round {t}')

    @property
    def all_burned(self) -> bool:
        return self.burned_count == self.g.n

    def smallest_unburned(self) -> Optional[int]:
        # 燃えた頂点が元に戻ることはないのでカーソルは単調に進む
        while self._cursor < self.g.n and self.burned_at[self._cursor] is not None:
            self._cursor += 1
        return self._cursor if self._cursor < self.g.n else None

    def burned(self) -> frozenset:
        return frozenset(v for v, t in enumerate(self.burned_at) if t is not None)


def _check_sources(g: Graph, sources: Sequence[int]) -> Optional[Verdict]:
    seen = set()
    for v in sources:
        if not 0 <= v < g.n:
            return Verdict(False, 'out_of_range', f'vertex id {v} out of range for n={g.n}')
        if v in seen:
            return Verdict(False, 'duplicate', f'source {v} appears more than once')
        seen.add(v)
    return None


def simulate(g: Graph, s: BurningSchedule, directed: bool = False) -> SimulationResult:
    """系列 s を実行し、L ラウンド後の燃焼集合と全焼ラウンドを返す"""
    problem = _check_sources(g, s.sources)
    if problem is not None:
        raise ScheduleError(problem.reason)
    proc = BurnProcess(g, directed)
    rounds_to_cover = None
    for v in s.sources:
        proc.spread()
        proc.ignite(v)
        if rounds_to_cover is None and proc.all_burned:
            rounds_to_cover = proc.round
    return SimulationResult(proc.burned(), rounds_to_cover)


def validate(g: Graph, s: BurningSchedule, directed: bool = False) -> Verdict:
    if g.n == 0:
        return Verdict(False, 'empty_graph', 'graph has no vertices to burn')
    problem = _check_sources(g, s.sources)
    if problem is not None:
        return problem
    try:
        result = simulate(g, s, directed)
    except ScheduleError as e:
        return Verdict(False, 'already_burned', str(e))
    if result.rounds_to_cover is None:
        missing = min(set(range(g.n)) - result.burned)
        return Verdict(False, 'uncovered', f'vertex {missing} unburned after {len(s)} rounds')
    return Verdict(True, rounds_to_cover=result.rounds_to_cover)


def assemble(g: Graph, centers: CenterSets, L: int, directed: bool = False) -> BurningSchedule:
    """中心集合から長さ L 以下の燃焼系列を組み立てる

    中心は半径の降順に位置 0, 1, ... へ置く。既に燃えている中心の位置と中心の後ろの位置は
    最小 id の未燃焼頂点で埋め、全頂点が燃えた時点で打ち切る。
    """
    if g.n == 0:
        raise InvalidInputError('cannot assemble a schedule for a graph with no vertices')
    flat = centers.ordered()
    if len(flat) > L:
        raise InfeasibleScheduleError(f'{len(flat)} centers do not fit into {L} positions')
    for j, (v, r) in enumerate(flat):
        if not 0 <= v < g.n:
            raise InvalidInputError(f'center {v} out of range for n={g.n}')
        if r > L - 1 - j:
            raise InfeasibleScheduleError(
                f'center {v} needs radius {r} but position {j} of {L} only gives {L - 1 - j}')

    proc = BurnProcess(g, directed)
    sources = []
    for pos in range(L):
        newly = proc.spread()
        choice = None
        if pos < len(flat):
            v = flat[pos][0]
            if proc.can_ignite(v):
                choice = v
            else:
                logger.debug('center %d already burned at position %d, using a filler', v, pos)
        if choice is None:
            choice = proc.smallest_unburned()
            if choice is None:
                choice = min(newly)
        proc.ignite(choice)
        sources.append(choice)
        if proc.all_burned:
            break
    if not proc.all_burned:
        raise InfeasibleScheduleError(f'centers leave vertices unburned after {L} rounds')
    return BurningSchedule(tuple(sources))


# ============================================
# ドライバ共通処理
# ============================================

def burn_centers(g: Graph, centers: CenterSets, directed: bool = False) -> BurningSchedule:
    """required_length で組み立てて検証済みの系列を返す"""
    schedule = assemble(g, centers, required_length(centers), directed)
    verdict = validate(g, schedule, directed)
    if not verdict:
        raise ScheduleError(f'assembled schedule rejected: {verdict.reason}')
    return schedule


def first_success(n: int, guess: Callable[[int], GuessOutcome], label: str) -> GuessOutcome:
    """b = 1, 2, ... の順に guess を試し、最初に成功した結果を返す"""
    for b in range(1, max(n, 1) + 1):
        outcome = guess(b)
        if outcome.ok:
            logger.debug('%s: guess b=%d succeeded', label, b)
            return outcome
        logger.debug('%s: guess b=%d -> BAD-GUESS (%s)', label, b, outcome.tag)
    raise BurnlabError(f'{label}: no guess up to b={n} succeeded')

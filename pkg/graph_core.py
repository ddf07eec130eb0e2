"""グラフの表現・探索・構造クエリ

無向グラフ (UndirectedGraph) と有向木 (DirectedTree) を不変オブジェクトとして持ち、
BFS 距離・関節点・LCA・グラフクラス判定など、各アルゴリズムが使う問い合わせを提供する。
"""
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, ClassVar, Iterable, Optional, Union

import networkx as nx

from errors import GraphFormatError, InvalidInputError, NoEligibleVertexError

logger = logging.getLogger(__name__)

# 到達不能を表す番兵（大きな数は使わない）
UNREACHABLE = None


def _check_pair(n, a, b, kind):
    if not (0 <= a < n and 0 <= b < n):
        raise GraphFormatError(f'{kind} ({a}, {b}) out of range for n={n}')
    if a == b:
        raise GraphFormatError(f'self-loop at vertex {a}')


# ============================================
# グラフ表現
# ============================================

@dataclass(frozen=True)
class UndirectedGraph:
    """無向グラフ（自己ループ・多重辺なし）

    adjacency は頂点ごとのソート済み隣接リスト、edge_list は入力順の辺。
    """
    n: int
    adjacency: tuple
    edge_list: tuple

    directed: ClassVar[bool] = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> 'UndirectedGraph':
        if n < 0:
            raise GraphFormatError(f'vertex count must be non-negative, got {n}')
        adj = [set() for _ in range(n)]
        edge_list = []
        for a, b in edges:
            a, b = int(a), int(b)
            _check_pair(n, a, b, 'edge')
            if b in adj[a]:
                raise GraphFormatError(f'parallel edge ({a}, {b})')
            adj[a].add(b)
            adj[b].add(a)
            edge_list.append((a, b))
        return cls(n, tuple(tuple(sorted(s)) for s in adj), tuple(edge_list))

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edge_list)
        return g


@dataclass(frozen=True)
class DirectedTree:
    """有向グラフ（有向木を想定）。木であるかどうかは classify_ditree で判定する。"""
    n: int
    out_adjacency: tuple
    in_adjacency: tuple
    arc_list: tuple

    directed: ClassVar[bool] = True

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable) -> 'DirectedTree':
        if n < 0:
            raise GraphFormatError(f'vertex count must be non-negative, got {n}')
        out_adj = [set() for _ in range(n)]
        in_adj = [set() for _ in range(n)]
        arc_list = []
        for a, b in arcs:
            a, b = int(a), int(b)
            _check_pair(n, a, b, 'arc')
            if b in out_adj[a]:
                raise GraphFormatError(f'parallel arc ({a}, {b})')
            out_adj[a].add(b)
            in_adj[b].add(a)
            arc_list.append((a, b))
        return cls(
            n,
            tuple(tuple(sorted(s)) for s in out_adj),
            tuple(tuple(sorted(s)) for s in in_adj),
            tuple(arc_list),
        )

    @property
    def edge_count(self) -> int:
        return len(self.arc_list)

    @property
    def roots(self) -> tuple:
        return tuple(v for v in range(self.n) if not self.in_adjacency[v])

    def neighbors(self, v: int) -> tuple:
        return self.out_adjacency[v]

    def undirected_neighbors(self, v: int) -> tuple:
        return self.out_adjacency[v] + self.in_adjacency[v]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arc_list)
        return g


Graph = Union[UndirectedGraph, DirectedTree]


def neighbor_fn(g: Graph, directed: bool) -> Callable[[int], tuple]:
    """BFS で使う隣接関数。有向木で directed=False のときは下の無向グラフを辿る。"""
    if isinstance(g, DirectedTree):
        return g.out_adjacency.__getitem__ if directed else g.undirected_neighbors
    return g.adjacency.__getitem__


# ============================================
# 距離・BFS
# ============================================

@dataclass(frozen=True)
class DistanceMap:
    source: int
    dist: tuple

    def __getitem__(self, v: int) -> Optional[int]:
        return self.dist[v]

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not UNREACHABLE

    def within(self, v: int, radius: int) -> bool:
        d = self.dist[v]
        return d is not UNREACHABLE and d <= radius

    def as_dict(self) -> dict:
        return dict(enumerate(self.dist))


def _check_vertex(g: Graph, v: int):
    if not 0 <= v < g.n:
        raise InvalidInputError(f'vertex {v} out of range for n={g.n}')


def _bfs(g: Graph, source: int, directed: bool, max_radius: Optional[int] = None) -> list:
    nbrs = neighbor_fn(g, directed)
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if max_radius is not None and d >= max_radius:
            continue
        for w in nbrs(v):
            if dist[w] is UNREACHABLE:
                dist[w] = d + 1
                queue.append(w)
    return dist


def bfs_distances(g: Graph, source: int, directed: bool = False) -> DistanceMap:
    """source からのホップ距離。directed=True なら弧の向きに従う。"""
    _check_vertex(g, source)
    return DistanceMap(source, tuple(_bfs(g, source, directed)))


def ball(g: Graph, center: int, radius: int, directed: bool = False) -> set:
    """N_radius[center]（directed=True なら出方向の球）"""
    _check_vertex(g, center)
    if radius < 0:
        return set()
    dist = _bfs(g, center, directed, max_radius=radius)
    return {v for v, d in enumerate(dist) if d is not UNREACHABLE}


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return all(d is not UNREACHABLE for d in _bfs(g, 0, directed=False))


def require_connected(g: Graph):
    if not is_connected(g):
        raise InvalidInputError('graph must be non-empty and connected')


def farthest_from(g: Graph, source: int, eligible: Callable[[int], bool],
                  directed: bool = False) -> int:
    """eligible を満たす頂点のうち source から最も遠いもの（同距離なら最小 id）"""
    dist = bfs_distances(g, source, directed).dist
    best, best_d = None, -1
    for v in range(g.n):
        d = dist[v]
        if d is UNREACHABLE or not eligible(v):
            continue
        if d > best_d:
            best, best_d = v, d
    if best is None:
        raise NoEligibleVertexError(f'no eligible vertex reachable from {source}')
    return best


# ============================================
# 関節点・カクタス判定
# ============================================

def articulation_points(g: UndirectedGraph) -> frozenset:
    return frozenset(nx.articulation_points(g.to_networkx()))


def is_cactus(g: UndirectedGraph) -> bool:
    """各二重連結成分が 1 本の辺か 1 つの閉路であれば True"""
    if not is_connected(g):
        return False
    for comp_edges in nx.biconnected_component_edges(g.to_networkx()):
        if len(comp_edges) == 1:
            continue
        vertices = {v for e in comp_edges for v in e}
        if len(comp_edges) != len(vertices):
            return False
    return True


class BlockCutTree:
    """root を根とするブロック・カット木

    各頂点は、関節点なら自分自身のノード、それ以外なら属する唯一のブロックのノードに対応する。
    separators(f) は f と root を分離する関節点を f 側から順に返す。
    """

    def __init__(self, g: UndirectedGraph, root: int):
        _check_vertex(g, root)
        nxg = g.to_networkx()
        self.root = root
        self.cut_vertices = frozenset(nx.articulation_points(nxg))
        blocks = [sorted(c) for c in nx.biconnected_components(nxg)]

        # ノード: ('c', v) は関節点, ('b', i) はブロック
        self._home = {}
        adjacency = {}
        for i, block in enumerate(blocks):
            node = ('b', i)
            adjacency.setdefault(node, [])
            for v in block:
                if v in self.cut_vertices:
                    cnode = ('c', v)
                    adjacency[node].append(cnode)
                    adjacency.setdefault(cnode, []).append(node)
                else:
                    self._home[v] = node
        for v in self.cut_vertices:
            self._home[v] = ('c', v)
        if g.n == 1:
            self._home[0] = ('b', -1)
            adjacency[('b', -1)] = []

        root_node = self._home[root]
        self._parent = {root_node: None}
        queue = deque([root_node])
        while queue:
            node = queue.popleft()
            for nxt in adjacency.get(node, ()):
                if nxt not in self._parent:
                    self._parent[nxt] = node
                    queue.append(nxt)

    def separators(self, f: int) -> list:
        out = []
        node = self._parent.get(self._home[f])
        while node is not None:
            if node[0] == 'c':
                out.append(node[1])
            node = self._parent[node]
        return out


# ============================================
# 有向木: LCA・クラス判定
# ============================================

class DitreeClass(str, Enum):
    POLYTREE = 'polytree'
    ARBORESCENCE = 'arborescence'
    INVALID = 'invalid'


def classify_ditree(t: DirectedTree) -> DitreeClass:
    if t.n == 0 or t.edge_count != t.n - 1 or not is_connected(t):
        return DitreeClass.INVALID
    if len(t.roots) == 1:
        return DitreeClass.ARBORESCENCE
    return DitreeClass.POLYTREE


def _ancestor_distances(t: DirectedTree, v: int) -> dict:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for p in t.in_adjacency[x]:
            if p not in dist:
                dist[p] = dist[x] + 1
                queue.append(p)
    return dist


def lca(t: DirectedTree, u: int, v: int) -> Optional[int]:
    """u と v の両方へ有向パスを持つ最も深い共通祖先。存在しなければ None。"""
    _check_vertex(t, u)
    _check_vertex(t, v)
    du = _ancestor_distances(t, u)
    dv = _ancestor_distances(t, v)
    common = du.keys() & dv.keys()
    if not common:
        return None
    return min(common, key=lambda w: (du[w] + dv[w], w))


class AncestorIndex:
    """有向根付き木 (arborescence) 用のダブリング LCA。前処理 O(n log n)、問い合わせ O(log n)。"""

    def __init__(self, t: DirectedTree):
        if classify_ditree(t) is not DitreeClass.ARBORESCENCE:
            raise InvalidInputError('AncestorIndex requires an arborescence')
        n = t.n
        self.tree = t
        self.root = t.roots[0]
        parent = [-1] * n
        depth = [0] * n
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for w in t.out_adjacency[v]:
                parent[w] = v
                depth[w] = depth[v] + 1
                queue.append(w)
        self.depth = depth
        levels = max(1, max(depth).bit_length())
        up = [parent]
        for _ in range(1, levels):
            prev = up[-1]
            up.append([prev[prev[v]] if prev[v] != -1 else -1 for v in range(n)])
        self._up = up

    def ancestor(self, v: int, k: int) -> int:
        """v の k 代上の祖先"""
        j = 0
        while k and v != -1:
            if k & 1:
                v = self._up[j][v]
            k >>= 1
            j += 1
        return v

    def lca(self, u: int, v: int) -> int:
        if self.depth[u] < self.depth[v]:
            u, v = v, u
        u = self.ancestor(u, self.depth[u] - self.depth[v])
        if u == v:
            return u
        for level in reversed(self._up):
            if level[u] != level[v]:
                u, v = level[u], level[v]
        return self._up[0][u]


# ============================================
# テキスト形式: 1 行目 `u|d n m`、続いて m 行の `a b`
# ============================================

def format_graph(g: Graph) -> str:
    kind = 'd' if g.directed else 'u'
    pairs = g.arc_list if g.directed else g.edge_list
    lines = [f'{kind} {g.n} {len(pairs)}']
    lines.extend(f'{a} {b}' for a, b in pairs)
    return '\n'.join(lines) + '\n'


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError('empty graph text')
    header = lines[0].split()
    if len(header) != 3 or header[0] not in ('u', 'd'):
        raise GraphFormatError(f'bad header line: {lines[0]!r}')
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError:
        raise GraphFormatError(f'bad header line: {lines[0]!r}') from None
    if n == 0:
        raise GraphFormatError('graph must have at least one vertex')
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise GraphFormatError(f'header announces {m} edges, found {len(body)}')
    pairs = []
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f'line {lineno}: expected "a b", got {line!r}')
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f'line {lineno}: non-integer vertex id') from None
    if header[0] == 'u':
        return UndirectedGraph.from_edges(n, pairs)
    return DirectedTree.from_arcs(n, pairs)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding='utf-8'))


def write_graph(path, g: Graph) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(g), encoding='utf-8')
    return path

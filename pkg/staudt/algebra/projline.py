# staudt/algebra/projline.py - 射影直線 P(R^2)、遠離關係與遠離圖
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from loguru import logger

from staudt.algebra.mat2 import GeneratedGroup, Mat2, Row, algebra_of, generate_E2, is_invertible
from staudt.algebra.ring_core import FiniteRing
from staudt.schemas.line_schemas import LineExport
from staudt.schemas.ring_schemas import ConditionVerdict
from staudt.settings import settings
from staudt.utils.cover import find_cover, greedy_cover
from staudt.utils.errors import NotAdmissibleError, PreconditionError, ResourceCapError


def _unimodular(ring: FiniteRing, pair: Row) -> bool:
    """1 ∈ x0 R + x1 R，是可補全的必要條件"""
    x0, x1 = pair
    left = {ring.mul[x0][r] for r in ring.elements()}
    return any(ring.sub(1, ring.mul[x1][s]) in left for s in ring.elements())


def completion_row(ring: FiniteRing, pair: Row) -> Optional[Row]:
    """第一個使 (pair; w) 可逆的列 w，先試 (0,1)、(1,0)"""
    alg = algebra_of(ring)
    for w in ((0, 1), (1, 0)):
        if alg.rows_distant(pair, w):
            return w
    for y0 in ring.elements():
        for y1 in ring.elements():
            if alg.rows_distant(pair, (y0, y1)):
                return (y0, y1)
    return None


def is_admissible(ring: FiniteRing, pair: Row) -> bool:
    """
    座標對是否為某個可逆矩陣的第一列

    先以單模性過濾，再掃描補全列。
    """
    if not _unimodular(ring, pair):
        return False
    return completion_row(ring, pair) is not None


def unit_orbit(ring: FiniteRing, pair: Row) -> set[Row]:
    """{(u x0, u x1) : u ∈ R*}"""
    mul = ring.mul
    return {(mul[u][pair[0]], mul[u][pair[1]]) for u in ring.units}


def canonical_point(ring: FiniteRing, pair: Row) -> Row:
    """
    左單位軌道中字典序最小的代表

    Raises:
        NotAdmissibleError: 座標對不是 admissible
    """
    if not is_admissible(ring, pair):
        raise NotAdmissibleError(f"{pair} 在 {ring.label} 上不是 admissible")
    return min(unit_orbit(ring, pair))


@dataclass(frozen=True, eq=False)
class ProjectiveLine:
    """
    P(R^2) 的所有點

    points 依字典序排序；pair_index 把每個 admissible 座標對映至其點的編號。
    """

    ring: FiniteRing
    points: list[Row] = field(repr=False)
    index: dict[Row, int] = field(repr=False)
    pair_index: dict[Row, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.points)

    def locate(self, pair: Row) -> int:
        """
        座標對所生成的點的編號

        Raises:
            NotAdmissibleError: 座標對不是 admissible
        """
        try:
            return self.pair_index[pair]
        except KeyError:
            raise NotAdmissibleError(f"{pair} 在 {self.ring.label} 上不是 admissible") from None

    def find(self, pair: Row) -> Optional[int]:
        return self.pair_index.get(pair)

    def rep(self, point: int) -> Row:
        return self.points[point]

    def point_label(self, point: int) -> str:
        x0, x1 = self.points[point]
        name = self.ring.element_label
        return f"R({name(x0)},{name(x1)})"


@lru_cache(maxsize=32)
def enumerate_points(ring: FiniteRing, cap: Optional[int] = None) -> ProjectiveLine:
    """
    列舉 P(R^2) 的所有點

    依字典序掃描座標對，每個單位軌道只判定一次 admissible。

    Args:
        ring: 環
        cap: 座標對數上限，預設為 settings.pair_cap

    Returns:
        ProjectiveLine: 射影直線

    Raises:
        ResourceCapError: |R|^2 超過上限
    """
    cap = cap or settings.pair_cap
    if ring.size**2 > cap:
        raise ResourceCapError("coordinate pairs", cap, ring.size**2)
    seen: set[Row] = set()
    orbits: list[tuple[Row, set[Row]]] = []
    for x0 in ring.elements():
        for x1 in ring.elements():
            pair = (x0, x1)
            if pair in seen:
                continue
            orbit = unit_orbit(ring, pair)
            seen |= orbit
            if is_admissible(ring, pair):
                orbits.append((min(orbit), orbit))
    orbits.sort(key=lambda item: item[0])
    points = [rep for rep, _ in orbits]
    pair_index = {pair: i for i, (_, orbit) in enumerate(orbits) for pair in orbit}
    logger.info("P({})：{} 個點", ring.label, len(points))
    return ProjectiveLine(ring, points, {p: i for i, p in enumerate(points)}, pair_index)


def brute_force_point_count(ring: FiniteRing) -> int:
    """
    獨立的點數神諭：計算相異的循環子模 R·a，a 以完整補全掃描判定 admissible
    """
    alg = algebra_of(ring)
    submodules = set()
    for x0 in ring.elements():
        for x1 in ring.elements():
            pair = (x0, x1)
            if any(alg.is_invertible((x0, x1, y0, y1)) for y0 in ring.elements() for y1 in ring.elements()):
                submodules.add(frozenset(alg.span(pair)))
    return len(submodules)


def are_distant(line: ProjectiveLine, p: int, q: int) -> bool:
    """堆疊兩點代表所得的矩陣是否可逆"""
    if p == q:
        return False
    return algebra_of(line.ring).rows_distant(line.points[p], line.points[q])


@dataclass(frozen=True, eq=False)
class DistantGraph:
    """遠離圖：對稱、無自環的布林鄰接矩陣"""

    line: ProjectiveLine
    adjacency: np.ndarray = field(repr=False)
    neighbors: list[frozenset[int]] = field(repr=False)

    def distant(self, p: int, q: int) -> bool:
        return bool(self.adjacency[p, q])

    def degree(self, p: int) -> int:
        return len(self.neighbors[p])

    def edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(np.triu(self.adjacency, 1))]


@lru_cache(maxsize=32)
def build_distant_graph(line: ProjectiveLine) -> DistantGraph:
    """逐對計算遠離關係"""
    n = line.size
    adjacency = np.zeros((n, n), dtype=bool)
    for p in range(n):
        for q in range(p + 1, n):
            if are_distant(line, p, q):
                adjacency[p, q] = adjacency[q, p] = True
    adjacency.setflags(write=False)
    neighbors = [frozenset(int(q) for q in np.flatnonzero(adjacency[p])) for p in range(n)]
    logger.debug("遠離圖 {}：{} 條邊", line.ring.label, int(adjacency.sum()) // 2)
    return DistantGraph(line, adjacency, neighbors)


def components(graph: DistantGraph) -> list[list[int]]:
    """以 BFS 求連通分量，依最小點編號排序"""
    seen: set[int] = set()
    result = []
    for start in range(graph.line.size):
        if start in seen:
            continue
        seen.add(start)
        part, queue = [start], deque([start])
        while queue:
            p = queue.popleft()
            for q in sorted(graph.neighbors[p]):
                if q not in seen:
                    seen.add(q)
                    part.append(q)
                    queue.append(q)
        result.append(sorted(part))
    return result


def component_of(graph: DistantGraph, point: int) -> list[int]:
    for part in components(graph):
        if point in part:
            return part
    raise PreconditionError(f"點 {point} 不在直線上")


def component_via_words(line: ProjectiveLine, e2: Optional[GeneratedGroup] = None) -> set[int]:
    """
    R(1,0) 的字分量 {R((1,0)·E(T))}

    Args:
        line: 射影直線
        e2: 預先生成的 E2(R)；省略時就地生成

    Returns:
        set[int]: 點編號集合
    """
    group = e2 if e2 is not None else generate_E2(line.ring)
    alg = algebra_of(line.ring)
    return {line.locate(alg.unkey(key)[:2]) for key in group.order}


def coordinates(line: ProjectiveLine, pair: Row, basis: Mat2) -> Row:
    """
    座標對相對於基底 basis（各列為基底向量）的座標 c，滿足 c·basis = pair

    Raises:
        PreconditionError: basis 不可逆
    """
    inverse = is_invertible(basis)
    if inverse is None:
        raise PreconditionError(f"基底矩陣 {basis} 不可逆")
    return algebra_of(line.ring).row_times(pair, inverse.entries)


def _blocking_search(universe: int, sets: list[int], exhaustive: bool) -> Optional[list[int]]:
    if exhaustive:
        return find_cover(universe, sets, 5)
    return greedy_cover(universe, sets, 5, settings.cover_restarts, settings.seed)


def check_condition_i_prime(
    line: ProjectiveLine, graph: DistantGraph, exhaustive_cap: Optional[int] = None
) -> ConditionVerdict:
    """
    條件 (i')：p1..p5 皆與 p0 遠離時，存在 p 與 p0..p5 全部遠離

    固定 p0 後，條件失敗恰好當 p0 的鄰居可被 5 個集合
    {p : p 不與 pi 遠離} 覆蓋；pi 可重複。窮舉上限與條件 (i) 相同。

    Returns:
        ConditionVerdict: 見證為 [p0, p1, ..., p5]
    """
    cap = exhaustive_cap or settings.exhaustive_cap
    unresolved = False
    for p0 in range(line.size):
        nbrs = sorted(graph.neighbors[p0])
        if not nbrs:
            # 沒有鄰居時 p1..p5 不存在
            continue
        bit = {p: i for i, p in enumerate(nbrs)}
        universe = (1 << len(nbrs)) - 1
        sets = []
        for q in nbrs:
            mask = 0
            for p in nbrs:
                if not graph.adjacency[p, q]:
                    mask |= 1 << bit[p]
            sets.append(mask)
        exhaustive = len(nbrs) ** 5 <= cap
        cover = _blocking_search(universe, sets, exhaustive)
        if cover is not None:
            chosen = [nbrs[i] for i in cover]
            chosen = (chosen + [chosen[-1]] * 5)[:5]
            return ConditionVerdict(holds=False, witness=[p0, *chosen], exhaustive=exhaustive)
        unresolved |= not exhaustive
    if unresolved:
        logger.warning("{} 的條件 (i') 超過窮舉上限且未找到阻擋組，無法判定", line.ring.label)
        return ConditionVerdict(holds=None, witness=None, exhaustive=False)
    return ConditionVerdict(holds=True, witness=None, exhaustive=True)


def check_dedekind_witness(ring: FiniteRing) -> Optional[tuple[int, int]]:
    """xy = 1 但 yx != 1 的 (x, y)；有限環必定回傳 None"""
    ones = ring.mul_table == 1
    hits = np.argwhere(ones & ~ones.T)
    if len(hits):
        x, y = hits[0]
        return (int(x), int(y))
    return None


def export_json(line: ProjectiveLine, graph: DistantGraph) -> LineExport:
    return LineExport(
        points=[list(p) for p in line.points],
        edges=[list(e) for e in graph.edges()],
        components=components(graph),
    )


def export_dot(line: ProjectiveLine, graph: DistantGraph) -> str:
    """無向 DOT：每個點一個節點，遠離的點對一條邊"""
    lines = [f'graph "{line.ring.label}" {{']
    for i in range(line.size):
        x0, x1 = line.points[i]
        lines.append(f'  {i} [label="({x0},{x1})"];')
    for i, j in graph.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

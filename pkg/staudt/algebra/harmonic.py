# staudt/algebra/harmonic.py - 調和四元組
from functools import lru_cache
from typing import Optional

from loguru import logger

from staudt.algebra.mat2 import algebra_of, enumerate_GL2
from staudt.algebra.projline import DistantGraph, ProjectiveLine, build_distant_graph, components
from staudt.algebra.ring_core import check_two_unit
from staudt.schemas.line_schemas import DistantConsequenceReport
from staudt.utils.errors import FalsificationError, PreconditionError

# (p0, p1, p2, p3)，以點編號表示，有序且允許重複
Quad = tuple[int, int, int, int]


def _completion_pairs(line: ProjectiveLine, p0: int, p1: int) -> list[tuple[int, int]]:
    """
    對 p0 △ p1 列出所有 (R(g0+g1), R(g0-g1))

    基底 (u·r0, v·r1) 左乘 u^-1 不改變任何點，因此只需 g0 = r0、g1 = w·r1，w 走遍單位。
    """
    ring = line.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    r0, r1 = line.points[p0], line.points[p1]
    pairs = []
    for w in ring.units:
        g1 = (mul[w][r1[0]], mul[w][r1[1]])
        plus = (add[r0[0]][g1[0]], add[r0[1]][g1[1]])
        minus = (add[r0[0]][neg[g1[0]]], add[r0[1]][neg[g1[1]]])
        pairs.append((line.locate(plus), line.locate(minus)))
    return pairs


def is_harmonic(line: ProjectiveLine, quad: Quad, graph: Optional[DistantGraph] = None) -> bool:
    """
    是否存在基底 (g0, g1) 使四點依序為 Rg0、Rg1、R(g0+g1)、R(g0-g1)

    Args:
        line: 射影直線
        quad: 四個點編號
        graph: 遠離圖；省略時就地建構

    Returns:
        bool: 是否調和
    """
    graph = graph or build_distant_graph(line)
    p0, p1, p2, p3 = quad
    if not graph.distant(p0, p1):
        return False
    return (p2, p3) in _completion_pairs(line, p0, p1)


@lru_cache(maxsize=32)
def harmonic_set(line: ProjectiveLine) -> frozenset[Quad]:
    """所有調和四元組的集合"""
    graph = build_distant_graph(line)
    quads = set()
    for p0 in range(line.size):
        for p1 in sorted(graph.neighbors[p0]):
            for p2, p3 in _completion_pairs(line, p0, p1):
                quads.add((p0, p1, p2, p3))
    logger.info("P({})：{} 個調和四元組", line.ring.label, len(quads))
    return frozenset(quads)


def enumerate_harmonic_quadruples(line: ProjectiveLine) -> list[Quad]:
    """依字典序排列的所有調和四元組"""
    return sorted(harmonic_set(line))


@lru_cache(maxsize=16)
def harmonic_set_via_G(line: ProjectiveLine) -> frozenset[Quad]:
    """
    以 GL2 的每個 G 產生的四元組：(1,0)G、(1,0)E(0)G、(1,0)E(1)G、(1,0)E(-1)G

    Raises:
        ResourceCapError: GL2 超過窮舉上限
    """
    ring = line.ring
    alg = algebra_of(ring)
    add, neg = ring.add, ring.neg
    quads = set()
    for key in enumerate_GL2(ring):
        a, b, c, d = alg.unkey(key)
        quads.add((
            line.locate((a, b)),
            line.locate((c, d)),
            line.locate((add[a][c], add[b][d])),
            line.locate((add[neg[a]][c], add[neg[b]][d])),
        ))
    return frozenset(quads)


def is_harmonic_via_G(line: ProjectiveLine, quad: Quad) -> bool:
    """以 GL2 窮舉的慢速神諭"""
    return tuple(quad) in harmonic_set_via_G(line)


def _require_mutually_distant(graph: DistantGraph, triple: tuple[int, int, int]) -> None:
    a, b, c = triple
    if not (graph.distant(a, b) and graph.distant(a, c) and graph.distant(b, c)):
        raise PreconditionError(f"點 {triple} 不是兩兩遠離")


def fourth_harmonic(line: ProjectiveLine, p0: int, p1: int, p2: int) -> int:
    """
    唯一的 p3 使 (p0, p1, p2, p3) 調和

    掃描所有點並斷言恰有一個。

    Raises:
        PreconditionError: 三點不是兩兩遠離
        FalsificationError: 完成點不唯一或不存在
    """
    graph = build_distant_graph(line)
    _require_mutually_distant(graph, (p0, p1, p2))
    hits = [p3 for p3 in range(line.size) if is_harmonic(line, (p0, p1, p2, p3), graph)]
    if len(hits) != 1:
        logger.error("P({}) 的第四調和點不唯一: {} -> {}", line.ring.label, (p0, p1, p2), hits)
        raise FalsificationError(f"({p0},{p1},{p2}) 有 {len(hits)} 個第四調和點", [p0, p1, p2, *hits])
    return hits[0]


def third_harmonic(line: ProjectiveLine, p0: int, p1: int, p3: int) -> int:
    """Harm(p0,p1,p2,p3) ⇔ Harm(p0,p1,p3,p2)"""
    return fourth_harmonic(line, p0, p1, p3)


@lru_cache(maxsize=16)
def harmonic_completions(
    line: ProjectiveLine,
) -> tuple[dict[tuple[int, int, int], int], dict[tuple[int, int, int], int]]:
    """
    查表：(p0,p1,p2) -> p3 與 (p0,p1,p3) -> p2

    建表時斷言每個兩兩遠離的三元組恰有一個完成點。

    Raises:
        FalsificationError: 存在性或唯一性失敗
    """
    graph = build_distant_graph(line)
    fourth: dict[tuple[int, int, int], int] = {}
    third: dict[tuple[int, int, int], int] = {}
    for p0, p1, p2, p3 in sorted(harmonic_set(line)):
        for table, key, value in ((fourth, (p0, p1, p2), p3), (third, (p0, p1, p3), p2)):
            if table.setdefault(key, value) != value:
                raise FalsificationError(f"{key} 的調和完成點不唯一", [*key, table[key], value])
    for p0 in range(line.size):
        for p1 in graph.neighbors[p0]:
            for p2 in graph.neighbors[p0] & graph.neighbors[p1]:
                if (p0, p1, p2) not in fourth or (p0, p1, p2) not in third:
                    raise FalsificationError(f"({p0},{p1},{p2}) 沒有調和完成點", [p0, p1, p2])
    return fourth, third


def check_distant_consequences(line: ProjectiveLine) -> DistantConsequenceReport:
    """
    對每個調和四元組檢查遠離性推論

    p0△p1 且 pi△pj (i∈{0,1}, j∈{2,3})；p2△p3 ⇔ 2 是單位；
    p2≠p3 ⇔ -1≠1；四點位於同一連通分量。違反以清單回報。
    """
    ring = line.ring
    graph = build_distant_graph(line)
    two_unit = check_two_unit(ring)
    minus_one_neq_one = ring.neg[1] != 1
    component_id = {p: i for i, part in enumerate(components(graph)) for p in part}
    quads = enumerate_harmonic_quadruples(line)
    pattern, distant, distinct, component = [], [], [], []
    for quad in quads:
        p0, p1, p2, p3 = quad
        if not all(graph.distant(a, b) for a, b in ((p0, p1), (p0, p2), (p0, p3), (p1, p2), (p1, p3))):
            pattern.append(list(quad))
        if graph.distant(p2, p3) != two_unit:
            distant.append(list(quad))
        if (p2 != p3) != minus_one_neq_one:
            distinct.append(list(quad))
        if len({component_id[p] for p in quad}) != 1:
            component.append(list(quad))
    report = DistantConsequenceReport(
        ring=ring.label,
        quadruples=len(quads),
        two_is_unit=two_unit,
        minus_one_neq_one=minus_one_neq_one,
        pattern_violations=pattern,
        p2_p3_distant_violations=distant,
        p2_p3_distinct_violations=distinct,
        component_violations=component,
        all_p2_p3_distant=all(graph.distant(q[2], q[3]) for q in quads),
        all_p2_p3_equal=all(q[2] == q[3] for q in quads),
    )
    if not report.passed:
        logger.error("P({}) 的調和四元組違反遠離性推論", ring.label)
    return report

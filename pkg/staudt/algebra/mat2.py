# staudt/algebra/mat2.py - 環上的 2x2 矩陣、初等矩陣字與 E2 / GE2 / GL2 的生成
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from loguru import logger

from staudt.algebra.ring_core import AddUnitalMap, FiniteRing
from staudt.schemas.ring_schemas import FactorizationReport
from staudt.settings import settings
from staudt.utils.errors import PreconditionError, ResourceCapError, RingMismatchError

# 列優先的矩陣元組 (a, b, c, d)，代表 ((a, b), (c, d))
Entries = tuple[int, int, int, int]
Row = tuple[int, int]
Word = tuple[int, ...]


class MatrixAlgebra:
    """
    以元組表示矩陣的快速運算，供所有熱迴圈使用

    Args:
        ring: 係數環
    """

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        self.n = ring.size
        self._add = ring.add
        self._mul = ring.mul
        self._neg = ring.neg
        self._spans: dict[Row, dict[Row, int]] = {}

    @property
    def identity(self) -> Entries:
        return (1, 0, 0, 1)

    def key(self, x: Entries) -> int:
        n = self.n
        return ((x[0] * n + x[1]) * n + x[2]) * n + x[3]

    def unkey(self, key: int) -> Entries:
        n = self.n
        key, d = divmod(key, n)
        key, c = divmod(key, n)
        a, b = divmod(key, n)
        return (a, b, c, d)

    def mul(self, x: Entries, y: Entries) -> Entries:
        add, mul = self._add, self._mul
        a, b, c, d = x
        e, f, g, h = y
        return (
            add[mul[a][e]][mul[b][g]],
            add[mul[a][f]][mul[b][h]],
            add[mul[c][e]][mul[d][g]],
            add[mul[c][f]][mul[d][h]],
        )

    def right_e(self, x: Entries, t: int) -> Entries:
        """X·E(t) = ((a t - b, a), (c t - d, c))"""
        add, mul, neg = self._add, self._mul, self._neg
        a, b, c, d = x
        return (add[mul[a][t]][neg[b]], a, add[mul[c][t]][neg[d]], c)

    def elementary(self, t: int) -> Entries:
        return (t, 1, self._neg[1], 0)

    def elementary_inverse(self, t: int) -> Entries:
        """E(t)^-1 = ((0, -1), (1, t))"""
        return (0, self._neg[1], 1, t)

    def transpose(self, x: Entries) -> Entries:
        return (x[0], x[2], x[1], x[3])

    def row_times(self, row: Row, x: Entries) -> Row:
        """列向量右乘矩陣 (r0, r1)·X"""
        add, mul = self._add, self._mul
        r0, r1 = row
        return (add[mul[r0][x[0]]][mul[r1][x[2]]], add[mul[r0][x[1]]][mul[r1][x[3]]])

    def span(self, row: Row) -> dict[Row, int]:
        """左子模 R·row，映至第一個產生它的係數 r"""
        cached = self._spans.get(row)
        if cached is None:
            mul = self._mul
            cached = {}
            for r in range(self.n):
                cached.setdefault((mul[r][row[0]], mul[r][row[1]]), r)
            self._spans[row] = cached
        return cached

    def _preimage(self, target: Row, v: Row, w: Row) -> Optional[Row]:
        """找 (r0, r1) 使 r0·v + r1·w = target"""
        span_v = self.span(v)
        add, mul, neg = self._add, self._mul, self._neg
        for r1 in range(self.n):
            rest = (add[target[0]][neg[mul[r1][w[0]]]], add[target[1]][neg[mul[r1][w[1]]]])
            r0 = span_v.get(rest)
            if r0 is not None:
                return (r0, r1)
        return None

    def inverse(self, x: Entries) -> Optional[Entries]:
        """
        以列作用判定可逆性

        (r0, r1) -> (r0, r1)·X 在有限集 R^2 上為雙射當且僅當其為滿射，而像是
        左子模，故只需 (1,0) 與 (0,1) 皆在像中。兩個原像即為反矩陣的兩列。
        """
        v, w = (x[0], x[1]), (x[2], x[3])
        first = self._preimage((1, 0), v, w)
        if first is None:
            return None
        second = self._preimage((0, 1), v, w)
        if second is None:
            return None
        return (first[0], first[1], second[0], second[1])

    def is_invertible(self, x: Entries) -> bool:
        return self.inverse(x) is not None

    def rows_distant(self, v: Row, w: Row) -> bool:
        """以 v、w 為兩列的矩陣是否可逆"""
        return self._preimage((1, 0), v, w) is not None and self._preimage((0, 1), v, w) is not None

    def apply(self, x: Entries, image: Sequence[int]) -> Entries:
        return (image[x[0]], image[x[1]], image[x[2]], image[x[3]])

    def eval_word(self, word: Iterable[int]) -> Entries:
        x = self.identity
        for t in word:
            x = self.right_e(x, t)
        return x


@lru_cache(maxsize=64)
def algebra_of(ring: FiniteRing) -> MatrixAlgebra:
    """每個環共用一個 MatrixAlgebra（保留子模快取）"""
    return MatrixAlgebra(ring)


@dataclass(frozen=True, slots=True)
class Mat2:
    """
    環上的 2x2 矩陣，列為 (a, b) 與 (c, d)
    """

    ring: FiniteRing = field(repr=False)
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, ring: FiniteRing, entries: Sequence[int]) -> "Mat2":
        a, b, c, d = entries
        return cls(ring, a, b, c, d)

    @property
    def entries(self) -> Entries:
        return (self.a, self.b, self.c, self.d)

    @property
    def rows(self) -> tuple[Row, Row]:
        return ((self.a, self.b), (self.c, self.d))

    def first_row(self) -> Row:
        return (self.a, self.b)

    def as_lists(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __str__(self) -> str:
        name = self.ring.element_label
        return f"(({name(self.a)},{name(self.b)}),({name(self.c)},{name(self.d)}))"


def _same_ring(x: Mat2, y: Mat2) -> None:
    if x.ring is not y.ring:
        raise RingMismatchError(f"矩陣分屬不同的環: {x.ring.label} 與 {y.ring.label}")


def mat_identity(ring: FiniteRing) -> Mat2:
    return Mat2(ring, 1, 0, 0, 1)


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    """
    矩陣乘法（列乘行，左因子在左）

    Raises:
        RingMismatchError: 兩個矩陣不屬於同一個環
    """
    _same_ring(x, y)
    return Mat2.of(x.ring, algebra_of(x.ring).mul(x.entries, y.entries))


def mat_transpose(x: Mat2) -> Mat2:
    return Mat2(x.ring, x.a, x.c, x.b, x.d)


def mat_apply(x: Mat2, alpha: AddUnitalMap) -> Mat2:
    """逐項套用 α"""
    if x.ring is not alpha.source:
        raise RingMismatchError(f"矩陣屬於 {x.ring.label}，映射來源為 {alpha.source.label}")
    return Mat2.of(alpha.target, [alpha(e) for e in x.entries])


def determinant(x: Mat2) -> int:
    """ad - bc，只對交換環有意義"""
    ring = x.ring
    if not np.array_equal(ring.mul_table, ring.mul_table.T):
        raise PreconditionError(f"{ring.label} 不是交換環，行列式無定義")
    return ring.sub(ring.mul[x.a][x.d], ring.mul[x.b][x.c])


def row_times(row: Row, x: Mat2) -> Row:
    return algebra_of(x.ring).row_times(row, x.entries)


def left_module_span(ring: FiniteRing, row: Row) -> set[Row]:
    """左子模 R·row"""
    return set(algebra_of(ring).span(row))


def is_invertible(x: Mat2) -> Optional[Mat2]:
    """
    判定可逆並回傳雙邊反矩陣

    Args:
        x: 矩陣

    Returns:
        Optional[Mat2]: 反矩陣；不可逆時為 None
    """
    inverse = algebra_of(x.ring).inverse(x.entries)
    return None if inverse is None else Mat2.of(x.ring, inverse)


def elementary(ring: FiniteRing, t: int) -> Mat2:
    """E(t) = ((t, 1), (-1, 0))"""
    return Mat2.of(ring, algebra_of(ring).elementary(t))


def eval_word(ring: FiniteRing, word: Sequence[int]) -> Mat2:
    """E(t1)·E(t2)···E(tn)；空字為單位矩陣"""
    return Mat2.of(ring, algebra_of(ring).eval_word(word))


def verify_glrstar_factorization(ring: FiniteRing) -> FactorizationReport:
    """
    對所有 (x, y) 檢查 ((x,1),(y,1)) 可逆 ⇔ x-y 為單位，以及分解
    ((1,1),(0,1))·diag(x-y,1)·((1,0),(y,1)) = ((x,1),(y,1))

    Args:
        ring: 環

    Returns:
        FactorizationReport: 檢查報表
    """
    alg = algebra_of(ring)
    invertible = 0
    equivalence_failures, factorization_failures = [], []
    upper = (1, 1, 0, 1)
    for x in ring.elements():
        for y in ring.elements():
            matrix = (x, 1, y, 1)
            diff = ring.sub(x, y)
            inv = alg.is_invertible(matrix)
            invertible += inv
            if inv != ring.is_unit(diff):
                equivalence_failures.append([x, y])
            if ring.is_unit(diff):
                product = alg.mul(alg.mul(upper, (diff, 0, 0, 1)), (1, 0, y, 1))
                if product != matrix:
                    factorization_failures.append([x, y])
    return FactorizationReport(
        ring=ring.label,
        pairs=ring.size**2,
        invertible=invertible,
        equivalence_failures=equivalence_failures,
        factorization_failures=factorization_failures,
    )


@dataclass(eq=False)
class GeneratedGroup:
    """
    以 BFS 生成的矩陣群

    元素以整數鍵表示；parent 記錄每個元素被發現時的 (前一個元素, 生成元編號)，
    因此 witness 可重建一個最短的生成元字。
    """

    name: str
    ring: FiniteRing = field(repr=False)
    labels: list[int] = field(repr=False)
    order: list[int] = field(repr=False)
    parent: dict[int, tuple[int, int]] = field(repr=False)
    _members: Optional[frozenset[int]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def members(self) -> frozenset[int]:
        if self._members is None:
            self._members = frozenset(self.order)
        return self._members

    def __contains__(self, key: int) -> bool:
        return key in self.parent

    def __len__(self) -> int:
        return len(self.order)

    def generator_word(self, key: int) -> list[int]:
        """生成元編號的序列"""
        word = []
        while True:
            prev, gen = self.parent[key]
            if gen < 0:
                break
            word.append(gen)
            key = prev
        word.reverse()
        return word

    def witness(self, key: int) -> Word:
        """元素的見證字（以生成元標籤表示；E2 的標籤即參數 t）"""
        return tuple(self.labels[g] for g in self.generator_word(key))

    def matrices(self) -> Iterable[Mat2]:
        alg = algebra_of(self.ring)
        for key in self.order:
            yield Mat2.of(self.ring, alg.unkey(key))

    def to_payload(self) -> dict:
        """可序列化為 JSON 的表示"""
        return {
            "name": self.name,
            "ring": self.ring.label,
            "labels": self.labels,
            "order": self.order,
            "parent": [list(self.parent[key]) for key in self.order],
        }

    @classmethod
    def from_payload(cls, ring: FiniteRing, payload: dict) -> "GeneratedGroup":
        order = [int(k) for k in payload["order"]]
        parent = {key: (int(p[0]), int(p[1])) for key, p in zip(order, payload["parent"])}
        return cls(payload["name"], ring, list(payload["labels"]), order, parent)


def _bfs(
    name: str,
    ring: FiniteRing,
    labels: list[int],
    step: Callable[[Entries, int], Entries],
    cap: int,
) -> GeneratedGroup:
    alg = algebra_of(ring)
    start = alg.key(alg.identity)
    order = [start]
    parent = {start: (start, -1)}
    queue = deque([alg.identity])
    while queue:
        x = queue.popleft()
        x_key = alg.key(x)
        for gen in range(len(labels)):
            y = step(x, gen)
            y_key = alg.key(y)
            if y_key in parent:
                continue
            parent[y_key] = (x_key, gen)
            order.append(y_key)
            if len(order) > cap:
                raise ResourceCapError(f"{name} group size", cap, len(order))
            queue.append(y)
    logger.info("生成 {}({})：{} 個元素", name, ring.label, len(order))
    return GeneratedGroup(name, ring, labels, order, parent)


@lru_cache(maxsize=32)
def generate_E2(ring: FiniteRing, cap: Optional[int] = None) -> GeneratedGroup:
    """
    以右乘 E(t) 的 BFS 生成 E2(R)

    生成元依索引順序嘗試，佇列依發現順序處理，因此每個元素記錄的
    見證字是最短字中字典序最小者。

    Args:
        ring: 環
        cap: 群大小上限，預設為 settings.e2_cap

    Returns:
        GeneratedGroup: E2(R)

    Raises:
        ResourceCapError: 群大小超過上限
    """
    alg = algebra_of(ring)
    return _bfs("E2", ring, list(ring.elements()), alg.right_e, cap or settings.e2_cap)


@lru_cache(maxsize=32)
def generate_GE2(ring: FiniteRing, cap: Optional[int] = None) -> GeneratedGroup:
    """由 E(t) 與可逆對角矩陣 diag(u,1)、diag(1,u) 生成 GE2(R)"""
    alg = algebra_of(ring)
    generators = [alg.elementary(t) for t in ring.elements()]
    labels = list(ring.elements())
    for u in ring.units:
        if u != 1:
            generators.append((u, 0, 0, 1))
            generators.append((1, 0, 0, u))
            labels.extend([-1, -1])

    def step(x: Entries, gen: int) -> Entries:
        return alg.mul(x, generators[gen])

    return _bfs("GE2", ring, labels, step, cap or settings.e2_cap)


@lru_cache(maxsize=32)
def enumerate_GL2(ring: FiniteRing, cap: Optional[int] = None) -> frozenset[int]:
    """
    窮舉 GL2(R) 的所有元素鍵

    Raises:
        ResourceCapError: |R| 超過 gl2_cap
    """
    cap = cap or settings.gl2_cap
    if ring.size > cap:
        raise ResourceCapError("GL2 enumeration ring size", cap, ring.size)
    alg = algebra_of(ring)
    n = ring.size
    keys = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if alg.is_invertible((a, b, c, d)):
                        keys.add(((a * n + b) * n + c) * n + d)
    logger.info("GL2({})：{} 個元素", ring.label, len(keys))
    return frozenset(keys)


def is_GE2_ring(ring: FiniteRing) -> bool:
    """GE2(R) = GL2(R)"""
    return generate_GE2(ring).members == enumerate_GL2(ring)


def alpha_star(x: Mat2, alpha: AddUnitalMap) -> Mat2:
    """X^{α*}：逐項套用 α"""
    return mat_apply(x, alpha)


def alpha_double_star(x: Mat2, alpha: AddUnitalMap) -> Mat2:
    """
    X^{α**} = E(0)^-1 · ((X^-1)^T)^α · E(0)

    Raises:
        PreconditionError: X 不可逆
    """
    inverse = is_invertible(x)
    if inverse is None:
        raise PreconditionError(f"矩陣 {x} 不可逆")
    target = algebra_of(alpha.target)
    inner = target.apply(target.transpose(inverse.entries), alpha.image)
    result = target.mul(target.mul(target.elementary_inverse(0), inner), target.elementary(0))
    return Mat2.of(alpha.target, result)


def _homomorphism_witness(
    ring: FiniteRing,
    transform: Callable[[Mat2], Mat2],
    elements: Optional[Iterable[Mat2]],
) -> Optional[tuple[Mat2, Mat2]]:
    group = list(elements) if elements is not None else [
        Mat2.of(ring, algebra_of(ring).unkey(k)) for k in sorted(enumerate_GL2(ring))
    ]
    images = {m.entries: transform(m) for m in group}
    for x in group:
        for y in group:
            if transform(mat_mul(x, y)) != mat_mul(images[x.entries], images[y.entries]):
                return (x, y)
    return None


def verify_alpha_star_homomorphism(
    alpha: AddUnitalMap, elements: Optional[Iterable[Mat2]] = None
) -> Optional[tuple[Mat2, Mat2]]:
    """對所有成對元素檢查 (XY)^{α*} = X^{α*} Y^{α*}；回傳第一個反例"""
    return _homomorphism_witness(alpha.source, lambda m: alpha_star(m, alpha), elements)


def verify_alpha_double_star_homomorphism(
    alpha: AddUnitalMap, elements: Optional[Iterable[Mat2]] = None
) -> Optional[tuple[Mat2, Mat2]]:
    """對所有成對元素檢查 (XY)^{α**} = X^{α**} Y^{α**}；回傳第一個反例"""
    return _homomorphism_witness(alpha.source, lambda m: alpha_double_star(m, alpha), elements)

# staudt/algebra/ring_core.py - 以運算表實現的有限環與環之間的映射
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Literal, Optional, Sequence

import numpy as np
from loguru import logger

from staudt.algebra.ring_spec import (
    DualExpr,
    GFExpr,
    Mat2RingExpr,
    ProductExpr,
    RingExpr,
    UpperTri2Expr,
    ZmodExpr,
    parse_ring_spec,
)
from staudt.schemas.ring_schemas import AxiomCheck, AxiomReport, ConditionVerdict
from staudt.settings import settings
from staudt.utils.cover import find_cover, greedy_cover
from staudt.utils.errors import MapValidationError, ResourceCapError

# 驗收用的環目錄
CATALOG: tuple[str, ...] = (
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/6",
    "Z/7",
    "Z/8",
    "Z/9",
    "GF(2,2)",
    "GF(2,3)",
    "GF(3,2)",
    "M2(Z/2)",
    "T2(Z/2)",
    "T2(Z/3)",
    "DUAL(Z/3)",
    "Z/4xZ/9",
)


def catalog() -> list[str]:
    """目錄中的環規格，依固定順序"""
    return list(CATALOG)


def _frozen(table: np.ndarray) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.int64)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """
    以稠密運算表表示的有限環

    元素以 0..size-1 的索引表示；索引 0 為加法零元，索引 1 為乘法單位元。
    建構後不可變，可安全地在執行緒間共享。相等性採物件同一性。
    """

    label: str
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    unit_set: frozenset[int] = field(repr=False)
    inv_table: dict[int, int] = field(repr=False)
    names: tuple[str, ...] = field(repr=False)
    # 熱迴圈使用的 Python 串列副本
    add: list[list[int]] = field(repr=False)
    mul: list[list[int]] = field(repr=False)
    neg: list[int] = field(repr=False)

    @classmethod
    def from_tables(
        cls,
        label: str,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        names: Optional[Sequence[str]] = None,
    ) -> "FiniteRing":
        """
        由加法表與乘法表建構環

        不驗證環公理（交給 check_ring_axioms）；負元、單位與反元素
        以雙邊暴力搜尋求得。

        Args:
            label: 可讀的規格字串
            add_table: size x size 加法表
            mul_table: size x size 乘法表
            names: 各元素的可讀表示

        Returns:
            FiniteRing: 環物件
        """
        add_table = _frozen(add_table)
        mul_table = _frozen(mul_table)
        size = add_table.shape[0]
        neg_table = _frozen(np.argmax(add_table == 0, axis=1))
        ones = mul_table == 1
        two_sided = ones & ones.T
        units = frozenset(int(u) for u in np.flatnonzero(two_sided.any(axis=1)))
        inverses = {u: int(np.argmax(two_sided[u])) for u in sorted(units)}
        return cls(
            label=label,
            add_table=add_table,
            mul_table=mul_table,
            neg_table=neg_table,
            unit_set=units,
            inv_table=inverses,
            names=tuple(names) if names is not None else tuple(str(i) for i in range(size)),
            add=add_table.tolist(),
            mul=mul_table.tolist(),
            neg=neg_table.tolist(),
        )

    @property
    def size(self) -> int:
        return len(self.neg)

    @property
    def units(self) -> list[int]:
        """依索引排序的單位"""
        return sorted(self.unit_set)

    def elements(self) -> range:
        return range(self.size)

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    def is_unit(self, x: int) -> bool:
        return x in self.unit_set

    def inverse(self, x: int) -> int:
        return self.inv_table[x]

    def multiple(self, x: int, m: int) -> int:
        """m 個 x 相加"""
        acc = 0
        for _ in range(m):
            acc = self.add[acc][x]
        return acc

    def element_label(self, x: int) -> str:
        return self.names[x]

    def __str__(self) -> str:
        return self.label


# ==================== 建構子 ====================


def _zmod(n: int) -> FiniteRing:
    r = np.arange(n)
    return FiniteRing.from_tables(f"Z/{n}", np.add.outer(r, r) % n, np.multiply.outer(r, r) % n)


def _poly_label(coeffs: Sequence[int]) -> str:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}x" if power == 1 else f"{head}x^{power}")
    return "+".join(terms) or "0"


def _gf(expr: GFExpr) -> FiniteRing:
    p, k = expr.p, expr.k
    lead_inv = pow(expr.poly[-1], -1, p)
    modulus = [c * lead_inv % p for c in expr.poly]
    size = p**k
    digits = [[code // p**i % p for i in range(k)] for code in range(size)]

    def encode(coeffs: Sequence[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    def multiply(a: list[int], b: list[int]) -> int:
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # 以首一模多項式化簡
        for top in range(len(prod) - 1, k - 1, -1):
            factor = prod[top]
            if factor:
                for i in range(k + 1):
                    prod[top - k + i] = (prod[top - k + i] - factor * modulus[i]) % p
        return encode(prod[:k])

    add = np.array([[encode([(x + y) % p for x, y in zip(a, b)]) for b in digits] for a in digits])
    mul = np.array([[multiply(a, b) for b in digits] for a in digits])
    return FiniteRing.from_tables(expr.to_spec(), add, mul, [_poly_label(d) for d in digits])


def _composite(
    label: str,
    radices: Sequence[int],
    one: Sequence[int],
    add_fn: Callable[[list, list], list],
    mul_fn: Callable[[list, list], list],
    component_names: Callable[[list[int]], str],
) -> FiniteRing:
    """
    由分量運算建構複合環

    自然編碼為混合進位數字；重新排序使零元為 0、單位元為 1，
    其餘元素維持自然順序。
    """
    size = int(np.prod(radices))
    weights = np.cumprod([1, *radices[:-1]])
    one_code = int(sum(c * w for c, w in zip(one, weights)))
    order = np.array([0, one_code, *(c for c in range(size) if c not in (0, one_code))])
    position = np.empty(size, dtype=np.int64)
    position[order] = np.arange(size)
    parts = [order // w % r for w, r in zip(weights, radices)]
    xs = [part[:, None] for part in parts]
    ys = [part[None, :] for part in parts]

    def encode(components: list) -> np.ndarray:
        return position[sum(c * w for c, w in zip(components, weights))]

    names = [component_names([int(part[i]) for part in parts]) for i in range(size)]
    return FiniteRing.from_tables(label, encode(add_fn(xs, ys)), encode(mul_fn(xs, ys)), names)


def _mat2_ring(label: str, inner: FiniteRing) -> FiniteRing:
    A, M = inner.add_table, inner.mul_table

    def add_fn(x: list, y: list) -> list:
        return [A[x[i], y[i]] for i in range(4)]

    def mul_fn(x: list, y: list) -> list:
        a, b, c, d = x
        e, f, g, h = y
        return [A[M[a, e], M[b, g]], A[M[a, f], M[b, h]], A[M[c, e], M[d, g]], A[M[c, f], M[d, h]]]

    return _composite(
        label, [inner.size] * 4, [1, 0, 0, 1], add_fn, mul_fn,
        lambda c: "[[{},{}],[{},{}]]".format(*(inner.names[i] for i in c)),
    )


def _upper_tri2(label: str, inner: FiniteRing) -> FiniteRing:
    A, M = inner.add_table, inner.mul_table

    def add_fn(x: list, y: list) -> list:
        return [A[x[i], y[i]] for i in range(3)]

    def mul_fn(x: list, y: list) -> list:
        a, b, c = x
        d, e, f = y
        return [M[a, d], A[M[a, e], M[b, f]], M[c, f]]

    return _composite(
        label, [inner.size] * 3, [1, 0, 1], add_fn, mul_fn,
        lambda c: "({},{},{})".format(*(inner.names[i] for i in c)),
    )


def _dual(label: str, inner: FiniteRing) -> FiniteRing:
    A, M = inner.add_table, inner.mul_table

    def add_fn(x: list, y: list) -> list:
        return [A[x[0], y[0]], A[x[1], y[1]]]

    def mul_fn(x: list, y: list) -> list:
        a, b = x
        c, d = y
        return [M[a, c], A[M[a, d], M[b, c]]]

    return _composite(
        label, [inner.size] * 2, [1, 0], add_fn, mul_fn,
        lambda c: "{}+{}e".format(*(inner.names[i] for i in c)),
    )


def _product(label: str, left: FiniteRing, right: FiniteRing) -> FiniteRing:
    tables = [(left.add_table, left.mul_table), (right.add_table, right.mul_table)]

    def add_fn(x: list, y: list) -> list:
        return [tables[i][0][x[i], y[i]] for i in range(2)]

    def mul_fn(x: list, y: list) -> list:
        return [tables[i][1][x[i], y[i]] for i in range(2)]

    return _composite(
        label, [left.size, right.size], [1, 1], add_fn, mul_fn,
        lambda c: f"({left.names[c[0]]},{right.names[c[1]]})",
    )


@lru_cache(maxsize=None)
def _build(expr: RingExpr) -> FiniteRing:
    label = expr.to_spec()
    if isinstance(expr, ZmodExpr):
        return _zmod(expr.n)
    if isinstance(expr, GFExpr):
        return _gf(expr)
    if isinstance(expr, Mat2RingExpr):
        return _mat2_ring(label, _build(expr.inner))
    if isinstance(expr, UpperTri2Expr):
        return _upper_tri2(label, _build(expr.inner))
    if isinstance(expr, DualExpr):
        return _dual(label, _build(expr.inner))
    if isinstance(expr, ProductExpr):
        return _product(label, _build(expr.left), _build(expr.right))
    raise TypeError(f"未知的語法樹節點: {type(expr).__name__}")


def build_ring(expr: RingExpr, cap: Optional[int] = None) -> FiniteRing:
    """
    由語法樹建構有限環

    相同的語法樹回傳同一個環物件。

    Args:
        expr: 環的語法樹
        cap: 元素個數上限，預設為 settings.ring_size_cap

    Returns:
        FiniteRing: 環物件

    Raises:
        ResourceCapError: 元素個數超過上限
    """
    cap = cap or settings.ring_size_cap
    if expr.size() > cap:
        raise ResourceCapError("ring size", cap, expr.size())
    ring = _build(expr)
    logger.debug("建構環 {}：{} 個元素、{} 個單位", ring.label, ring.size, len(ring.unit_set))
    return ring


def ring_from_spec(text: str, cap: Optional[int] = None) -> FiniteRing:
    """剖析並建構環"""
    return build_ring(parse_ring_spec(text), cap)


def characteristic(ring: FiniteRing) -> int:
    """1 的加法階"""
    order, acc = 1, 1
    while acc != 0:
        acc = ring.add[acc][1]
        order += 1
    return order


def additive_order(ring: FiniteRing, x: int) -> int:
    order, acc = 1, x
    while acc != 0:
        acc = ring.add[acc][x]
        order += 1
    return order


# ==================== 公理與條件 ====================


def _first(mask: np.ndarray) -> Optional[list[int]]:
    hits = np.argwhere(mask)
    return [int(i) for i in hits[0]] if len(hits) else None


def _associativity_witness(table: np.ndarray) -> Optional[list[int]]:
    n = table.shape[0]
    cols = np.arange(n)[None, :]
    for a in range(n):
        lhs = table[table[a][:, None], cols]
        rhs = table[a][table]
        bad = _first(lhs != rhs)
        if bad is not None:
            return [a, *bad]
    return None


def check_ring_axioms(ring: FiniteRing) -> AxiomReport:
    """
    以三重窮舉檢查環公理

    每條公理回報通過與否及第一個反例，失敗不會拋出例外。

    Args:
        ring: 待檢查的環

    Returns:
        AxiomReport: 檢查報表
    """
    A, M, N = ring.add_table, ring.mul_table, ring.neg_table
    n = ring.size
    r = np.arange(n)
    checks = [
        AxiomCheck(name="add_associative", passed=False, witness=_associativity_witness(A)),
        AxiomCheck(name="add_commutative", passed=False, witness=_first(A != A.T)),
        AxiomCheck(name="add_identity", passed=False, witness=_first((A[0] != r) | (A[:, 0] != r))),
        AxiomCheck(name="add_inverse", passed=False, witness=_first(A[r, N] != 0)),
        AxiomCheck(name="mul_associative", passed=False, witness=_associativity_witness(M)),
        AxiomCheck(name="mul_identity", passed=False, witness=_first((M[1] != r) | (M[:, 1] != r))),
    ]
    left = right = None
    for a in range(n):
        if left is None:
            bad = _first(M[a][A] != A[M[a][:, None], M[a][None, :]])
            left = [a, *bad] if bad is not None else None
        if right is None:
            bad = _first(M[A, a] != A[M[:, a][:, None], M[:, a][None, :]])
            right = [a, *bad] if bad is not None else None
    checks.append(AxiomCheck(name="left_distributive", passed=False, witness=left))
    checks.append(AxiomCheck(name="right_distributive", passed=False, witness=right))
    checks.append(AxiomCheck(name="one_neq_zero", passed=False, witness=None if n > 1 else [0]))

    ones = M == 1
    invertible = (ones & ones.T).any(axis=1)
    unit_mask = np.isin(r, list(ring.unit_set))
    bad_unit = _first(invertible != unit_mask)
    if bad_unit is None:
        for u, v in ring.inv_table.items():
            if M[u, v] != 1 or M[v, u] != 1:
                bad_unit = [u]
                break
    checks.append(AxiomCheck(name="units_consistent", passed=False, witness=bad_unit))
    closed = None
    if 1 not in ring.unit_set:
        closed = [1]
    for u in ring.units:
        if closed is not None:
            break
        if ring.inv_table[u] not in ring.unit_set:
            closed = [u]
        for v in ring.units:
            if ring.mul[u][v] not in ring.unit_set:
                closed = [u, v]
                break
    checks.append(AxiomCheck(name="units_closed", passed=False, witness=closed))

    for check in checks:
        check.passed = check.witness is None
    noncommutative = _first(M != M.T)
    report = AxiomReport(
        ring=ring.label,
        size=n,
        checks=checks,
        commutative=noncommutative is None,
        noncommutative_witness=noncommutative,
    )
    if not report.passed:
        logger.warning("環 {} 未通過公理: {}", ring.label, [c.name for c in report.failures()])
    return report


def _pad_witness(chosen: list[int]) -> list[int]:
    return (chosen + [chosen[-1]] * 5)[:5]


def check_condition_five_units(ring: FiniteRing, exhaustive_cap: Optional[int] = None) -> ConditionVerdict:
    """
    條件 (i)：任給 x1..x5，存在 x 使 x-x1,...,x-x5 皆為單位

    條件不成立恰好當非單位集合的 5 個平移覆蓋整個環，因此以集合覆蓋
    搜尋判定。|R|^5 不超過上限時搜尋為窮舉；超過時改用貪婪覆蓋，
    找不到阻擋元組就回報無法判定。

    Args:
        ring: 環
        exhaustive_cap: 窮舉上限，預設為 settings.exhaustive_cap

    Returns:
        ConditionVerdict: 判定結果；不成立時附上阻擋的五元組
    """
    cap = exhaustive_cap or settings.exhaustive_cap
    nonunits = [x for x in ring.elements() if x not in ring.unit_set]
    universe = (1 << ring.size) - 1
    translates = []
    for x in ring.elements():
        mask = 0
        for y in nonunits:
            mask |= 1 << ring.add[x][y]
        translates.append(mask)
    if ring.size**5 <= cap:
        cover = find_cover(universe, translates, 5)
        if cover is None:
            return ConditionVerdict(holds=True, witness=None, exhaustive=True)
        return ConditionVerdict(holds=False, witness=_pad_witness(cover), exhaustive=True)
    cover = greedy_cover(universe, translates, 5, settings.cover_restarts, settings.seed)
    if cover is None:
        logger.warning("環 {} 的條件 (i) 超過窮舉上限且未找到阻擋元組，無法判定", ring.label)
        return ConditionVerdict(holds=None, witness=None, exhaustive=False)
    return ConditionVerdict(holds=False, witness=_pad_witness(cover), exhaustive=False)


def check_two_unit(ring: FiniteRing) -> bool:
    """條件 (ii)：1+1 是單位"""
    return ring.add[1][1] in ring.unit_set


# ==================== 環之間的映射 ====================


@dataclass(frozen=True)
class AddUnitalMap:
    """
    保加法且保單位的映射

    建構時驗證 image[0]=0、image[1]=1 與加法性，失敗時拋出
    MapValidationError。
    """

    source: FiniteRing
    target: FiniteRing
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.image) != self.source.size:
            raise MapValidationError(f"映射表長度 {len(self.image)} 與來源大小 {self.source.size} 不符")
        if self.image[0] != 0 or self.image[1] != 1:
            raise MapValidationError("映射未將 0 映至 0、1 映至 1")
        img = self.array
        bad = _first(img[self.source.add_table] != self.target.add_table[img[:, None], img[None, :]])
        if bad is not None:
            raise MapValidationError(f"映射在 {bad} 不保持加法")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return self.image[x]


def is_jordan(alpha: AddUnitalMap) -> bool:
    """(xyx)^α = x^α y^α x^α 對所有 x, y"""
    img = alpha.array
    M, T = alpha.source.mul_table, alpha.target.mul_table
    lhs = img[M[M, np.arange(alpha.source.size)[:, None]]]
    rhs = T[T[img[:, None], img[None, :]], img[:, None]]
    return bool(np.array_equal(lhs, rhs))


@dataclass(frozen=True)
class JordanMap(AddUnitalMap):
    """另外滿足 Jordan 三元條件的保加法保單位映射"""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not is_jordan(self):
            raise MapValidationError("映射不滿足 (xyx)^α = x^α y^α x^α")


def is_ring_homomorphism(alpha: AddUnitalMap) -> bool:
    """(xy)^α = x^α y^α"""
    img = alpha.array
    return bool(np.array_equal(img[alpha.source.mul_table], alpha.target.mul_table[img[:, None], img[None, :]]))


def is_antihomomorphism(alpha: AddUnitalMap) -> bool:
    """(xy)^α = y^α x^α"""
    img = alpha.array
    return bool(np.array_equal(img[alpha.source.mul_table], alpha.target.mul_table[img[None, :], img[:, None]]))


def satisfies_symmetric_product(alpha: AddUnitalMap) -> bool:
    """(xy+yx)^α = x^α y^α + y^α x^α"""
    img = alpha.array
    A, M = alpha.source.add_table, alpha.source.mul_table
    TA, TM = alpha.target.add_table, alpha.target.mul_table
    lhs = img[A[M, M.T]]
    rhs = TA[TM[img[:, None], img[None, :]], TM[img[None, :], img[:, None]]]
    return bool(np.array_equal(lhs, rhs))


def preserves_inverses(alpha: AddUnitalMap) -> bool:
    """對所有單位 x：x^α 是單位且 (x^α)^-1 = (x^-1)^α"""
    target = alpha.target
    for x in alpha.source.units:
        image = alpha(x)
        if image not in target.unit_set:
            return False
        if target.inverse(image) != alpha(alpha.source.inverse(x)):
            return False
    return True


def additive_generators(ring: FiniteRing) -> list[int]:
    """
    加法群的暴力生成集

    以 1 起頭，之後每次加入尚未生成、加法階最大（同階取索引最小）的元素。
    """
    generators = [1]
    span = _span(ring, [0], 1)
    while len(span) < ring.size:
        inside = set(span)
        candidates = [x for x in ring.elements() if x not in inside]
        g = max(candidates, key=lambda x: (additive_order(ring, x), -x))
        generators.append(g)
        span = _span(ring, span, g)
    return generators


def _span(ring: FiniteRing, span: list[int], g: int) -> list[int]:
    inside = set(span)
    result = list(span)
    frontier = list(span)
    while frontier:
        fresh = []
        for s in frontier:
            t = ring.add[s][g]
            if t not in inside:
                inside.add(t)
                result.append(t)
                fresh.append(t)
        frontier = fresh
    return result


def enumerate_additive_unital_maps(
    source: FiniteRing,
    target: FiniteRing,
    gen_cap: Optional[int] = None,
    target_cap: Optional[int] = None,
) -> Iterator[AddUnitalMap]:
    """
    列舉所有保加法且 1 映至 1 的映射

    依序為每個加法生成元 g 選擇像 y：若 m 是使 m·g 落入既有生成子群的
    最小正整數，相容條件為 m·y = φ(m·g)。

    Raises:
        ResourceCapError: 生成元個數或目標大小超過上限
    """
    gen_cap = gen_cap or settings.additive_gen_cap
    target_cap = target_cap or settings.jordan_target_cap
    if target.size > target_cap:
        raise ResourceCapError("jordan target size", target_cap, target.size)
    generators = additive_generators(source)
    if len(generators) > gen_cap:
        raise ResourceCapError("additive generators", gen_cap, len(generators))

    TA = target.add_table
    partials = [np.full(source.size, -1, dtype=np.int64)]
    partials[0][0] = 0
    span = [0]
    for step, g in enumerate(generators):
        inside = set(span)
        m, acc = 1, g
        while acc not in inside:
            acc = source.add[acc][g]
            m += 1
        anchor = acc
        new_elems, bases, shifts = [], [], []
        for s in span:
            t = s
            for j in range(1, m):
                t = source.add[t][g]
                new_elems.append(t)
                bases.append(s)
                shifts.append(j)
        new_elems_a = np.asarray(new_elems, dtype=np.int64)
        bases_a = np.asarray(bases, dtype=np.int64)
        shifts_a = np.asarray(shifts, dtype=np.int64)
        candidates = [1] if step == 0 else list(target.elements())
        extended = []
        for phi in partials:
            for y in candidates:
                if target.multiple(y, m) != phi[anchor]:
                    continue
                multiples = np.asarray([target.multiple(y, j) for j in range(m)], dtype=np.int64)
                nxt = phi.copy()
                if len(new_elems):
                    nxt[new_elems_a] = TA[phi[bases_a], multiples[shifts_a]]
                extended.append(nxt)
        partials = extended
        span = span + new_elems
    for phi in sorted(partials, key=lambda a: tuple(a.tolist())):
        yield AddUnitalMap(source, target, tuple(int(v) for v in phi))


def enumerate_jordan_homomorphisms(
    source: FiniteRing,
    target: FiniteRing,
    gen_cap: Optional[int] = None,
    target_cap: Optional[int] = None,
    via: Literal["jordan", "symmetric"] = "jordan",
) -> list[AddUnitalMap]:
    """
    列舉所有 Jordan 同態 source -> target

    先列舉保加法保單位映射，再以三元條件過濾；結果依映射表排序。
    via="symmetric" 時改以 (xy+yx) 恆等式過濾並回傳未經 Jordan 驗證的映射，
    2 在兩環皆為單位時兩份列表相同。

    Args:
        source: 來源環
        target: 目標環
        gen_cap: 加法生成元個數上限
        target_cap: 目標環大小上限

    Returns:
        list[JordanMap]: 完整列表，包含所有環同態與反同態

    Raises:
        ResourceCapError: 超過列舉上限
    """
    candidates = enumerate_additive_unital_maps(source, target, gen_cap, target_cap)
    result: list[AddUnitalMap]
    if via == "symmetric":
        result = [m for m in candidates if satisfies_symmetric_product(m)]
    else:
        result = [JordanMap(m.source, m.target, m.image) for m in candidates if is_jordan(m)]
    logger.info("{} -> {}：{} 個 Jordan 同態", source.label, target.label, len(result))
    return result


def identity_map(ring: FiniteRing) -> JordanMap:
    return JordanMap(ring, ring, tuple(ring.elements()))

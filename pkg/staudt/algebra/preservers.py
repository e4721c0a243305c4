# staudt/algebra/preservers.py - 調和保持映射：由 Jordan 同態建構、窮舉分類、重建與定理驗證
import itertools
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from loguru import logger

from staudt.algebra.harmonic import harmonic_completions, harmonic_set
from staudt.algebra.mat2 import (
    Entries,
    GeneratedGroup,
    Mat2,
    Row,
    Word,
    algebra_of,
    alpha_double_star,
    enumerate_GL2,
    generate_E2,
    is_invertible,
    mat_identity,
)
from staudt.algebra.projline import (
    DistantGraph,
    ProjectiveLine,
    build_distant_graph,
    check_condition_i_prime,
    completion_row,
    components,
    enumerate_points,
)
from staudt.algebra.ring_core import (
    AddUnitalMap,
    FiniteRing,
    JordanMap,
    check_condition_five_units,
    check_two_unit,
    is_antihomomorphism,
    is_ring_homomorphism,
    preserves_inverses,
)
from staudt.schemas.verify_schemas import (
    ConditionsBlock,
    CountsBlock,
    JordanMapEntry,
    MatchEntry,
    VerifyReport,
)
from staudt.settings import settings
from staudt.utils.errors import (
    FalsificationError,
    MapValidationError,
    PreconditionError,
    ResourceCapError,
)


@dataclass(frozen=True)
class PointMap:
    """
    射影直線之間的映射；image[p] 為 None 表示 p 不在定義域
    """

    source: ProjectiveLine = field(repr=False)
    target: ProjectiveLine = field(repr=False)
    image: tuple[Optional[int], ...]

    def __call__(self, point: int) -> Optional[int]:
        return self.image[point]

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.image)

    def domain(self) -> list[int]:
        return [p for p, v in enumerate(self.image) if v is not None]

    def restrict(self, points: Iterable[int]) -> "PointMap":
        keep = set(points)
        return PointMap(
            self.source,
            self.target,
            tuple(v if p in keep else None for p, v in enumerate(self.image)),
        )

    def agrees_on(self, other: "PointMap", points: Iterable[int]) -> bool:
        return all(self.image[p] == other.image[p] for p in points)


@dataclass(frozen=True)
class JordanInducedData:
    """
    由 Jordan 映射與兩組基底誘導的資料

    source_basis 的列為 (a0, a1)，target_basis 的列為 (a0', a1')，
    皆以標準基底座標表示。component 須包含 R·a0。
    """

    alpha: AddUnitalMap
    source_basis: Mat2
    target_basis: Mat2
    component: frozenset[int]

    def __post_init__(self) -> None:
        if is_invertible(self.source_basis) is None or is_invertible(self.target_basis) is None:
            raise PreconditionError("基底矩陣必須可逆")
        if self.source_basis.ring is not self.alpha.source or self.target_basis.ring is not self.alpha.target:
            raise PreconditionError("基底矩陣與 Jordan 映射的環不一致")
        base = enumerate_points(self.alpha.source).locate(self.source_basis.first_row())
        if base not in self.component:
            raise PreconditionError(f"R·a0 = 點 {base} 不在分量中")


@dataclass
class ClassificationResult:
    """所有調和保持映射及其 Jordan 重建結果"""

    source: ProjectiveLine = field(repr=False)
    target: ProjectiveLine = field(repr=False)
    preservers: list[PointMap]
    search_nodes: int
    # matches[i][j]：第 i 個保持映射在第 j 個分量上的重建
    matches: dict[int, dict[int, Optional[JordanInducedData]]] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.preservers)


# ==================== 由 Jordan 同態建構 ====================


def _line(ring: FiniteRing) -> ProjectiveLine:
    return enumerate_points(ring)


@lru_cache(maxsize=64)
def _word_images(alpha: AddUnitalMap, group: GeneratedGroup) -> dict[int, Entries]:
    """每個 E2 元素 E(T) 對應的 E(T^α)，沿 BFS 父連結遞推"""
    target = algebra_of(alpha.target)
    order = group.order
    images = {order[0]: target.identity}
    for key in order[1:]:
        prev, gen = group.parent[key]
        images[key] = target.right_e(images[prev], alpha(group.labels[gen]))
    return images


def _basis_point(line: ProjectiveLine, coords: Row, basis: Mat2) -> int:
    """座標 coords 相對於 basis 的點"""
    return line.locate(algebra_of(line.ring).row_times(coords, basis.entries))


def mu_from_jordan(data: JordanInducedData, e2: Optional[GeneratedGroup] = None) -> PointMap:
    """
    分量上的 μ：R((1,0)E(T)·A) -> R'((1,0)E(T^α)·B)

    每個點使用 BFS 中最先抵達它的 E2 元素的見證字（空字對應 R·a0 -> R'·a0'）。

    Args:
        data: Jordan 誘導資料
        e2: 預先生成的 E2(R)

    Returns:
        PointMap: 定義域恰為字分量的部分映射

    Raises:
        PreconditionError: 字分量與 data.component 不同
    """
    alpha = data.alpha
    group = e2 if e2 is not None else generate_E2(alpha.source)
    source, target = _line(alpha.source), _line(alpha.target)
    images = _word_images(alpha, group)
    alg = algebra_of(alpha.source)
    result: list[Optional[int]] = [None] * source.size
    for key in group.order:
        p = _basis_point(source, alg.unkey(key)[:2], data.source_basis)
        if result[p] is None:
            result[p] = _basis_point(target, images[key][:2], data.target_basis)
    domain = {p for p, v in enumerate(result) if v is not None}
    if domain != set(data.component):
        raise PreconditionError(f"字分量 {sorted(domain)} 與指定分量 {sorted(data.component)} 不同")
    return PointMap(source, target, tuple(result))


def find_mu_conflict(
    data: JordanInducedData,
    e2: Optional[GeneratedGroup] = None,
    samples: Optional[int] = None,
    length: Optional[int] = None,
    seed: Optional[int] = None,
) -> Optional[tuple[Word, Word]]:
    """
    搜尋給出同一個點、卻給出不同像點的兩個字

    先走遍 E2 的所有元素，再以隨機字（長度至多 length）重新推導。

    Returns:
        Optional[tuple[Word, Word]]: 衝突的兩個字；良定義時為 None
    """
    alpha = data.alpha
    group = e2 if e2 is not None else generate_E2(alpha.source)
    source, target = _line(alpha.source), _line(alpha.target)
    images = _word_images(alpha, group)
    src_alg, tgt_alg = algebra_of(alpha.source), algebra_of(alpha.target)
    first: dict[int, tuple[int, int]] = {}
    for key in group.order:
        p = _basis_point(source, src_alg.unkey(key)[:2], data.source_basis)
        q = _basis_point(target, images[key][:2], data.target_basis)
        seen = first.setdefault(p, (key, q))
        if seen[1] != q:
            return (group.witness(seen[0]), group.witness(key))

    rng = random.Random(settings.seed if seed is None else seed)
    elements = list(alpha.source.elements())
    for _ in range(settings.word_samples if samples is None else samples):
        word = tuple(rng.choice(elements) for _ in range(rng.randint(0, length or settings.word_length)))
        x = src_alg.eval_word(word)
        y = tgt_alg.eval_word(alpha(t) for t in word)
        p = _basis_point(source, x[:2], data.source_basis)
        q = _basis_point(target, y[:2], data.target_basis)
        if p not in first:
            return (word, word)
        if first[p][1] != q:
            return (group.witness(first[p][0]), word)
    return None


def verify_mu_well_defined(data: JordanInducedData, e2: Optional[GeneratedGroup] = None) -> bool:
    """
    μ 的良定義性與分量上的調和保持性

    Returns:
        bool: 兩項皆成立時為 True；失敗時記錄見證字
    """
    conflict = find_mu_conflict(data, e2)
    if conflict is not None:
        logger.error("μ 不是良定義：字 {} 與 {} 給出不同的像", *conflict)
        return False
    mu = mu_from_jordan(data, e2)
    if not is_harmonicity_preserver(mu):
        logger.error("μ 在分量上不保持調和性")
        return False
    return True


def _default_basis(ring: FiniteRing, basis: Optional[Mat2]) -> Mat2:
    return basis if basis is not None else mat_identity(ring)


def lambda_from_hom(
    alpha: AddUnitalMap,
    source_basis: Optional[Mat2] = None,
    target_basis: Optional[Mat2] = None,
) -> PointMap:
    """
    λ：R(x0 e0 + x1 e1) -> R'(x0^α e0' + x1^α e1')

    Raises:
        MapValidationError: α 不是環同態
    """
    if not is_ring_homomorphism(alpha):
        raise MapValidationError("λ 需要環同態")
    source, target = _line(alpha.source), _line(alpha.target)
    basis = _default_basis(alpha.source, source_basis)
    target_b = _default_basis(alpha.target, target_basis)
    inverse = is_invertible(basis)
    if inverse is None:
        raise PreconditionError("來源基底矩陣不可逆")
    alg = algebra_of(alpha.source)
    image = []
    for rep in source.points:
        c0, c1 = alg.row_times(rep, inverse.entries)
        image.append(_basis_point(target, (alpha(c0), alpha(c1)), target_b))
    return PointMap(source, target, tuple(image))


def delta_from_antihom(
    alpha: AddUnitalMap,
    source_basis: Optional[Mat2] = None,
    target_basis: Optional[Mat2] = None,
    gl2_cap: Optional[int] = None,
) -> PointMap:
    """
    δ：以第一列生成該點的任一 X ∈ GL2，取 X^{α**} 的第一列

    |R| 不超過 gl2_cap 時檢查所有 X；否則對補全矩陣 X0 檢查
    diag(u,1)·X0、((1,0),(s,1))·X0 與 diag(1,v)·X0。

    Raises:
        MapValidationError: α 不是反同態
        FalsificationError: 像點與 X 的選擇有關
    """
    if not is_antihomomorphism(alpha):
        raise MapValidationError("δ 需要反同態")
    ring = alpha.source
    source, target = _line(ring), _line(alpha.target)
    basis = _default_basis(ring, source_basis)
    target_b = _default_basis(alpha.target, target_basis)
    inverse = is_invertible(basis)
    if inverse is None:
        raise PreconditionError("來源基底矩陣不可逆")
    alg = algebra_of(ring)

    def image_of(x: Entries) -> int:
        first = alpha_double_star(Mat2.of(ring, x), alpha).first_row()
        return _basis_point(target, first, target_b)

    image: list[Optional[int]] = [None] * source.size
    witness: dict[int, Entries] = {}

    def record(point: int, x: Entries) -> None:
        value = image_of(x)
        if image[point] is None:
            image[point], witness[point] = value, x
        elif image[point] != value:
            raise FalsificationError(
                f"δ 與 X 的選擇有關：{witness[point]} 與 {x}",
                [list(witness[point]), list(x)],
            )

    cap = gl2_cap or settings.gl2_cap
    if ring.size <= cap:
        for key in sorted(enumerate_GL2(ring, cap)):
            x = alg.unkey(key)
            record(source.locate(alg.row_times(x[:2], basis.entries)), x)
    else:
        for p, rep in enumerate(source.points):
            coords = alg.row_times(rep, inverse.entries)
            x0 = (*coords, *completion_row(ring, coords))
            variants = [alg.mul((u, 0, 0, 1), x0) for u in ring.units]
            variants += [alg.mul((1, 0, s, 1), x0) for s in ring.elements()]
            variants += [alg.mul((1, 0, 0, v), x0) for v in ring.units]
            for x in variants:
                record(p, x)
    return PointMap(source, target, tuple(image))


def bartolone_image(
    alpha: AddUnitalMap,
    t1: int,
    t2: int,
    source_basis: Optional[Mat2] = None,
    target_basis: Optional[Mat2] = None,
) -> tuple[Optional[int], Optional[int]]:
    """
    R((t1 t2 - 1)e0 + t1 e1) -> R'((t1^α t2^α - 1)e0' + t1^α e1')

    Returns:
        tuple: (來源點, 目標點)；來源座標不是 admissible 時為 (None, None)
    """
    src, tgt = alpha.source, alpha.target
    source, target = _line(src), _line(tgt)
    basis = _default_basis(src, source_basis)
    target_b = _default_basis(tgt, target_basis)
    coords = (src.sub(src.mul[t1][t2], 1), t1)
    a1, a2 = alpha(t1), alpha(t2)
    image_coords = (tgt.sub(tgt.mul[a1][a2], 1), a1)
    point = source.find(algebra_of(src).row_times(coords, basis.entries))
    if point is None:
        logger.debug("({}, {}) 給出非 admissible 座標 {}", t1, t2, coords)
        return (None, None)
    return (point, target.locate(algebra_of(tgt).row_times(image_coords, target_b.entries)))


def bartolone_sweep(
    alpha: AddUnitalMap,
    source_basis: Optional[Mat2] = None,
    target_basis: Optional[Mat2] = None,
) -> dict[int, set[int]]:
    """走遍所有 (t1, t2)，收集來源點到像點的關係"""
    relation: dict[int, set[int]] = {}
    for t1 in alpha.source.elements():
        for t2 in alpha.source.elements():
            p, q = bartolone_image(alpha, t1, t2, source_basis, target_basis)
            if p is not None:
                relation.setdefault(p, set()).add(q)
    return relation


def induced_by_matrix(line: ProjectiveLine, matrix: Mat2) -> PointMap:
    """射影變換 R·a -> R·(a G)"""
    alg = algebra_of(line.ring)
    return PointMap(line, line, tuple(line.locate(alg.row_times(rep, matrix.entries)) for rep in line.points))


# ==================== 判定 ====================


def is_harmonicity_preserver(m: PointMap) -> bool:
    """定義域內的每個調和四元組都映至調和四元組"""
    target_quads = harmonic_set(m.target)
    image = m.image
    for quad in harmonic_set(m.source):
        mapped = tuple(image[p] for p in quad)
        if None in mapped:
            continue
        if mapped not in target_quads:
            return False
    return True


def is_distant_preserving(m: PointMap) -> bool:
    """p △ q 蘊含 p^μ △ q^μ"""
    source = build_distant_graph(m.source)
    target = build_distant_graph(m.target)
    for p, q in source.edges():
        a, b = m.image[p], m.image[q]
        if a is not None and b is not None and not target.distant(a, b):
            return False
    return True


# ==================== 分類搜尋 ====================


class _NodeBudget:
    """各子樹共用的節點計數器；任何一個子樹超支時立即停止"""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def spend(self) -> None:
        with self._lock:
            self.used += 1
            used = self.used
        if used > self.limit:
            raise ResourceCapError("search nodes", self.limit, used)


class _Search:
    """
    回溯搜尋：依固定順序為來源點指派像點，並以遠離性與調和完成點傳播
    """

    def __init__(self, source: ProjectiveLine, target: ProjectiveLine, order: list[int], budget: _NodeBudget):
        self.order = order
        self.budget = budget
        self.nodes = 0
        self.n_target = target.size
        sgraph = build_distant_graph(source)
        self.s_nbrs = [sorted(sgraph.neighbors[p]) for p in range(source.size)]
        self.t_adj = build_distant_graph(target).adjacency.tolist()
        self.t_harm = harmonic_set(target)
        self.t_fourth, self.t_third = harmonic_completions(target)
        self.quads_by_point: list[list[tuple[int, ...]]] = [[] for _ in range(source.size)]
        for quad in sorted(harmonic_set(source)):
            for p in set(quad):
                self.quads_by_point[p].append(quad)
        self.image = [-1] * source.size
        self.trail: list[int] = []
        self.leaves: list[tuple[int, ...]] = []

    def assign(self, point: int, value: int) -> bool:
        image = self.image
        stack = [(point, value)]
        while stack:
            p, v = stack.pop()
            if image[p] >= 0:
                if image[p] != v:
                    return False
                continue
            row = self.t_adj[v]
            for q in self.s_nbrs[p]:
                w = image[q]
                if w >= 0 and not row[w]:
                    return False
            image[p] = v
            self.trail.append(p)
            for quad in self.quads_by_point[p]:
                mapped = [image[x] for x in quad]
                missing = [i for i in range(4) if mapped[i] < 0]
                if not missing:
                    if tuple(mapped) not in self.t_harm:
                        return False
                elif len(missing) == 1 and missing[0] >= 2:
                    if missing[0] == 3:
                        forced = self.t_fourth.get((mapped[0], mapped[1], mapped[2]))
                    else:
                        forced = self.t_third.get((mapped[0], mapped[1], mapped[3]))
                    if forced is None:
                        return False
                    stack.append((quad[missing[0]], forced))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.image[self.trail.pop()] = -1

    def try_assign(self, point: int, value: int) -> bool:
        self.nodes += 1
        self.budget.spend()
        return self.assign(point, value)

    def search(self, depth: int = 0) -> None:
        while depth < len(self.order) and self.image[self.order[depth]] >= 0:
            depth += 1
        if depth == len(self.order):
            self.leaves.append(tuple(self.image))
            return
        point = self.order[depth]
        for value in range(self.n_target):
            mark = len(self.trail)
            if self.try_assign(point, value):
                self.search(depth + 1)
            self.undo(mark)


def _search_order(source: ProjectiveLine) -> list[int]:
    """以最小的調和四元組為種子，其餘依度數遞減、編號遞增"""
    graph = build_distant_graph(source)
    quads = sorted(harmonic_set(source))
    order: list[int] = []
    if quads:
        for p in quads[0]:
            if p not in order:
                order.append(p)
    rest = sorted((p for p in range(source.size) if p not in order), key=lambda p: (-graph.degree(p), p))
    return order + rest


def classify_preservers(
    source: ProjectiveLine,
    target: ProjectiveLine,
    node_budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> ClassificationResult:
    """
    窮舉所有（全域定義的）調和保持映射

    第一個點的每個候選像是獨立子樹，可平行搜尋；結果依像表排序，
    與執行緒排程無關。節點數為各子樹節點數之和；所有子樹共用同一份預算，
    總數一超過即拋出例外。

    Args:
        source: 來源直線
        target: 目標直線
        node_budget: 節點預算，預設為 settings.node_budget
        threads: 執行緒數，預設為 settings.threads

    Returns:
        ClassificationResult: 分類結果

    Raises:
        ResourceCapError: 超過節點預算
    """
    budget = _NodeBudget(node_budget or settings.node_budget)
    threads = threads or settings.threads
    order = _search_order(source)
    # 先建好共用的快取，避免執行緒間重複計算
    harmonic_completions(target)
    harmonic_set(source)

    def run(value: int) -> tuple[int, list[tuple[int, ...]]]:
        search = _Search(source, target, order, budget)
        if search.try_assign(order[0], value):
            search.search(1)
        return search.nodes, search.leaves

    values = range(target.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, values))
    else:
        outcomes = [run(v) for v in values]
    nodes = sum(n for n, _ in outcomes)
    leaves = sorted(leaf for _, found in outcomes for leaf in found)
    preservers = [PointMap(source, target, leaf) for leaf in leaves]
    for m in preservers:
        if not is_harmonicity_preserver(m):
            raise FalsificationError(f"搜尋葉節點 {m.image} 不保持調和性", list(m.image))
    logger.info("P({}) -> P({})：{} 個調和保持映射，{} 個節點", source.ring.label, target.ring.label, len(preservers), nodes)
    return ClassificationResult(source, target, preservers, nodes)


def filter_preservers(
    source: ProjectiveLine, target: ProjectiveLine, cap: Optional[int] = None
) -> list[PointMap]:
    """
    原始過濾神諭：檢查所有 |target|^|source| 個映射

    Raises:
        ResourceCapError: 映射數超過 oracle_cap
    """
    cap = cap or settings.oracle_cap
    total = target.size**source.size
    if total > cap:
        raise ResourceCapError("oracle maps", cap, total)
    result = []
    for image in itertools.product(range(target.size), repeat=source.size):
        m = PointMap(source, target, image)
        if is_harmonicity_preserver(m):
            result.append(m)
    return result


# ==================== Jordan 資料的重建 ====================


def read_coordinate_map(m: PointMap, source_basis: Mat2, target_basis: Mat2) -> Optional[tuple[int, ...]]:
    """
    讀出座標映射 β：(R(x a0 + a1))^μ = R'(x^β a0' + a1')

    Returns:
        Optional[tuple[int, ...]]: β 的映射表；某個像不是此形式時為 None
    """
    src, tgt = m.source.ring, m.target.ring
    src_alg, tgt_alg = algebra_of(src), algebra_of(tgt)
    inverse = is_invertible(target_basis)
    if inverse is None:
        return None
    table = []
    for x in src.elements():
        point = m.source.locate(src_alg.row_times((x, 1), source_basis.entries))
        q = m.image[point]
        if q is None:
            return None
        c0, c1 = tgt_alg.row_times(m.target.points[q], inverse.entries)
        if not tgt.is_unit(c1):
            return None
        table.append(tgt.mul[tgt.inverse(c1)][c0])
    return tuple(table)


def check_base_change(m: PointMap, data: JordanInducedData, t: int) -> bool:
    """
    以 (f0, f1) = (t a0 + a1, -a0)、(f0', f1') = (t^α a0' + a1', -a0') 換基底後，
    座標映射不變
    """
    alpha = data.alpha
    src, tgt = algebra_of(alpha.source), algebra_of(alpha.target)
    f = Mat2.of(alpha.source, src.mul(src.elementary(t), data.source_basis.entries))
    f_prime = Mat2.of(alpha.target, tgt.mul(tgt.elementary(alpha(t)), data.target_basis.entries))
    return read_coordinate_map(m, f, f_prime) == alpha.image


def assemble_preserver(parts: Sequence[PointMap]) -> PointMap:
    """
    把各分量上的部分映射黏合成一個映射

    Raises:
        PreconditionError: 部分映射的直線不一致或在重疊處不一致
    """
    if not parts:
        raise PreconditionError("沒有可黏合的部分映射")
    source, target = parts[0].source, parts[0].target
    image: list[Optional[int]] = [None] * source.size
    for part in parts:
        if part.source is not source or part.target is not target:
            raise PreconditionError("部分映射屬於不同的直線")
        for p, v in enumerate(part.image):
            if v is None:
                continue
            if image[p] is not None and image[p] != v:
                raise PreconditionError(f"點 {p} 的像不一致: {image[p]} 與 {v}")
            image[p] = v
    return PointMap(source, target, tuple(image))


def _target_basis(m: PointMap, a: Mat2, p0: int) -> Optional[Mat2]:
    """找 (a0', a1') 使 p0..p3 的像依序為 R'a0'、R'a1'、R'(a0'+a1')、R'(a0'-a1')"""
    source, target = m.source, m.target
    ring = target.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    (r0, r1), (s0, s1) = a.rows
    src = source.ring
    p1 = source.locate((s0, s1))
    p2 = source.locate((src.add[r0][s0], src.add[r1][s1]))
    p3 = source.locate((src.sub(r0, s0), src.sub(r1, s1)))
    q0, q1, q2, q3 = (m.image[p] for p in (p0, p1, p2, p3))
    if None in (q0, q1, q2, q3):
        return None
    b0 = target.points[q0]
    rep1 = target.points[q1]
    alg = algebra_of(ring)
    for w in ring.units:
        b1 = (mul[w][rep1[0]], mul[w][rep1[1]])
        plus = (add[b0[0]][b1[0]], add[b0[1]][b1[1]])
        minus = (add[b0[0]][neg[b1[0]]], add[b0[1]][neg[b1[1]]])
        if target.find(plus) == q2 and target.find(minus) == q3 and alg.rows_distant(b0, b1):
            return Mat2.of(ring, (*b0, *b1))
    return None


def match_to_jordan(
    m: PointMap,
    component: Iterable[int],
    e2: Optional[GeneratedGroup] = None,
) -> Optional[JordanInducedData]:
    """
    在一個分量上重建 (a0, a1)、(a0', a1') 與 Jordan 映射 α

    p0 取分量中最小的點，a1 取最小的補全列；目標基底的單位依索引序搜尋。
    α 由 R(x a0 + a1) 的像讀出，再驗證 α 是 Jordan 映射且 μ 與 m 在分量上一致。

    Args:
        m: 調和保持映射
        component: 分量
        e2: 預先生成的 E2(R)

    Returns:
        Optional[JordanInducedData]: 任何一步失敗時為 None
    """
    points = sorted(component)
    if not points:
        raise PreconditionError("分量為空")
    source = m.source
    p0 = points[0]
    a0 = source.points[p0]
    a1 = completion_row(source.ring, a0)
    if a1 is None:
        return None
    a = Mat2.of(source.ring, (*a0, *a1))
    b = _target_basis(m, a, p0)
    if b is None:
        logger.debug("找不到實現 p0..p3 像點的目標基底")
        return None
    table = read_coordinate_map(m, a, b)
    if table is None:
        return None
    try:
        alpha = JordanMap(source.ring, m.target.ring, table)
    except MapValidationError as exc:
        logger.debug("座標映射不是 Jordan 映射: {}", exc)
        return None
    data = JordanInducedData(alpha, a, b, frozenset(points))
    try:
        mu = mu_from_jordan(data, e2)
    except PreconditionError as exc:
        logger.warning("分量與字分量不一致: {}", exc)
        return None
    if not mu.agrees_on(m, points):
        return None
    return data


def _conditions(ring: FiniteRing, line: ProjectiveLine, graph: DistantGraph) -> ConditionsBlock:
    return ConditionsBlock(
        five_units=check_condition_five_units(ring).holds,
        two_unit=check_two_unit(ring),
        i_prime=check_condition_i_prime(line, graph).holds,
    )


def verify_staudt_theorem(
    source_ring: FiniteRing,
    target_ring: FiniteRing,
    e2: Optional[GeneratedGroup] = None,
    node_budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> VerifyReport:
    """
    端到端驗證調和保持映射的 Jordan 描述

    條件 (i)、(ii) 成立時，每個保持映射在每個分量上都必須能重建，
    目標環中 2 必須是單位，重建出的 α 保持反元素，μ 良定義，且座標映射在
    換基底後不變；否則記為推翻。條件不成立時仍執行所有檢查，失敗只記錄警告。

    Args:
        source_ring: 來源環
        target_ring: 目標環
        e2: 預先生成的 E2(source_ring)
        node_budget: 分類搜尋節點預算
        threads: 分類搜尋執行緒數

    Returns:
        VerifyReport: 驗證報表

    Raises:
        ResourceCapError: 超過任何資源上限
    """
    line = enumerate_points(source_ring)
    target = enumerate_points(target_ring)
    graph = build_distant_graph(line)
    conditions = _conditions(source_ring, line, graph)
    hypotheses = bool(conditions.five_units) and conditions.two_unit
    parts = components(graph)
    group = e2 if e2 is not None else generate_E2(source_ring)

    result = classify_preservers(line, target, node_budget, threads)
    falsifications: list[str] = []
    found: list[tuple[int, int, JordanInducedData]] = []
    unmatched: list[int] = []
    for i, m in enumerate(result.preservers):
        result.matches[i] = {}
        for j, part in enumerate(parts):
            data = match_to_jordan(m, part, group)
            result.matches[i][j] = data
            if data is None:
                if i not in unmatched:
                    unmatched.append(i)
                if hypotheses:
                    falsifications.append(f"保持映射 {i} 在分量 {j} 上無法重建")
            else:
                found.append((i, j, data))
    if unmatched and hypotheses:
        logger.error("{} 個保持映射無法重建", len(unmatched))

    alphas = sorted({data.alpha.image for _, _, data in found})
    alpha_ids = {image: k for k, image in enumerate(alphas)}
    jordan_maps = []
    for image in alphas:
        alpha = JordanMap(source_ring, target_ring, image)
        jordan_maps.append(JordanMapEntry(
            alpha_id=alpha_ids[image],
            image=list(image),
            homomorphism=is_ring_homomorphism(alpha),
            antihomomorphism=is_antihomomorphism(alpha),
        ))
        if hypotheses and not preserves_inverses(alpha):
            falsifications.append(f"Jordan 映射 {alpha_ids[image]} 不保持反元素")
    if hypotheses and result.preservers and not check_two_unit(target_ring):
        falsifications.append(f"{target_ring.label} 中 2 不是單位")

    def flag(message: str) -> None:
        if hypotheses:
            falsifications.append(message)
        else:
            logger.warning(message)

    # μ 的良定義性對每個 (α, 分量) 檢查一次；換基底不變性對每個重建逐一檢查
    well_defined: dict[tuple[tuple[int, ...], int], bool] = {}
    for i, j, data in found:
        key = (data.alpha.image, j)
        if key not in well_defined:
            well_defined[key] = verify_mu_well_defined(data, group)
            if not well_defined[key]:
                flag(f"Jordan 映射 {alpha_ids[data.alpha.image]} 在分量 {j} 上誘導的 μ 不是良定義")
        moved = [t for t in source_ring.elements() if not check_base_change(result.preservers[i], data, t)]
        if moved:
            flag(f"保持映射 {i} 在分量 {j} 上以 t={moved[0]} 換基底後座標映射改變")

    matches = [
        MatchEntry(
            preserver_id=i,
            component_id=j,
            alpha_id=alpha_ids[data.alpha.image],
            source_basis=data.source_basis.as_lists(),
            target_basis=data.target_basis.as_lists(),
        )
        for i, j, data in found
    ]
    for message in falsifications:
        logger.error(message)
    return VerifyReport(
        ring=source_ring.label,
        target_ring=target_ring.label,
        conditions=conditions,
        hypotheses_hold=hypotheses,
        counts=CountsBlock(
            points=line.size,
            target_points=target.size,
            harmonic_quads=len(harmonic_set(line)),
            preservers=result.count,
            components=len(parts),
            search_nodes=result.search_nodes,
            mu_checks=len(well_defined),
            base_change_checks=len(found),
        ),
        preservers=[list(m.image) for m in result.preservers],
        matches=matches,
        unmatched=unmatched,
        jordan_maps=jordan_maps,
        falsifications=falsifications,
    )

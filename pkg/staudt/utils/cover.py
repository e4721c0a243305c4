# staudt/utils/cover.py - 以位元遮罩表示的集合覆蓋搜尋
import random
from typing import Optional, Sequence


def find_cover(universe: int, sets: Sequence[int], limit: int) -> Optional[list[int]]:
    """
    窮舉搜尋：是否能以至多 limit 個集合覆蓋 universe

    每一層挑選編號最小的未覆蓋元素，只在包含它的集合間分支，
    因此搜尋是完整的。

    Args:
        universe: 需覆蓋的元素位元遮罩
        sets: 候選集合的位元遮罩
        limit: 可使用的集合數上限

    Returns:
        Optional[list[int]]: 覆蓋所用的集合索引；不存在時回傳 None
    """
    containing: dict[int, list[int]] = {}
    chosen: list[int] = []

    def candidates(bit: int) -> list[int]:
        if bit not in containing:
            containing[bit] = [i for i, mask in enumerate(sets) if mask >> bit & 1]
        return containing[bit]

    def search(covered: int) -> bool:
        missing = universe & ~covered
        if not missing:
            return True
        if len(chosen) == limit:
            return False
        bit = (missing & -missing).bit_length() - 1
        for i in candidates(bit):
            chosen.append(i)
            if search(covered | sets[i]):
                return True
            chosen.pop()
        return False

    return list(chosen) if search(0) else None


def greedy_cover(
    universe: int,
    sets: Sequence[int],
    limit: int,
    restarts: int,
    seed: int = 0,
) -> Optional[list[int]]:
    """
    貪婪覆蓋啟發式（含隨機重啟）

    每一步挑選新覆蓋元素最多的集合；平手時由亂數決定。找不到覆蓋
    並不代表覆蓋不存在。

    Args:
        universe: 需覆蓋的元素位元遮罩
        sets: 候選集合的位元遮罩
        limit: 可使用的集合數上限
        restarts: 重啟次數
        seed: 隨機種子

    Returns:
        Optional[list[int]]: 找到的覆蓋；否則 None
    """
    rng = random.Random(seed)
    for _ in range(restarts):
        covered = 0
        chosen: list[int] = []
        while len(chosen) < limit and universe & ~covered:
            gains = [bin(mask & universe & ~covered).count("1") for mask in sets]
            best = max(gains)
            pick = rng.choice([i for i, gain in enumerate(gains) if gain == best])
            chosen.append(pick)
            covered |= sets[pick]
        if not universe & ~covered:
            return chosen
    return None

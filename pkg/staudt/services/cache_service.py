# staudt/services/cache_service.py - 生成群的檔案快取
import hashlib
from importlib import metadata
from pathlib import Path
from typing import Callable, Optional

import ujson
from loguru import logger

from staudt.algebra.mat2 import GeneratedGroup, generate_E2, generate_GE2
from staudt.algebra.ring_core import FiniteRing
from staudt.settings import settings


def _package_version() -> str:
    try:
        return metadata.version("staudt")
    except metadata.PackageNotFoundError:
        return "0"


class GroupCache:
    """
    以 JSON 檔快取 E2 / GE2

    檔名由群名稱、環規格與套件版本的雜湊決定；未設定 cache_dir 時
    直接生成，不讀寫檔案。
    """

    def __init__(self, cache_dir: Optional[Path] = None):
        self.cache_dir = cache_dir if cache_dir is not None else settings.cache_dir

    def path_for(self, name: str, ring: FiniteRing) -> Optional[Path]:
        if self.cache_dir is None:
            return None
        digest = hashlib.sha256(f"{name}:{ring.label}:{_package_version()}".encode()).hexdigest()
        return Path(self.cache_dir) / f"{name.lower()}-{digest[:16]}.json"

    def load(self, name: str, ring: FiniteRing) -> Optional[GeneratedGroup]:
        """
        讀取快取

        Returns:
            Optional[GeneratedGroup]: 沒有快取或快取損毀時為 None
        """
        path = self.path_for(name, ring)
        if path is None or not path.exists():
            return None
        try:
            payload = ujson.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            logger.warning("無法讀取快取 {}: {}", path, exc)
            return None
        if payload.get("ring") != ring.label or payload.get("name") != name:
            logger.warning("快取 {} 與 {}({}) 不符，忽略", path, name, ring.label)
            return None
        logger.debug("由快取載入 {}({})", name, ring.label)
        return GeneratedGroup.from_payload(ring, payload)

    def store(self, group: GeneratedGroup) -> None:
        path = self.path_for(group.name, group.ring)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(ujson.dumps(group.to_payload()), encoding="utf-8")
        logger.debug("寫入快取 {}", path)

    def _get(self, name: str, ring: FiniteRing, build: Callable[[FiniteRing], GeneratedGroup]) -> GeneratedGroup:
        group = self.load(name, ring)
        if group is None:
            group = build(ring)
            self.store(group)
        return group

    def e2(self, ring: FiniteRing) -> GeneratedGroup:
        return self._get("E2", ring, generate_E2)

    def ge2(self, ring: FiniteRing) -> GeneratedGroup:
        return self._get("GE2", ring, generate_GE2)

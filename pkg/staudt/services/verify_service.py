# staudt/services/verify_service.py - 定理驗證流程
import time
from typing import Optional

from loguru import logger

from staudt.algebra.preservers import verify_staudt_theorem
from staudt.algebra.ring_core import FiniteRing, ring_from_spec
from staudt.schemas.verify_schemas import VerifyReport
from staudt.services.cache_service import GroupCache
from staudt.settings import settings


class VerifyService:
    """
    verify 子命令的服務層

    目標環省略時與來源環相同。

    Args:
        spec: 來源環規格
        target_spec: 目標環規格
        cache: E2 快取
    """

    def __init__(self, spec: str, target_spec: Optional[str] = None, cache: Optional[GroupCache] = None):
        self.source: FiniteRing = ring_from_spec(spec)
        self.target: FiniteRing = ring_from_spec(target_spec) if target_spec else self.source
        self.cache = cache or GroupCache()

    def run(self, timing: bool = False) -> VerifyReport:
        """
        執行完整驗證

        Args:
            timing: 是否附上耗時

        Returns:
            VerifyReport: 驗證報表

        Raises:
            ResourceCapError: 超過任何資源上限
        """
        started = time.perf_counter()
        logger.info(
            "驗證 P({}) -> P({})，threads={}，node_budget={}",
            self.source.label,
            self.target.label,
            settings.threads,
            settings.node_budget,
        )
        report = verify_staudt_theorem(
            self.source,
            self.target,
            e2=self.cache.e2(self.source),
            node_budget=settings.node_budget,
            threads=settings.threads,
        )
        if timing:
            report.timing_ms = (time.perf_counter() - started) * 1000
        if report.falsified:
            logger.error("{} 項推翻", len(report.falsifications))
        return report

    @staticmethod
    def render_text(report: VerifyReport) -> str:
        conditions = report.conditions
        counts = report.counts
        lines = [
            f"source: {report.ring}",
            f"target: {report.target_ring}",
            f"condition (i): {conditions.five_units}",
            f"condition (ii): {conditions.two_unit}",
            f"condition (i'): {conditions.i_prime}",
            f"hypotheses hold: {report.hypotheses_hold}",
            f"points: {counts.points} -> {counts.target_points}",
            f"harmonic quadruples: {counts.harmonic_quads}",
            f"components: {counts.components}",
            f"preservers: {counts.preservers} ({counts.search_nodes} search nodes)",
            f"matched: {counts.preservers - len(report.unmatched)}",
            f"mu checks: {counts.mu_checks}, base change checks: {counts.base_change_checks}",
            f"jordan maps: {len(report.jordan_maps)}",
        ]
        for entry in report.jordan_maps:
            kind = [name for name, flag in (("hom", entry.homomorphism), ("antihom", entry.antihomomorphism)) if flag]
            lines.append(f"  {entry.alpha_id}: {entry.image} {'/'.join(kind) or 'jordan'}")
        if report.falsifications:
            lines.append("FALSIFIED:")
            lines.extend(f"  {message}" for message in report.falsifications)
        else:
            lines.append("no falsification")
        if report.timing_ms is not None:
            lines.append(f"timing_ms: {report.timing_ms:.1f}")
        return "\n".join(lines) + "\n"

# staudt/services/ring_service.py - 環的建構與條件報表
import time

from loguru import logger

from staudt.algebra.projline import check_dedekind_witness
from staudt.algebra.ring_core import (
    FiniteRing,
    catalog,
    characteristic,
    check_condition_five_units,
    check_ring_axioms,
    check_two_unit,
    ring_from_spec,
)
from staudt.schemas.ring_schemas import AxiomReport, RingReport


class RingService:
    """
    單一環的服務層

    負責剖析規格、建構環並彙整公理與定理條件。

    Args:
        spec: 環規格字串
    """

    def __init__(self, spec: str):
        self.spec = spec
        self.ring: FiniteRing = ring_from_spec(spec)

    def axioms(self) -> AxiomReport:
        return check_ring_axioms(self.ring)

    def report(self, timing: bool = False) -> RingReport:
        """
        建立 ring 子命令的報表

        Args:
            timing: 是否附上耗時

        Returns:
            RingReport: 報表
        """
        started = time.perf_counter()
        ring = self.ring
        axioms = self.axioms()
        witness = check_dedekind_witness(ring)
        report = RingReport(
            ring=ring.label,
            size=ring.size,
            units=ring.units,
            unit_labels=[ring.element_label(u) for u in ring.units],
            characteristic=characteristic(ring),
            axioms_passed=axioms.passed,
            axiom_failures=axioms.failures(),
            commutative=axioms.commutative,
            five_units=check_condition_five_units(ring),
            two_unit=check_two_unit(ring),
            dedekind_witness=list(witness) if witness else None,
        )
        if timing:
            report.timing_ms = (time.perf_counter() - started) * 1000
        logger.info("環報表 {} 完成", ring.label)
        return report

    @staticmethod
    def catalog() -> list[str]:
        """目錄中的環規格"""
        return catalog()

    @staticmethod
    def render_text(report: RingReport) -> str:
        """給人看的摘要"""

        def verdict(value: object) -> str:
            return {True: "成立", False: "不成立", None: "無法判定"}[value]  # type: ignore[index]

        lines = [
            f"ring: {report.ring}",
            f"size: {report.size}",
            f"characteristic: {report.characteristic}",
            f"units ({len(report.units)}): {', '.join(report.unit_labels)}",
            f"axioms: {'ok' if report.axioms_passed else 'FAILED'}",
        ]
        for check in report.axiom_failures:
            lines.append(f"  {check.name}: witness {check.witness}")
        lines.append(f"commutative: {report.commutative}")
        five = report.five_units
        lines.append(f"condition (i) five units: {verdict(five.holds)}" + ("" if five.exhaustive else " (heuristic)"))
        if five.witness is not None:
            lines.append(f"  witness: {five.witness}")
        lines.append(f"condition (ii) 2 is a unit: {verdict(report.two_unit)}")
        if report.timing_ms is not None:
            lines.append(f"timing_ms: {report.timing_ms:.1f}")
        return "\n".join(lines) + "\n"

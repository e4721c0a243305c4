# staudt/services/line_service.py - 射影直線與遠離圖的匯出
import time
from typing import Optional

from loguru import logger

from staudt.algebra.harmonic import check_distant_consequences
from staudt.algebra.projline import (
    DistantGraph,
    ProjectiveLine,
    build_distant_graph,
    component_of,
    component_via_words,
    components,
    enumerate_points,
    export_dot,
    export_json,
)
from staudt.algebra.ring_core import ring_from_spec
from staudt.schemas.line_schemas import DistantConsequenceReport, LineExport, LineReport
from staudt.services.cache_service import GroupCache


class LineService:
    """
    射影直線服務

    Args:
        spec: 環規格字串
        cache: E2 快取；省略時使用預設快取目錄
    """

    def __init__(self, spec: str, cache: Optional[GroupCache] = None):
        self.ring = ring_from_spec(spec)
        self.cache = cache or GroupCache()
        self.line: ProjectiveLine = enumerate_points(self.ring)
        self.graph: DistantGraph = build_distant_graph(self.line)

    def export(self) -> LineExport:
        return export_json(self.line, self.graph)

    def dot(self) -> str:
        return export_dot(self.line, self.graph)

    def consequences(self) -> DistantConsequenceReport:
        return check_distant_consequences(self.line)

    def report(self, timing: bool = False, include_export: bool = False) -> LineReport:
        """
        line 子命令的報表

        Args:
            timing: 是否附上耗時
            include_export: 是否附上完整的點與邊

        Returns:
            LineReport: 報表
        """
        started = time.perf_counter()
        line, graph = self.line, self.graph
        origin = line.locate((1, 0))
        by_words = component_via_words(line, self.cache.e2(self.ring))
        matches = set(component_of(graph, origin)) == by_words
        if not matches:
            logger.error("{}：R(1,0) 的圖分量與字分量不同", self.ring.label)
        report = LineReport(
            ring=self.ring.label,
            points=line.size,
            component_sizes=[len(part) for part in components(graph)],
            degrees=[graph.degree(p) for p in range(line.size)],
            word_component_matches=matches,
            export=self.export() if include_export else None,
        )
        if timing:
            report.timing_ms = (time.perf_counter() - started) * 1000
        return report

    @staticmethod
    def render_text(report: LineReport) -> str:
        degrees = sorted(set(report.degrees))
        lines = [
            f"ring: {report.ring}",
            f"points: {report.points}",
            f"components: {len(report.component_sizes)} (sizes {', '.join(map(str, report.component_sizes))})",
            f"degrees: {', '.join(map(str, degrees))}",
            f"word component matches: {report.word_component_matches}",
        ]
        if report.export is not None:
            for i, (x0, x1) in enumerate(report.export.points):
                lines.append(f"  {i}: ({x0},{x1})")
        if report.timing_ms is not None:
            lines.append(f"timing_ms: {report.timing_ms:.1f}")
        return "\n".join(lines) + "\n"

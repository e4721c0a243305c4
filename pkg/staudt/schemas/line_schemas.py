# staudt/schemas/line_schemas.py - 射影直線與遠離圖的 Pydantic 模型
from typing import List, Optional

from pydantic import BaseModel, Field


class LineExport(BaseModel):
    """遠離圖的 JSON 匯出格式"""

    points: List[List[int]] = Field(..., description="各點的標準代表 [x0, x1]")
    edges: List[List[int]] = Field(..., description="遠離的點對 [i, j]，i < j")
    components: List[List[int]] = Field(..., description="連通分量（點索引）")


class LineReport(BaseModel):
    """line 子命令的文字/JSON 摘要"""

    ring: str = Field(..., description="環規格")
    points: int = Field(..., description="點數")
    component_sizes: List[int] = Field(..., description="各連通分量大小")
    degrees: List[int] = Field(..., description="遠離圖中各點的度數")
    word_component_matches: bool = Field(..., description="R(1,0) 的圖分量是否等於字生成的分量")
    export: Optional[LineExport] = Field(None, description="完整匯出")
    timing_ms: Optional[float] = Field(None, description="耗時（僅在 --timing 時輸出）")


class DistantConsequenceReport(BaseModel):
    """調和四元組的遠離性推論檢查"""

    ring: str = Field(..., description="環規格")
    quadruples: int = Field(..., description="調和四元組數")
    two_is_unit: bool = Field(..., description="2 是否為單位")
    minus_one_neq_one: bool = Field(..., description="-1 != 1 是否成立")
    pattern_violations: List[List[int]] = Field(default_factory=list, description="p0△p1、pi△pj 失敗的四元組")
    p2_p3_distant_violations: List[List[int]] = Field(default_factory=list, description="p2△p3 與 2∈R* 不一致者")
    p2_p3_distinct_violations: List[List[int]] = Field(default_factory=list, description="p2!=p3 與 -1!=1 不一致者")
    component_violations: List[List[int]] = Field(default_factory=list, description="四點不在同一分量者")
    all_p2_p3_distant: bool = Field(..., description="所有四元組皆 p2△p3")
    all_p2_p3_equal: bool = Field(..., description="所有四元組皆 p2=p3")

    @property
    def passed(self) -> bool:
        """沒有任何違反"""
        return not (
            self.pattern_violations
            or self.p2_p3_distant_violations
            or self.p2_p3_distinct_violations
            or self.component_violations
        )

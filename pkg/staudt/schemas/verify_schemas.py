# staudt/schemas/verify_schemas.py - 定理驗證報表的 Pydantic 模型
from typing import List, Optional

from pydantic import BaseModel, Field


class ConditionsBlock(BaseModel):
    """來源環的定理條件"""

    five_units: Optional[bool] = Field(..., description="條件 (i)；None 表示無法判定")
    two_unit: bool = Field(..., description="條件 (ii)")
    i_prime: Optional[bool] = Field(..., description="條件 (i')；None 表示無法判定")


class CountsBlock(BaseModel):
    """計數"""

    points: int = Field(..., description="來源直線的點數")
    target_points: int = Field(..., description="目標直線的點數")
    harmonic_quads: int = Field(..., description="來源直線的調和四元組數")
    preservers: int = Field(..., description="調和保持映射數")
    components: int = Field(..., description="來源遠離圖的連通分量數")
    search_nodes: int = Field(..., description="回溯搜尋節點數")
    mu_checks: int = Field(0, description="檢查 μ 良定義性的 (Jordan 映射, 分量) 數")
    base_change_checks: int = Field(0, description="檢查換基底不變性的重建數")


class MatchEntry(BaseModel):
    """一個保持映射在一個分量上的 Jordan 重建結果"""

    preserver_id: int = Field(..., description="保持映射編號")
    component_id: int = Field(..., description="分量編號")
    alpha_id: int = Field(..., description="Jordan 映射編號（見 jordan_maps）")
    source_basis: List[List[int]] = Field(..., description="來源基底矩陣")
    target_basis: List[List[int]] = Field(..., description="目標基底矩陣")


class JordanMapEntry(BaseModel):
    """重建過程中用到的 Jordan 映射"""

    alpha_id: int = Field(..., description="編號")
    image: List[int] = Field(..., description="映射表")
    homomorphism: bool = Field(..., description="是否為環同態")
    antihomomorphism: bool = Field(..., description="是否為反同態")


class VerifyReport(BaseModel):
    """verify 子命令的報表"""

    ring: str = Field(..., description="來源環規格")
    target_ring: str = Field(..., description="目標環規格")
    conditions: ConditionsBlock = Field(..., description="定理條件")
    hypotheses_hold: bool = Field(..., description="條件 (i)、(ii) 是否皆成立")
    counts: CountsBlock = Field(..., description="計數")
    preservers: List[List[int]] = Field(..., description="各保持映射的像表")
    matches: List[MatchEntry] = Field(..., description="成功的重建")
    unmatched: List[int] = Field(..., description="至少一個分量無法重建的保持映射")
    jordan_maps: List[JordanMapEntry] = Field(..., description="用到的 Jordan 映射")
    falsifications: List[str] = Field(default_factory=list, description="推翻定理的發現")
    timing_ms: Optional[float] = Field(None, description="耗時（僅在 --timing 時輸出）")

    @property
    def falsified(self) -> bool:
        """是否有任何推翻"""
        return bool(self.falsifications)

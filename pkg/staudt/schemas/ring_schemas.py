# staudt/schemas/ring_schemas.py - 環相關報表的 Pydantic 模型
from typing import List, Optional

from pydantic import BaseModel, Field


class AxiomCheck(BaseModel):
    """單一公理的檢查結果"""

    name: str = Field(..., description="公理名稱")
    passed: bool = Field(..., description="是否通過")
    witness: Optional[List[int]] = Field(None, description="第一個反例（元素索引）")


class AxiomReport(BaseModel):
    """環公理檢查報表"""

    ring: str = Field(..., description="環規格")
    size: int = Field(..., description="元素個數")
    checks: List[AxiomCheck] = Field(..., description="逐條檢查結果")
    commutative: bool = Field(..., description="乘法是否交換")
    noncommutative_witness: Optional[List[int]] = Field(None, description="ab != ba 的 (a, b)")

    @property
    def passed(self) -> bool:
        """所有公理皆通過"""
        return all(check.passed for check in self.checks)

    def failures(self) -> List[AxiomCheck]:
        """未通過的公理"""
        return [check for check in self.checks if not check.passed]


class ConditionVerdict(BaseModel):
    """條件 (i) / (i') 的判定結果"""

    holds: Optional[bool] = Field(..., description="True/False；None 表示無法判定")
    witness: Optional[List] = Field(None, description="阻擋條件成立的五元組")
    exhaustive: bool = Field(..., description="是否經過窮舉")

    @property
    def resolved(self) -> bool:
        """是否已判定"""
        return self.holds is not None


class FactorizationReport(BaseModel):
    """GL-R* 等價與三因子分解的檢查報表"""

    ring: str = Field(..., description="環規格")
    pairs: int = Field(..., description="檢查的 (x, y) 數")
    invertible: int = Field(..., description="可逆的矩陣數")
    equivalence_failures: List[List[int]] = Field(default_factory=list, description="等價失敗的 (x, y)")
    factorization_failures: List[List[int]] = Field(default_factory=list, description="分解失敗的 (x, y)")

    @property
    def passed(self) -> bool:
        """兩個方向與分解皆成立"""
        return not self.equivalence_failures and not self.factorization_failures


class RingReport(BaseModel):
    """ring 子命令的報表"""

    ring: str = Field(..., description="環規格")
    size: int = Field(..., description="元素個數")
    units: List[int] = Field(..., description="單位元素索引")
    unit_labels: List[str] = Field(..., description="單位元素的可讀表示")
    characteristic: int = Field(..., description="特徵值")
    axioms_passed: bool = Field(..., description="是否通過所有公理")
    axiom_failures: List[AxiomCheck] = Field(default_factory=list, description="未通過的公理")
    commutative: bool = Field(..., description="乘法是否交換")
    five_units: ConditionVerdict = Field(..., description="條件 (i)")
    two_unit: bool = Field(..., description="條件 (ii)：2 是單位")
    dedekind_witness: Optional[List[int]] = Field(None, description="xy=1 但 yx!=1 的 (x, y)")
    timing_ms: Optional[float] = Field(None, description="耗時（僅在 --timing 時輸出）")

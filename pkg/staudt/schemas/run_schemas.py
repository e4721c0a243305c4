# staudt/schemas/run_schemas.py - CLI 執行設定的 Pydantic 模型
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Literal, Optional

from pydantic import BaseModel, Field

from staudt.settings import Settings

# 可由命令列覆寫的設定欄位
OVERRIDABLE = ("gl2_cap", "node_budget", "additive_gen_cap", "threads", "seed")


class RunConfig(BaseModel):
    """
    一次 CLI 執行的完整設定

    省略的上限沿用環境設定。
    """

    command: Literal["ring", "line", "verify"] = Field(..., description="子命令")
    ring: Optional[str] = Field(None, description="來源環規格")
    target: Optional[str] = Field(None, description="目標環規格（verify，預設同來源環）")
    format: Literal["json", "dot", "text"] = Field("text", description="輸出格式")
    out: Optional[Path] = Field(None, description="輸出檔案；省略時寫到 stdout")
    graph: Optional[Path] = Field(None, description="額外輸出 DOT 遠離圖的路徑")
    catalog: bool = Field(False, description="列出目錄中的環")
    timing: bool = Field(False, description="在報表中附上耗時")
    gl2_cap: Optional[int] = Field(None, gt=0, description="完整列舉 GL2 時 |R| 的上限")
    node_budget: Optional[int] = Field(None, gt=0, description="分類搜尋節點預算")
    additive_gen_cap: Optional[int] = Field(None, gt=0, description="加法生成元個數上限")
    threads: Optional[int] = Field(None, gt=0, description="內部平行化執行緒數")
    seed: int = Field(0, ge=0, description="隨機驗證的種子")

    @contextmanager
    def applied(self, settings: Settings) -> Iterator[Settings]:
        """
        在區塊內把指定的值寫入設定，離開時還原

        Args:
            settings: 全域設定物件

        Yields:
            Settings: 同一個設定物件
        """
        previous = {name: getattr(settings, name) for name in OVERRIDABLE}
        for name in OVERRIDABLE:
            value = getattr(self, name)
            if value is not None:
                setattr(settings, name, value)
        try:
            yield settings
        finally:
            for name, value in previous.items():
                setattr(settings, name, value)

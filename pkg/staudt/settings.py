# staudt/settings.py - 應用程式設定配置
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """應用程式設定類別"""

    # 設定配置：所有環境變數皆以 STAUDT_ 為前綴
    model_config = SettingsConfigDict(
        env_prefix="STAUDT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ==================== 基本設定 ====================
    environment: str = Field(default="development", description="執行環境")

    # ==================== 日誌設定 ====================
    log_level: str = Field(default="WARNING", description="日誌級別")
    log_file: Optional[str] = Field(default=None, description="日誌檔案路徑")

    # ==================== 資源上限 ====================
    ring_size_cap: int = Field(default=4096, gt=0, description="環的最大元素個數")
    gl2_cap: int = Field(default=16, gt=0, description="完整列舉 GL2 時 |R| 的上限")
    e2_cap: int = Field(default=1_000_000, gt=0, description="BFS 生成群的大小上限")
    node_budget: int = Field(default=10**8, gt=0, description="分類搜尋節點預算")
    additive_gen_cap: int = Field(default=4, gt=0, description="加法生成元個數上限")
    jordan_target_cap: int = Field(default=128, gt=0, description="Jordan 列舉目標環大小上限")
    exhaustive_cap: int = Field(default=10**8, gt=0, description="條件 (i) 窮舉上限")
    cover_restarts: int = Field(default=64, gt=0, description="覆蓋啟發式重啟次數")
    oracle_cap: int = Field(default=10**7, gt=0, description="原始過濾神諭的映射數上限")
    pair_cap: int = Field(default=1_000_000, gt=0, description="射影直線列舉的座標對數上限")

    # ==================== 隨機驗證 ====================
    word_length: int = Field(default=8, gt=0, description="隨機字的最大長度")
    word_samples: int = Field(default=256, ge=0, description="隨機字的取樣數")
    seed: int = Field(default=0, description="隨機種子")

    # ==================== 執行設定 ====================
    threads: int = Field(default=1, gt=0, description="內部平行化執行緒數")
    cache_dir: Optional[Path] = Field(default=None, description="生成群快取目錄")


@lru_cache()
def get_settings() -> Settings:
    """
    取得應用程式設定 (使用快取)

    Returns:
        Settings: 設定物件
    """
    return Settings()


# 建立全域設定實例供其他模組匯入
settings = get_settings()

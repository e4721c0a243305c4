# staudt/cli/output.py - 報表輸出
import sys
from pathlib import Path
from typing import Optional

from loguru import logger


def write_output(text: str, out: Optional[Path] = None) -> None:
    """寫到 --out 指定的檔案，否則寫到 stdout"""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("輸出已寫入 {}", out)

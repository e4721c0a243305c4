# staudt/cli/application.py - 命令列應用程式
import argparse
from importlib import metadata

from staudt.cli.router import include_commands


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"必須為正整數: {text}")
    return value


def _common_options() -> argparse.ArgumentParser:
    """所有子命令共用的選項"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="text", help="輸出格式")
    common.add_argument("--out", type=str, default=None, help="輸出檔案；省略時寫到 stdout")
    common.add_argument("--gl2-cap", type=_positive, default=None, help="完整列舉 GL2 時 |R| 的上限")
    common.add_argument("--node-budget", type=_positive, default=None, help="分類搜尋節點預算")
    common.add_argument("--additive-gen-cap", type=_positive, default=None, help="加法生成元個數上限")
    common.add_argument("--threads", type=_positive, default=None, help="內部平行化執行緒數")
    common.add_argument("--seed", type=int, default=0, help="隨機驗證的種子")
    common.add_argument("--timing", action="store_true", help="在報表中附上耗時")
    common.add_argument(
        "--log-level",
        choices=("TRACE", "DEBUG", "INFO", "WARNING", "ERROR"),
        default=None,
        help="日誌級別（覆寫 STAUDT_LOG_LEVEL）",
    )
    return common


def _version() -> str:
    try:
        return metadata.version("staudt")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def get_parser() -> argparse.ArgumentParser:
    """
    Get the argument parser.

    This is the main constructor of the command line application.

    :return: parser with ring, line and verify sub-commands.
    """
    parser = argparse.ArgumentParser(
        prog="staudt",
        description="有限環上射影直線的調和保持映射：建構、列舉與 von Staudt 型定理驗證",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    include_commands(subparsers, [_common_options()])
    return parser

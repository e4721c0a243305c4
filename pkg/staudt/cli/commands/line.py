# staudt/cli/commands/line.py - line 子命令
import argparse
import logging
from typing import Sequence

from staudt.cli.output import write_output
from staudt.schemas.run_schemas import RunConfig
from staudt.services.line_service import LineService
from staudt.utils.serialization import dump_json

log = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "line",
        parents=list(parents),
        help="列舉射影直線的點並匯出遠離圖",
    )
    parser.add_argument("ring", help="環規格")
    parser.add_argument("--graph", type=str, default=None, help="另外把 DOT 遠離圖寫到此路徑")
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    執行 line 子命令

    --format dot 輸出遠離圖；json 輸出含完整點與邊的報表；text 輸出摘要。
    """
    service = LineService(config.ring or "")
    log.info("line over %s: %d points", service.ring.label, service.line.size)
    if config.graph is not None:
        write_output(service.dot(), config.graph)
    if config.format == "dot":
        write_output(service.dot(), config.out)
        return 0
    report = service.report(timing=config.timing, include_export=config.format == "json")
    text = dump_json(report) if config.format == "json" else LineService.render_text(report)
    write_output(text, config.out)
    return 0

# staudt/cli/commands/ring.py - ring 子命令
import argparse
import logging
from typing import Sequence

import ujson

from staudt.cli.output import write_output
from staudt.schemas.run_schemas import RunConfig
from staudt.services.ring_service import RingService
from staudt.utils.errors import StaudtError
from staudt.utils.serialization import dump_json

log = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "ring",
        parents=list(parents),
        help="建構環並檢查公理、單位與定理條件",
    )
    parser.add_argument("ring", nargs="?", default=None, help='環規格，例如 "Z/7" 或 "GF(3,2)"')
    parser.add_argument("--catalog", action="store_true", help="列出目錄中的環")
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    執行 ring 子命令

    Raises:
        StaudtError: 沒有環規格或輸出格式不支援
    """
    if config.format == "dot":
        raise StaudtError("ring 不支援 --format dot")
    if config.catalog:
        names = RingService.catalog()
        text = ujson.dumps(names, indent=2) + "\n" if config.format == "json" else "\n".join(names) + "\n"
        write_output(text, config.out)
        return 0
    if config.ring is None:
        raise StaudtError("需要環規格或 --catalog")

    service = RingService(config.ring)
    log.info("ring %s: %d elements", service.ring.label, service.ring.size)
    report = service.report(timing=config.timing)
    text = dump_json(report) if config.format == "json" else RingService.render_text(report)
    write_output(text, config.out)
    return 0

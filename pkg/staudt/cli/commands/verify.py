# staudt/cli/commands/verify.py - verify 子命令
import argparse
import logging
from typing import Sequence

from staudt.cli.output import write_output
from staudt.schemas.run_schemas import RunConfig
from staudt.services.verify_service import VerifyService
from staudt.utils.errors import StaudtError
from staudt.utils.serialization import dump_json

log = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=list(parents),
        help="分類調和保持映射並以 Jordan 同態重建",
    )
    parser.add_argument("ring", help="來源環規格")
    parser.add_argument("target", nargs="?", default=None, help="目標環規格，預設同來源環")
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    執行 verify 子命令

    Returns:
        int: 有推翻時為 1，否則為 0
    """
    if config.format == "dot":
        raise StaudtError("verify 不支援 --format dot")
    service = VerifyService(config.ring or "", config.target)
    report = service.run(timing=config.timing)
    text = dump_json(report) if config.format == "json" else VerifyService.render_text(report)
    write_output(text, config.out)
    if report.falsified:
        log.error("verification falsified: %d finding(s)", len(report.falsifications))
        return 1
    return 0

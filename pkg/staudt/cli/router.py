# staudt/cli/router.py - 子命令註冊
import argparse
from typing import Sequence

from staudt.cli.commands import line, ring, verify

# 依序註冊的子命令模組
COMMANDS = (ring, line, verify)


def include_commands(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    """把每個子命令掛到主解析器上；各子命令以 set_defaults(handler=...) 指定執行函式"""
    for command in COMMANDS:
        command.register(subparsers, parents)

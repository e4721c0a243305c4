# staudt/__main__.py
import sys
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from staudt.cli.application import get_parser
from staudt.log import configure_logging
from staudt.schemas.run_schemas import RunConfig
from staudt.settings import settings
from staudt.utils.errors import StaudtError


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint of the application."""
    parser = get_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse 的 usage 錯誤為 2，--help / --version 為 0
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(namespace.log_level)
    fields = {name: value for name, value in vars(namespace).items() if name in RunConfig.model_fields}
    try:
        config = RunConfig.model_validate(fields)
    except ValidationError as exc:
        logger.error("參數錯誤: {}", exc)
        return 2

    with config.applied(settings):
        try:
            return namespace.handler(config)
        except StaudtError as exc:
            logger.error("{}: {}", type(exc).__name__, exc)
            return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

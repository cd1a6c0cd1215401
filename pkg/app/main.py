import argparse
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

# .env must reach os.environ before Settings is first built
load_dotenv()

from app.commands import automata, translations, witnesses  # noqa: E402
from app.core.config import settings  # noqa: E402
from app.core.exceptions import AutomatonError, UsageError  # noqa: E402
from app.models.schemas import CommandResult  # noqa: E402

logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Reports bad arguments as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def build_parser() -> CommandParser:
    parser = CommandParser(prog="pebble", description=settings.PROJECT_NAME)
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)
    automata.register(subparsers)
    translations.register(subparsers)
    witnesses.register(subparsers)
    return parser


def run_cli(arguments: Sequence[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(arguments))
        return args.handler(args)
    except AutomatonError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        return CommandResult(exit_code=e.exit_code, output=e.detail)
    except OSError as e:
        logger.error(f"File error: {e}")
        return CommandResult(exit_code=2, output=str(e))
    except SystemExit as e:
        # --help has already been printed
        return CommandResult(exit_code=e.code or 0)


def main(argv: Optional[Sequence[str]] = None) -> None:
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    result = run_cli(sys.argv[1:] if argv is None else argv)
    if result.output:
        print(result.output, file=sys.stderr if result.exit_code >= 2 else sys.stdout)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()

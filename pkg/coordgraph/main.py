import argparse
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from filelock import Timeout as TimeoutException

from coordgraph.commands import COMMAND_HANDLERS, COMMANDS
from coordgraph.config.app_config import ConfigManager
from coordgraph.config.config_validator import ConfigValidator
from coordgraph.exceptions import ArtifactHashMismatchError, ConfigValidationError, CoordGraphError, \
    CorpusError, MissingArtifactError
from coordgraph.locking import LockManager

log = logging.getLogger()

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (ConfigValidationError, MissingArtifactError, ArtifactHashMismatchError, CorpusError)

LOG_FORMAT = '[%(asctime)s][%(levelname)s]: %(message)s'
LOGS_FORMATTER = logging.Formatter(LOG_FORMAT)


def configure_logging(logs_dir: Path) -> None:
    logs_dir.mkdir(parents=True, exist_ok=True)
    log.setLevel(logging.DEBUG)

    if log.hasHandlers():
        log.handlers.clear()

    all_logs_handler = logging.FileHandler(logs_dir / "full.log", mode='a', encoding='utf-8')
    all_logs_handler.setLevel(logging.DEBUG)
    all_logs_handler.setFormatter(LOGS_FORMATTER)
    log.addHandler(all_logs_handler)

    error_logs_handler = logging.FileHandler(logs_dir / "errors.log", mode='a', encoding='utf-8')
    error_logs_handler.setLevel(logging.ERROR)
    error_logs_handler.setFormatter(LOGS_FORMATTER)
    log.addHandler(error_logs_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(LOGS_FORMATTER)
    log.addHandler(console_handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coordgraph",
                                     description="Inductive detection of coordinated influence-operation accounts.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command)
        subparser.add_argument("--config", type=Path, default=None, help="Config file (TOML)")
        subparser.add_argument("--threads", type=int, default=None, help="Worker threads, 0 = all")
        subparser.add_argument("--seed", type=int, default=None,
                               help="Single seed for evaluation and synthetic data")
        subparser.add_argument("--out", type=Path, default=None, help="Output directory")
        subparser.add_argument("--force", action="store_true",
                               help="Ignore upstream artifacts produced by another config")
    return parser


def config_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "run.threads": args.threads,
        "paths.output_dir": str(args.out) if args.out is not None else None,
    }
    if args.seed is not None:
        overrides["evaluation.seeds"] = [args.seed]
        overrides["synth.seed"] = args.seed
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        app_config = ConfigManager.load_config(args.config, config_overrides(args))
        configure_logging(Path(app_config.paths.output_dir) / "logs")
        ConfigValidator.validate(app_config, require_events=args.command != "synth")
        ConfigManager.set_config(app_config)
    except (ConfigValidationError, FileNotFoundError) as e:
        logging.basicConfig(format=LOG_FORMAT)
        log.error("%s", e)
        return EXIT_INPUT_ERROR

    log.info("%s v.%s", app_config.app_name, app_config.app_version)
    log.info("Current datetime: %s", datetime.now(timezone.utc))
    log.info("Command: %s", args.command)

    start_time = time.perf_counter()
    try:
        with LockManager.acquire_run_lock(Path(app_config.paths.output_dir)):
            COMMAND_HANDLERS[args.command](app_config, args.force or app_config.run.force)
    except KeyboardInterrupt:
        log.warning("Interrupted by user.")
        return EXIT_RUNTIME_ERROR
    except TimeoutException as e:
        log.error(f"Another pipeline process is writing to this output directory. "
                  f"Please, use different output folders for parallel runs. Error info: {e}")
        return EXIT_RUNTIME_ERROR
    except INPUT_ERRORS as e:
        log.error("%s", e)
        return EXIT_INPUT_ERROR
    except CoordGraphError as e:
        log.error("%s failed: %s", args.command, e)
        return EXIT_RUNTIME_ERROR

    log.info("Command finished.")
    log.info("|-Command: %s", args.command)
    log.info("|-Total time: %.2f seconds", time.perf_counter() - start_time)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

import os
import logging
from typing import Optional, Union
from colorama import init, Fore, Style


class ColoredFormatter(logging.Formatter):
    colors = {
        logging.DEBUG: Fore.CYAN,
        logging.INFO: Fore.GREEN,
        logging.WARNING: Fore.YELLOW,
        logging.ERROR: Fore.RED,
        logging.CRITICAL: Fore.RED,
    }

    def format(self, record):
        levelname_color = self.colors.get(record.levelno, Fore.WHITE)
        # don't leak the colour codes into other handlers
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = (
            f"{levelname_color}{record.levelname}{Style.RESET_ALL}"
        )
        return super().format(record)


def setup_logger(level: Optional[Union[int, str]] = None):
    init(autoreset=True)

    if level is None:
        level = os.environ.get("SETFAM_LOG_LEVEL", "INFO")
    if isinstance(level, str):
        level = level.upper()

    # Initialize logger
    logger = logging.getLogger("setfam")
    logger.setLevel(level)
    logger.propagate = False

    # handler goes to stderr so data output on stdout stays clean
    if not any(getattr(h, "_setfam", False) for h in logger.handlers):
        colored_formatter = ColoredFormatter("%(levelname)s: %(message)s")
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(colored_formatter)
        console_handler._setfam = True
        logger.addHandler(console_handler)

    # Suppress third-party logs
    third_party_loggers = [
        "asyncio",
        "concurrent.futures",
        "hypothesis",
    ]
    for log_name in third_party_loggers:
        logging.getLogger(log_name).setLevel(logging.WARNING)
    return logger

"""
Tropex Logging Module

Log records carry the subcommand being run, so that the lines of long
enumerations (surjections, modspace, secondary) can be told apart when
several runs share a log file. Worker threads log through the same root
handlers; JSON lines include the thread name.

Everything goes to stderr: stdout is reserved for the JSON report.

Author: tropex developers
License: MIT
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

try:
    from colorama import Fore, Style, init as colorama_init
    colorama_init()
    HAS_COLORAMA = True
except ImportError:
    HAS_COLORAMA = False


TEXT_FORMAT = '%(asctime)s [%(levelname)s] %(command)s %(name)s: %(message)s'
DATE_FORMAT = '%H:%M:%S'


class CommandFilter(logging.Filter):
    """Stamp every record with the running subcommand ('-' outside one)."""

    def __init__(self, command: Optional[str] = None):
        super().__init__()
        self.command = command or '-'

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, 'command'):
            record.command = self.command
        return True


class ColoredFormatter(logging.Formatter):
    LEVEL_COLORS = {
        'DEBUG': Fore.CYAN,
        'INFO': Fore.GREEN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.RED + Style.BRIGHT,
    } if HAS_COLORAMA else {}

    def __init__(self, use_colors: bool = True):
        super().__init__(TEXT_FORMAT, DATE_FORMAT)
        self.use_colors = use_colors and HAS_COLORAMA

    def format(self, record: logging.LogRecord) -> str:
        if not (self.use_colors and record.levelname in self.LEVEL_COLORS):
            return super().format(record)
        level = record.levelname
        record.levelname = f"{self.LEVEL_COLORS[level]}{level}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = level


class JSONFormatter(logging.Formatter):
    """One JSON object per record; extra={...} fields are passed through."""

    RESERVED = {
        'name', 'msg', 'args', 'created', 'filename', 'funcName',
        'levelname', 'levelno', 'lineno', 'module', 'msecs',
        'message', 'pathname', 'process', 'processName',
        'relativeCreated', 'thread', 'threadName', 'exc_info',
        'exc_text', 'stack_info', 'taskName', 'command',
    }

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            'timestamp': datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            'level': record.levelname,
            'command': getattr(record, 'command', '-'),
            'logger': record.name,
            'thread': record.threadName,
            'message': record.getMessage(),
        }
        if record.exc_info:
            entry['exception'] = self.formatException(record.exc_info)
        for key, value in record.__dict__.items():
            if key not in self.RESERVED:
                entry[key] = value
        return json.dumps(entry, default=str)


def setup_logging(
    level: str = "WARNING",
    log_file: Optional[Path] = None,
    json_format: bool = False,
    use_colors: bool = True,
    command: Optional[str] = None,
) -> logging.Logger:
    """
    Configure the root logger for one tropex run.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Also append to this file (never colored)
        json_format: JSON lines instead of text
        use_colors: Color level names when stderr is a terminal
        command: Subcommand stamped on every record

    Returns:
        Configured root logger
    """
    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    root = logging.getLogger()
    root.setLevel(numeric_level)
    root.handlers.clear()
    stamp = CommandFilter(command)

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(numeric_level)
    console.addFilter(stamp)
    if json_format:
        console.setFormatter(JSONFormatter())
    else:
        console.setFormatter(ColoredFormatter(use_colors and sys.stderr.isatty()))
    root.addHandler(console)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(numeric_level)
        file_handler.addFilter(stamp)
        if json_format:
            file_handler.setFormatter(JSONFormatter())
        else:
            file_handler.setFormatter(logging.Formatter(TEXT_FORMAT, '%Y-%m-%d %H:%M:%S'))
        root.addHandler(file_handler)

    return root


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)

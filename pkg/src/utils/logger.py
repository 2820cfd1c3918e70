"""Custom logging utility with colored output."""

import logging
import sys
import json
import threading
from pathlib import Path
from typing import Optional, Any
from datetime import datetime

from src.config import Config


class ColoredFormatter(logging.Formatter):
    """Custom formatter with colors for different log levels."""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',        # Green
        'WARNING': '\033[33m',     # Yellow
        'ERROR': '\033[31m',       # Red
        'CRITICAL': '\033[35m',    # Magenta
    }
    RESET = '\033[0m'

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with colors."""
        log_color = self.COLORS.get(record.levelname, self.RESET)
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{log_color}{record.levelname}{self.RESET}"
        return super().format(record)


class RepeatedMessageFilter(logging.Filter):
    """Filter to suppress identical DEBUG/INFO lines emitted by enumeration workers."""

    def __init__(self, max_seen: int = 512):
        super().__init__()
        self._seen: dict = {}
        self._lock = threading.Lock()
        self.max_seen = max_seen

    def filter(self, record: logging.LogRecord) -> bool:
        if record.levelno >= logging.WARNING:
            return True
        key = (record.name, str(record.getMessage()))
        with self._lock:
            if key in self._seen:
                return False
            if len(self._seen) >= self.max_seen:
                self._seen.clear()
            self._seen[key] = True
        return True


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger with colored output on stderr.

    stdout is reserved for command payloads, so log lines never mix with JSON output.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name or __name__)

    # Avoid adding handlers multiple times
    if logger.handlers:
        return logger

    level = getattr(logging, Config.LOG_LEVEL, logging.INFO)
    logger.setLevel(level)
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    formatter = ColoredFormatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)
    logger.addFilter(RepeatedMessageFilter())

    return logger


def set_level(level: str) -> None:
    """Change the level of every toolkit logger already created."""
    numeric = getattr(logging, level.upper(), logging.INFO)
    for name, candidate in logging.Logger.manager.loggerDict.items():
        if isinstance(candidate, logging.Logger) and name.startswith("src"):
            candidate.setLevel(numeric)
            for handler in candidate.handlers:
                handler.setLevel(numeric)


def save_node_io(node_name: str, input_data: Any, output_data: Any) -> Optional[Path]:
    """
    Save the input and output of a workflow node to a JSON file for debugging.

    Only active when ``Config.DEBUG_IO`` is set.

    Args:
        node_name: Name of the node (e.g., 'geometry', 'weights')
        input_data: The input data (e.g., state)
        output_data: The output data (e.g., state update)

    Returns:
        Path of the written file, or None when disabled or on failure
    """
    if not Config.DEBUG_IO:
        return None
    try:
        from src.utils.serializer import to_jsonable

        debug_dir = Path(Config.OUTPUT_DIR) / "debug"
        debug_dir.mkdir(parents=True, exist_ok=True)
        path = debug_dir / f"{node_name}.json"

        log_data = {
            "node": node_name,
            "timestamp": datetime.now().isoformat(),
            "input": to_jsonable(input_data),
            "output": to_jsonable(output_data),
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(log_data, f, default=str, indent=2)
        return path

    except Exception as e:
        get_logger(__name__).error(f"Error saving debug IO for {node_name}: {e}")
        return None

from __future__ import annotations
import json
import logging
import os
import pathlib
import sys
from datetime import datetime, timezone
from logging.handlers import TimedRotatingFileHandler

ROOT_LOGGER = "orient"


# --- JSON formatter (1 line = 1 event) ---
class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = getattr(record, "payload", None)
        data = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        if payload is not None:
            data["payload"] = payload
        return json.dumps(data, ensure_ascii=False, default=str)


_configured = False  # handlers are installed once per process


def _setup_root_logger() -> None:
    global _configured
    if _configured:
        return

    # Settings from the environment
    log_level = os.getenv("LOG_LEVEL", "WARNING").upper()
    log_file = os.getenv("LOG_FILE", "logs/orient.jsonl")
    rotate_when = os.getenv("LOG_ROTATE_WHEN", "midnight")
    rotate_backups = int(os.getenv("LOG_BACKUPS", "7"))

    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(getattr(logging, log_level, logging.WARNING))
    root.propagate = False

    # Console goes to stderr: stdout carries certificates and edge lists
    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(logging.Formatter(
        fmt="%(asctime)s %(levelname)s %(name)s: %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
    ))
    root.addHandler(ch)

    # File: JSONL with time based rotation; LOG_FILE="" switches it off
    if log_file:
        path = pathlib.Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        fh = TimedRotatingFileHandler(
            filename=str(path),
            when=rotate_when,
            backupCount=rotate_backups,
            encoding="utf-8",
            utc=True,
        )
        fh.setFormatter(JsonFormatter())
        root.addHandler(fh)

    _configured = True


def set_level(level: int | str) -> None:
    """Change the project log level after setup (used by `--verbose`)."""
    _setup_root_logger()
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    logging.getLogger(ROOT_LOGGER).setLevel(level)


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """Return a project logger. Handlers are configured once."""
    _setup_root_logger()
    return logging.getLogger(name)

"""Logging utilities"""

import logging
import sys
from typing import Optional

from app.config import get_settings

settings = get_settings()


def setup_logger(name: str = __name__, level: Optional[str] = None) -> logging.Logger:
    """Setup and configure logger"""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or settings.log_level).upper()))

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stdout)
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def set_level(level: str) -> None:
    """Change the level of every logger created under the ``app`` namespace"""
    numeric = getattr(logging, level.upper())
    for name, logger in logging.root.manager.loggerDict.items():
        if name.startswith("app") and isinstance(logger, logging.Logger):
            logger.setLevel(numeric)

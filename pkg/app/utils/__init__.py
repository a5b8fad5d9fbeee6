"""Utility functions"""

from app.utils.logger import setup_logger, set_level

__all__ = ["setup_logger", "set_level"]

# ============================================================================
# tropex/core/__init__.py
# -----------------------
# Core modules initialization.
# ============================================================================

"""
Shared infrastructure: configuration, logging and the error hierarchy.
JSON codecs and reports live in tropex.core.codec and tropex.core.report.
"""

from .config import Config, get_config, set_config
from .errors import BudgetExceeded, InputError, TropexError, ValidationError
from .logging import get_logger, setup_logging

__all__ = [
    'Config',
    'get_config',
    'set_config',
    'get_logger',
    'setup_logging',
    'TropexError',
    'ValidationError',
    'InputError',
    'BudgetExceeded',
]

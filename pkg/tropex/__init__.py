"""
tropex/__init__.py
------------------
Package initialization for tropex, exact tropical and polyhedral computations.
"""

__version__ = "0.1.0"
__author__ = "tropex developers"
__license__ = "MIT"

from .core.config import Config, get_config
from .core.errors import BudgetExceeded, InputError, TropexError, ValidationError
from .core.logging import get_logger, setup_logging

__all__ = [
    '__version__',
    'Config',
    'get_config',
    'get_logger',
    'setup_logging',
    'TropexError',
    'ValidationError',
    'InputError',
    'BudgetExceeded',
]

from .flexible_logger import Logger
from .report_types import OutputFormat, RunMode

__all__ = ['Logger', 'OutputFormat', 'RunMode']

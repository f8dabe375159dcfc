import sys
from datetime import datetime
from typing import Optional, Union

from modular_pi1.config.settings import Settings


class Logger:
    """
    A flexible logger that can write to both console and file with configurable options.

    Usage:
    1. Basic usage (like print):
        logger = Logger()
        logger.log("This is a log message")

    2. Explicit level and output targets:
        logger = Logger(
            name="census",
            console_output=True,
            file_output=True,
            log_level="DEBUG"
        )

    When ``log_level`` or ``file_output`` are left as None they are taken from
    the ``logging`` section of the settings.
    """

    LOG_LEVELS = {
        "DEBUG": 0,
        "INFO": 1,
        "WARNING": 2,
        "ERROR": 3,
        "CRITICAL": 4,
    }

    def __init__(
        self,
        name: str = "modular_pi1",  # also the log file name: "census" -> "census.log"
        console_output: bool = True,
        file_output: Optional[bool] = None,
        log_level: Optional[str] = None,
        log_format: str = "[{timestamp}] [{level}] {message}"
    ):
        """
        :param name: Logger name, used as log file name
        :param console_output: Whether to print logs to stderr
        :param file_output: Whether to append logs to <config_dir>/logs/<name>.log
        :param log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        :param log_format: Custom format for log messages
        """
        settings = Settings()
        if log_level is None:
            log_level = settings.get("logging", "level") or "WARNING"
        if file_output is None:
            file_output = bool(settings.get("logging", "file_output"))

        self.name = name
        self.console_output = console_output
        self.file_output = file_output
        self.log_format = log_format
        self.set_level(log_level)

        self.log_dir = settings.config_dir / "logs"
        self.log_file = self.log_dir / f"{name}.log"
        if self.file_output:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def set_level(self, log_level: str):
        level = log_level.upper()
        if level not in self.LOG_LEVELS:
            raise ValueError(f"Unknown log level: {log_level}")
        self.log_level = level

    def is_enabled_for(self, level: str) -> bool:
        return self.LOG_LEVELS.get(level.upper(), 1) >= self.LOG_LEVELS[self.log_level]

    def _format_message(self, message: str, level: str) -> str:
        return self.log_format.format(
            timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            level=level,
            message=message
        )

    def log(
        self,
        *messages: Union[str, object],
        level: str = "INFO",
        sep: str = " ",
        end: str = "\n"
    ):
        """Log messages with flexibility similar to print()."""
        message = sep.join(str(msg) for msg in messages)

        level = level.upper()
        if level not in self.LOG_LEVELS:
            level = "INFO"
        if not self.is_enabled_for(level):
            return

        formatted_message = self._format_message(message + end, level)
        if self.console_output:
            print(formatted_message, end='', file=sys.stderr)
        if self.file_output:
            try:
                with open(self.log_file, 'a', encoding='utf-8') as f:
                    f.write(formatted_message)
            except OSError as e:
                print(f"Error writing to log file: {e}", file=sys.stderr)

    def debug(self, *messages: Union[str, object], sep: str = " ", end: str = "\n"):
        self.log(*messages, level="DEBUG", sep=sep, end=end)

    def info(self, *messages: Union[str, object], sep: str = " ", end: str = "\n"):
        self.log(*messages, level="INFO", sep=sep, end=end)

    def warning(self, *messages: Union[str, object], sep: str = " ", end: str = "\n"):
        self.log(*messages, level="WARNING", sep=sep, end=end)

    def error(self, *messages: Union[str, object], sep: str = " ", end: str = "\n"):
        self.log(*messages, level="ERROR", sep=sep, end=end)

    def critical(self, *messages: Union[str, object], sep: str = " ", end: str = "\n"):
        self.log(*messages, level="CRITICAL", sep=sep, end=end)

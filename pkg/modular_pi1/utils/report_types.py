from enum import Enum


class OutputFormat(Enum):
    """Report output formats"""
    TEXT = "text"
    JSON = "json"
    CSV = "csv"

    @classmethod
    def get_all_types(cls):
        return [member.value for member in cls]

    @classmethod
    def is_valid(cls, output_format: str) -> bool:
        return output_format in cls.get_all_types()


class RunMode(Enum):
    """Single prime or a range sweep"""
    SINGLE = "single"
    RANGE = "range"

    @classmethod
    def get_all_types(cls):
        return [member.value for member in cls]

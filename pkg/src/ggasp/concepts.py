"""The three stability concepts handled by this package."""

from enum import Enum


class Concept(str, Enum):
    NASH = "ns"
    INDIVIDUAL = "is"
    CORE = "core"

    @classmethod
    def parse(cls, value) -> "Concept":
        if isinstance(value, Concept):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown concept {value!r}; expected ns, is or core") from None

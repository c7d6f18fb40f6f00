"""Shared exception types."""


class CapacityError(ValueError):
    """An operation was asked to exceed its enumeration budget guard."""


class Graph6ParseError(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset

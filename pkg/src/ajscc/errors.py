"""Exception types shared across the package.

All are ValueError subclasses so generic callers can catch one family;
the CLI maps them to its validation exit code.
"""


class ParameterError(ValueError):
    """A parameter or configuration value violates its contract."""


class RangeError(ValueError):
    """An input voltage (or similar quantity) is outside its legal interval."""

    def __init__(self, field: str, value: float, lo: float, hi: float):
        self.field = field
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"{field}={value:g} outside legal interval [{lo:g}, {hi:g}]")


class BomFormatError(ValueError):
    """A bill-of-materials file line failed to parse."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"BOM line {line_no}: {message}")

"""Exception hierarchy shared by every sekit module."""


class SekitError(Exception):
    pass


class DimensionMismatch(SekitError):
    pass


class NotSquare(SekitError):
    pass


class NotPermutation(SekitError):
    pass


class NotRegular(SekitError):
    pass


class InvalidWitness(SekitError):
    pass


class NotApplicable(SekitError):
    pass


class BoundsTooLarge(SekitError):
    def __init__(self, size: int, budget: int):
        super().__init__(f"enumeration of {size} candidates exceeds budget {budget}")
        self.size = size
        self.budget = budget


class ParseError(SekitError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class NegativeEntry(ParseError):
    pass


class ShapeMismatch(ParseError):
    pass


class SchemaVersionUnsupported(ParseError):
    pass


class KindMismatch(ParseError):
    pass

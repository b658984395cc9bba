"""Exception hierarchy. Every error names the entries that caused it."""
from __future__ import annotations


class ToposError(Exception):
    pass


class ValidationError(ToposError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class BadIdentity(ValidationError):
    def __init__(self, x, detail: str = ""):
        self.x = x
        super().__init__(f"unit law fails at {x!r}{': ' + detail if detail else ''}")


class NotAssociative(ValidationError):
    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z
        super().__init__(f"({x}*{y})*{z} != {x}*({y}*{z})")


class UnitLawViolation(ValidationError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"{x}.1 != {x}")


class ActionLawViolation(ValidationError):
    def __init__(self, x, m, n):
        self.x, self.m, self.n = x, m, n
        super().__init__(f"({x}.{m}).{n} != {x}.({m}*{n})")


class NotEquivariant(ValidationError):
    def __init__(self, x, m):
        self.x, self.m = x, m
        super().__init__(f"f({x}.{m}) != f({x}).{m}")


class NotClosed(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class DomainMismatch(ToposError):
    pass


class ShapeMismatch(ToposError):
    pass


class SameElement(ToposError):
    pass


class NotMonic(ToposError):
    def __init__(self, which: str = "f"):
        self.which = which
        super().__init__(f"{which} is not monic")


class NotEpic(ToposError):
    def __init__(self, which: str = "f"):
        self.which = which
        super().__init__(f"{which} is not epic")


class NotEndo(ToposError):
    pass


class PreconditionFailed(ToposError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"precondition failed: {which}")


class SizeGuardExceeded(ToposError):
    def __init__(self, what: str, limit: int):
        self.what, self.limit = what, limit
        super().__init__(f"{what}: search frontier exceeded {limit} candidates")


class InternalInconsistency(ToposError):
    """Two characterizations that must agree did not. Always a bug."""


class InputSyntaxError(ToposError):
    def __init__(self, line: int, col: int, expected: str, source: str = "<input>"):
        self.line, self.col, self.expected = line, col, expected
        super().__init__(f"{source}:{line}:{col}: expected {expected}")


class UnknownReference(ToposError):
    def __init__(self, name: str, line: int | None = None):
        self.name, self.line = name, line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown reference {name!r}{where}")

"""Exception hierarchy shared by every engine.

Each exception carries a machine-readable ``code`` and an optional
``location`` (a JSON pointer-ish path or an object name) so the CLI can
report errors uniformly and map them onto exit statuses.
"""

from __future__ import annotations


class RdimLabError(Exception):
    code = "error"
    exit_status = 1

    def __init__(self, message: str, *, location: str | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


class InputError(RdimLabError, ValueError):
    """Malformed or invalid input (parse errors, ring mismatches, bad params)."""

    code = "input_error"
    exit_status = 1


class ParseError(InputError):
    code = "parse_error"


class RingMismatchError(InputError):
    code = "ring_mismatch"


class InconsistencyError(RdimLabError):
    """A deduction produced lower > upper."""

    code = "inconsistency"
    exit_status = 2

    def __init__(self, message: str, *, location: str | None = None, trace=None):
        super().__init__(message, location=location)
        self.trace = list(trace or [])


class Inconclusive(RdimLabError):
    """Bounded searches that ran out of budget (NOT_FOUND / UNREACHED)."""

    code = "inconclusive"
    exit_status = 3


class NotFound(Inconclusive):
    code = "not_found"


class VanishingCategory(InputError):
    """The module (hence the category) is zero; no lower bound applies."""

    code = "vanishing_category"

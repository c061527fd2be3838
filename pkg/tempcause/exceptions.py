# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Exception hierarchy for tempcause.

Every error carries the exit status the command line reports for it:
parse errors exit with 2, violated preconditions with 3 and broken internal
invariants with 4.
"""


class TempcauseError(Exception):
    exit_code = 1


class ValidationError(TempcauseError):
    exit_code = 3


class ParseError(ValidationError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            location = f"line {line}" + (f", column {column}" if column else "")
            message = f"{location}: {message}"
        super().__init__(message)


class PreconditionError(ValidationError):
    exit_code = 3


class NotATrace(PreconditionError):
    pass


class AlphabetMismatch(PreconditionError):
    pass


class ClassMismatch(PreconditionError):
    pass


class InvariantError(TempcauseError):
    exit_code = 4


def throw(msg, exc=ValidationError):
    """Raise `exc` with `msg`, the way validation code reports failures."""
    raise exc(msg)

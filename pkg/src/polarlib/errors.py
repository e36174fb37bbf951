"""Exception hierarchy shared by the library and the command line front end.

Each class carries a stable machine-readable ``code`` and the process exit
status the CLI uses when the error escapes a command.
"""


class PolarlibError(Exception):
    code = "error"
    exit_code = 1


class InputError(PolarlibError, ValueError):
    """Invalid or inconsistent user input."""

    code = "input-error"
    exit_code = 2

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ParseError(InputError):
    code = "parse-error"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class GenericityError(PolarlibError):
    """Random choices did not land in general position, or trials disagree."""

    code = "genericity-failure"
    exit_code = 3

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConsistencyError(PolarlibError):
    """Two routes that must agree produced different numbers."""

    code = "internal-consistency"
    exit_code = 4

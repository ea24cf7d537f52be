"""Exception types shared across the package.

The CLI maps DomainError to exit code 1 and InputFormatError (together with
ordinary I/O failures) to exit code 2.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InputFormatError(ValueError):
    """An input file or textual payload does not parse or fails validation."""

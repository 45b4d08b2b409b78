"""Exception hierarchy; the CLI maps each class to an exit code."""


class TreeGGMError(Exception):
    exit_code = 1


class ParameterError(TreeGGMError, ValueError):
    """Invalid argument or configuration."""

    exit_code = 2


class DataError(TreeGGMError, ValueError):
    """Inputs are individually valid but inconsistent with each other."""

    exit_code = 3


class IngestionError(DataError):
    """A file could not be parsed or validated."""

    exit_code = 3


class NumericError(TreeGGMError, ArithmeticError):
    exit_code = 4

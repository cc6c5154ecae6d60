"""Exception hierarchy shared by every module of the package."""


class ConicBundleError(Exception):
    """Base class for all errors raised by conic_bundles."""


class DegenerateInputError(ConicBundleError, ValueError):
    """An input violates a mathematical precondition (zero, square, reducible...)."""


class ComputationLimitError(ConicBundleError):
    """A configured resource bound was hit; the answer is unknown, not wrong."""


class FactorizationLimitError(ComputationLimitError):
    pass


class DepthExhaustedError(ComputationLimitError):
    pass


class PrecisionError(ComputationLimitError):
    pass


class UnsupportedError(ConicBundleError):
    """The configuration is valid but outside what the library computes."""


class ParseError(ConicBundleError, ValueError):
    """Malformed or invalid surface description.

    ``code`` is a stable identifier (e.g. ``"malformed-rational"``) and
    ``path`` locates the offending JSON element.
    """

    def __init__(self, code, message, path="$"):
        super().__init__(f"[{code}] {path}: {message}")
        self.code = code
        self.path = path
        self.message = message

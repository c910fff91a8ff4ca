"""
Custom exceptions for the dymotif library.
"""
from typing import Optional


class DymotifException(Exception):
    """Base exception for all dymotif exceptions."""
    def __init__(self, message: str = "dymotif error"):
        self.message = message
        super().__init__(self.message)


class GraphParseError(DymotifException):
    """
    Exception raised when a quadruplet list or a graph record cannot be parsed.
    """
    def __init__(self, message="Malformed dynamic graph text", position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MotifDefinitionError(DymotifException):
    """Exception raised for invalid motif patterns or motif wire records."""
    pass


class InvalidParamsError(DymotifException):
    """Exception raised when generation parameters are out of range."""
    pass


class GenerationError(DymotifException):
    """
    Exception raised when a generator exhausts its retry budget.
    This signals parameters that cannot satisfy the requested constraints.
    """
    def __init__(self, message="Generation failed after exhausting the retry budget", attempts=None):
        self.attempts = attempts
        super().__init__(message)


class InputError(DymotifException):
    """Exception raised for unreadable or empty input files."""
    pass


class EndpointError(DymotifException):
    """
    Exception raised when the LLM endpoint call fails.
    """
    def __init__(self, message="LLM endpoint call failed", status_code=None):
        self.status_code = status_code
        super().__init__(message)


class EndpointConnectionError(EndpointError):
    """The endpoint could not be reached."""
    pass


class EndpointAuthError(EndpointError):
    """The endpoint rejected the credential."""
    pass


class EndpointQuotaError(EndpointError):
    """The endpoint refused the call because of rate limits or quota."""
    pass


class ToolInputError(DymotifException):
    """
    Exception raised when a tool input does not match the tool schema.
    The path names the offending field, e.g. ``motif_list.triangle.time_window``.
    """
    def __init__(self, message="Invalid tool input", path: str = ""):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class StepLimitExceededException(DymotifException):
    """
    Exception raised when the agent reaches its step budget without a final answer.
    """
    def __init__(self, message="Maximum number of agent steps reached without a final answer",
                 response_text=None, steps=None):
        self.response_text = response_text
        self.steps = steps
        super().__init__(message)


class ModelFileError(DymotifException):
    """Exception raised for unreadable or malformed difficulty model files."""
    pass


class FeatureArityError(DymotifException):
    """Exception raised when a feature vector does not match the model's arity."""
    pass


class SingleClassError(DymotifException):
    """Exception raised when training data contains a single class."""
    pass

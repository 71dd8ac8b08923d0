"""Custom exception hierarchy for application/service errors."""


class SgbeamError(Exception):
    """Base error for all application/service failures."""

    def __init__(
        self: "SgbeamError",
        message: str = "An application error occurred.",
    ) -> None:
        """Initialize the base application error with a message.

        Args:
            message: Human-readable description of the error.
        """
        super().__init__(message)


class DataLoadError(SgbeamError):
    """Raised when a data file cannot be read or a cell cannot be parsed.

    Parse failures carry the 0-based data row and column of the offending
    cell so callers can point at it.
    """

    def __init__(
        self: "DataLoadError",
        message: str = "Could not load data.",
        row: int | None = None,
        column: int | None = None,
    ) -> None:
        """Create a DataLoadError.

        Args:
            message: Optional override for the default message.
            row: 0-based data row of the failing cell, if known.
            column: 0-based column of the failing cell, if known.
        """
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyInputError(SgbeamError):
    """Raised when an input file holds no data rows."""

    def __init__(
        self: "EmptyInputError",
        message: str = "Input contains no data rows.",
    ) -> None:
        """Create an EmptyInputError.

        Args:
            message: Optional override for the default message.
        """
        super().__init__(message)


class ConfigError(SgbeamError):
    """Raised for settings that cannot work with the data at hand.

    Examples are a search depth larger than the attribute count or a
    synthetic spec whose attribute groups do not fit.
    """

    def __init__(
        self: "ConfigError",
        message: str = "Invalid configuration.",
    ) -> None:
        """Create a ConfigError.

        Args:
            message: Optional override for the default message.
        """
        super().__init__(message)


class DegenerateBandwidthError(SgbeamError):
    """Raised when a kernel bandwidth cannot be defined for an attribute."""

    def __init__(
        self: "DegenerateBandwidthError",
        message: str = "Attribute has no usable kernel bandwidth.",
    ) -> None:
        """Create a DegenerateBandwidthError.

        Args:
            message: Optional override for the default message.
        """
        super().__init__(message)


class UnknownQueryError(SgbeamError):
    """Raised when a query record id does not exist where it is needed."""

    def __init__(
        self: "UnknownQueryError",
        message: str = "Unknown query record.",
        query: int | None = None,
    ) -> None:
        """Create an UnknownQueryError.

        Args:
            message: Optional override for the default message.
            query: The offending record id.
        """
        super().__init__(message)
        self.query = query


class TruthMismatchError(SgbeamError):
    """Raised when a ground-truth file does not fit the dataset it describes."""

    def __init__(
        self: "TruthMismatchError",
        message: str = "Ground truth does not match the dataset.",
    ) -> None:
        """Create a TruthMismatchError.

        Args:
            message: Optional override for the default message.
        """
        super().__init__(message)

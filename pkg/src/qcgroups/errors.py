"""Error types shared by all modules."""


class InvalidInputError(ValueError):
    """Raised when an operation is called outside its documented domain.

    The CLI maps this to exit status 2; a genuine mathematical failure
    (a verified property that does not hold) is reported separately and
    maps to exit status 1.
    """

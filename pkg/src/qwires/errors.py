"""Domain exception carrying a stable machine-readable code."""


class QwiresError(Exception):
    """Raised for any domain failure the caller may want to dispatch on.

    ``code`` is a SCREAMING_SNAKE string such as ``NEAR_THRESHOLD`` or
    ``MAGNITUDE_TOO_SMALL``; ``message`` is free-form prose for humans.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message

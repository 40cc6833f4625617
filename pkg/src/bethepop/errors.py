"""Domain error type shared by every module."""

from __future__ import annotations


class BetheError(ValueError):
    """A domain failure with a stable machine-readable code.

    The command-line front end serializes these as {error, code, detail}.
    """

    def __init__(self, code: str, message: str, **detail):
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail

    def to_json(self) -> dict:
        return {"error": self.message, "code": self.code, "detail": self.detail}

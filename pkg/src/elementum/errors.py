"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class InvalidInput(ValueError):
    """Rejected input: a precondition of the called operation does not hold."""


class CertificateError(RuntimeError):
    """An internal certificate: a result the underlying theory says cannot happen.

    ``kind`` is one of ``"lemma2-violation"``, ``"theorem-counterexample"`` or
    ``"internal"``; ``data`` carries a JSON-compatible payload describing it.
    """

    def __init__(self, kind: str, message: str, data: dict[str, Any] | None = None):
        super().__init__(message)
        self.kind = kind
        self.data = dict(data or {})

    def to_document(self) -> dict[str, Any]:
        return {"certificate": {"kind": self.kind, "message": str(self), **self.data}}

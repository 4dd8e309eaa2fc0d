"""Judging service: blinded pools over HTTP, durable judgment recording,
exports and noise quality control."""

from .http import AUTH_HEADER, JudgingHTTPServer, ServiceConfig, build_service, serve
from .service import Assignment, JudgingService, NextDocument
from .store import JudgmentLog

__all__ = [
    "AUTH_HEADER",
    "Assignment",
    "JudgingHTTPServer",
    "JudgingService",
    "JudgmentLog",
    "NextDocument",
    "ServiceConfig",
    "build_service",
    "serve",
]

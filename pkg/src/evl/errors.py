"""Exception types shared across the engine's client and pipeline layers."""

from __future__ import annotations


class EvlError(Exception):
    """Base class for engine errors."""


class NetworkFailure(EvlError):
    """Upstream service unreachable or returned a transport-level error."""


class AuthFailure(EvlError):
    """Upstream rejected the supplied credential."""


class QuotaExceeded(EvlError):
    """Upstream rejected the request on rate or quota grounds."""


class NoCaptionTrack(EvlError):
    """The requested video has no caption track."""


class AnnotatorUnavailable(EvlError):
    """Remote annotation backend unreachable or timed out."""


class AllSourcesFailed(EvlError):
    """Every requested knowledge source errored and nothing was cached."""


class ReplayMiss(EvlError):
    """A replay client received a request absent from its fixture."""

    def __init__(self, source: str, request_key: str):
        super().__init__(f"no recorded interaction for {source}:{request_key!r}")
        self.source = source
        self.request_key = request_key

"""Exception hierarchy shared by every module."""


class LightspanError(Exception):
    """Base class for all library errors."""


class InputError(LightspanError, ValueError):
    """Malformed or contract-violating input (CLI exit code 2)."""


class StructuralError(LightspanError):
    """A charging scheme or forest whose structure is not what it claims."""


class CertificateRefused(LightspanError):
    """A lightness certificate was requested for a scheme that does not qualify."""


class ForestConstructionError(LightspanError):
    """The charging-forest construction reached a state its invariants forbid."""

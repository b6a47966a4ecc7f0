"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class CertificationError(RuntimeError):
    """A certified comparison or enclosure could not be established."""

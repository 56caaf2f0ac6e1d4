"""Exception types shared across the toolkit."""


class NotCoprime(ValueError):
    """A modular inverse was requested for arguments sharing a factor."""


class NonResidue(ValueError):
    """A modular square root was requested for a quadratic non-residue."""


class NotReducible(RuntimeError):
    """Euclidean peeling got stuck before reaching the identity matrix."""


class RetryExhausted(RuntimeError):
    """A randomized search ran out of its retry budget."""

"""Exception hierarchy shared by all modules."""


class InfTuranError(Exception):
    """Base class for every error raised by :mod:`inftur`."""


class OrderUnavailable(InfTuranError, ValueError):
    """No element of the requested multiplicative order exists (t does not divide p-1)."""


class NoPrimeInWindow(InfTuranError, LookupError):
    """The prime window sqrt(nt) - n^(1/3) <= p <= sqrt(nt) holds no prime p = 1 (mod t)."""


class ZeroPair(InfTuranError, ValueError):
    """(0, 0) has no equivalence class."""


class PartitionViolation(InfTuranError):
    """Observed codegrees do not follow the {0, t} class structure."""


class SpectrumViolation(InfTuranError):
    """An adjacency eigenvalue lies outside the allowed set at the given tolerance."""


class PaddingViolation(InfTuranError):
    """The gadget needed more isolated padding vertices than 2 n^(5/6) / sqrt(t)."""


class DomainError(InfTuranError, ValueError):
    """Argument outside the domain of a formula."""


class DimensionMismatch(InfTuranError, ValueError):
    """Assignment vector length differs from the system's variable count."""


class BracketInvalid(InfTuranError, ValueError):
    """Bisection endpoints are not feasible/infeasible as required."""

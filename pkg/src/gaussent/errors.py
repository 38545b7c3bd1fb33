"""Exception hierarchy shared by every module.

Three failure kinds are distinguished:

* :class:`InvalidArgumentError` for malformed arguments (bad shapes,
  out-of-range indices, parameters outside their allowed interval);
* :class:`DomainError` for well-formed inputs that do not describe a
  physical object (a covariance matrix violating the uncertainty
  principle, a mixed state passed where a pure one is required, ...);
* :class:`NumericError` for numerical breakdowns such as a negative
  radicand beyond tolerance or an optimizer that fails to converge.
"""


class GaussentError(Exception):
    """Base class for all errors raised by :mod:`gaussent`."""


class InvalidArgumentError(GaussentError, ValueError):
    """An argument is malformed or out of its allowed range."""


class DomainError(GaussentError, ValueError):
    """The input is well formed but physically invalid."""


class NumericError(GaussentError, ArithmeticError):
    """A numerical procedure broke down or missed its tolerance."""

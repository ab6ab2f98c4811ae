"""
Exceptions and warnings
-----------------------
The exception classes derive from the builtin :class:`ValueError`
and :class:`RuntimeError`, so client code may catch either the
builtin type or the more specific class defined here.

    *   :class:`ConfigurationError` bad input: a measure specification,
        a dimension mismatch, a non-normalizable potential, a CLI flag.
    *   :class:`ParseError` malformed polynomial text.
    *   :class:`RangeError` a parameter outside an inequality's hypothesis.
    *   :class:`EstimationError` a numerical estimate could not be formed.
    *   :class:`DegeneracyError` a degenerate (constant or singular) input.
    *   :class:`NotIsotropicError` an isotropic measure was required.
    *   :class:`ConvergenceError` an iterative search did not converge.
    *   :class:`InvalidMeasureError` a sampler detected an invalid measure.

Warnings are issued with :func:`warnings.warn` using the
:class:`RuntimeWarning` subclasses :class:`GridWarning`,
:class:`DivergenceWarning`, :class:`HeavyTailWarning`
and :class:`HypothesisWarning`.

Module contents
---------------

"""
__all__ = (
    'LCSError',
    'ConfigurationError',
    'ParseError',
    'RangeError',
    'EstimationError',
    'DegeneracyError',
    'NotIsotropicError',
    'ConvergenceError',
    'InvalidMeasureError',
    'GridWarning',
    'DivergenceWarning',
    'HeavyTailWarning',
    'HypothesisWarning',
)

#----------------------------------------------------------------------------
class LCSError(Exception):
    """Base of the exceptions raised by this package"""

class ConfigurationError(LCSError, ValueError):
    pass

class ParseError(ConfigurationError):

    """
    Malformed polynomial text

    The attribute ``position`` holds the 0-based index
    of the offending character.
    """

    def __init__(self,message,position):
        self.position = position
        super(ParseError,self).__init__(
            "{} at character {}".format(message,position)
        )

class RangeError(ConfigurationError):
    pass

class EstimationError(LCSError, RuntimeError):

    """
    A numerical estimate could not be formed

    ``bad_count`` is the number of offending samples, when known.
    """

    def __init__(self,message,bad_count=None):
        self.bad_count = bad_count
        super(EstimationError,self).__init__(message)

class DegeneracyError(EstimationError):
    pass

class NotIsotropicError(EstimationError):
    pass

class ConvergenceError(LCSError, RuntimeError):
    pass

class InvalidMeasureError(LCSError, ValueError):
    pass

#----------------------------------------------------------------------------
class GridWarning(RuntimeWarning):
    """A grid had to be snapped or was too coarse"""

class DivergenceWarning(RuntimeWarning):
    """A quantity is infinite"""

class HeavyTailWarning(RuntimeWarning):
    """A high moment has a large relative standard error"""

class HypothesisWarning(RuntimeWarning):
    """Parameters are outside an inequality's hypothesis"""

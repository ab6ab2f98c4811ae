"""
Sample estimates
----------------
    *   :func:`mean` returns the mean of a sample of data.
    *   :func:`standard_deviation` evaluates the standard
        deviation of a sample of data.
    *   :func:`standard_uncertainty` evaluates the standard
        uncertainty associated with the sample mean.
    *   :func:`batch_means` returns the mean of a long, possibly
        correlated, sequence with a standard error obtained from
        the means of consecutive batches.

Least squares regression
------------------------
    *   :func:`line_fit` performs an ordinary least-squares straight
        line fit to a sample of data.

Comparisons
-----------
    *   :func:`relative_change` compares two estimates of one quantity.

Module contents
---------------

"""
import math

import numpy as np

from LCS import N_BATCH_MEANS
from LCS.errors import ConfigurationError, EstimationError
from LCS.named_tuples import Estimate, LineFit

__all__ = (
    'mean',
    'standard_deviation',
    'standard_uncertainty',
    'batch_means',
    'line_fit',
    'relative_change',
)

#-----------------------------------------------------------------------------------------
def mean(seq):
    """Return the arithmetic mean of data in ``seq``

    **Example**::

        >>> estimates.mean([1.0, 2.0, 3.0, 4.0])
        2.5

    """
    seq = np.asarray(seq,dtype=float)
    if seq.size == 0:
        raise EstimationError("the mean of an empty sequence is undefined")
    return float(np.mean(seq))

#-----------------------------------------------------------------------------------------
def standard_deviation(seq,mu=None):
    """Return the sample standard deviation

    :arg seq: sequence of data
    :arg mu: the arithmetic mean of ``seq``

    """
    seq = np.asarray(seq,dtype=float)
    N = seq.size
    if N < 2:
        raise EstimationError(
            "at least 2 values are needed, got {}".format(N)
        )
    if mu is None:
        mu = mean(seq)
    return math.sqrt( float(np.sum( (seq - mu)**2 )) / (N - 1) )

#-----------------------------------------------------------------------------------------
def standard_uncertainty(seq,mu=None):
    """Return the standard uncertainty associated with the sample mean

    **Example**::

        >>> round( estimates.standard_uncertainty(range(15)), 10 )
        1.1547005384

    """
    seq = np.asarray(seq,dtype=float)
    return standard_deviation(seq,mu) / math.sqrt(seq.size)

#-----------------------------------------------------------------------------------------
def batch_means(values,nbatch=N_BATCH_MEANS):
    """Return an :obj:`~named_tuples.Estimate` of the mean of ``values``

    The standard error is the standard uncertainty of the means of
    ``nbatch`` consecutive batches, which remains valid when the values
    are weakly correlated (e.g., thinned Markov chain output). Fewer
    batches are used when there are fewer than ``2*nbatch`` values.

    The value returned is the mean of all the data, so the result does
    not depend on the batch boundaries.

    """
    values = np.asarray(values,dtype=float).ravel()
    N = values.size
    if N < 2:
        raise EstimationError(
            "batch means need at least 2 values, got {}".format(N)
        )
    k = min(nbatch, N // 2)
    k = max(k,2)

    value = float(np.mean(values))
    means = np.array([ np.mean(b) for b in np.array_split(values,k) ])
    u = standard_uncertainty(means)

    return Estimate(value,u,N)

#-----------------------------------------------------------------------------------------
def line_fit(x,y):
    """Return a least-squares straight-line fit to the data

    :arg x:     sequence of stimulus data (independent-variable)
    :arg y:     sequence of response data (dependent-variable)

    :rtype:     :obj:`~named_tuples.LineFit`

    Performs an ordinary least-squares regression of ``y`` to ``x``.
    The standard uncertainties of the intercept and slope are
    scaled by the residuals.

    **Example**::

        >>> fit = estimates.line_fit([1,2,3,4],[3,5,7,9])
        >>> round(fit.slope,12), round(fit.intercept,12)
        (2.0, 1.0)

    """
    x = np.asarray(x,dtype=float)
    y = np.asarray(y,dtype=float)
    N = x.size

    if N != y.size:
        raise ConfigurationError(
            "x and y differ in length: {} and {}".format(N,y.size)
        )
    if N < 3:
        raise ConfigurationError(
            "a straight-line fit needs at least 3 points, got {}".format(N)
        )

    df = N - 2

    S = float(N)
    S_x = math.fsum( x )
    S_y = math.fsum( y )

    k = S_x / S
    t = x - k

    S_tt = math.fsum( t*t )
    if S_tt == 0.0:
        raise ConfigurationError("the x values are all equal")

    b_ = math.fsum( t*y ) / S_tt
    a_ = (S_y - b_*S_x)/S

    siga = math.sqrt( (1.0 + S_x*S_x/(S*S_tt))/S )
    sigb = math.sqrt( 1.0/S_tt )

    # Sum of squared residuals needed to correctly calculate parameter uncertainties
    ssr = math.fsum( (y - a_ - b_*x)**2 )

    data_u = math.sqrt( ssr/df )
    siga *= data_u
    sigb *= data_u

    return LineFit(a_,b_,siga,sigb,ssr,N)

#-----------------------------------------------------------------------------------------
def relative_change(a,b):
    """Return ``|a - b| / max(|a|, |b|)``, or 0 when both are zero"""
    scale = max(abs(a),abs(b))
    if scale == 0.0:
        return 0.0
    if not math.isfinite(scale):
        return 0.0 if a == b else float('inf')
    return abs(a - b)/scale

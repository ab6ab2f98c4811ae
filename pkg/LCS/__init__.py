"""
A Python package for the fractional smoothness of the distributions
of polynomials under log-concave measures.

Log-concave measures on R^n are sampled and pushed through sparse
polynomials. The one-dimensional laws obtained are compared with
total-variation, Fortet-Mourier and Besov shift-modulus functionals,
and the inequalities relating these quantities are checked numerically.

"""
#----------------------------------------------------------------------------
# Global constants, etc

inf = float('inf')
nan = float('nan')

# Sampling-based quantities are supported up to `MAX_DIM`, density-level
# quantities (quadrature in R^n) up to `MAX_DENSITY_DIM`.
MAX_DIM = 16
MAX_DENSITY_DIM = 3

# Relative tolerance on a covariance for isotropy
ISOTROPY_RTOL = 1E-2

# Tolerance for golden-section line searches
LINE_SEARCH_TOL = 1E-8

# Rows drawn from each sampler sub-stream
BATCH_SIZE = 65536

# Number of batches used for batch-means standard errors
N_BATCH_MEANS = 32

# Largest grid solved by the Fortet-Mourier linear program
FM_MAX_POINTS = 4096

#----------------------------------------------------------------------------
version = "0.1.0"
copyright = """Copyright (c) 2026, \
The LCS developers"""

from LCS.errors import *
from LCS import (
    constants,
    estimates,
    measure,
    sampler,
    context,
    polynomial,
    pushforward,
    metrics,
    verifier,
    persistence,
    reporting,
)
from LCS.polynomial import Polynomial, parse
from LCS.measure import (
    LogConcaveMeasure,
    AffineMap,
    gaussian,
    uniform_box,
    uniform_ball,
    product_exponential,
    custom,
    from_spec,
)
from LCS.sampler import SeededStream, sample, expectation
from LCS.context import Context
from LCS.pushforward import (
    Density1D,
    EmpiricalSample1D,
    estimate_density,
    analytic_density,
)
from LCS.verifier import InequalityReport

__all__ = (
        'Polynomial'
    ,   'parse'
    ,   'LogConcaveMeasure'
    ,   'AffineMap'
    ,   'gaussian'
    ,   'uniform_box'
    ,   'uniform_ball'
    ,   'product_exponential'
    ,   'custom'
    ,   'from_spec'
    ,   'SeededStream'
    ,   'sample'
    ,   'expectation'
    ,   'Context'
    ,   'Density1D'
    ,   'EmpiricalSample1D'
    ,   'estimate_density'
    ,   'analytic_density'
    ,   'InequalityReport'
    ,   'constants'
    ,   'estimates'
    ,   'measure'
    ,   'sampler'
    ,   'context'
    ,   'polynomial'
    ,   'pushforward'
    ,   'metrics'
    ,   'verifier'
    ,   'persistence'
    ,   'reporting'
    ,   'copyright'
    ,   'version'
    ,   'inf'
    ,   'nan'
) + errors.__all__

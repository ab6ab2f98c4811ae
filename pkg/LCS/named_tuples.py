from collections import namedtuple

Estimate = namedtuple('Estimate','value, u, count')
""":obj:`~collections.namedtuple`: A Monte Carlo or quadrature estimate

.. attribute:: value

   :class:`float`: the estimate

.. attribute:: u

   :class:`float`: its standard error (the quadrature error bound for quadrature)

.. attribute:: count

   :class:`int`: number of samples used (0 for quadrature)

"""

MeanCovariance = namedtuple('MeanCovariance','mean, cov, mean_u, cov_u, method')
""":obj:`~collections.namedtuple`: First and second moments of a measure

.. attribute:: mean

   :class:`numpy.ndarray`: the mean vector

.. attribute:: cov

   :class:`numpy.ndarray`: the covariance matrix

.. attribute:: mean_u

   :class:`numpy.ndarray`: standard errors of the mean (zero when exact)

.. attribute:: cov_u

   :class:`numpy.ndarray`: standard errors of the covariance (zero when exact)

.. attribute:: method

   :class:`str`: one of ``'analytic'``, ``'quadrature'`` or ``'montecarlo'``

"""

MaxDensity = namedtuple('MaxDensity','value, argmax')
""":obj:`~collections.namedtuple`: The maximum of a density and where it is attained

.. attribute:: value

   :class:`float`: the maximum density

.. attribute:: argmax

   :class:`numpy.ndarray`: a point where the maximum is attained

"""

LevelSet = namedtuple('LevelSet','volume, radius, argmax, tau, refinement_change')
""":obj:`~collections.namedtuple`: Geometry of the body ``{rho >= exp(-tau) max rho}``

.. attribute:: volume

   :class:`float`: Lebesgue volume of the body

.. attribute:: radius

   :class:`float`: largest Euclidean norm of a point in the body

.. attribute:: argmax

   :class:`numpy.ndarray`: the point about which the body was parametrised

.. attribute:: tau

   :class:`float`: the level parameter

.. attribute:: refinement_change

   :class:`float`: relative change of the volume between two angular resolutions

"""

LineFit = namedtuple('LineFit','intercept, slope, u_intercept, u_slope, ssr, N')
""":obj:`~collections.namedtuple`: An ordinary least-squares straight line

.. attribute:: intercept

.. attribute:: slope

.. attribute:: u_intercept

   :class:`float`: standard uncertainty of the intercept

.. attribute:: u_slope

   :class:`float`: standard uncertainty of the slope

.. attribute:: ssr

   :class:`float`: sum of the squared residuals

.. attribute:: N

   :class:`int`: number of points

"""

PolynomialMoments = namedtuple(
    'PolynomialMoments',
    'mean, mean_u, variance, variance_u, abs_central, abs_central_u, norms, zero_fraction, method'
)
""":obj:`~collections.namedtuple`: Moments of a polynomial under a measure

.. attribute:: mean

.. attribute:: mean_u

.. attribute:: variance

   :class:`float`: the variance ``sigma_f^2``

.. attribute:: variance_u

.. attribute:: abs_central

   :class:`float`: ``E|f - Ef|^(1/(d-1))``, or ``None`` when ``d < 2``

.. attribute:: abs_central_u

.. attribute:: norms

   :class:`dict`: maps ``q`` to an :obj:`Estimate` of ``||f||_q``,
   or to ``None`` when the norm is undefined

.. attribute:: zero_fraction

   :class:`float`: the fraction of samples at which ``f`` vanished

.. attribute:: method

   :class:`str`: how the moments were obtained

"""

BesovFit = namedtuple('BesovFit','seminorm, slope, slope_u, residual, alpha, h, delta')
""":obj:`~collections.namedtuple`: A fit of the shift modulus to a power law

.. attribute:: seminorm

   :class:`float`: ``sup Delta(h)/h^alpha`` over ``h`` from the smallest shift upward

.. attribute:: slope

   :class:`float`: least-squares slope of ``log Delta`` against ``log h``

.. attribute:: slope_u

   :class:`float`: standard uncertainty of the slope

.. attribute:: residual

   :class:`float`: root-mean-square residual of the fit

.. attribute:: alpha

.. attribute:: h

   :class:`numpy.ndarray`: the shifts used

.. attribute:: delta

   :class:`numpy.ndarray`: ``Delta(h)`` at each shift

"""

FortetMourier = namedtuple('FortetMourier','value, nodes, phi, objective, w1, refinement_change')
""":obj:`~collections.namedtuple`: A Fortet-Mourier distance with its optimality certificate

.. attribute:: value

   :class:`float`: the distance

.. attribute:: nodes

   :class:`numpy.ndarray`: grid nodes of the piecewise-linear test function

.. attribute:: phi

   :class:`numpy.ndarray`: values of the optimal test function at the nodes

.. attribute:: objective

   :class:`float`: ``int phi d(nu1 - nu2)`` recomputed from ``phi``

.. attribute:: w1

   :class:`float`: the Wasserstein-1 distance ``int |F1 - F2|``

.. attribute:: refinement_change

   :class:`float`: change of the value when solved at half resolution

"""

Check = namedtuple('Check','label, lhs, op, rhs')
""":obj:`~collections.namedtuple`: One comparison in an inequality report

.. attribute:: label

   :class:`str`: a short description

.. attribute:: lhs

.. attribute:: op

   :class:`str`: one of ``'<='``, ``'<'``, ``'>='``, ``'finite'``

.. attribute:: rhs

   ignored when ``op`` is ``'finite'``

"""

ConstantValue = namedtuple('ConstantValue','name, params, value, crosscheck_error')
""":obj:`~collections.namedtuple`: An evaluated constant

.. attribute:: name

.. attribute:: params

   :class:`dict`

.. attribute:: value

.. attribute:: crosscheck_error

   :class:`float`: absolute difference from an independent evaluation

"""

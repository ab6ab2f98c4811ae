"""
Closed-form constants
---------------------
Every explicit constant of the theory is evaluated here in closed
form. Each function ``name`` has a twin ``name_crosscheck`` that
evaluates the same quantity independently, by adaptive quadrature
or by Monte Carlo over the sphere.

    *   :func:`c_n_tau` the level-set volume constant
        ``c_n(tau) = 1 + n int_1^inf t^(n-1) exp(-tau t) dt``.
    *   :func:`c2_d` the Skorohod-term constant ``(1 + 3 d pi)/2``.
    *   :func:`c1_integral` the integral factor
        ``int_0^inf (s+1)^(-2) s^(1/(2d-2)) ds`` of the gradient-term constant.
    *   :func:`C_nd` the sphere average ``int |(e, e_1)|^(1/(d-1)) sigma_n(de)``.
    *   :func:`gaussian_abs_moment` ``E|Z|^alpha`` for a standard normal ``Z``.
    *   :func:`C1_dp` the constant of the ``L^p`` bound on the density
        of a degree-``d`` polynomial image.
    *   :func:`lp_constant` the same bound for a general smoothness order ``alpha``.
    *   :func:`lp_difference_constant` the ``L^p`` bound on a difference of densities.
    *   :func:`tv_fm_constant` the constant relating total variation to the
        Fortet-Mourier distance of two measures with Besov densities.
    *   :func:`polynomial_tv_fm_constant` the same constant for two
        polynomial images.
    *   :func:`malliavin_dimension_constant` the dimension-dependent
        constant ``max{c_1(d)/C(n,d), c_2(d)}``.
    *   :func:`malliavin_composition` the composite ``C(d) = C_1(d)(4c(d-1) + 1)``
        as a :class:`Formula` with the unknown constants left symbolic.

Absolute constants that are not known numerically (``c``, ``C_1``,
``C(d)``) are always inputs. :func:`evaluate` dispatches by name
and is used by the command line.

Module contents
---------------

"""
import math
import numbers

import numpy as np
from scipy import special, integrate

from LCS.errors import RangeError, ConfigurationError
from LCS.named_tuples import ConstantValue, Estimate

__all__ = (
    'c_n_tau',
    'c2_d',
    'c1_integral',
    'C_nd',
    'gaussian_abs_moment',
    'normal_abs_moment',
    'C1_dp',
    'lp_constant',
    'lp_difference_constant',
    'tv_fm_constant',
    'polynomial_tv_fm_constant',
    'malliavin_dimension_constant',
    'malliavin_composition',
    'Formula',
    'c_n_tau_crosscheck',
    'c1_integral_crosscheck',
    'C_nd_crosscheck',
    'C_nd_montecarlo',
    'gaussian_abs_moment_crosscheck',
    'lp_constant_crosscheck',
    'lp_difference_constant_crosscheck',
    'evaluate',
    'NAMES',
)

_QUAD = dict(epsabs=0.0,epsrel=1E-12,limit=200)

#----------------------------------------------------------------------------
def _integer(x,name,minimum):
    if isinstance(x,bool) or not isinstance(x,numbers.Real) or int(x) != x:
        raise RangeError(
            "{} must be an integer, got {!r}".format(name,x)
        )
    x = int(x)
    if x < minimum:
        raise RangeError(
            "{} must be at least {}, got {!r}".format(name,minimum,x)
        )
    return x

def _positive(x,name):
    x = float(x)
    if not x > 0.0:
        raise RangeError(
            "{} must be positive, got {!r}".format(name,x)
        )
    return x

def _alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise RangeError(
            "alpha must belong to (0, 1], got {!r}".format(alpha)
        )
    return alpha

def _p_range(p,upper):
    p = float(p)
    if not 1.0 < p < upper:
        raise RangeError(
            "p must lie in the open interval (1, {!r}), got {!r}".format(upper,p)
        )
    return p

#----------------------------------------------------------------------------
def c_n_tau(n,tau):
    """Return ``c_n(tau) = 1 + n int_1^inf t^(n-1) exp(-tau t) dt``

    The integral is ``Gamma(n, tau) / tau^n`` (upper incomplete Gamma).

    **Example**::

        >>> round( constants.c_n_tau(1,1), 10 )
        1.3678794412

    """
    n = _integer(n,'n',1)
    tau = _positive(tau,'tau')
    log_upper = special.gammaln(n) + math.log(special.gammaincc(n,tau)) \
        if special.gammaincc(n,tau) > 0.0 else -math.inf
    return 1.0 + n*math.exp(log_upper - n*math.log(tau))

def c_n_tau_crosscheck(n,tau):
    """Return :func:`c_n_tau` by adaptive quadrature"""
    n = _integer(n,'n',1)
    tau = _positive(tau,'tau')
    v,_ = integrate.quad(
        lambda t: n*t**(n-1)*math.exp(-tau*t), 1.0, np.inf, **_QUAD
    )
    return 1.0 + v

#----------------------------------------------------------------------------
def c2_d(d):
    """Return ``c_2(d) = (1 + 3 d pi)/2``"""
    d = _integer(d,'d',1)
    return 0.5*(1.0 + 3.0*d*math.pi)

#----------------------------------------------------------------------------
def c1_integral(d):
    """Return ``int_0^inf (s+1)^(-2) s^(1/(2d-2)) ds``

    The integral equals ``B(1 + a, 1 - a)`` with ``a = 1/(2d-2)``.
    The absolute factor ``c d`` of ``c_1(d)`` is not included.

    **Example**::

        >>> round( constants.c1_integral(2), 10 )
        1.5707963268

    """
    d = _integer(d,'d',2)
    a = 1.0/(2*d - 2)
    return float( special.beta(1.0 + a, 1.0 - a) )

def c1_integral_crosscheck(d):
    """Return :func:`c1_integral` by adaptive quadrature"""
    d = _integer(d,'d',2)
    a = 1.0/(2*d - 2)
    fn = lambda s: s**a/(s + 1.0)**2
    v1,_ = integrate.quad(fn, 0.0, 1.0, **_QUAD)
    v2,_ = integrate.quad(fn, 1.0, np.inf, **_QUAD)
    return v1 + v2

#----------------------------------------------------------------------------
def C_nd(n,d):
    """Return the sphere average ``C(n,d)`` of ``|(e, e_1)|^(1/(d-1))``

    The closed form is
    ``Gamma(n/2) Gamma((b+1)/2) / (sqrt(pi) Gamma((n+b)/2))``
    with ``b = 1/(d-1)``.

    **Example**::

        >>> round( constants.C_nd(2,2), 10 )
        0.6366197724

    """
    n = _integer(n,'n',1)
    d = _integer(d,'d',2)
    b = 1.0/(d - 1)
    return math.exp(
        special.gammaln(0.5*n) + special.gammaln(0.5*(b + 1.0))
        - 0.5*math.log(math.pi) - special.gammaln(0.5*(n + b))
    )

def C_nd_crosscheck(n,d):
    """Return :func:`C_nd` by quadrature against the law of ``e_1`` on the sphere

    For ``n >= 2`` the first coordinate of a uniform point on the
    sphere has density proportional to ``(1 - t^2)^((n-3)/2)``.

    """
    n = _integer(n,'n',1)
    d = _integer(d,'d',2)
    if n == 1:
        return 1.0
    b = 1.0/(d - 1)
    w = 0.5*(n - 3)
    num,_ = integrate.quad(
        lambda t: t**b*(1.0 + t)**w, 0.0, 1.0,
        weight='alg', wvar=(0.0, w), **_QUAD
    )
    den,_ = integrate.quad(
        lambda t: (1.0 + t)**w, 0.0, 1.0,
        weight='alg', wvar=(0.0, w), **_QUAD
    )
    return num/den

def C_nd_montecarlo(n,d,count,s):
    """Return an :obj:`~named_tuples.Estimate` of :func:`C_nd` by sphere sampling

    :arg s: a :class:`~sampler.SeededStream`

    """
    from LCS.sampler import sphere_average
    n = _integer(n,'n',1)
    d = _integer(d,'d',2)
    b = 1.0/(d - 1)
    return sphere_average(lambda u: np.abs(u[:,0])**b, n, count, s)

#----------------------------------------------------------------------------
def gaussian_abs_moment(alpha):
    """Return ``E|Z|^alpha = 2^(alpha/2) Gamma((alpha+1)/2) / sqrt(pi)``

    **Example**::

        >>> round( constants.gaussian_abs_moment(1), 10 )
        0.7978845608

    """
    alpha = _alpha(alpha)
    return normal_abs_moment(alpha)

def normal_abs_moment(q):
    """Return ``E|Z|^q`` for any ``q > -1``

    Unlike :func:`gaussian_abs_moment` the order is not restricted
    to ``(0, 1]``.

    """
    alpha = float(q)
    if not alpha > -1.0:
        raise RangeError("q must be greater than -1, got {!r}".format(alpha))
    return math.exp(
        0.5*alpha*math.log(2.0) + special.gammaln(0.5*(alpha + 1.0))
        - 0.5*math.log(math.pi)
    )

def gaussian_abs_moment_crosscheck(alpha):
    """Return :func:`gaussian_abs_moment` by adaptive quadrature"""
    alpha = _alpha(alpha)
    v,_ = integrate.quad(
        lambda t: t**alpha*math.exp(-0.5*t*t), 0.0, np.inf, **_QUAD
    )
    return 2.0*v/math.sqrt(2.0*math.pi)

#----------------------------------------------------------------------------
def lp_constant(alpha,p,C):
    """Return the ``L^p`` density bound for smoothness order ``alpha``

    ``(p/(p-1) + p/(1/(1-alpha) - p))^(1/p) C^((1-1/p)/alpha)``,
    valid for ``1 < p < 1/(1-alpha)``. When ``alpha = 1``
    the second term vanishes.

    """
    alpha = _alpha(alpha)
    upper = math.inf if alpha == 1.0 else 1.0/(1.0 - alpha)
    p = _p_range(p,upper)
    C = _positive(C,'C')
    second = 0.0 if alpha == 1.0 else p/(upper - p)
    return (p/(p - 1.0) + second)**(1.0/p) * C**((1.0 - 1.0/p)/alpha)

def C1_dp(d,p,C):
    """Return ``C_1(d,p) = (p/(p-1) + p/(d/(d-1) - p))^(1/p) C^(d(1-1/p))``

    :arg C: the Malliavin-type constant ``C(d)`` (an input: it is not known numerically)

    ``p`` must lie in ``(1, d/(d-1))``.

    **Example**::

        >>> round( constants.C1_dp(2,1.5,1), 10 )
        3.3019272489

    """
    d = _integer(d,'d',2)
    p = _p_range(p,d/(d - 1.0))
    C = _positive(C,'C')
    return (p/(p - 1.0) + p/(d/(d - 1.0) - p))**(1.0/p) * C**(d*(1.0 - 1.0/p))

def lp_difference_constant(alpha,p,tv,C_nu,C_sigma):
    """Return the ``L^p`` bound on the difference of two densities

    ``(p/(p-1) + p/(1/(1-alpha) - p))^(1/p) tv^(1 - (1-1/p)/alpha)
    (C_nu + C_sigma)^((1-1/p)/alpha)``

    :arg tv: the total-variation distance of the two measures
    :arg C_nu: Malliavin-type constant of the first measure
    :arg C_sigma: Malliavin-type constant of the second measure

    """
    alpha = _alpha(alpha)
    upper = math.inf if alpha == 1.0 else 1.0/(1.0 - alpha)
    p = _p_range(p,upper)
    tv = float(tv)
    if tv < 0.0:
        raise RangeError("tv must be nonnegative, got {!r}".format(tv))
    second = 0.0 if alpha == 1.0 else p/(upper - p)
    e = (1.0 - 1.0/p)/alpha
    return (p/(p - 1.0) + second)**(1.0/p) * tv**(1.0 - e) * (C_nu + C_sigma)**e

def _lp_integral(alpha,p):
    # p/(p-1) + p/(1/(1-alpha) - p) = int_0^inf p s^(p-1) min(1/s, s^(-1/(1-alpha))) ds,
    # split at s = 1 and mapped to [0, inf) by s = exp(-+u)
    v,_ = integrate.quad(lambda u: p*math.exp(-(p - 1.0)*u), 0.0, np.inf, **_QUAD)
    if alpha < 1.0:
        a = 1.0/(1.0 - alpha)
        w,_ = integrate.quad(lambda u: p*math.exp((p - a)*u), 0.0, np.inf, **_QUAD)
        v += w
    return v

def lp_constant_crosscheck(alpha,p,C):
    """Return :func:`lp_constant` with its first factor found by quadrature"""
    alpha = _alpha(alpha)
    p = _p_range(p,math.inf if alpha == 1.0 else 1.0/(1.0 - alpha))
    C = _positive(C,'C')
    return _lp_integral(alpha,p)**(1.0/p) * C**((1.0 - 1.0/p)/alpha)

def lp_difference_constant_crosscheck(alpha,p,tv,C_nu,C_sigma):
    """Return :func:`lp_difference_constant` with its first factor found by quadrature"""
    alpha = _alpha(alpha)
    p = _p_range(p,math.inf if alpha == 1.0 else 1.0/(1.0 - alpha))
    tv = float(tv)
    if tv < 0.0:
        raise RangeError("tv must be nonnegative, got {!r}".format(tv))
    e = (1.0 - 1.0/p)/alpha
    return _lp_integral(alpha,p)**(1.0/p) * tv**(1.0 - e) * (C_nu + C_sigma)**e

#----------------------------------------------------------------------------
def tv_fm_constant(C_nu,C_sigma,alpha):
    """Return ``C(nu,sigma) = 2 + (C_sigma + C_nu) E|Z|^alpha``

    :arg C_nu: shift constant of the first measure, ``||nu_h - nu|| <= C_nu |h|^alpha``
    :arg C_sigma: shift constant of the second measure

    **Example**::

        >>> constants.tv_fm_constant(0,0,0.5)
        2.0

    """
    alpha = _alpha(alpha)
    C_nu = float(C_nu)
    C_sigma = float(C_sigma)
    if C_nu < 0.0 or C_sigma < 0.0:
        raise RangeError(
            "shift constants must be nonnegative, got {!r} and {!r}".format(C_nu,C_sigma)
        )
    return 2.0 + (C_sigma + C_nu)*gaussian_abs_moment(alpha)

def polynomial_tv_fm_constant(C,sigma_f,sigma_g,d):
    """Return ``C_d = 1 + 2 C (sigma_f^(-1/d) + sigma_g^(-1/d)) E|Z|^(1/d)``

    **Example**::

        >>> round( constants.polynomial_tv_fm_constant(1,1,1,2), 4 )
        4.2887

    """
    d = _integer(d,'d',1)
    C = _positive(C,'C')
    sigma_f = _positive(sigma_f,'sigma_f')
    sigma_g = _positive(sigma_g,'sigma_g')
    a = 1.0/d
    return 1.0 + 2.0*C*(sigma_f**(-a) + sigma_g**(-a))*gaussian_abs_moment(a)

#----------------------------------------------------------------------------
def malliavin_dimension_constant(n,d,c):
    """Return ``max{c_1(d)/C(n,d), c_2(d)}`` with ``c_1(d) = c d c1_integral(d)``

    :arg c: the absolute constant of the small-ball inequality (an input)

    """
    n = _integer(n,'n',1)
    d = _integer(d,'d',2)
    c = _positive(c,'c')
    return max( c*d*c1_integral(d)/C_nd(n,d), c2_d(d) )

#----------------------------------------------------------------------------
class Formula(object):

    """
    A closed form with unknown constants left symbolic

    The formula is evaluated only once every symbol has been given
    a value.

    **Example**::

        >>> f = constants.malliavin_composition(3)
        >>> f.symbols
        ('c', 'C1')
        >>> f.evaluate(c=1.0,C1=2.0)
        18.0

    """

    def __init__(self,name,text,symbols,fn):
        self.name = name
        self.text = text
        self.symbols = tuple(symbols)
        self._fn = fn

    def __repr__(self):
        return "Formula({!r}, {!r})".format(self.name,self.text)

    def __str__(self):
        return "{} = {}".format(self.name,self.text)

    def evaluate(self,**values):
        missing = [ s for s in self.symbols if s not in values ]
        if missing:
            raise ConfigurationError(
                "{} needs values for {}".format(self.name,", ".join(missing))
            )
        extra = set(values) - set(self.symbols)
        if extra:
            raise ConfigurationError(
                "{} has no symbols {}".format(self.name,", ".join(sorted(extra)))
            )
        return self._fn(**values)

def malliavin_composition(d):
    """Return the :class:`Formula` ``C(d) = C1 (4 c (d-1) + 1)``

    ``C1`` is the maximum of the low-dimensional constants and ``c``
    is the absolute constant of the moment comparison; neither is
    known numerically.

    """
    d = _integer(d,'d',2)
    return Formula(
        'C({})'.format(d),
        'C1*(4*c*{} + 1)'.format(d - 1),
        ('c','C1'),
        lambda c,C1: float(C1)*(4.0*float(c)*(d - 1) + 1.0)
    )

#----------------------------------------------------------------------------
# Name -> (closed form, independent evaluation)
_TABLE = {
    'c_n_tau': (c_n_tau, c_n_tau_crosscheck),
    'c2_d': (c2_d, lambda d: 0.5 + 1.5*_integer(d,'d',1)*math.pi),
    'c1_integral': (c1_integral, c1_integral_crosscheck),
    'C_nd': (C_nd, C_nd_crosscheck),
    'gaussian_abs_moment': (gaussian_abs_moment, gaussian_abs_moment_crosscheck),
    'C1_dp': (
        C1_dp,
        lambda d,p,C: lp_constant_crosscheck(1.0/_integer(d,'d',2),p,C)
    ),
    'lp_constant': (lp_constant, lp_constant_crosscheck),
    'lp_difference_constant': (lp_difference_constant, lp_difference_constant_crosscheck),
    'tv_fm_constant': (
        tv_fm_constant,
        lambda C_nu,C_sigma,alpha: 2.0 + (float(C_nu) + float(C_sigma))
            *gaussian_abs_moment_crosscheck(alpha)
    ),
    'polynomial_tv_fm_constant': (
        polynomial_tv_fm_constant,
        lambda C,sigma_f,sigma_g,d: 1.0 + 2.0*float(C)
            *(float(sigma_f)**(-1.0/d) + float(sigma_g)**(-1.0/d))
            *gaussian_abs_moment_crosscheck(1.0/d)
    ),
    'malliavin_dimension_constant': (
        malliavin_dimension_constant,
        lambda n,d,c: max(
            float(c)*d*c1_integral_crosscheck(d)/C_nd_crosscheck(n,d), c2_d(d)
        )
    ),
}

NAMES = tuple(sorted(_TABLE))

def evaluate(name,**params):
    """Return a :obj:`~named_tuples.ConstantValue` for the constant ``name``

    **Example**::

        >>> cv = constants.evaluate('c_n_tau',n=1,tau=1)
        >>> round(cv.value,5)
        1.36788
        >>> cv.crosscheck_error < 1E-10
        True

    """
    try:
        fn,check = _TABLE[name]
    except KeyError:
        raise ConfigurationError(
            "unknown constant {!r}, expected one of {}".format(name,", ".join(NAMES))
        )
    try:
        value = fn(**params)
        other = check(**params)
    except TypeError as e:
        raise ConfigurationError(
            "bad parameters for {!r}: {}".format(name,e)
        )
    return ConstantValue(name,dict(params),value,abs(value - other))

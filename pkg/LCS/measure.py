"""
Log-concave measures
--------------------
A :class:`LogConcaveMeasure` on ``R^n`` has a density ``exp(-V)/Z``
with a convex potential ``V`` (``+inf`` outside the support).

Constructors:

    *   :func:`gaussian`
    *   :func:`uniform_box`
    *   :func:`uniform_ball`
    *   :func:`product_exponential` (two-sided exponential per axis)
    *   :func:`custom` for a user-supplied convex potential
    *   :func:`from_spec` for the JSON form ``{"family": ..., "dim": n, ...}``
    *   :func:`affine_image` the law of ``T(X)`` for an :class:`AffineMap` ``T``

Moments and normalisation:

    *   :func:`log_density`
    *   :func:`mean_and_covariance`
    *   :func:`isotropic_normalize`
    *   :func:`isotropic_constant`
    *   :func:`isotropic_constant_product`

Density-level geometry (dimensions 1 to 3):

    *   :func:`max_density`
    *   :func:`level_set_volume`
    *   :func:`section_maximum`
    *   :func:`skorohod_norm`
    *   :func:`envelope_fit`
    *   :func:`direction_grid`

**Example**::

    >>> m = uniform_box(half_widths=[0.5, 0.5])
    >>> m.log_density([0.2, 0.3])
    0.0
    >>> m.log_density([2.0, 0.0])
    -inf

Module contents
---------------

"""
import math
import numbers
import logging
import warnings

import numpy as np
from scipy import linalg, optimize, integrate, special

from LCS import (
    inf,
    MAX_DIM,
    MAX_DENSITY_DIM,
    ISOTROPY_RTOL,
    LINE_SEARCH_TOL,
)
from LCS.errors import (
    ConfigurationError,
    RangeError,
    EstimationError,
    DegeneracyError,
    NotIsotropicError,
    ConvergenceError,
    DivergenceWarning,
)
from LCS.named_tuples import MeanCovariance, MaxDensity, LevelSet
from LCS.function import (
    golden_section_max,
    golden_section_max_many,
    line_maximum,
)
from LCS import estimates

__all__ = (
    'Support',
    'AffineMap',
    'LogConcaveMeasure',
    'gaussian',
    'uniform_box',
    'uniform_ball',
    'product_exponential',
    'custom',
    'from_spec',
    'affine_image',
    'log_density',
    'mean_and_covariance',
    'isotropic_normalize',
    'isotropic_constant',
    'isotropic_constant_product',
    'max_density',
    'level_set_volume',
    'section_maximum',
    'skorohod_norm',
    'envelope_fit',
    'envelope_radius',
    'direction_grid',
    'FAMILIES',
)

log = logging.getLogger(__name__)

FAMILIES = ('gaussian','uniform_box','uniform_ball','product_exponential','custom')

# The level {V <= min V + _TAIL_LEVEL} bounds the quadrature domains of custom potentials
_TAIL_LEVEL = 50.0

# Relative drop of the section maximum at which the Skorohod integral is truncated
_SKOROHOD_DROP = 12.0*math.log(10.0)

def _readonly(a):
    a = np.array(a,dtype=float)
    a.flags.writeable = False
    return a

def _check_dim(n):
    if isinstance(n,bool) or not isinstance(n,numbers.Integral) or not 1 <= n <= MAX_DIM:
        raise ConfigurationError(
            "dimension must be an integer between 1 and {}, got {!r}".format(MAX_DIM,n)
        )
    return int(n)

def _density_dim(m,what):
    if m.dim > MAX_DENSITY_DIM:
        raise ConfigurationError(
            "{} is only available in dimensions up to {}, got {}".format(
                what, MAX_DENSITY_DIM, m.dim
            )
        )

#----------------------------------------------------------------------------
class Support(object):

    """
    A support descriptor: all space, a box, a ball, or the image of
    another support under an :class:`AffineMap`
    """

    __slots__ = ('kind','center','half_widths','radius','base','transform')

    def __init__(self,kind='all',center=None,half_widths=None,radius=None,
                 base=None,transform=None):
        if kind not in ('all','box','ball','image'):
            raise ConfigurationError("unknown support kind {!r}".format(kind))
        self.kind = kind
        self.center = None if center is None else _readonly(center)
        self.half_widths = None if half_widths is None else _readonly(half_widths)
        self.radius = None if radius is None else float(radius)
        self.base = base
        self.transform = transform

    @classmethod
    def from_dict(cls,d,n):
        kind = d.get('kind','all')
        if kind == 'all':
            return cls()
        center = np.asarray(d.get('center',np.zeros(n)),dtype=float)
        if center.shape != (n,):
            raise ConfigurationError(
                "support centre must have {} components, got {!r}".format(n,d.get('center'))
            )
        if kind == 'box':
            w = np.broadcast_to(np.asarray(d['half_widths'],dtype=float),(n,))
            if np.any(w <= 0.0):
                raise ConfigurationError("half widths must be positive")
            return cls('box',center=center,half_widths=w)
        if kind == 'ball':
            r = float(d['radius'])
            if not r > 0.0:
                raise ConfigurationError("the radius must be positive")
            return cls('ball',center=center,radius=r)
        raise ConfigurationError("unknown support kind {!r}".format(kind))

    def to_dict(self):
        if self.kind == 'all':
            return {'kind': 'all'}
        if self.kind == 'box':
            return {'kind': 'box', 'center': self.center.tolist(),
                    'half_widths': self.half_widths.tolist()}
        if self.kind == 'ball':
            return {'kind': 'ball', 'center': self.center.tolist(), 'radius': self.radius}
        raise ConfigurationError("an image support has no JSON form")

    def __repr__(self):
        return "Support({!r})".format(self.kind)

    def bounded(self):
        if self.kind == 'image':
            return self.base.bounded()
        return self.kind != 'all'

    def contains(self,X):
        """Return a boolean array, one entry per row of ``X``"""
        X = np.asarray(X,dtype=float)
        if self.kind == 'all':
            return np.ones(X.shape[:-1],dtype=bool)
        if self.kind == 'box':
            return np.all( np.abs(X - self.center) <= self.half_widths, axis=-1 )
        if self.kind == 'ball':
            return np.sum( (X - self.center)**2, axis=-1 ) <= self.radius**2
        return self.base.contains( self.transform.inverse_apply(X) )

    def chord(self,x,e):
        """Return ``(lo, hi)`` such that ``x + t e`` is in the support for ``lo <= t <= hi``

        ``x`` and ``e`` broadcast against each other. An empty
        intersection has ``lo > hi``.

        """
        x = np.asarray(x,dtype=float)
        e = np.asarray(e,dtype=float)
        shape = np.broadcast(x,e).shape[:-1]

        if self.kind == 'all':
            return np.full(shape,-inf), np.full(shape,inf)

        if self.kind == 'image':
            T = self.transform
            return self.base.chord( T.inverse_apply(x), e.dot(T.A_inv.T) )

        d = x - self.center
        if self.kind == 'box':
            w = self.half_widths
            with np.errstate(divide='ignore',invalid='ignore'):
                t1 = (-w - d)/e
                t2 = (w - d)/e
            lo = np.minimum(t1,t2)
            hi = np.maximum(t1,t2)
            flat = (e == 0.0)
            inside = np.abs(d) <= w
            lo = np.where(flat, np.where(inside,-inf,inf), lo)
            hi = np.where(flat, np.where(inside,inf,-inf), hi)
            return np.max(lo,axis=-1)*np.ones(shape), np.min(hi,axis=-1)*np.ones(shape)

        # ball
        a = np.sum(e*e,axis=-1)*np.ones(shape)
        b = 2.0*np.sum(e*d,axis=-1)*np.ones(shape)
        c = (np.sum(d*d,axis=-1) - self.radius**2)*np.ones(shape)
        disc = b*b - 4.0*a*c
        root = np.sqrt(np.maximum(disc,0.0))
        lo = np.where(disc >= 0.0, (-b - root)/(2.0*a), inf)
        hi = np.where(disc >= 0.0, (-b + root)/(2.0*a), -inf)
        return lo, hi

#----------------------------------------------------------------------------
class AffineMap(object):

    """
    The map ``x -> A x + b`` with ``A`` invertible

    **Example**::

        >>> T = AffineMap([[2.0, 0.0], [0.0, 4.0]], [1.0, 0.0])
        >>> T.apply([1.0, 1.0])
        array([3., 4.])
        >>> T.compose(T.inverse()).is_identity()
        True

    """

    __slots__ = ('A','b','A_inv','_det')

    def __init__(self,A,b=None):
        A = np.atleast_2d(np.asarray(A,dtype=float))
        n = A.shape[0]
        if A.shape != (n,n):
            raise ConfigurationError(
                "A must be a square matrix, got shape {}".format(A.shape)
            )
        b = np.zeros(n) if b is None else np.asarray(b,dtype=float).ravel()
        if b.shape != (n,):
            raise ConfigurationError(
                "b must have {} components, got {}".format(n,b.size)
            )
        det = float(np.linalg.det(A))
        if det == 0.0 or not math.isfinite(det) or np.linalg.cond(A) > 1E14:
            raise DegeneracyError("the matrix of an affine map must be invertible")

        self.A = _readonly(A)
        self.b = _readonly(b)
        self.A_inv = _readonly(np.linalg.inv(A))
        self._det = det

    @classmethod
    def identity(cls,n):
        return cls(np.eye(n))

    @property
    def dim(self):
        return self.A.shape[0]

    @property
    def determinant(self):
        return self._det

    def __repr__(self):
        return "AffineMap({!r}, {!r})".format(self.A.tolist(),self.b.tolist())

    def apply(self,x):
        """Return ``A x + b`` for a point or for each row of ``x``"""
        return np.asarray(x,dtype=float).dot(self.A.T) + self.b

    __call__ = apply

    def inverse_apply(self,y):
        return (np.asarray(y,dtype=float) - self.b).dot(self.A_inv.T)

    def inverse(self):
        return AffineMap( self.A_inv, -self.A_inv.dot(self.b) )

    def compose(self,other):
        """Return the map ``x -> self(other(x))``"""
        if other.dim != self.dim:
            raise ConfigurationError(
                "cannot compose maps of dimensions {} and {}".format(self.dim,other.dim)
            )
        return AffineMap( self.A.dot(other.A), self.A.dot(other.b) + self.b )

    def is_identity(self,tol=1E-12):
        return bool(
            np.all( np.abs(self.A - np.eye(self.dim)) <= tol )
            and np.all( np.abs(self.b) <= tol )
        )

    def is_diagonal(self,rtol=1E-14):
        off = self.A - np.diag(np.diag(self.A))
        return bool( np.all( np.abs(off) <= rtol*np.max(np.abs(self.A)) ) )

#----------------------------------------------------------------------------
class LogConcaveMeasure(object):

    """
    A probability measure with density ``exp(-V(x) - log Z)`` on ``R^n``

    Instances are immutable and are created by the constructor
    functions of this module. ``family`` is one of :data:`FAMILIES`;
    an image of a measure under a non-diagonal :class:`AffineMap`
    has family ``'custom'`` and keeps ``base`` and ``transform``.

    """

    __slots__ = (
        '_family','_dim','_potential','_support','_log_normalizer',
        '_params','_base','_transform',
    )

    def __init__(self,family,dim,potential,support,log_normalizer,params,
                 base=None,transform=None):
        self._family = family
        self._dim = dim
        self._potential = potential
        self._support = support
        self._log_normalizer = log_normalizer
        self._params = params
        self._base = base
        self._transform = transform

    def __repr__(self):
        if self._base is not None:
            return "LogConcaveMeasure(image of {!r}, dim={})".format(self._base,self._dim)
        return "LogConcaveMeasure({!r}, dim={})".format(self._family,self._dim)

    @property
    def family(self):
        return self._family

    @property
    def dim(self):
        return self._dim

    @property
    def support(self):
        return self._support

    @property
    def params(self):
        """A copy of the family parameters"""
        return dict(self._params)

    def param(self,name):
        return self._params[name]

    @property
    def base(self):
        return self._base

    @property
    def transform(self):
        return self._transform

    @property
    def log_normalizer(self):
        """``log Z``, or ``None`` when it is unavailable (custom potentials above dimension 3)"""
        return self._log_normalizer

    @property
    def mode(self):
        """A point where the density is largest"""
        return self._params['mode']

    @property
    def is_builtin(self):
        return self._family != 'custom'

    #------------------------------------------------------------------------
    def _rows(self,x):
        x = np.asarray(x,dtype=float)
        if x.ndim == 0 or x.shape[-1] != self._dim:
            raise ConfigurationError(
                "expected points of dimension {}, got shape {}".format(self._dim,x.shape)
            )
        return x.reshape(-1,self._dim), x.shape[:-1]

    def potential(self,x):
        """Return ``V(x)`` (``+inf`` outside the support)"""
        X,shape = self._rows(x)
        V = np.asarray(self._potential(X),dtype=float).reshape(-1)
        V = np.where(self._support.contains(X), V, inf)
        return float(V[0]) if shape == () else V.reshape(shape)

    def log_density(self,x):
        """Return ``-V(x) - log Z`` (``-inf`` outside the support)"""
        if self._log_normalizer is None:
            raise ConfigurationError(
                "the normalisation of a custom potential is only computed "
                "in dimensions up to {}".format(MAX_DENSITY_DIM)
            )
        return 0.0 - self.potential(x) - self._log_normalizer

    def density(self,x):
        return np.exp(self.log_density(x))

    def contains(self,x):
        X,shape = self._rows(x)
        c = self._support.contains(X)
        return bool(c[0]) if shape == () else c.reshape(shape)

    def chord(self,x,e):
        return self._support.chord(x,e)

    def to_spec(self):
        """Return the JSON form of a built-in measure"""
        p = self._params
        n = self._dim
        if self._family == 'gaussian':
            return {'family': 'gaussian', 'dim': n,
                    'mean': p['mean'].tolist(), 'cov': p['cov'].tolist()}
        if self._family == 'uniform_box':
            return {'family': 'uniform_box', 'dim': n,
                    'center': p['center'].tolist(), 'half_widths': p['half_widths'].tolist()}
        if self._family == 'uniform_ball':
            return {'family': 'uniform_ball', 'dim': n,
                    'center': p['center'].tolist(), 'radius': p['radius']}
        if self._family == 'product_exponential':
            return {'family': 'product_exponential', 'dim': n,
                    'rates': p['rates'].tolist(), 'mean': p['mean'].tolist()}
        raise ConfigurationError("a custom potential has no JSON form")

#----------------------------------------------------------------------------
def _vector(v,n,name):
    v = np.asarray(v,dtype=float)
    if v.ndim == 0:
        v = np.full(n,float(v))
    if v.shape != (n,):
        raise ConfigurationError(
            "{} must have {} components, got {!r}".format(name,n,v.tolist())
        )
    if not np.all(np.isfinite(v)):
        raise ConfigurationError("{} must be finite".format(name))
    return v

def _infer_dim(dim,*arrays):
    for a in arrays:
        if a is not None and np.ndim(a) > 0:
            n = np.shape(a)[0]
            if dim is not None and dim != n:
                raise ConfigurationError(
                    "dim={!r} does not match parameters of length {}".format(dim,n)
                )
            dim = n
    return _check_dim(1 if dim is None else dim)

def gaussian(mean=None,cov=None,dim=None):
    """Return the Gaussian measure ``N(mean, cov)``

    ``cov`` may be a scalar (a multiple of the identity).

    **Example**::

        >>> round( gaussian(dim=1).log_density([0.0]), 4 )
        -0.9189

    """
    n = _infer_dim(dim,mean,cov)
    mu = np.zeros(n) if mean is None else _vector(mean,n,'mean')
    if cov is None:
        S = np.eye(n)
    elif np.ndim(cov) == 0:
        S = float(cov)*np.eye(n)
    else:
        S = np.asarray(cov,dtype=float)
        if S.shape != (n,n):
            raise ConfigurationError(
                "cov must be {0}x{0}, got shape {1}".format(n,S.shape)
            )
        if not np.allclose(S,S.T,rtol=1E-12,atol=1E-14):
            raise ConfigurationError("cov must be symmetric")
        S = 0.5*(S + S.T)
    try:
        L = linalg.cholesky(S,lower=True)
    except linalg.LinAlgError:
        raise ConfigurationError("cov must be positive definite")

    def potential(X):
        Z = linalg.solve_triangular(L,(X - mu).T,lower=True)
        return 0.5*np.sum(Z*Z,axis=0)

    logZ = 0.5*n*math.log(2.0*math.pi) + float(np.sum(np.log(np.diag(L))))
    params = dict(mean=_readonly(mu),cov=_readonly(S),chol=_readonly(L),mode=_readonly(mu))
    return LogConcaveMeasure('gaussian',n,potential,Support(),logZ,params)

def uniform_box(center=None,half_widths=None,side=None,dim=None):
    """Return the uniform measure on a box

    Give either ``half_widths`` or the full ``side`` lengths.

    """
    if (half_widths is None) == (side is None):
        raise ConfigurationError("give exactly one of half_widths and side")
    widths = half_widths if side is None else 0.5*np.asarray(side,dtype=float)
    n = _infer_dim(dim,center,widths)
    c = np.zeros(n) if center is None else _vector(center,n,'center')
    w = _vector(widths,n,'half_widths')
    if np.any(w <= 0.0):
        raise ConfigurationError("half widths must be positive, got {!r}".format(w.tolist()))

    def potential(X):
        return np.zeros(X.shape[0])

    logZ = float(np.sum(np.log(2.0*w)))
    params = dict(center=_readonly(c),half_widths=_readonly(w),mode=_readonly(c))
    return LogConcaveMeasure(
        'uniform_box',n,potential,Support('box',center=c,half_widths=w),logZ,params
    )

def uniform_ball(center=None,radius=1.0,dim=None):
    """Return the uniform measure on a Euclidean ball"""
    n = _infer_dim(dim,center)
    c = np.zeros(n) if center is None else _vector(center,n,'center')
    R = float(radius)
    if not R > 0.0 or not math.isfinite(R):
        raise ConfigurationError("the radius must be positive, got {!r}".format(radius))

    def potential(X):
        return np.zeros(X.shape[0])

    logZ = 0.5*n*math.log(math.pi) + n*math.log(R) - float(special.gammaln(0.5*n + 1.0))
    params = dict(center=_readonly(c),radius=R,mode=_readonly(c))
    return LogConcaveMeasure(
        'uniform_ball',n,potential,Support('ball',center=c,radius=R),logZ,params
    )

def product_exponential(rates=1.0,mean=None,dim=None):
    """Return the product of two-sided exponential (Laplace) laws

    The density is proportional to ``exp(-sum_i rates_i |x_i - mean_i|)``.

    """
    n = _infer_dim(dim,rates,mean)
    lam = _vector(rates,n,'rates')
    if np.any(lam <= 0.0):
        raise ConfigurationError("rates must be positive, got {!r}".format(lam.tolist()))
    mu = np.zeros(n) if mean is None else _vector(mean,n,'mean')

    def potential(X):
        return np.abs(X - mu).dot(lam)

    logZ = float(np.sum(np.log(2.0/lam)))
    params = dict(rates=_readonly(lam),mean=_readonly(mu),mode=_readonly(mu))
    return LogConcaveMeasure('product_exponential',n,potential,Support(),logZ,params)

#----------------------------------------------------------------------------
def custom(potential,dim,support=None,vectorized=False,start=None):
    """Return the measure with density proportional to ``exp(-potential(x))``

    :arg potential: a convex function of a point (or, when ``vectorized``
        is true, of an array with one point per row)
    :arg dim: the dimension ``n``
    :arg support: a :class:`Support`, or its dictionary form
    :arg start: a point where ``potential`` is finite (default: the
        centre of the support)

    The normalising constant is computed by adaptive quadrature
    when ``dim <= 3``; above that only sampling is available.
    A potential that does not grow in every direction cannot
    be normalised and is rejected with a
    :class:`~errors.ConfigurationError`.

    """
    n = _check_dim(dim)
    if not callable(potential):
        raise ConfigurationError("potential must be callable")
    if support is None:
        support = Support()
    elif isinstance(support,dict):
        support = Support.from_dict(support,n)

    if vectorized:
        fn = lambda X: np.asarray(potential(X),dtype=float).reshape(-1)
    else:
        fn = lambda X: np.array([ float(potential(x)) for x in X ])

    if start is None:
        start = support.center if support.center is not None else np.zeros(n)
    start = _vector(start,n,'start')

    m = LogConcaveMeasure('custom',n,fn,support,None,dict(mode=_readonly(start)))
    if not math.isfinite(m.potential(start)):
        raise ConfigurationError(
            "the potential is not finite at the starting point {!r}".format(start.tolist())
        )
    m._params['start'] = _readonly(start)

    if n <= MAX_DENSITY_DIM:
        try:
            mode,vmin = _minimise(m,start)
        except ConvergenceError:
            raise ConfigurationError(
                "the potential has no minimum and cannot be normalised"
            )
        m._params['mode'] = _readonly(mode)
        m._params['min_potential'] = vmin
        radius = _tail_radius(m,mode,vmin)
        m._params['tail_radius'] = radius
        total,err = _integrate(m,lambda x: 1.0)
        if not (total > 0.0 and math.isfinite(total)):
            raise ConfigurationError("the potential cannot be normalised")
        m._log_normalizer = math.log(total) - vmin
        log.debug("custom potential: min %r at %r, log Z %r",vmin,mode,m._log_normalizer)
    return m

def _minimise(m,start):
    """Coordinate line searches followed by a Nelder-Mead polish"""
    n = m.dim
    x = np.array(start,dtype=float)
    v = m.potential(x)
    E = np.eye(n)
    for _ in range(50):
        v_old = v
        for i in range(n):
            lo,hi = m.chord(x,E[i])
            fn = lambda t: -m.potential(x + t*E[i])
            t,f = line_maximum(fn,lo=float(lo),hi=float(hi),t0=0.0,step=1.0)
            if -f < v:
                x = x + t*E[i]
                v = -f
        if v_old - v <= 1E-12*(1.0 + abs(v)):
            break

    res = optimize.minimize(
        lambda y: min(m.potential(y),1E300), x, method='Nelder-Mead',
        options=dict(xatol=1E-10,fatol=1E-13,maxiter=2000*n)
    )
    if res.fun < v:
        x, v = res.x, float(res.fun)
    if not math.isfinite(v):
        raise ConvergenceError("could not locate the minimum of the potential")
    return x, v

def _radial(inside,x0,U,step=1.0,limit=1E6):
    """Return the distance from ``x0`` to the boundary of a convex set along each row of ``U``

    ``inside`` maps an array of points to a boolean array and must
    hold at ``x0``.

    """
    k = U.shape[0]
    t_in = np.zeros(k)
    t_out = np.full(k,step)
    grow = inside( x0 + t_out[:,None]*U )
    while np.any(grow):
        t_in = np.where(grow,t_out,t_in)
        t_out = np.where(grow,2.0*t_out,t_out)
        if np.max(t_out) > limit:
            raise ConvergenceError("a level set is unbounded or too large")
        grow = grow & inside( x0 + t_out[:,None]*U )
    for _ in range(60):
        t = 0.5*(t_in + t_out)
        ok = inside( x0 + t[:,None]*U )
        t_in = np.where(ok,t,t_in)
        t_out = np.where(ok,t_out,t)
    return t_in

def _sphere_directions(n,count):
    """Directions covering the whole unit sphere"""
    if n == 1:
        return np.array([[1.0],[-1.0]])
    if n == 2:
        th = 2.0*math.pi*np.arange(count)/count
        return np.column_stack([np.cos(th),np.sin(th)])
    j = np.arange(count) + 0.5
    z = 1.0 - 2.0*j/count
    phi = math.pi*(3.0 - math.sqrt(5.0))*np.arange(count)
    r = np.sqrt(1.0 - z*z)
    return np.column_stack([r*np.cos(phi),r*np.sin(phi),z])

def direction_grid(n,count=32):
    """Return ``count`` unit vectors spread over a half sphere

    For ``n = 1`` the single direction ``[1]`` is returned. The grid
    covers each line through the origin once, which suits quantities
    that are even in the direction.

    **Example**::

        >>> direction_grid(2,2).round(12)
        array([[1., 0.],
               [0., 1.]])

    """
    n = _check_dim(n)
    if n == 1:
        return np.array([[1.0]])
    if n == 2:
        th = math.pi*np.arange(count)/count
        return np.column_stack([np.cos(th),np.sin(th)])
    if n == 3:
        j = np.arange(count) + 0.5
        z = 1.0 - j/count
        phi = math.pi*(3.0 - math.sqrt(5.0))*np.arange(count)
        r = np.sqrt(1.0 - z*z)
        return np.column_stack([r*np.cos(phi),r*np.sin(phi),z])
    raise ConfigurationError(
        "direction grids are only available in dimensions up to {}".format(MAX_DENSITY_DIM)
    )

def _tail_radius(m,mode,vmin):
    U = _sphere_directions(m.dim,{1:2,2:256,3:512}[m.dim])
    inside = lambda X: m.potential(X) <= vmin + _TAIL_LEVEL
    try:
        r = _radial(inside,mode,U)
    except ConvergenceError:
        raise ConfigurationError(
            "the potential does not grow in every direction and cannot be normalised"
        )
    return 1.05*float(np.max(r))

def _limits(m):
    """nquad ranges for a custom measure, innermost variable first"""
    mode = m.param('mode')
    R = m.param('tail_radius')
    n = m.dim
    lo = mode - R
    hi = mode + R
    s = m.support
    if s.kind == 'box':
        lo = np.maximum(lo,s.center - s.half_widths)
        hi = np.minimum(hi,s.center + s.half_widths)
    elif s.kind == 'ball':
        c = s.center
        rad = s.radius

        def ball_range(k):
            def rng(*outer):
                rest = sum( (outer[j] - c[k+1+j])**2 for j in range(len(outer)) )
                h = math.sqrt(max(rad*rad - rest,0.0))
                return [max(lo[k],c[k] - h), min(hi[k],c[k] + h)]
            return rng
        return [ ball_range(k) for k in range(n) ]
    return [ [lo[k],hi[k]] for k in range(n) ]

def _integrate(m,g,epsrel=1E-9):
    """Return ``int g(x) exp(-(V(x) - min V)) dx`` for a custom measure"""
    vmin = m.param('min_potential')

    def integrand(*args):
        x = np.array(args)
        v = m.potential(x)
        if not math.isfinite(v):
            return 0.0
        return g(x)*math.exp(vmin - v)

    ranges = _limits(m)
    if m.dim == 1:
        lo,hi = ranges[0]
        return integrate.quad(
            integrand,lo,hi,points=[float(m.mode[0])] if lo < m.mode[0] < hi else None,
            epsabs=0.0,epsrel=epsrel,limit=200
        )
    return integrate.nquad(
        integrand,ranges,opts=dict(epsabs=0.0,epsrel=epsrel,limit=100)
    )

#----------------------------------------------------------------------------
def from_spec(spec):
    """Return a measure from its JSON form

    **Example**::

        >>> m = from_spec({"family": "uniform_box", "dim": 2, "side": 1.0})
        >>> m.family, m.dim
        ('uniform_box', 2)

    """
    if not isinstance(spec,dict):
        raise ConfigurationError("a measure specification must be an object")
    spec = dict(spec)
    family = spec.pop('family',None)
    dim = spec.pop('dim',None)
    allowed = {
        'gaussian': ('mean','cov'),
        'uniform_box': ('center','half_widths','side'),
        'uniform_ball': ('center','radius'),
        'product_exponential': ('rates','mean'),
    }
    if family == 'custom':
        raise ConfigurationError(
            "custom potentials are only available through the library"
        )
    if family not in allowed:
        raise ConfigurationError(
            "unknown family {!r}, expected one of {}".format(family,", ".join(allowed))
        )
    unknown = set(spec) - set(allowed[family])
    if unknown:
        raise ConfigurationError(
            "unknown parameters for {}: {}".format(family,", ".join(sorted(unknown)))
        )
    if dim is not None and (isinstance(dim,bool) or not isinstance(dim,numbers.Integral)):
        raise ConfigurationError("dim must be an integer, got {!r}".format(dim))

    try:
        if family == 'uniform_box':
            side = spec.get('side')
            half = spec.get('half_widths')
            if side is None and half is None:
                raise ConfigurationError("uniform_box needs half_widths or side")
            if dim is not None and side is not None and np.ndim(side) == 0:
                side = [float(side)]*dim
            if dim is not None and half is not None and np.ndim(half) == 0:
                half = [float(half)]*dim
            return uniform_box(spec.get('center'),half,side,dim)
        if family == 'gaussian':
            return gaussian(spec.get('mean'),spec.get('cov'),dim)
        if family == 'uniform_ball':
            return uniform_ball(spec.get('center'),spec.get('radius',1.0),dim)
        return product_exponential(spec.get('rates',1.0),spec.get('mean'),dim)
    except (TypeError,KeyError) as e:
        raise ConfigurationError("bad {} specification: {}".format(family,e))

#----------------------------------------------------------------------------
def affine_image(m,T):
    """Return the law of ``T(X)`` when ``X`` has law ``m``

    Gaussians stay Gaussian; diagonal maps keep boxes and
    two-sided exponentials, and multiples of the identity keep
    balls. Other images keep a reference to the base measure.

    """
    if T.dim != m.dim:
        raise ConfigurationError(
            "a map of dimension {} cannot act on a measure of dimension {}".format(T.dim,m.dim)
        )
    A = T.A
    b = T.b
    fam = m.family
    if fam == 'gaussian':
        S = A.dot(m.param('cov')).dot(A.T)
        return gaussian(A.dot(m.param('mean')) + b, 0.5*(S + S.T))

    a = np.diag(A)
    if T.is_diagonal():
        if fam == 'uniform_box':
            return uniform_box(a*m.param('center') + b, half_widths=np.abs(a)*m.param('half_widths'))
        if fam == 'product_exponential':
            return product_exponential(m.param('rates')/np.abs(a), a*m.param('mean') + b)
        if fam == 'uniform_ball' and np.allclose(np.abs(a),abs(a[0]),rtol=1E-14,atol=0.0):
            return uniform_ball(a*m.param('center') + b, abs(a[0])*m.param('radius'))

    if m.base is not None:
        return _image(m.base, T.compose(m.transform))
    return _image(m,T)

def _image(base,T):
    pot = base._potential
    bsup = base.support

    def potential(Y):
        X = T.inverse_apply(Y)
        return np.where(bsup.contains(X), pot(X), inf)

    logZ = None
    if base.log_normalizer is not None:
        logZ = base.log_normalizer + math.log(abs(T.determinant))
    params = dict(mode=_readonly(T.apply(base.mode)))
    if 'start' in base._params:
        params['start'] = _readonly(T.apply(base._params['start']))
    return LogConcaveMeasure(
        'custom',base.dim,potential,
        Support('image',base=bsup,transform=T),
        logZ,params,base=base,transform=T
    )

#----------------------------------------------------------------------------
def log_density(m,x):
    """Return ``log rho(x)`` for the measure ``m``

    **Example**::

        >>> m = uniform_box(side=[1.0, 1.0])
        >>> log_density(m,[0.2,0.3])
        0.0

    """
    return m.log_density(x)

#----------------------------------------------------------------------------
def _analytic_moments(m):
    fam = m.family
    n = m.dim
    if fam == 'gaussian':
        return np.array(m.param('mean')), np.array(m.param('cov'))
    if fam == 'uniform_box':
        return np.array(m.param('center')), np.diag(m.param('half_widths')**2/3.0)
    if fam == 'uniform_ball':
        R = m.param('radius')
        return np.array(m.param('center')), R*R/(n + 2.0)*np.eye(n)
    if fam == 'product_exponential':
        return np.array(m.param('mean')), np.diag(2.0/m.param('rates')**2)
    return None

def mean_and_covariance(m,budget=None,s=None,workers=1):
    """Return the mean and covariance of ``m``

    :arg budget: ``None`` for analytic moments or quadrature
        (custom potentials in dimensions up to 3), or a sample count
    :arg s: a :class:`~sampler.SeededStream`, needed for Monte Carlo
    :rtype: :obj:`~named_tuples.MeanCovariance`

    Built-in families always answer analytically. Images of other
    measures transform the moments of their base measure.

    **Example**::

        >>> mean_and_covariance( product_exponential([1.0, 1.0]) ).cov
        array([[2., 0.],
               [0., 2.]])

    """
    n = m.dim
    exact = _analytic_moments(m)
    if exact is not None:
        return MeanCovariance(exact[0],exact[1],np.zeros(n),np.zeros((n,n)),'analytic')

    if m.base is not None:
        mc = mean_and_covariance(m.base,budget,s,workers)
        A = m.transform.A
        return MeanCovariance(
            A.dot(mc.mean) + m.transform.b,
            A.dot(mc.cov).dot(A.T),
            np.sqrt( (A*A).dot(mc.mean_u**2) ),
            np.sqrt( (A*A).dot(mc.cov_u**2).dot((A*A).T) ),
            mc.method
        )

    if budget is None or budget == 'quadrature':
        if n > MAX_DENSITY_DIM:
            raise ConfigurationError(
                "moments of a custom potential in dimension {} need a sample budget".format(n)
            )
        Z,Z_err = _integrate(m,lambda x: 1.0)
        x0 = np.array(m.mode)
        mean = np.zeros(n)
        mean_u = np.zeros(n)
        for i in range(n):
            v,e = _integrate(m,lambda x,i=i: x[i] - x0[i])
            mean[i] = x0[i] + v/Z
            mean_u[i] = e/Z
        d = mean - x0
        cov = np.zeros((n,n))
        cov_u = np.zeros((n,n))
        for i in range(n):
            for j in range(i,n):
                v,e = _integrate(m,lambda x,i=i,j=j: (x[i] - x0[i])*(x[j] - x0[j]))
                cov[i,j] = cov[j,i] = v/Z - d[i]*d[j]
                cov_u[i,j] = cov_u[j,i] = e/Z
        return MeanCovariance(mean,cov,mean_u,cov_u,'quadrature')

    if isinstance(budget,bool) or not isinstance(budget,numbers.Integral):
        raise ConfigurationError(
            "budget must be None, 'quadrature' or a sample count, got {!r}".format(budget)
        )
    if budget < 64:
        raise EstimationError(
            "{} samples cannot resolve a covariance; use at least 64".format(budget)
        )
    if s is None:
        raise ConfigurationError("a SeededStream is needed for Monte Carlo moments")

    from LCS import sampler
    X = sampler.sample(m,int(budget),s,workers=workers)
    mean = np.zeros(n)
    mean_u = np.zeros(n)
    for i in range(n):
        e = estimates.batch_means(X[:,i])
        mean[i], mean_u[i] = e.value, e.u
    D = X - mean
    cov = np.zeros((n,n))
    cov_u = np.zeros((n,n))
    for i in range(n):
        for j in range(i,n):
            e = estimates.batch_means(D[:,i]*D[:,j])
            cov[i,j] = cov[j,i] = e.value
            cov_u[i,j] = cov_u[j,i] = e.u

    w = np.linalg.eigvalsh(cov)
    if w[0] <= 0.0 or w[-1]/w[0] > 1E10:
        raise EstimationError(
            "{} samples do not resolve the covariance (eigenvalues {!r})".format(
                budget, w.tolist()
            )
        )
    return MeanCovariance(mean,cov,mean_u,cov_u,'montecarlo')

#----------------------------------------------------------------------------
def isotropic_normalize(m,budget=None,s=None,workers=1):
    """Return ``(T, m')`` where ``m'``, the law of ``T(X)``, is isotropic

    ``m'`` has mean 0 and covariance the identity. Built-in
    families are whitened exactly into the same family, with
    ``T`` built from the symmetric inverse square root of the
    covariance.

    **Example**::

        >>> T, w = isotropic_normalize( uniform_box(side=[1.0]) )
        >>> round( w.param('half_widths')[0]**2, 12 )
        3.0

    """
    n = m.dim
    mc = mean_and_covariance(m,budget,s,workers)
    S = 0.5*(mc.cov + mc.cov.T)
    w,U = np.linalg.eigh(S)
    if not w[0] > 1E-12*max(w[-1],0.0) or not w[-1] > 0.0:
        raise DegeneracyError(
            "the covariance is singular: the measure lives on a proper affine subspace"
        )

    fam = m.family
    if fam in ('uniform_box','product_exponential'):
        A = np.diag( 1.0/np.sqrt(np.diag(S)) )
    elif fam == 'uniform_ball':
        A = math.sqrt(n + 2.0)/m.param('radius')*np.eye(n)
    else:
        A = (U/np.sqrt(w)).dot(U.T)
        A = 0.5*(A + A.T)
    T = AffineMap(A,-A.dot(mc.mean))

    if fam == 'gaussian':
        return T, gaussian(np.zeros(n),np.eye(n))
    if fam == 'uniform_box':
        return T, uniform_box(np.zeros(n),half_widths=np.full(n,math.sqrt(3.0)))
    if fam == 'uniform_ball':
        return T, uniform_ball(np.zeros(n),math.sqrt(n + 2.0))
    if fam == 'product_exponential':
        return T, product_exponential(np.full(n,math.sqrt(2.0)),np.zeros(n))
    return T, affine_image(m,T)

def isotropic_constant(m,budget=None,s=None,workers=1):
    """Return ``L`` when the covariance of ``m`` is ``L^2`` times the identity

    The covariance must be scalar, and the mean zero, to a
    relative tolerance :data:`~LCS.ISOTROPY_RTOL`.

    **Example**::

        >>> round( isotropic_constant( uniform_box(side=[1.0, 1.0]) ), 4 )
        0.2887

    """
    mc = mean_and_covariance(m,budget,s,workers)
    n = m.dim
    lam = float(np.trace(mc.cov))/n
    if not lam > 0.0:
        raise DegeneracyError("the covariance vanishes")
    off = float(np.max(np.abs(mc.cov - lam*np.eye(n))))
    shift = float(np.max(np.abs(mc.mean)))
    if off > ISOTROPY_RTOL*lam or shift > ISOTROPY_RTOL*math.sqrt(lam):
        raise NotIsotropicError(
            "the measure is not isotropic (mean offset {!r}, covariance offset {!r}); "
            "normalise it first".format(shift,off)
        )
    return math.sqrt(lam)

def isotropic_constant_product(m,budget=None,s=None,workers=1):
    """Return ``(max rho)^(1/n) det(cov)^(1/(2n))``

    This is ``(max rho)^(1/n) L`` for the isotropic image of ``m``
    and is invariant under affine maps.

    """
    _density_dim(m,"the isotropic constant product")
    mc = mean_and_covariance(m,budget,s,workers)
    n = m.dim
    sign,logdet = np.linalg.slogdet(mc.cov)
    if sign <= 0:
        raise DegeneracyError("the covariance is singular")
    md = max_density(m)
    return math.exp( (math.log(md.value) + 0.5*logdet)/n )

#----------------------------------------------------------------------------
def max_density(m):
    """Return the largest value of the density and a point where it is attained

    :rtype: :obj:`~named_tuples.MaxDensity`

    **Example**::

        >>> round( max_density( gaussian(cov=4.0,dim=1) ).value, 4 )
        0.1995

    """
    _density_dim(m,"the maximum density")
    if m.family == 'custom' and m.base is None:
        return MaxDensity(
            math.exp(-m.param('min_potential') - m.log_normalizer),
            np.array(m.mode)
        )
    if m.base is not None:
        md = max_density(m.base)
        return MaxDensity(
            md.value/abs(m.transform.determinant),
            m.transform.apply(md.argmax)
        )
    # built-in families peak at their mode, where V = 0
    return MaxDensity(math.exp(-m.log_normalizer),np.array(m.mode))

def _scale(m):
    """A length of the order of the largest standard deviation"""
    exact = _analytic_moments(m)
    if exact is not None:
        return math.sqrt(float(np.max(np.linalg.eigvalsh(exact[1]))))
    if m.base is not None:
        return _scale(m.base)*float(np.linalg.norm(m.transform.A,2))
    return max(m.param('tail_radius')/10.0,1E-12)

#----------------------------------------------------------------------------
def level_set_volume(m,tau):
    """Return the volume and the radius of ``K = {rho >= exp(-tau) max rho}``

    :rtype: :obj:`~named_tuples.LevelSet`

    ``K`` is convex. Its volume is the integral of the radial
    function about the density maximiser over the sphere,
    evaluated at two angular resolutions; an
    :class:`~errors.EstimationError` is raised when they differ
    by more than 1%. ``radius`` is the largest ``|x|`` in ``K``.

    **Example**::

        >>> K = level_set_volume( gaussian(dim=1), 1.0 )
        >>> round(K.volume,6), round(K.radius,6)
        (2.828427, 1.414214)

    """
    _density_dim(m,"level-set volumes")
    tau = float(tau)
    if not tau > 0.0:
        raise RangeError("tau must be positive, got {!r}".format(tau))

    n = m.dim
    md = max_density(m)
    x0 = md.argmax
    level = math.log(md.value) - tau
    inside = lambda X: m.log_density(X) >= level
    step = _scale(m)

    def radial(U):
        _,hi = m.chord(x0,U)
        limit = 1E6*step
        r = _radial(inside,x0,U,step=step,limit=limit)
        # the support boundary itself may belong to K
        return np.where(np.isfinite(hi), np.minimum(r,hi), r)

    if n == 1:
        U = np.array([[1.0],[-1.0]])
        r = radial(U)
        volume = float(r[0] + r[1])
        change = 0.0
        dirs,radii = U,r
    elif n == 2:
        N = 1024
        U = _sphere_directions(2,N)
        r = radial(U)
        volume = math.pi/N*float(np.sum(r*r))
        coarse = 2.0*math.pi/N*float(np.sum(r[::2]**2))
        change = estimates.relative_change(volume,coarse)
        dirs,radii = U,r
    else:
        volume,dirs,radii = _volume3(radial,256,128)
        coarse,_,_ = _volume3(radial,128,64)
        change = estimates.relative_change(volume,coarse)

    if change > 1E-2:
        raise EstimationError(
            "level-set volume not resolved: {!r} changed by {:.3g} on refinement".format(volume,change)
        )

    pts = x0 + radii[:,None]*dirs
    norms = np.sqrt(np.sum(pts*pts,axis=1))
    k = int(np.argmax(norms))
    radius = float(norms[k])

    if n > 1:
        # polish the farthest point over the sphere
        def angles_to_u(a):
            if n == 2:
                return np.array([[math.cos(a[0]),math.sin(a[0])]])
            st = math.sin(a[1])
            return np.array([[st*math.cos(a[0]),st*math.sin(a[0]),math.cos(a[1])]])

        u0 = dirs[k]
        a0 = [math.atan2(u0[1],u0[0])] if n == 2 else \
             [math.atan2(u0[1],u0[0]), math.acos(max(-1.0,min(1.0,u0[2])))]

        def neg(a):
            u = angles_to_u(a)
            p = x0 + radial(u)[0]*u[0]
            return -float(np.sqrt(p.dot(p)))

        res = optimize.minimize(neg,a0,method='Nelder-Mead',
                                options=dict(xatol=1E-9,fatol=1E-12,maxiter=400))
        radius = max(radius,-float(res.fun))

    return LevelSet(volume,radius,x0,tau,change)

def _volume3(radial,n_theta,n_mu):
    mu,wmu = np.polynomial.legendre.leggauss(n_mu)
    th = 2.0*math.pi*np.arange(n_theta)/n_theta
    TH,MU = np.meshgrid(th,mu,indexing='ij')
    st = np.sqrt(1.0 - MU*MU)
    U = np.column_stack([ (st*np.cos(TH)).ravel(), (st*np.sin(TH)).ravel(), MU.ravel() ])
    r = radial(U)
    W = (2.0*math.pi/n_theta)*np.broadcast_to(wmu,TH.shape).ravel()
    return float(np.sum(W*r**3))/3.0, U, r

#----------------------------------------------------------------------------
def _unit(e,n):
    e = np.asarray(e,dtype=float).ravel()
    if e.shape != (n,):
        raise ConfigurationError(
            "direction must have {} components, got {}".format(n,e.size)
        )
    if abs(float(np.sqrt(e.dot(e))) - 1.0) > 1E-12:
        raise ConfigurationError(
            "direction must have unit length, got |e| = {!r}".format(float(np.sqrt(e.dot(e))))
        )
    return e

def section_maximum(m,e,x):
    """Return ``max_t rho(x + t e)``, or 0 if the line misses the support"""
    x = np.asarray(x,dtype=float)
    lo,hi = m.chord(x,e)
    lo, hi = float(lo), float(hi)
    if lo > hi:
        return 0.0
    fn = lambda t: float(m.log_density(x + t*e))
    # start from the point of the line closest to the mode
    t0 = float(np.dot(m.mode - x,e))
    t0 = min(max(t0,lo),hi)
    if math.isfinite(lo) and math.isfinite(hi):
        t,f = golden_section_max(fn,lo,hi,tol=LINE_SEARCH_TOL,anchor=t0)
        f = max(f,fn(t0))
    else:
        if not math.isfinite(fn(t0)):
            return 0.0
        t,f = line_maximum(fn,lo,hi,t0=t0,step=_scale(m),tol=LINE_SEARCH_TOL)
    return math.exp(f) if math.isfinite(f) else 0.0

def envelope_radius(n):
    """Return the truncation radius ``3 r (1 + 12 ln 10)``, ``r = (n+1) sqrt(c_n(1) e)``

    The radius applies to an isotropic measure; it is scaled by
    the largest standard deviation otherwise.

    """
    from LCS.constants import c_n_tau
    r = (n + 1)*math.sqrt(c_n_tau(n,1.0)*math.e)
    return 3.0*r*(1.0 + 12.0*math.log(10.0))

def _complement(e):
    n = e.size
    nz = np.flatnonzero(e)
    if nz.size == 1:
        return np.eye(n)[:, [ i for i in range(n) if i != nz[0] ]]
    return linalg.null_space(e.reshape(1,-1))

def _extent(logG,y0,sign,level,step,limit):
    """Return the distance from ``y0`` to the edge of ``{logG >= level}`` along ``sign``"""
    t_in = 0.0
    t = step
    while logG(y0 + sign*t) >= level:
        t_in = t
        t *= 2.0
        if t > limit:
            raise ConvergenceError(
                "the Skorohod integral cannot be truncated within radius {!r}".format(limit)
            )
    t_out = t
    for _ in range(50):
        mid = 0.5*(t_in + t_out)
        if logG(y0 + sign*mid) >= level:
            t_in = mid
        else:
            t_out = mid
    return t_out

def skorohod_norm(m,e):
    """Return ``||D_e mu|| = 2 int_{e-perp} max_t rho(x + t e) dx``

    :arg e: a unit vector

    The inner maximum is a golden-section line search; the outer
    integral is adaptive quadrature over the hyperplane orthogonal
    to ``e``, truncated where the section maximum has fallen below
    ``1e-12`` of its peak.

    **Example**::

        >>> round( skorohod_norm( uniform_box(side=[2.0, 2.0]), [1.0, 0.0] ), 8 )
        1.0

    """
    _density_dim(m,"the Skorohod norm")
    n = m.dim
    e = _unit(e,n)
    if n == 1:
        return 2.0*max_density(m).value

    B = _complement(e)
    x_peak = max_density(m).argmax
    y_peak = B.T.dot(x_peak)
    peak = section_maximum(m,e,B.dot(y_peak))
    level = math.log(peak) - _SKOROHOD_DROP
    step = _scale(m)
    limit = envelope_radius(n)*step + float(np.sqrt(x_peak.dot(x_peak)))

    def logG(y):
        g = section_maximum(m,e,B.dot(y))
        return math.log(g) if g > 0.0 else -inf

    if n == 2:
        G = lambda y: section_maximum(m,e,B.dot([y]))
        lg = lambda y: logG(np.array([y]))
        y0 = float(y_peak[0])
        a = y0 - _extent(lg,y0,-1.0,level,step,limit)
        b = y0 + _extent(lg,y0,1.0,level,step,limit)
        v,err = integrate.quad(G,a,b,epsabs=0.0,epsrel=1E-8,limit=200)
        log.debug("Skorohod norm along %r: %r (error %r) on [%r, %r]",e.tolist(),2*v,2*err,a,b)
        return 2.0*v

    # n == 3: outer variable y[1], inner variable y[0]
    cache = {}

    def inner_limits(y1):
        if y1 not in cache:
            lg = lambda t: logG(np.array([t,y1]))
            t0 = float(y_peak[0])
            try:
                tmax,fmax = line_maximum(lg,t0=t0,step=step)
            except ConvergenceError:
                fmax = -inf
            if not fmax >= level:
                cache[y1] = (t0,t0,fmax)
            else:
                cache[y1] = (
                    tmax - _extent(lg,tmax,-1.0,level,step,limit),
                    tmax + _extent(lg,tmax,1.0,level,step,limit),
                    fmax,
                )
        return cache[y1]

    # the outer range is the projection of {G >= level}, found from the
    # profile max_y0 log G(y0, y1), which is again log-concave
    profile = lambda t: inner_limits(t)[2]
    y1 = float(y_peak[1])
    a = y1 - _extent(profile,y1,-1.0,level,step,limit)
    b = y1 + _extent(profile,y1,1.0,level,step,limit)
    v,err = integrate.dblquad(
        lambda y0,y1: section_maximum(m,e,B.dot([y0,y1])),
        a, b,
        lambda y1: inner_limits(y1)[0],
        lambda y1: inner_limits(y1)[1],
        epsabs=0.0, epsrel=1E-6
    )
    log.debug("Skorohod norm along %r: %r (error %r)",e.tolist(),2*v,2*err)
    return 2.0*v

#----------------------------------------------------------------------------
def envelope_fit(m,alpha):
    """Return the smallest ``c`` with ``rho(x) <= c exp(-alpha |x|)``

    The supremum of ``log rho(x) + alpha |x|`` is concave along
    each ray from the origin, which must lie in the support.
    ``inf`` is returned, with a :class:`~errors.DivergenceWarning`,
    when the supremum keeps growing as the search radius is doubled.

    **Example**::

        >>> round( envelope_fit( gaussian(dim=1), 1.0 ), 4 )
        0.6578

    """
    _density_dim(m,"the exponential envelope")
    alpha = float(alpha)
    if alpha < 0.0:
        raise RangeError("alpha must be nonnegative, got {!r}".format(alpha))
    if alpha == 0.0:
        return max_density(m).value

    n = m.dim
    origin = np.zeros(n)
    if not m.contains(origin) or not math.isfinite(m.log_density(origin)):
        raise ConfigurationError("the origin must lie in the support")

    U = _sphere_directions(n,{1:2,2:1024,3:2048}[n])

    def ray_sup(U):
        _,hi = m.chord(origin,U)
        bounded = np.isfinite(hi)
        T = np.where(bounded, hi, 8.0*_scale(m) + float(np.sqrt(m.mode.dot(m.mode))))

        def solve(T):
            fn = lambda t: m.log_density(t[:,None]*U) + alpha*t
            return golden_section_max_many(fn,np.zeros(len(T)),T,tol=1E-10*max(1.0,float(np.max(T))))

        t,f = solve(T)
        for _ in range(4):
            edge = (~bounded) & (t >= T*(1.0 - 1E-6))
            if not np.any(edge):
                return t,f
            f_prev = f.copy()
            T = np.where(edge,2.0*T,T)
            t,f = solve(T)
        edge = (~bounded) & (t >= T*(1.0 - 1E-6))
        if np.any(edge):
            if np.any(f[edge] - f_prev[edge] > 1E-3):
                return t, np.where(edge,inf,f)
            raise ConvergenceError(
                "the envelope supremum sits on the search boundary without growing"
            )
        return t,f

    t,f = ray_sup(U)
    if np.any(np.isinf(f) & (f > 0)):
        warnings.warn(
            "rho(x) exp({!r}|x|) is unbounded".format(alpha),
            DivergenceWarning
        )
        return inf

    best = float(np.max(f))
    if n > 1:
        k = int(np.argmax(f))
        u0 = U[k]
        if n == 2:
            a0 = [math.atan2(u0[1],u0[0])]
            to_u = lambda a: np.array([[math.cos(a[0]),math.sin(a[0])]])
        else:
            a0 = [math.atan2(u0[1],u0[0]), math.acos(max(-1.0,min(1.0,u0[2])))]
            to_u = lambda a: np.array([[
                math.sin(a[1])*math.cos(a[0]), math.sin(a[1])*math.sin(a[0]), math.cos(a[1])
            ]])
        res = optimize.minimize(
            lambda a: -float(ray_sup(to_u(a))[1][0]), a0, method='Nelder-Mead',
            options=dict(xatol=1E-9,fatol=1E-12,maxiter=400)
        )
        best = max(best,-float(res.fun))
    return math.exp(best)

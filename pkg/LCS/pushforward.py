"""
One-dimensional laws
--------------------
The law of ``f(X)``, for a polynomial ``f`` and ``X`` distributed
according to a log-concave measure, is represented by a
:class:`Density1D`: a piecewise-linear density on a uniform grid
of nodes, zero outside the grid.

    *   :func:`estimate_density` forms a histogram density from an
        :class:`EmpiricalSample1D`.
    *   :func:`analytic_density` returns an exact oracle:
        ``'gaussian'``, ``'chi2_1'``, ``'power_image'`` or ``'uniform'``.
        An oracle keeps its exact density and distribution function
        alongside the gridded node values.
    *   :func:`cdf` and :func:`quantile` evaluate the distribution
        function and its inverse.
    *   :func:`oracle_for` recognises cases where the law of ``f``
        under ``m`` has an exact oracle.
    *   :func:`pushforward_samples` draws the values of ``f``.

**Example**::

    >>> rho = analytic_density('chi2_1')
    >>> round(rho.pdf(1.0),4)
    0.242
    >>> round(cdf(rho,0.0158),4)
    0.1

Module contents
---------------

"""
import math
import numbers
import logging

import numpy as np
from scipy import special

from LCS import inf
from LCS.errors import (
    ConfigurationError,
    DegeneracyError,
    RangeError,
)
from LCS import sampler

__all__ = (
    'ORACLES',
    'OracleLaw',
    'Density1D',
    'EmpiricalSample1D',
    'estimate_density',
    'analytic_density',
    'cdf',
    'quantile',
    'oracle_for',
    'pushforward_samples',
)

log = logging.getLogger(__name__)

ORACLES = ('gaussian','chi2_1','power_image','uniform')

#: Number of grid nodes for an oracle
ORACLE_NODES = 8193

#: Probability left out of an oracle grid, split between the tails
ORACLE_TAIL = 1E-10

#: Quantile trimming of histogram ranges
TRIM = 0.0005

MIN_HISTOGRAM_SAMPLES = 1000

QUANTILE_TOL = 1E-9

_Z_TAIL = -float(special.ndtri(0.5*ORACLE_TAIL))

#----------------------------------------------------------------------------
def _scalar_or_array(t,fn):
    t = np.asarray(t,dtype=float)
    with np.errstate(divide='ignore',invalid='ignore',over='ignore'):
        r = fn(t)
    return float(r) if r.ndim == 0 else r

class OracleLaw(object):

    """
    An exactly known law on the real line

    :arg name: the oracle id
    :arg params: the parameters, as given to :func:`analytic_density`
    :arg pdf: the density, vectorised
    :arg cdf: the distribution function, vectorised
    :arg support: ``(lo, hi)``, possibly infinite
    :arg span: a finite interval holding all but ``1e-10`` of the mass
    :arg mode: the location of the largest density
    :arg singularities: ``(point, order)`` pairs, where the density
        grows like ``|t - point|**(-order)``

    Every oracle is unimodal.

    """

    def __init__(self,name,params,pdf,cdf,support,span,mode,singularities=()):
        self.name = name
        self.params = dict(params)
        self._pdf = pdf
        self._cdf = cdf
        self.support = (float(support[0]),float(support[1]))
        self.span = (float(span[0]),float(span[1]))
        self.mode = float(mode)
        self.singularities = tuple( (float(p),float(o)) for p,o in singularities )

    def __repr__(self):
        return "OracleLaw({!r}, {!r})".format(self.name,self.params)

    def pdf(self,t):
        return _scalar_or_array(t,self._pdf)

    def cdf(self,t):
        return _scalar_or_array(t,self._cdf)

#----------------------------------------------------------------------------
def _real(v,name):
    if isinstance(v,bool) or not isinstance(v,numbers.Real) or not math.isfinite(v):
        raise ConfigurationError("{} must be a finite number, got {!r}".format(name,v))
    return float(v)

def _gaussian_law(mean=0.0,sd=1.0):
    mean = _real(mean,'mean')
    sd = _real(sd,'sd')
    if sd <= 0.0:
        raise ConfigurationError("sd must be positive, got {!r}".format(sd))
    k = 1.0/(sd*math.sqrt(2.0*math.pi))
    return OracleLaw(
        'gaussian', dict(mean=mean,sd=sd),
        lambda t: k*np.exp(-0.5*((t - mean)/sd)**2),
        lambda t: special.ndtr((t - mean)/sd),
        (-inf,inf),
        (mean - _Z_TAIL*sd, mean + _Z_TAIL*sd),
        mean,
    )

def _chi2_law():
    k = 1.0/math.sqrt(2.0*math.pi)
    def pdf(t):
        tp = np.where(t > 0.0, t, 1.0)
        return np.where(
            t > 0.0, k*np.exp(-0.5*tp)/np.sqrt(tp), np.where(t == 0.0, inf, 0.0)
        )
    return OracleLaw(
        'chi2_1', {},
        pdf,
        lambda t: special.erf( np.sqrt(0.5*np.maximum(t,0.0)) ),
        (0.0,inf),
        (0.0,_Z_TAIL**2),
        0.0,
        [(0.0,0.5)],
    )

def _power_law(k,absolute=False,scale=1.0,shift=0.0):
    if isinstance(k,bool) or not isinstance(k,numbers.Integral) or k < 1:
        raise ConfigurationError("k must be a positive integer, got {!r}".format(k))
    k = int(k)
    scale = _real(scale,'scale')
    shift = _real(shift,'shift')
    if scale == 0.0:
        raise ConfigurationError("scale must not be zero")
    one_sided = bool(absolute) or k % 2 == 0
    c = 2.0 if one_sided else 1.0
    root_2pi = math.sqrt(2.0*math.pi)

    def pdf_z(z):
        a = np.abs(z)
        r = a**(1.0/k)
        if k == 1:
            v = c*np.exp(-0.5*r*r)/root_2pi*np.ones_like(a)
        else:
            v = np.where(a > 0.0, c*np.exp(-0.5*r*r)*r/(k*a)/root_2pi, inf)
        if one_sided:
            v = np.where(z >= 0.0, v, 0.0)
        return v

    def cdf_z(z):
        r = np.abs(z)**(1.0/k)
        if one_sided:
            return np.where(z > 0.0, special.erf(r/math.sqrt(2.0)), 0.0)
        return special.ndtr( np.sign(z)*r )

    pdf = lambda t: pdf_z((t - shift)/scale)/abs(scale)
    if scale > 0.0:
        cdf = lambda t: cdf_z((t - shift)/scale)
    else:
        cdf = lambda t: 1.0 - cdf_z((t - shift)/scale)

    zmax = _Z_TAIL**k
    if one_sided:
        ends = sorted([shift, shift + scale*zmax])
        support = (shift,inf) if scale > 0.0 else (-inf,shift)
    else:
        ends = [shift - abs(scale)*zmax, shift + abs(scale)*zmax]
        support = (-inf,inf)
    sing = [(shift,1.0 - 1.0/k)] if k > 1 else []

    return OracleLaw(
        'power_image', dict(k=k,absolute=bool(absolute),scale=scale,shift=shift),
        pdf, cdf, support, ends, shift, sing
    )

def _uniform_law(a=0.0,b=1.0):
    a = _real(a,'a')
    b = _real(b,'b')
    if not b > a:
        raise ConfigurationError("uniform(a, b) needs a < b, got ({!r}, {!r})".format(a,b))
    h = 1.0/(b - a)
    return OracleLaw(
        'uniform', dict(a=a,b=b),
        lambda t: np.where( (t >= a) & (t <= b), h, 0.0 ),
        lambda t: np.clip( (t - a)*h, 0.0, 1.0 ),
        (a,b),
        (a,b),
        0.5*(a + b),
    )

_LAWS = dict(
    gaussian=_gaussian_law,
    chi2_1=_chi2_law,
    power_image=_power_law,
    uniform=_uniform_law,
)

#----------------------------------------------------------------------------
class Density1D(object):

    """
    A piecewise-linear density on the nodes ``left + i*step``

    :arg left: the first node
    :arg step: the node spacing
    :arg values: nonnegative node values
    :arg support: the declared support ``(lo, hi)``, by default the grid range
    :arg source: ``'histogram'``, ``'csv'`` or an oracle id
    :arg law: the :class:`OracleLaw` of an analytic density

    The density is zero outside ``[left, right]``. Unless it is an
    oracle, the trapezoidal mass must be within ``1e-3`` of 1.

    """

    __slots__ = ('_left','_step','_values','_support','_source','_law')

    def __init__(self,left,step,values,support=None,source='histogram',law=None):
        left = _real(left,'left')
        step = _real(step,'step')
        if not step > 0.0:
            raise ConfigurationError("the grid step must be positive, got {!r}".format(step))
        values = np.array(values,dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ConfigurationError("a density needs at least 2 node values")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise ConfigurationError("density values must be finite and nonnegative")
        values.setflags(write=False)

        self._left = left
        self._step = step
        self._values = values
        self._law = law
        self._source = source
        right = left + step*(values.size - 1)
        self._support = (left,right) if support is None else (float(support[0]),float(support[1]))

        if law is None:
            m = self.mass()
            if abs(m - 1.0) > 1E-3:
                raise ConfigurationError(
                    "the trapezoidal mass of a density must be 1 +/- 1e-3, got {!r}".format(m)
                )

    def __repr__(self):
        return "Density1D(source={!r}, left={!r}, step={!r}, count={})".format(
            self._source,self._left,self._step,self._values.size
        )

    left = property(lambda self: self._left)
    step = property(lambda self: self._step)
    values = property(lambda self: self._values)
    support = property(lambda self: self._support)
    source = property(lambda self: self._source)
    law = property(lambda self: self._law)

    @property
    def count(self):
        return self._values.size

    @property
    def right(self):
        return self._left + self._step*(self._values.size - 1)

    @property
    def nodes(self):
        return self._left + self._step*np.arange(self._values.size)

    @property
    def is_oracle(self):
        return self._law is not None

    @property
    def singularities(self):
        return self._law.singularities if self._law is not None else ()

    def mass(self):
        """The trapezoidal mass of the node values"""
        v = self._values
        return float( self._step*(np.sum(v) - 0.5*(v[0] + v[-1])) )

    #------------------------------------------------------------------------
    def interpolate(self,t):
        """The piecewise-linear density at ``t`` (zero off the grid)"""
        def fn(t):
            v = np.interp(t,self.nodes,self._values)
            return np.where( (t >= self._left) & (t <= self.right), v, 0.0 )
        return _scalar_or_array(t,fn)

    def pdf(self,t):
        """The density at ``t``, exact for an oracle"""
        if self._law is not None:
            return self._law.pdf(t)
        return self.interpolate(t)

    __call__ = pdf

    def _grid_cdf(self,t):
        v = self._values
        h = self._step
        cum = np.concatenate( [[0.0], np.cumsum(0.5*h*(v[:-1] + v[1:]))] )
        total = cum[-1]
        s = (t - self._left)/h
        i = np.clip(np.floor(s),0,v.size - 2).astype(int)
        x = np.clip(t - (self._left + i*h),0.0,h)
        F = cum[i] + v[i]*x + 0.5*(v[i+1] - v[i])*x*x/h
        F = np.where(t <= self._left, 0.0, np.where(t >= self.right, total, F))
        return F/total

    def cdf(self,t):
        """The distribution function at ``t``"""
        if self._law is not None:
            return self._law.cdf(t)
        return _scalar_or_array(t,self._grid_cdf)

    def quantile(self,u):
        """The inverse of :meth:`cdf` by bisection"""
        u_arr = np.asarray(u,dtype=float)
        if np.any( ~((u_arr > 0.0) & (u_arr < 1.0)) ):
            raise RangeError("quantile levels must lie in (0, 1), got {!r}".format(u))
        if self._law is not None:
            lo,hi = self._law.span
            lo = max(lo,self._law.support[0])
        else:
            lo,hi = self._left,self.right
        a = np.full(u_arr.shape,lo)
        b = np.full(u_arr.shape,hi)
        for _ in range(200):
            if np.max(b - a) <= QUANTILE_TOL:
                break
            c = 0.5*(a + b)
            below = np.asarray(self.cdf(c)) < u_arr
            a = np.where(below,c,a)
            b = np.where(below,b,c)
        q = 0.5*(a + b)
        return float(q) if q.ndim == 0 else q

#----------------------------------------------------------------------------
class EmpiricalSample1D(object):

    """
    Sorted real values

    **Example**::

        >>> e = EmpiricalSample1D([3.0, 1.0, 2.0, 2.0])
        >>> e.cdf(2.0)
        0.75

    """

    __slots__ = ('_values',)

    def __init__(self,values):
        v = np.sort( np.asarray(values,dtype=float).reshape(-1) )
        if v.size < 2:
            raise ConfigurationError("an empirical sample needs at least 2 values")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("empirical sample values must be finite")
        v.setflags(write=False)
        self._values = v

    def __repr__(self):
        return "EmpiricalSample1D(count={})".format(self._values.size)

    values = property(lambda self: self._values)

    @property
    def count(self):
        return self._values.size

    def __len__(self):
        return self._values.size

    def cdf(self,t):
        n = self._values.size
        return _scalar_or_array(
            t, lambda t: np.searchsorted(self._values,t,side='right')/float(n)
        )

    def fraction_within(self,a,b):
        """The fraction of values in ``[a, b]``"""
        v = self._values
        k = np.searchsorted(v,b,side='right') - np.searchsorted(v,a,side='left')
        return max(int(k),0)/float(v.size)

#----------------------------------------------------------------------------
def estimate_density(samples,bins=None,trim=TRIM):
    """Return a histogram :class:`Density1D`

    :arg samples: an :class:`EmpiricalSample1D` or a sequence of values
    :arg bins: the number of bins (default ``round(sqrt(count))``)
    :arg trim: the probability trimmed from each tail

    Node values sit at the bin centres with a zero node added on
    either side, so the trapezoidal mass equals the histogram mass.
    The retained fraction is renormalised to 1.

    """
    if not isinstance(samples,EmpiricalSample1D):
        samples = EmpiricalSample1D(samples)
    N = samples.count
    if N < MIN_HISTOGRAM_SAMPLES:
        raise ConfigurationError(
            "a histogram needs at least {} samples, got {}".format(MIN_HISTOGRAM_SAMPLES,N)
        )
    if bins is None:
        bins = int(round(math.sqrt(N)))
    elif isinstance(bins,bool) or not isinstance(bins,numbers.Integral) or bins < 1:
        raise ConfigurationError("bins must be a positive integer, got {!r}".format(bins))

    x = samples.values
    lo,hi = np.quantile(x,[trim,1.0 - trim])
    lo, hi = float(lo), float(hi)
    if hi - lo < 1E-12:
        raise DegeneracyError(
            "the sample is essentially constant (range {!r})".format(hi - lo)
        )
    counts,_ = np.histogram(x,bins=bins,range=(lo,hi))
    width = (hi - lo)/bins
    kept = counts.sum()
    dens = counts/(kept*width)
    log.debug("histogram of %d values: %d bins on [%r, %r], %d retained",N,bins,lo,hi,kept)
    values = np.concatenate([[0.0],dens,[0.0]])
    return Density1D(lo - 0.5*width,width,values,(lo,hi),'histogram')

def _oracle_grid(law,count=ORACLE_NODES):
    a,b = law.span
    t = np.linspace(a,b,count)
    step = (b - a)/(count - 1)
    v = np.asarray(law.pdf(t),dtype=float)
    for s,_ in law.singularities:
        j = int(round((s - a)/step))
        if not 0 <= j < count or abs(t[j] - s) > 1E-9*step:
            continue
        # the adjacent cells keep their exact mass
        mass = 0.0
        others = 0.0
        cells = 0
        if j > 0:
            mass += law.cdf(t[j]) - law.cdf(t[j-1])
            others += v[j-1]
            cells += 1
        if j < count - 1:
            mass += law.cdf(t[j+1]) - law.cdf(t[j])
            others += v[j+1]
            cells += 1
        v[j] = max( (2.0*mass/step - others)/cells, 0.0 )
    v = np.where(np.isfinite(v),v,0.0)
    return a,step,v

def analytic_density(oracle,**params):
    """Return the exact oracle ``oracle`` as a :class:`Density1D`

    :arg oracle: one of :data:`ORACLES`

    ``gaussian(mean=0, sd=1)``, ``chi2_1()``,
    ``power_image(k, absolute=False, scale=1, shift=0)`` (the law of
    ``scale*X**k + shift`` or ``scale*|X|**k + shift`` with ``X``
    standard normal) and ``uniform(a=0, b=1)``.

    **Example**::

        >>> round(analytic_density('gaussian').pdf(0.0),4)
        0.3989
        >>> analytic_density('uniform',a=0,b=1).pdf(0.5)
        1.0

    """
    try:
        make = _LAWS[oracle]
    except (KeyError,TypeError):
        raise ConfigurationError(
            "unknown oracle {!r}, expected one of {}".format(oracle,', '.join(ORACLES))
        )
    try:
        law = make(**params)
    except TypeError as e:
        raise ConfigurationError("bad parameters for oracle {!r}: {}".format(oracle,e))
    left,step,values = _oracle_grid(law)
    return Density1D(left,step,values,law.support,oracle,law)

def cdf(rho,t):
    """Return the distribution function of ``rho`` at ``t``"""
    return rho.cdf(t)

def quantile(rho,u):
    """Return the ``u``-quantile of ``rho``, ``0 < u < 1``

    **Example**::

        >>> round(quantile(analytic_density('uniform'),0.25),6)
        0.25

    """
    return rho.quantile(u)

#----------------------------------------------------------------------------
def oracle_for(f,m):
    """Return the exact law of ``f`` under ``m`` as a :class:`Density1D`, or ``None``

    Recognised cases: ``f = a*x1**k + b`` under a centred
    one-dimensional Gaussian, and ``f = a*x1 + b`` under a
    one-dimensional uniform box.

    """
    if m.dim != 1 or m.base is not None:
        return None
    mp = f.monomial_power()
    if mp is None:
        return None
    a,k,b = mp
    if m.family == 'gaussian':
        mean = float(m.param('mean')[0])
        sd = math.sqrt(float(m.param('cov')[0,0]))
        if k == 1:
            return analytic_density('gaussian',mean=a*mean + b,sd=abs(a)*sd)
        if mean != 0.0:
            return None
        return analytic_density('power_image',k=k,scale=a*sd**k,shift=b)
    if m.family == 'uniform_box' and k == 1:
        c = float(m.param('center')[0])
        w = float(m.param('half_widths')[0])
        ends = sorted([a*(c - w) + b, a*(c + w) + b])
        return analytic_density('uniform',a=ends[0],b=ends[1])
    return None

def pushforward_samples(f,m,count,s,workers=1):
    """Return the values of ``f`` at ``count`` draws from ``m`` as an :class:`EmpiricalSample1D`"""
    X = sampler.sample(m,count,s,workers=workers)
    return EmpiricalSample1D( f(X) )

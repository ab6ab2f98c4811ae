"""
Reproducible sampling
---------------------
Every random draw is made from a :class:`SeededStream`, a value
object naming a counter-based (Philox) stream by a master seed, an
index and a path of child indices. Work is split into batches, and
batch ``i`` always draws from ``s.child(i)``, so results do not
depend on the number of worker threads.

    *   :func:`sample` draws from a :class:`~measure.LogConcaveMeasure`.
        Built-in families (and their affine images) are sampled
        exactly; custom potentials by hit-and-run, with each move
        drawn exactly from the log-concave restriction of the density
        to a line by adaptive rejection (:class:`AdaptiveRejection`).
    *   :func:`expectation` returns a Monte Carlo
        :obj:`~named_tuples.Estimate` with a batch-means standard error.
    *   :func:`quadrature_expectation` integrates against the exact
        density of a one-dimensional measure.
    *   :func:`sphere_average` averages over the unit sphere.

**Example**::

    >>> s = SeededStream(2024, 0)
    >>> m = gaussian(dim=2)
    >>> bool( (sample(m,10,s) == sample(m,10,s)).all() )
    True

Module contents
---------------

"""
import math
import numbers
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import integrate

from LCS import inf, BATCH_SIZE
from LCS.errors import (
    ConfigurationError,
    EstimationError,
    InvalidMeasureError,
)
from LCS.named_tuples import Estimate
from LCS import estimates

__all__ = (
    'SeededStream',
    'AdaptiveRejection',
    'sample',
    'expectation',
    'quadrature_expectation',
    'sphere_average',
)

log = logging.getLogger(__name__)

_SEED_LIMIT = 2**64

#----------------------------------------------------------------------------
class SeededStream(object):

    """
    A named, counter-based random stream

    :arg seed: the master seed, ``0 <= seed < 2**64``
    :arg index: the stream index
    :arg counter: the number of Philox blocks to skip
    :arg path: child indices below ``index``

    Streams with equal fields produce identical draws.

    """

    __slots__ = ('_seed','_index','_counter','_path')

    def __init__(self,seed,index=0,counter=0,path=()):
        for name,v in (('seed',seed),('index',index),('counter',counter)):
            if isinstance(v,bool) or not isinstance(v,numbers.Integral) or v < 0:
                raise ConfigurationError(
                    "{} must be a nonnegative integer, got {!r}".format(name,v)
                )
        if seed >= _SEED_LIMIT:
            raise ConfigurationError("seed must be less than 2**64, got {!r}".format(seed))
        self._seed = int(seed)
        self._index = int(index)
        self._counter = int(counter)
        self._path = tuple( int(p) for p in path )

    seed = property(lambda self: self._seed)
    index = property(lambda self: self._index)
    counter = property(lambda self: self._counter)
    path = property(lambda self: self._path)

    def __repr__(self):
        return "SeededStream(seed={!r}, index={!r}, counter={!r}, path={!r})".format(
            self._seed,self._index,self._counter,self._path
        )

    def _key(self):
        return (self._seed,self._index,self._counter,self._path)

    def __eq__(self,other):
        if isinstance(other,SeededStream):
            return self._key() == other._key()
        return NotImplemented

    def __ne__(self,other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self._key())

    def generator(self):
        """Return a fresh :class:`numpy.random.Generator` positioned at the counter"""
        ss = np.random.SeedSequence(self._seed,spawn_key=(self._index,) + self._path)
        bg = np.random.Philox(ss)
        if self._counter:
            bg = bg.advance(self._counter)
        return np.random.Generator(bg)

    def child(self,i):
        """Return the stream of sub-task ``i``"""
        return SeededStream(self._seed,self._index,0,self._path + (int(i),))

    def advanced(self,k):
        return SeededStream(self._seed,self._index,self._counter + int(k),self._path)

    def to_dict(self):
        return dict(seed=self._seed,index=self._index,counter=self._counter,path=list(self._path))

    @classmethod
    def from_dict(cls,d):
        return cls(d['seed'],d.get('index',0),d.get('counter',0),d.get('path',()))

#----------------------------------------------------------------------------
def _map(fn,items,workers):
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [ fn(i) for i in items ]
    with ThreadPoolExecutor(max_workers=int(workers)) as ex:
        return list( ex.map(fn,items) )

def _exact_batch(m,rng,k):
    n = m.dim
    fam = m.family
    if fam == 'gaussian':
        z = rng.standard_normal((k,n))
        return m.param('mean') + z.dot(m.param('chol').T)
    if fam == 'uniform_box':
        return m.param('center') + rng.uniform(-1.0,1.0,(k,n))*m.param('half_widths')
    if fam == 'uniform_ball':
        z = rng.standard_normal((k,n))
        z /= np.sqrt(np.sum(z*z,axis=1))[:,None]
        r = m.param('radius')*rng.uniform(0.0,1.0,k)**(1.0/n)
        return m.param('center') + r[:,None]*z
    if fam == 'product_exponential':
        return rng.laplace(m.param('mean'),1.0/m.param('rates'),(k,n))
    raise ConfigurationError("no exact sampler for {!r}".format(m))

def _counts(count,parts):
    base,extra = divmod(count,parts)
    return [ base + (1 if i < extra else 0) for i in range(parts) ]

def sample(m,count,s,burnin=None,thin=None,workers=1,chains=4):
    """Return a ``(count, n)`` array of draws from ``m``

    :arg m: a :class:`~measure.LogConcaveMeasure`
    :arg count: the number of draws
    :arg s: a :class:`SeededStream`
    :arg burnin: hit-and-run steps discarded per chain (default ``1000 n``)
    :arg thin: hit-and-run steps between kept draws (default ``n``)
    :arg workers: the number of threads
    :arg chains: independent hit-and-run chains for custom potentials

    The result depends only on ``(m, count, s, burnin, thin, chains)``.

    """
    if isinstance(count,bool) or not isinstance(count,numbers.Integral) or count < 1:
        raise ConfigurationError("count must be a positive integer, got {!r}".format(count))
    count = int(count)

    if m.base is not None:
        X = sample(m.base,count,s,burnin,thin,workers,chains)
        return m.transform.apply(X)

    if m.is_builtin:
        sizes = _counts(count,-(-count//BATCH_SIZE))
        log.debug("%d exact draws from %r in %d batches",count,m,len(sizes))
        parts = _map(
            lambda i: _exact_batch(m,s.child(i).generator(),sizes[i]),
            range(len(sizes)), workers
        )
        return np.vstack(parts)

    n = m.dim
    burnin = 1000*n if burnin is None else int(burnin)
    thin = n if thin is None else int(thin)
    if burnin < 0 or thin < 1:
        raise ConfigurationError(
            "burn-in must be nonnegative and thinning positive, got {!r} and {!r}".format(burnin,thin)
        )
    chains = max(1,min(int(chains),count))
    sizes = _counts(count,chains)
    log.debug(
        "hit-and-run on %r: %d chains, burn-in %d, thinning %d",m,chains,burnin,thin
    )
    parts = _map(
        lambda i: _hit_and_run(m,sizes[i],s.child(i).generator(),burnin,thin),
        range(chains), workers
    )
    return np.vstack(parts)

#----------------------------------------------------------------------------
class AdaptiveRejection(object):

    """
    Exact sampling from a log-concave density on an interval

    :arg h: the log density (up to a constant), vectorised, ``-inf``
        outside its domain
    :arg lo: left end of the domain (may be ``-inf``)
    :arg hi: right end of the domain (may be ``inf``)
    :arg scale: a length used for the initial abscissae and for
        numerical derivatives

    ``h(0)`` must be finite. The upper hull is built from tangents
    (slopes by central differences) and the squeeze from chords.
    A point where ``h`` exceeds its hull reveals a density that is
    not log-concave and raises :class:`~errors.InvalidMeasureError`.

    """

    MAX_POINTS = 40
    MAX_TRIALS = 200

    def __init__(self,h,lo=-inf,hi=inf,scale=1.0):
        self.h = h
        self.lo = float(lo)
        self.hi = float(hi)
        self.scale = float(scale)
        self._delta = 1E-6*self.scale

        x = [0.0]
        for t in (-min(self.scale,-0.5*self.lo), min(self.scale,0.5*self.hi)):
            if self.lo < t < self.hi and t != 0.0:
                x.append(t)
        x = np.array(sorted(x))
        hx,dx = self._eval(x)
        if not math.isfinite(hx[x == 0.0][0]):
            raise InvalidMeasureError("the line density vanishes at the current point")
        keep = np.isfinite(hx)
        self.x, self.hx, self.dx = x[keep], hx[keep], dx[keep]
        self._cover(-1)
        self._cover(1)

    def _eval(self,t):
        t = np.asarray(t,dtype=float)
        d = self._delta*(1.0 + np.abs(t))
        left = np.maximum(t - d,self.lo)
        right = np.minimum(t + d,self.hi)
        v = self.h( np.concatenate([left,t,right]) )
        k = t.size
        hl, ht, hr = v[:k], v[k:2*k], v[2*k:]
        with np.errstate(divide='ignore',invalid='ignore'):
            central = (hr - hl)/(right - left)
            fwd = (hr - ht)/(right - t)
            bwd = (ht - hl)/(t - left)
        slope = np.where(
            np.isfinite(hl) & np.isfinite(hr), central,
            np.where(np.isfinite(hr), fwd, bwd)
        )
        return ht, slope

    def _add(self,t):
        ht,dt = self._eval([t])
        if not math.isfinite(ht[0]):
            # beyond the effective domain
            if t > self.x[-1]:
                self.hi = t
            else:
                self.lo = t
            return False
        j = int(np.searchsorted(self.x,t))
        self.x = np.insert(self.x,j,t)
        self.hx = np.insert(self.hx,j,ht[0])
        self.dx = np.insert(self.dx,j,dt[0] if math.isfinite(dt[0]) else 0.0)
        return True

    def _cover(self,side):
        """Add abscissae until the outer tangent decays towards an infinite end"""
        step = self.scale
        for _ in range(200):
            if side < 0:
                if math.isfinite(self.lo) or self.dx[0] > 0.0:
                    return
                t = self.x[0] - step
            else:
                if math.isfinite(self.hi) or self.dx[-1] < 0.0:
                    return
                t = self.x[-1] + step
            self._add(t)
            step *= 2.0
        raise InvalidMeasureError(
            "the line density does not decay: the potential is not convex or not normalisable"
        )

    def _hull(self):
        x, hx, dx = self.x, self.hx, self.dx
        with np.errstate(divide='ignore',invalid='ignore'):
            z = (hx[1:] - hx[:-1] - x[1:]*dx[1:] + x[:-1]*dx[:-1])/(dx[:-1] - dx[1:])
        z = np.where(np.isfinite(z), z, 0.5*(x[1:] + x[:-1]))
        z = np.clip(z,x[:-1],x[1:])
        return np.concatenate([[self.lo],z,[self.hi]])

    @staticmethod
    def _log_piece(a,L):
        """log of int_0^L exp(a t) dt"""
        if L == inf:
            return -math.log(-a)
        aL = a*L
        if abs(aL) < 1E-12:
            return math.log(L) + 0.5*aL
        if aL > 0.0:
            return aL + math.log(-math.expm1(-aL)) - math.log(a)
        return math.log(-math.expm1(aL)) - math.log(-a)

    def _upper(self,t,z):
        j = int(np.searchsorted(z,t,side='right')) - 1
        j = min(max(j,0),self.x.size - 1)
        return self.hx[j] + self.dx[j]*(t - self.x[j])

    def _lower(self,t):
        x = self.x
        if t < x[0] or t > x[-1] or x.size < 2:
            return -inf
        j = min(int(np.searchsorted(x,t,side='right')) - 1, x.size - 2)
        w = (t - x[j])/(x[j+1] - x[j])
        return (1.0 - w)*self.hx[j] + w*self.hx[j+1]

    def _draw_hull(self,rng,z):
        k = self.x.size
        logm = np.empty(k)
        for j in range(k):
            a = self.dx[j]
            if j == 0 and z[0] == -inf:
                # leftmost piece, integrate down from its right end
                logm[j] = self.hx[j] + a*(z[1] - self.x[j]) + self._log_piece(-a,inf)
            else:
                logm[j] = self.hx[j] + a*(z[j] - self.x[j]) + self._log_piece(a,z[j+1] - z[j])
        p = np.exp(logm - logm.max())
        p /= p.sum()
        j = int(rng.choice(k,p=p))
        a = self.dx[j]
        u = rng.uniform()
        lo, hi = z[j], z[j+1]
        if lo == -inf:
            return hi + math.log(u)/a
        if hi == inf:
            return lo + math.log(u)/a
        L = hi - lo
        aL = a*L
        if abs(aL) < 1E-12:
            return lo + u*L
        if aL > 0.0:
            return hi + math.log(u + (1.0 - u)*math.exp(-aL))/a
        return lo + math.log1p(u*math.expm1(aL))/a

    def draw(self,rng):
        """Return one exact draw"""
        for _ in range(self.MAX_TRIALS):
            z = self._hull()
            t = self._draw_hull(rng,z)
            if not (self.lo <= t <= self.hi) or not math.isfinite(t):
                continue
            u = self._upper(t,z)
            logw = math.log(rng.uniform())
            if logw <= self._lower(t) - u:
                return t
            ht = float(self.h(np.array([t]))[0])
            if ht > u + 1E-4*(1.0 + abs(u)):
                raise InvalidMeasureError(
                    "the line density exceeds its tangent hull at t={!r}: "
                    "the potential is not convex".format(t)
                )
            if logw <= ht - u:
                return t
            if self.x.size < self.MAX_POINTS or not math.isfinite(ht):
                self._add(t)
        raise InvalidMeasureError(
            "adaptive rejection accepted no point in {} trials".format(self.MAX_TRIALS)
        )

def _hit_and_run(m,count,rng,burnin,thin):
    n = m.dim
    p = m.params
    x = np.array(p['mode'],dtype=float)
    if not math.isfinite(m.potential(x)):
        raise InvalidMeasureError("no interior starting point for hit-and-run")
    scale = max(p.get('tail_radius',10.0)/10.0,1E-8)

    out = np.empty((count,n))
    steps = burnin + count*thin
    kept = 0
    for step in range(1,steps+1):
        u = rng.standard_normal(n)
        u /= math.sqrt(u.dot(u))
        lo,hi = m.chord(x,u)
        Vx = m.potential(x)
        h = lambda t,x=x,u=u,Vx=Vx: Vx - m.potential(x + t[:,None]*u)
        t = AdaptiveRejection(h,float(lo),float(hi),scale).draw(rng)
        x = x + t*u
        if step > burnin and (step - burnin) % thin == 0:
            out[kept] = x
            kept += 1
    return out

#----------------------------------------------------------------------------
def expectation(m,g,count,s,workers=1,vectorized=True):
    """Return an :obj:`~named_tuples.Estimate` of ``E g(X)``

    :arg g: a function of the ``(count, n)`` sample array returning
        ``count`` values, or of a single point when ``vectorized``
        is false

    Non-finite values of ``g`` raise an
    :class:`~errors.EstimationError` carrying their number.

    **Example**::

        >>> expectation(gaussian(dim=3), lambda X: np.ones(len(X)), 1000, SeededStream(1))
        Estimate(value=1.0, u=0.0, count=1000)

    """
    X = sample(m,count,s,workers=workers)
    if vectorized:
        y = np.asarray(g(X),dtype=float).reshape(-1)
    else:
        y = np.array([ float(g(x)) for x in X ])
    if y.size != X.shape[0]:
        raise ConfigurationError(
            "g returned {} values for {} points".format(y.size,X.shape[0])
        )
    bad = ~np.isfinite(y)
    if np.any(bad):
        k = int(np.sum(bad))
        raise EstimationError(
            "g is not finite at {} of {} samples".format(k,y.size), k
        )
    e = estimates.batch_means(y)
    return Estimate(e.value,e.u,e.count)

def quadrature_expectation(m,g,points=()):
    """Return ``E g(X)`` by adaptive quadrature for a one-dimensional measure

    :arg g: a function of a real number
    :arg points: abscissae where ``g`` may be singular or kinked

    The ``u`` field holds the quadrature error estimate and
    ``count`` is 0.

    **Example**::

        >>> e = quadrature_expectation( gaussian(dim=1), lambda t: abs(t) )
        >>> round(e.value,10)
        0.7978845608

    """
    if m.dim != 1:
        raise ConfigurationError(
            "quadrature expectations need a one-dimensional measure, got dimension {}".format(m.dim)
        )
    lo,hi = m.chord(np.zeros(1),np.ones(1))
    lo, hi = float(lo), float(hi)
    breaks = sorted( set(
        float(p) for p in tuple(points) + (float(m.mode[0]),)
        if lo < float(p) < hi
    ) )
    edges = [lo] + breaks + [hi]

    def integrand(t):
        r = math.exp(m.log_density(np.array([t])))
        return g(t)*r if r > 0.0 else 0.0

    total = 0.0
    error = 0.0
    for a,b in zip(edges[:-1],edges[1:]):
        v,e = integrate.quad(integrand,a,b,epsabs=1E-13,epsrel=1E-11,limit=200)
        total += v
        error += e
    return Estimate(total,error,0)

def sphere_average(g,n,count,s):
    """Return an :obj:`~named_tuples.Estimate` of the average of ``g`` over the unit sphere

    ``g`` maps a ``(k, n)`` array of unit vectors to ``k`` values.

    """
    sizes = _counts(count,-(-count//BATCH_SIZE))
    values = []
    for i,k in enumerate(sizes):
        z = s.child(i).generator().standard_normal((k,n))
        z /= np.sqrt(np.sum(z*z,axis=1))[:,None]
        values.append( np.asarray(g(z),dtype=float) )
    e = estimates.batch_means(np.concatenate(values))
    return Estimate(e.value,e.u,e.count)

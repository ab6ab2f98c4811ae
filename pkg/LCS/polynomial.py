"""
Sparse multivariate polynomials
-------------------------------
A :class:`Polynomial` maps exponent multi-indices to real
coefficients. Polynomials are immutable.

    *   :func:`parse` reads text such as ``'x1^2 + 2*x1*x2 - 3'``.
    *   :func:`evaluate` and :func:`gradient` evaluate a polynomial
        and its gradient at a point or at each row of an array.
    *   :func:`directional` returns the directional derivative
        ``d_e f`` as a polynomial.
    *   :func:`moments` estimates the mean, variance and norms
        of a polynomial under a log-concave measure.

The text grammar is ::

    expression := [sign] term { sign term }
    term       := factor { '*' factor }
    factor     := number | variable [ '^' integer ]
    variable   := 'x' integer            (indices start at 1)

**Example**::

    >>> f = parse('x1^2 + 2*x1*x2 - 3')
    >>> f.degree, len(f)
    (2, 3)
    >>> f([1.0, 2.0])
    2.0

Module contents
---------------

"""
import math
import numbers
import logging

import numpy as np

from LCS.errors import ConfigurationError, ParseError, EstimationError
from LCS.named_tuples import Estimate, PolynomialMoments
from LCS import estimates

__all__ = (
    'Polynomial',
    'parse',
    'evaluate',
    'gradient',
    'directional',
    'moments',
    'ZERO_FRACTION',
)

log = logging.getLogger(__name__)

# ||f||_0 is reported as undefined when more samples than this vanish
ZERO_FRACTION = 1E-3

#----------------------------------------------------------------------------
def _trim(key):
    key = tuple( int(k) for k in key )
    n = len(key)
    while n and key[n-1] == 0:
        n -= 1
    return key[:n]

#----------------------------------------------------------------------------
class Polynomial(object):

    """
    A sparse polynomial in the variables ``x1, x2, ...``

    :arg terms: a mapping of exponent tuples to coefficients
    :arg nvars: the number of variables (at least the largest index used)

    Zero coefficients are discarded. The zero polynomial
    has degree 0.

    """

    __slots__ = ('_terms','_nvars','_degree')

    def __init__(self,terms=None,nvars=None):
        merged = {}
        for key,c in dict(terms or {}).items():
            for k in key:
                if not isinstance(k,numbers.Integral) or k < 0:
                    raise ConfigurationError(
                        "exponents must be nonnegative integers, got {!r}".format(key)
                    )
            key = _trim(key)
            merged[key] = merged.get(key,0.0) + float(c)

        self._terms = { k: c for k,c in merged.items() if c != 0.0 }

        used = max( (len(k) for k in self._terms), default=0 )
        if nvars is None:
            nvars = used
        elif nvars < used:
            raise ConfigurationError(
                "nvars={!r} but variable x{} is used".format(nvars,used)
            )
        self._nvars = int(nvars)
        self._degree = max( (sum(k) for k in self._terms), default=0 )

    #------------------------------------------------------------------------
    @property
    def terms(self):
        """A copy of the monomial map, with trailing zero exponents removed"""
        return dict(self._terms)

    @property
    def nvars(self):
        return self._nvars

    @property
    def degree(self):
        return self._degree

    def is_constant(self):
        return self._degree == 0

    def __len__(self):
        return len(self._terms)

    def __eq__(self,other):
        if isinstance(other,Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __ne__(self,other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash( frozenset(self._terms.items()) )

    def __repr__(self):
        return "Polynomial({!r})".format(str(self))

    def __str__(self):
        if not self._terms:
            return "0"

        order = sorted(
            self._terms,
            key=lambda k: (-sum(k), tuple(-e for e in k) + (0,)*(self._nvars - len(k)))
        )
        out = []
        for i,key in enumerate(order):
            c = self._terms[key]
            factors = []
            for j,e in enumerate(key):
                if e == 1:
                    factors.append("x{}".format(j+1))
                elif e > 1:
                    factors.append("x{}^{}".format(j+1,e))

            mag = abs(c)
            if factors and mag == 1.0:
                body = "*".join(factors)
            else:
                body = "*".join( [repr(mag)] + factors )

            if i == 0:
                out.append( "-" + body if c < 0 else body )
            else:
                out.append( (" - " if c < 0 else " + ") + body )
        return "".join(out)

    def __call__(self,x):
        return evaluate(self,x)

    #------------------------------------------------------------------------
    def _rows(self,x):
        x = np.asarray(x,dtype=float)
        scalar = x.ndim == 1
        if x.ndim == 0 or x.ndim > 2:
            raise ConfigurationError(
                "expected a vector or a 2-D array, got shape {}".format(x.shape)
            )
        X = x.reshape(1,-1) if scalar else x
        if X.shape[1] < self._nvars:
            raise ConfigurationError(
                "{} needs {} variables, got points of dimension {}".format(
                    self, self._nvars, X.shape[1]
                )
            )
        return X, scalar

    def _evaluate(self,X):
        out = np.zeros(X.shape[0])
        for key,c in self._terms.items():
            t = np.full(X.shape[0],c)
            for j,e in enumerate(key):
                if e:
                    t = t * X[:,j]**e
            out += t
        return out

    def partial(self,i):
        """Return the partial derivative with respect to ``x(i+1)``

        ``i`` is a 0-based variable index.

        """
        terms = {}
        for key,c in self._terms.items():
            if i < len(key) and key[i] > 0:
                k = list(key)
                k[i] -= 1
                k = tuple(k)
                terms[k] = terms.get(k,0.0) + c*key[i]
        return Polynomial(terms,self._nvars)

    def univariate_coefficients(self):
        """Return the coefficients in ``x1``, highest power first

        The order is that of :func:`numpy.polyval`. A
        :class:`~errors.ConfigurationError` is raised if a
        variable other than ``x1`` appears.

        """
        if any( len(k) > 1 for k in self._terms ):
            raise ConfigurationError(
                "{} is not a polynomial in x1 alone".format(self)
            )
        coef = np.zeros(self._degree + 1)
        for key,c in self._terms.items():
            k = key[0] if key else 0
            coef[self._degree - k] += c
        return coef

    def monomial_power(self):
        """Return ``(a, k, b)`` when ``f = a*x1^k + b`` with ``k >= 1``, else ``None``"""
        if any( len(k) > 1 for k in self._terms ):
            return None
        b = self._terms.get((),0.0)
        others = [ (k,c) for k,c in self._terms.items() if k ]
        if len(others) != 1:
            return None
        key,a = others[0]
        return a, key[0], b

    def quadratic_form(self):
        """Return ``(c, b, A)`` with ``f(x) = c + b.x + x.A.x`` when ``degree <= 2``"""
        if self._degree > 2:
            raise ConfigurationError(
                "{} is not of degree 2 or less".format(self)
            )
        n = self._nvars
        c = 0.0
        b = np.zeros(n)
        A = np.zeros((n,n))
        for key,coef in self._terms.items():
            idx = [ j for j,e in enumerate(key) for _ in range(e) ]
            if len(idx) == 0:
                c += coef
            elif len(idx) == 1:
                b[idx[0]] += coef
            elif idx[0] == idx[1]:
                A[idx[0],idx[0]] += coef
            else:
                A[idx[0],idx[1]] += 0.5*coef
                A[idx[1],idx[0]] += 0.5*coef
        return c, b, A

#----------------------------------------------------------------------------
class _Scanner(object):

    def __init__(self,text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def error(self,message,pos=None):
        return ParseError(message, self.pos if pos is None else pos)

    def integer(self,what):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected {}".format(what))
        if self.pos < len(self.text) and self.text[self.pos] in '.eE':
            raise self.error(
                "{} must be a nonnegative integer".format(what), start
            )
        return int(self.text[start:self.pos])

    def number(self):
        self.skip()
        text = self.text
        start = self.pos
        i = start
        while i < len(text) and text[i].isdigit():
            i += 1
        if i < len(text) and text[i] == '.':
            i += 1
            while i < len(text) and text[i].isdigit():
                i += 1
        if i == start or text[start:i] == '.':
            raise self.error("expected a number or a variable")
        if i < len(text) and text[i] in 'eE':
            j = i + 1
            if j < len(text) and text[j] in '+-':
                j += 1
            k = j
            while k < len(text) and text[k].isdigit():
                k += 1
            if k == j:
                raise self.error("malformed exponent in number", i)
            i = k
        self.pos = i
        return float(text[start:i])

    def factor(self,exponents):
        ch = self.peek()
        if ch == 'x':
            self.pos += 1
            at = self.pos
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise self.error("expected a variable index after 'x'")
            j = self.integer("a variable index")
            if j < 1:
                raise self.error("variable indices start at 1",at)
            e = 1
            if self.peek() == '^':
                self.pos += 1
                if self.peek() in ('+','-'):
                    raise self.error("exponent must be a nonnegative integer")
                e = self.integer("an exponent")
            exponents[j] = exponents.get(j,0) + e
            return 1.0
        elif ch.isdigit() or ch == '.':
            c = self.number()
            if self.peek() == '^':
                raise self.error("only variables may be raised to a power")
            return c
        elif ch == '':
            raise self.error("unexpected end of input")
        else:
            raise self.error("unexpected character {!r}".format(ch))

    def term(self):
        exponents = {}
        c = self.factor(exponents)
        while self.peek() == '*':
            self.pos += 1
            c *= self.factor(exponents)
        n = max(exponents,default=0)
        key = tuple( exponents.get(j,0) for j in range(1,n+1) )
        return key, c

    def expression(self):
        terms = {}
        sign = 1.0
        ch = self.peek()
        if ch in ('+','-'):
            sign = -1.0 if ch == '-' else 1.0
            self.pos += 1
        while True:
            key,c = self.term()
            terms[key] = terms.get(key,0.0) + sign*c
            ch = self.peek()
            if ch == '':
                return terms
            if ch not in '+-':
                raise self.error("unexpected character {!r}".format(ch))
            sign = -1.0 if ch == '-' else 1.0
            self.pos += 1

def parse(text):
    """Return the :class:`Polynomial` described by ``text``

    Like terms are merged. A :class:`~errors.ParseError` carries
    the 0-based position of the offending character.

    **Example**::

        >>> str( parse('x1 - x1') )
        '0'
        >>> parse('x1^^2')
        Traceback (most recent call last):
        ...
        LCS.errors.ParseError: expected an exponent at character 3

    """
    if not isinstance(text,str):
        raise ConfigurationError(
            "expected polynomial text, got {!r}".format(text)
        )
    return Polynomial( _Scanner(text).expression() )

#----------------------------------------------------------------------------
def evaluate(f,x):
    """Return ``f(x)``

    ``x`` is a point (a vector) or an array with one point per row.
    The number of columns may exceed ``f.nvars``.

    """
    X,scalar = f._rows(x)
    y = f._evaluate(X)
    return float(y[0]) if scalar else y

def gradient(f,x):
    """Return the gradient of ``f`` at ``x``

    **Example**::

        >>> gradient( parse('x1^2 + x2^2'), [1.0, 2.0] )
        array([2., 4.])

    """
    X,scalar = f._rows(x)
    G = np.zeros(X.shape)
    for i in range(f.nvars):
        G[:,i] = f.partial(i)._evaluate(X)
    return G[0] if scalar else G

def directional(f,e):
    """Return the polynomial ``d_e f = sum_i e_i df/dx_i``

    ``e`` must have at least ``f.nvars`` components; it is
    not normalised.

    **Example**::

        >>> str( directional( parse('x1^3'), [1.0] ) )
        '3.0*x1^2'

    """
    e = np.asarray(e,dtype=float).ravel()
    if e.size < f.nvars:
        raise ConfigurationError(
            "direction has {} components, {} needs {}".format(e.size,f,f.nvars)
        )
    terms = {}
    for i in range(f.nvars):
        if e[i] == 0.0:
            continue
        for key,c in f.partial(i).terms.items():
            terms[key] = terms.get(key,0.0) + e[i]*c
    return Polynomial(terms,max(f.nvars,e.size))

#----------------------------------------------------------------------------
def _norm_from_moment(M,q):
    # ||f||_q = M^(1/q), with a delta-method standard error
    value = M.value**(1.0/q) if M.value > 0.0 else 0.0
    u = value*M.u/(q*M.value) if M.value > 0.0 else 0.0
    return Estimate(value,u,M.count)

def _exact_gaussian(f,m):
    """Mean and variance of a polynomial of degree <= 2 under a Gaussian"""
    from LCS import measure
    mc = measure.mean_and_covariance(m)
    mu = mc.mean
    S = mc.cov
    n = m.dim
    c,b,A = f.quadratic_form()
    if b.size < n:
        b = np.concatenate([b,np.zeros(n - b.size)])
        A2 = np.zeros((n,n))
        A2[:A.shape[0],:A.shape[1]] = A
        A = A2
    mean = c + b.dot(mu) + mu.dot(A).dot(mu) + np.trace(A.dot(S))
    g = b + 2.0*A.dot(mu)
    AS = A.dot(S)
    var = g.dot(S).dot(g) + 2.0*np.trace(AS.dot(AS))
    return float(mean), max(float(var),0.0), (c,b,A,mu,S)

def moments(f,m,budget,s=None,q_list=(0,1,2),workers=1):
    """Return the moments and norms of ``f`` under the measure ``m``

    :arg f: a :class:`Polynomial`
    :arg m: a :class:`~measure.LogConcaveMeasure`
    :arg budget: a sample count, or ``'quadrature'`` for one-dimensional measures
    :arg s: a :class:`~sampler.SeededStream` (needed for Monte Carlo)
    :arg q_list: orders ``q >= 0`` of the norms ``||f||_q``
    :rtype: :obj:`~named_tuples.PolynomialMoments`

    Mean and variance are exact for Gaussian measures when
    ``f.degree <= 2``; norms are exact for a centred linear ``f``
    under a Gaussian. ``||f||_0 = exp(E ln|f|)`` is reported as
    ``None`` when ``f`` vanishes at more than a fraction
    :data:`ZERO_FRACTION` of the samples.

    """
    from LCS import measure, sampler, constants

    if f.nvars > m.dim:
        raise ConfigurationError(
            "{} uses {} variables but the measure has dimension {}".format(
                f, f.nvars, m.dim
            )
        )
    q_list = tuple( float(q) for q in q_list )
    if any( q < 0.0 for q in q_list ):
        raise ConfigurationError("norm orders must be nonnegative, got {!r}".format(q_list))

    d = f.degree
    beta = 1.0/(d - 1) if d >= 2 else None

    exact_mean = exact_var = None
    exact_norms = {}
    if m.family == 'gaussian' and d <= 2:
        exact_mean,exact_var,(c,b,A,mu,S) = _exact_gaussian(f,m)
        if d <= 1 and abs(exact_mean) <= 1E-15*(abs(c) + float(np.abs(b).sum()) + 1.0):
            sd = math.sqrt(exact_var)
            for q in q_list:
                if q == 0.0 and sd == 0.0:
                    # the zero polynomial
                    exact_norms[q] = None
                    continue
                elif q == 0.0:
                    v = sd*math.exp(-0.5*(np.euler_gamma + math.log(2.0)))
                else:
                    v = sd*constants.normal_abs_moment(q)**(1.0/q)
                exact_norms[q] = Estimate(v,0.0,0)

    need_abs = beta is not None
    need_norms = [ q for q in q_list if q not in exact_norms ]
    if exact_mean is not None and not need_abs and not need_norms:
        return PolynomialMoments(
            exact_mean,0.0,exact_var,0.0,None,None,
            { q: exact_norms[q] for q in q_list }, 0.0 if len(f) else 1.0, 'exact'
        )

    if budget == 'quadrature':
        method = 'quadrature'
        if m.dim != 1:
            raise ConfigurationError(
                "quadrature moments need a one-dimensional measure, got dimension {}".format(m.dim)
            )
        coef = f.univariate_coefficients()
        fx = lambda t: float(np.polyval(coef,t))

        def real_roots(c):
            return [ r.real for r in np.roots(c) if abs(r.imag) < 1E-12 ]

        roots = real_roots(coef)

        def E(g,extra=()):
            return sampler.quadrature_expectation(m, g, points=tuple(roots) + tuple(extra))

        M1 = E(fx)
        Ef = M1.value
        shifted = coef.copy()
        shifted[-1] -= Ef
        centred_roots = real_roots(shifted)
        V = E(lambda t: (fx(t) - Ef)**2, centred_roots)
        abs_central = E(lambda t: abs(fx(t) - Ef)**beta, centred_roots) if need_abs else None

        norms = {}
        for q in q_list:
            if q in exact_norms:
                norms[q] = exact_norms[q]
            elif q == 0.0:
                if d == 0 and Ef == 0.0:
                    norms[q] = None
                else:
                    L = E(lambda t: math.log(abs(fx(t))) if fx(t) != 0.0 else 0.0)
                    v = math.exp(L.value)
                    norms[q] = Estimate(v,v*L.u,0)
            else:
                norms[q] = _norm_from_moment( E(lambda t,q=q: abs(fx(t))**q), q )
        zero_fraction = 1.0 if (d == 0 and Ef == 0.0) else 0.0

    else:
        method = 'montecarlo'
        if isinstance(budget,bool) or not isinstance(budget,numbers.Integral) or budget < 2:
            raise ConfigurationError(
                "budget must be a sample count or 'quadrature', got {!r}".format(budget)
            )
        if s is None:
            raise ConfigurationError("a SeededStream is needed for Monte Carlo moments")

        log.debug("moments of %s from %d samples",f,budget)
        X = sampler.sample(m,int(budget),s,workers=workers)
        y = f._evaluate(X)
        if not np.all(np.isfinite(y)):
            bad = int(np.sum(~np.isfinite(y)))
            raise EstimationError(
                "{} is not finite at {} samples".format(f,bad), bad
            )
        M1 = estimates.batch_means(y)
        Ef = M1.value
        V = estimates.batch_means( (y - Ef)**2 )
        abs_central = estimates.batch_means( np.abs(y - Ef)**beta ) if need_abs else None

        zeros = (y == 0.0)
        zero_fraction = float(np.mean(zeros))
        norms = {}
        for q in q_list:
            if q in exact_norms:
                norms[q] = exact_norms[q]
            elif q == 0.0:
                if zero_fraction > ZERO_FRACTION:
                    norms[q] = None
                else:
                    # isolated exact zeros are a null set of the law of f
                    L = estimates.batch_means( np.log(np.abs(y[~zeros])) )
                    v = math.exp(L.value)
                    norms[q] = Estimate(v,v*L.u,L.count)
            else:
                norms[q] = _norm_from_moment( estimates.batch_means(np.abs(y)**q), q )

    if exact_mean is not None:
        mean, mean_u, variance, variance_u = exact_mean, 0.0, exact_var, 0.0
    else:
        mean, mean_u, variance, variance_u = M1.value, M1.u, V.value, V.u

    return PolynomialMoments(
        mean, mean_u, variance, variance_u,
        None if abs_central is None else abs_central.value,
        None if abs_central is None else abs_central.u,
        norms, zero_fraction, method
    )

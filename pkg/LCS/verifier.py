"""
Numerical checks of the smoothness inequalities
-----------------------------------------------
Every check takes a polynomial ``f`` of degree ``d`` and a
log-concave measure ``m``, evaluates both sides of an inequality
for the image law of ``f`` and returns an :class:`InequalityReport`.

    *   :func:`check_malliavin` the growth of
        ``S(M) = sup E phi'(f)`` over test functions with
        ``|phi| <= 1``, ``|phi'| <= M``, against ``M^(1-1/d)``.
    *   :func:`check_shift_tv` the shift modulus
        ``Delta(h)`` against ``h^(1/d)``.
    *   :func:`check_tv_fm` total variation against the
        Fortet-Mourier distance.
    *   :func:`check_lp_density` the ``L^p`` norm of the density,
        ``1 < p < d/(d-1)``.
    *   :func:`check_lp_difference` the ``L^p`` distance of two densities.
    *   :func:`check_small_ball` ``P(|f| <= t)`` against ``t^(1/d)``.
    *   :func:`check_moment_growth` ratios of ``L^q`` norms of ``f``.
    *   :func:`check_poincare` a Poincare-type ratio.
    *   :func:`check_geometry` level sets, Skorohod norms and
        exponential envelopes of an isotropic density.
    *   :func:`check_directional_bound` the explicit bound on
        ``S(M)`` through a directional derivative.
    *   :func:`run_suite` runs a named group of checks from a configuration.

A budget is either ``'quadrature'``, for one-dimensional
measures, or a Monte Carlo sample count. Monte Carlo checks
are repeated on a child stream with more samples and the measured
constant must be stable to 10%.

Test functions for ``S(M)`` are ``phi = tanh(M (t - t0))``, a
Gaussian step with slope ``M`` at ``t0`` and the ramp
``clip(M (t - t0), -1, 1)``. The shifts ``t0`` are quantiles of
``f`` together with critical values of a univariate ``f`` and
their neighbours at distance ``1/(2M)`` and ``1/M``.

Module contents
---------------

"""
import math
import numbers
import time
import logging
import warnings

import numpy as np

from LCS import inf, version
from LCS.errors import (
    ConfigurationError,
    DegeneracyError,
    EstimationError,
    RangeError,
    HeavyTailWarning,
    HypothesisWarning,
)
from LCS.named_tuples import Check, Estimate
from LCS.context import Context
from LCS import (
    constants,
    estimates,
    measure,
    metrics,
    polynomial,
    pushforward,
    sampler,
)

__all__ = (
    'InequalityReport',
    'check_holds',
    'describe',
    'check_malliavin',
    'check_shift_tv',
    'check_tv_fm',
    'check_lp_density',
    'check_lp_difference',
    'check_small_ball',
    'check_moment_growth',
    'check_poincare',
    'check_geometry',
    'check_directional_bound',
    'run_suite',
    'suite_name',
    'SUITES',
    'SUITE_ALIASES',
)

log = logging.getLogger(__name__)

#----------------------------------------------------------------------------
#: The default grid of Lipschitz bounds ``M``
DEFAULT_M_GRID = tuple( float(M) for M in np.logspace(1.5,4.0,8) )

#: Slack on a fitted exponent
QUADRATURE_TOL = 0.05
MONTECARLO_TOL = 0.08

#: Relative slack on a bound that uses a measured constant
QUADRATURE_SLACK = 0.01
MONTECARLO_SLACK = 0.10

#: Largest relative change of a constant when the sample is enlarged
STABILITY_RTOL = 0.10

#: Child index of the stream used for stability reruns
RERUN_CHILD = 1000

#: Standard deviations below this fraction of ``1 + |E f|`` are degenerate
DEGENERATE_SD = 1E-9

#: Standard deviations below this value are degenerate whatever the mean
DEGENERATE_SD_ABS = 1E-6

TEST_FUNCTIONS = ('tanh','gaussian','ramp')

_LEVELS = (0.001,0.01,0.05,0.25,0.5,0.75,0.95,0.99,0.999)

_ROOT_IMAG = 1E-9

#----------------------------------------------------------------------------
def check_holds(c):
    """Return ``True`` when the :obj:`~named_tuples.Check` ``c`` is satisfied"""
    lhs = c.lhs
    if lhs is None or (isinstance(lhs,float) and math.isnan(lhs)):
        return False
    if c.op == 'finite':
        return math.isfinite(lhs)
    rhs = c.rhs
    if rhs is None or math.isnan(rhs):
        return False
    if c.op == '<=':
        return lhs <= rhs
    elif c.op == '<':
        return lhs < rhs
    elif c.op == '>=':
        return lhs >= rhs
    else:
        raise ConfigurationError("unknown comparison {!r}".format(c.op))

def describe(c):
    """Return a one-line account of the :obj:`~named_tuples.Check` ``c``

    **Example**::

        >>> describe( Check('slope', 0.5, '<=', 0.55) )
        'slope: 0.5 <= 0.55'

    """
    if c.op == 'finite':
        return "{}: {!r} is finite".format(c.label,c.lhs)
    return "{}: {!r} {} {!r}".format(c.label,c.lhs,c.op,c.rhs)

def _plain(x):
    # numpy containers and scalars to JSON-friendly Python objects
    if isinstance(x,dict):
        return { str(k): _plain(v) for k,v in x.items() }
    if isinstance(x,(list,tuple)):
        return [ _plain(v) for v in x ]
    if isinstance(x,np.ndarray):
        return _plain(x.tolist())
    if isinstance(x,np.bool_):
        return bool(x)
    if isinstance(x,np.integer):
        return int(x)
    if isinstance(x,np.floating):
        return float(x)
    return x

#----------------------------------------------------------------------------
class InequalityReport(object):

    """
    The outcome of one inequality check

    :arg inequality: the check name, e.g. ``'malliavin'``
    :arg parameters: the inputs (polynomial, measure, degree, ...)
    :arg measured: the measured quantities
    :arg constant: the constant on the right-hand side, or ``None``
    :arg checks: a sequence of :obj:`~named_tuples.Check`
    :arg provenance: stream, budget, run time and version
    :arg notes: free-text remarks

    :attr:`passed` holds when every check holds.

    **Example**::

        >>> r = InequalityReport('demo',{},{},None,[Check('x', 1.0, '<=', 2.0)])
        >>> r.passed
        True
        >>> r.criterion
        'x: 1.0 <= 2.0'

    """

    def __init__(self,inequality,parameters,measured,constant,checks,provenance=None,notes=()):
        self.inequality = str(inequality)
        self.parameters = dict(parameters)
        self.measured = dict(measured)
        self.constant = constant
        self.checks = [ Check(*c) for c in checks ]
        self.provenance = dict(provenance) if provenance else {}
        self.notes = list(notes)

    def __repr__(self):
        return "InequalityReport({!r}, passed={!r})".format(self.inequality,self.passed)

    @property
    def passed(self):
        return all( check_holds(c) for c in self.checks )

    @property
    def criterion(self):
        return "; ".join( describe(c) for c in self.checks )

    def to_dict(self):
        """Return the report as plain Python objects"""
        return _plain( dict(
            inequality=self.inequality,
            parameters=self.parameters,
            measured=self.measured,
            constant=self.constant,
            checks=[ c._asdict() for c in self.checks ],
            passed=self.passed,
            criterion=self.criterion,
            provenance=self.provenance,
            notes=self.notes,
        ) )

    @classmethod
    def from_dict(cls,d):
        """Rebuild a report from :meth:`to_dict` output

        The stored ``passed`` flag is recomputed from the checks.

        """
        return cls(
            d['inequality'],
            d.get('parameters',{}),
            d.get('measured',{}),
            d.get('constant'),
            [ Check(c['label'],c['lhs'],c['op'],c.get('rhs')) for c in d.get('checks',[]) ],
            d.get('provenance'),
            d.get('notes',()),
        )

#----------------------------------------------------------------------------
def _is_quadrature(budget):
    if budget == 'quadrature':
        return True
    if isinstance(budget,bool) or not isinstance(budget,numbers.Integral) or budget < 2:
        raise ConfigurationError(
            "a budget is 'quadrature' or a sample count >= 2, got {!r}".format(budget)
        )
    return False

def _degree(d):
    if isinstance(d,bool) or not isinstance(d,numbers.Integral) or d < 1:
        raise RangeError("the degree must be an integer >= 1, got {!r}".format(d))
    return int(d)

def _real_roots(coef):
    coef = np.trim_zeros(np.asarray(coef,dtype=float),'f')
    if coef.size < 2:
        return []
    return [ float(r.real) for r in np.roots(coef) if abs(r.imag) < _ROOT_IMAG ]

def _grid(values,default,name):
    g = np.array(default if values is None else values,dtype=float).reshape(-1)
    if g.size == 0 or not np.all(np.isfinite(g)) or np.any(g < 0.0):
        raise ConfigurationError(
            "{} must hold finite nonnegative values, got {!r}".format(name,values)
        )
    return g

def _provenance(s,budget,start):
    return dict(
        stream=None if s is None else s.to_dict(),
        budget=budget,
        runtime=time.perf_counter() - start,
        version=version,
    )

def _measure_label(m):
    try:
        return m.to_spec()
    except ConfigurationError:
        return m.family

def _parameters(f,m,**extra):
    p = dict(
        poly=str(f),
        measure=_measure_label(m),
    )
    p.update(extra)
    return p

#----------------------------------------------------------------------------
class _Image(object):

    """
    The law of ``f`` under ``m``

    A Monte Carlo budget draws the sample once; ``'quadrature'``
    integrates against the one-dimensional density, splitting at
    the roots of ``f - c`` for every level ``c`` involved.

    """

    def __init__(self,f,m,budget,s=None,workers=1,X=None):
        if f.nvars > m.dim:
            raise ConfigurationError(
                "{} uses {} variables but the measure has dimension {}".format(
                    f, f.nvars, m.dim
                )
            )
        self.f = f
        self.m = m
        self.budget = budget
        self.s = s
        self.workers = workers
        self.quadrature = _is_quadrature(budget)
        self._sigma = None
        self._density = None

        if self.quadrature:
            if m.dim != 1:
                raise ConfigurationError(
                    "quadrature needs a one-dimensional measure, got dimension {}".format(m.dim)
                )
            self._coef = f.univariate_coefficients()
            lo,hi = m.chord(np.zeros(1),np.ones(1))
            self._range = (float(lo),float(hi))
            self._crit = [
                c for c in _real_roots(np.polyder(self._coef))
                    if self._range[0] < c < self._range[1]
            ]
            self.X = None
            self.values = None
        else:
            if s is None:
                raise ConfigurationError("a Monte Carlo budget needs a SeededStream")
            self.X = sampler.sample(m,int(budget),s,workers=workers) if X is None else X
            y = np.asarray(f(self.X),dtype=float)
            bad = ~np.isfinite(y)
            if np.any(bad):
                k = int(np.sum(bad))
                raise EstimationError(
                    "{} is not finite at {} of {} samples".format(f,k,y.size), k
                )
            self.values = y
            if f.nvars <= 1 and f.degree >= 2:
                lo,hi = float(y.min()), float(y.max())
                coef = f.univariate_coefficients()
                self._crit = [
                    c for c in _real_roots(np.polyder(coef))
                        if lo <= np.polyval(coef,c) <= hi
                ]
                self._coef = coef
            else:
                self._crit = []
                self._coef = None

    @property
    def count(self):
        return 0 if self.quadrature else self.values.size

    def _fx(self,t):
        return float(np.polyval(self._coef,t))

    def _points(self,levels):
        pts = list(self._crit)
        for c in levels:
            shifted = self._coef.copy()
            shifted[-1] -= c
            pts.extend( _real_roots(shifted) )
        return pts

    def expect(self,g,levels=()):
        """Return an :obj:`~named_tuples.Estimate` of ``E g(f)``

        ``g`` is vectorised; ``levels`` are values of ``f`` where
        ``g`` is not smooth.

        """
        if self.quadrature:
            fx = self._fx
            return sampler.quadrature_expectation(
                self.m, lambda t: float(g(np.float64(fx(t)))), self._points(levels)
            )
        e = estimates.batch_means( np.asarray(g(self.values),dtype=float) )
        return Estimate(e.value,e.u,e.count)

    def law(self):
        """The exact law of ``f`` as a :class:`~pushforward.Density1D`, or ``None``"""
        if self._density is None and self.quadrature:
            self._density = pushforward.oracle_for(self.f,self.m)
        return self._density if self.quadrature else None

    def probability(self,a,b):
        """Return ``P(a <= f <= b)``"""
        if not self.quadrature:
            y = self.values
            return float(np.mean( (y >= a) & (y <= b) ))
        rho = self.law()
        if rho is not None:
            return metrics.interval_mass(rho,a,b)
        ind = lambda y: np.where( (y >= a) & (y <= b), 1.0, 0.0 )
        return min(max(self.expect(ind,(a,b)).value,0.0),1.0)

    def sigma(self):
        """Return an :obj:`~named_tuples.Estimate` of the standard deviation of ``f``"""
        if self._sigma is not None:
            return self._sigma
        if self.quadrature:
            pm = polynomial.moments(self.f,self.m,'quadrature',q_list=())
            mean, var, var_u = pm.mean, pm.variance, pm.variance_u
        else:
            y = self.values
            mean = float(np.mean(y))
            v = estimates.batch_means( (y - mean)**2 )
            var, var_u = v.value, v.u
        sd = math.sqrt(max(var,0.0))
        if sd < DEGENERATE_SD_ABS or sd <= DEGENERATE_SD*(1.0 + abs(mean)):
            raise DegeneracyError(
                "{} is (nearly) constant under the measure: sd = {!r}".format(self.f,sd)
            )
        self._sigma = Estimate(sd,0.5*var_u/sd,self.count)
        return self._sigma

    def abs_mean(self):
        return self.expect(np.abs,(0.0,)).value

    def critical_values(self):
        """Values of a univariate ``f`` at its critical points"""
        return [ float(np.polyval(self._coef,c)) for c in self._crit ]

    def quantile(self,u):
        """Return the ``u``-quantiles of ``f``"""
        u = np.asarray(u,dtype=float)
        if not self.quadrature:
            return np.quantile(self.values,u)
        rho = self.law()
        if rho is not None:
            return np.asarray(rho.quantile(u))
        return np.array([ self._bisect(lambda t: self.probability(-inf,t),x) for x in u.reshape(-1) ]).reshape(u.shape)

    def _bisect(self,P,u):
        sd = self.sigma().value
        c = self.expect(lambda y: y).value
        lo, hi = c - sd, c + sd
        for _ in range(64):
            if P(lo) < u:
                break
            lo = c - 2.0*(c - lo)
        for _ in range(64):
            if P(hi) >= u:
                break
            hi = c + 2.0*(hi - c)
        for _ in range(200):
            mid = 0.5*(lo + hi)
            if P(mid) < u:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1E-10*(1.0 + abs(mid)):
                break
        return 0.5*(lo + hi)

    def levels(self):
        """Quantile levels used as shifts of the test functions"""
        t = list( np.atleast_1d(self.quantile(_LEVELS)) )
        if not self.quadrature:
            t.extend([ float(self.values.min()), float(self.values.max()) ])
        return sorted(set( float(x) for x in t ))

    def density(self):
        """Return the density of ``f``: exact in quadrature, a histogram otherwise"""
        if self.quadrature:
            rho = self.law()
            if rho is None:
                raise ConfigurationError(
                    "the law of {} under this measure is not known exactly; "
                    "use a sample budget".format(self.f)
                )
            return rho
        if self._density is None:
            self._density = pushforward.estimate_density(self.values)
        return self._density

    def empirical(self):
        """The law of ``f`` as a sample, or exactly in quadrature"""
        if self.quadrature:
            return self.density()
        return pushforward.EmpiricalSample1D(self.values)

    def shift_fit(self,alpha,h_grid=None):
        if self.quadrature:
            return metrics.besov_fit(self.density(),alpha,h_grid)
        return metrics.window_fit(self.empirical(),alpha,h_grid)

    def rerun(self,factor):
        return _Image(
            self.f, self.m, factor*int(self.budget),
            self.s.child(RERUN_CHILD), self.workers
        )

#----------------------------------------------------------------------------
def _phi_prime(family,M,z):
    if family == 'tanh':
        e = np.exp(-2.0*np.abs(M*z))
        return 4.0*M*e/(1.0 + e)**2
    elif family == 'gaussian':
        # phi = 2 Phi(c M z) - 1 with c = sqrt(pi/2)
        return M*np.exp(-0.25*math.pi*(M*z)**2)
    else:
        return np.where(np.abs(z) <= 1.0/M, M, 0.0)

def _malliavin_scan(img,M_grid):
    base = img.levels()
    crit = img.critical_values()
    S = np.zeros(M_grid.size)
    shift = [None]*M_grid.size
    family = [None]*M_grid.size
    for i,M in enumerate(M_grid):
        if M == 0.0:
            continue
        candidates = list(base) + [
            c + k/M for c in crit for k in (-1.0,-0.5,0.0,0.5,1.0)
        ]
        for t0 in candidates:
            levels = (t0 - 1.0/M,t0,t0 + 1.0/M)
            for fam in TEST_FUNCTIONS:
                e = img.expect(lambda y: _phi_prime(fam,M,y - t0),levels).value
                if e > S[i]:
                    S[i], shift[i], family[i] = e, t0, fam
    return S, shift, family

def _malliavin(img,d,M_grid):
    M = _grid(M_grid,DEFAULT_M_GRID,'M_grid')
    S,shift,family = _malliavin_scan(img,M)
    sigma = img.sigma()
    e = 1.0 - 1.0/d
    use = (M > 0.0) & (S > 0.0)
    if np.sum(use) < 3:
        raise EstimationError(
            "the fit of S(M) needs 3 positive values, got {}".format(int(np.sum(use)))
        )
    fit = estimates.line_fit(np.log(M[use]),np.log(S[use]))
    C_hat = float(np.max( sigma.value**(1.0/d)*S[use]/M[use]**e ))
    return dict(
        M=M, statistic=S, shift=shift, family=family,
        exponent=fit.slope, exponent_u=fit.u_slope,
        C_hat=C_hat, C_hat_u=C_hat*sigma.u/(d*sigma.value),
        sigma_f=sigma.value, sigma_f_u=sigma.u,
    )

def _tolerance(img):
    return QUADRATURE_TOL if img.quadrature else MONTECARLO_TOL

def _slack(img):
    return QUADRATURE_SLACK if img.quadrature else MONTECARLO_SLACK

def check_malliavin(f,m,d,M_grid=None,budget='quadrature',s=None,workers=1):
    """Check the growth of ``S(M)`` against ``M^(1-1/d)``

    :arg f: a :class:`~polynomial.Polynomial`
    :arg m: a :class:`~measure.LogConcaveMeasure`
    :arg d: the degree in the inequality
    :arg M_grid: Lipschitz bounds, by default 8 log-spaced values
        from ``10^1.5`` to ``10^4``
    :arg budget: ``'quadrature'`` or a sample count
    :arg s: a :class:`~sampler.SeededStream` for Monte Carlo
    :rtype: :class:`InequalityReport`

    The measured constant is
    ``C_hat = max_M sigma_f^(1/d) S(M) / M^(1-1/d)``. The check holds
    when the fitted exponent of ``S(M)`` is at most ``1 - 1/d``
    plus 0.05 (quadrature) or 0.08 (Monte Carlo) and, for Monte
    Carlo, ``C_hat`` changes by at most 10% with 4 times the samples.

    **Example**::

        >>> r = check_malliavin(parse('x1'),gaussian(dim=1),1,M_grid=[100.0,1000.0,10000.0])
        >>> round(r.measured['C_hat'],3)
        0.798

    """
    start = time.perf_counter()
    d = _degree(d)
    if d == 1:
        warnings.warn(
            "with d = 1 the bound only says that S(M) stays bounded",
            HypothesisWarning
        )
    img = _Image(f,m,budget,s,workers)
    r = _malliavin(img,d,M_grid)
    e = 1.0 - 1.0/d
    checks = [
        Check('fitted exponent of S(M)',r['exponent'],'<=',e + _tolerance(img)),
        Check('C_hat',r['C_hat'],'finite',None),
    ]
    if not img.quadrature:
        r4 = _malliavin(img.rerun(4),d,r['M'])
        r['C_hat_4x'] = r4['C_hat']
        checks.append(
            Check('relative change of C_hat with 4x samples',
                estimates.relative_change(r['C_hat'],r4['C_hat']),'<=',STABILITY_RTOL)
        )
    return InequalityReport(
        'malliavin',
        _parameters(f,m,degree=d,M_grid=r['M'],budget=budget),
        r, r['C_hat'], checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def check_shift_tv(f,m,d,h_grid=None,budget='quadrature',s=None,C_hat=None,workers=1):
    """Check ``Delta(h) = ||nu_h - nu||`` against ``h^(1/d)``

    :arg C_hat: a constant from :func:`check_malliavin`; when given,
        ``Delta(h) <= 2^(1-1/d) C_hat sigma_f^(-1/d) h^(1/d)`` is
        checked at every ``h``

    In quadrature the exact law of ``f`` is needed. A Monte Carlo
    budget uses the window estimator
    :func:`~metrics.window_modulus`, which does not depend on a bin
    width; the slope of a histogram fit is reported alongside.

    The check holds when the fitted slope is at least ``1/d`` less
    the exponent tolerance and
    ``sup sigma_f^(1/d) Delta(h) / h^(1/d)`` is finite, the supremum
    running over every ``h`` from the smallest shift upward.

    """
    start = time.perf_counter()
    d = _degree(d)
    alpha = 1.0/d
    img = _Image(f,m,budget,s,workers)
    sigma = img.sigma()
    fit = img.shift_fit(alpha,h_grid)
    ratio = sigma.value**alpha*fit.delta/fit.h**alpha
    sup = sigma.value**alpha*fit.seminorm

    measured = dict(
        h=fit.h, delta=fit.delta, slope=fit.slope, slope_u=fit.slope_u,
        residual=fit.residual, ratio=ratio, ratio_sup=sup, seminorm=fit.seminorm,
        sigma_f=sigma.value,
    )
    checks = [
        Check('fitted slope of Delta(h)',fit.slope,'>=',alpha - _tolerance(img)),
        Check('sup sigma_f^(1/d) Delta(h)/h^(1/d)',sup,'finite',None),
    ]
    if fit.slope > alpha + 0.15:
        warnings.warn(
            "the shift modulus decays like h^{:.3g}, faster than h^{:.3g}".format(fit.slope,alpha),
            HypothesisWarning
        )
    if C_hat is not None:
        bound = 2.0**(1.0 - alpha)*float(C_hat)*sigma.value**(-alpha)*fit.h**alpha
        worst = float(np.max(fit.delta/bound))
        measured['bound'] = bound
        checks.append( Check('max Delta(h)/bound',worst,'<=',1.0 + _slack(img)) )
    if not img.quadrature:
        try:
            hist = metrics.besov_fit(img.density(),alpha)
            measured['histogram_slope'] = hist.slope
        except EstimationError as exc:
            log.info("no histogram fit: %s",exc)
        img4 = img.rerun(4)
        fit4 = img4.shift_fit(alpha,fit.h)
        sup4 = img4.sigma().value**alpha*fit4.seminorm
        measured['ratio_sup_4x'] = sup4
        checks.append(
            Check('relative change of the sup ratio with 4x samples',
                estimates.relative_change(sup,sup4),'<=',STABILITY_RTOL)
        )
    return InequalityReport(
        'shift-tv',
        _parameters(f,m,degree=d,budget=budget,C_hat=C_hat),
        measured, C_hat, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def check_tv_fm(f,g,m,d,budget='quadrature',s=None,workers=1):
    """Check ``TV(nu, sigma) <= C FM(nu, sigma)^(alpha/(1+alpha))``

    ``nu`` and ``sigma`` are the laws of ``f`` and ``g``,
    ``alpha = 1/d`` and ``C = 2 + (C_nu + C_sigma) E|Z|^alpha``
    with the measured shift constants of the two laws. In Monte
    Carlo both polynomials are evaluated at the same draws.

    """
    start = time.perf_counter()
    d = _degree(d)
    alpha = 1.0/d
    img_f = _Image(f,m,budget,s,workers)
    img_g = _Image(g,m,budget,s,workers,X=img_f.X)
    tv = metrics.tv_distance(img_f.density(),img_g.density())
    fm = metrics.fm_certificate(img_f.empirical(),img_g.empirical())
    C_nu = img_f.shift_fit(alpha).seminorm
    C_sigma = img_g.shift_fit(alpha).seminorm
    C = constants.tv_fm_constant(C_nu,C_sigma,alpha)
    rhs = C*fm.value**(alpha/(1.0 + alpha))
    measured = dict(
        tv=tv, fm=fm.value, w1=fm.w1, fm_refinement_change=fm.refinement_change,
        C_nu=C_nu, C_sigma=C_sigma, rhs=rhs,
    )
    checks = [ Check('TV against C FM^(alpha/(1+alpha))',tv,'<=',rhs*(1.0 + _slack(img_f))) ]
    return InequalityReport(
        'tv-fm',
        _parameters(f,m,poly2=str(g),degree=d,budget=budget),
        measured, C, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def _p_range(p,d):
    if isinstance(p,bool) or not isinstance(p,numbers.Real):
        raise ConfigurationError("p must be a number, got {!r}".format(p))
    p = float(p)
    upper = inf if d == 1 else d/(d - 1.0)
    if not 1.0 < p < upper:
        raise RangeError(
            "p must satisfy 1 < p < {!r} for d = {}, got {!r}".format(upper,d,p)
        )
    return p

def check_lp_density(f,m,d,p,budget='quadrature',s=None,C_hat=None,M_grid=None,workers=1):
    """Check ``sigma_f^(1-1/p) ||rho||_p`` against the ``L^p`` constant

    ``1 < p < d/(d-1)``. When ``C_hat`` is not supplied it is
    measured as in :func:`check_malliavin`. The bound is
    :func:`~constants.lp_constant` at ``alpha = 1/d``. Spot checks
    of ``nu(A) <= C_hat sigma_f^(-1/d) |A|^(1/d)`` are made on
    intervals starting at the quartiles, the median and the critical
    values of ``f``.

    **Example**::

        >>> r = check_lp_density(parse('x1^2'),gaussian(dim=1),2,1.5,C_hat=1.5)
        >>> round(r.measured['lhs'],3)
        1.109

    """
    start = time.perf_counter()
    d = _degree(d)
    p = _p_range(p,d)
    alpha = 1.0/d
    img = _Image(f,m,budget,s,workers)
    sigma = img.sigma().value
    measured = {}
    if C_hat is None:
        r = _malliavin(img,d,M_grid)
        C_hat = r['C_hat']
        measured['C_hat'] = C_hat
    C_hat = float(C_hat)

    norm = metrics.lp_norm(img.density(),p)
    lhs = sigma**(1.0 - 1.0/p)*norm
    rhs = constants.lp_constant(alpha,p,C_hat)

    q1,q2,q3 = np.atleast_1d(img.quantile([0.25,0.5,0.75]))
    S = float(q3 - q1)
    starts = [float(q1),float(q2)] + img.critical_values()
    lengths = S*np.logspace(-4.0,0.0,5)
    worst = 0.0
    for a in starts:
        for L in lengths:
            bound = C_hat*sigma**(-alpha)*L**alpha
            worst = max(worst,img.probability(a,a + L)/bound)

    measured.update(
        norm=norm, lhs=lhs, rhs=rhs, sigma_f=sigma, interval_ratio=worst,
    )
    slack = _slack(img)
    checks = [
        Check('sigma_f^(1-1/p) ||rho||_p',lhs,'<=',rhs*(1.0 + slack)),
        Check('max nu(A)/(C_hat sigma_f^(-1/d) |A|^(1/d))',worst,'<=',1.0 + slack),
    ]
    return InequalityReport(
        'lp-density',
        _parameters(f,m,degree=d,p=p,budget=budget),
        measured, rhs, checks, _provenance(s,budget,start),
    )

def check_lp_difference(f,g,m,d,p,budget='quadrature',s=None,M_grid=None,workers=1):
    """Check ``||rho_f - rho_g||_p`` against the bound through ``TV``

    Both laws get their own measured constants
    ``C_hat sigma^(-1/d)``; see :func:`~constants.lp_difference_constant`.

    """
    start = time.perf_counter()
    d = _degree(d)
    p = _p_range(p,d)
    alpha = 1.0/d
    img_f = _Image(f,m,budget,s,workers)
    img_g = _Image(g,m,budget,s,workers,X=img_f.X)
    rho_f, rho_g = img_f.density(), img_g.density()
    lhs = metrics.lp_difference(rho_f,rho_g,p)
    tv = metrics.tv_distance(rho_f,rho_g)
    C_f = _malliavin(img_f,d,M_grid)['C_hat']
    C_g = _malliavin(img_g,d,M_grid)['C_hat']
    C_nu = C_f*img_f.sigma().value**(-alpha)
    C_sigma = C_g*img_g.sigma().value**(-alpha)
    rhs = constants.lp_difference_constant(alpha,p,tv,C_nu,C_sigma)
    measured = dict(lhs=lhs, rhs=rhs, tv=tv, C_hat_f=C_f, C_hat_g=C_g)
    checks = [ Check('||rho_f - rho_g||_p',lhs,'<=',rhs*(1.0 + _slack(img_f))) ]
    return InequalityReport(
        'lp-difference',
        _parameters(f,m,poly2=str(g),degree=d,p=p,budget=budget),
        measured, rhs, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def _small_ball(img,d,t_grid):
    E_abs = img.abs_mean()
    if t_grid is None:
        u = np.logspace(-3.0,math.log10(0.2),10)
        if img.quadrature:
            t = np.array([
                img._bisect(lambda x: img.probability(-abs(x),abs(x)) if x > 0.0 else 0.0,v)
                    for v in u
            ])
        else:
            t = np.quantile(np.abs(img.values),u)
    else:
        t = _grid(t_grid,(),'t_grid')
    t = np.unique(t[t > 0.0])
    P = np.array([ img.probability(-x,x) for x in t ])
    if not np.any(P > 0.0):
        raise EstimationError(
            "every |f| exceeds max(t_grid) = {!r}".format(float(t.max()) if t.size else 0.0)
        )
    use = (P > 0.0) & (P < 1.0)
    c1 = float(np.max( P[use]*E_abs**(1.0/d)/(d*t[use]**(1.0/d)) )) if np.any(use) else inf
    if np.sum(use) >= 3:
        fit = estimates.line_fit(np.log(t[use]),np.log(P[use]))
        slope, slope_u = fit.slope, fit.u_slope
    else:
        slope = slope_u = None
    return dict(t=t, probability=P, abs_mean=E_abs, c1=c1, slope=slope, slope_u=slope_u)

def check_small_ball(f,m,d,t_grid=None,budget='quadrature',s=None,workers=1):
    """Check ``P(|f| <= t) <= c d t^(1/d) (E|f|)^(-1/d)``

    The measured ``c1 = max P(|f| <= t) (E|f|)^(1/d) / (d t^(1/d))``
    is taken over ``t`` with ``0 < P < 1``. By default ``t`` runs
    over 10 log-spaced quantiles of ``|f|`` between levels 0.001
    and 0.2.

    **Example**::

        >>> r = check_small_ball(parse('x1'),uniform_box(half_widths=[1.0]),1,t_grid=[0.1,0.2,0.5])
        >>> round(r.measured['c1'],6)
        0.5

    """
    start = time.perf_counter()
    d = _degree(d)
    img = _Image(f,m,budget,s,workers)
    r = _small_ball(img,d,t_grid)
    checks = [ Check('c1',r['c1'],'finite',None) ]
    if r['slope'] is not None:
        checks.append( Check('fitted exponent of P(|f| <= t)',r['slope'],'>=',1.0/d - _tolerance(img)) )
    if not img.quadrature:
        r4 = _small_ball(img.rerun(4),d,r['t'])
        r['c1_4x'] = r4['c1']
        checks.append(
            Check('relative change of c1 with 4x samples',
                estimates.relative_change(r['c1'],r4['c1']),'<=',STABILITY_RTOL)
        )
    return InequalityReport(
        'small-ball',
        _parameters(f,m,degree=d,budget=budget),
        r, r['c1'], checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def _moment_ratios(norms,d):
    best = 0.0
    ratios = []
    qs = sorted( q for q,v in norms.items() if v is not None )
    for i,p in enumerate(qs):
        for q in qs[i+1:]:
            if norms[p].value > 0.0:
                r = (norms[q].value/norms[p].value)**(1.0/d)/(q*d)
                ratios.append((p,q,r))
                best = max(best,r)
    return best, ratios

def check_moment_growth(f,m,d,q_list=(0,1,2,4,8,16),budget='quadrature',s=None,workers=1):
    """Check that ``(||f||_q / ||f||_p)^(1/d) / (q d)`` stays bounded

    The measured constant is the largest ratio over pairs
    ``p < q`` from ``q_list``. A :class:`~errors.HeavyTailWarning`
    is issued when the relative standard error of the largest norm
    exceeds 20%.

    """
    start = time.perf_counter()
    d = _degree(d)
    pm = polynomial.moments(f,m,budget,s,q_list,workers)
    c,ratios = _moment_ratios(pm.norms,d)
    top = pm.norms.get(max(float(q) for q in q_list))
    if top is not None and top.value > 0.0 and top.u > 0.2*top.value:
        warnings.warn(
            "||f||_{} has relative standard error {:.2g}".format(
                max(q_list), top.u/top.value
            ),
            HeavyTailWarning
        )
    measured = dict(
        norms={ q: (None if v is None else v.value) for q,v in pm.norms.items() },
        norms_u={ q: (None if v is None else v.u) for q,v in pm.norms.items() },
        ratios=ratios, c=c, method=pm.method,
    )
    checks = [ Check('largest norm ratio',c,'finite',None) ]
    if not _is_quadrature(budget) and pm.method != 'exact':
        pm2 = polynomial.moments(f,m,2*int(budget),s.child(RERUN_CHILD),q_list,workers)
        c2,_ = _moment_ratios(pm2.norms,d)
        measured['c_2x'] = c2
        checks.append(
            Check('relative change with 2x samples',
                estimates.relative_change(c,c2),'<=',STABILITY_RTOL)
        )
    return InequalityReport(
        'moment-growth',
        _parameters(f,m,degree=d,q_list=list(q_list),budget=budget),
        measured, c, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def check_poincare(f,m,budget='quadrature',s=None,x0=None,workers=1):
    """Return the ratio ``Var f / (int |x - x0|^2 dmu int |grad f|^2 dmu)``

    ``x0`` defaults to the mean of ``m``. The ratio is 0 for a
    constant ``f``; the check holds when it is finite.

    **Example**::

        >>> r = check_poincare(parse('x1 + x2'),gaussian(dim=2))
        >>> round(r.measured['ratio'],12)
        0.5

    """
    start = time.perf_counter()
    quadrature = _is_quadrature(budget)
    n = m.dim
    if f.nvars > n:
        raise ConfigurationError(
            "{} uses {} variables but the measure has dimension {}".format(f,f.nvars,n)
        )
    pm = polynomial.moments(f,m,budget,s,q_list=(),workers=workers)
    mc = measure.mean_and_covariance(m,None if quadrature else int(budget),s,workers)
    x0 = mc.mean if x0 is None else np.asarray(x0,dtype=float)
    spread = float(np.trace(mc.cov) + np.sum((mc.mean - x0)**2))

    if f.degree <= 1:
        g = polynomial.gradient(f,np.zeros(n))
        energy = float(np.dot(g,g))
    elif quadrature:
        dcoef = np.polyder(f.univariate_coefficients())
        energy = sampler.quadrature_expectation(
            m, lambda t: float(np.polyval(dcoef,t))**2
        ).value
    else:
        X = sampler.sample(m,int(budget),s,workers=workers)
        G = polynomial.gradient(f,X)
        energy = estimates.batch_means( np.sum(G*G,axis=1) ).value

    ratio = 0.0 if energy == 0.0 else pm.variance/(spread*energy)
    measured = dict(
        variance=pm.variance, spread=spread, gradient_energy=energy, ratio=ratio,
    )
    checks = [ Check('Poincare ratio',ratio,'finite',None) ]
    return InequalityReport(
        'poincare',
        _parameters(f,m,budget=budget),
        measured, ratio, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
def check_geometry(m,tau_list=(0.5,1.0,2.0),directions=32,alphas=(0.5,1.0)):
    """Check level-set and Skorohod bounds for the isotropic version of ``m``

    For each ``tau``, with ``K`` the level set
    ``{rho >= exp(-tau) max rho}``, the checks are
    ``1 <= max rho c_n(tau) |K|`` and
    ``radius(K)^2 <= c_n(tau) (n+1)^2 exp(tau)``. The Skorohod norm
    is evaluated over a grid of directions and must be finite.
    Exponential envelopes ``c exp(-alpha |x|)`` are measured only.

    """
    start = time.perf_counter()
    n = m.dim
    if n > 3:
        raise ConfigurationError(
            "geometry checks support dimensions up to 3, got {}".format(n)
        )
    _,w = measure.isotropic_normalize(m)
    top = measure.max_density(w).value
    checks = []
    level_sets = {}
    for tau in tau_list:
        c = constants.c_n_tau(n,tau)
        K = measure.level_set_volume(w,tau)
        level_sets[tau] = dict(volume=K.volume, radius=K.radius, c_n_tau=c)
        checks.append( Check('1 against max rho c_n(tau)|K| at tau = {!r}'.format(tau),
            1.0,'<=',top*c*K.volume) )
        checks.append( Check('radius^2 at tau = {!r}'.format(tau),
            K.radius**2,'<=',c*(n + 1)**2*math.exp(tau)) )

    E = measure.direction_grid(n,directions)
    sk = np.array([ measure.skorohod_norm(w,e) for e in E ])
    checks.append( Check('max Skorohod norm',float(np.max(sk)),'finite',None) )
    envelopes = { a: measure.envelope_fit(w,a) for a in alphas }
    measured = dict(
        max_density=top, max_density_root=top**(1.0/n),
        level_sets=level_sets, skorohod=sk, skorohod_max=float(np.max(sk)),
        envelopes=envelopes,
    )
    return InequalityReport(
        'geometry',
        dict(measure=_measure_label(m),
            tau_list=list(tau_list),directions=directions),
        measured, float(np.max(sk)), checks, _provenance(None,'quadrature',start),
    )

#----------------------------------------------------------------------------
def check_directional_bound(f,m,d,e,budget='quadrature',s=None,c=1.0,M_grid=None,workers=1):
    """Check ``S(M)`` against the bound through ``||d_e f||_2``

    ``S(M) <= (c d I_d ||d_e f||_2^(-1/(d-1)) + c_2(d) ||D_e mu||) M^(1-1/d)``
    with ``I_d`` from :func:`~constants.c1_integral`, ``c_2(d)``
    from :func:`~constants.c2_d` and the Skorohod norm of ``m``
    along the unit vector ``e``. Needs ``d >= 2`` and a measure
    of dimension at most 3.

    """
    start = time.perf_counter()
    d = _degree(d)
    if d < 2:
        raise RangeError("the directional bound needs d >= 2, got {}".format(d))
    e = np.asarray(e,dtype=float).reshape(-1)
    if e.size != m.dim or not np.linalg.norm(e) > 0.0:
        raise ConfigurationError(
            "e must be a nonzero vector of dimension {}, got {!r}".format(m.dim,e)
        )
    e = e/np.linalg.norm(e)
    img = _Image(f,m,budget,s,workers)
    r = _malliavin(img,d,M_grid)

    De = polynomial.directional(f,e)
    if img.quadrature:
        dcoef = De.univariate_coefficients()
        energy = sampler.quadrature_expectation(
            m, lambda t: float(np.polyval(dcoef,t))**2
        ).value
    else:
        energy = float(np.mean( De(img.X)**2 ))
    if not energy > 0.0:
        raise DegeneracyError("{} does not vary along {!r}".format(f,list(e)))
    De_norm = math.sqrt(energy)
    sk = measure.skorohod_norm(m,e)

    A = c*d*constants.c1_integral(d)*De_norm**(-1.0/(d - 1))
    B = constants.c2_d(d)*sk
    M = r['M']
    bound = (A + B)*M**(1.0 - 1.0/d)
    use = M > 0.0
    worst = float(np.max(r['statistic'][use]/bound[use]))
    r.update( directional_norm=De_norm, skorohod=sk, bound=bound, ratio=worst )
    checks = [ Check('max S(M)/bound',worst,'<=',1.0) ]
    return InequalityReport(
        'directional-bound',
        _parameters(f,m,degree=d,e=e,c=c,budget=budget),
        r, A + B, checks, _provenance(s,budget,start),
    )

#----------------------------------------------------------------------------
SUITES = (
    'malliavin',
    'shift-tv',
    'tv-fm',
    'lp-density',
    'lp-difference',
    'small-ball',
    'moment-growth',
    'poincare',
    'geometry',
    'directional-bound',
    'canonical',
)

#: Short suite ids accepted in place of the names in :data:`SUITES`
SUITE_ALIASES = {
    'thm4.1': 'malliavin',
    'thm5.1': 'malliavin',
    'cor5.1': 'shift-tv',
    'lem2.1': 'shift-tv',
    'cor5.3': 'tv-fm',
    'lem2.2': 'tv-fm',
    'cor5.2': 'lp-density',
    'lem2.3': 'lp-density',
    'cor5.4': 'lp-difference',
    'rem2.2': 'lp-difference',
    'cw': 'small-ball',
    'thm1.3': 'small-ball',
    'thm1.2': 'moment-growth',
    'thm1.4': 'poincare',
    'thm1.1': 'geometry',
    'thm3.1': 'geometry',
}

def suite_name(suite_id):
    """Return the name in :data:`SUITES` of ``suite_id`` or of its alias

    **Example**::

        >>> suite_name('cor5.1')
        'shift-tv'

    """
    name = SUITE_ALIASES.get(suite_id,suite_id)
    if name not in SUITES:
        raise ConfigurationError(
            "unknown suite {!r}, expected one of {}".format(suite_id,", ".join(SUITES))
        )
    return name

def _cases(config):
    base = { k: v for k,v in config.items() if k != 'cases' }
    for case in config.get('cases') or [{}]:
        merged = dict(base)
        merged.update(case)
        yield merged

def _budget(case,m):
    b = case.get('budget')
    if b is None:
        b = case.get('samples')
    if b is None:
        b = 'quadrature' if m.dim == 1 else 100000
    return b

def _run_case(suite_id,case,s,workers):
    m = measure.from_spec( case.get('measure',{'family': 'gaussian', 'dim': 1}) )
    if suite_id == 'geometry':
        return [ check_geometry(m,case.get('tau_list',(0.5,1.0,2.0))) ]

    budget = _budget(case,m)
    s = None if budget == 'quadrature' else s
    f = polynomial.parse(case.get('poly','x1'))
    d = case.get('degree',f.degree)
    if suite_id == 'malliavin':
        return [ check_malliavin(f,m,d,case.get('M_grid'),budget,s,workers) ]
    elif suite_id == 'shift-tv':
        return [ check_shift_tv(f,m,d,case.get('h_grid'),budget,s,case.get('C_hat'),workers) ]
    elif suite_id == 'tv-fm':
        g = polynomial.parse(case['poly2'])
        return [ check_tv_fm(f,g,m,d,budget,s,workers) ]
    elif suite_id == 'lp-density':
        return [ check_lp_density(f,m,d,case['p'],budget,s,case.get('C_hat'),case.get('M_grid'),workers) ]
    elif suite_id == 'lp-difference':
        g = polynomial.parse(case['poly2'])
        return [ check_lp_difference(f,g,m,d,case['p'],budget,s,case.get('M_grid'),workers) ]
    elif suite_id == 'small-ball':
        return [ check_small_ball(f,m,d,case.get('t_grid'),budget,s,workers) ]
    elif suite_id == 'moment-growth':
        return [ check_moment_growth(f,m,d,case.get('q_list',(0,1,2,4,8,16)),budget,s,workers) ]
    elif suite_id == 'poincare':
        return [ check_poincare(f,m,budget,s,case.get('x0'),workers) ]
    elif suite_id == 'directional-bound':
        e = case.get('direction',[1.0] + [0.0]*(m.dim - 1))
        return [ check_directional_bound(f,m,d,e,budget,s,case.get('c',1.0),case.get('M_grid'),workers) ]
    else:
        out = []
        for k in range(1,5):
            f = polynomial.parse('x1^{}'.format(k))
            with warnings.catch_warnings():
                warnings.simplefilter('ignore',HypothesisWarning)
                r = check_malliavin(f,m,k,case.get('M_grid'),budget,s,workers)
                out.append(r)
                out.append( check_shift_tv(f,m,k,None,budget,s,r.constant,workers) )
            out.append( check_small_ball(f,m,k,None,budget,s,workers) )
        return out

def run_suite(suite_id,config=None,context=None,workers=1):
    """Run the checks of ``suite_id`` and return a list of reports

    :arg suite_id: one of :data:`SUITES`, or a key of :data:`SUITE_ALIASES`
    :arg config: a dictionary of case parameters; a ``'cases'``
        list holds per-case overrides of the top-level values
    :arg context: a :class:`~context.Context` issuing one stream per case

    Case keys: ``measure`` (a :func:`~measure.from_spec`
    dictionary), ``poly``, ``poly2``, ``degree``, ``budget`` or
    ``samples``, ``p``, ``M_grid``, ``h_grid``, ``t_grid``,
    ``q_list``, ``tau_list``, ``direction``, ``c``, ``C_hat`` and
    ``x0``. The ``'canonical'`` suite runs ``x1^k``, ``k = 1..4``,
    through the Malliavin, shift and small-ball checks, feeding each
    Malliavin constant to the shift check.

    """
    suite_id = suite_name(suite_id)
    config = {} if config is None else dict(config)
    context = Context(config.get('seed')) if context is None else context
    reports = []
    for case in _cases(config):
        s = context.next_stream()
        log.info("suite %s: case %r on stream %d",suite_id,case.get('poly'),s.index)
        reports.extend( _run_case(suite_id,case,s,workers) )
    return reports

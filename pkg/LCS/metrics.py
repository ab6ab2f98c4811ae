"""
Distances and smoothness of one-dimensional laws
------------------------------------------------
Total variation is normalised so that mutually singular laws are at
distance 2.

    *   :func:`tv_distance` ``int |rho1 - rho2|``.
    *   :func:`fm_distance` the Fortet-Mourier distance, the supremum
        of ``int phi d(nu1 - nu2)`` over ``|phi| <= 1``, ``|phi'| <= 1``,
        solved as a linear program over piecewise-linear ``phi``
        (:func:`fm_certificate` also returns the optimal ``phi``).
    *   :func:`w1_distance` ``int |F1 - F2|``.
    *   :func:`shift_modulus` ``Delta(h) = int |rho(t+h) - rho(t)| dt``.
    *   :func:`besov_fit` fits ``Delta(h)`` to a power of ``h``.
    *   :func:`lp_norm` and :func:`lp_difference` ``L^p`` norms.
    *   :func:`interval_mass` the mass of an interval.

Two oracles are compared by adaptive quadrature of their exact
densities; otherwise densities are resampled onto a common grid.
A grid segment contributes only for the densities whose range
contains its midpoint, so densities with jumps at their ends are
not smeared.

**Example**::

    >>> round( tv_distance(analytic_density('gaussian'),
    ...     analytic_density('gaussian',mean=1.0)), 4)
    0.7658

Module contents
---------------

"""
import math
import numbers
import logging
import warnings

import numpy as np
from scipy import optimize
from scipy import sparse

from LCS import inf, FM_MAX_POINTS
from LCS.errors import (
    ConfigurationError,
    DegeneracyError,
    EstimationError,
    RangeError,
    GridWarning,
    DivergenceWarning,
)
from LCS.named_tuples import BesovFit, FortetMourier
from LCS.pushforward import Density1D, EmpiricalSample1D
from LCS.function import golden_section_max, quad_singular, abs_power_segments
from LCS import estimates

__all__ = (
    'common_grid',
    'tv_distance',
    'fm_certificate',
    'fm_distance',
    'w1_distance',
    'shift_modulus',
    'besov_fit',
    'lp_norm',
    'lp_difference',
    'interval_mass',
    'window_modulus',
    'window_fit',
)

log = logging.getLogger(__name__)

#: The largest common grid for resampled densities
MAX_GRID = 2**20 + 1

#: Nodes of the grid on which ``int |F1 - F2|`` is evaluated
W1_NODES = 2**16 + 1

#: Refinement change of an FM value that triggers a GridWarning
FM_REFINEMENT_TOL = 1E-3

MIN_FIT_POINTS = 6

#: Log-spaced shifts per pass of the seminorm search
SUP_POINTS = 25

#----------------------------------------------------------------------------
def _seminorm(ratio,lo,hi,alpha):
    # sup of ratio(h) = Delta(h)/h^alpha over h >= lo; since Delta <= 2
    # no h with 2/h^alpha below the best value found can do better
    best, a, b = -inf, lo, hi
    for _ in range(40):
        grid = np.logspace(math.log10(lo),math.log10(hi),SUP_POINTS)
        r = np.array([ ratio(t) for t in grid ])
        i = int(np.argmax(r))
        if r[i] > best:
            best = float(r[i])
            a = math.log(grid[max(i-1,0)])
            b = math.log(grid[min(i+1,grid.size-1)])
        if 2.0/hi**alpha <= best:
            break
        lo, hi = hi, 16.0*hi
    if b > a:
        _,r = golden_section_max(lambda u: ratio(math.exp(u)),a,b,tol=1E-3)
        best = max(best,float(r))
    return best

#----------------------------------------------------------------------------
def _check_density(rho):
    if not isinstance(rho,Density1D):
        raise ConfigurationError("expected a Density1D, got {!r}".format(rho))

def common_grid(*densities):
    """Return ``(nodes, values, inside)`` on the union range at the finest step

    ``values[k]`` holds the node values of density ``k`` and
    ``inside[k]`` flags the segments whose midpoints lie in its range.

    """
    for rho in densities:
        _check_density(rho)
    left = min( rho.left for rho in densities )
    right = max( rho.right for rho in densities )
    step = min( rho.step for rho in densities )
    count = int(math.ceil( (right - left)/step - 1E-9 )) + 1
    if count > MAX_GRID:
        count = MAX_GRID
    nodes = np.linspace(left,right,count)
    mid = 0.5*(nodes[:-1] + nodes[1:])
    values = []
    inside = []
    for rho in densities:
        values.append( np.interp(nodes,rho.nodes,rho.values,left=0.0,right=0.0) )
        inside.append( (mid >= rho.left) & (mid <= rho.right) )
    return nodes, values, inside

def _segment_ends(v,inside):
    return np.where(inside,v[:-1],0.0), np.where(inside,v[1:],0.0)

def _oracle_breaks(*laws):
    points = set()
    for law in laws:
        for t in law.support + (law.mode,):
            if math.isfinite(t):
                points.add(t)
        for s,_ in law.singularities:
            points.add(s)
    lo = min( law.support[0] for law in laws )
    hi = max( law.support[1] for law in laws )
    points = sorted( t for t in points if lo <= t <= hi )
    if not points:
        points = [0.0]
    edges = [lo] + [ t for t in points if lo < t < hi ] + [hi]
    singular = set( s for law in laws for s,_ in law.singularities )
    return edges, singular

def _oracle_integral(fn,*laws):
    """Integrate ``fn`` over the union of the oracle supports"""
    edges, singular = _oracle_breaks(*laws)
    total = 0.0
    for a,b in zip(edges[:-1],edges[1:]):
        v,_ = quad_singular(
            fn, a, b, left_singular=(a in singular), right_singular=(b in singular),
            epsrel=1E-11, epsabs=1E-13
        )
        total += v
    return total

#----------------------------------------------------------------------------
def tv_distance(rho1,rho2):
    """Return ``int |rho1 - rho2|``, between 0 and 2

    **Example**::

        >>> tv_distance(analytic_density('uniform',a=0,b=1),
        ...     analytic_density('uniform',a=2,b=3))
        2.0

    """
    _check_density(rho1)
    _check_density(rho2)
    if rho1.is_oracle and rho2.is_oracle:
        l1, l2 = rho1.law, rho2.law
        value = _oracle_integral(lambda t: abs(l1.pdf(t) - l2.pdf(t)), l1, l2)
    else:
        value = lp_difference(rho1,rho2,1.0)
    return min(max(value,0.0),2.0)

#----------------------------------------------------------------------------
def _range_of(nu):
    if isinstance(nu,EmpiricalSample1D):
        return float(nu.values[0]), float(nu.values[-1])
    if isinstance(nu,Density1D):
        if nu.is_oracle:
            return nu.law.span
        return nu.left, nu.right
    raise ConfigurationError(
        "expected a Density1D or EmpiricalSample1D, got {!r}".format(nu)
    )

def _node_weights(nu,nodes):
    """Weights ``w`` with ``int phi d nu = sum w phi`` for ``phi`` linear between nodes"""
    step = nodes[1] - nodes[0]
    if isinstance(nu,EmpiricalSample1D):
        # cloud-in-cell
        s = np.clip( (nu.values - nodes[0])/step, 0.0, nodes.size - 1.0 )
        i = np.minimum(np.floor(s).astype(int),nodes.size - 2)
        frac = s - i
        w = np.bincount(i,weights=1.0 - frac,minlength=nodes.size)
        w += np.bincount(i + 1,weights=frac,minlength=nodes.size)
        return w/nu.count
    F = np.asarray(nu.cdf(nodes),dtype=float)
    Fbar = np.concatenate([ [0.0], 0.5*(F[:-1] + F[1:]), [1.0] ])
    return np.diff(Fbar)

def _fm_solve(w,nodes):
    n = nodes.size
    step = nodes[1] - nodes[0]
    D = sparse.diags([-np.ones(n - 1),np.ones(n - 1)],[0,1],shape=(n - 1,n),format='csr')
    A = sparse.vstack([D,-D],format='csr')
    b = np.full(2*(n - 1),step)
    res = optimize.linprog(
        -w, A_ub=A, b_ub=b, bounds=(-1.0,1.0), method='highs'
    )
    if res.status != 0:
        raise EstimationError(
            "the Fortet-Mourier linear program failed: {}".format(res.message)
        )
    phi = np.clip(res.x,-1.0,1.0)
    return phi, float(np.dot(phi,w))

def _fm_grid(nu1,nu2,count=None):
    a1,b1 = _range_of(nu1)
    a2,b2 = _range_of(nu2)
    left, right = min(a1,a2), max(b1,b2)
    if not right > left:
        raise DegeneracyError("both laws are concentrated at {!r}".format(left))
    if count is None:
        steps = [ nu.step for nu in (nu1,nu2) if isinstance(nu,Density1D) ]
        fine = int(math.ceil( (right - left)/min(steps) )) + 1 if steps else FM_MAX_POINTS
        count = min(fine,FM_MAX_POINTS)
    return np.linspace(left,right,max(count,3))

def fm_certificate(nu1,nu2):
    """Return a :obj:`~named_tuples.FortetMourier` with the optimal test function

    :arg nu1: a :class:`~pushforward.Density1D` or :class:`~pushforward.EmpiricalSample1D`
    :arg nu2: a :class:`~pushforward.Density1D` or :class:`~pushforward.EmpiricalSample1D`

    The test function is piecewise linear on at most ``FM_MAX_POINTS``
    nodes spanning both laws. A solve on half as many nodes gives
    ``refinement_change``; a :class:`~errors.GridWarning` is issued
    when it exceeds ``1e-3``.

    **Example**::

        >>> round( fm_distance(analytic_density('uniform',a=0,b=1),
        ...     analytic_density('uniform',a=2,b=3)), 4)
        1.75

    """
    nodes = _fm_grid(nu1,nu2)
    w = _node_weights(nu1,nodes) - _node_weights(nu2,nodes)
    phi, objective = _fm_solve(w,nodes)
    log.debug("Fortet-Mourier program on %d nodes: %r",nodes.size,objective)

    coarse = _fm_grid(nu1,nu2,(nodes.size + 1)//2)
    wc = _node_weights(nu1,coarse) - _node_weights(nu2,coarse)
    _, coarse_objective = _fm_solve(wc,coarse)
    change = abs(objective - coarse_objective)
    if change > FM_REFINEMENT_TOL:
        warnings.warn(
            "the Fortet-Mourier value changed by {:.3g} on grid refinement".format(change),
            GridWarning
        )

    value = 0.0 + max(objective,0.0)
    return FortetMourier(value,nodes,phi,objective,w1_distance(nu1,nu2),change)

def fm_distance(nu1,nu2):
    """Return the Fortet-Mourier distance between two laws (see :func:`fm_certificate`)"""
    return fm_certificate(nu1,nu2).value

def w1_distance(nu1,nu2):
    """Return ``int |F1 - F2|``"""
    if isinstance(nu1,EmpiricalSample1D) and isinstance(nu2,EmpiricalSample1D):
        t = np.concatenate([nu1.values,nu2.values])
        t.sort()
        gaps = np.diff(t)
        F = nu1.cdf(t[:-1]) - nu2.cdf(t[:-1])
        return float( np.sum(np.abs(F)*gaps) )
    a1,b1 = _range_of(nu1)
    a2,b2 = _range_of(nu2)
    nodes = np.linspace(min(a1,a2),max(b1,b2),W1_NODES)
    D = np.abs( np.asarray(nu1.cdf(nodes)) - np.asarray(nu2.cdf(nodes)) )
    return float( np.sum(0.5*(D[:-1] + D[1:]))*(nodes[1] - nodes[0]) )

#----------------------------------------------------------------------------
def _shift_grid(rho,k):
    if k == 0:
        return 0.0
    v = rho.values
    z = np.zeros(k)
    a0 = np.concatenate([z,v[:-1]])
    a1 = np.concatenate([z,v[1:]])
    b0 = np.concatenate([v[:-1],z])
    b1 = np.concatenate([v[1:],z])
    return float( np.sum(abs_power_segments(b0 - a0,b1 - a1,rho.step,1.0)) )

def _shift_oracle(law,h):
    # a unimodal density crosses its translate once, so
    # Delta(h) = 2 max_t (F(t+h) - F(t)) with the maximiser in [mode-h, mode]
    if h == 0.0:
        return 0.0
    fn = lambda t: law.cdf(t + h) - law.cdf(t)
    _,fmax = golden_section_max(fn,law.mode - h,law.mode,tol=max(1E-9*h,1E-12*(abs(law.mode) + h)))
    return min(2.0*fmax,2.0)

def _snap(rho,h):
    k = int(round(abs(h)/rho.step))
    return k, abs(k*rho.step - abs(h)) > 1E-9*rho.step

def shift_modulus(rho,h):
    """Return ``Delta(h) = int |rho(t+h) - rho(t)| dt``

    ``rho`` is zero outside its range. On a grid, ``h`` is snapped
    to a multiple of the step with a :class:`~errors.GridWarning`
    when it moves. For an oracle the value is exact at ``h``.

    **Example**::

        >>> round(shift_modulus(analytic_density('uniform'),0.1),12)
        0.2

    """
    _check_density(rho)
    h = float(h)
    if not math.isfinite(h):
        raise ConfigurationError("the shift must be finite, got {!r}".format(h))
    if rho.is_oracle:
        return _shift_oracle(rho.law,abs(h))
    k,moved = _snap(rho,h)
    if moved:
        warnings.warn(
            "shift {!r} snapped to {!r}".format(h,k*rho.step), GridWarning
        )
    return _shift_grid(rho,k)

def _default_shifts(rho):
    if rho.is_oracle:
        q1,q3 = rho.quantile([0.25,0.75])
        S = float(q3 - q1)
        return np.logspace(math.log10(1E-5*S),math.log10(1E-2*S),10)
    W = rho.right - rho.left
    top = min(0.25*W,32.0*rho.step)
    return np.logspace(math.log10(rho.step),math.log10(max(top,rho.step)),10)

def besov_fit(rho,alpha,h_grid=None):
    """Return a :obj:`~named_tuples.BesovFit` of ``Delta(h)`` against ``h``

    :arg rho: a :class:`~pushforward.Density1D`
    :arg alpha: the exponent of the seminorm, ``0 < alpha <= 1``
    :arg h_grid: positive shifts; by default 10 log-spaced values,
        in ``[1e-5 S, 1e-2 S]`` for an oracle (``S`` the interquartile
        range) or between one step and ``min(W/4, 32 step)`` on a grid

    On a grid the shifts are snapped to distinct multiples of the step,
    and a user grid must lie between the step and ``W/4``.
    The slope is fitted on the shifts, while the seminorm is the
    supremum of ``Delta(h)/h^alpha`` over all ``h`` from the smallest
    shift upward.
    Fewer than 6 usable shifts raise :class:`~errors.EstimationError`.

    **Example**::

        >>> fit = besov_fit(analytic_density('chi2_1'),0.5)
        >>> abs(fit.slope - 0.5) < 0.05
        True

    """
    _check_density(rho)
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise RangeError("alpha must lie in (0, 1], got {!r}".format(alpha))
    h = _default_shifts(rho) if h_grid is None else np.abs(np.asarray(h_grid,dtype=float))
    if h_grid is not None and not rho.is_oracle:
        top = 0.25*(rho.right - rho.left)
        h = h[h > 0.0]
        if np.any( h < (1.0 - 1E-9)*rho.step ) or np.any( h > (1.0 + 1E-9)*top ):
            raise RangeError(
                "shifts must lie between the grid step {!r} and a quarter "
                "of the range {!r}".format(rho.step,top)
            )

    if rho.is_oracle:
        h = np.unique(h[h > 0.0])
        delta = np.array([ _shift_oracle(rho.law,t) for t in h ])
    else:
        ks = np.unique( np.round(h/rho.step).astype(int) )
        ks = ks[ks >= 1]
        if h_grid is not None and np.any( np.abs(h - np.round(h/rho.step)*rho.step) > 1E-9*rho.step ):
            warnings.warn("shifts snapped to multiples of the grid step",GridWarning)
        h = ks*rho.step
        delta = np.array([ _shift_grid(rho,int(k)) for k in ks ])

    usable = (delta > 0.0) & np.isfinite(delta)
    h, delta = h[usable], delta[usable]
    if h.size < MIN_FIT_POINTS:
        raise EstimationError(
            "a Besov fit needs {} usable shifts, got {}".format(MIN_FIT_POINTS,h.size)
        )
    fit = estimates.line_fit(np.log(h),np.log(delta))

    if rho.is_oracle:
        law = rho.law
        q1,q3 = rho.quantile([0.25,0.75])
        seminorm = _seminorm(
            lambda t: _shift_oracle(law,t)/t**alpha, h[0], max(4.0*float(q3 - q1),h[-1]), alpha
        )
    else:
        step = rho.step
        K = rho.values.size
        def ratio(t):
            k = min(max(int(round(t/step)),1),K)
            return _shift_grid(rho,k)/(k*step)**alpha
        seminorm = _seminorm(ratio,h[0],max(K*step,h[-1]),alpha)
    seminorm = max(seminorm,float(np.max(delta/h**alpha)))

    return BesovFit(
        seminorm, fit.slope, fit.u_slope, math.sqrt(fit.ssr/fit.N), alpha, h, delta
    )

#----------------------------------------------------------------------------
def _check_p(p):
    if isinstance(p,bool) or not isinstance(p,numbers.Real):
        raise ConfigurationError("p must be a number, got {!r}".format(p))
    p = float(p)
    if not (1.0 <= p < inf):
        raise RangeError("p must satisfy 1 <= p < inf, got {!r}".format(p))
    return p

def _divergent(laws,p):
    for law in laws:
        for s,order in law.singularities:
            if p*order >= 1.0:
                warnings.warn(
                    "the L^{} norm diverges: singularity of order {} at {}".format(p,order,s),
                    DivergenceWarning
                )
                return True
    return False

def lp_norm(rho,p):
    """Return ``(int rho^p)^(1/p)``

    Oracles with an integrable singularity of order ``beta`` return
    ``inf`` with a :class:`~errors.DivergenceWarning` when ``p*beta >= 1``.

    **Example**::

        >>> round(lp_norm(analytic_density('gaussian'),2),4)
        0.5311

    """
    _check_density(rho)
    p = _check_p(p)
    if rho.is_oracle:
        law = rho.law
        if _divergent([law],p):
            return inf
        total = _oracle_integral(lambda t: law.pdf(t)**p, law)
    else:
        v = rho.values
        total = float(np.sum(abs_power_segments(v[:-1],v[1:],rho.step,p)))
    return total**(1.0/p)

def lp_difference(rho1,rho2,p):
    """Return ``(int |rho1 - rho2|^p)^(1/p)``"""
    _check_density(rho1)
    _check_density(rho2)
    p = _check_p(p)
    if rho1.is_oracle and rho2.is_oracle:
        l1, l2 = rho1.law, rho2.law
        if _divergent([l1,l2],p):
            return inf
        total = _oracle_integral(lambda t: abs(l1.pdf(t) - l2.pdf(t))**p, l1, l2)
    else:
        nodes, (v1,v2), (in1,in2) = common_grid(rho1,rho2)
        a0,a1 = _segment_ends(v1,in1)
        b0,b1 = _segment_ends(v2,in2)
        total = float(np.sum(abs_power_segments(a0 - b0,a1 - b1,nodes[1] - nodes[0],p)))
    return total**(1.0/p)

def interval_mass(rho,a,b):
    """Return the mass of ``[a, b]``"""
    if b < a:
        a,b = b,a
    return max(float(rho.cdf(b)) - float(rho.cdf(a)),0.0)

#----------------------------------------------------------------------------
def window_modulus(nu,h):
    """Return ``2 max_t nu([t, t+h])`` for an empirical sample

    This equals ``Delta(h)`` when the underlying density is unimodal
    and is a lower bound for it otherwise. No histogram is formed.

    **Example**::

        >>> window_modulus(EmpiricalSample1D([0.0, 0.1, 0.2, 5.0]),0.25)
        1.5

    """
    if not isinstance(nu,EmpiricalSample1D):
        raise ConfigurationError(
            "expected an EmpiricalSample1D, got {!r}".format(nu)
        )
    h = abs(float(h))
    if not math.isfinite(h):
        raise ConfigurationError("the window must be finite, got {!r}".format(h))
    v = nu.values
    k = np.searchsorted(v,v + h,side='right') - np.arange(v.size)
    return min(2.0*float(np.max(k))/v.size,2.0)

def window_fit(nu,alpha,h_grid=None):
    """Return a :obj:`~named_tuples.BesovFit` of :func:`window_modulus` against ``h``

    By default 10 log-spaced windows run from
    ``min(2000/N, 1e-2)`` to ``0.1`` interquartile ranges, so that
    the smallest window still holds a few thousand points.
    As in :func:`besov_fit` the seminorm is a supremum over all windows
    from the smallest upward.

    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise RangeError("alpha must lie in (0, 1], got {!r}".format(alpha))
    v = nu.values
    if h_grid is None:
        q1,q3 = np.quantile(v,[0.25,0.75])
        S = float(q3 - q1)
        if not S > 0.0:
            raise DegeneracyError("the sample has zero interquartile range")
        lo = min(2000.0/v.size,1E-2)*S
        h = np.logspace(math.log10(lo),math.log10(0.1*S),10)
    else:
        h = np.abs(np.asarray(h_grid,dtype=float))
    h = np.unique(h[h > 0.0])
    delta = np.array([ window_modulus(nu,t) for t in h ])
    usable = delta > 0.0
    h, delta = h[usable], delta[usable]
    if h.size < MIN_FIT_POINTS:
        raise EstimationError(
            "a Besov fit needs {} usable windows, got {}".format(MIN_FIT_POINTS,h.size)
        )
    fit = estimates.line_fit(np.log(h),np.log(delta))
    q1,q3 = np.quantile(v,[0.25,0.75])
    seminorm = _seminorm(
        lambda t: window_modulus(nu,t)/t**alpha, h[0], max(4.0*float(q3 - q1),h[-1]), alpha
    )
    seminorm = max(seminorm,float(np.max(delta/h**alpha)))
    return BesovFit(
        seminorm, fit.slope, fit.u_slope, math.sqrt(fit.ssr/fit.N), alpha, h, delta
    )

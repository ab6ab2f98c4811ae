"""
Utility functions
-----------------
Line searches that exploit unimodality (the restriction of a
log-concave density to a line is unimodal):

    *   :func:`golden_section_max`
    *   :func:`golden_section_max_many`
    *   :func:`bracket_maximum`
    *   :func:`line_maximum`

Quadrature helpers:

    *   :func:`quad_singular` integrates a function with integrable
        singularities at the ends of an interval.
    *   :func:`abs_power_segments` integrates ``|l(t)|^p`` exactly
        for linear ``l`` on each segment of a grid.

Module contents
---------------

"""
import math

import numpy as np
from scipy import integrate

from LCS import inf, LINE_SEARCH_TOL
from LCS.errors import ConvergenceError

__all__ = (
    'golden_section_max',
    'golden_section_max_many',
    'bracket_maximum',
    'line_maximum',
    'quad_singular',
    'abs_power_segments',
)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

#---------------------------------------------------------------------------
def golden_section_max(fn,a,b,tol=LINE_SEARCH_TOL,anchor=None,maxiter=1000):
    """Return ``(t, fn(t))`` maximising a unimodal function on ``[a, b]``

    :arg fn: a function of one real variable, possibly ``-inf``
    :arg a: left end of the bracket
    :arg b: right end of the bracket
    :arg tol: the search stops when the bracket is narrower than ``tol``
    :arg anchor: a point where ``fn`` is known to be finite

    When both interior probes return ``-inf`` the bracket
    is shrunk towards ``anchor``.

    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ConvergenceError(
            "golden-section search needs a finite bracket, got [{!r}, {!r}]".format(a,b)
        )
    if anchor is None:
        anchor = 0.5*(a + b)

    c = b - _INVPHI*(b - a)
    d = a + _INVPHI*(b - a)
    fc = fn(c)
    fd = fn(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc == -inf and fd == -inf:
            if anchor <= c:
                b, d, fd = d, c, fc
                c = b - _INVPHI*(b - a)
                fc = fn(c)
            elif anchor >= d:
                a, c, fc = c, d, fd
                d = a + _INVPHI*(b - a)
                fd = fn(d)
            else:
                a, b = c, d
                c = b - _INVPHI*(b - a)
                d = a + _INVPHI*(b - a)
                fc = fn(c)
                fd = fn(d)
        elif fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI*(b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI*(b - a)
            fd = fn(d)
    else:
        raise ConvergenceError(
            "golden-section search did not converge in {} iterations".format(maxiter)
        )

    if fc >= fd:
        return c, fc
    else:
        return d, fd

#---------------------------------------------------------------------------
def golden_section_max_many(fn,a,b,tol=LINE_SEARCH_TOL):
    """Return arrays ``(t, fn(t))`` maximising many unimodal functions at once

    :arg fn: maps an array of abscissae, one per problem, to an array of values
    :arg a: left ends of the brackets
    :arg b: right ends of the brackets

    All brackets are refined for the same number of iterations,
    enough for the widest to shrink below ``tol``.

    """
    a = np.array(a,dtype=float)
    b = np.array(b,dtype=float)
    width = float(np.max(b - a)) if a.size else 0.0
    if width <= tol:
        t = 0.5*(a + b)
        return t, fn(t)
    iterations = int(math.ceil( math.log(tol/width)/math.log(_INVPHI) ))

    c = b - _INVPHI*(b - a)
    d = a + _INVPHI*(b - a)
    fc = fn(c)
    fd = fn(d)
    for _ in range(iterations):
        left = fc >= fd
        # keep [a, d] where left, else [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = np.where(left, b - _INVPHI*(b - a), d)
        d_new = np.where(left, c, a + _INVPHI*(b - a))
        fresh = np.where(left, c_new, d_new)
        f_fresh = fn(fresh)
        fc, fd = np.where(left, f_fresh, fd), np.where(left, fc, f_fresh)
        c, d = c_new, d_new

    left = fc >= fd
    return np.where(left, c, d), np.where(left, fc, fd)

#---------------------------------------------------------------------------
def bracket_maximum(fn,t0=0.0,step=1.0,lo=-inf,hi=inf,max_doublings=80):
    """Return an interval ``(a, b)`` within ``[lo, hi]`` containing the maximum

    ``fn`` must be unimodal and finite at ``t0``. The step
    is doubled until ``fn`` decreases on either side of ``t0``.

    """
    f0 = fn(t0)
    if not math.isfinite(f0):
        raise ConvergenceError(
            "bracket search started where the function is not finite (t0={!r})".format(t0)
        )

    def walk(sign,limit):
        prev, fprev = t0, f0
        s = step
        for _ in range(max_doublings):
            t = prev + sign*s
            if (sign > 0 and t >= limit) or (sign < 0 and t <= limit):
                return limit
            ft = fn(t)
            if ft < fprev:
                return t
            prev, fprev = t, ft
            s *= 2.0
        raise ConvergenceError(
            "could not bracket a maximum: the function keeps increasing"
        )

    return walk(-1.0,lo), walk(1.0,hi)

#---------------------------------------------------------------------------
def line_maximum(fn,lo=-inf,hi=inf,t0=0.0,step=1.0,tol=LINE_SEARCH_TOL):
    """Return ``(t, fn(t))`` maximising a unimodal function on ``[lo, hi]``

    ``fn(t0)`` must be finite. A bracket is grown from ``t0`` and
    refined by golden-section search.

    """
    a,b = bracket_maximum(fn,t0,step,lo,hi)
    t,ft = golden_section_max(fn,a,b,tol=tol,anchor=t0)
    f0 = fn(t0)
    if f0 > ft:
        return t0, f0
    return t, ft

#---------------------------------------------------------------------------
def quad_singular(fn,a,b,left_singular=False,right_singular=False,
                  epsrel=1E-10,epsabs=0.0,limit=200):
    """Return ``(value, error)`` for the integral of ``fn`` over ``[a, b]``

    Ends flagged as singular (and finite) are treated with
    the substitution ``t = a + u**2`` (``t = b - u**2``),
    which removes an inverse square-root singularity.

    """
    if not b > a:
        return 0.0, 0.0

    opts = dict(epsrel=epsrel,epsabs=epsabs,limit=limit)
    left_singular = left_singular and math.isfinite(a)
    right_singular = right_singular and math.isfinite(b)

    if math.isfinite(a) and math.isfinite(b):
        m = 0.5*(a + b)
    elif math.isfinite(a):
        m = a + 1.0
    elif math.isfinite(b):
        m = b - 1.0
    else:
        m = 0.0

    total = 0.0
    error = 0.0

    # left part [a, m]
    if left_singular:
        v,e = integrate.quad(
            lambda u: 2.0*u*fn(a + u*u), 0.0, math.sqrt(m - a), **opts
        )
    else:
        v,e = integrate.quad(fn, a, m, **opts)
    total += v
    error += e

    # right part [m, b]
    if right_singular:
        v,e = integrate.quad(
            lambda u: 2.0*u*fn(b - u*u), 0.0, math.sqrt(b - m), **opts
        )
    else:
        v,e = integrate.quad(fn, m, b, **opts)
    total += v
    error += e

    return total, error

#---------------------------------------------------------------------------
def abs_power_segments(d0,d1,w,p=1.0):
    """Return ``int |l|^p`` over segments where ``l`` is linear

    :arg d0: values of ``l`` at the left ends
    :arg d1: values of ``l`` at the right ends
    :arg w: segment widths
    :arg p: a power ``p >= 1``

    The integrals are exact, including segments where ``l`` changes sign.

    """
    d0 = np.asarray(d0,dtype=float)
    d1 = np.asarray(d1,dtype=float)
    w = np.broadcast_to(np.asarray(w,dtype=float),d0.shape)

    a0 = np.abs(d0)
    a1 = np.abs(d1)
    out = np.empty_like(a0)

    cross = (d0*d1) < 0.0
    same = ~cross

    if p == 1.0:
        out[same] = 0.5*w[same]*(a0[same] + a1[same])
        s = a0[cross] + a1[cross]
        out[cross] = 0.5*w[cross]*(a0[cross]**2 + a1[cross]**2)/s
        return out

    q = p + 1.0
    s = a0[cross] + a1[cross]
    out[cross] = w[cross]*(a0[cross]**q + a1[cross]**q)/(q*s)

    b0 = a0[same]
    b1 = a1[same]
    ws = w[same]
    gap = np.abs(b1 - b0)
    far = gap > 1E-6*(b0 + b1)
    res = np.empty_like(b0)
    res[far] = ws[far]*(b1[far]**q - b0[far]**q)/(q*(b1[far] - b0[far]))
    res[~far] = ws[~far]*(0.5*(b0[~far] + b1[~far]))**p
    out[same] = res
    return out

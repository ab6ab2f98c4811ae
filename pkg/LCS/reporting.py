"""
Reporting functions
-------------------

    *   The function :func:`summary_line` gives a one-line account
        of an :class:`~verifier.InequalityReport`.
    *   The function :func:`tally` counts passed and failed reports.
    *   The function :func:`plotdata_rows` returns the log-log
        scaling data of a report, so exponent plots can be
        redrawn without rerunning a suite.

Module contents
---------------

"""
import math

import numpy as np

__all__ = (
    'summary_line',
    'tally',
    'plotdata_rows',
)

#: Pairs of ``measured`` keys that hold scaling data
SCALING_PAIRS = (
    ('h','delta'),
    ('M','statistic'),
    ('t','probability'),
)

#----------------------------------------------------------------------------
def _fmt(x):
    if x is None:
        return '-'
    try:
        x = float(x)
    except (TypeError,ValueError):
        return str(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return '{:.6g}'.format(x)

def summary_line(report):
    """Return a one-line summary of ``report``

    **Example**::

        >>> from LCS.named_tuples import Check
        >>> r = verifier.InequalityReport('demo',{'poly': 'x1'},{},1.5,
        ...     [Check('slope', 0.5, '<=', 0.55)])
        >>> summary_line(r)
        'PASS demo poly=x1 constant=1.5 [slope: 0.5 <= 0.55]'

    """
    status = 'PASS' if report.passed else 'FAIL'
    poly = report.parameters.get('poly')
    parts = [status,report.inequality]
    if poly is not None:
        parts.append('poly={}'.format(poly))
    parts.append('constant={}'.format(_fmt(report.constant)))
    return '{} [{}]'.format(' '.join(parts),report.criterion)

def tally(reports):
    """Return ``(passed, failed)`` counts"""
    passed = sum( 1 for r in reports if r.passed )
    return passed, len(reports) - passed

def plotdata_rows(report):
    """Return ``(x_name, y_name, log x, log y)`` for each scaling series of ``report``

    Only points with ``x > 0`` and ``y > 0`` are kept.

    """
    out = []
    m = report.measured
    for xn,yn in SCALING_PAIRS:
        if xn in m and yn in m:
            x = np.asarray(m[xn],dtype=float)
            y = np.asarray(m[yn],dtype=float)
            use = (x > 0.0) & (y > 0.0)
            out.append( (xn,yn,np.log(x[use]),np.log(y[use])) )
    return out

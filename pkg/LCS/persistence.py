"""
Storage of reports, densities, samples and configurations
----------------------------------------------------------

Reports
~~~~~~~

    Lists of :class:`~verifier.InequalityReport` objects are stored as
    JSON. Every float is written with 17 significant digits, so values
    read back are bit-for-bit the values written. Non-finite values are
    written as ``Infinity``, ``-Infinity`` and ``NaN``.

        * :func:`dump` and :func:`load` for files
        * :func:`dumps` and :func:`loads` for strings

Densities and samples
~~~~~~~~~~~~~~~~~~~~~

    Densities are CSV files with a ``t,rho`` header row, preceded by
    metadata lines of the form ``# key: value``.

        * :func:`write_density_csv` and :func:`read_density_csv`
        * :func:`write_samples_csv` one row per draw
        * :func:`write_plotdata` the ``(log x, log y)`` pairs of a report

Configuration
~~~~~~~~~~~~~

        * :func:`load_config` reads a suite configuration

Module contents
---------------

"""
import io
import csv
import json
import math
import numbers

import numpy as np

from LCS.errors import ConfigurationError
from LCS.pushforward import Density1D
from LCS.verifier import InequalityReport
from LCS import reporting

__all__ = (
    'dump',
    'dumps',
    'load',
    'loads',
    'write_density_csv',
    'read_density_csv',
    'write_samples_csv',
    'write_plotdata',
    'load_config',
    'to_json',
)

#----------------------------------------------------------------------------
def _float(x):
    if math.isnan(x):
        return 'NaN'
    if math.isinf(x):
        return 'Infinity' if x > 0 else '-Infinity'
    return '{:.17g}'.format(x)

def _encode(x,out):
    if x is None:
        out.append('null')
    elif isinstance(x,(bool,np.bool_)):
        out.append('true' if x else 'false')
    elif isinstance(x,(numbers.Integral,np.integer)):
        out.append(str(int(x)))
    elif isinstance(x,(numbers.Real,np.floating)):
        out.append( _float(float(x)) )
    elif isinstance(x,str):
        out.append( json.dumps(x) )
    elif isinstance(x,dict):
        out.append('{')
        for i,(k,v) in enumerate( sorted(x.items(),key=lambda kv: str(kv[0])) ):
            if i:
                out.append(', ')
            out.append( json.dumps(str(k)) )
            out.append(': ')
            _encode(v,out)
        out.append('}')
    elif isinstance(x,(list,tuple,np.ndarray)):
        out.append('[')
        for i,v in enumerate(x):
            if i:
                out.append(', ')
            _encode(v,out)
        out.append(']')
    else:
        raise ConfigurationError("cannot store an object of type {}".format(type(x).__name__))

def _report_dicts(reports,deterministic):
    out = []
    for r in reports:
        d = r.to_dict() if isinstance(r,InequalityReport) else dict(r)
        if deterministic:
            d['provenance'] = { k: v for k,v in d.get('provenance',{}).items() if k != 'runtime' }
        out.append(d)
    return out

#----------------------------------------------------------------------------
def dumps(reports,deterministic=False):
    """Return a JSON string for a list of reports

    :arg reports: :class:`~verifier.InequalityReport` objects or their dictionaries
    :arg deterministic: when ``True`` run times are left out, so that
        repeated runs give identical text

    **Example**::

        >>> r = InequalityReport('demo',{},{'x': 0.1},None,[])
        >>> s = dumps([r],deterministic=True)
        >>> '0.10000000000000001' in s
        True
        >>> loads(s)[0].measured['x']
        0.1

    """
    out = []
    _encode( _report_dicts(reports,deterministic), out )
    return ''.join(out) + '\n'

def dump(file,reports,deterministic=False):
    """Save a list of reports in a file

    :arg file: a file object opened in text mode (with 'w')
    :arg reports: a sequence of :class:`~verifier.InequalityReport`

    """
    file.write( dumps(reports,deterministic) )

def loads(s):
    """Return the list of reports stored in the string ``s``"""
    try:
        data = json.loads(s)
    except ValueError as e:
        raise ConfigurationError("not a JSON report list: {}".format(e))
    if not isinstance(data,list):
        raise ConfigurationError("a report file holds a JSON array")
    return [ InequalityReport.from_dict(d) for d in data ]

def load(file):
    """Return the list of reports stored in ``file``

    :arg file: a file object opened in text mode (with 'r')

    """
    return loads( file.read() )

#----------------------------------------------------------------------------
def write_density_csv(file,rho,**metadata):
    """Write the nodes and values of a :class:`~pushforward.Density1D`

    ``left``, ``step``, ``support`` and ``source`` are written as
    metadata, followed by any keyword arguments.

    """
    meta = dict(
        source=rho.source,
        left=_float(rho.left),
        step=_float(rho.step),
        support='{} {}'.format(_float(rho.support[0]),_float(rho.support[1])),
    )
    meta.update( (k,str(v)) for k,v in metadata.items() )
    for k,v in meta.items():
        file.write("# {}: {}\n".format(k,v))
    w = csv.writer(file,lineterminator='\n')
    w.writerow(['t','rho'])
    for t,v in zip(rho.nodes,rho.values):
        w.writerow([ _float(float(t)), _float(float(v)) ])

def read_density_csv(file):
    """Return the :class:`~pushforward.Density1D` in a density CSV file

    The nodes must be equally spaced to a relative tolerance of ``1e-9``.

    **Example**::

        >>> text = "# source: demo\\nt,rho\\n0,0\\n1,1\\n2,0\\n"
        >>> read_density_csv( io.StringIO(text) ).mass()
        1.0

    """
    meta = {}
    rows = []
    for line in file:
        if line.startswith('#'):
            key,_,value = line[1:].partition(':')
            meta[key.strip()] = value.strip()
        elif line.strip():
            rows.append(line)
    reader = csv.reader(rows)
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigurationError("a density file needs a header row and data")
    if [ h.strip() for h in header ] != ['t','rho']:
        raise ConfigurationError("expected the header 't,rho', got {!r}".format(header))
    try:
        data = np.array([ [float(a),float(b)] for a,b in reader ],dtype=float)
    except ValueError as e:
        raise ConfigurationError("bad density row: {}".format(e))
    if data.shape[0] < 2:
        raise ConfigurationError("a density file needs at least 2 rows")

    t = data[:,0]
    steps = np.diff(t)
    step = float(np.mean(steps))
    if not step > 0.0 or np.max(np.abs(steps - step)) > 1E-9*step + 1E-12*np.max(np.abs(t)):
        raise ConfigurationError("density nodes must be equally spaced and increasing")
    support = None
    if 'support' in meta:
        try:
            lo,hi = ( float(x) for x in meta['support'].split() )
            support = (lo,hi)
        except ValueError:
            raise ConfigurationError("bad support metadata {!r}".format(meta['support']))
    return Density1D(float(t[0]),step,data[:,1],support,'csv')

def write_samples_csv(file,X):
    """Write one row per draw, with columns ``x1, x2, ...``"""
    X = np.atleast_2d( np.asarray(X,dtype=float) )
    w = csv.writer(file,lineterminator='\n')
    w.writerow([ 'x{}'.format(i+1) for i in range(X.shape[1]) ])
    for row in X:
        w.writerow([ _float(float(v)) for v in row ])

#----------------------------------------------------------------------------
def write_plotdata(file,reports):
    """Write the ``(log x, log y)`` scaling pairs of ``reports`` as CSV

    Columns are ``report, x, y, log_x, log_y``, with ``report`` the
    position of the report in the list.

    """
    w = csv.writer(file,lineterminator='\n')
    w.writerow(['report','inequality','x','y','log_x','log_y'])
    for i,r in enumerate(reports):
        for xn,yn,lx,ly in reporting.plotdata_rows(r):
            for a,b in zip(lx,ly):
                w.writerow([ i, r.inequality, xn, yn, _float(float(a)), _float(float(b)) ])

#----------------------------------------------------------------------------
def load_config(file):
    """Return a suite configuration read from a JSON file

    The top level must be an object. A ``cases`` entry, when present,
    must be a list of objects.

    """
    try:
        config = json.load(file)
    except ValueError as e:
        raise ConfigurationError("bad configuration JSON: {}".format(e))
    if not isinstance(config,dict):
        raise ConfigurationError("a configuration is a JSON object")
    cases = config.get('cases')
    if cases is not None and not ( isinstance(cases,list) and all(isinstance(c,dict) for c in cases) ):
        raise ConfigurationError("'cases' must be a list of objects")
    return config

#----------------------------------------------------------------------------
def to_json(obj):
    """Return JSON text for ``obj`` with floats written to 17 significant digits

    **Example**::

        >>> to_json({'b': [1, 0.5], 'a': float('inf')})
        '{"a": Infinity, "b": [1, 0.5]}'

    """
    out = []
    _encode(obj,out)
    return ''.join(out)

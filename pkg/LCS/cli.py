"""
The ``lcs`` command
-------------------

    lcs verify --suite ID [--config FILE] [--measure JSON] [--poly TEXT] ...
    lcs density (--oracle ID [--params JSON] | --measure JSON --poly TEXT) [--bins N]
    lcs metrics FILE1 FILE2 [--alpha A]
    lcs constants --name ID --params JSON
    lcs sample --measure JSON [--burnin N] [--thin N]

Every subcommand accepts ``--seed``, ``--samples``, ``--threads``,
``--out``, ``--verbose`` and ``--deterministic``. Results go to
``--out`` or to standard output.

Exit codes: 0 on success, 1 on a usage, configuration or I/O error,
2 when a verification report fails.

Module contents
---------------

"""
import sys
import json
import logging
import argparse
import contextlib

from LCS import version
from LCS.errors import LCSError
from LCS.context import Context
from LCS import (
    constants,
    measure,
    metrics,
    persistence,
    polynomial,
    pushforward,
    reporting,
    sampler,
    verifier,
)

__all__ = (
    'run',
    'main',
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2

#----------------------------------------------------------------------------
class _UsageError(Exception):
    pass

class _Parser(argparse.ArgumentParser):

    # argparse exits with status 2, which is reserved for failed reports
    def error(self,message):
        raise _UsageError("{}: {}".format(self.prog,message))

def _json_arg(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError("not valid JSON: {}".format(e))

def _common(p):
    p.add_argument('--seed',type=int,default=None,help='master seed of the run')
    p.add_argument('--samples',type=int,default=None,help='Monte Carlo sample count')
    p.add_argument('--threads',type=int,default=1,help='worker threads')
    p.add_argument('--out',default=None,help='output file (default: standard output)')
    p.add_argument('--verbose',action='store_true',help='log at DEBUG level')
    p.add_argument('--deterministic',action='store_true',
        help='leave run times out of the output')

def _parser():
    p = _Parser(prog='lcs',description='Smoothness of polynomial images of log-concave measures')
    p.add_argument('--version',action='version',version=version)
    sub = p.add_subparsers(dest='command',parser_class=_Parser)
    sub.required = True

    v = sub.add_parser('verify',help='run an inequality suite')
    _common(v)
    v.add_argument('--suite',required=True,
        help='one of: ' + ', '.join(verifier.SUITES + tuple(verifier.SUITE_ALIASES)))
    v.add_argument('--config',default=None,help='suite configuration (JSON)')
    v.add_argument('--measure',type=_json_arg,default=None,help='measure specification (JSON)')
    v.add_argument('--poly',default=None)
    v.add_argument('--poly2',default=None)
    v.add_argument('--degree',type=int,default=None)
    v.add_argument('--p',type=float,default=None)
    v.add_argument('--plotdata',default=None,help='write log-log scaling data (CSV)')

    d = sub.add_parser('density',help='write a density as CSV')
    _common(d)
    d.add_argument('--oracle',default=None,help='one of: ' + ', '.join(pushforward.ORACLES))
    d.add_argument('--params',type=_json_arg,default={})
    d.add_argument('--measure',type=_json_arg,default=None)
    d.add_argument('--poly',default=None)
    d.add_argument('--bins',type=int,default=None)

    m = sub.add_parser('metrics',help='compare two density CSV files')
    _common(m)
    m.add_argument('first')
    m.add_argument('second')
    m.add_argument('--alpha',type=float,default=0.5)

    c = sub.add_parser('constants',help='evaluate a named constant')
    _common(c)
    c.add_argument('--name',required=True,help='one of: ' + ', '.join(constants.NAMES))
    c.add_argument('--params',type=_json_arg,default={})

    s = sub.add_parser('sample',help='write draws from a measure as CSV')
    _common(s)
    s.add_argument('--measure',type=_json_arg,required=True)
    s.add_argument('--burnin',type=int,default=None)
    s.add_argument('--thin',type=int,default=None)
    return p

@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path,'w',newline='') as f:
            yield f

#----------------------------------------------------------------------------
def _verify(args):
    config = {}
    if args.config is not None:
        with open(args.config) as f:
            config = persistence.load_config(f)
    overrides = dict(
        measure=args.measure, poly=args.poly, poly2=args.poly2,
        degree=args.degree, p=args.p, budget=args.samples, seed=args.seed,
    )
    config.update( (k,v) for k,v in overrides.items() if v is not None )

    context = Context(config.get('seed'))
    reports = verifier.run_suite(args.suite,config,context,workers=args.threads)

    for r in reports:
        print( reporting.summary_line(r) )
    if args.out is not None:
        with _output(args.out) as f:
            persistence.dump(f,reports,args.deterministic)
    if args.plotdata is not None:
        with _output(args.plotdata) as f:
            persistence.write_plotdata(f,reports)

    passed,failed = reporting.tally(reports)
    log.info("%d passed, %d failed (seed %d)",passed,failed,context.seed)
    return EXIT_OK if failed == 0 else EXIT_FAILED

def _density(args):
    if args.oracle is not None:
        rho = pushforward.analytic_density(args.oracle,**args.params)
        meta = dict(oracle=args.oracle)
    elif args.measure is not None and args.poly is not None:
        m = measure.from_spec(args.measure)
        f = polynomial.parse(args.poly)
        count = 1000000 if args.samples is None else args.samples
        context = Context(args.seed)
        values = pushforward.pushforward_samples(f,m,count,context.next_stream(),args.threads)
        rho = pushforward.estimate_density(values,args.bins)
        meta = dict(poly=str(f),samples=count,seed=context.seed)
    else:
        raise _UsageError("density needs --oracle, or --measure and --poly")
    with _output(args.out) as f:
        persistence.write_density_csv(f,rho,**meta)
    return EXIT_OK

def _metrics(args):
    with open(args.first) as f:
        rho1 = persistence.read_density_csv(f)
    with open(args.second) as f:
        rho2 = persistence.read_density_csv(f)
    fm = metrics.fm_certificate(rho1,rho2)
    fit = metrics.besov_fit(rho1,args.alpha)
    record = dict(
        tv=metrics.tv_distance(rho1,rho2),
        fm=fm.value,
        w1=fm.w1,
        besov=dict(alpha=fit.alpha,seminorm=fit.seminorm,slope=fit.slope),
    )
    with _output(args.out) as f:
        f.write( persistence.to_json(record) + '\n' )
    return EXIT_OK

def _constants(args):
    cv = constants.evaluate(args.name,**args.params)
    with _output(args.out) as f:
        f.write( persistence.to_json(cv._asdict()) + '\n' )
    return EXIT_OK

def _sample(args):
    m = measure.from_spec(args.measure)
    count = 1000 if args.samples is None else args.samples
    context = Context(args.seed)
    X = sampler.sample(
        m,count,context.next_stream(),
        burnin=args.burnin,thin=args.thin,workers=args.threads
    )
    with _output(args.out) as f:
        persistence.write_samples_csv(f,X)
    return EXIT_OK

_COMMANDS = dict(
    verify=_verify,
    density=_density,
    metrics=_metrics,
    constants=_constants,
    sample=_sample,
)

#----------------------------------------------------------------------------
def run(argv):
    """Run the ``lcs`` command with arguments ``argv`` and return the exit code

    **Example**::

        >>> run(['constants','--name','c_n_tau','--params','{"n": 1, "tau": 1}'])
        {"crosscheck_error": ..., "name": "c_n_tau", "params": {"n": 1, "tau": 1}, "value": 1.367879441171442...}
        0

    """
    try:
        args = _parser().parse_args(argv)
    except _UsageError as e:
        print(e,file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        # --help and --version
        return EXIT_OK if not e.code else EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    logging.captureWarnings(True)

    try:
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print("lcs {}: {}".format(args.command,e),file=sys.stderr)
    except (LCSError,ValueError,OSError) as e:
        print("lcs {}: {}".format(args.command,e),file=sys.stderr)
    return EXIT_ERROR

def main():
    sys.exit( run(sys.argv[1:]) )

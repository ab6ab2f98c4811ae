import unittest
import io
import os
import json
import math
import shutil
import tempfile
import warnings
import contextlib

from scipy import special

from LCS import version, persistence
from LCS.cli import run

from testing_tools import *

def call(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            code = run(argv)
    return code, out.getvalue(), err.getvalue()

#-----------------------------------------------------
class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def path(self,name):
        return os.path.join(self.dir,name)

    def test_version(self):
        code,out,_ = call(['--version'])
        self.assertEqual( code, 0 )
        self.assertEqual( out.strip(), version )

    def test_usage_errors(self):
        for argv in (
            [],
            ['frobnicate'],
            ['verify'],
            ['constants','--name','c_n_tau','--params','{bad'],
            ['density'],
        ):
            code,_,err = call(argv)
            self.assertEqual( code, 1, argv )
            self.assertTrue( err, argv )

    def test_constants(self):
        code,out,_ = call(['constants','--name','c_n_tau','--params','{"n": 1, "tau": 1}'])
        self.assertEqual( code, 0 )
        record = json.loads(out)
        self.assertEqual( record['name'], 'c_n_tau' )
        equivalent( record['value'], 1.0 + math.exp(-1.0), 1E-12 )

        code,_,err = call(['constants','--name','no_such_constant'])
        self.assertEqual( code, 1 )
        self.assertTrue( err.startswith('lcs constants:') )

    def test_verify(self):
        path = self.path('reports.json')
        code,out,_ = call([
            'verify','--suite','poincare',
            '--measure','{"family": "gaussian", "dim": 1}',
            '--poly','x1^2','--out',path,'--deterministic',
        ])
        self.assertEqual( code, 0 )
        self.assertTrue( out.startswith('PASS poincare poly=x1^2') )
        with open(path) as f:
            reports = persistence.load(f)
        self.assertEqual( len(reports), 1 )
        equivalent( reports[0].measured['ratio'], 0.5, 1E-8 )
        self.assertFalse( 'runtime' in reports[0].provenance )

    def test_verify_cited_suite(self):
        path = self.path('cor51.json')
        code,out,_ = call([
            'verify','--suite','cor5.1',
            '--measure','{"family":"gaussian","dim":1}','--poly','x1^2',
            '--samples','1000000','--seed','42','--out',path,
        ])
        self.assertEqual( code, 0 )
        self.assertTrue( out.startswith('PASS shift-tv') )
        with open(path) as f:
            reports = persistence.load(f)
        self.assertEqual( reports[0].inequality, 'shift-tv' )
        self.assertTrue( abs(reports[0].measured['slope'] - 0.5) < 0.08 )

    def test_threads_do_not_change_results(self):
        config = self.path('config.json')
        with open(config,'w') as f:
            json.dump(dict(
                seed=17,
                measure={'family': 'gaussian', 'dim': 2},
                samples=20000,
                M_grid=[10.0,30.0,100.0],
                cases=[ {'poly': 'x1*x2'}, {'poly': 'x1^2 + x2'} ],
            ),f)

        def report_text(suite,threads,name):
            path = self.path(name)
            code,_,_ = call([
                'verify','--suite',suite,'--config',config,
                '--threads',str(threads),'--out',path,'--deterministic',
            ])
            self.assertTrue( code in (0,2) )
            with open(path,'rb') as f:
                return f.read()

        for suite in ('malliavin','shift-tv'):
            one = report_text(suite,1,'one.json')
            eight = report_text(suite,8,'eight.json')
            again = report_text(suite,1,'again.json')
            self.assertEqual( one, eight )
            self.assertEqual( one, again )

    def test_verify_failure(self):
        # x1^2 has S(M) growing like M^(1/2), too fast for degree 1
        plot = self.path('plot.csv')
        code,out,_ = call([
            'verify','--suite','malliavin','--poly','x1^2','--degree','1',
            '--plotdata',plot,
        ])
        self.assertEqual( code, 2 )
        self.assertTrue( out.startswith('FAIL malliavin') )
        with open(plot) as f:
            rows = f.read().splitlines()
        self.assertEqual( len(rows), 9 )

    def test_verify_config(self):
        path = self.path('config.json')
        with open(path,'w') as f:
            json.dump(dict(
                seed=11,
                measure={'family': 'uniform_box', 'half_widths': [1.0]},
                t_grid=[0.1,0.2,0.5],
                cases=[ {'poly': 'x1'}, {'poly': '2*x1'} ],
            ),f)
        code,out,_ = call(['verify','--suite','small-ball','--config',path])
        self.assertEqual( code, 0 )
        self.assertEqual( len(out.splitlines()), 2 )

        code,_,_ = call(['verify','--suite','small-ball','--config',self.path('missing.json')])
        self.assertEqual( code, 1 )

    def test_density_and_metrics(self):
        first, second = self.path('a.csv'), self.path('b.csv')
        code,_,_ = call(['density','--oracle','gaussian','--out',first])
        self.assertEqual( code, 0 )
        code,_,_ = call([
            'density','--oracle','gaussian','--params','{"mean": 1.0}','--out',second,
        ])
        self.assertEqual( code, 0 )
        with open(first) as f:
            text = f.read()
        self.assertTrue( '# oracle: gaussian' in text )

        code,out,_ = call(['metrics',first,second,'--alpha','1.0'])
        self.assertEqual( code, 0 )
        record = json.loads(out)
        equivalent( record['tv'], 2.0*(2.0*special.ndtr(0.5) - 1.0), 1E-3 )
        self.assertTrue( record['fm'] <= record['tv'] + 1E-3 )
        self.assertEqual( record['besov']['alpha'], 1.0 )

        code,_,err = call(['metrics',first,self.path('missing.csv')])
        self.assertEqual( code, 1 )

    def test_sampled_density(self):
        path = self.path('rho.csv')
        argv = [
            'density','--measure','{"family": "gaussian", "dim": 2}',
            '--poly','x1*x2','--samples','20000','--seed','5','--bins','40','--out',path,
        ]
        self.assertEqual( call(argv)[0], 0 )
        with open(path) as f:
            rho = persistence.read_density_csv(f)
        self.assertEqual( rho.count, 42 )
        equivalent( rho.mass(), 1.0, 1E-9 )

    def test_sample(self):
        argv = [
            'sample','--measure','{"family": "uniform_box", "dim": 2, "side": 1.0}',
            '--samples','10','--seed','3',
        ]
        code,out,_ = call(argv)
        self.assertEqual( code, 0 )
        rows = out.splitlines()
        self.assertEqual( rows[0], 'x1,x2' )
        self.assertEqual( len(rows), 11 )
        self.assertTrue( all( abs(float(v)) <= 0.5 for r in rows[1:] for v in r.split(',') ) )
        # the seed fixes the draws
        self.assertEqual( call(argv)[1], out )

        code,_,_ = call(['sample','--measure','{"family": "cube"}'])
        self.assertEqual( code, 1 )

if(__name__ == '__main__'):
    unittest.main()

"""
A benchmark of the main stages of an inequality check

"""
import time
import warnings

from LCS import *
from LCS import metrics


def fn(count=1000000,workers=4):

    if __debug__: print('debug on')

    _t0 = time.time()

    s = SeededStream(20240601)
    m = gaussian(mean=[0.0,1.0,-1.0],cov=[[2.0,0.5,0.0],[0.5,1.0,0.2],[0.0,0.2,1.0]])
    f = parse('x1^2*x2 - 3*x2*x3 + x3^3')

    # Exact draws, split into batches over the workers
    X = sample(m,count,s,workers=workers)

    _t1 = time.time()

    # Hit-and-run on a potential without an exact sampler
    q = measure.custom(lambda Y: 0.25*(Y**4).sum(axis=1), 3, vectorized=True)
    sample(q,count//100,s.child(1),workers=workers)

    _t2 = time.time()

    y = f(X)
    rho = estimate_density(y)
    g = parse('x1^2*x2 - 3*x2*x3 + x3^3 + 0.1')
    sigma = estimate_density(g(X))

    _t3 = time.time()

    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        tv = metrics.tv_distance(rho,sigma)
        fm = metrics.fm_distance(rho,sigma)

    _t4 = time.time()

    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        reports = verifier.run_suite('canonical',{'seed': 1})

    _t5 = time.time()

    print('TV = {:.6g}, FM = {:.6g}, {} reports'.format(tv,fm,len(reports)))
    print('exact sampling time: {}'.format(_t1 - _t0))
    print('hit-and-run time: {}'.format(_t2 - _t1))
    print('density time: {}'.format(_t3 - _t2))
    print('distance time: {}'.format(_t4 - _t3))
    print('canonical suite time: {}'.format(_t5 - _t4))
    print('total time: {}'.format(_t5 - _t0))

#========================================================
if __name__ == '__main__':

    fn()

import unittest
import math

import numpy as np

from LCS import estimates
from LCS.errors import ConfigurationError, EstimationError

from testing_tools import *

TOL = 1E-13

#---------------------------------------------------------
class StdDataSets(object):
    """
    Reference data sets with a known mean and standard deviation:
    ``mu + q^k - i*h`` for ``i = -N, ..., N``.

    """

    def __init__(self,mu,h,q,n):
        self._mu = mu
        self._h = h
        self._q = q
        self._n = n

    def seq(self,k=1):
        self._k = k

        N = self._n
        a = np.array( range(-N,N+1) ) * self._h
        q = self._q ** self._k

        return (self._mu + q) - a

    def mean(self):
        return self._mu + (self._q ** self._k)

    def std(self):
        N = self._n
        return self._h * math.sqrt((N + 0.5)*(N+1)/3.0)

#-----------------------------------------------------
class TestSampleStatistics(unittest.TestCase):

    def test_mean(self):
        TOL = 1E-12
        for k in range(4):
            data = StdDataSets(mu=3.172,h=0.1,q=1.5,n=1000)
            seq = data.seq(k)
            equivalent( estimates.mean(seq), data.mean(), TOL )

    def test_standard_deviation(self):
        TOL = 1E-10
        data = StdDataSets(mu=-1.0,h=0.25,q=2.0,n=500)
        seq = data.seq(2)
        equivalent( estimates.standard_deviation(seq), data.std(), TOL )
        equivalent(
            estimates.standard_uncertainty(seq),
            data.std()/math.sqrt(len(seq)),
            TOL
        )

#-----------------------------------------------------
class TestBatchMeans(unittest.TestCase):

    def test_constant(self):
        e = estimates.batch_means( np.ones(1000) )
        self.assertEqual( e.value, 1.0 )
        self.assertEqual( e.u, 0.0 )
        self.assertEqual( e.count, 1000 )

    def test_value_is_the_full_mean(self):
        x = np.arange(101,dtype=float)
        e = estimates.batch_means(x,nbatch=7)
        equivalent( e.value, 50.0, TOL )

    def test_independent_data(self):
        rng = np.random.default_rng(11)
        x = rng.standard_normal(64000)
        e = estimates.batch_means(x)
        # the batch estimate of the standard error is close to 1/sqrt(N)
        self.assertTrue( 0.5 < e.u*math.sqrt(x.size) < 1.5 )
        within_sigma( e, 0.0, 5.0 )

    def test_batch_uncertainty(self):
        x = np.arange(40,dtype=float)**2
        e = estimates.batch_means(x,nbatch=4)
        means = [ np.mean(x[i:i+10]) for i in range(0,40,10) ]
        equivalent( e.u, estimates.standard_uncertainty(means), 1E-9 )

    def test_too_few(self):
        self.assertRaises(EstimationError,estimates.batch_means,[1.0])
        # two values make two batches
        e = estimates.batch_means([1.0,3.0])
        equivalent( e.value, 2.0, TOL )
        equivalent( e.u, 1.0, TOL )

#-----------------------------------------------------
class TestLineFit(unittest.TestCase):

    def test_exact_line(self):
        x = [1.0,2.0,3.0,4.0,5.0]
        y = [ 2.5 - 0.75*x_i for x_i in x ]
        fit = estimates.line_fit(x,y)
        equivalent( fit.slope, -0.75, 1E-12 )
        equivalent( fit.intercept, 2.5, 1E-12 )
        equivalent( fit.u_slope, 0.0, 1E-12 )
        self.assertEqual( fit.N, 5 )

    def test_noisy_line(self):
        x = np.linspace(0.0,1.0,11)
        noise = np.array([1,-1,1,-1,1,-1,1,-1,1,-1,1],dtype=float)*1E-3
        y = 0.5 + 2.0*x + noise
        fit = estimates.line_fit(x,y)
        self.assertTrue( abs(fit.slope - 2.0) < 3.0*fit.u_slope + 1E-3 )
        equivalent( fit.ssr, float(np.sum((y - fit.intercept - fit.slope*x)**2)), 1E-15 )

    def test_errors(self):
        self.assertRaises(ConfigurationError,estimates.line_fit,[1,2],[1,2])
        self.assertRaises(ConfigurationError,estimates.line_fit,[1,2,3],[1,2])
        self.assertRaises(ConfigurationError,estimates.line_fit,[1,1,1],[1,2,3])

#-----------------------------------------------------
class TestRelativeChange(unittest.TestCase):

    def test_values(self):
        self.assertEqual( estimates.relative_change(0.0,0.0), 0.0 )
        equivalent( estimates.relative_change(1.0,1.1), 0.1/1.1, TOL )
        equivalent( estimates.relative_change(-2.0,2.0), 2.0, TOL )
        self.assertEqual( estimates.relative_change(float('inf'),float('inf')), 0.0 )
        self.assertEqual( estimates.relative_change(1.0,float('inf')), float('inf') )

#============================================================================
if(__name__== '__main__'):

    unittest.main()    # Runs all test methods starting with 'test'

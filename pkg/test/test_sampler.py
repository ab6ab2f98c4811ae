import unittest
import math

import numpy as np
from scipy import special

from LCS import BATCH_SIZE
from LCS.sampler import (
    SeededStream,
    AdaptiveRejection,
    sample,
    expectation,
    quadrature_expectation,
    sphere_average,
)
from LCS.measure import (
    gaussian,
    uniform_box,
    uniform_ball,
    product_exponential,
    custom,
    affine_image,
    AffineMap,
)
from LCS.estimates import batch_means
from LCS.errors import ConfigurationError, EstimationError, InvalidMeasureError

from testing_tools import *

#-----------------------------------------------------
class TestSeededStream(unittest.TestCase):

    def test_value_object(self):
        s = SeededStream(11,3)
        self.assertEqual( s, SeededStream(11,3) )
        self.assertNotEqual( s, SeededStream(11,4) )
        self.assertNotEqual( s, s.child(0) )
        self.assertEqual( len({s, SeededStream(11,3), s.child(1)}), 2 )
        self.assertEqual( s.child(2).path, (2,) )
        self.assertEqual( s.child(2).child(5).path, (2,5) )
        self.assertEqual( s.advanced(4).counter, 4 )

    def test_dict_form(self):
        s = SeededStream(2**63,1,7,(0,4))
        d = s.to_dict()
        self.assertEqual( d, dict(seed=2**63,index=1,counter=7,path=[0,4]) )
        self.assertEqual( SeededStream.from_dict(d), s )

    def test_bad_fields(self):
        self.assertRaises(ConfigurationError,SeededStream,-1)
        self.assertRaises(ConfigurationError,SeededStream,2**64)
        self.assertRaises(ConfigurationError,SeededStream,1.5)
        self.assertRaises(ConfigurationError,SeededStream,True)
        self.assertRaises(ConfigurationError,SeededStream,1,-2)

    def test_draws(self):
        a = SeededStream(5).generator().standard_normal(10)
        b = SeededStream(5).generator().standard_normal(10)
        c = SeededStream(5,1).generator().standard_normal(10)
        self.assertTrue( np.array_equal(a,b) )
        self.assertFalse( np.array_equal(a,c) )

        # advancing skips whole Philox blocks
        d = SeededStream(5,0,1).generator().standard_normal(10)
        self.assertFalse( np.array_equal(a,d) )

#-----------------------------------------------------
class TestExactSampling(unittest.TestCase):

    def test_reproducible(self):
        m = gaussian(dim=2)
        s = SeededStream(99)
        X = sample(m,100,s)
        self.assertEqual( X.shape, (100,2) )
        self.assertTrue( np.array_equal(X,sample(m,100,s)) )
        self.assertFalse( np.array_equal(X,sample(m,100,SeededStream(98))) )

    def test_workers(self):
        # batch i always draws from child(i)
        m = uniform_ball(dim=3)
        s = SeededStream(4)
        count = 2*BATCH_SIZE + 17
        X1 = sample(m,count,s,workers=1)
        X3 = sample(m,count,s,workers=3)
        self.assertTrue( np.array_equal(X1,X3) )

    def test_support(self):
        s = SeededStream(3)
        X = sample(uniform_ball(center=[1.0,1.0],radius=0.5),5000,s)
        self.assertTrue( np.all( np.sum((X - 1.0)**2,axis=1) <= 0.25 ) )
        X = sample(uniform_box(side=[1.0,4.0]),5000,s)
        self.assertTrue( np.all( np.abs(X) <= [0.5,2.0] ) )

    def test_moments(self):
        s = SeededStream(17)
        N = 100000
        e = expectation(uniform_box(side=[1.0]),lambda X: X[:,0]**2,N,s)
        within_sigma(e,1.0/12.0)

        e = expectation(product_exponential([2.0]),lambda X: X[:,0]**2,N,s)
        within_sigma(e,0.5)

        m = gaussian([1.0,-1.0],[[2.0,0.5],[0.5,1.0]])
        e = expectation(m,lambda X: (X[:,0] - 1.0)*(X[:,1] + 1.0),N,s)
        within_sigma(e,0.5)

        # E|X|^2 = R^2 n/(n + 2) on the ball
        e = expectation(uniform_ball(radius=2.0,dim=2),lambda X: np.sum(X*X,axis=1),N,s)
        within_sigma(e,2.0)

    def test_affine_image(self):
        base = uniform_box(side=[1.0,1.0])
        T = AffineMap([[1.0,1.0],[0.0,1.0]],[2.0,0.0])
        m = affine_image(base,T)
        s = SeededStream(8)
        X = sample(m,50,s)
        Y = sample(base,50,s)
        equivalent_matrix( X, T.apply(Y), 1E-14 )

    def test_bad_count(self):
        s = SeededStream(1)
        for count in (0,-5,2.5,True):
            self.assertRaises(ConfigurationError,sample,gaussian(dim=1),count,s)

#-----------------------------------------------------
class TestHitAndRun(unittest.TestCase):

    def test_gaussian_potential(self):
        m = custom(lambda X: 0.5*np.sum(X*X,axis=1), 2, vectorized=True)
        s = SeededStream(21)
        X = sample(m,2000,s,burnin=200,thin=2)
        self.assertEqual( X.shape, (2000,2) )
        self.assertTrue( np.array_equal(X,sample(m,2000,s,burnin=200,thin=2)) )

        e = batch_means(X[:,0])
        within_sigma(e,0.0,k=6.0)
        e = batch_means(np.sum(X*X,axis=1))
        within_sigma(e,2.0,k=6.0)

    def test_truncated(self):
        m = custom(lambda x: 0.0, 2, support={'kind': 'ball', 'radius': 1.0})
        X = sample(m,500,SeededStream(2),burnin=50)
        self.assertTrue( np.all( np.sum(X*X,axis=1) <= 1.0 + 1E-12 ) )

    def test_workers(self):
        m = custom(lambda X: 0.25*np.sum(X**4,axis=1), 2, vectorized=True)
        s = SeededStream(6)
        X1 = sample(m,200,s,burnin=20,workers=1)
        X4 = sample(m,200,s,burnin=20,workers=4)
        self.assertTrue( np.array_equal(X1,X4) )

    def test_marginals(self):
        # Kolmogorov-Smirnov distance of each marginal to the exact cdf,
        # below the 0.1% critical value 1.95/sqrt(N)
        def ks(x,F):
            u = F(np.sort(x))
            N = u.size
            i = np.arange(1,N+1)
            return max( np.max(i/N - u), np.max(u - (i-1)/N) )

        N = 100000
        critical = 1.95/math.sqrt(N)

        m = custom(lambda X: 0.5*np.sum(X*X,axis=1), 2, vectorized=True)
        X = sample(m,N,SeededStream(31),burnin=200,thin=6,workers=2)
        for j in range(2):
            self.assertTrue( ks(X[:,j],special.ndtr) < critical )

        m = custom(lambda x: 0.0, 2, support={'kind': 'box', 'half_widths': [1.0,1.0]})
        X = sample(m,N,SeededStream(32),burnin=200,thin=10,workers=2)
        for j in range(2):
            self.assertTrue( ks(X[:,j],lambda t: 0.5*(t + 1.0)) < critical )

    def test_quartic_kurtosis(self):
        # exp(-x^4/4): E x^4 = 1 and E x^4/(E x^2)^2 = G(5/4)G(1/4)/G(3/4)^2
        exact = special.gamma(1.25)*special.gamma(0.25)/special.gamma(0.75)**2
        m = custom(lambda X: 0.25*np.sum(X**4,axis=1), 1, vectorized=True)

        e2 = quadrature_expectation(m,lambda t: t**2)
        e4 = quadrature_expectation(m,lambda t: t**4)
        equivalent( e4.value, 1.0, 1E-6 )
        equivalent( e4.value/e2.value**2, exact, 1E-5 )

        X = sample(m,100000,SeededStream(33),burnin=100)
        x = X[:,0]
        ratio = np.mean(x**4)/np.mean(x**2)**2
        self.assertTrue( abs(ratio/exact - 1.0) < 0.05 )

    def test_bad_arguments(self):
        m = custom(lambda x: float(x.dot(x)), 1)
        s = SeededStream(1)
        self.assertRaises(ConfigurationError,sample,m,10,s,-1)
        self.assertRaises(ConfigurationError,sample,m,10,s,10,0)

#-----------------------------------------------------
class TestAdaptiveRejection(unittest.TestCase):

    def test_normal_line(self):
        ars = AdaptiveRejection(lambda t: -0.5*t*t)
        rng = SeededStream(12).generator()
        t = np.array([ ars.draw(rng) for _ in range(4000) ])
        # standard errors of the mean and of the second moment
        self.assertTrue( abs(np.mean(t)) < 5*1.0/math.sqrt(4000) )
        self.assertTrue( abs(np.mean(t*t) - 1.0) < 5*math.sqrt(2.0/4000) )
        # the hull stays small
        self.assertTrue( ars.x.size <= AdaptiveRejection.MAX_POINTS )

    def test_interval(self):
        # an exponential law restricted to [0, 1]
        ars = AdaptiveRejection(lambda t: -2.0*t, lo=0.0, hi=1.0, scale=0.5)
        rng = SeededStream(13).generator()
        t = np.array([ ars.draw(rng) for _ in range(4000) ])
        self.assertTrue( np.all( (t >= 0.0) & (t <= 1.0) ) )
        mean = 0.5 - math.exp(-2.0)/(1.0 - math.exp(-2.0))
        self.assertTrue( abs(np.mean(t) - mean) < 5*0.3/math.sqrt(4000) )

    def test_not_decaying(self):
        self.assertRaises(InvalidMeasureError,AdaptiveRejection,lambda t: np.zeros_like(t))

    def test_vanishing_start(self):
        self.assertRaises(
            InvalidMeasureError,
            AdaptiveRejection,lambda t: np.where(t > 0.5,-t,-np.inf),
        )

#-----------------------------------------------------
class TestExpectation(unittest.TestCase):

    def test_non_finite(self):
        s = SeededStream(1)
        g = lambda X: np.where(X[:,0] > 0.0, np.inf, 0.0)
        with self.assertRaises(EstimationError) as cm:
            expectation(gaussian(dim=1),g,1000,s)
        bad = np.sum( sample(gaussian(dim=1),1000,s)[:,0] > 0.0 )
        self.assertEqual( cm.exception.bad_count, bad )

    def test_wrong_length(self):
        self.assertRaises(
            ConfigurationError,expectation,gaussian(dim=1),lambda X: [1.0],100,SeededStream(1)
        )

    def test_pointwise(self):
        s = SeededStream(3)
        e1 = expectation(gaussian(dim=2),lambda x: x[0]*x[1],500,s,vectorized=False)
        e2 = expectation(gaussian(dim=2),lambda X: X[:,0]*X[:,1],500,s)
        equivalent( e1.value, e2.value, 1E-14 )

    def test_quadrature(self):
        e = quadrature_expectation(gaussian(dim=1),lambda t: t*t)
        equivalent( e.value, 1.0, 1E-10 )
        self.assertEqual( e.count, 0 )

        e = quadrature_expectation(uniform_box(side=[2.0]),lambda t: abs(t - 0.5),points=[0.5])
        equivalent( e.value, 0.625, 1E-10 )

        e = quadrature_expectation(product_exponential([1.0]),lambda t: math.exp(t/2.0))
        equivalent( e.value, 4.0/3.0, 1E-9 )

        self.assertRaises(
            ConfigurationError,quadrature_expectation,gaussian(dim=2),lambda t: t
        )

    def test_sphere(self):
        # the squared first coordinate averages to 1/n
        e = sphere_average(lambda U: U[:,0]**2,3,60000,SeededStream(5))
        within_sigma(e,1.0/3.0)
        e = sphere_average(lambda U: np.sum(U*U,axis=1),4,1000,SeededStream(5))
        equivalent( e.value, 1.0, 1E-12 )

if(__name__ == '__main__'):
    unittest.main()

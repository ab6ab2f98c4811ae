import unittest
import math

import numpy as np
from scipy import special

from LCS.pushforward import (
    ORACLES,
    Density1D,
    EmpiricalSample1D,
    estimate_density,
    analytic_density,
    cdf,
    quantile,
    oracle_for,
    pushforward_samples,
)
from LCS.polynomial import parse
from LCS.measure import gaussian, uniform_box
from LCS.sampler import SeededStream
from LCS.errors import ConfigurationError, DegeneracyError, RangeError

from testing_tools import *

TOL = 1E-13

#-----------------------------------------------------
class TestDensity1D(unittest.TestCase):

    def test_triangle(self):
        rho = Density1D(0.0,1.0,[0.0,1.0,0.0])
        self.assertEqual( rho.count, 3 )
        self.assertEqual( rho.right, 2.0 )
        self.assertEqual( rho.support, (0.0,2.0) )
        self.assertFalse( rho.is_oracle )
        equivalent( rho.mass(), 1.0 )
        equivalent( rho.pdf(0.5), 0.5 )
        self.assertEqual( rho.pdf(3.0), 0.0 )
        equivalent( cdf(rho,0.5), 0.125 )
        equivalent( cdf(rho,1.0), 0.5 )
        equivalent( cdf(rho,5.0), 1.0 )
        self.assertEqual( cdf(rho,-1.0), 0.0 )
        equivalent( quantile(rho,0.5), 1.0, 1E-8 )
        equivalent( quantile(rho,0.125), 0.5, 1E-8 )
        equivalent_sequence( rho.cdf(np.array([0.5,1.5])), [0.125,0.875] )

    def test_validation(self):
        self.assertRaises(ConfigurationError,Density1D,0.0,1.0,[0.0,2.0,0.0])
        self.assertRaises(ConfigurationError,Density1D,0.0,0.0,[0.0,1.0,0.0])
        self.assertRaises(ConfigurationError,Density1D,0.0,1.0,[0.0,-1.0,2.0,0.0])
        self.assertRaises(ConfigurationError,Density1D,0.0,1.0,[1.0])
        self.assertRaises(ConfigurationError,Density1D,0.0,1.0,[0.0,np.nan,0.0])

    def test_quantile_range(self):
        rho = Density1D(0.0,1.0,[0.0,1.0,0.0])
        for u in (0.0,1.0,-0.5,[0.5,1.2]):
            self.assertRaises(RangeError,quantile,rho,u)

    def test_values_are_frozen(self):
        rho = Density1D(0.0,1.0,[0.0,1.0,0.0])
        with self.assertRaises(ValueError):
            rho.values[1] = 2.0

#-----------------------------------------------------
class TestOracles(unittest.TestCase):

    def test_names(self):
        self.assertEqual( ORACLES, ('gaussian','chi2_1','power_image','uniform') )

    def test_gaussian(self):
        rho = analytic_density('gaussian',mean=1.0,sd=2.0)
        self.assertTrue( rho.is_oracle )
        self.assertEqual( rho.source, 'gaussian' )
        equivalent( rho.pdf(1.0), 1.0/(2.0*math.sqrt(2*math.pi)), TOL )
        equivalent( rho.cdf(1.0), 0.5, TOL )
        equivalent( quantile(rho,0.975), 1.0 + 2.0*1.959963984540054, 1E-7 )
        equivalent( rho.mass(), 1.0, 1E-6 )

    def test_chi2(self):
        rho = analytic_density('chi2_1')
        equivalent( rho.cdf(1.0), math.erf(math.sqrt(0.5)), TOL )
        equivalent( rho.pdf(1.0), math.exp(-0.5)/math.sqrt(2*math.pi), TOL )
        self.assertEqual( rho.pdf(-1.0), 0.0 )
        self.assertEqual( rho.support[0], 0.0 )
        self.assertEqual( rho.singularities, ((0.0,0.5),) )
        equivalent( quantile(rho,math.erf(math.sqrt(0.5))), 1.0, 1E-7 )

    def test_power_image(self):
        # x^2 of a standard normal is chi-squared with one degree of freedom
        p = analytic_density('power_image',k=2)
        q = analytic_density('chi2_1')
        for t in (0.1,1.0,4.0):
            equivalent( p.pdf(t), q.pdf(t), 1E-13 )
            equivalent( p.cdf(t), q.cdf(t), 1E-13 )

        # the cube is odd, so P(X^3 <= 8) = P(X <= 2)
        p = analytic_density('power_image',k=3)
        equivalent( p.cdf(8.0), special.ndtr(2.0), TOL )
        equivalent( p.cdf(-8.0), special.ndtr(-2.0), TOL )
        equivalent( p.pdf(8.0), math.exp(-2.0)*2.0/(3.0*8.0)/math.sqrt(2*math.pi), TOL )

        # scale and shift
        p = analytic_density('power_image',k=1,scale=-2.0,shift=3.0)
        equivalent( p.pdf(3.0), 1.0/(2.0*math.sqrt(2*math.pi)), TOL )
        equivalent( p.cdf(1.0), special.ndtr(-1.0), TOL )

        p = analytic_density('power_image',k=3,absolute=True)
        equivalent( p.cdf(8.0), math.erf(2.0/math.sqrt(2.0)), TOL )
        self.assertEqual( p.pdf(-1.0), 0.0 )

    def test_uniform(self):
        rho = analytic_density('uniform',a=-1.0,b=3.0)
        self.assertEqual( rho.pdf(0.0), 0.25 )
        self.assertEqual( rho.pdf(3.5), 0.0 )
        equivalent( rho.cdf(1.0), 0.5, TOL )
        equivalent( rho.mass(), 1.0, 1E-12 )

    def test_bad_parameters(self):
        self.assertRaises(ConfigurationError,analytic_density,'cauchy')
        self.assertRaises(ConfigurationError,analytic_density,'gaussian',sd=0.0)
        self.assertRaises(ConfigurationError,analytic_density,'gaussian',sigma=1.0)
        self.assertRaises(ConfigurationError,analytic_density,'uniform',a=1.0,b=1.0)
        self.assertRaises(ConfigurationError,analytic_density,'power_image',k=0)
        self.assertRaises(ConfigurationError,analytic_density,'power_image',k=2.5)
        self.assertRaises(ConfigurationError,analytic_density,'power_image',k=2,scale=0.0)

#-----------------------------------------------------
class TestEmpirical(unittest.TestCase):

    def test_sample(self):
        e = EmpiricalSample1D([3.0,1.0,2.0,2.0])
        self.assertEqual( len(e), 4 )
        equivalent_sequence( e.values, [1.0,2.0,2.0,3.0] )
        self.assertEqual( e.cdf(0.5), 0.0 )
        self.assertEqual( e.cdf(2.0), 0.75 )
        self.assertEqual( e.fraction_within(2.0,2.0), 0.5 )
        self.assertEqual( e.fraction_within(1.5,5.0), 0.75 )
        self.assertEqual( e.fraction_within(4.0,5.0), 0.0 )

    def test_bad_values(self):
        self.assertRaises(ConfigurationError,EmpiricalSample1D,[1.0])
        self.assertRaises(ConfigurationError,EmpiricalSample1D,[1.0,np.inf])

    def test_histogram(self):
        s = SeededStream(31)
        values = pushforward_samples(parse('x1'),gaussian(dim=1),100000,s)
        self.assertEqual( values.count, 100000 )
        rho = estimate_density(values,bins=50)
        self.assertEqual( rho.source, 'histogram' )
        self.assertEqual( rho.count, 52 )
        equivalent( rho.mass(), 1.0, 1E-12 )
        self.assertTrue( abs(rho.pdf(0.0) - 1.0/math.sqrt(2*math.pi)) < 0.03 )
        # about 0.05% of the sample is trimmed from each tail
        equivalent( rho.support[0], -3.29, 0.1 )
        equivalent( rho.support[1], 3.29, 0.1 )

    def test_histogram_errors(self):
        self.assertRaises(ConfigurationError,estimate_density,np.arange(999.0))
        self.assertRaises(DegeneracyError,estimate_density,np.ones(2000))
        self.assertRaises(ConfigurationError,estimate_density,np.arange(2000.0),0)

#-----------------------------------------------------
class TestOracleFor(unittest.TestCase):

    def test_gaussian_cases(self):
        m = gaussian(mean=[0.5],cov=[[4.0]])
        rho = oracle_for(parse('3*x1 - 1'),m)
        self.assertEqual( rho.source, 'gaussian' )
        equivalent( rho.law.params['mean'], 0.5, TOL )
        equivalent( rho.law.params['sd'], 6.0, TOL )

        rho = oracle_for(parse('x1^2 + 1'),gaussian(dim=1))
        self.assertEqual( rho.source, 'power_image' )
        equivalent( rho.cdf(2.0), math.erf(math.sqrt(0.5)), TOL )

        rho = oracle_for(parse('x1^3'),gaussian(cov=4.0,dim=1))
        equivalent( rho.law.params['scale'], 8.0, TOL )

    def test_uniform_case(self):
        rho = oracle_for(parse('-x1'),uniform_box(center=[1.0],half_widths=[2.0]))
        self.assertEqual( rho.source, 'uniform' )
        self.assertEqual( rho.support, (-3.0,1.0) )

    def test_no_oracle(self):
        self.assertTrue( oracle_for(parse('x1*x2'),gaussian(dim=2)) is None )
        self.assertTrue( oracle_for(parse('x1^2'),gaussian(mean=[1.0])) is None )
        self.assertTrue( oracle_for(parse('x1 + x1^2'),gaussian(dim=1)) is None )
        self.assertTrue( oracle_for(parse('x1^2'),uniform_box(side=[1.0])) is None )

if(__name__ == '__main__'):
    unittest.main()

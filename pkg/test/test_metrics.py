import unittest
import math
import warnings

import numpy as np
from scipy import special

from LCS.metrics import (
    common_grid,
    tv_distance,
    fm_certificate,
    fm_distance,
    w1_distance,
    shift_modulus,
    besov_fit,
    lp_norm,
    lp_difference,
    interval_mass,
    window_modulus,
    window_fit,
)
from LCS.pushforward import Density1D, EmpiricalSample1D, analytic_density, pushforward_samples
from LCS.polynomial import parse
from LCS.measure import uniform_box
from LCS.sampler import SeededStream
from LCS.errors import (
    ConfigurationError,
    DegeneracyError,
    EstimationError,
    RangeError,
    GridWarning,
    DivergenceWarning,
)

from testing_tools import *

TOL = 1E-13

def triangle(left):
    return Density1D(left,1.0,[0.0,1.0,0.0])

#-----------------------------------------------------
class TestTotalVariation(unittest.TestCase):

    def test_gaussian_pair(self):
        rho1 = analytic_density('gaussian')
        rho2 = analytic_density('gaussian',mean=1.0)
        equivalent( tv_distance(rho1,rho2), 2.0*(2.0*special.ndtr(0.5) - 1.0), 1E-9 )
        self.assertEqual( tv_distance(rho1,rho1), 0.0 )

    def test_disjoint(self):
        rho1 = analytic_density('uniform',a=0,b=1)
        rho2 = analytic_density('uniform',a=2,b=3)
        equivalent( tv_distance(rho1,rho2), 2.0, 1E-9 )

    def test_grid(self):
        # overlapping triangles share mass 1/4
        equivalent( tv_distance(triangle(0.0),triangle(1.0)), 1.5 )
        equivalent( tv_distance(triangle(0.0),triangle(0.0)), 0.0 )
        equivalent( tv_distance(triangle(0.0),triangle(5.0)), 2.0 )

    def test_common_grid(self):
        rho1 = triangle(0.0)
        rho2 = Density1D(1.0,0.5,[0.0,1.0,1.0,0.0],source='csv')
        nodes,(v1,v2),(in1,in2) = common_grid(rho1,rho2)
        equivalent_sequence( nodes, [0.0,0.5,1.0,1.5,2.0,2.5] )
        equivalent_sequence( v1, [0.0,0.5,1.0,0.5,0.0,0.0] )
        equivalent_sequence( v2, [0.0,0.0,0.0,1.0,1.0,0.0] )
        self.assertEqual( in1.tolist(), [True,True,True,True,False] )
        self.assertEqual( in2.tolist(), [False,False,True,True,True] )

    def test_not_a_density(self):
        self.assertRaises(ConfigurationError,tv_distance,[0.0,1.0],triangle(0.0))

#-----------------------------------------------------
class TestFortetMourier(unittest.TestCase):

    def test_disjoint_uniforms(self):
        rho1 = analytic_density('uniform',a=0,b=1)
        rho2 = analytic_density('uniform',a=2,b=3)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore',GridWarning)
            fm = fm_certificate(rho1,rho2)
        # phi = 1 on [0, 0.5], falling with slope 1 to -1 at 2.5
        equivalent( fm.value, 1.75, 1E-3 )
        equivalent( fm.w1, 2.0, 1E-6 )
        self.assertTrue( np.all( np.abs(fm.phi) <= 1.0 ) )
        step = fm.nodes[1] - fm.nodes[0]
        self.assertTrue( np.all( np.abs(np.diff(fm.phi)) <= step + 1E-6 ) )

    def test_bounds(self):
        rho1 = analytic_density('gaussian')
        rho2 = analytic_density('gaussian',mean=1.0)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore',GridWarning)
            fm = fm_distance(rho1,rho2)
        self.assertTrue( 0.0 < fm )
        self.assertTrue( fm <= tv_distance(rho1,rho2) + 1E-6 )
        self.assertTrue( fm <= w1_distance(rho1,rho2) + 1E-6 )

    def test_small_shift(self):
        # the optimal test function is close to clip(t, -1, 1)
        rho1 = analytic_density('gaussian')
        rho2 = analytic_density('gaussian',mean=0.1)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore',GridWarning)
            fm = fm_distance(rho1,rho2)
        equivalent( fm, 0.0683, 1E-3 )

    def test_same_law(self):
        rho = analytic_density('gaussian')
        self.assertEqual( fm_distance(rho,rho), 0.0 )

    def test_empirical(self):
        nu1 = EmpiricalSample1D([0.0,1.0])
        nu2 = EmpiricalSample1D([0.5,1.5])
        equivalent( w1_distance(nu1,nu2), 0.5, TOL )
        with warnings.catch_warnings():
            warnings.simplefilter('ignore',GridWarning)
            fm = fm_distance(nu1,nu2)
        # no more than the transport cost
        self.assertTrue( 0.0 < fm <= 0.5 + 1E-6 )

    def test_degenerate(self):
        nu = EmpiricalSample1D([1.0,1.0])
        self.assertRaises(DegeneracyError,fm_distance,nu,nu)

#-----------------------------------------------------
class TestShiftModulus(unittest.TestCase):

    def test_oracles(self):
        equivalent( shift_modulus(analytic_density('uniform'),0.1), 0.2, 1E-12 )
        equivalent( shift_modulus(analytic_density('uniform'),-0.1), 0.2, 1E-12 )
        equivalent( shift_modulus(analytic_density('uniform'),3.0), 2.0, 1E-12 )
        equivalent(
            shift_modulus(analytic_density('gaussian'),0.5),
            2.0*(2.0*special.ndtr(0.25) - 1.0), 1E-10
        )
        self.assertEqual( shift_modulus(analytic_density('gaussian'),0.0), 0.0 )

    def test_grid(self):
        equivalent( shift_modulus(triangle(0.0),1.0), 1.5 )
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            equivalent( shift_modulus(triangle(0.0),0.7), 1.5 )
        self.assertTrue( any( issubclass(x.category,GridWarning) for x in w ) )
        self.assertRaises(ConfigurationError,shift_modulus,triangle(0.0),np.inf)

    def test_besov_uniform(self):
        fit = besov_fit(analytic_density('uniform'),1.0)
        self.assertEqual( fit.h.size, 10 )
        equivalent( fit.slope, 1.0, 1E-8 )
        equivalent( fit.seminorm, 2.0, 1E-8 )
        self.assertEqual( fit.alpha, 1.0 )

    def test_besov_exponents(self):
        # a square-root singularity gives the exponent 1/2
        fit = besov_fit(analytic_density('chi2_1'),0.5)
        self.assertTrue( abs(fit.slope - 0.5) < 0.05 )
        self.assertTrue( math.isfinite(fit.seminorm) )

        fit = besov_fit(analytic_density('gaussian'),1.0)
        self.assertTrue( abs(fit.slope - 1.0) < 0.01 )
        equivalent( fit.seminorm, 2.0/math.sqrt(2*math.pi), 1E-3 )

    def test_besov_errors(self):
        rho = analytic_density('uniform')
        self.assertRaises(RangeError,besov_fit,rho,0.0)
        self.assertRaises(RangeError,besov_fit,rho,1.5)
        self.assertRaises(EstimationError,besov_fit,rho,1.0,[0.01,0.02,0.03])

    def test_besov_supremum(self):
        # Delta(h)/h^(1/2) peaks near h = 3, far above the fitted shifts
        fit = besov_fit(analytic_density('gaussian'),0.5)
        h = np.logspace(-2,2,400001)
        ref = float(np.max( 2.0*(2.0*special.ndtr(0.5*h) - 1.0)/np.sqrt(h) ))
        equivalent( fit.seminorm, ref, 1E-5 )
        self.assertTrue( fit.seminorm > 5.0*np.max(fit.delta/np.sqrt(fit.h)) )

    def test_besov_grid_shifts(self):
        # 41 nodes on [0, 4]: shifts must lie in [0.1, 1]
        values = 0.5*np.concatenate([ np.linspace(0.0,1.0,21), np.linspace(1.0,0.0,21)[1:] ])
        rho = Density1D(0.0,0.1,values)
        self.assertRaises(RangeError,besov_fit,rho,0.5,[0.05,0.1,0.2,0.3,0.4,0.5])
        self.assertRaises(RangeError,besov_fit,rho,0.5,[0.1,0.2,0.3,0.4,0.5,2.0])

        fit = besov_fit(rho,1.0,[0.1,0.2,0.3,0.4,0.5,0.6,0.8,1.0])
        self.assertEqual( fit.h.size, 8 )
        self.assertTrue( 0.9 < fit.seminorm <= 1.0 + 1E-9 )

#-----------------------------------------------------
class TestLp(unittest.TestCase):

    def test_norms(self):
        equivalent( lp_norm(analytic_density('gaussian'),2), (0.5/math.sqrt(math.pi))**0.5, 1E-9 )
        equivalent( lp_norm(analytic_density('uniform',a=0,b=2),3), 0.25**(1.0/3.0), 1E-9 )
        equivalent( lp_norm(analytic_density('chi2_1'),1), 1.0, 1E-8 )
        equivalent( lp_norm(triangle(0.0),1), 1.0 )
        # int t^2 over [0, 1], twice
        equivalent( lp_norm(triangle(0.0),2), math.sqrt(2.0/3.0), 1E-12 )

    def test_divergence(self):
        rho = analytic_density('chi2_1')
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            self.assertEqual( lp_norm(rho,2), math.inf )
        self.assertTrue( any( issubclass(x.category,DivergenceWarning) for x in w ) )
        self.assertTrue( math.isfinite( lp_norm(rho,1.5) ) )

    def test_difference(self):
        rho1 = analytic_density('gaussian')
        rho2 = analytic_density('gaussian',mean=1.0)
        equivalent( lp_difference(rho1,rho2,1), tv_distance(rho1,rho2), 1E-9 )
        self.assertEqual( lp_difference(rho1,rho1,2), 0.0 )
        equivalent( lp_difference(triangle(0.0),triangle(1.0),1), 1.5 )

    def test_bad_p(self):
        rho = analytic_density('gaussian')
        self.assertRaises(RangeError,lp_norm,rho,0.5)
        self.assertRaises(RangeError,lp_norm,rho,math.inf)
        self.assertRaises(ConfigurationError,lp_norm,rho,'2')
        self.assertRaises(ConfigurationError,lp_norm,rho,True)

    def test_interval_mass(self):
        rho = analytic_density('gaussian')
        equivalent( interval_mass(rho,-1.0,1.0), math.erf(math.sqrt(0.5)), TOL )
        equivalent( interval_mass(rho,1.0,-1.0), math.erf(math.sqrt(0.5)), TOL )
        equivalent( interval_mass(triangle(0.0),0.0,1.0), 0.5 )

#-----------------------------------------------------
class TestWindows(unittest.TestCase):

    def test_modulus(self):
        nu = EmpiricalSample1D([0.0,0.1,0.2,5.0])
        self.assertEqual( window_modulus(nu,0.25), 1.5 )
        self.assertEqual( window_modulus(nu,0.05), 0.5 )
        self.assertEqual( window_modulus(nu,10.0), 2.0 )
        self.assertRaises(ConfigurationError,window_modulus,triangle(0.0),0.1)
        self.assertRaises(ConfigurationError,window_modulus,nu,np.nan)

    def test_uniform_fit(self):
        nu = pushforward_samples(parse('x1'),uniform_box(side=[1.0]),100000,SeededStream(9))
        fit = window_fit(nu,1.0)
        self.assertEqual( fit.h.size, 10 )
        self.assertTrue( abs(fit.slope - 1.0) < 0.15 )
        self.assertTrue( 1.8 < fit.seminorm < 3.0 )

    def test_errors(self):
        nu = EmpiricalSample1D(np.ones(100))
        self.assertRaises(DegeneracyError,window_fit,nu,0.5)
        nu = EmpiricalSample1D(np.arange(100.0))
        self.assertRaises(RangeError,window_fit,nu,0.0)
        self.assertRaises(EstimationError,window_fit,nu,0.5,[1.0,2.0])

if(__name__ == '__main__'):
    unittest.main()

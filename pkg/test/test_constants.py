import unittest
import math

from LCS import constants
from LCS.errors import ConfigurationError, RangeError
from LCS.sampler import SeededStream

from testing_tools import *

TOL = 1E-12

#-----------------------------------------------------
class TestClosedForms(unittest.TestCase):

    def test_c_n_tau(self):
        equivalent( constants.c_n_tau(1,1), 1.0 + math.exp(-1.0), TOL )
        equivalent( constants.c_n_tau(2,1), 1.0 + 4.0*math.exp(-1.0), TOL )
        for n,tau in [(1,0.5),(2,2.0),(3,1.0),(5,0.1)]:
            equivalent(
                constants.c_n_tau(n,tau),
                constants.c_n_tau_crosscheck(n,tau),
                1E-9*constants.c_n_tau(n,tau)
            )

    def test_c2_d(self):
        equivalent( constants.c2_d(1), 0.5*(1.0 + 3.0*math.pi), TOL )
        equivalent( constants.c2_d(2), 0.5*(1.0 + 6.0*math.pi), TOL )

    def test_c1_integral(self):
        equivalent( constants.c1_integral(2), math.pi/2.0, TOL )
        for d in (2,3,4,8):
            equivalent(
                constants.c1_integral(d),
                constants.c1_integral_crosscheck(d),
                1E-9
            )
        # the integrand is s^(1/(2d-2))/(s+1)^2, so the integral tends to 1
        self.assertTrue( constants.c1_integral(50) < constants.c1_integral(2) )

    def test_C_nd(self):
        equivalent( constants.C_nd(2,2), 2.0/math.pi, TOL )
        equivalent( constants.C_nd(3,2), 0.5, TOL )
        equivalent( constants.C_nd(1,3), 1.0, TOL )
        for n,d in [(2,3),(4,2),(5,4)]:
            equivalent(
                constants.C_nd(n,d),
                constants.C_nd_crosscheck(n,d),
                1E-8
            )

    def test_C_nd_montecarlo(self):
        e = constants.C_nd_montecarlo(2,2,200000,SeededStream(3))
        self.assertEqual( e.count, 200000 )
        within_sigma( e, 2.0/math.pi, 5.0 )

    def test_gaussian_abs_moment(self):
        equivalent( constants.gaussian_abs_moment(1), math.sqrt(2.0/math.pi), TOL )
        equivalent(
            constants.gaussian_abs_moment(0.5),
            constants.gaussian_abs_moment_crosscheck(0.5),
            1E-10
        )
        # E Z^2 = 1, E|Z|^4 = 3
        equivalent( constants.normal_abs_moment(2), 1.0, TOL )
        equivalent( constants.normal_abs_moment(4), 3.0, 1E-12 )
        self.assertRaises(RangeError,constants.gaussian_abs_moment,2.0)
        self.assertRaises(RangeError,constants.normal_abs_moment,-1.0)

    def test_lp_constants(self):
        equivalent( constants.C1_dp(2,1.5,1), 6.0**(2.0/3.0), TOL )
        # the d-form agrees with the alpha-form at alpha = 1/d
        for d,p,C in [(2,1.5,1.3),(3,1.2,0.7),(4,1.1,2.0)]:
            equivalent(
                constants.C1_dp(d,p,C),
                constants.lp_constant(1.0/d,p,C),
                1E-12
            )
        # alpha = 1 drops the second term
        equivalent( constants.lp_constant(1.0,2.0,1.0), math.sqrt(2.0), TOL )

    def test_lp_difference_constant(self):
        # tv = 0 gives a zero bound
        self.assertEqual( constants.lp_difference_constant(0.5,1.5,0.0,1.0,1.0), 0.0 )
        e = (1.0 - 1.0/1.5)/0.5
        equivalent(
            constants.lp_difference_constant(0.5,1.5,0.25,1.0,2.0),
            6.0**(1.0/1.5) * 0.25**(1.0 - e) * 3.0**e,
            1E-12
        )
        self.assertRaises(RangeError,constants.lp_difference_constant,0.5,1.5,-0.1,1.0,1.0)

    def test_tv_fm_constants(self):
        self.assertEqual( constants.tv_fm_constant(0,0,0.5), 2.0 )
        equivalent(
            constants.tv_fm_constant(1,1,1),
            2.0 + 2.0*math.sqrt(2.0/math.pi),
            TOL
        )
        self.assertRaises(RangeError,constants.tv_fm_constant,-1,0,0.5)
        equivalent(
            constants.polynomial_tv_fm_constant(1,1,1,1),
            1.0 + 4.0*math.sqrt(2.0/math.pi),
            TOL
        )

    def test_malliavin_dimension_constant(self):
        # c d c1/C(n,d) = pi^2/2 < c2(2)
        equivalent(
            constants.malliavin_dimension_constant(2,2,1.0),
            constants.c2_d(2),
            TOL
        )
        equivalent(
            constants.malliavin_dimension_constant(2,2,10.0),
            10.0*math.pi**2/2.0,
            1E-10
        )

#-----------------------------------------------------
class TestRanges(unittest.TestCase):

    def test_bad_parameters(self):
        self.assertRaises(RangeError,constants.c_n_tau,0,1.0)
        self.assertRaises(RangeError,constants.c_n_tau,1.5,1.0)
        self.assertRaises(RangeError,constants.c_n_tau,1,0.0)
        self.assertRaises(RangeError,constants.c1_integral,1)
        self.assertRaises(RangeError,constants.C1_dp,2,2.0,1.0)
        self.assertRaises(RangeError,constants.C1_dp,2,1.0,1.0)
        self.assertRaises(RangeError,constants.lp_constant,0.0,1.5,1.0)
        self.assertRaises(RangeError,constants.lp_constant,0.5,1.5,0.0)

    def test_range_error_is_a_configuration_error(self):
        self.assertTrue( issubclass(RangeError,ConfigurationError) )
        self.assertTrue( issubclass(RangeError,ValueError) )

#-----------------------------------------------------
class TestRegistry(unittest.TestCase):

    def test_evaluate(self):
        cv = constants.evaluate('c_n_tau',n=1,tau=1)
        self.assertEqual( cv.name, 'c_n_tau' )
        self.assertEqual( cv.params, {'n': 1, 'tau': 1} )
        equivalent( cv.value, 1.0 + math.exp(-1.0), TOL )
        self.assertTrue( cv.crosscheck_error < 1E-10 )

    def test_crosschecks(self):
        cases = [
            ('c1_integral',dict(d=3)),
            ('C_nd',dict(n=3,d=3)),
            ('gaussian_abs_moment',dict(alpha=0.25)),
            ('tv_fm_constant',dict(C_nu=1.0,C_sigma=0.5,alpha=0.5)),
            ('polynomial_tv_fm_constant',dict(C=1.0,sigma_f=2.0,sigma_g=0.5,d=2)),
            ('malliavin_dimension_constant',dict(n=3,d=2,c=5.0)),
            ('C1_dp',dict(d=3,p=1.3,C=0.8)),
            ('lp_constant',dict(alpha=0.4,p=1.2,C=2.0)),
            ('lp_constant',dict(alpha=1.0,p=2.0,C=1.0)),
            ('lp_difference_constant',dict(alpha=0.5,p=1.5,tv=0.25,C_nu=1.0,C_sigma=2.0)),
        ]
        for name,params in cases:
            cv = constants.evaluate(name,**params)
            self.assertTrue( cv.crosscheck_error <= 1E-8*max(1.0,abs(cv.value)), name )

    def test_unknown(self):
        self.assertRaises(ConfigurationError,constants.evaluate,'no_such_constant')
        self.assertRaises(ConfigurationError,constants.evaluate,'c_n_tau',n=1)
        self.assertTrue( 'c_n_tau' in constants.NAMES )

    def test_formula(self):
        f = constants.malliavin_composition(3)
        self.assertEqual( f.symbols, ('c','C1') )
        equivalent( f.evaluate(c=1.0,C1=2.0), 18.0, TOL )
        self.assertRaises(ConfigurationError,f.evaluate,c=1.0)
        self.assertRaises(ConfigurationError,f.evaluate,c=1.0,C1=1.0,C2=1.0)
        self.assertTrue( str(f).startswith('C(3) = ') )

#============================================================================
if(__name__== '__main__'):

    unittest.main()    # Runs all test methods starting with 'test'

import unittest
import math

import numpy as np

from LCS import polynomial
from LCS.polynomial import Polynomial, parse, evaluate, gradient, directional, moments
from LCS.measure import gaussian, uniform_box
from LCS.sampler import SeededStream
from LCS.errors import ConfigurationError, ParseError

from testing_tools import *

TOL = 1E-13

#-----------------------------------------------------
class TestParse(unittest.TestCase):

    def test_terms(self):
        f = parse('x1^2 + 2*x1*x2 - 3')
        self.assertEqual( f.terms, {(2,): 1.0, (1,1): 2.0, (): -3.0} )
        self.assertEqual( f.nvars, 2 )
        self.assertEqual( f.degree, 2 )
        self.assertEqual( len(f), 3 )

    def test_like_terms_merge(self):
        self.assertEqual( parse('x1 + x1'), parse('2*x1') )
        self.assertEqual( str(parse('x1 - x1')), '0' )
        self.assertEqual( parse('x1*x1*x2^0'), parse('x1^2') )
        self.assertTrue( parse('5').is_constant() )

    def test_numbers(self):
        f = parse('-1.5e2*x3 + .25')
        self.assertEqual( f.terms, {(0,0,1): -150.0, (): 0.25} )
        self.assertEqual( f.nvars, 3 )

    def test_round_trip(self):
        for text in ['x1^2 + 2*x1*x2 - 3','-x1^4 + 0.5*x2','7','x1*x2*x3 - x2^3']:
            f = parse(text)
            self.assertEqual( parse(str(f)), f )

    def test_errors(self):
        cases = [
            ('x1^^2',3),
            ('x0',1),
            ('',0),
            ('x1 + ',5),
            ('2^3',1),
            ('x1 $ x2',3),
            ('x1^1.5',3),
        ]
        for text,position in cases:
            with self.assertRaises(ParseError) as cm:
                parse(text)
            self.assertEqual( cm.exception.position, position, text )
        self.assertRaises(ConfigurationError,parse,None)

    def test_parse_error_is_a_value_error(self):
        self.assertRaises(ValueError,parse,'x')

#-----------------------------------------------------
class TestEvaluate(unittest.TestCase):

    def test_points(self):
        f = parse('x1^2 + 2*x1*x2 - 3')
        equivalent( f([1.0,2.0]), 2.0, TOL )
        equivalent( evaluate(f,[0.5,-1.0,9.0]), 0.25 - 1.0 - 3.0, TOL )
        X = np.array([[1.0,2.0],[0.0,0.0],[-1.0,1.0]])
        equivalent_sequence( f(X), [2.0,-3.0,-4.0], TOL )

    def test_too_few_variables(self):
        f = parse('x1*x2')
        self.assertRaises(ConfigurationError,f,[1.0])

    def test_gradient(self):
        f = parse('x1^2 + x2^2')
        equivalent_sequence( gradient(f,[1.0,2.0]), [2.0,4.0], TOL )
        G = gradient(parse('x1*x2'),np.array([[1.0,2.0],[3.0,4.0]]))
        equivalent_matrix( G, [[2.0,1.0],[4.0,3.0]], TOL )

    def test_directional(self):
        self.assertEqual( directional(parse('x1^3'),[1.0]), parse('3*x1^2') )
        self.assertEqual( directional(parse('x1*x2'),[1.0,1.0]), parse('x1 + x2') )
        self.assertEqual( directional(parse('x1^2'),[0.0,1.0]), Polynomial() )

    def test_partial(self):
        f = parse('x1^2*x2 + x2^3')
        self.assertEqual( f.partial(0), parse('2*x1*x2') )
        self.assertEqual( f.partial(1), parse('x1^2 + 3*x2^2') )

    def test_univariate(self):
        c = parse('x1^3 - 2*x1 + 1').univariate_coefficients()
        equivalent_sequence( c, [1.0,0.0,-2.0,1.0], TOL )
        self.assertRaises(ConfigurationError,parse('x1*x2').univariate_coefficients)

    def test_monomial_power(self):
        self.assertEqual( parse('3*x1^4 + 2').monomial_power(), (3.0,4,2.0) )
        self.assertEqual( parse('x1').monomial_power(), (1.0,1,0.0) )
        self.assertEqual( parse('x1 + x1^2').monomial_power(), None )
        self.assertEqual( parse('x2^2').monomial_power(), None )

    def test_quadratic_form(self):
        c,b,A = parse('1 + x1 + x1^2 + 4*x1*x2').quadratic_form()
        equivalent( c, 1.0, TOL )
        equivalent_sequence( b, [1.0,0.0], TOL )
        equivalent_matrix( A, [[1.0,2.0],[2.0,0.0]], TOL )
        self.assertRaises(ConfigurationError,parse('x1^3').quadratic_form)

#-----------------------------------------------------
class TestMoments(unittest.TestCase):

    def test_gaussian_exact(self):
        pm = moments(parse('x1^2'),gaussian(dim=1),'quadrature')
        equivalent( pm.mean, 1.0, 1E-12 )
        equivalent( pm.variance, 2.0, 1E-12 )

        pm = moments(parse('x1'),gaussian(dim=1),'quadrature',q_list=(0,1,2))
        self.assertEqual( pm.method, 'exact' )
        equivalent( pm.norms[1.0].value, math.sqrt(2.0/math.pi), 1E-12 )
        equivalent( pm.norms[2.0].value, 1.0, 1E-12 )
        equivalent(
            pm.norms[0.0].value,
            math.exp(-0.5*(np.euler_gamma + math.log(2.0))),
            1E-12
        )

    def test_quadrature(self):
        m = uniform_box(half_widths=[1.0])
        pm = moments(parse('x1^2'),m,'quadrature',q_list=(1,2))
        self.assertEqual( pm.method, 'quadrature' )
        equivalent( pm.mean, 1.0/3.0, 1E-10 )
        equivalent( pm.variance, 4.0/45.0, 1E-10 )
        equivalent( pm.norms[1.0].value, 1.0/3.0, 1E-10 )
        equivalent( pm.norms[2.0].value, math.sqrt(0.2), 1E-10 )

    def test_montecarlo(self):
        m = uniform_box(side=[1.0,1.0])
        pm = moments(parse('x1 + x2'),m,100000,SeededStream(5),q_list=(2,))
        self.assertEqual( pm.method, 'montecarlo' )
        within_sigma( polynomial.Estimate(pm.mean,pm.mean_u,0), 0.0, 5.0 )
        within_sigma( polynomial.Estimate(pm.variance,pm.variance_u,0), 1.0/6.0, 5.0 )

    def test_reproducible(self):
        m = gaussian(dim=2)
        f = parse('x1^3 + x1*x2')
        a = moments(f,m,20000,SeededStream(9))
        b = moments(f,m,20000,SeededStream(9))
        self.assertEqual( a.mean, b.mean )
        self.assertEqual( a.variance, b.variance )

    def test_errors(self):
        m = gaussian(dim=1)
        self.assertRaises(ConfigurationError,moments,parse('x1*x2'),m,'quadrature')
        self.assertRaises(ConfigurationError,moments,parse('x1^3'),m,1000)
        self.assertRaises(ConfigurationError,moments,parse('x1^3'),m,1,SeededStream(1))
        self.assertRaises(ConfigurationError,moments,parse('x1^3'),m,'quadrature',None,(-1,))
        self.assertRaises(ConfigurationError,moments,parse('x1^3'),gaussian(dim=2),'quadrature')

#============================================================================
if(__name__== '__main__'):

    unittest.main()    # Runs all test methods starting with 'test'

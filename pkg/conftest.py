"""
Injects LCS in to the doctest namespace for pytest.
"""
import numpy as _np
import pytest

if _np.lib.NumpyVersion(_np.__version__) >= '2.0.0':
    # doctests were written against the numpy 1.x scalar repr
    _np.set_printoptions(legacy='1.25')

from LCS import *


@pytest.fixture(autouse=True)
def add_lcs(doctest_namespace):
    for key, val in globals().items():
        if key.startswith('_'):
            continue
        doctest_namespace[key] = val

#!/usr/bin/env python3
"""
Pytest configuration and fixtures for the monobs tests.
"""

import pytest
import sys
import os

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from monobs.core.ideal import MonomialIdeal


@pytest.fixture
def ex1_n3():
    """Edge ideal of the triangle: (X1X2, X1X3, X2X3)."""
    return MonomialIdeal.of([(1, 1, 0), (1, 0, 1), (0, 1, 1)])


@pytest.fixture
def ex2():
    """(X^2YZ, XY^2Z, XYZ^2)."""
    return MonomialIdeal.of([(2, 1, 1), (1, 2, 1), (1, 1, 2)])


@pytest.fixture
def ex3():
    """Products of three out of four variables."""
    return MonomialIdeal.of([(0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)])


@pytest.fixture
def x_squared():
    return MonomialIdeal.of([(2,)])


@pytest.fixture
def maximal3():
    return MonomialIdeal.maximal(3)


@pytest.fixture
def ex2_bpoly_text():
    return "-3/4,-5/4,-3/2,-1:3"

#!/usr/bin/env python3
"""
Acceptance computations over the shipped ideal corpus.

These run the full root extraction on every shipped ideal and take minutes;
deselect them with `pytest -m "not slow"`.
"""

import json
import math
from fractions import Fraction

import pytest

from monobs.cli.inputs import load_ideal
from monobs.cli.main import main
from monobs.config.settings import BFUNCTIONS_PATH
from monobs.core.gamma import roots_gamma
from monobs.core.ideal import MonomialIdeal
from monobs.core.roots import BPolynomial, root_classes, roots_charp, roots_mod_Z, verify_prop1
from monobs.core.thresholds import lct, quasi_linear_law

pytestmark = pytest.mark.slow

F = Fraction

CORPUS = ["ex1_n3", "ex1_n4", "ex1_n5", "ex2", "ex3", "x_squared"]


@pytest.fixture(scope="module")
def bfunctions():
    with open(BFUNCTIONS_PATH) as f:
        return {name: BPolynomial.parse(text) for name, text in json.load(f).items()}


@pytest.fixture(scope="module")
def charp_roots():
    return {name: roots_charp(load_ideal(name)).roots for name in CORPUS}


def test_ex2_both_methods(charp_roots):
    expected = {F(-3, 4), F(-1), F(-5, 4), F(-3, 2)}
    assert set(charp_roots["ex2"]) == expected
    assert set(roots_gamma(load_ideal("ex2"))) == expected


def test_ex3(charp_roots):
    assert set(charp_roots["ex3"]) == {F(-4, 3), F(-3, 2), F(-5, 3), F(-2)}


@pytest.mark.parametrize("name", ["ex1_n3", "ex1_n4", "ex1_n5"])
def test_ex1_family(name, charp_roots, bfunctions):
    assert set(charp_roots[name]) == set(bfunctions[name].roots)


@pytest.mark.parametrize("name", CORPUS)
def test_classes_match_facets(name, charp_roots):
    assert root_classes(charp_roots[name]) == roots_mod_Z(load_ideal(name))


@pytest.mark.parametrize("name", CORPUS)
def test_largest_root_is_minus_lct(name, charp_roots):
    assert max(charp_roots[name]) == -lct(load_ideal(name))


@pytest.mark.parametrize("name", ["ex1_n4", "ex3"])
def test_congruence(name, bfunctions):
    a = load_ideal(name)
    J = MonomialIdeal.maximal(a.nvars)
    for p in (5, 7, 11, 13):
        assert verify_prop1(a, J, p, 1, bfunctions[name])


@pytest.mark.parametrize("name", CORPUS)
def test_gamma_agrees_with_charp(name, charp_roots, bfunctions):
    oracle = set(roots_gamma(load_ideal(name)))
    assert oracle == set(charp_roots[name])
    assert oracle == set(bfunctions[name].roots)


def test_ex2_law_intercepts_are_roots(charp_roots):
    law = quasi_linear_law(load_ideal("ex2"), MonomialIdeal.maximal(3))
    units = [j for j in law.intercepts if math.gcd(j, law.modulus) == 1]
    assert units == [1, 5, 7, 11]
    for j in units:
        assert law.intercepts[j] in charp_roots["ex2"]


def test_roots_both_cli(capsys):
    assert main(["roots", "--ideal", "ex2", "--method", "both"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"roots": ["-3/4", "-1", "-5/4", "-3/2"], "agreement": True}


def test_selftest_agreement_criterion(capsys):
    assert main(["selftest", "--criteria", "10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in doc["criteria"]] == [10]


def test_selftest_fault_is_detected(capsys):
    assert main(["selftest", "--criteria", "4", "--inject-fault", "facet-modulus"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is False


def test_selftest_mod_z_criterion(capsys):
    assert main(["selftest", "--criteria", "4,5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in doc["criteria"]] == [4, 5]

"""
Tests for Bowen-Franks presentations, the dimension module and isomorphism certificates
"""
import random

import numpy as np
import pytest
from sympy import Matrix

from config.settings import CERTS_PATH
from controllers.file_parser import FileParser
from models.bfmod import (
    DimensionModule, IsoCertificate, NotFoundWithinBounds, Positivity, bf_dual, bf_graded, bf_of_dual_graph_check,
    bf_ungraded, canonicalize, is_positive, search_pointed_iso, sigma, verify_hom_certificate,
    verify_iso_certificate,
)
from models.errors import InvalidBounds, NonRegularGraph, NotEssential, StageCapExceeded
from models.graph import Graph
from models.integer_matrices import integer_kernel, integer_solve, smith_normal_form, verify_snf
from tests.conftest import ESSENTIAL_GRAPHS


@pytest.mark.parametrize("name, n", [("rose2", 2), ("rose3", 3)])
def test_graded_presentation_of_roses(graph, name, n):
    presentation = bf_graded(graph(name))
    assert presentation.relations == Matrix([[1 - n * sigma]])
    assert presentation.to_record()['relations'] == [[str(1 - n * sigma)]]


def test_graded_presentation_skips_sinks(graph):
    presentation = bf_graded(graph("toeplitz"))
    assert presentation.relations.shape == (2, 1)
    assert presentation.relations == Matrix([[1 - sigma], [-sigma]])


@pytest.mark.parametrize("name, expected", [
    ("rose2", "0"),
    ("rose3", "Z/2"),
    ("fibonacci", "0"),
    ("cycle2", "Z^1"),
])
def test_ungraded_groups(graph, name, expected):
    assert bf_ungraded(graph(name)).describe() == expected


def test_ungraded_needs_regular_graph(graph):
    with pytest.raises(NonRegularGraph):
        bf_ungraded(graph("toeplitz"))


@pytest.mark.parametrize("name", ESSENTIAL_GRAPHS)
def test_dual_presentation_matches_dual_graph(graph, name):
    assert bf_of_dual_graph_check(graph(name))
    assert bf_dual(graph(name)).dual


def test_dual_check_needs_essential_graph(graph):
    with pytest.raises(NotEssential):
        bf_of_dual_graph_check(graph("source"))


def test_smith_normal_form_on_random_matrices():
    rng = random.Random(7)
    for _ in range(1000):
        m = np.array([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)], dtype=object)
        u, d, v = smith_normal_form(m)
        assert verify_snf(m, u, d, v)


def test_integer_kernel_and_solve():
    m = np.array([[1, -1], [-1, 1]], dtype=object)
    kernel = integer_kernel(m)
    assert kernel.shape == (2, 1)
    assert not m.dot(kernel).any()
    assert integer_solve(np.array([[2]], dtype=object), [3]) is None
    assert list(integer_solve(np.array([[2]], dtype=object), [4])) == [2]


# Dimension module

def test_connecting_map_identifies_stages(rose2):
    module = DimensionModule(rose2)
    assert module.element([2], 1) == module.order_unit()
    assert module.element([1], 1) != module.order_unit()
    assert canonicalize(module.element([4], 2)).describe() == "(1) @ 0"


def test_difference_vanishing_in_the_limit(j2):
    module = DimensionModule(j2)
    x = module.element([1, -1])
    assert x == module.zero()
    assert is_positive(x) == Positivity.ZERO


def test_positivity(fibonacci):
    module = DimensionModule(fibonacci)
    assert is_positive(module.order_unit()) == Positivity.POSITIVE
    assert is_positive(module.element([1, -1])) == Positivity.POSITIVE
    assert is_positive(module.element([-1, 1])) == Positivity.NOT_POSITIVE


def _fibonacci_numbers(count):
    numbers = [0, 1]
    while len(numbers) < count:
        numbers.append(numbers[-1] + numbers[-2])
    return numbers


def test_perron_pairing_certifies_non_positive(fibonacci):
    # <(phi, 1), (F100, -F101)> = -psi^100 < 0 while every iterate within the cap has mixed signs
    fib = _fibonacci_numbers(103)
    module = DimensionModule(fibonacci)
    x = module.element([fib[100], -fib[101]])
    assert module.perron_pairing(x) == -1
    assert is_positive(x) == Positivity.NOT_POSITIVE
    assert is_positive(module.element([-fib[101], fib[102]])) == Positivity.NOT_POSITIVE


def test_positive_pairing_beyond_the_cap_is_undecided(fibonacci):
    fib = _fibonacci_numbers(102)
    x_vector = [-fib[100], fib[101]]
    module = DimensionModule(fibonacci)
    assert module.perron_pairing(module.element(x_vector)) == 1
    assert is_positive(module.element(x_vector)) == Positivity.UNDECIDED
    wide = DimensionModule(fibonacci, stage_cap=128)
    assert is_positive(wide.element(x_vector)) == Positivity.POSITIVE


def test_class_without_perron_component_is_not_positive():
    g = Graph.build("D", ["p", "q"], [("a", "p", "p"), ("b", "p", "p"), ("c", "p", "q"),
                                      ("d", "q", "p"), ("e", "q", "q"), ("f", "q", "q")])
    module = DimensionModule(g)
    x = module.element([1, -1])
    assert module.perron_pairing(x) == 0
    assert x != module.zero()
    assert is_positive(x) == Positivity.NOT_POSITIVE
    assert is_positive(module.element([2, -1])) == Positivity.POSITIVE


def test_stage_cap_is_reported(rose2):
    module = DimensionModule(rose2, stage_cap=0)
    with pytest.raises(StageCapExceeded):
        module.equal(module.element([1]), module.element([2]))
    with pytest.raises(InvalidBounds):
        DimensionModule(rose2, stage_cap=-1)


# Certificates and search

def test_shipped_certificate_verifies(rose2, j2):
    cert = FileParser.parse_certificate(FileParser.read(CERTS_PATH / "rose2_j2.cert"))
    report = verify_iso_certificate(rose2, j2, cert)
    assert report.ok
    assert [c.name for c in report.checks] == [
        "shape", "intertwines-forward", "intertwines-backward", "left-inverse", "right-inverse",
        "positive-forward", "positive-backward", "pointed",
    ]


def test_mutated_certificates_are_rejected(rose2, j2):
    bad = FileParser.parse_certificate(FileParser.read(CERTS_PATH / "rose2_j2_bad.cert"))
    report = verify_iso_certificate(rose2, j2, bad)
    assert not report.ok
    assert report.first_failure.name == "intertwines-forward"

    good = FileParser.parse_certificate(FileParser.read(CERTS_PATH / "rose2_j2.cert"))
    assert not verify_iso_certificate(rose2, j2, IsoCertificate(good.m_prime, good.m, 1)).ok
    assert not verify_iso_certificate(rose2, j2, IsoCertificate(-good.m, -good.m_prime, 1)).ok


def _perturbations(cert, rng, count):
    for _ in range(count):
        m, m_prime = cert.m.copy(), cert.m_prime.copy()
        target = rng.choice([m, m_prime])
        i, j = rng.randrange(target.shape[0]), rng.randrange(target.shape[1])
        target[i, j] += rng.choice([d for d in range(-8, 9) if d])
        yield IsoCertificate(m, m_prime, cert.lag, cert.forward_lag)
    for lag, forward_lag in ((0, 0), (2, 0), (1, 1), (0, 2), (3, 0)):
        if (lag, forward_lag) != (cert.lag, cert.forward_lag):
            yield IsoCertificate(cert.m, cert.m_prime, lag, forward_lag)


def test_single_entry_perturbations_are_rejected(rose2, j2, rng):
    good = FileParser.parse_certificate(FileParser.read(CERTS_PATH / "rose2_j2.cert"))
    reverse = search_pointed_iso(j2, rose2, lag_max=2, entry_max=2)
    assert isinstance(reverse, IsoCertificate)
    for e, f, cert in ((rose2, j2, good), (j2, rose2, reverse)):
        assert verify_iso_certificate(e, f, cert).ok
        for mutated in _perturbations(cert, rng, 50):
            assert not verify_iso_certificate(e, f, mutated).ok


def test_search_finds_rose2_j2(rose2, j2):
    seen = []
    cert = search_pointed_iso(rose2, j2, lag_max=2, entry_max=2,
                              progress_callback=lambda current, total, label: seen.append(label))
    assert isinstance(cert, IsoCertificate)
    assert cert.lag == 1
    assert cert.to_record() == {'lag': 1, 'M': [[1], [1]], "M'": [[1, 1]]}
    assert verify_iso_certificate(rose2, j2, cert).ok
    assert seen


def test_search_finds_j2_rose2_with_a_forward_lag(rose2, j2):
    cert = search_pointed_iso(j2, rose2, lag_max=2, entry_max=2)
    assert isinstance(cert, IsoCertificate)
    assert cert.to_record() == {'lag': 0, 'forward_lag': 1, 'M': [[1, 1]], "M'": [[1], [1]]}
    assert cert.total_lag == 1
    report = verify_iso_certificate(j2, rose2, cert)
    assert report.ok
    assert report.check("pointed").status == "pass"

    text = FileParser.format_certificate(cert)
    assert text == "lag: 0\nforward-lag: 1\nM:\n1 1\nM':\n1\n1\n"
    assert FileParser.parse_certificate(text).forward_lag == 1

    shifted = IsoCertificate(cert.m, cert.m_prime, 1, 0)
    assert verify_iso_certificate(j2, rose2, shifted).check("pointed").status == "fail"


def test_search_reports_missing_intertwiner(graph, rose2):
    outcome = search_pointed_iso(rose2, graph("rose3"), lag_max=2, entry_max=2)
    assert isinstance(outcome, NotFoundWithinBounds)
    assert outcome.reason == "no nonzero intertwiner"


def test_search_respects_bounds(rose2, j2):
    outcome = search_pointed_iso(rose2, j2, lag_max=0, entry_max=2)
    assert isinstance(outcome, NotFoundWithinBounds)
    assert outcome.to_record()['result'] == "not-found-within-bounds"
    with pytest.raises(InvalidBounds):
        search_pointed_iso(rose2, j2, lag_max=-1)


def test_hom_certificate(rose2, j2):
    report = verify_hom_certificate(rose2, j2, [[1], [1]], 0, pointed=True)
    assert report.ok
    report = verify_hom_certificate(rose2, j2, [[1], [0]], 0, pointed=True)
    assert report.check("pointed").status == "fail"

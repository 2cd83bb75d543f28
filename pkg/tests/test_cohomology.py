from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdagraph.cohomology import (
    classify_cohomology,
    coboundary_search_one_block,
    cycle_product,
    periodic_orbit_obstruction,
    periodic_words,
    search_transfer,
    transfer_violations,
)
from lambdagraph.errors import OutOfRangeError, SearchSpaceExceeded
from lambdagraph.finite_group import make_cyclic, make_symmetric
from lambdagraph.subshift import golden_mean

from conftest import GROUPS, edge_sfts, labeled_edge_sfts, random_labeling
import oracles


def _least_period(w):
    n = len(w)
    return next(p for p in range(1, n + 1) if n % p == 0 and w == w[p:] + w[:p])


@given(edge_sfts(), st.integers(1, 5))
def test_periodic_points_match_trace(spec, n):
    # summing least periods over the rotation classes of length n counts the
    # points of period dividing n, which is trace(A^n)
    A = oracles.adjacency(spec.vertices, spec.edges)
    classes = [w for w in periodic_words(spec, n) if len(w) == n]
    assert sum(_least_period(w) for w in classes) == int(np.trace(np.linalg.matrix_power(A, n)))


def test_golden_mean_periodic_words():
    words = periodic_words(golden_mean(), 4)
    assert words[:3] == [("0",), ("0", "0"), ("0", "1")]
    assert ("0", "1", "0", "1") in words


def test_cycle_product_order_matters():
    s3 = make_symmetric(3)
    a, b = s3.elements[1], s3.elements[3]
    ell = {"x": a, "y": b}
    assert cycle_product(s3, ell, ("x", "y")) == s3.mul(a, b)


def test_golden_mean_obstruction():
    z2 = make_cyclic(2)
    obs = periodic_orbit_obstruction(golden_mean(), z2, {"0": "0", "1": "1"}, {"0": "1", "1": "0"}, 3)
    assert obs.cycle == ("0",)
    assert obs.weights == ("0", "1")
    verdict = classify_cohomology(golden_mean(), z2, {"0": "0", "1": "1"}, {"0": "1", "1": "0"}, 3)
    assert verdict.status == "certified_no"
    assert verdict.transfer is None


def test_identical_labelings_are_cohomologous():
    z3 = make_cyclic(3)
    ell = {"0": "1", "1": "2"}
    verdict = classify_cohomology(golden_mean(), z3, ell, ell, 4)
    assert verdict.status == "certified_yes"
    assert transfer_violations(golden_mean(), z3, ell, ell, verdict.transfer) == []


@given(edge_sfts(max_vertices=3, max_extra=2), st.sampled_from(sorted(GROUPS)), st.integers(0, 10**6))
def test_vertex_coboundary_is_found(spec, group_name, seed):
    # ℓ(e) = c(s(e)) ℓ'(e) c(t(e))^{-1} is cohomologous to ℓ' with transfer b(e) = c(s(e))
    group = GROUPS[group_name]
    rng = random.Random(seed)
    c = {v: rng.choice(group.elements) for v in spec.vertices}
    ell2 = random_labeling(rng, spec.alphabet, group)
    ell = {name: group.mul(c[s], ell2[name], group.inv(c[t])) for name, s, t in spec.edges}
    b = {name: c[s] for name, s, _ in spec.edges}
    assert transfer_violations(spec, group, ell, ell2, b) == []
    found = coboundary_search_one_block(spec, group, ell, ell2)
    assert found is not None
    assert transfer_violations(spec, group, ell, ell2, found) == []
    assert periodic_orbit_obstruction(spec, group, ell, ell2, 4) is None


@given(labeled_edge_sfts(), st.integers(0, 10**6))
def test_transfer_and_obstruction_exclude_each_other(case, seed):
    spec, group, ell = case
    ell2 = random_labeling(random.Random(seed), spec.alphabet, group)
    verdict = classify_cohomology(spec, group, ell, ell2, 4)
    if verdict.transfer is not None:
        assert verdict.obstruction is None
    if verdict.obstruction is not None:
        assert verdict.status == "certified_no"


def test_search_space_limit():
    s3 = make_symmetric(3)
    ell = {"0": s3.identity, "1": s3.identity}
    with pytest.raises(SearchSpaceExceeded):
        search_transfer(golden_mean(), s3, ell, ell, limit=10)


def test_max_period_must_be_positive():
    z2 = make_cyclic(2)
    with pytest.raises(OutOfRangeError):
        periodic_orbit_obstruction(golden_mean(), z2, {"0": "0", "1": "0"}, {"0": "0", "1": "0"}, 0)


def test_search_reports_space():
    z2 = make_cyclic(2)
    result = search_transfer(golden_mean(), z2, {"0": "0", "1": "1"}, {"0": "0", "1": "1"})
    assert result.space == 4
    assert result.transfer == {"0": "0", "1": "0"}
    assert result.examined == 1

from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdagraph.core import admissible_words, find_isomorphism, is_left_resolving, validate
from lambdagraph.errors import InvalidSystemError, NonFreeActionError, OutOfRangeError
from lambdagraph.extension import (
    GroupAction,
    characterization_report,
    check_g_action,
    extension_from_dict,
    g_action_violations,
    g_extension,
    identity_action,
    is_free,
    presentation_correspondence_report,
    quotient_extension,
    quotient_of,
)
from lambdagraph.finite_group import make_cyclic
from lambdagraph.subshift import canonical_lgs, golden_mean

from conftest import labeled_edge_sfts
import oracles


@pytest.fixture
def golden_ext():
    return g_extension(canonical_lgs(golden_mean(), 3, 1), make_cyclic(2), {"0": "0", "1": "1"})


def test_extension_shape(golden_ext):
    ext = golden_ext.lgs
    assert ext.dims == (2, 4, 4, 4)
    assert ext.levels[1][:2] == ("(0,[0])", "(0,[1])")
    assert len(ext.alphabet) == 4
    assert validate(ext).ok


@given(labeled_edge_sfts(), st.integers(2, 4))
def test_extension_properties(case, L):
    spec, group, ell = case
    base = canonical_lgs(spec, L, 1)
    ext = g_extension(base, group, ell)
    assert validate(ext.lgs).ok
    assert is_left_resolving(ext.lgs)
    assert check_g_action(ext.lgs, ext.action)
    assert is_free(ext.lgs, ext.action)
    assert characterization_report(ext.lgs, ext.action, ext.eta, ext.r0, ext.labeling, ext.label_pairs).ok
    for k in range(1, L):
        words = admissible_words(ext.lgs, k)
        base_words = admissible_words(base, k)
        assert len(words) == len(group) * len(base_words)
        assert set(words) == oracles.skew_words(base_words, group, ell)


@given(labeled_edge_sfts(), st.integers(1, 4))
def test_quotient_recovers_base(case, L):
    spec, group, ell = case
    base = canonical_lgs(spec, L, 1)
    ext = g_extension(base, group, ell)
    q = quotient_of(ext)
    assert q.report.ok
    assert validate(q.base).ok
    assert find_isomorphism(q.base, base) is not None


def test_quotient_from_document(golden_ext):
    doc = json.loads(json.dumps(golden_ext.to_dict()))
    q = quotient_extension(**extension_from_dict(doc))
    assert q.report.ok
    assert find_isomorphism(q.base, golden_ext.base) is not None
    assert [len(level) for level in q.vertex_orbits] == [1, 2, 2, 2]


def test_trivial_action_is_not_free():
    base = canonical_lgs(golden_mean(), 2, 1)
    action = identity_action(base, make_cyclic(2))
    assert check_g_action(base, action)
    assert not is_free(base, action)
    eta = [tuple("0" for _ in level) for level in base.edges]
    r0 = [tuple(e.label for e in level) for level in base.edges]
    with pytest.raises(NonFreeActionError):
        characterization_report(base, action, eta, r0, {"0": "0", "1": "0"}, {"0": ("0", "0"), "1": ("0", "1")})


def test_broken_action_reported(golden_ext):
    a = golden_ext.action
    symbol = {g: dict(t) for g, t in a.symbol.items()}
    symbol["1"]["(0,0)"], symbol["1"]["(0,1)"] = symbol["1"]["(0,1)"], symbol["1"]["(0,0)"]
    bad = GroupAction(a.group, a.vertex, a.edge, symbol)
    kinds = {v.kind for v in g_action_violations(golden_ext.lgs, bad)}
    assert "label" in kinds


def test_broken_cocycle_rejected(golden_ext):
    e = golden_ext
    eta = [list(level) for level in e.eta]
    # flip the group coordinate of one orbit at level 1, keeping equivariance
    k0 = 0
    k1 = e.action.edge["1"][1][k0]
    eta[1][k0], eta[1][k1] = eta[1][k1], eta[1][k0]
    report = characterization_report(e.lgs, e.action, eta, e.r0, e.labeling, e.label_pairs)
    assert not report.ok
    assert {f.kind for f in report.failures} & {"cocycle", "label_split"}
    with pytest.raises(InvalidSystemError):
        quotient_extension(e.lgs, e.action, eta, e.r0, e.labeling, e.label_pairs)


def test_presentation_correspondence_range():
    base = canonical_lgs(golden_mean(), 3, 1)
    z2 = make_cyclic(2)
    assert presentation_correspondence_report(base, z2, {"0": "0", "1": "1"}, 2).ok
    with pytest.raises(OutOfRangeError):
        presentation_correspondence_report(base, z2, {"0": "0", "1": "1"}, 3)


def test_groups_namespace():
    from lambdagraph import groups
    from lambdagraph.subshift import golden_mean

    z2 = groups.make_cyclic(2)
    ext = groups.g_extension(canonical_lgs(golden_mean(), 3, 1), z2, {"0": "0", "1": "1"})
    assert groups.check_presentation_correspondence(ext.base, z2, {"0": "0", "1": "1"}, 2)

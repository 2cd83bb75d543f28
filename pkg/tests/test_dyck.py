from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdagraph.core import admissible_words, is_left_resolving, is_predecessor_separated, validate
from lambdagraph.dyck import (
    D2_ALPHABET,
    ELL1,
    ELL2,
    ONE,
    ZERO,
    EdgeLookup,
    MarkovDyck,
    cantor_horizon,
    critical_pair_failures,
    d2_bracket_reduce,
    dyck_shift,
    eta_v,
    phi_e,
    phi_sigma,
    phi_v,
    prop72_morphism,
    prop77_report,
    reduce,
    reduce_innermost,
    verify_prop72,
    xi_v,
    xi_v_inverse,
    xi_v_prefix,
)
from lambdagraph.errors import LambdaGraphError, OutOfRangeError
from lambdagraph.subshift import enumerate_words, is_admissible

import oracles

# frozen from the exhaustive enumeration, cross-checked by the bracket oracle
D2_COUNTS = [4, 14, 48, 160, 528, 1720, 5568, 17888, 57216]
FULL_MD_COUNTS = [8, 28, 96, 320, 1056, 3440, 11136, 35776, 114432]
GOLDEN_MD_COUNTS = [6, 18, 52, 150, 426, 1208, 3396, 9534, 26618]


def test_basic_relations():
    assert reduce(["a1", "b1"]) == ONE
    assert reduce(["a1", "b2"]) == ZERO
    assert reduce(["a2", "b1"]) == ZERO
    nf = reduce(["b1", "a2"])
    assert nf.to_dict() == {"beta": ["b1"], "vertex": 0, "alpha": ["a2"]}
    assert reduce(["b1", "a1", "b1", "a2"]).word() == ("b1", "a2")


@pytest.mark.parametrize("k", range(1, 7))
def test_d2_reducers_agree(k):
    for w in product(D2_ALPHABET, repeat=k):
        nf = reduce(w)
        assert nf == reduce_innermost(w)
        assert nf.zero == (d2_bracket_reduce(w) is None)
        assert nf.zero != oracles.dyck_brute_admissible(w)


@pytest.mark.parametrize("k", range(1, 7))
def test_d2_counts(k):
    assert len(enumerate_words(dyck_shift(), k)) == D2_COUNTS[k - 1]


@pytest.mark.parametrize(
    "matrix, counts", [([[1, 1], [1, 1]], FULL_MD_COUNTS), ([[1, 1], [1, 0]], GOLDEN_MD_COUNTS)]
)
def test_markov_dyck_counts(matrix, counts):
    spec = MarkovDyck(matrix)
    for k in range(1, 6):
        assert len(enumerate_words(spec, k)) == counts[k - 1]


@pytest.mark.parametrize("matrix", [[[1, 1], [1, 0]], [[1, 1], [1, 1]]])
def test_markov_dyck_reducers_agree(matrix):
    spec = MarkovDyck(matrix)
    for k in range(1, 5):
        for w in product(spec.alphabet, repeat=k):
            assert reduce(w, spec) == reduce_innermost(w, spec)


@pytest.mark.parametrize("matrix", [[[2]], [[1, 1], [1, 0]], [[1, 1], [1, 1]], [[1, 2], [1, 0]]])
def test_no_critical_pair_failures(matrix):
    assert critical_pair_failures(MarkovDyck(matrix)) == []


def test_markov_dyck_subsystems():
    spec = MarkovDyck([[1, 1], [1, 0]])
    assert spec.alphabet == ("a1", "a2", "a3", "b1", "b2", "b3")
    plus, minus = spec.sft_plus(), spec.sft_minus()
    assert plus.edges == (("b1", "v1", "v1"), ("b2", "v1", "v2"), ("b3", "v2", "v1"))
    assert minus.edges == (("a1", "v1", "v1"), ("a2", "v2", "v1"), ("a3", "v1", "v2"))
    # closing-bracket words are exactly the paths of the graph
    for w in enumerate_words(plus, 4):
        assert is_admissible(spec, w)
    assert not is_admissible(spec, ["b3", "b3"])


def test_dyck_dict_round_trip():
    from lambdagraph.io import spec_from_dict

    spec = MarkovDyck([[1, 1], [1, 0]])
    assert enumerate_words(spec_from_dict(spec.to_dict()), 3) == enumerate_words(spec, 3)


@pytest.mark.parametrize("L", range(1, 7))
def test_cantor_horizon_shape(L):
    ch = cantor_horizon(L)
    assert ch.dims == tuple(2**l for l in range(L + 1))
    assert [len(level) for level in ch.edges] == [6 * 2**l for l in range(L)]
    assert validate(ch).ok
    assert is_left_resolving(ch)
    assert is_predecessor_separated(ch)


def test_cantor_horizon_presents_d2():
    ch = cantor_horizon(6)
    for k in range(1, 6):
        assert admissible_words(ch, k) == enumerate_words(dyck_shift(), k)


def test_cantor_horizon_levels():
    assert cantor_horizon(2).levels == (("",), ("1", "2"), ("11", "12", "21", "22"))


def test_xi_v_example():
    assert xi_v("12211121") == "11121221"
    assert xi_v_inverse("11121221") == "12211121"


@given(st.text(alphabet="12", max_size=14))
def test_xi_v_bijective(word):
    assert xi_v(word) == xi_v_prefix(word)
    assert xi_v_inverse(xi_v(word)) == word
    assert len(xi_v(word)) == len(word)


@pytest.mark.parametrize("n", range(0, 9))
def test_xi_v_permutes_each_level(n):
    words = ["".join(p) for p in product("12", repeat=n)]
    assert sorted(xi_v(w) for w in words) == words


@pytest.mark.parametrize(
    "g, word, image",
    [("0", "22", "222"), ("1", "2", "11"), ("0", "2", "22"), ("0", "", "2")],
)
def test_phi_v(g, word, image):
    assert phi_v(g, word) == image


def test_eta_v():
    assert eta_v("0", "22") == "222"


def test_phi_sigma_is_a_labeling_factor():
    # every (g, symbol) pair maps to a symbol of the same bracket type
    for g in "01":
        for a in D2_ALPHABET:
            assert phi_sigma(g, a)[0] == a[0]
    assert phi_sigma("1", "a1") == "a2"


def test_phi_e_closing_case():
    ch = cantor_horizon(3)
    # the a1-edge from "2" to "12" at level 1, in group coordinate 0
    k = next(k for k, e in enumerate(ch.edges[1]) if e.label == "a1" and ch.levels[1][e.src] == "2")
    f = ch.edges[2][phi_e(ch, "0", 2, k)]
    assert (ch.levels[2][f.src], ch.levels[3][f.dst], f.label) == ("22", "122", "a1")


def test_phi_e_range():
    ch = cantor_horizon(3)
    with pytest.raises(OutOfRangeError):
        phi_e(ch, "0", 3, 0)
    with pytest.raises(LambdaGraphError):
        EdgeLookup(ch).find(1, 0, 0, "b1")


@pytest.mark.parametrize("L", range(2, 6))
def test_prop72_small(L):
    report = verify_prop72(L)
    assert report.ok
    assert all(report.checks.values())


def test_prop72_morphism_parts():
    ext, target, m = prop72_morphism(3)
    assert ext.lgs.dims == tuple(2 * 2**l for l in range(3))
    assert target.dims == tuple(2**l for l in range(1, 4))
    assert len(m.vertices) == 3


def test_prop77():
    r = prop77_report()
    assert r["restriction_is_full_shift"]
    assert r["obstruction"] == {"cycle": ["e1"], "weights": ["0", "1"]}
    assert r["transfer_search"] == {"transfer": None, "examined": 4, "space": 4}
    assert r["not_conjugate"] is True
    assert r["restricted_labelings"]["ell2"] == {"e1": "1", "e2": "0"}


def test_prop77_same_labeling():
    r = prop77_report(ELL1, ELL1)
    assert r["obstruction"] is None
    assert r["transfer_search"]["transfer"] == {"e1": "0", "e2": "0"}
    assert r["not_conjugate"] is False
    assert prop77_report(ELL2, ELL2)["not_conjugate"] is False


@pytest.mark.parametrize("matrix", [[[1, 1], [1, 0]], [[1, 1], [1, 1]], [[1, 2], [1, 0]]])
def test_markov_dyck_one_sided_restrictions(matrix):
    spec = MarkovDyck(matrix)
    plus, minus = spec.sft_plus(), spec.sft_minus()
    for k in range(1, 7):
        words = enumerate_words(spec, k)
        assert [w for w in words if all(s[0] == "b" for s in w)] == enumerate_words(plus, k)
        assert set(w for w in words if all(s[0] == "a" for s in w)) == set(enumerate_words(minus, k))

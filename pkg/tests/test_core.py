from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdagraph.core import (
    Edge,
    LabeledGraph,
    LambdaGraphSystem,
    LgsMorphism,
    admissible_words,
    check_structure,
    find_isomorphism,
    from_labeled_graph,
    is_left_resolving,
    is_predecessor_separated,
    morphism_violations,
    normalized,
    predecessor_set,
    predecessor_sets_forward,
    shifted,
    structure_matrices,
    truncated,
    validate,
)
from lambdagraph.errors import NonEssentialGraphError, OutOfRangeError, StructuralError
from lambdagraph.io import load_json
from lambdagraph.subshift import canonical_lgs, golden_mean

from conftest import edge_sfts
import oracles


def two_state_lgs():
    # golden mean, vertices are future classes: p --0--> p, p --0--> q, q --1--> p
    return LambdaGraphSystem(
        ("0", "1"),
        (("r",), ("p", "q"), ("p", "q")),
        ((Edge(0, 0, "0"), Edge(0, 0, "1"), Edge(0, 1, "0")), (Edge(0, 0, "0"), Edge(0, 1, "0"), Edge(1, 0, "1"))),
        ((0, 0), (0, 1)),
    )


@st.composite
def labeled_graphs(draw):
    """Irreducible labeled graphs over {a, b}: a cycle through every vertex plus extras."""
    rng = random.Random(draw(st.integers(0, 2**32)))
    n = rng.randint(1, 3)
    vs = [f"s{i}" for i in range(n)]
    edges = [(vs[i], vs[(i + 1) % n], rng.choice("ab")) for i in range(n)]
    edges += [(rng.choice(vs), rng.choice(vs), rng.choice("ab")) for _ in range(rng.randint(1, 3))]
    return LabeledGraph(tuple(vs), tuple(dict.fromkeys(edges)), ("a", "b"))


def test_round_trip_dict():
    lgs = two_state_lgs()
    again = LambdaGraphSystem.from_dict(json.loads(json.dumps(lgs.to_dict())))
    assert again == lgs
    assert lgs.dims == (1, 2, 2)
    assert lgs.max_level == 2


def test_golden_mean_presentation_is_valid():
    lgs = two_state_lgs()
    assert validate(lgs).ok
    assert is_left_resolving(lgs)
    assert is_predecessor_separated(lgs)
    assert admissible_words(lgs, 2) == [("0", "0"), ("0", "1"), ("1", "0")]


@pytest.mark.parametrize(
    "mutate, location",
    [
        (lambda d: d["iota"][0].__setitem__(0, 5), "iota[0]"),
        (lambda d: d["edges"][0].__setitem__(0, [0, 9, "0"]), "edges[0]"),
        (lambda d: d["edges"][0].__setitem__(0, [0, 0, "z"]), "edges[0]"),
        (lambda d: d.pop("iota"), "$"),
    ],
)
def test_structural_errors_carry_location(mutate, location):
    doc = two_state_lgs().to_dict()
    mutate(doc)
    with pytest.raises(StructuralError) as exc:
        check_structure(LambdaGraphSystem.from_dict(doc))
    assert location in str(exc.value.location)


def test_surjectivity_violation(data_dir):
    report = validate(LambdaGraphSystem.from_dict(load_json(data_dir / "bad_iota_lgs.json")))
    assert not report.ok
    assert "surjectivity" in report.kinds()
    v = next(v for v in report.violations if v.kind == "surjectivity")
    assert v.level == 0


def test_local_property_violation():
    lgs = two_state_lgs()
    # drop p --0--> q at level 1
    bad = LambdaGraphSystem(lgs.alphabet, lgs.levels, (lgs.edges[0], lgs.edges[1][::2]), lgs.iota)
    assert "local_property" in validate(bad).kinds()


def test_not_left_resolving():
    lgs = LambdaGraphSystem(("a",), (("x",), ("y",)), ((Edge(0, 0, "a"), Edge(0, 0, "a")),), ((0,),))
    assert not is_left_resolving(lgs)


def test_predecessor_depth_out_of_range():
    with pytest.raises(OutOfRangeError):
        predecessor_set(two_state_lgs(), 1, 0, depth=3)


@given(labeled_graphs(), st.integers(2, 5))
def test_labeled_graph_systems_are_valid(graph, L):
    lgs = from_labeled_graph(graph, L)
    assert validate(lgs).ok
    for k in range(0, min(L, 4) + 1):
        assert set(admissible_words(lgs, k)) == oracles.lgs_paths(lgs, k)


@given(labeled_graphs(), st.integers(1, 4))
def test_predecessor_sets_agree(graph, L):
    lgs = from_labeled_graph(graph, L)
    for level in range(L + 1):
        forward = predecessor_sets_forward(lgs, level)
        for v in range(lgs.size(level)):
            back = predecessor_set(lgs, level, v)
            assert back.words == forward[v].words
            assert back.words == oracles.predecessor_words(lgs, level, v, level)


@given(edge_sfts(max_vertices=3, max_extra=2), st.integers(1, 4))
def test_local_property_matches_oracle(spec, L):
    lgs = canonical_lgs(spec, L, 1)
    for l in range(1, L):
        above, below = oracles.local_property_counts(lgs, l)
        assert above == below


def test_non_essential_graph_rejected():
    g = LabeledGraph(("x", "y"), (("x", "x", "a"), ("x", "y", "b")))
    with pytest.raises(NonEssentialGraphError):
        from_labeled_graph(g, 3)


def test_structure_matrices_golden_mean():
    sm = structure_matrices(two_state_lgs())
    # A[l][i][a][j]
    assert sm.A[1] == (((1, 1), (0, 0)), ((0, 0), (1, 0)))
    assert sm.I[1] == ((1, 0), (0, 1))
    assert sm.I[0] == ((1, 1),)


def test_truncate_and_shift():
    lgs = canonical_lgs(golden_mean(), 5, 2)
    t = truncated(lgs, 3)
    assert t.max_level == 3 and validate(t).ok
    s = shifted(lgs, 2)
    assert s.max_level == 3
    assert s.levels[0] == lgs.levels[2]


def test_normalized_is_idempotent():
    lgs = canonical_lgs(golden_mean(), 4, 2)
    n = normalized(lgs)
    assert normalized(n) == n
    assert set(admissible_words(n, 3)) == set(admissible_words(lgs, 3))


def _permuted(lgs, rng):
    perms = [list(range(n)) for n in lgs.dims]
    for p in perms:
        rng.shuffle(p)
    inv = [{old: new for new, old in enumerate(p)} for p in perms]
    levels = tuple(tuple(lgs.levels[l][p[i]] for i in range(len(p))) for l, p in enumerate(perms))
    edges = tuple(
        tuple(Edge(inv[l][e.src], inv[l + 1][e.dst], e.label) for e in reversed(level))
        for l, level in enumerate(lgs.edges)
    )
    iota = tuple(
        tuple(inv[l][lgs.iota[l][perms[l + 1][j]]] for j in range(lgs.size(l + 1))) for l in range(lgs.max_level)
    )
    return LambdaGraphSystem(lgs.alphabet, levels, edges, iota)


@given(edge_sfts(max_vertices=3, max_extra=2), st.integers(0, 1000))
def test_isomorphism_of_permuted_copy(spec, seed):
    lgs = canonical_lgs(spec, 3, 1)
    other = _permuted(lgs, random.Random(seed))
    assert validate(other).ok
    m = find_isomorphism(lgs, other)
    assert m is not None
    assert morphism_violations(lgs, other, m) == []


def test_isomorphism_rejects_different_systems():
    a = canonical_lgs(golden_mean(), 3, 1)
    b = from_labeled_graph(LabeledGraph(("x",), (("x", "x", "0"), ("x", "x", "1"))), 3)
    assert find_isomorphism(a, b) is None


def test_bad_morphism_reported():
    lgs = two_state_lgs()
    swap = LgsMorphism(((0,), (1, 0), (1, 0)), ((0, 1, 2), (2, 1, 0)))
    assert morphism_violations(lgs, lgs, swap)


@given(labeled_graphs(), st.integers(1, 4))
def test_admissible_words_monotone_under_truncation(graph, L):
    small, large = from_labeled_graph(graph, L), from_labeled_graph(graph, L + 1)
    for k in range(L + 1):
        assert set(admissible_words(small, k)) <= set(admissible_words(large, k))


def test_predecessor_sets_agree_on_64_vertices():
    from lambdagraph.dyck import cantor_horizon

    ch = cantor_horizon(6)
    assert ch.size(6) == 64
    for depth in range(7):
        forward = predecessor_sets_forward(ch, 6, depth)
        for v in range(ch.size(6)):
            assert predecessor_set(ch, 6, v, depth).words == forward[v].words

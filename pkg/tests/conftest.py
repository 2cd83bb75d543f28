from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lambdagraph.finite_group import make_cyclic, make_symmetric
from lambdagraph.subshift import EdgeSFT

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

GROUPS = {"Z2": make_cyclic(2), "Z3": make_cyclic(3), "S3": make_symmetric(3)}


def random_edge_sft(rng: random.Random, max_vertices=4, max_extra=3) -> EdgeSFT:
    """An irreducible edge shift: a cycle through every vertex plus a few random edges."""
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    pairs = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    pairs += [(rng.choice(vs), rng.choice(vs)) for _ in range(rng.randint(0 if n > 1 else 1, max_extra))]
    return EdgeSFT(tuple(vs), tuple((f"e{i}", s, t) for i, (s, t) in enumerate(pairs)))


def random_labeling(rng: random.Random, alphabet, group):
    return {a: rng.choice(group.elements) for a in alphabet}


@st.composite
def edge_sfts(draw, max_vertices=4, max_extra=3):
    return random_edge_sft(random.Random(draw(st.integers(0, 2**32))), max_vertices, max_extra)


@st.composite
def labeled_edge_sfts(draw, max_vertices=3, max_extra=2):
    """An edge shift with a group and a one-block labeling."""
    rng = random.Random(draw(st.integers(0, 2**32)))
    spec = random_edge_sft(rng, max_vertices, max_extra)
    group = GROUPS[draw(st.sampled_from(sorted(GROUPS)))]
    return spec, group, random_labeling(rng, spec.alphabet, group)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def z2():
    return GROUPS["Z2"]


@pytest.fixture
def s3():
    return GROUPS["S3"]

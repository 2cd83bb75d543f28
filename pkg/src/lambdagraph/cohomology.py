"""Cohomology tests for one-block skewing functions ``τ_ℓ(x) = ℓ(x₀)``.

Two one-sided tests bracket the question whether ``τ_ℓ`` and ``τ_ℓ'`` are
cohomologous (with the identity conjugacy):

* a transfer ``b: Σ -> G`` with ``ℓ(x₀) = b(x₀)·ℓ'(x₀)·b(x₁)^{-1}`` on every
  admissible 2-word is sufficient;
* equal products (up to conjugacy) of ``ℓ`` and ``ℓ'`` around every periodic
  orbit are necessary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .core import Word, sort_words
from .errors import OutOfRangeError, SearchSpaceExceeded
from .finite_group import FiniteGroup, check_labeling
from .subshift import EdgeSFT, SubshiftSpec, enumerate_words, is_admissible


def cycle_product(group: FiniteGroup, ell: Mapping[str, str], cycle: Word) -> str:
    return group.mul(*(ell[a] for a in cycle))


def periodic_words(spec: SubshiftSpec, max_period: int) -> list[Word]:
    """One word per periodic orbit of least period dividing ``n``, for ``n <= max_period``:
    the rotation least in alphabet order, ordered by length then lexicographically.
    """
    if isinstance(spec, EdgeSFT):
        return spec.cycles(max_period)
    memory = spec.memory
    if memory is None:
        raise OutOfRangeError("periodic orbits need a spec with finite memory")
    key = {a: i for i, a in enumerate(spec.alphabet)}
    out = []
    for n in range(1, max_period + 1):
        found = set()
        for w in enumerate_words(spec, n):
            if is_admissible(spec, w * (memory // n + 2)):
                found.add(min((w[i:] + w[:i] for i in range(n)), key=lambda r: [key[a] for a in r]))
        out.extend(sort_words(found, spec.alphabet))
    return out


@dataclass(frozen=True)
class CycleObstruction:
    """A periodic orbit whose ``ℓ`` and ``ℓ'`` products are not conjugate."""

    cycle: Word
    weights: tuple[str, str]

    def to_dict(self) -> dict:
        return {"cycle": list(self.cycle), "weights": list(self.weights)}


def periodic_orbit_obstruction(
    spec: SubshiftSpec,
    group: FiniteGroup,
    ell: Mapping[str, str],
    ell2: Mapping[str, str],
    max_period: int,
) -> CycleObstruction | None:
    """First periodic orbit (by period, then word order) certifying that the
    two skewing functions are not cohomologous, or ``None`` up to ``max_period``.

    For an abelian group the products must be equal; otherwise they must be
    conjugate, since the product depends on the base point only up to
    conjugation.
    """
    if max_period < 1:
        raise OutOfRangeError("max_period must be at least 1")
    ell = check_labeling(spec.alphabet, ell, group)
    ell2 = check_labeling(spec.alphabet, ell2, group)
    abelian = group.is_abelian()
    for cycle in periodic_words(spec, max_period):
        p, q = cycle_product(group, ell, cycle), cycle_product(group, ell2, cycle)
        if (p != q) if abelian else (group.conjugacy_class(p) != group.conjugacy_class(q)):
            return CycleObstruction(cycle, (p, q))
    return None


def transfer_violations(spec: SubshiftSpec, group: FiniteGroup, ell, ell2, b) -> list[Word]:
    """Admissible 2-words on which ``ℓ(x₀) = b(x₀)·ℓ'(x₀)·b(x₁)^{-1}`` fails."""
    G = group
    return [
        (x0, x1)
        for x0, x1 in enumerate_words(spec, 2)
        if ell[x0] != G.mul(b[x0], ell2[x0], G.inv(b[x1]))
    ]


@dataclass(frozen=True)
class TransferSearch:
    transfer: dict | None
    examined: int
    space: int

    def to_dict(self) -> dict:
        return {
            "transfer": None if self.transfer is None else dict(sorted(self.transfer.items())),
            "examined": self.examined,
            "space": self.space,
        }


def search_transfer(
    spec: SubshiftSpec,
    group: FiniteGroup,
    ell: Mapping[str, str],
    ell2: Mapping[str, str],
    limit: int = 1_000_000,
) -> TransferSearch:
    """Try every ``b: Σ -> G`` in lexicographic order (alphabet order, group
    element order) and stop at the first one satisfying the transfer equation."""
    ell = check_labeling(spec.alphabet, ell, group)
    ell2 = check_labeling(spec.alphabet, ell2, group)
    space = len(group) ** len(spec.alphabet)
    if space > limit:
        raise SearchSpaceExceeded(space, limit)
    words = enumerate_words(spec, 2)
    G = group
    examined = 0
    for values in product(group.elements, repeat=len(spec.alphabet)):
        examined += 1
        b = dict(zip(spec.alphabet, values))
        if all(ell[x0] == G.mul(b[x0], ell2[x0], G.inv(b[x1])) for x0, x1 in words):
            return TransferSearch(b, examined, space)
    return TransferSearch(None, examined, space)


def coboundary_search_one_block(spec, group, ell, ell2, limit: int = 1_000_000) -> dict | None:
    return search_transfer(spec, group, ell, ell2, limit).transfer


@dataclass(frozen=True)
class CohomologyVerdict:
    """``status`` is ``certified_yes`` (a transfer exists), ``certified_no`` (a
    periodic obstruction exists) or ``undetermined`` at the given bounds."""

    status: str
    transfer: dict | None
    obstruction: CycleObstruction | None
    max_period: int
    candidates_examined: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "transfer": None if self.transfer is None else dict(sorted(self.transfer.items())),
            "obstruction": None if self.obstruction is None else self.obstruction.to_dict(),
            "max_period": self.max_period,
            "candidates_examined": self.candidates_examined,
        }


def classify_cohomology(spec, group, ell, ell2, max_period: int, limit: int = 1_000_000) -> CohomologyVerdict:
    found = search_transfer(spec, group, ell, ell2, limit)
    obstruction = periodic_orbit_obstruction(spec, group, ell, ell2, max_period)
    if found.transfer is not None and obstruction is not None:  # pragma: no cover - would be a bug
        raise AssertionError("a transfer and a periodic obstruction cannot coexist")
    if found.transfer is not None:
        status = "certified_yes"
    elif obstruction is not None:
        status = "certified_no"
    else:
        status = "undetermined"
    return CohomologyVerdict(status, found.transfer, obstruction, max_period, found.examined)

"""Subshifts given by word-admissibility oracles.

Each spec exposes an ordered alphabet, an admissibility test for finite words
(membership in the language of bi-infinite points, so words must extend in both
directions) and, when known, a memory: an integer ``m`` such that the
continuation of a one-sided point depends only on its first ``m`` symbols.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import Edge, LambdaGraphSystem, Word, admissible_words, check_alphabet, sort_words
from .errors import InadmissibleError, OutOfRangeError, StructuralError, UnknownSymbolError
from .finite_group import FiniteGroup, check_labeling


class SubshiftSpec:
    kind = "abstract"
    alphabet: tuple[str, ...]

    def _admissible(self, w: Word) -> bool:
        raise NotImplementedError

    @property
    def memory(self) -> int | None:
        return None

    def _enumerate(self, k: int) -> list[Word]:
        if k == 0:
            return [()]
        shorter = enumerate_words(self, k - 1)
        return [w + (a,) for w in shorter for a in self.alphabet if self._admissible(w + (a,))]

    def to_dict(self) -> dict:
        raise NotImplementedError


def _cache(spec) -> dict:
    try:
        return spec.__dict__.setdefault("_words", {})
    except AttributeError:  # pragma: no cover - all specs have a __dict__
        return {}


def check_word(spec: SubshiftSpec, w: Sequence[str]) -> Word:
    w = tuple(w)
    symbols = set(spec.alphabet)
    for s in w:
        if s not in symbols:
            raise UnknownSymbolError(s)
    return w


def is_admissible(spec: SubshiftSpec, w: Sequence[str]) -> bool:
    w = check_word(spec, w)
    if not w:
        return True
    return spec._admissible(w)


def enumerate_words(spec: SubshiftSpec, k: int) -> list[Word]:
    """The admissible words of length ``k`` in alphabet-lexicographic order."""
    if k < 0:
        raise OutOfRangeError("word length must be nonnegative")
    cache = _cache(spec)
    if k not in cache:
        cache[k] = sort_words(spec._enumerate(k), spec.alphabet)
    return list(cache[k])


def _essential_edges(n_vertices: int, edges: Sequence[tuple[int, int]]) -> set[int]:
    """Indices of edges lying on bi-infinite paths."""
    alive = set(range(len(edges)))
    while True:
        has_in = {edges[k][1] for k in alive}
        has_out = {edges[k][0] for k in alive}
        keep = {k for k in alive if edges[k][0] in has_in and edges[k][1] in has_out}
        if keep == alive:
            return alive
        alive = keep


@dataclass(eq=False)
class EdgeSFT(SubshiftSpec):
    """Edge shift of a finite graph; the symbols are the edge names.

    ``edges`` lists ``(name, src, dst)`` with vertex names. Edges off the
    essential part of the graph are not admissible.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    kind = "edge_sft"

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.edges = tuple(tuple(e) for e in self.edges)
        self.alphabet = check_alphabet(name for name, _, _ in self.edges)
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise StructuralError("duplicate vertex names", "vertices")
        for k, (_, s, t) in enumerate(self.edges):
            if s not in index or t not in index:
                raise StructuralError("edge references an unknown vertex", f"edges[{k}]")
        self.src = {name: s for name, s, _ in self.edges}
        self.dst = {name: t for name, _, t in self.edges}
        pairs = [(index[s], index[t]) for _, s, t in self.edges]
        self.essential = {self.edges[k][0] for k in _essential_edges(len(self.vertices), pairs)}

    @property
    def memory(self) -> int:
        return 1

    def _admissible(self, w):
        if any(a not in self.essential for a in w):
            return False
        return all(self.dst[a] == self.src[b] for a, b in zip(w, w[1:]))

    def cycles(self, max_period: int) -> list[Word]:
        """Closed edge paths of length <= ``max_period`` on the essential part,
        one per rotation class (the rotation that is least in alphabet order),
        ordered by length then lexicographically."""
        key = {a: i for i, a in enumerate(self.alphabet)}
        out = []
        for n in range(1, max_period + 1):
            found = set()
            for w in enumerate_words(self, n):
                if self.dst[w[-1]] != self.src[w[0]]:
                    continue
                rotations = [w[i:] + w[:i] for i in range(n)]
                found.add(min(rotations, key=lambda r: [key[a] for a in r]))
            out.extend(sort_words(found, self.alphabet))
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(eq=False)
class ForbiddenWords(SubshiftSpec):
    """All bi-infinite sequences avoiding the listed words."""

    alphabet: tuple[str, ...]
    forbidden: tuple[tuple[str, ...], ...]
    kind = "forbidden"

    def __post_init__(self):
        self.alphabet = check_alphabet(self.alphabet)
        self.forbidden = tuple(tuple(w) for w in self.forbidden)
        symbols = set(self.alphabet)
        for w in self.forbidden:
            if not w:
                raise StructuralError("the empty word cannot be forbidden", "forbidden")
            for s in w:
                if s not in symbols:
                    raise UnknownSymbolError(s)
        self._m = max((len(w) for w in self.forbidden), default=1)
        self._block = max(self._m - 1, 1)
        self._build_core()

    def _clean(self, w) -> bool:
        n = len(w)
        return not any(w[i : i + len(f)] == f for f in self.forbidden for i in range(n - len(f) + 1))

    def _build_core(self):
        b = self._block
        states = [()]
        for _ in range(b):
            states = [s + (a,) for s in states for a in self.alphabet if self._clean(s + (a,))]
        index = {s: i for i, s in enumerate(states)}
        blocks = [s + (a,) for s in states for a in self.alphabet if self._clean(s + (a,))]
        pairs = [(index[w[:-1]], index[w[1:]]) for w in blocks]
        alive = _essential_edges(len(states), pairs)
        self._edges = {blocks[k] for k in alive}
        live_states = {blocks[k][:-1] for k in alive}
        self._short = set()
        for s in live_states:
            for i in range(b):
                for j in range(i, b + 1):
                    self._short.add(s[i:j])

    @property
    def memory(self) -> int:
        return self._m - 1

    def _admissible(self, w):
        b = self._block
        if len(w) <= b:
            return w in self._short
        return all(w[i : i + b + 1] in self._edges for i in range(len(w) - b))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alphabet": list(self.alphabet), "forbidden": [list(w) for w in self.forbidden]}


def pair_symbol(g: str, a: str) -> str:
    return f"({g},{a})"


@dataclass(eq=False)
class SkewProduct(SubshiftSpec):
    """Words ``((g_1,a_1),...,(g_k,a_k))`` with ``a`` admissible in the base and
    ``g_{i+1} = g_i · ℓ(a_i)``."""

    base: SubshiftSpec
    group: FiniteGroup
    labeling: dict
    kind = "skew"

    def __post_init__(self):
        self.labeling = check_labeling(self.base.alphabet, self.labeling, self.group)
        self.pairs = {}
        for g in self.group.elements:
            for a in self.base.alphabet:
                name = pair_symbol(g, a)
                if name in self.pairs:
                    raise StructuralError(f"pair symbol {name!r} is ambiguous", "alphabet")
                self.pairs[name] = (g, a)
        self.alphabet = tuple(self.pairs)
        self._names = {v: k for k, v in self.pairs.items()}

    @property
    def memory(self) -> int | None:
        m = self.base.memory
        return None if m is None else max(m, 1)

    def _admissible(self, w):
        decoded = [self.pairs[s] for s in w]
        base_word = tuple(a for _, a in decoded)
        if not is_admissible(self.base, base_word):
            return False
        G, ell = self.group, self.labeling
        return all(G.mul(g, ell[a]) == h for (g, a), (h, _) in zip(decoded, decoded[1:]))

    def lift(self, g: str, base_word: Sequence[str]) -> Word:
        """The unique skew word over ``base_word`` starting in group coordinate ``g``."""
        out = []
        for a in base_word:
            out.append(self._names[(g, a)])
            g = self.group.mul(g, self.labeling[a])
        return tuple(out)

    def _enumerate(self, k):
        if k == 0:
            return [()]
        return [self.lift(g, w) for w in enumerate_words(self.base, k) for g in self.group.elements]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "base": self.base.to_dict(),
            "group": self.group.to_dict(),
            "labeling": dict(sorted(self.labeling.items())),
        }


def skew_product_spec(spec: SubshiftSpec, group: FiniteGroup, ell: Mapping[str, str]) -> SkewProduct:
    return SkewProduct(spec, group, dict(ell))


@dataclass(eq=False)
class PresentedLanguage(SubshiftSpec):
    """The words presented by a truncated λ-graph system, for lengths up to its depth."""

    lgs: LambdaGraphSystem
    kind = "lgs"

    def __post_init__(self):
        self.alphabet = self.lgs.alphabet

    def _admissible(self, w):
        return w in set(enumerate_words(self, len(w)))

    def _enumerate(self, k):
        return admissible_words(self.lgs, k)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lgs": self.lgs.to_dict()}


@dataclass(frozen=True)
class PastEquivalenceClasses:
    """Admissible length-``horizon`` words grouped by their ``level``-predecessor sets.

    ``classes[i]`` is sorted and ordered by its least member, the class
    representative. ``exact`` is true when the horizon covers the memory of the
    spec, so that the words stand for the one-sided points they begin.
    """

    level: int
    horizon: int
    classes: tuple[tuple[Word, ...], ...]
    predecessors: tuple[frozenset, ...]
    exact: bool

    @property
    def count(self) -> int:
        return len(self.classes)

    def representative(self, i: int) -> Word:
        return self.classes[i][0]

    def index(self) -> dict[Word, int]:
        return {w: i for i, cls in enumerate(self.classes) for w in cls}


def l_past_classes(spec: SubshiftSpec, level: int, horizon: int) -> PastEquivalenceClasses:
    if horizon < 1 or level < 0:
        raise OutOfRangeError("need horizon >= 1 and level >= 0")
    past = enumerate_words(spec, level)
    groups: dict[frozenset, list[Word]] = defaultdict(list)
    for w in enumerate_words(spec, horizon):
        groups[frozenset(mu for mu in past if spec._admissible(mu + w))].append(w)
    key = {a: i for i, a in enumerate(spec.alphabet)}
    ordered = sorted(groups.items(), key=lambda kv: [key[a] for a in kv[1][0]])
    memory = spec.memory
    return PastEquivalenceClasses(
        level,
        horizon,
        tuple(tuple(ws) for _, ws in ordered),
        tuple(p for p, _ in ordered),
        memory is not None and horizon >= memory,
    )


def _display(word: Word) -> str:
    return "".join(word) if all(len(s) == 1 for s in word) else " ".join(word)


def canonical_lgs(spec: SubshiftSpec, L: int, horizon: int) -> LambdaGraphSystem:
    """The λ-graph system whose level-``l`` vertices are the ``l``-past classes.

    There is an ``α``-edge from class ``F_i^l`` to ``F_j^{l+1}`` iff ``αx`` lies in
    ``F_i^l`` for some ``x`` in ``F_j^{l+1}``; ``ι`` maps a class to the level-``l``
    class containing it. Exact only when :func:`l_past_classes` is exact.
    """
    parts = [l_past_classes(spec, l, horizon) for l in range(L + 1)]
    for l, part in enumerate(parts):
        for i, pred in enumerate(part.predecessors):
            if not pred:
                raise InadmissibleError(
                    f"class [{_display(part.representative(i))}] at level {l} has an empty predecessor set"
                )
    where = [p.index() for p in parts]
    pos = {a: i for i, a in enumerate(spec.alphabet)}
    edges, iota = [], []
    for l in range(L):
        found = set()
        for j, cls in enumerate(parts[l + 1].classes):
            for w in cls:
                for a in spec.alphabet:
                    aw = (a,) + w
                    if spec._admissible(aw):
                        found.add(Edge(where[l][aw[:horizon]], j, a))
        edges.append(tuple(sorted(found, key=lambda e: (e.src, e.dst, pos[e.label]))))
        iota.append(tuple(where[l][cls[0]] for cls in parts[l + 1].classes))
    levels = [tuple(f"[{_display(cls[0])}]" for cls in p.classes) for p in parts]
    return LambdaGraphSystem(spec.alphabet, tuple(levels), tuple(edges), tuple(iota))


def golden_mean() -> ForbiddenWords:
    return ForbiddenWords(("0", "1"), (("1", "1"),))


def full_shift(alphabet: Sequence[str]) -> ForbiddenWords:
    return ForbiddenWords(tuple(alphabet), ())

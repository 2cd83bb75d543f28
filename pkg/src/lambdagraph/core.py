"""Truncated λ-graph systems.

A system of depth ``L`` has vertex levels ``V_0 .. V_L``, labeled edges
``E_{l,l+1}`` from ``V_l`` to ``V_{l+1}`` and maps ``ι: V_{l+1} -> V_l``.
Everything is index addressed: vertex ``i`` of level ``l`` is ``levels[l][i]``
(the string is only a display name), edge ``k`` of level ``l`` is
``edges[l][k]`` and ``iota[l][j]`` is the parent in ``V_l`` of vertex ``j`` of
``V_{l+1}``.

Statements about the infinite object hold here only up to level ``L``: the
successor condition is not required of ``V_L`` and compatibility and the local
property are checked for ``1 <= l <= L-1``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    NonEssentialGraphError,
    OutOfRangeError,
    SearchSpaceExceeded,
    StructuralError,
    UnknownSymbolError,
)

Word = tuple  # tuple of symbol strings


def check_alphabet(symbols: Iterable[str]) -> tuple[str, ...]:
    alphabet = tuple(symbols)
    if not alphabet:
        raise StructuralError("alphabet is empty", "alphabet")
    seen = set()
    for i, s in enumerate(alphabet):
        if not isinstance(s, str):
            raise StructuralError(f"symbol {s!r} is not a string", f"alphabet[{i}]")
        if s in seen:
            raise StructuralError(f"duplicate symbol {s!r}", f"alphabet[{i}]")
        seen.add(s)
    return alphabet


def word_sort_key(alphabet: Sequence[str]):
    """Key function ordering words lexicographically by alphabet position."""
    index = {s: i for i, s in enumerate(alphabet)}

    def key(word):
        try:
            return tuple(index[s] for s in word)
        except KeyError as exc:
            raise UnknownSymbolError(exc.args[0]) from None

    return key


def sort_words(words: Iterable[Word], alphabet: Sequence[str]) -> list[Word]:
    return sorted(words, key=word_sort_key(alphabet))


class Edge(NamedTuple):
    src: int
    dst: int
    label: str


@dataclass(frozen=True)
class Violation:
    kind: str
    level: int | None
    witness: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "level": self.level, "witness": self.witness}

    def __str__(self):
        where = "" if self.level is None else f" at level {self.level}"
        return f"{self.kind}{where}: {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation pass. Empty ``violations`` means valid."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


@dataclass(frozen=True)
class CheckReport:
    """Result of checking a family of equations or axioms.

    ``results`` holds one ``(item, level, passed)`` entry per checked family and
    level; ``failures`` carries located witnesses. Truthy iff nothing failed.
    """

    name: str
    results: tuple[tuple[str, int | None, bool], ...] = ()
    failures: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures and all(passed for _, _, passed in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "ok": self.ok,
            "results": [{"item": item, "level": level, "passed": passed} for item, level, passed in self.results],
            "failures": [v.to_dict() for v in self.failures],
        }


class ReportBuilder:
    def __init__(self, name: str):
        self.name = name
        self.results: list = []
        self.failures: list = []

    def record(self, item: str, level: int | None, failures: list[Violation]):
        self.results.append((item, level, not failures))
        self.failures.extend(failures)

    def build(self) -> CheckReport:
        return CheckReport(self.name, tuple(self.results), tuple(self.failures))


@dataclass(frozen=True)
class LambdaGraphSystem:
    alphabet: tuple[str, ...]
    levels: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[Edge, ...], ...]
    iota: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "alphabet", tuple(self.alphabet))
        set_(self, "levels", tuple(tuple(names) for names in self.levels))
        set_(self, "edges", tuple(tuple(Edge(*e) for e in level) for level in self.edges))
        set_(self, "iota", tuple(tuple(parents) for parents in self.iota))

    @property
    def max_level(self) -> int:
        return len(self.levels) - 1

    def size(self, level: int) -> int:
        return len(self.levels[level])

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(names) for names in self.levels)

    @cached_property
    def symbol_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.alphabet)}

    @cached_property
    def _out_index(self):
        table = []
        for l, level in enumerate(self.edges):
            rows = [[] for _ in self.levels[l]]
            for k, e in enumerate(level):
                rows[e.src].append(k)
            table.append(rows)
        return table

    @cached_property
    def _in_index(self):
        table = []
        for l, level in enumerate(self.edges):
            rows = [[] for _ in self.levels[l + 1]]
            for k, e in enumerate(level):
                rows[e.dst].append(k)
            table.append(rows)
        return table

    def out_edges(self, level: int, v: int) -> list[int]:
        """Indices into ``edges[level]`` of the edges leaving vertex ``v`` of ``V_level``."""
        return self._out_index[level][v]

    def in_edges(self, level: int, v: int) -> list[int]:
        """Indices into ``edges[level-1]`` of the edges entering vertex ``v`` of ``V_level``."""
        return self._in_index[level - 1][v]

    @cached_property
    def _successors(self):
        # per level: vertex -> {label: sorted targets}
        table = []
        for l, level in enumerate(self.edges):
            rows = [defaultdict(set) for _ in self.levels[l]]
            for e in level:
                rows[e.src][e.label].add(e.dst)
            table.append([{a: tuple(sorted(t)) for a, t in row.items()} for row in rows])
        return table

    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "levels": [list(names) for names in self.levels],
            "edges": [[[e.src, e.dst, e.label] for e in level] for level in self.edges],
            "iota": [list(parents) for parents in self.iota],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "LambdaGraphSystem":
        if not isinstance(doc, Mapping):
            raise StructuralError("expected an object", "$")
        for key in ("alphabet", "levels", "edges", "iota"):
            if key not in doc:
                raise StructuralError(f"missing field {key!r}", "$")
        alphabet = check_alphabet(_as_list(doc["alphabet"], "$.alphabet"))
        levels = []
        for l, names in enumerate(_as_list(doc["levels"], "$.levels")):
            names = _as_list(names, f"$.levels[{l}]")
            for i, name in enumerate(names):
                if not isinstance(name, str):
                    raise StructuralError("vertex name must be a string", f"$.levels[{l}][{i}]")
            levels.append(tuple(names))
        edges = []
        for l, level in enumerate(_as_list(doc["edges"], "$.edges")):
            row = []
            for k, triple in enumerate(_as_list(level, f"$.edges[{l}]")):
                where = f"$.edges[{l}][{k}]"
                triple = _as_list(triple, where)
                if len(triple) != 3:
                    raise StructuralError("edge must be [src, dst, label]", where)
                src, dst, label = triple
                if not (_is_int(src) and _is_int(dst) and isinstance(label, str)):
                    raise StructuralError("edge must be [int, int, str]", where)
                row.append(Edge(src, dst, label))
            edges.append(tuple(row))
        iota = []
        for l, parents in enumerate(_as_list(doc["iota"], "$.iota")):
            parents = _as_list(parents, f"$.iota[{l}]")
            for j, p in enumerate(parents):
                if not _is_int(p):
                    raise StructuralError("parent index must be an integer", f"$.iota[{l}][{j}]")
            iota.append(tuple(parents))
        lgs = cls(alphabet, tuple(levels), tuple(edges), tuple(iota))
        check_structure(lgs)
        return lgs


def _as_list(value, where):
    if not isinstance(value, list):
        raise StructuralError("expected a list", where)
    return value


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def check_structure(lgs: LambdaGraphSystem) -> None:
    """Raise :class:`StructuralError` unless every index reference is in range."""
    check_alphabet(lgs.alphabet)
    L = lgs.max_level
    if L < 0:
        raise StructuralError("a system needs at least level 0", "levels")
    if len(lgs.edges) != L:
        raise StructuralError(f"expected {L} edge levels, found {len(lgs.edges)}", "edges")
    if len(lgs.iota) != L:
        raise StructuralError(f"expected {L} iota levels, found {len(lgs.iota)}", "iota")
    symbols = set(lgs.alphabet)
    for l, level in enumerate(lgs.edges):
        n_src, n_dst = lgs.size(l), lgs.size(l + 1)
        for k, e in enumerate(level):
            where = f"edges[{l}][{k}]"
            if not 0 <= e.src < n_src:
                raise StructuralError(f"source {e.src} out of range for V_{l} of size {n_src}", where)
            if not 0 <= e.dst < n_dst:
                raise StructuralError(f"terminal {e.dst} out of range for V_{l + 1} of size {n_dst}", where)
            if e.label not in symbols:
                raise StructuralError(f"label {e.label!r} not in alphabet", where)
    for l, parents in enumerate(lgs.iota):
        if len(parents) != lgs.size(l + 1):
            raise StructuralError(
                f"iota must map all {lgs.size(l + 1)} vertices of V_{l + 1}, got {len(parents)}", f"iota[{l}]"
            )
        for j, p in enumerate(parents):
            if not 0 <= p < lgs.size(l):
                raise StructuralError(f"parent {p} out of range for V_{l}", f"iota[{l}][{j}]")


def validate(lgs: LambdaGraphSystem) -> ValidationReport:
    """Check surjectivity of ι, the successor condition, compatibility and the
    local property. Raises :class:`StructuralError` on malformed indices."""
    check_structure(lgs)
    L = lgs.max_level
    out: list[Violation] = []

    for l, parents in enumerate(lgs.iota):
        missing = sorted(set(range(lgs.size(l))) - set(parents))
        for i in missing:
            out.append(Violation("surjectivity", l, {"vertex": i, "name": lgs.levels[l][i]}))

    for l in range(L):
        for v in range(lgs.size(l)):
            if not lgs.out_edges(l, v):
                out.append(Violation("successor", l, {"vertex": v, "name": lgs.levels[l][v]}))
    for l in range(1, L + 1):
        for v in range(lgs.size(l)):
            if not lgs.in_edges(l, v):
                out.append(Violation("predecessor", l, {"vertex": v, "name": lgs.levels[l][v]}))

    for l in range(1, L):
        lower, upper, iota = lgs.edges[l - 1], lgs.edges[l], lgs.iota[l]
        labels_into_lower = [set() for _ in range(lgs.size(l))]
        for f in lower:
            labels_into_lower[f.dst].add(f.label)
        labels_into_upper = [set() for _ in range(lgs.size(l + 1))]
        for e in upper:
            labels_into_upper[e.dst].add(e.label)
        for v in range(lgs.size(l + 1)):
            a, b = labels_into_upper[v], labels_into_lower[iota[v]]
            if a != b:
                out.append(
                    Violation(
                        "compatibility",
                        l,
                        {
                            "vertex": v,
                            "parent": iota[v],
                            "only_above": sort_words([(s,) for s in a - b], lgs.alphabet),
                            "only_below": sort_words([(s,) for s in b - a], lgs.alphabet),
                        },
                    )
                )

        # E^ι(u, v): edges s -> v in E_{l,l+1} with ι(s) = u
        above = Counter((lgs.iota[l - 1][e.src], e.dst, e.label) for e in upper)
        # E_ι(u, v): edges u -> ι(v) in E_{l-1,l}
        into = defaultdict(list)
        for f in lower:
            into[f.dst].append(f)
        below = Counter()
        for v in range(lgs.size(l + 1)):
            for f in into[iota[v]]:
                below[(f.src, v, f.label)] += 1
        for key in sorted(set(above) | set(below)):
            if above[key] != below[key]:
                u, v, label = key
                out.append(
                    Violation(
                        "local_property",
                        l,
                        {"u": u, "v": v, "label": label, "above": above[key], "below": below[key]},
                    )
                )
    return ValidationReport(tuple(out))


def is_left_resolving(lgs: LambdaGraphSystem) -> bool:
    for level in lgs.edges:
        seen = set()
        for e in level:
            if (e.dst, e.label) in seen:
                return False
            seen.add((e.dst, e.label))
    return True


@dataclass(frozen=True)
class PredecessorSet:
    level: int
    words: frozenset

    def __post_init__(self):
        for w in self.words:
            if len(w) != self.level:
                raise ValueError(f"word {w} does not have length {self.level}")


def predecessor_set(lgs: LambdaGraphSystem, level: int, v: int, depth: int | None = None) -> PredecessorSet:
    """Labels of all paths of length ``depth`` ending at vertex ``v`` of ``V_level``.

    Enumerates backwards from ``v``. ``depth`` defaults to ``level``, which
    gives the predecessor set traced from ``V_0``.
    """
    if depth is None:
        depth = level
    if not 0 <= depth <= level:
        raise OutOfRangeError(f"depth {depth} must lie in [0, {level}]")
    memo: dict[tuple[int, int, int], frozenset] = {}

    def back(l, u, d):
        if d == 0:
            return frozenset([()])
        key = (l, u, d)
        if key not in memo:
            acc = set()
            for k in lgs.in_edges(l, u):
                e = lgs.edges[l - 1][k]
                acc.update(w + (e.label,) for w in back(l - 1, e.src, d - 1))
            memo[key] = frozenset(acc)
        return memo[key]

    return PredecessorSet(depth, back(level, v, depth))


def predecessor_sets_forward(lgs: LambdaGraphSystem, level: int, depth: int | None = None) -> list[PredecessorSet]:
    """Predecessor sets of every vertex of ``V_level``, by pushing word sets
    forward from ``V_{level-depth}``."""
    if depth is None:
        depth = level
    if not 0 <= depth <= level:
        raise OutOfRangeError(f"depth {depth} must lie in [0, {level}]")
    start = level - depth
    current = [{()} for _ in range(lgs.size(start))]
    for l in range(start, level):
        nxt = [set() for _ in range(lgs.size(l + 1))]
        for e in lgs.edges[l]:
            nxt[e.dst].update(w + (e.label,) for w in current[e.src])
        current = nxt
    return [PredecessorSet(depth, frozenset(ws)) for ws in current]


def is_predecessor_separated(lgs: LambdaGraphSystem) -> bool:
    for l in range(lgs.max_level + 1):
        sets = predecessor_sets_forward(lgs, l)
        if len({p.words for p in sets}) != len(sets):
            return False
    return True


def admissible_words(lgs: LambdaGraphSystem, k: int) -> list[Word]:
    """Sorted label sequences of length-``k`` paths starting at any level ``l``
    with ``l + k <= L``."""
    L = lgs.max_level
    if k < 0 or k > L:
        raise OutOfRangeError(f"word length {k} exceeds truncation level {L}")
    found: set[Word] = set()
    succ = lgs._successors
    for start in range(L - k + 1):
        # word -> set of vertices reached, all on the same level
        frontier: dict[Word, frozenset] = {(): frozenset(range(lgs.size(start)))}
        for step in range(k):
            l = start + step
            nxt: dict[Word, set] = defaultdict(set)
            for word, verts in frontier.items():
                for v in verts:
                    for label, targets in succ[l][v].items():
                        nxt[word + (label,)].update(targets)
            frontier = {w: frozenset(vs) for w, vs in nxt.items()}
        found.update(frontier)
    return sort_words(found, lgs.alphabet)


@dataclass(frozen=True)
class LabeledGraph:
    """A finite directed graph with labeled edges ``(src, dst, label)`` given by vertex name."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    alphabet: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if not self.alphabet:
            seen = dict.fromkeys(label for _, _, label in self.edges)
            object.__setattr__(self, "alphabet", tuple(seen))
        else:
            object.__setattr__(self, "alphabet", tuple(self.alphabet))


def from_labeled_graph(graph: LabeledGraph, L: int) -> LambdaGraphSystem:
    """The constant system ``V_l = V``, ``E_{l,l+1} = E``, ``ι = id`` up to level ``L``."""
    index = {name: i for i, name in enumerate(graph.vertices)}
    if len(index) != len(graph.vertices):
        raise StructuralError("duplicate vertex names", "vertices")
    alphabet = check_alphabet(graph.alphabet)
    has_out, has_in = set(), set()
    edges = []
    for k, (src, dst, label) in enumerate(graph.edges):
        if src not in index or dst not in index:
            raise StructuralError(f"edge {k} references an unknown vertex", f"edges[{k}]")
        if label not in alphabet:
            raise UnknownSymbolError(label)
        has_out.add(src)
        has_in.add(dst)
        edges.append(Edge(index[src], index[dst], label))
    stranded = [v for v in graph.vertices if v not in has_out or v not in has_in]
    if stranded:
        raise NonEssentialGraphError(stranded)
    n = len(graph.vertices)
    return LambdaGraphSystem(
        alphabet,
        tuple(graph.vertices for _ in range(L + 1)),
        tuple(tuple(edges) for _ in range(L)),
        tuple(tuple(range(n)) for _ in range(L)),
    )


@dataclass(frozen=True)
class StructureMatrices:
    alphabet: tuple[str, ...]
    A: tuple  # A[l][i][a][j]
    I: tuple  # I[l][i][j]

    def to_dict(self) -> dict:
        return {"alphabet": list(self.alphabet), "A": _lists(self.A), "I": _lists(self.I)}


def _lists(x):
    return [_lists(y) for y in x] if isinstance(x, (list, tuple)) else x


def structure_matrices(lgs: LambdaGraphSystem) -> StructureMatrices:
    A, I = [], []
    for l, level in enumerate(lgs.edges):
        m, n = lgs.size(l), lgs.size(l + 1)
        a = [[[0] * n for _ in lgs.alphabet] for _ in range(m)]
        for e in level:
            a[e.src][lgs.symbol_index[e.label]][e.dst] = 1
        inc = [[0] * n for _ in range(m)]
        for j, i in enumerate(lgs.iota[l]):
            inc[i][j] = 1
        A.append(a)
        I.append(inc)
    return StructureMatrices(lgs.alphabet, _tuples(A), _tuples(I))


def _tuples(x):
    return tuple(_tuples(y) for y in x) if isinstance(x, list) else x


def normalized(lgs: LambdaGraphSystem) -> LambdaGraphSystem:
    """Same system with each edge level sorted by (source, terminal, label position)."""
    pos = lgs.symbol_index
    edges = tuple(tuple(sorted(level, key=lambda e: (e.src, e.dst, pos[e.label]))) for level in lgs.edges)
    return LambdaGraphSystem(lgs.alphabet, lgs.levels, edges, lgs.iota)


def truncated(lgs: LambdaGraphSystem, L: int) -> LambdaGraphSystem:
    if not 0 <= L <= lgs.max_level:
        raise OutOfRangeError(f"cannot truncate a depth-{lgs.max_level} system at {L}")
    return LambdaGraphSystem(lgs.alphabet, lgs.levels[: L + 1], lgs.edges[:L], lgs.iota[:L])


def shifted(lgs: LambdaGraphSystem, steps: int = 1) -> LambdaGraphSystem:
    """Drop the bottom ``steps`` levels, so that new level ``l`` is old level ``l + steps``."""
    if not 0 <= steps <= lgs.max_level:
        raise OutOfRangeError(f"cannot shift a depth-{lgs.max_level} system by {steps}")
    return LambdaGraphSystem(lgs.alphabet, lgs.levels[steps:], lgs.edges[steps:], lgs.iota[steps:])


@dataclass(frozen=True)
class LgsMorphism:
    """Level-wise vertex and edge maps: ``vertices[l][i]`` is the image of vertex ``i`` of ``V_l``."""

    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "edges": [list(e) for e in self.edges]}


def morphism_violations(
    a: LambdaGraphSystem,
    b: LambdaGraphSystem,
    m: LgsMorphism,
    symbol_map: Mapping[str, str] | None = None,
) -> list[Violation]:
    """Check that ``m`` is a level-wise bijection from ``a`` onto ``b`` commuting
    with source, terminal, ι and (through ``symbol_map``) labels."""
    sym = (lambda s: s) if symbol_map is None else symbol_map.__getitem__
    out = []
    if a.dims != b.dims or len(m.vertices) != len(a.levels) or len(m.edges) != len(a.edges):
        return [Violation("shape", None, {"source_dims": list(a.dims), "target_dims": list(b.dims)})]
    for l, vmap in enumerate(m.vertices):
        if sorted(vmap) != list(range(b.size(l))):
            out.append(Violation("vertex_bijection", l, {"map": list(vmap)}))
    for l, emap in enumerate(m.edges):
        if sorted(emap) != list(range(len(b.edges[l]))) or len(a.edges[l]) != len(b.edges[l]):
            out.append(Violation("edge_bijection", l, {"map": list(emap)}))
            continue
        for k, e in enumerate(a.edges[l]):
            f = b.edges[l][emap[k]]
            if f.src != m.vertices[l][e.src]:
                out.append(Violation("source", l, {"edge": k}))
            if f.dst != m.vertices[l + 1][e.dst]:
                out.append(Violation("terminal", l, {"edge": k}))
            if f.label != sym(e.label):
                out.append(Violation("label", l, {"edge": k, "label": e.label, "image": f.label}))
    for l, parents in enumerate(a.iota):
        for j, p in enumerate(parents):
            if m.vertices[l][p] != b.iota[l][m.vertices[l + 1][j]]:
                out.append(Violation("iota", l, {"vertex": j}))
    return out


def _follower_key(lgs, level, v, depth, sym):
    words = {()}
    frontier = {((), v)}
    for step in range(min(depth, lgs.max_level - level)):
        l = level + step
        frontier = {
            (w + (sym(e.label),), e.dst) for w, u in frontier for k in lgs.out_edges(l, u) for e in [lgs.edges[l][k]]
        }
        words.update(w for w, _ in frontier)
    return frozenset(words)


def find_isomorphism(
    a: LambdaGraphSystem,
    b: LambdaGraphSystem,
    symbol_map: Mapping[str, str] | None = None,
    budget: int = 200_000,
) -> LgsMorphism | None:
    """Search for an isomorphism ``a -> b`` (labels translated by ``symbol_map``).

    Level-by-level backtracking: candidates for a vertex of ``V_{l+1}`` must agree
    on the image of its parent, its incoming edges and its short follower words.
    Raises :class:`SearchSpaceExceeded` rather than giving up silently.
    """
    sym = (lambda s: s) if symbol_map is None else symbol_map.__getitem__
    if a.dims != b.dims or [len(x) for x in a.edges] != [len(x) for x in b.edges]:
        return None
    ident = lambda s: s
    L = a.max_level
    steps = [0]

    def signature(sys, l, v, vmap_prev, relabel):
        follow = _follower_key(sys, l, v, 2, relabel)
        if l == 0:
            return (follow,)
        parent = vmap_prev[sys.iota[l - 1][v]] if vmap_prev is not None else sys.iota[l - 1][v]
        incoming = Counter()
        for k in sys.in_edges(l, v):
            e = sys.edges[l - 1][k]
            src = vmap_prev[e.src] if vmap_prev is not None else e.src
            incoming[(src, relabel(e.label))] += 1
        return (parent, frozenset(incoming.items()), follow)

    def level_candidates(l, prev):
        groups_a, groups_b = defaultdict(list), defaultdict(list)
        for v in range(a.size(l)):
            groups_a[signature(a, l, v, prev, sym)].append(v)
        for w in range(b.size(l)):
            groups_b[signature(b, l, w, None, ident)].append(w)
        if set(groups_a) != set(groups_b) or any(len(groups_a[s]) != len(groups_b[s]) for s in groups_a):
            return
        keys = list(groups_a)
        for choice in product(*(permutations(groups_b[s]) for s in keys)):
            steps[0] += 1
            if steps[0] > budget:
                raise SearchSpaceExceeded(steps[0], budget)
            vmap = [0] * a.size(l)
            for s, image in zip(keys, choice):
                for v, w in zip(groups_a[s], image):
                    vmap[v] = w
            yield tuple(vmap)

    def extend(l, maps):
        if l > L:
            return maps
        for vmap in level_candidates(l, maps[-1] if maps else None):
            found = extend(l + 1, maps + [vmap])
            if found is not None:
                return found
        return None

    vmaps = extend(0, [])
    if vmaps is None:
        return None
    emaps = []
    for l in range(L):
        pool = defaultdict(list)
        for k, f in enumerate(b.edges[l]):
            pool[(f.src, f.dst, f.label)].append(k)
        emap = []
        for e in a.edges[l]:
            bucket = pool[(vmaps[l][e.src], vmaps[l + 1][e.dst], sym(e.label))]
            if not bucket:
                return None
            emap.append(bucket.pop(0))
        emaps.append(tuple(emap))
    m = LgsMorphism(tuple(vmaps), tuple(emaps))
    return m if not morphism_violations(a, b, m, symbol_map) else None

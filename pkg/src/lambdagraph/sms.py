"""Symbolic matrix systems.

A symbolic matrix system is a pair of sequences ``(M_{l,l+1}, I_{l,l+1})``:
``M`` has entries in formal sums of symbols and ``I`` is a 0/1 matrix. Matrices
are tuples of rows. Entries of ``M`` are :class:`FormalSum` values whose terms
are words (tuples of symbols), so products such as ``P Q`` over a product
alphabet are multisets of two-letter words.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .core import (
    Edge,
    LambdaGraphSystem,
    ReportBuilder,
    ValidationReport,
    Violation,
    check_alphabet,
    check_structure,
)
from .errors import DimensionError, InvalidSystemError, StructuralError
from .finite_group import FiniteGroup, check_labeling


def _as_word(term) -> tuple:
    if isinstance(term, str):
        return (term,)
    return tuple(term)


class FormalSum:
    """A finite multiset of words; the empty multiset is 0.

    >>> FormalSum(["a", "b"]) * FormalSum(["c"]) == FormalSum([("a", "c"), ("b", "c")])
    True
    >>> FormalSum(["a"]) + FormalSum(["a"]) == FormalSum(["a"])
    False
    """

    __slots__ = ("_counts", "_key")

    def __init__(self, terms: Iterable = ()):
        counts = Counter(_as_word(t) for t in terms)
        self._counts = counts
        self._key = frozenset(counts.items())

    @classmethod
    def _from_counter(cls, counts: Counter) -> "FormalSum":
        out = cls.__new__(cls)
        out._counts = +counts
        out._key = frozenset(out._counts.items())
        return out

    @property
    def counts(self) -> Counter:
        return Counter(self._counts)

    def terms(self) -> list[tuple]:
        """All terms with multiplicity, in a fixed order."""
        return sorted(self._counts.elements())

    def __len__(self):
        return sum(self._counts.values())

    def __bool__(self):
        return bool(self._counts)

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum._from_counter(self._counts + other._counts)

    def __mul__(self, other: "FormalSum") -> "FormalSum":
        out = Counter()
        for u, m in self._counts.items():
            for v, n in other._counts.items():
                out[u + v] += m * n
        return FormalSum._from_counter(out)

    def scale(self, n: int) -> "FormalSum":
        return FormalSum._from_counter(Counter({w: c * n for w, c in self._counts.items()})) if n else ZERO

    def relabel(self, f: Callable[[tuple], tuple] | Mapping) -> "FormalSum":
        """Apply ``f`` to each term. A mapping is applied symbol by symbol, and
        the images (a symbol or a word) are concatenated."""
        if isinstance(f, Mapping):
            table = f
            f = lambda w: sum((_as_word(table[s]) for s in w), ())
        out = Counter()
        for w, c in self._counts.items():
            out[_as_word(f(w))] += c
        return FormalSum._from_counter(out)

    def symbols(self) -> set[str]:
        return {s for w in self._counts for s in w}

    def to_json(self) -> list:
        return [w[0] if len(w) == 1 else list(w) for w in self.terms()]

    @classmethod
    def from_json(cls, value, where: str = "$") -> "FormalSum":
        if not isinstance(value, list):
            raise StructuralError("formal sum must be a list of terms", where)
        terms = []
        for i, t in enumerate(value):
            if isinstance(t, str):
                terms.append((t,))
            elif isinstance(t, list) and all(isinstance(s, str) for s in t):
                terms.append(tuple(t))
            else:
                raise StructuralError("term must be a symbol or a list of symbols", f"{where}[{i}]")
        return cls(terms)

    def __repr__(self):
        if not self._counts:
            return "0"
        return " + ".join("".join(w) if all(len(s) == 1 for s in w) else "·".join(w) for w in self.terms())


ZERO = FormalSum()

Matrix = tuple  # tuple of rows


def shape(A) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise DimensionError("ragged matrix")
    return rows, cols


def _check_inner(A, B, where):
    (r, c), (r2, c2) = shape(A), shape(B)
    if c != r2:
        raise DimensionError(f"cannot multiply {r}x{c} by {r2}x{c2}", where)
    return r, c, c2


def sym_mul(A, B, where: str = "") -> Matrix:
    """Product of two symbolic matrices; terms concatenate."""
    r, n, c = _check_inner(A, B, where)
    out = []
    for i in range(r):
        row = []
        for k in range(c):
            acc = Counter()
            for j in range(n):
                if A[i][j] and B[j][k]:
                    acc.update((A[i][j] * B[j][k])._counts)
            row.append(FormalSum._from_counter(acc))
        out.append(tuple(row))
    return tuple(out)


def int_sym(X, M, where: str = "") -> Matrix:
    """Nonnegative integer matrix times symbolic matrix."""
    r, n, c = _check_inner(X, M, where)
    out = []
    for i in range(r):
        row = []
        for k in range(c):
            acc = Counter()
            for j in range(n):
                if X[i][j]:
                    for w, m in M[j][k]._counts.items():
                        acc[w] += X[i][j] * m
            row.append(FormalSum._from_counter(acc))
        out.append(tuple(row))
    return tuple(out)


def sym_int(M, X, where: str = "") -> Matrix:
    r, n, c = _check_inner(M, X, where)
    out = []
    for i in range(r):
        row = []
        for k in range(c):
            acc = Counter()
            for j in range(n):
                if X[j][k]:
                    for w, m in M[i][j]._counts.items():
                        acc[w] += X[j][k] * m
            row.append(FormalSum._from_counter(acc))
        out.append(tuple(row))
    return tuple(out)


def int_mul(X, Y, where: str = "") -> Matrix:
    r, n, c = _check_inner(X, Y, where)
    return tuple(tuple(sum(X[i][j] * Y[j][k] for j in range(n)) for k in range(c)) for i in range(r))


def zg_mul(group: FiniteGroup, A, B, where: str = "") -> Matrix:
    """Product over the semigroup ring Z_+G; entries are sums of one-letter words."""
    r, n, c = _check_inner(A, B, where)
    out = []
    for i in range(r):
        row = []
        for k in range(c):
            acc = Counter()
            for j in range(n):
                for (g,), m in A[i][j]._counts.items():
                    for (h,), p in B[j][k]._counts.items():
                        acc[(group.mul(g, h),)] += m * p
            row.append(FormalSum._from_counter(acc))
        out.append(tuple(row))
    return tuple(out)


def relabel_matrix(M, f) -> Matrix:
    return tuple(tuple(x.relabel(f) for x in row) for row in M)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """The matrix with a 1 at ``(i, perm[i])``."""
    n = len(perm)
    return tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))


def matrix_differences(lhs, rhs, equation: str, level: int | None, limit: int = 5) -> list[Violation]:
    """Located entries where two equally shaped matrices differ."""
    if shape(lhs) != shape(rhs):
        raise DimensionError(f"{equation}: shapes {shape(lhs)} and {shape(rhs)} differ", f"level {level}")
    out = []
    for i, (ra, rb) in enumerate(zip(lhs, rhs)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                out.append(Violation(equation, level, {"entry": [i, j], "lhs": _show(x), "rhs": _show(y)}))
                if len(out) >= limit:
                    return out
    return out


def _show(x):
    return x.to_json() if isinstance(x, FormalSum) else x


@dataclass(frozen=True)
class SymbolicMatrixSystem:
    """``M[l]`` is ``M_{l,l+1}`` and ``I[l]`` is ``I_{l,l+1}``; ``dims[l] = m(l)``.

    ``names`` optionally keeps vertex display names so that conversion back to a
    λ-graph system is lossless.
    """

    alphabet: tuple[str, ...]
    dims: tuple[int, ...]
    M: tuple
    I: tuple
    names: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "M", tuple(tuple(tuple(r) for r in m) for m in self.M))
        object.__setattr__(self, "I", tuple(tuple(tuple(r) for r in m) for m in self.I))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(tuple(n) for n in self.names))

    @property
    def max_level(self) -> int:
        return len(self.M)

    def to_dict(self) -> dict:
        doc = {
            "alphabet": list(self.alphabet),
            "dims": list(self.dims),
            "M": [[[x.to_json() for x in row] for row in m] for m in self.M],
            "I": [[list(row) for row in m] for m in self.I],
        }
        if self.names is not None:
            doc["names"] = [list(n) for n in self.names]
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SymbolicMatrixSystem":
        if not isinstance(doc, Mapping):
            raise StructuralError("expected an object", "$")
        for key in ("alphabet", "M", "I"):
            if key not in doc:
                raise StructuralError(f"missing field {key!r}", "$")
        alphabet = check_alphabet(doc["alphabet"])
        M = [
            [[FormalSum.from_json(x, f"$.M[{l}][{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(m)]
            for l, m in enumerate(doc["M"])
        ]
        I = doc["I"]
        for l, m in enumerate(I):
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    if not isinstance(x, int) or isinstance(x, bool):
                        raise StructuralError("I entries must be integers", f"$.I[{l}][{i}][{j}]")
        dims = doc.get("dims")
        if dims is None:
            if not M:
                raise StructuralError("dims are required when there are no matrices", "$")
            dims = [len(m) for m in M] + [len(M[-1][0]) if M[-1] else 0]
        sms = cls(alphabet, tuple(dims), M, I, doc.get("names"))
        check_sms_shapes(sms)
        return sms


def check_sms_shapes(sms: SymbolicMatrixSystem) -> None:
    L = sms.max_level
    if len(sms.I) != L:
        raise DimensionError(f"{L} M matrices but {len(sms.I)} I matrices", "I")
    if len(sms.dims) != L + 1:
        raise DimensionError(f"expected {L + 1} dimensions, found {len(sms.dims)}", "dims")
    for l in range(L):
        want = (sms.dims[l], sms.dims[l + 1])
        for name, mats in (("M", sms.M), ("I", sms.I)):
            m = mats[l]
            got = (len(m), len(m[0]) if m else want[1])
            if got != want or any(len(r) != want[1] for r in m):
                raise DimensionError(f"{name}_{{{l},{l + 1}}} should be {want[0]}x{want[1]}", f"{name}[{l}]")
    symbols = set(sms.alphabet)
    for l, m in enumerate(sms.M):
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                for w in x.terms():
                    if len(w) != 1 or w[0] not in symbols:
                        raise StructuralError(f"term {w} is not a symbol of the alphabet", f"M[{l}][{i}][{j}]")
    if sms.names is not None:
        if [len(n) for n in sms.names] != list(sms.dims):
            raise DimensionError("vertex names do not match dims", "names")


def _shape_violations(M, I, dims) -> list[Violation]:
    out = []
    for l in range(len(M)):
        for name, m in (("M", M[l]), ("I", I[l])):
            for i, row in enumerate(m):
                if not any(row):
                    out.append(Violation("zero_row", l, {"matrix": name, "row": i}))
            for j in range(dims[l + 1]):
                if not any(m[i][j] for i in range(dims[l])):
                    out.append(Violation("zero_column", l, {"matrix": name, "column": j}))
        for i, row in enumerate(I[l]):
            for j, x in enumerate(row):
                if x not in (0, 1):
                    out.append(Violation("iota_entry", l, {"entry": [i, j], "value": x}))
        for j in range(dims[l + 1]):
            ones = sum(1 for i in range(dims[l]) if I[l][i][j])
            if ones != 1:
                out.append(Violation("iota_column", l, {"column": j, "nonzero": ones}))
        if dims[l] > dims[l + 1]:
            out.append(Violation("dimension_growth", l, {"m": dims[l], "next": dims[l + 1]}))
    return out


def validate_sms(sms: SymbolicMatrixSystem) -> ValidationReport:
    """Commutation ``I_{l,l+1} M_{l+1,l+2} = M_{l,l+1} I_{l+1,l+2}``, no zero lines,
    exactly one 1 per column of ``I`` and nondecreasing dimensions."""
    check_sms_shapes(sms)
    out = _shape_violations(sms.M, sms.I, sms.dims)
    for l in range(sms.max_level - 1):
        lhs = int_sym(sms.I[l], sms.M[l + 1])
        rhs = sym_int(sms.M[l], sms.I[l + 1])
        out.extend(
            Violation("commutation", l, v.witness) for v in matrix_differences(lhs, rhs, "commutation", l, limit=10**9)
        )
    return ValidationReport(tuple(out))


def lgs_to_sms(lgs: LambdaGraphSystem) -> SymbolicMatrixSystem:
    check_structure(lgs)
    M, I = [], []
    for l, level in enumerate(lgs.edges):
        m, n = lgs.size(l), lgs.size(l + 1)
        cells = [[[] for _ in range(n)] for _ in range(m)]
        for e in level:
            cells[e.src][e.dst].append(e.label)
        M.append([[FormalSum(c) for c in row] for row in cells])
        inc = [[0] * n for _ in range(m)]
        for j, i in enumerate(lgs.iota[l]):
            inc[i][j] = 1
        I.append(inc)
    return SymbolicMatrixSystem(lgs.alphabet, lgs.dims, M, I, lgs.levels)


def sms_to_lgs(sms: SymbolicMatrixSystem) -> LambdaGraphSystem:
    """Inverse of :func:`lgs_to_sms`; edges come out sorted by (source, terminal, label position)."""
    report = validate_sms(sms)
    if not report.ok:
        raise InvalidSystemError("symbolic matrix system is not valid", report.violations)
    pos = {s: i for i, s in enumerate(sms.alphabet)}
    names = sms.names or tuple(tuple(f"v{l}_{i}" for i in range(n)) for l, n in enumerate(sms.dims))
    edges = []
    for l, m in enumerate(sms.M):
        level = []
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                for (a,) in sorted(x.terms(), key=lambda w: pos[w[0]]):
                    level.append(Edge(i, j, a))
        edges.append(tuple(level))
    iota = [tuple(next(i for i in range(sms.dims[l]) if sms.I[l][i][j]) for j in range(sms.dims[l + 1])) for l in range(sms.max_level)]
    return LambdaGraphSystem(sms.alphabet, names, tuple(edges), tuple(iota))


@dataclass(frozen=True)
class GroupMatrixSystem:
    """``(M^ℓ, I)``: the entries of ``M`` relabeled through ``ℓ`` into Z_+G.

    The underlying symbolic system and labeling are kept, since several checks
    need both.
    """

    group: FiniteGroup
    base: SymbolicMatrixSystem
    labeling: dict
    Mg: tuple

    @property
    def I(self):
        return self.base.I

    @property
    def dims(self):
        return self.base.dims

    @property
    def max_level(self):
        return self.base.max_level

    def to_dict(self) -> dict:
        return {
            "group": self.group.to_dict(),
            "labeling": dict(sorted(self.labeling.items())),
            "dims": list(self.dims),
            "M": [[[x.to_json() for x in row] for row in m] for m in self.Mg],
            "I": [[list(row) for row in m] for m in self.I],
        }


def to_group_system(sms: SymbolicMatrixSystem, group: FiniteGroup, ell: Mapping[str, str]) -> GroupMatrixSystem:
    ell = check_labeling(sms.alphabet, ell, group)
    Mg = tuple(relabel_matrix(m, ell) for m in sms.M)
    return GroupMatrixSystem(group, sms, ell, Mg)


def validate_group_system(gms: GroupMatrixSystem) -> ValidationReport:
    out = _shape_violations(gms.Mg, gms.I, gms.dims)
    for l in range(gms.max_level - 1):
        lhs = int_sym(gms.I[l], gms.Mg[l + 1])
        rhs = sym_int(gms.Mg[l], gms.I[l + 1])
        out.extend(matrix_differences(lhs, rhs, "commutation", l, limit=10**9))
    return ValidationReport(tuple(out))


def check_sms_isomorphism(
    a: SymbolicMatrixSystem,
    b: SymbolicMatrixSystem,
    perms: Sequence[Sequence[int]],
    phi: Mapping[str, str],
    offsets: tuple[int, int] = (0, 0),
    bijective: bool = True,
):
    """Check ``P_l M_{l+k} ≃^φ M'_{l+k'} P_{l+1}`` and ``P_l I_{l+k} = I'_{l+k'} P_{l+1}``.

    ``perms[l]`` gives the permutation matrix ``P_l`` with a 1 at ``(i, perms[l][i])``.
    ``offsets = (k, k')`` compares ``a`` from level ``k`` with ``b`` from level
    ``k'``. With ``bijective=False`` the symbol map may identify symbols, which
    checks an isomorphism of the underlying graphs up to a labeling factor map.
    """
    k, kp = offsets
    depth = min(a.max_level - k, b.max_level - kp)
    if depth < 0:
        raise DimensionError("offsets exceed the truncation level")
    if len(perms) < depth + 1:
        raise DimensionError(f"need {depth + 1} permutations, got {len(perms)}", "perms")
    rb = ReportBuilder("sms_isomorphism")
    missing = [s for s in a.alphabet if s not in phi]
    images = [phi[s] for s in a.alphabet if s in phi]
    bad_phi = []
    if missing:
        bad_phi.append(Violation("specification", None, {"undefined_on": missing}))
    if bijective and (len(set(images)) != len(images) or set(images) != set(b.alphabet)):
        bad_phi.append(Violation("specification", None, {"reason": "not a bijection onto the target alphabet"}))
    if any(x not in set(b.alphabet) for x in images):
        bad_phi.append(Violation("specification", None, {"reason": "image outside the target alphabet"}))
    rb.record("specification", None, bad_phi)
    if bad_phi:
        return rb.build()
    for l in range(depth + 1):
        if a.dims[l + k] != b.dims[l + kp] or len(perms[l]) != a.dims[l + k]:
            raise DimensionError(f"dimension mismatch at level {l}", f"perms[{l}]")
        bad = [] if sorted(perms[l]) == list(range(len(perms[l]))) else [
            Violation("permutation", l, {"perm": list(perms[l])})
        ]
        rb.record("permutation", l, bad)
    if not rb.build().ok:
        return rb.build()
    P = [permutation_matrix(p) for p in perms[: depth + 1]]
    for l in range(depth):
        lhs = relabel_matrix(int_sym(P[l], a.M[l + k]), phi)
        rhs = sym_int(b.M[l + kp], P[l + 1])
        rb.record("M", l, matrix_differences(lhs, rhs, "M", l))
        rb.record("I", l, matrix_differences(int_mul(P[l], a.I[l + k]), int_mul(b.I[l + kp], P[l + 1]), "I", l))
    return rb.build()

"""Finite groups given by Cayley tables, and symbol labelings into them."""

from __future__ import annotations

from itertools import permutations
from typing import Mapping, Sequence

from .errors import GroupLawError, StructuralError, UnknownSymbolError


class FiniteGroup:
    """A finite group on named elements.

    ``table[i][j]`` is the name of ``elements[i] * elements[j]``. The group laws
    are checked exhaustively on construction and a :class:`GroupLawError`
    naming the offending triple is raised on failure.

    Examples
    --------
    >>> z3 = make_cyclic(3)
    >>> z3.mul("1", "2")
    '0'
    >>> z3.inv("1")
    '2'
    """

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[str]], name: str = ""):
        self.elements = tuple(elements)
        self.name = name
        if not self.elements:
            raise StructuralError("a group needs at least one element", "elements")
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise StructuralError("duplicate element names", "elements")
        n = len(self.elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise StructuralError(f"Cayley table must be {n}x{n}", "table")
        self._mul: dict[tuple[str, str], str] = {}
        for i, row in enumerate(table):
            for j, c in enumerate(row):
                if c not in self.index:
                    raise GroupLawError("closure", (self.elements[i], self.elements[j], c))
                self._mul[(self.elements[i], self.elements[j])] = c
        self._check_laws()

    def _check_laws(self):
        E, mul = self.elements, self._mul
        for a in E:
            for b in E:
                ab = mul[(a, b)]
                for c in E:
                    if mul[(ab, c)] != mul[(a, mul[(b, c)])]:
                        raise GroupLawError("associativity", (a, b, c))
        ids = [e for e in E if all(mul[(e, a)] == a and mul[(a, e)] == a for a in E)]
        if not ids:
            raise GroupLawError("identity", (E[0], E[0], mul[(E[0], E[0])]))
        self.identity = ids[0]
        self._inv = {}
        for a in E:
            inv = [b for b in E if mul[(a, b)] == self.identity and mul[(b, a)] == self.identity]
            if not inv:
                raise GroupLawError("inverse", (a, a, mul[(a, a)]))
            self._inv[a] = inv[0]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name or list(self.elements)})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.elements == other.elements and self._mul == other._mul

    def __hash__(self):
        return hash(self.elements)

    def mul(self, *xs: str) -> str:
        acc = self.identity
        for x in xs:
            acc = self._mul[(acc, x)]
        return acc

    def inv(self, a: str) -> str:
        return self._inv[a]

    def is_abelian(self) -> bool:
        return all(self._mul[(a, b)] == self._mul[(b, a)] for a in self.elements for b in self.elements)

    def conjugacy_class(self, a: str) -> frozenset:
        return frozenset(self.mul(g, a, self.inv(g)) for g in self.elements)

    def table(self) -> list[list[str]]:
        return [[self._mul[(a, b)] for b in self.elements] for a in self.elements]

    def to_dict(self) -> dict:
        return {"name": self.name, "elements": list(self.elements), "table": self.table()}


def make_cyclic(n: int) -> FiniteGroup:
    """Z_n on the names "0" .. "n-1" with addition mod n."""
    if n < 1:
        raise ValueError("n must be positive")
    names = [str(i) for i in range(n)]
    return FiniteGroup(names, [[names[(i + j) % n] for j in range(n)] for i in range(n)], name=f"Z{n}")


def make_symmetric(n: int) -> FiniteGroup:
    """Permutations of 0..n-1 in one-line notation, composed as functions: (pq)(x) = p(q(x))."""
    perms = list(permutations(range(n)))
    names = ["".join(map(str, p)) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[names[index[tuple(p[q[x]] for x in range(n))]] for q in perms] for p in perms]
    return FiniteGroup(names, table, name=f"S{n}")


def load_group(doc: Mapping) -> FiniteGroup:
    """Build a group from ``{"elements": [...], "table": [[...]]}``; the name is optional.

    ``{"cyclic": n}`` and ``{"symmetric": n}`` are accepted as shorthands.
    """
    if not isinstance(doc, Mapping):
        raise StructuralError("group document must be an object", "$")
    if "cyclic" in doc:
        return make_cyclic(int(doc["cyclic"]))
    if "symmetric" in doc:
        return make_symmetric(int(doc["symmetric"]))
    for key in ("elements", "table"):
        if key not in doc:
            raise StructuralError(f"missing field {key!r}", "$")
    elements = [str(x) for x in doc["elements"]]
    table = [[str(x) for x in row] for row in doc["table"]]
    return FiniteGroup(elements, table, name=str(doc.get("name", "")))


def check_labeling(alphabet: Sequence[str], ell: Mapping[str, str], group: FiniteGroup) -> dict[str, str]:
    """Return ``ell`` restricted to ``alphabet`` after checking totality and values."""
    out = {}
    for a in alphabet:
        if a not in ell:
            raise StructuralError(f"labeling is not defined on symbol {a!r}", "labeling")
        g = ell[a]
        if g not in group.index:
            raise StructuralError(f"symbol {a!r} is labeled by {g!r}, which is not a group element", "labeling")
        out[a] = g
    extra = set(ell) - set(alphabet)
    if extra:
        raise UnknownSymbolError(sorted(extra)[0])
    return out

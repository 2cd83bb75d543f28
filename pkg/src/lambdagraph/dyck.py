"""Dyck and Markov–Dyck shifts, the Cantor horizon system of D₂ and its Z₂-extension.

Symbols are ``a1 … aN`` (opening brackets, ``α_i``) and ``b1 … bN`` (closing
brackets, ``β_i``). For a nonnegative integer matrix ``A`` the graph ``𝒢_A`` has
one edge ``e_k`` per unit of ``A(i, j)``; ``β_k`` behaves like ``S_k`` and
``α_k`` like ``S_k^*`` in the graph inverse semigroup of ``𝒢_A``:

    S_k^* S_k = P_{t(e_k)},   S_k^* S_m = 0 (k ≠ m),   P_v = Σ_{s(e_m) = v} S_m S_m^*.

A word is admissible iff its product is nonzero. The matrix ``[N]`` gives the
Dyck shift ``D_N`` with ``α_i β_j = δ_ij``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .cohomology import periodic_orbit_obstruction, search_transfer
from .core import Edge, LambdaGraphSystem, LgsMorphism, Violation, morphism_violations, shifted, truncated
from .errors import LambdaGraphError, OutOfRangeError, StructuralError, UnknownSymbolError
from .extension import g_extension
from .finite_group import make_cyclic
from .sms import check_sms_isomorphism, lgs_to_sms
from .subshift import EdgeSFT, SubshiftSpec, pair_symbol

D2_ALPHABET = ("a1", "a2", "b1", "b2")

#: The Z₂-labeling with ``ℓ(α₁) = ℓ(β₁) = 1`` and ``ℓ(α₂) = ℓ(β₂) = 0``.
DYCK_LABELING = {"a1": "1", "a2": "0", "b1": "1", "b2": "0"}


@dataclass(frozen=True)
class DyckElement:
    """Nonzero elements are ``S_β P_v S_α^*`` where ``beta`` is the block of
    closing brackets and ``alpha`` the block of opening brackets, both as
    0-based edge indices in reading order. ``vertex`` is the middle vertex, or
    ``None`` for the unit."""

    beta: tuple[int, ...] = ()
    vertex: int | None = None
    alpha: tuple[int, ...] = ()
    zero: bool = False

    @property
    def is_one(self) -> bool:
        return not self.zero and self.vertex is None

    def word(self) -> tuple[str, ...]:
        return tuple(f"b{k + 1}" for k in self.beta) + tuple(f"a{k + 1}" for k in self.alpha)

    def to_dict(self) -> dict:
        if self.zero:
            return {"zero": True}
        return {"beta": [f"b{k + 1}" for k in self.beta], "vertex": self.vertex, "alpha": [f"a{k + 1}" for k in self.alpha]}


ZERO = DyckElement(zero=True)
ONE = DyckElement()


@dataclass(eq=False)
class MarkovDyck(SubshiftSpec):
    """The Markov–Dyck shift ``D_A``. ``[[2]]`` is the Dyck shift ``D₂``.

    Edges of ``𝒢_A`` are numbered row by row: all ``A(0, 0)`` edges from
    vertex 0 to 0 first, then those from 0 to 1, and so on.
    """

    matrix: tuple
    kind = "markov_dyck"
    src: tuple = field(init=False)
    dst: tuple = field(init=False)

    def __post_init__(self):
        A = tuple(tuple(row) for row in self.matrix)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise StructuralError("matrix must be square and nonempty", "matrix")
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                    raise StructuralError("entries must be nonnegative integers", f"matrix[{i}][{j}]")
        src, dst = [], []
        for i, j in product(range(n), repeat=2):
            src += [i] * A[i][j]
            dst += [j] * A[i][j]
        if not src:
            raise StructuralError("the graph has no edges", "matrix")
        self.matrix = A
        self.src, self.dst = tuple(src), tuple(dst)
        N = len(src)
        self.alphabet = tuple(f"a{k + 1}" for k in range(N)) + tuple(f"b{k + 1}" for k in range(N))
        self._parse = {f"a{k + 1}": ("a", k) for k in range(N)} | {f"b{k + 1}": ("b", k) for k in range(N)}

    @property
    def n_vertices(self) -> int:
        return len(self.matrix)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    def transition_matrix(self) -> tuple[tuple[int, ...], ...]:
        """``A^𝒢(i, j) = 1`` iff ``t(e_i) = s(e_j)``."""
        return tuple(tuple(int(self.dst[i] == self.src[j]) for j in range(self.n_edges)) for i in range(self.n_edges))

    def parse(self, symbol: str) -> tuple[str, int]:
        try:
            return self._parse[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol) from None

    def _admissible(self, w):
        return not reduce(w, self).zero

    def sft_plus(self) -> EdgeSFT:
        """``Λ_A`` on the closing brackets."""
        names = tuple(f"v{i + 1}" for i in range(self.n_vertices))
        return EdgeSFT(names, tuple((f"b{k + 1}", names[self.src[k]], names[self.dst[k]]) for k in range(self.n_edges)))

    def sft_minus(self) -> EdgeSFT:
        """``Λ_{A^t}`` on the opening brackets (edges reversed)."""
        names = tuple(f"v{i + 1}" for i in range(self.n_vertices))
        return EdgeSFT(names, tuple((f"a{k + 1}", names[self.dst[k]], names[self.src[k]]) for k in range(self.n_edges)))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": [list(r) for r in self.matrix]}


def dyck_shift(n: int = 2) -> MarkovDyck:
    return MarkovDyck(((n,),))


def _default(spec):
    return dyck_shift(2) if spec is None else spec


def reduce(word: Sequence[str], spec: MarkovDyck | None = None) -> DyckElement:
    """Normal form of a word, read left to right with a stack of opening brackets."""
    spec = _default(spec)
    src, dst = spec.src, spec.dst
    beta: list[int] = []
    alpha: list[int] = []
    v = None
    for s in word:
        kind, k = spec.parse(s)
        if kind == "b":
            if alpha:
                if alpha[-1] != k:
                    return ZERO
                alpha.pop()
            else:
                if v is not None and v != src[k]:
                    return ZERO
                beta.append(k)
                v = dst[k]
        else:
            if alpha:
                if dst[k] != src[alpha[-1]]:
                    return ZERO
            elif v is not None and v != dst[k]:
                return ZERO
            elif v is None:
                v = dst[k]
            alpha.append(k)
    if not beta and not alpha and spec.n_vertices == 1:
        v = None
    return DyckElement(tuple(beta), v, tuple(alpha))


def _rewrite(spec: MarkovDyck, x, y):
    """One rewrite of the adjacent tokens ``x y``: ``None`` if irreducible,
    a replacement list, or ``"zero"``."""
    src, dst = spec.src, spec.dst
    (p, i), (q, j) = x, y
    if p == "a" and q == "b":
        return [("P", dst[i])] if i == j else "zero"
    if p == "b" and q == "b":
        return None if dst[i] == src[j] else "zero"
    if p == "a" and q == "a":
        return None if dst[j] == src[i] else "zero"
    if p == "b" and q == "a":
        return None if dst[i] == dst[j] else "zero"
    if p == "P" and q == "b":
        return [y] if i == src[j] else "zero"
    if p == "a" and q == "P":
        return [x] if j == src[i] else "zero"
    if p == "b" and q == "P":
        return [x] if j == dst[i] else "zero"
    if p == "P" and q == "a":
        return [y] if i == dst[j] else "zero"
    return [x] if i == j else "zero"  # P P


def _normalize(spec: MarkovDyck, tokens: list):
    """Rewrite the rightmost reducible pair until none is left; ``None`` for zero."""
    tokens = list(tokens)
    # pairs to the right of a rewrite were irreducible and stay untouched, so
    # the scan resumes just right of the new token
    n = len(tokens) - 2
    while n >= 0:
        r = _rewrite(spec, tokens[n], tokens[n + 1])
        if r == "zero":
            return None
        if r is None:
            n -= 1
        else:
            tokens[n : n + 2] = r
            n = min(n + len(r) - 1, len(tokens) - 2)
    return tokens


def reduce_innermost(word: Sequence[str], spec: MarkovDyck | None = None) -> DyckElement:
    """Independent rewriting oracle on tokens ``('a', k)``, ``('b', k)`` and
    projections ``('P', v)``, always rewriting the rightmost reducible pair."""
    spec = _default(spec)
    tokens = _normalize(spec, [spec.parse(s) for s in word])
    if tokens is None:
        return ZERO
    dst = spec.dst
    beta = tuple(k for p, k in tokens if p == "b")
    alpha = tuple(k for p, k in tokens if p == "a")
    if beta:
        v = dst[beta[-1]]
    elif alpha:
        v = dst[alpha[0]]
    else:
        proj = [k for p, k in tokens if p == "P"]
        v = proj[0] if proj and spec.n_vertices > 1 else None
    return DyckElement(beta, v, alpha)


def critical_pair_failures(spec: MarkovDyck | None = None) -> list[tuple]:
    """Overlaps ``x y z`` where rewriting ``x y`` first and rewriting ``y z``
    first lead to different normal forms.

    Every rule shortens the word, so an empty list means the rewriting system
    is confluent on words of every length.
    """
    spec = _default(spec)
    tokens = [("a", k) for k in range(spec.n_edges)] + [("b", k) for k in range(spec.n_edges)]
    tokens += [("P", v) for v in range(spec.n_vertices)]
    bad = []
    for x, y, z in product(tokens, repeat=3):
        left, right = _rewrite(spec, x, y), _rewrite(spec, y, z)
        if left is None or right is None:
            continue
        first = None if left == "zero" else _normalize(spec, left + [z])
        second = None if right == "zero" else _normalize(spec, [x] + right)
        if first != second:
            bad.append((x, y, z))
    return bad


_BRACKETS = {"a1": "(", "a2": "[", "b1": ")", "b2": "]"}
_MISMATCH = re.compile(r"\(\]|\[\)")


def d2_bracket_reduce(word: Sequence[str]) -> str | None:
    """Second oracle for ``D₂`` on bracket strings: delete matched pairs until
    none remain; ``None`` when a mismatched pair ``(]`` or ``[)`` is left."""
    s = "".join(_BRACKETS[x] for x in word)
    while True:
        t = s.replace("()", "").replace("[]", "")
        if t == s:
            break
        s = t
    return None if _MISMATCH.search(s) else s


def markov_dyck_is_admissible(spec: MarkovDyck, word: Sequence[str]) -> bool:
    return not reduce(word, spec).zero


# -- Cantor horizon ---------------------------------------------------------


def cantor_horizon(L: int, n: int = 2) -> LambdaGraphSystem:
    """Cantor horizon λ-graph system of the Dyck shift, truncated at level ``L``.

    Level-``l`` vertices are the words ``μ₁…μ_l`` over ``1 … n`` (standing for
    ``β_{μ₁}…β_{μ_l}``) in lexicographic order; ``ι`` deletes the last letter.
    ``α_j`` goes from ``μ`` to ``jμ``; ``β_j`` goes from ``jμ₁…μ_{l-1}`` to every
    ``μ₁…μ_{l+1}``. At level 0 the β rule reads as "the first ``l = 0``
    letters of ``jt`` are the empty source", so every ``β_j`` joins the empty
    word to every letter.

    Only ``n = 2`` is covered by the acceptance checks; other ``n`` are
    experimental.
    """
    if L < 0:
        raise OutOfRangeError("L must be nonnegative")
    if n < 1:
        raise OutOfRangeError("n must be positive")
    digits = [str(d) for d in range(1, n + 1)]
    if n > 9:
        raise OutOfRangeError("vertex words use one digit per letter, so n <= 9")
    alphabet = tuple(f"a{d}" for d in digits) + tuple(f"b{d}" for d in digits)
    levels = [tuple("".join(w) for w in product(digits, repeat=l)) for l in range(L + 1)]
    index = [{w: i for i, w in enumerate(level)} for level in levels]
    edges, iota = [], []
    for l in range(L):
        row = []
        for s in levels[l]:
            i = index[l][s]
            for j in digits:
                row.append(Edge(i, index[l + 1][j + s], f"a{j}"))
            for j in digits:
                if l and s[0] != j:
                    continue
                tail = s[1:] if l else ""
                for xy in product(digits, repeat=len(levels[l + 1][0]) - len(tail)):
                    row.append(Edge(i, index[l + 1][tail + "".join(xy)], f"b{j}"))
        edges.append(tuple(sorted(row, key=lambda e: (e.src, alphabet.index(e.label), e.dst))))
        iota.append(tuple(index[l][w[:-1]] for w in levels[l + 1]))
    return LambdaGraphSystem(alphabet, tuple(levels), tuple(edges), tuple(iota))


# -- the Z₂-extension maps -------------------------------------------------


def _flip(d: str) -> str:
    return "2" if d == "1" else "1"


def xi_v(word: str) -> str:
    """Scan from the left; whenever the (already rewritten) letter at position
    ``i`` is ``1``, flip the letter at ``i + 1`` (``11 -> 12``, ``12 -> 11``)."""
    out = list(word)
    for i in range(len(out) - 1):
        if out[i] == "1":
            out[i + 1] = _flip(out[i + 1])
    return "".join(out)


def xi_v_prefix(word: str) -> str:
    """``ξ_V`` by its closed form: with ``1 ↦ 1``, ``2 ↦ 0``, output letter ``i``
    is the parity of the first ``i + 1`` input letters."""
    out, parity = [], 0
    for d in word:
        parity ^= d == "1"
        out.append("1" if parity else "2")
    return "".join(out)


def xi_v_inverse(word: str) -> str:
    out = list(word)
    for i in range(len(word) - 1):
        if word[i] == "1":
            out[i + 1] = _flip(word[i + 1])
    return "".join(out)


def eta_v(g: str, word: str) -> str:
    if g not in ("0", "1"):
        raise UnknownSymbolError(g)
    return ("2" if g == "0" else "1") + word


def phi_v(g: str, word: str) -> str:
    return xi_v(eta_v(g, word))


_PHI_SIGMA = {
    ("0", "b1"): "b2",
    ("0", "b2"): "b2",
    ("1", "b1"): "b1",
    ("1", "b2"): "b1",
    ("0", "a2"): "a2",
    ("1", "a1"): "a2",
    ("1", "a2"): "a1",
    ("0", "a1"): "a1",
}


def phi_sigma(g: str, symbol: str) -> str:
    try:
        return _PHI_SIGMA[(g, symbol)]
    except KeyError:
        raise UnknownSymbolError(f"({g},{symbol})") from None


#: ``φ_Σ`` keyed by the extension's pair symbols.
PHI_SIGMA_SYMBOLS = {pair_symbol(g, a): b for (g, a), b in _PHI_SIGMA.items()}


class EdgeLookup:
    """Find the Cantor horizon edge with given source, terminal and label."""

    def __init__(self, ch: LambdaGraphSystem):
        self.ch = ch
        self.index = [{w: i for i, w in enumerate(level)} for level in ch.levels]
        self.edges = [{(e.src, e.dst, e.label): k for k, e in enumerate(level)} for level in ch.edges]

    def find(self, l: int, src: str, dst: str, label: str) -> int:
        key = (self.index[l].get(src), self.index[l + 1].get(dst), label)
        if key not in self.edges[l]:
            raise LambdaGraphError(f"no {label}-edge from {src!r} to {dst!r} at level {l}")
        return self.edges[l][key]


def phi_e(ch: LambdaGraphSystem, g: str, level: int, k: int, lookup: EdgeLookup | None = None) -> int:
    """Image of the extension edge ``(g, e)``, ``e = ch.edges[level - 1][k]``, as
    an index into ``ch.edges[level]``: the edge from ``φ_V(s(e^g))`` to
    ``φ_V(t(e^g))`` labeled ``φ_Σ(g, λ(e))``."""
    if not 1 <= level < ch.max_level:
        raise OutOfRangeError(f"level must lie in [1, {ch.max_level - 1}]")
    lookup = lookup or EdgeLookup(ch)
    Z2 = make_cyclic(2)
    e = ch.edges[level - 1][k]
    s = phi_v(g, ch.levels[level - 1][e.src])
    t = phi_v(Z2.mul(g, DYCK_LABELING[e.label]), ch.levels[level][e.dst])
    return lookup.find(level, s, t, phi_sigma(g, e.label))


@dataclass(frozen=True)
class Prop72Report:
    """Outcome of comparing the Z₂-extension of ``cantor_horizon(L)`` with the
    system shifted up one level, through ``(φ_V, φ_E, φ_Σ)``."""

    L: int
    ok: bool
    checks: dict
    violations: tuple[Violation, ...]
    notes: tuple[str, ...]

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "ok": self.ok,
            "checks": dict(self.checks),
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


BOUNDARY_NOTES = (
    "level-0 beta edges of the Cantor horizon join the empty word to every letter",
    "the edge cases at l = 1 are evaluated with the empty word for the common suffix",
)


def prop72_morphism(L: int):
    """``(extension, shifted system, morphism)`` for levels ``0 … L-1``."""
    if L < 2:
        raise OutOfRangeError("L must be at least 2")
    ch = cantor_horizon(L)
    Z2 = make_cyclic(2)
    ext = g_extension(truncated(ch, L - 1), Z2, DYCK_LABELING)
    target = shifted(ch, 1)
    lookup = EdgeLookup(ch)
    vertices = []
    for l in range(L):
        idx = lookup.index[l + 1]
        vertices.append(tuple(idx[phi_v(g, v)] for g in Z2.elements for v in ch.levels[l]))
    edges = []
    for l in range(L - 1):
        # extension edge (g, k) sits at position gi·|E_l| + k
        edges.append(tuple(phi_e(ch, g, l + 1, k, lookup) for g in Z2.elements for k in range(len(ch.edges[l]))))
    return ext, target, LgsMorphism(tuple(vertices), tuple(edges))


def verify_prop72(L: int) -> Prop72Report:
    """Check that ``(φ_V, φ_E, φ_Σ)`` is an isomorphism up to labeling at all levels ``<= L-1``.

    Checks: vertex and edge maps are bijections; sources, terminals, labels
    (through ``φ_Σ``) and ``ι`` are intertwined; the matrix systems agree under
    the induced permutations.
    """
    try:
        ext, target, m = prop72_morphism(L)
    except LambdaGraphError as exc:
        v = Violation("missing_edge", None, {"detail": str(exc)})
        return Prop72Report(L, False, {"edge_map_defined": False}, (v,), BOUNDARY_NOTES)
    violations = morphism_violations(ext.lgs, target, m, PHI_SIGMA_SYMBOLS)
    kinds = {v.kind for v in violations}
    checks = {
        "edge_map_defined": True,
        "vertex_bijection": "vertex_bijection" not in kinds and "shape" not in kinds,
        "edge_bijection": "edge_bijection" not in kinds and "shape" not in kinds,
        "source": "source" not in kinds,
        "terminal": "terminal" not in kinds,
        "label": "label" not in kinds,
        "iota": "iota" not in kinds,
    }
    if not violations:
        perms = [_inverse(p) for p in m.vertices]
        sms_report = check_sms_isomorphism(lgs_to_sms(ext.lgs), lgs_to_sms(target), perms, PHI_SIGMA_SYMBOLS, bijective=False)
        checks["matrix_system"] = sms_report.ok
        violations = list(sms_report.failures)
    else:
        checks["matrix_system"] = False
    ok = all(checks.values())
    return Prop72Report(L, ok, checks, tuple(violations), BOUNDARY_NOTES)


def _inverse(p: Sequence[int]) -> list[int]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return out


# -- two Z₂-extensions that are not conjugate -------------------------------

ELL1 = {"a1": "0", "a2": "0", "b1": "0", "b2": "0"}
ELL2 = {"a1": "1", "a2": "0", "b1": "1", "b2": "0"}


def full_two_shift_graph() -> EdgeSFT:
    """One vertex ``v`` with loops ``e1``, ``e2``."""
    return EdgeSFT(("v",), (("e1", "v", "v"), ("e2", "v", "v")))


def prop77_report(ell1: dict | None = None, ell2: dict | None = None, max_period: int = 4) -> dict:
    """Compare ``τ_ℓ¹`` and ``τ_ℓ²`` on ``D₂`` through the closing-bracket subsystem.

    The labelings restricted to ``β₁, β₂`` become labelings of the loops
    ``e1, e2`` of the full 2-shift. A periodic orbit with different products
    shows the restricted skewing functions are not cohomologous, so the
    extensions of the full 2-shift are not Z₂-conjugate; conjugacy classes of
    extensions of the closing-bracket subsystem are invariants of conjugacy
    classes of extensions of ``D₂``, so the ``D₂`` extensions are not
    Z₂-conjugate either.
    """
    ell1 = dict(ELL1 if ell1 is None else ell1)
    ell2 = dict(ELL2 if ell2 is None else ell2)
    Z2 = make_cyclic(2)
    base = full_two_shift_graph()
    restrict = {"e1": "b1", "e2": "b2"}
    r1 = {e: ell1[b] for e, b in restrict.items()}
    r2 = {e: ell2[b] for e, b in restrict.items()}
    obstruction = periodic_orbit_obstruction(base, Z2, r1, r2, max_period)
    search = search_transfer(base, Z2, r1, r2)
    # the closing-bracket words of D₂ are exactly the words of the full 2-shift
    restriction_checked = all(
        not reduce(w).zero for n in range(1, 7) for w in product(("b1", "b2"), repeat=n)
    )
    if obstruction is not None:
        conclusion = (
            "the restricted skewing functions are not cohomologous on the full 2-shift, "
            "so the Z2-extensions of D2 are not Z2-conjugate"
        )
    elif search.transfer is not None:
        shown = ", ".join(f"{e} -> {g}" for e, g in sorted(search.transfer.items()))
        conclusion = f"no obstruction found; transfer b ({shown}) exists on the full 2-shift"
    else:
        conclusion = "undetermined at these bounds"
    return {
        "group": Z2.to_dict(),
        "labelings": {"ell1": dict(sorted(ell1.items())), "ell2": dict(sorted(ell2.items()))},
        "restricted_labelings": {"ell1": r1, "ell2": r2},
        "base": base.to_dict(),
        "restriction_is_full_shift": restriction_checked,
        "obstruction": None if obstruction is None else obstruction.to_dict(),
        "transfer_search": search.to_dict(),
        "max_period": max_period,
        "not_conjugate": obstruction is not None,
        "conclusion": conclusion,
    }

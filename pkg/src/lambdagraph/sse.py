"""Strong shift equivalence witnesses for symbolic matrix systems.

A proper 1-step witness between ``(M, I)`` and ``(M', I')`` consists of
alphabets ``C`` and ``D``, specifications ``φ: Σ -> C·D`` and ``ψ: Σ' -> D·C``
and matrix sequences ``P_k`` (over ``C``), ``Q_k`` (over ``D``), ``X_k`` and
``X'_k`` (0/1) for ``0 <= k < 2L`` such that

    M_{l,l+1} ≃^φ P_{2l} Q_{2l+1},     M'_{l,l+1} ≃^ψ Q_{2l} P_{2l+1},
    I_{l,l+1} = X_{2l} X_{2l+1},       I'_{l,l+1} = X'_{2l} X'_{2l+1},
    X_k P_{k+1} = P_k X'_{k+1},        X'_k Q_{k+1} = Q_k X_{k+1}.

A plain 1-step witness has ``H_l`` over ``C`` and ``K_l`` over ``D`` for
``1 <= l <= L`` with

    I_{l-1,l} M_{l,l+1} ≃^φ H_l K_{l+1},     I'_{l-1,l} M'_{l,l+1} ≃^ψ K_l H_{l+1},
    H_l I'_{l,l+1} = I_{l-1,l} H_{l+1},      K_l I_{l,l+1} = I'_{l-1,l} K_{l+1}.

``≃^φ`` compares multisets of words after replacing each symbol by its image.
With a finite group ``G`` and labelings ``ℓ_C``, ``ℓ_D`` the same identities are
also required after mapping everything into the semigroup ring Z_+G.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import CheckReport, ReportBuilder, Violation, admissible_words, is_left_resolving, is_predecessor_separated
from .errors import DimensionError, InadmissibleError, NonCanonicalError, OutOfRangeError, StructuralError, TransferError
from .finite_group import FiniteGroup, check_labeling, load_group
from .sms import (
    ZERO,
    FormalSum,
    GroupMatrixSystem,
    SymbolicMatrixSystem,
    identity_matrix,
    int_mul,
    int_sym,
    matrix_differences,
    relabel_matrix,
    shape,
    sms_to_lgs,
    sym_int,
    sym_mul,
    zg_mul,
)


def _matrix_to_json(m):
    if m and m[0] and isinstance(m[0][0], FormalSum):
        return [[x.to_json() for x in row] for row in m]
    return [list(row) for row in m]


def _sym_from_json(m, where):
    return tuple(tuple(FormalSum.from_json(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)) for i, row in enumerate(m))


def _int_from_json(m, where):
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise StructuralError("expected an integer", f"{where}[{i}][{j}]")
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class ProperSseWitness:
    C: tuple[str, ...]
    D: tuple[str, ...]
    phi: Mapping[str, tuple[str, str]]
    psi: Mapping[str, tuple[str, str]]
    P: tuple
    Q: tuple
    X: tuple
    Xp: tuple

    @property
    def depth(self) -> int:
        return len(self.P) // 2

    def to_dict(self) -> dict:
        return {
            "kind": "proper",
            "C": list(self.C),
            "D": list(self.D),
            "phi": {a: list(p) for a, p in sorted(self.phi.items())},
            "psi": {a: list(p) for a, p in sorted(self.psi.items())},
            "P": [_matrix_to_json(m) for m in self.P],
            "Q": [_matrix_to_json(m) for m in self.Q],
            "X": [_matrix_to_json(m) for m in self.X],
            "Xp": [_matrix_to_json(m) for m in self.Xp],
        }

    @classmethod
    def from_dict(cls, doc) -> "ProperSseWitness":
        _require(doc, ("C", "D", "phi", "psi", "P", "Q", "X", "Xp"))
        return cls(
            tuple(doc["C"]),
            tuple(doc["D"]),
            {a: tuple(p) for a, p in doc["phi"].items()},
            {a: tuple(p) for a, p in doc["psi"].items()},
            tuple(_sym_from_json(m, f"$.P[{k}]") for k, m in enumerate(doc["P"])),
            tuple(_sym_from_json(m, f"$.Q[{k}]") for k, m in enumerate(doc["Q"])),
            tuple(_int_from_json(m, f"$.X[{k}]") for k, m in enumerate(doc["X"])),
            tuple(_int_from_json(m, f"$.Xp[{k}]") for k, m in enumerate(doc["Xp"])),
        )


@dataclass(frozen=True)
class SseWitness:
    """``H[l-1]`` is ``H_l`` and ``K[l-1]`` is ``K_l`` for ``1 <= l <= L``."""

    C: tuple[str, ...]
    D: tuple[str, ...]
    phi: Mapping[str, tuple[str, str]]
    psi: Mapping[str, tuple[str, str]]
    H: tuple
    K: tuple

    def h(self, l: int):
        return self.H[l - 1]

    def k(self, l: int):
        return self.K[l - 1]

    def to_dict(self) -> dict:
        return {
            "kind": "plain",
            "C": list(self.C),
            "D": list(self.D),
            "phi": {a: list(p) for a, p in sorted(self.phi.items())},
            "psi": {a: list(p) for a, p in sorted(self.psi.items())},
            "H": [_matrix_to_json(m) for m in self.H],
            "K": [_matrix_to_json(m) for m in self.K],
        }

    @classmethod
    def from_dict(cls, doc) -> "SseWitness":
        _require(doc, ("C", "D", "phi", "psi", "H", "K"))
        return cls(
            tuple(doc["C"]),
            tuple(doc["D"]),
            {a: tuple(p) for a, p in doc["phi"].items()},
            {a: tuple(p) for a, p in doc["psi"].items()},
            tuple(_sym_from_json(m, f"$.H[{k}]") for k, m in enumerate(doc["H"])),
            tuple(_sym_from_json(m, f"$.K[{k}]") for k, m in enumerate(doc["K"])),
        )


@dataclass(frozen=True)
class GWitnessExtras:
    group: FiniteGroup
    ell_C: Mapping[str, str]
    ell_D: Mapping[str, str]

    def to_dict(self) -> dict:
        return {
            "group": self.group.to_dict(),
            "ell_C": dict(sorted(self.ell_C.items())),
            "ell_D": dict(sorted(self.ell_D.items())),
        }

    @classmethod
    def from_dict(cls, doc) -> "GWitnessExtras":
        _require(doc, ("group", "ell_C", "ell_D"))
        return cls(load_group(doc["group"]), dict(doc["ell_C"]), dict(doc["ell_D"]))


def _require(doc, keys):
    if not isinstance(doc, Mapping):
        raise StructuralError("expected an object", "$")
    for key in keys:
        if key not in doc:
            raise StructuralError(f"missing field {key!r}", "$")


def _spec_violations(name, spec, source, first, second) -> list[Violation]:
    out = []
    for a in source:
        if a not in spec:
            out.append(Violation("specification", None, {"map": name, "undefined_on": a}))
            continue
        pair = spec[a]
        if len(pair) != 2 or pair[0] not in first or pair[1] not in second:
            out.append(Violation("specification", None, {"map": name, "symbol": a, "image": list(pair)}))
    images = [tuple(spec[a]) for a in source if a in spec]
    if len(set(images)) != len(images):
        out.append(Violation("specification", None, {"map": name, "reason": "not injective"}))
    return out


def _check_entries(name, mats, symbols) -> None:
    allowed = set(symbols)
    for k, m in enumerate(mats):
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                for w in x.terms():
                    if len(w) != 1 or w[0] not in allowed:
                        raise StructuralError(f"term {w} is not a symbol of its alphabet", f"{name}[{k}][{i}][{j}]")


def verify_proper_sse(a: SymbolicMatrixSystem, b: SymbolicMatrixSystem, w: ProperSseWitness) -> CheckReport:
    """Check the proper 1-step identities at every level below the truncation.

    Raises :class:`DimensionError` (with the offending index) when shapes do not fit.
    """
    L = a.max_level
    if b.max_level != L:
        raise DimensionError(f"systems have depths {L} and {b.max_level}")
    for name, seq in (("P", w.P), ("Q", w.Q), ("X", w.X), ("Xp", w.Xp)):
        if len(seq) < 2 * L:
            raise DimensionError(f"{name} needs {2 * L} matrices, has {len(seq)}", name)
    for l in range(L + 1):
        k = min(2 * l, 2 * L - 1)
        n = shape(w.P[2 * l])[0] if l < L else shape(w.X[2 * L - 1])[1]
        n2 = shape(w.Q[2 * l])[0] if l < L else shape(w.Xp[2 * L - 1])[1]
        if n != a.dims[l] or n2 != b.dims[l]:
            raise DimensionError(f"n(2l) = m(l) fails at l = {l}", f"P[{k}]")
    _check_entries("P", w.P, w.C)
    _check_entries("Q", w.Q, w.D)
    rb = ReportBuilder("proper_sse")
    rb.record("specifications", None, _spec_violations("phi", w.phi, a.alphabet, w.C, w.D) + _spec_violations("psi", w.psi, b.alphabet, w.D, w.C))
    if not rb.build().ok:
        return rb.build()
    for l in range(L):
        where = f"level {l}"
        rb.record("M=PQ", l, matrix_differences(relabel_matrix(a.M[l], w.phi), sym_mul(w.P[2 * l], w.Q[2 * l + 1], where), "M=PQ", l))
        rb.record("M'=QP", l, matrix_differences(relabel_matrix(b.M[l], w.psi), sym_mul(w.Q[2 * l], w.P[2 * l + 1], where), "M'=QP", l))
        rb.record("I=XX", l, matrix_differences(a.I[l], int_mul(w.X[2 * l], w.X[2 * l + 1], where), "I=XX", l))
        rb.record("I'=X'X'", l, matrix_differences(b.I[l], int_mul(w.Xp[2 * l], w.Xp[2 * l + 1], where), "I'=X'X'", l))
    for k in range(2 * L - 1):
        where = f"index {k}"
        rb.record("XP=PX'", k, matrix_differences(int_sym(w.X[k], w.P[k + 1], where), sym_int(w.P[k], w.Xp[k + 1], where), "XP=PX'", k))
        rb.record("X'Q=QX", k, matrix_differences(int_sym(w.Xp[k], w.Q[k + 1], where), sym_int(w.Q[k], w.X[k + 1], where), "X'Q=QX", k))
    return rb.build()


def verify_sse(a: SymbolicMatrixSystem, b: SymbolicMatrixSystem, w: SseWitness) -> CheckReport:
    L = a.max_level
    if b.max_level != L:
        raise DimensionError(f"systems have depths {L} and {b.max_level}")
    if len(w.H) < L or len(w.K) < L:
        raise DimensionError(f"H and K need {L} matrices each", "H")
    for l in range(1, L + 1):
        if shape(w.h(l)) != (a.dims[l - 1], b.dims[l]):
            raise DimensionError(f"H_{l} should be {a.dims[l - 1]}x{b.dims[l]}", f"H[{l - 1}]")
        if shape(w.k(l)) != (b.dims[l - 1], a.dims[l]):
            raise DimensionError(f"K_{l} should be {b.dims[l - 1]}x{a.dims[l]}", f"K[{l - 1}]")
    _check_entries("H", w.H, w.C)
    _check_entries("K", w.K, w.D)
    rb = ReportBuilder("sse")
    rb.record("specifications", None, _spec_violations("phi", w.phi, a.alphabet, w.C, w.D) + _spec_violations("psi", w.psi, b.alphabet, w.D, w.C))
    if not rb.build().ok:
        return rb.build()
    for l in range(1, L):
        IM = relabel_matrix(int_sym(a.I[l - 1], a.M[l]), w.phi)
        IMp = relabel_matrix(int_sym(b.I[l - 1], b.M[l]), w.psi)
        rb.record("IM=HK", l, matrix_differences(IM, sym_mul(w.h(l), w.k(l + 1)), "IM=HK", l))
        rb.record("I'M'=KH", l, matrix_differences(IMp, sym_mul(w.k(l), w.h(l + 1)), "I'M'=KH", l))
        rb.record("HI'=IH", l, matrix_differences(sym_int(w.h(l), b.I[l]), int_sym(a.I[l - 1], w.h(l + 1)), "HI'=IH", l))
        rb.record("KI=I'K", l, matrix_differences(sym_int(w.k(l), a.I[l]), int_sym(b.I[l - 1], w.k(l + 1)), "KI=I'K", l))
    return rb.build()


def proper_to_sse(w: ProperSseWitness) -> SseWitness:
    """``H_l = X_{2l-2} P_{2l-1}`` and ``K_l = X'_{2l-2} Q_{2l-1}`` for ``1 <= l <= L``.

    ``X_{2l-2} P_{2l-1} = P_{2l-2} X'_{2l-1}`` by the proper identities, so
    either form may be used.
    """
    L = w.depth
    H = tuple(int_sym(w.X[2 * l - 2], w.P[2 * l - 1]) for l in range(1, L + 1))
    K = tuple(int_sym(w.Xp[2 * l - 2], w.Q[2 * l - 1]) for l in range(1, L + 1))
    return SseWitness(w.C, w.D, dict(w.phi), dict(w.psi), H, K)


def _compatibility(gA: GroupMatrixSystem, gB: GroupMatrixSystem, phi, psi, x: GWitnessExtras) -> list[Violation]:
    G = x.group
    out = []
    for name, table in (("ell_C", x.ell_C), ("ell_D", x.ell_D)):
        for s, g in table.items():
            if g not in G.index:
                out.append(Violation("labeling", None, {"map": name, "symbol": s, "value": g}))
    if out:
        return out
    for a in gA.base.alphabet:
        c, d = phi[a]
        if c not in x.ell_C or d not in x.ell_D:
            out.append(Violation("compatibility", None, {"specification": "phi", "symbol": a, "reason": "unlabeled image"}))
        elif gA.labeling[a] != G.mul(x.ell_C[c], x.ell_D[d]):
            out.append(Violation("compatibility", None, {"specification": "phi", "symbol": a}))
    for a in gB.base.alphabet:
        d, c = psi[a]
        if c not in x.ell_C or d not in x.ell_D:
            out.append(Violation("compatibility", None, {"specification": "psi", "symbol": a, "reason": "unlabeled image"}))
        elif gB.labeling[a] != G.mul(x.ell_D[d], x.ell_C[c]):
            out.append(Violation("compatibility", None, {"specification": "psi", "symbol": a}))
    return out


def _to_group(m, table):
    return relabel_matrix(m, lambda word: tuple(table[s] for s in word))


def _check_groups(gA, gB, x):
    if gA.group != x.group or gB.group != x.group:
        raise StructuralError("the witness and both systems must use the same group", "group")


def verify_proper_g_sse(gA: GroupMatrixSystem, gB: GroupMatrixSystem, w: ProperSseWitness, x: GWitnessExtras) -> CheckReport:
    """Proper identities, compatibility of ``φ``, ``ψ`` with the labelings, and
    ``M^ℓ = P^{ℓ_C}_{2l} Q^{ℓ_D}_{2l+1}``, ``M'^{ℓ'} = Q^{ℓ_D}_{2l} P^{ℓ_C}_{2l+1}`` over Z_+G.
    Compatibility failures name the symbol."""
    _check_groups(gA, gB, x)
    base = verify_proper_sse(gA.base, gB.base, w)
    rb = ReportBuilder("proper_g_sse")
    rb.results.extend(base.results)
    rb.failures.extend(base.failures)
    if not base.ok:
        return rb.build()
    rb.record("compatibility", None, _compatibility(gA, gB, w.phi, w.psi, x))
    if not rb.build().ok:
        return rb.build()
    G = x.group
    for l in range(gA.max_level):
        PC, QD = _to_group(w.P[2 * l], x.ell_C), _to_group(w.Q[2 * l + 1], x.ell_D)
        rb.record("M^l=P^Q^", l, matrix_differences(gA.Mg[l], zg_mul(G, PC, QD), "M^l=P^Q^", l))
        QD2, PC2 = _to_group(w.Q[2 * l], x.ell_D), _to_group(w.P[2 * l + 1], x.ell_C)
        rb.record("M'^l'=Q^P^", l, matrix_differences(gB.Mg[l], zg_mul(G, QD2, PC2), "M'^l'=Q^P^", l))
    return rb.build()


def verify_g_sse(gA: GroupMatrixSystem, gB: GroupMatrixSystem, w: SseWitness, x: GWitnessExtras) -> CheckReport:
    _check_groups(gA, gB, x)
    base = verify_sse(gA.base, gB.base, w)
    rb = ReportBuilder("g_sse")
    rb.results.extend(base.results)
    rb.failures.extend(base.failures)
    if not base.ok:
        return rb.build()
    rb.record("compatibility", None, _compatibility(gA, gB, w.phi, w.psi, x))
    if not rb.build().ok:
        return rb.build()
    G = x.group
    for l in range(1, gA.max_level):
        lhs = int_sym(gA.I[l - 1], gA.Mg[l])
        rhs = zg_mul(G, _to_group(w.h(l), x.ell_C), _to_group(w.k(l + 1), x.ell_D))
        rb.record("IM^l=H^K^", l, matrix_differences(lhs, rhs, "IM^l=H^K^", l))
        lhs = int_sym(gB.I[l - 1], gB.Mg[l])
        rhs = zg_mul(G, _to_group(w.k(l), x.ell_D), _to_group(w.h(l + 1), x.ell_C))
        rb.record("I'M'^l'=K^H^", l, matrix_differences(lhs, rhs, "I'M'^l'=K^H^", l))
    return rb.build()


def verify_proper_sse_chain(systems: Sequence[SymbolicMatrixSystem], witnesses: Sequence[ProperSseWitness]) -> CheckReport:
    """An N-step equivalence: ``witnesses[i]`` links ``systems[i]`` to ``systems[i+1]``."""
    if len(systems) != len(witnesses) + 1:
        raise DimensionError("a chain of n witnesses links n+1 systems")
    rb = ReportBuilder("proper_sse_chain")
    for i, w in enumerate(witnesses):
        link = verify_proper_sse(systems[i], systems[i + 1], w)
        rb.record(f"link {i}", None, list(link.failures) if not link.ok else [])
        if not link.ok and not link.failures:
            rb.failures.append(Violation("link", None, {"index": i}))
    return rb.build()


def c_symbol(g: str, a: str) -> str:
    return f"{g}*{a}"


def _diag(values: Sequence[str]):
    n = len(values)
    return tuple(tuple(FormalSum([(values[i],)]) if i == j else ZERO for j in range(n)) for i in range(n))


def witness_from_transfer(
    sms: SymbolicMatrixSystem,
    group: FiniteGroup,
    ell: Mapping[str, str],
    ell2: Mapping[str, str],
    b: Mapping[str, str],
) -> tuple[ProperSseWitness, GWitnessExtras]:
    """A proper G-witness between ``(M^ℓ, I)`` and ``(M^{ℓ'}, I)`` built from a
    transfer ``b`` with ``ℓ(x₀) = b(x₀)·ℓ'(x₀)·b(x₁)^{-1}`` on admissible 2-words.

    ``C = G × Σ`` (symbol ``g*α``) and ``D = G``; ``φ(α) = (b(α)*α, b⁺(α)^{-1})``
    with ``b⁺(α) = ℓ(α)^{-1} b(α) ℓ'(α)``, ``ψ(α) = (b(α)^{-1}, b(α)*α)``,
    ``ℓ_C(g*α) = g·ℓ'(α)``, ``ℓ_D = id``. For ``l >= 1`` the diagonal ``D_l``
    carries the common value of ``b`` on the labels leaving each vertex and

        P_{2l} = P_{2l+1} = D_l M_{l,l+1},  Q_{2l} = D_l^{-1},  Q_{2l+1} = D_{l+1}^{-1},
        X_{2l} = X'_{2l+1} = identity,      X_{2l+1} = X'_{2l} = I_{l,l+1}.

    At level 0 one vertex may emit labels with different ``b`` values, so the
    first two indices use one row per pair (vertex, value of ``b``) instead of
    a single diagonal entry. This agrees with the diagonal form whenever ``b``
    is constant on the labels leaving each level-0 vertex.
    """
    G = group
    lgs = sms_to_lgs(sms)
    if not (is_left_resolving(lgs) and is_predecessor_separated(lgs)):
        raise NonCanonicalError("the symbolic matrix system must be left-resolving and predecessor-separated")
    L = sms.max_level
    if L < 2:
        raise OutOfRangeError("need at least two levels to read off admissible 2-words")
    Sigma = sms.alphabet
    ell = check_labeling(Sigma, ell, G)
    ell2 = check_labeling(Sigma, ell2, G)
    b = check_labeling(Sigma, b, G)
    for x0, x1 in admissible_words(lgs, 2):
        if ell[x0] != G.mul(b[x0], ell2[x0], G.inv(b[x1])):
            raise TransferError((x0, x1))
    b_next = {a: G.mul(G.inv(ell[a]), b[a], ell2[a]) for a in Sigma}

    C = tuple(c_symbol(g, a) for g in G.elements for a in Sigma)
    if len(set(C)) != len(C):
        raise StructuralError("product symbols are ambiguous", "C")
    D = tuple(G.elements)
    c = {a: c_symbol(b[a], a) for a in Sigma}
    phi = {a: (c[a], G.inv(b_next[a])) for a in Sigma}
    psi = {a: (G.inv(b[a]), c[a]) for a in Sigma}
    ell_C = {c_symbol(g, a): G.mul(g, ell2[a]) for g in G.elements for a in Sigma}
    ell_D = {g: g for g in G.elements}

    # D_l for l >= 1 from incoming and outgoing labels
    Dl = [None]
    for l in range(1, L + 1):
        values = []
        for j in range(lgs.size(l)):
            seen = {b_next[lgs.edges[l - 1][k].label] for k in lgs.in_edges(l, j)}
            if l < L:
                seen |= {b[lgs.edges[l][k].label] for k in lgs.out_edges(l, j)}
            if len(seen) != 1:
                raise NonCanonicalError(f"transfer is not constant at vertex {j} of level {l}: {sorted(seen)}")
            values.append(seen.pop())
        Dl.append(values)

    CM = [relabel_matrix(m, c) for m in sms.M]
    I = sms.I
    m = sms.dims
    rows = sorted(
        {(e.src, b[e.label]) for e in lgs.edges[0]} | {(lgs.iota[0][j], Dl[1][j]) for j in range(m[1])},
        key=lambda r: (r[0], G.index[r[1]]),
    )
    P0 = CM[0]
    Q0 = tuple(tuple(FormalSum([(G.inv(g),)]) if i == r else ZERO for r, g in rows) for i in range(m[0]))
    X0 = tuple(tuple(int(i == r) for r, _ in rows) for i in range(m[0]))
    Xp0 = I[0]
    P1 = tuple(
        tuple(
            FormalSum((c[t[0]],) for t in sms.M[0][r][j].terms() if b[t[0]] == g)
            for j in range(m[1])
        )
        for r, g in rows
    )
    Q1 = _diag([G.inv(v) for v in Dl[1]])
    X1 = tuple(tuple(int(lgs.iota[0][j] == r and Dl[1][j] == g) for j in range(m[1])) for r, g in rows)
    Xp1 = identity_matrix(m[1])
    P, Q, X, Xp = [P0, P1], [Q0, Q1], [X0, X1], [Xp0, Xp1]
    for l in range(1, L):
        P += [CM[l], CM[l]]
        Q += [_diag([G.inv(v) for v in Dl[l]]), _diag([G.inv(v) for v in Dl[l + 1]])]
        X += [identity_matrix(m[l]), I[l]]
        Xp += [I[l], identity_matrix(m[l + 1])]
    w = ProperSseWitness(C, D, phi, psi, tuple(P), tuple(Q), tuple(X), tuple(Xp))
    return w, GWitnessExtras(G, ell_C, ell_D)


def forward_bipartite_word(w: Sequence[str], phi: Mapping, psi: Mapping) -> tuple[str, ...]:
    """``y_n = ψ^{-1}(d_n c_{n+1})`` where ``φ(w_n) = c_n d_n``; one symbol shorter than ``w``."""
    inverse = {tuple(p): a for a, p in psi.items()}
    out = []
    for n in range(len(w) - 1):
        d = phi[w[n]][1]
        c_next = phi[w[n + 1]][0]
        if (d, c_next) not in inverse:
            raise InadmissibleError(f"{d}{c_next} at position {n} is not in the image of psi")
        out.append(inverse[(d, c_next)])
    return tuple(out)


def transfer_from_witness(phi: Mapping, extras: GWitnessExtras) -> dict[str, str]:
    """``b(x₀) = ℓ_C(c₀)`` where ``φ(x₀) = c₀ d₀``."""
    return {a: extras.ell_C[p[0]] for a, p in phi.items()}


def cocycle_transport_violations(
    words, phi, psi, extras: GWitnessExtras, ell: Mapping[str, str], ell2: Mapping[str, str]
) -> list[tuple]:
    """Positions where ``ℓ(x_n) = b(x_n)·ℓ'(y_n)·b(x_{n+1})^{-1}`` fails, with
    ``y`` the forward bipartite image of ``x`` and ``b`` read off the witness."""
    G = extras.group
    b = transfer_from_witness(phi, extras)
    bad = []
    for x in words:
        y = forward_bipartite_word(x, phi, psi)
        for n, yn in enumerate(y):
            if ell[x[n]] != G.mul(b[x[n]], ell2[yn], G.inv(b[x[n + 1]])):
                bad.append((tuple(x), n))
    return bad


def load_witness(doc):
    if not isinstance(doc, Mapping):
        raise StructuralError("expected an object", "$")
    kind = doc.get("kind", "proper")
    if kind == "proper":
        w = ProperSseWitness.from_dict(doc)
    elif kind == "plain":
        w = SseWitness.from_dict(doc)
    else:
        raise StructuralError(f"unknown witness kind {kind!r}", "$.kind")
    extras = GWitnessExtras.from_dict(doc["extras"]) if "extras" in doc else None
    return w, extras

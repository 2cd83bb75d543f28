"""G-extensions of λ-graph systems.

For a labeling ``ℓ: Σ -> G`` the extension has vertices ``G × V_l`` and edges
``G × E_{l,l+1}``, with

    s(e^g) = (g, s(e)),  t(e^g) = (g·ℓ(λ(e)), t(e)),  λ(e^g) = (g, λ(e)),
    ι(g, v) = (g, ι(v)).

``G`` acts by left multiplication on the first coordinate. This module builds
extensions, checks group actions and the characterization of extensions by an
equivariant cocycle ``η₀``, recovers the base system as a quotient, and compares
the presented words with the skew product language.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    CheckReport,
    Edge,
    LambdaGraphSystem,
    LgsMorphism,
    ReportBuilder,
    Violation,
    admissible_words,
    check_structure,
    morphism_violations,
)
from .errors import InvalidSystemError, NonFreeActionError, OutOfRangeError, StructuralError
from .finite_group import FiniteGroup, check_labeling, load_group
from .subshift import PresentedLanguage, enumerate_words, pair_symbol, skew_product_spec


@dataclass(frozen=True)
class GroupAction:
    """Action tables: ``vertex[g][l][i]``, ``edge[g][l][k]`` are the images under
    ``ρ_g`` of vertex ``i`` of ``V_l`` and edge ``k`` of ``E_{l,l+1}``;
    ``symbol[g][a]`` is the image of symbol ``a``."""

    group: FiniteGroup
    vertex: Mapping[str, tuple]
    edge: Mapping[str, tuple]
    symbol: Mapping[str, Mapping[str, str]]

    def to_dict(self) -> dict:
        return {
            "vertex": {g: [list(x) for x in self.vertex[g]] for g in self.group.elements},
            "edge": {g: [list(x) for x in self.edge[g]] for g in self.group.elements},
            "symbol": {g: dict(sorted(self.symbol[g].items())) for g in self.group.elements},
        }

    @classmethod
    def from_dict(cls, group: FiniteGroup, doc: Mapping) -> "GroupAction":
        try:
            return cls(
                group,
                {g: tuple(tuple(x) for x in doc["vertex"][g]) for g in group.elements},
                {g: tuple(tuple(x) for x in doc["edge"][g]) for g in group.elements},
                {g: dict(doc["symbol"][g]) for g in group.elements},
            )
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"incomplete action table: {exc}", "action") from None


def identity_action(lgs: LambdaGraphSystem, group: FiniteGroup) -> GroupAction:
    ids_v = tuple(tuple(range(lgs.size(l))) for l in range(lgs.max_level + 1))
    ids_e = tuple(tuple(range(len(level))) for level in lgs.edges)
    return GroupAction(
        group,
        {g: ids_v for g in group.elements},
        {g: ids_e for g in group.elements},
        {g: {a: a for a in lgs.alphabet} for g in group.elements},
    )


@dataclass(frozen=True)
class GExtensionLGS:
    """An extension together with its defining data.

    ``label_pairs`` decodes an extension symbol into ``(g, a)``; ``eta[l][k]`` is
    the group coordinate of edge ``k`` of ``E_{l,l+1}`` and ``base_edge[l][k]``
    the index of the base edge it lies over.
    """

    lgs: LambdaGraphSystem
    base: LambdaGraphSystem
    group: FiniteGroup
    labeling: Mapping[str, str]
    action: GroupAction
    eta: tuple
    base_edge: tuple
    label_pairs: Mapping[str, tuple[str, str]]

    @property
    def r0(self) -> tuple:
        """Base label of each extension edge."""
        return tuple(
            tuple(self.base.edges[l][k].label for k in self.base_edge[l]) for l in range(len(self.base_edge))
        )

    def to_dict(self) -> dict:
        return {
            "lgs": self.lgs.to_dict(),
            "group": self.group.to_dict(),
            "labeling": dict(sorted(self.labeling.items())),
            "base_alphabet": list(self.base.alphabet),
            "action": self.action.to_dict(),
            "eta": [list(x) for x in self.eta],
            "r0": [list(x) for x in self.r0],
            "label_pairs": {s: list(p) for s, p in sorted(self.label_pairs.items())},
        }


def g_extension(lgs: LambdaGraphSystem, group: FiniteGroup, ell: Mapping[str, str]) -> GExtensionLGS:
    check_structure(lgs)
    ell = check_labeling(lgs.alphabet, ell, group)
    G = group.elements
    gi = group.index
    alphabet, pairs = [], {}
    for g in G:
        for a in lgs.alphabet:
            name = pair_symbol(g, a)
            if name in pairs:
                raise StructuralError(f"pair symbol {name!r} is ambiguous", "alphabet")
            pairs[name] = (g, a)
            alphabet.append(name)
    names = {v: k for k, v in pairs.items()}

    def vid(l, g, v):
        return gi[g] * lgs.size(l) + v

    levels = [tuple(f"({g},{v})" for g in G for v in lgs.levels[l]) for l in range(lgs.max_level + 1)]
    edges, iota, eta, base_edge = [], [], [], []
    for l, level in enumerate(lgs.edges):
        row, etas, over = [], [], []
        for g in G:
            for k, e in enumerate(level):
                row.append(Edge(vid(l, g, e.src), vid(l + 1, group.mul(g, ell[e.label]), e.dst), names[(g, e.label)]))
                etas.append(g)
                over.append(k)
        edges.append(tuple(row))
        eta.append(tuple(etas))
        base_edge.append(tuple(over))
        iota.append(tuple(vid(l, g, lgs.iota[l][v]) for g in G for v in range(lgs.size(l + 1))))
    ext = LambdaGraphSystem(tuple(alphabet), tuple(levels), tuple(edges), tuple(iota))

    n_edges = [len(level) for level in lgs.edges]
    vertex_act, edge_act, symbol_act = {}, {}, {}
    for h in G:
        vertex_act[h] = tuple(
            tuple(vid(l, group.mul(h, g), v) for g in G for v in range(lgs.size(l))) for l in range(lgs.max_level + 1)
        )
        edge_act[h] = tuple(
            tuple(gi[group.mul(h, g)] * n_edges[l] + k for g in G for k in range(n_edges[l])) for l in range(len(n_edges))
        )
        symbol_act[h] = {names[(g, a)]: names[(group.mul(h, g), a)] for g in G for a in lgs.alphabet}
    action = GroupAction(group, vertex_act, edge_act, symbol_act)
    return GExtensionLGS(ext, lgs, group, ell, action, tuple(eta), tuple(base_edge), pairs)


def g_action_violations(lgs: LambdaGraphSystem, action: GroupAction) -> list[Violation]:
    G = action.group
    out = []
    L = lgs.max_level
    for g in G.elements:
        sv, se, ss = action.vertex[g], action.edge[g], action.symbol[g]
        if len(sv) != L + 1 or len(se) != L:
            out.append(Violation("shape", None, {"element": g}))
            continue
        for l in range(L + 1):
            if sorted(sv[l]) != list(range(lgs.size(l))):
                out.append(Violation("vertex_bijection", l, {"element": g}))
        for l in range(L):
            if sorted(se[l]) != list(range(len(lgs.edges[l]))):
                out.append(Violation("edge_bijection", l, {"element": g}))
        if sorted(ss.get(a, "") for a in lgs.alphabet) != sorted(lgs.alphabet):
            out.append(Violation("symbol_bijection", None, {"element": g}))
        if out:
            continue
        for l in range(L):
            for k, e in enumerate(lgs.edges[l]):
                f = lgs.edges[l][se[l][k]]
                if f.src != sv[l][e.src]:
                    out.append(Violation("source", l, {"element": g, "edge": k}))
                if f.dst != sv[l + 1][e.dst]:
                    out.append(Violation("terminal", l, {"element": g, "edge": k}))
                if f.label != ss[e.label]:
                    out.append(Violation("label", l, {"element": g, "edge": k}))
            for j, p in enumerate(lgs.iota[l]):
                if lgs.iota[l][sv[l + 1][j]] != sv[l][p]:
                    out.append(Violation("iota", l, {"element": g, "vertex": j}))
    if out:
        return out
    one = G.identity
    for l in range(L + 1):
        if list(action.vertex[one][l]) != list(range(lgs.size(l))):
            out.append(Violation("identity", l, {"table": "vertex"}))
    for l in range(L):
        if list(action.edge[one][l]) != list(range(len(lgs.edges[l]))):
            out.append(Violation("identity", l, {"table": "edge"}))
    if any(action.symbol[one][a] != a for a in lgs.alphabet):
        out.append(Violation("identity", None, {"table": "symbol"}))
    for g in G.elements:
        for h in G.elements:
            gh = G.mul(g, h)
            for l in range(L + 1):
                for i in range(lgs.size(l)):
                    if action.vertex[g][l][action.vertex[h][l][i]] != action.vertex[gh][l][i]:
                        out.append(Violation("composition", l, {"pair": [g, h], "vertex": i}))
                        break
            for l in range(L):
                for k in range(len(lgs.edges[l])):
                    if action.edge[g][l][action.edge[h][l][k]] != action.edge[gh][l][k]:
                        out.append(Violation("composition", l, {"pair": [g, h], "edge": k}))
                        break
            for a in lgs.alphabet:
                if action.symbol[g][action.symbol[h][a]] != action.symbol[gh][a]:
                    out.append(Violation("composition", None, {"pair": [g, h], "symbol": a}))
    return out


def check_g_action(lgs: LambdaGraphSystem, action: GroupAction) -> bool:
    """True iff ``ρ`` is a group action by automorphisms: level-wise bijections
    commuting with ``s``, ``t``, ``ι`` and labels, with ``ρ_1 = id`` and
    ``ρ_g ∘ ρ_h = ρ_{gh}``."""
    return not g_action_violations(lgs, action)


def is_free(lgs: LambdaGraphSystem, action: GroupAction) -> bool:
    for g in action.group.elements:
        if g == action.group.identity:
            continue
        for l, table in enumerate(action.vertex[g]):
            if any(table[i] == i for i in range(len(table))):
                return False
        for l, table in enumerate(action.edge[g]):
            if any(table[k] == k for k in range(len(table))):
                return False
    return True


def characterization_report(
    lgs: LambdaGraphSystem,
    action: GroupAction,
    eta0: Sequence[Sequence[str]],
    r0: Sequence[Sequence[str]],
    ell0: Mapping[str, str],
    label_pairs: Mapping[str, tuple[str, str]],
) -> CheckReport:
    """Check that ``(ρ, η₀, r₀, ℓ₀)`` exhibits ``lgs`` as a G-extension.

    ``label_pairs`` identifies the alphabet with ``G × Σ₀``. Checked:
    ``λ(e) = (η₀(e), r₀(e))``; ``η₀(ρ_g e) = g·η₀(e)`` and ``r₀(ρ_g e) = r₀(e)``;
    ``η₀(e) = η₀(f)·ℓ₀(r₀(f))`` whenever ``t(f) = s(e)``; and ``η₀`` constant on
    level-0 edges with a common source. Raises :class:`NonFreeActionError`
    when the action has fixed points.
    """
    G = action.group
    if not is_free(lgs, action):
        raise NonFreeActionError("the action fixes a vertex or an edge")
    rb = ReportBuilder("extension_characterization")
    L = lgs.max_level
    if len(eta0) != L or len(r0) != L or any(len(eta0[l]) != len(lgs.edges[l]) for l in range(L)):
        raise StructuralError("η₀ and r₀ must be given on every edge", "eta0")

    bad = []
    for l in range(L):
        for k, e in enumerate(lgs.edges[l]):
            pair = label_pairs.get(e.label)
            if pair is None or tuple(pair) != (eta0[l][k], r0[l][k]):
                bad.append(Violation("label_split", l, {"edge": k, "label": e.label, "eta0": eta0[l][k], "r0": r0[l][k]}))
    rb.record("label_split", None, bad)

    bad = []
    for g in G.elements:
        for l in range(L):
            for k in range(len(lgs.edges[l])):
                m = action.edge[g][l][k]
                if eta0[l][m] != G.mul(g, eta0[l][k]):
                    bad.append(Violation("equivariance", l, {"element": g, "edge": k}))
                if r0[l][m] != r0[l][k]:
                    bad.append(Violation("invariance", l, {"element": g, "edge": k}))
    rb.record("equivariance", None, bad)

    for l in range(1, L):
        bad = []
        for k, e in enumerate(lgs.edges[l]):
            for kf in lgs.in_edges(l, e.src):
                want = G.mul(eta0[l - 1][kf], ell0[r0[l - 1][kf]])
                if eta0[l][k] != want:
                    bad.append(
                        Violation("cocycle", l, {"edge": k, "previous_edge": kf, "eta0": eta0[l][k], "expected": want})
                    )
        rb.record("cocycle", l, bad)

    bad = []
    if L:
        first = {}
        for k, e in enumerate(lgs.edges[0]):
            if first.setdefault(e.src, eta0[0][k]) != eta0[0][k]:
                bad.append(Violation("level0_source", 0, {"edge": k, "source": e.src}))
    rb.record("level0_source", 0, bad)
    return rb.build()


def check_extension_characterization(lgs, action, eta0, r0, ell0, label_pairs) -> bool:
    return bool(characterization_report(lgs, action, eta0, r0, ell0, label_pairs))


@dataclass(frozen=True)
class QuotientResult:
    """The quotient ``𝔏₀`` and the isomorphism ``ξ`` from ``g_extension(𝔏₀, G, ℓ₀)`` onto the input.

    ``vertex_orbits[l][c]`` lists the vertices of class ``c``; ``xi`` maps the
    extension indices to the input indices.
    """

    base: LambdaGraphSystem
    xi: LgsMorphism
    vertex_orbits: tuple
    edge_orbits: tuple
    report: CheckReport

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "xi": self.xi.to_dict(),
            "vertex_orbits": [[list(o) for o in level] for level in self.vertex_orbits],
            "edge_orbits": [[list(o) for o in level] for level in self.edge_orbits],
            "verification": self.report.to_dict(),
        }


def _orbits(n: int, tables: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        orbit = tuple(sorted({t[i] for t in tables}))
        seen.update(orbit)
        out.append(orbit)
    return out


def quotient_extension(
    lgs: LambdaGraphSystem,
    action: GroupAction,
    eta0: Sequence[Sequence[str]],
    r0: Sequence[Sequence[str]],
    ell0: Mapping[str, str],
    label_pairs: Mapping[str, tuple[str, str]],
    base_alphabet: Sequence[str] | None = None,
) -> QuotientResult:
    """Recover the base system as the orbit space of a free action.

    Orbits of vertices and edges form ``𝔏₀`` with label ``r₀``. The section
    ``ȷ`` picks, in each orbit, the member with ``η₀ = 1``: for an edge
    ``ȷ([e]) = ρ_{η₀(e)^{-1}}(e)``, for a vertex ``ȷ([v]) = ρ_{η₀(e)^{-1}}(v)``
    with ``e`` leaving ``v``. Vertices of the top level have no outgoing
    edges, so there the coordinate ``η₀(f)·ℓ₀(r₀(f))`` of an incoming edge ``f``
    is used instead, which is what an outgoing edge would carry by the cocycle
    rule. Then ``ξ(g, [x]) = ρ_g(ȷ([x]))``.
    """
    G = action.group
    report = characterization_report(lgs, action, eta0, r0, ell0, label_pairs)
    if not report:
        raise InvalidSystemError("input does not satisfy the extension characterization", report.failures)
    L = lgs.max_level
    tables_v = [[action.vertex[g][l] for g in G.elements] for l in range(L + 1)]
    tables_e = [[action.edge[g][l] for g in G.elements] for l in range(L)]
    v_orbits = [_orbits(lgs.size(l), tables_v[l]) for l in range(L + 1)]
    e_orbits = [_orbits(len(lgs.edges[l]), tables_e[l]) for l in range(L)]
    v_class = [{v: c for c, orb in enumerate(level) for v in orb} for level in v_orbits]
    e_class = [{k: c for c, orb in enumerate(level) for k in orb} for level in e_orbits]

    if base_alphabet is None:
        seen = dict.fromkeys(r0[l][k] for l in range(L) for k in range(len(r0[l])))
        base_alphabet = tuple(seen) or tuple(dict.fromkeys(p[1] for p in label_pairs.values()))
    edges, iota = [], []
    for l in range(L):
        row = []
        for orb in e_orbits[l]:
            e = lgs.edges[l][orb[0]]
            row.append(Edge(v_class[l][e.src], v_class[l + 1][e.dst], r0[l][orb[0]]))
        edges.append(tuple(row))
        iota.append(tuple(v_class[l][lgs.iota[l][orb[0]]] for orb in v_orbits[l + 1]))
    levels = [tuple(f"[{lgs.levels[l][orb[0]]}]" for orb in v_orbits[l]) for l in range(L + 1)]
    base = LambdaGraphSystem(tuple(base_alphabet), tuple(levels), tuple(edges), tuple(iota))

    def coordinate(l, v):
        if l < L and lgs.out_edges(l, v):
            return eta0[l][lgs.out_edges(l, v)[0]]
        if l > 0 and lgs.in_edges(l, v):
            kf = lgs.in_edges(l, v)[0]
            return G.mul(eta0[l - 1][kf], ell0[r0[l - 1][kf]])
        raise StructuralError(f"vertex {v} of level {l} has no edges", f"levels[{l}]")

    jv = [[action.vertex[G.inv(coordinate(l, orb[0]))][l][orb[0]] for orb in v_orbits[l]] for l in range(L + 1)]
    je = [[action.edge[G.inv(eta0[l][orb[0]])][l][orb[0]] for orb in e_orbits[l]] for l in range(L)]

    ell0 = {a: ell0[a] for a in base.alphabet}
    ext = g_extension(base, G, ell0)
    # extension vertex index = gi * |V_l| + class
    xi_v = tuple(
        tuple(action.vertex[g][l][jv[l][c]] for g in G.elements for c in range(len(v_orbits[l]))) for l in range(L + 1)
    )
    xi_e = tuple(
        tuple(action.edge[g][l][je[l][c]] for g in G.elements for c in range(len(e_orbits[l]))) for l in range(L)
    )
    xi = LgsMorphism(xi_v, xi_e)
    symbol_map = _pair_renaming(ext.label_pairs, label_pairs)
    rb = ReportBuilder("quotient_isomorphism")
    rb.record("xi", None, morphism_violations(ext.lgs, lgs, xi, symbol_map))
    return QuotientResult(base, xi, tuple(map(tuple, v_orbits)), tuple(map(tuple, e_orbits)), rb.build())


def _pair_renaming(source_pairs, target_pairs) -> dict[str, str]:
    by_pair = {tuple(p): s for s, p in target_pairs.items()}
    out = {}
    for s, p in source_pairs.items():
        if tuple(p) not in by_pair:
            raise StructuralError(f"no symbol for the pair {tuple(p)}", "label_pairs")
        out[s] = by_pair[tuple(p)]
    return out


def quotient_of(ext: GExtensionLGS) -> QuotientResult:
    return quotient_extension(ext.lgs, ext.action, ext.eta, ext.r0, ext.labeling, ext.label_pairs, ext.base.alphabet)


def presentation_correspondence_report(lgs: LambdaGraphSystem, group: FiniteGroup, ell, k: int) -> CheckReport:
    """Compare the length-``k`` words of ``g_extension(lgs)`` with the skew
    product of the language presented by ``lgs``."""
    if k > lgs.max_level - 1:
        raise OutOfRangeError(f"need k <= L-1 = {lgs.max_level - 1}, got {k}")
    ext = g_extension(lgs, group, ell)
    ours = set(admissible_words(ext.lgs, k))
    skew = skew_product_spec(PresentedLanguage(lgs), group, ell)
    theirs = set(enumerate_words(skew, k))
    rb = ReportBuilder("presentation_correspondence")
    bad = [Violation("extension_only", k, {"word": list(w)}) for w in sorted(ours - theirs)[:5]]
    bad += [Violation("skew_only", k, {"word": list(w)}) for w in sorted(theirs - ours)[:5]]
    rb.record("word_sets", k, bad)
    return rb.build()


def check_presentation_correspondence(lgs: LambdaGraphSystem, group: FiniteGroup, ell, k: int) -> bool:
    return bool(presentation_correspondence_report(lgs, group, ell, k))


def extension_from_dict(doc: Mapping):
    """Parse the document written by :meth:`GExtensionLGS.to_dict` into the
    pieces :func:`quotient_extension` needs."""
    for key in ("lgs", "group", "action", "eta", "r0", "labeling", "label_pairs"):
        if key not in doc:
            raise StructuralError(f"missing field {key!r}", "$")
    lgs = LambdaGraphSystem.from_dict(doc["lgs"])
    group = load_group(doc["group"])
    action = GroupAction.from_dict(group, doc["action"])
    pairs = {s: tuple(p) for s, p in doc["label_pairs"].items()}
    return dict(
        lgs=lgs,
        action=action,
        eta0=[tuple(x) for x in doc["eta"]],
        r0=[tuple(x) for x in doc["r0"]],
        ell0=dict(doc["labeling"]),
        label_pairs=pairs,
        base_alphabet=doc.get("base_alphabet"),
    )

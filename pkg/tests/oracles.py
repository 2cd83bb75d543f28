"""Independent reference implementations used only by the tests.

They favour obviousness over speed: explicit path enumeration, brute force
over all words, and integer matrix powers.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

import numpy as np


def adjacency(vertices, edges):
    index = {v: i for i, v in enumerate(vertices)}
    A = np.zeros((len(vertices), len(vertices)), dtype=np.int64)
    for _, s, t in edges:
        A[index[s], index[t]] += 1
    return A


def edge_sft_words(vertices, edges, k):
    """Brute force over all edge sequences; a word counts when consecutive
    edges meet and the path extends indefinitely in both directions, which is
    read off from positivity of ``A^n`` with ``n = |V|``."""
    index = {v: i for i, v in enumerate(vertices)}
    src = {name: index[s] for name, s, _ in edges}
    dst = {name: index[t] for name, _, t in edges}
    A = (adjacency(vertices, edges) > 0).astype(np.int64)
    n = len(vertices)
    P = np.linalg.matrix_power(A, n)
    can_enter = P.sum(axis=0) > 0  # some path of length n ends here
    can_leave = P.sum(axis=1) > 0
    names = [e[0] for e in edges]
    out = set()
    for w in product(names, repeat=k):
        if all(dst[a] == src[b] for a, b in zip(w, w[1:])) and (
            not w or (can_enter[src[w[0]]] and can_leave[dst[w[-1]]])
        ):
            out.add(w)
    return out


def lgs_paths(lgs, k):
    """All label words of length-``k`` paths, by explicit depth-first search."""
    out = set()

    def walk(level, v, word):
        if len(word) == k:
            out.add(tuple(word))
            return
        for e in lgs.edges[level]:
            if e.src == v:
                walk(level + 1, e.dst, word + [e.label])

    for start in range(lgs.max_level - k + 1):
        for v in range(lgs.size(start)):
            walk(start, v, [])
    return out


def predecessor_words(lgs, level, v, depth):
    """Labels of paths of length ``depth`` ending at ``v``, by enumerating all
    label sequences and testing each for a realizing path."""
    out = set()
    for w in product(lgs.alphabet, repeat=depth):
        ends = set(range(lgs.size(level - depth)))
        for step, a in enumerate(w):
            l = level - depth + step
            ends = {e.dst for e in lgs.edges[l] if e.src in ends and e.label == a}
        if v in ends:
            out.add(w)
    return out


def local_property_counts(lgs, l):
    """Both sides of the local property as label multisets per ``(u, v)``, by
    enumerating every edge pair explicitly."""
    above, below = Counter(), Counter()
    for e in lgs.edges[l]:
        above[(lgs.iota[l - 1][e.src], e.dst, e.label)] += 1
    for f in lgs.edges[l - 1]:
        for v in range(lgs.size(l + 1)):
            if lgs.iota[l][v] == f.dst:
                below[(f.src, v, f.label)] += 1
    return above, below


def skew_words(base_words, group, ell):
    """Pairs ``(g_i, a_i)`` with ``g_{i+1} = g_i ℓ(a_i)``, enumerated from all group sequences."""
    out = set()
    for w in base_words:
        for gs in product(group.elements, repeat=len(w)):
            if all(group.mul(gs[i], ell[w[i]]) == gs[i + 1] for i in range(len(w) - 1)):
                out.add(tuple(f"({g},{a})" for g, a in zip(gs, w)))
    return out


def dyck_brute_admissible(word):
    """``D₂`` admissibility by recursive matching: cancel one matched pair
    anywhere, recurse; zero as soon as an ``a_i`` meets a ``b_j`` with ``i != j``."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i][0] == "a" and w[i + 1][0] == "b":
                if w[i][1] != w[i + 1][1]:
                    return False
                del w[i : i + 2]
                changed = True
                break
    return True


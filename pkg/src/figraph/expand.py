"""The description map: classification graph + n -> concrete graph G_n."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .graph import ConcreteGraph, VertexLabel
from .model import ClassificationGraph, EdgeLabel, OrbitKind, validate
from .poly import Polynomial

# Intersection sizes that make two labels adjacent; None means "always".
_SHARE = {
    EdgeLabel.PairDisjoint: {0},
    EdgeLabel.PairShare1: {1},
    EdgeLabel.LinComplete: None,
    EdgeLabel.PPShare0: {0},
    EdgeLabel.PPShare1: {1},
    EdgeLabel.PPShare2: {2},
    EdgeLabel.PLShare0: {0},
    EdgeLabel.PLShare1: {1},
    EdgeLabel.LLShare0: {0},
    EdgeLabel.LLShare1: {1},
    EdgeLabel.AllToSingleton: None,
}


def orbit_payloads(kind: OrbitKind, n: int) -> list[tuple[int, ...]]:
    """Labels of one orbit at size ``n``; pairs in colex order so G_n is a prefix of G_{n+1}."""
    if kind == OrbitKind.PAIR:
        return [(a, b) for b in range(2, n + 1) for a in range(1, b)]
    if kind == OrbitKind.LINEAR:
        return [(c,) for c in range(1, n + 1)]
    return [()]


def expand(c: ClassificationGraph, n: int) -> ConcreteGraph:
    """Expand ``c`` at size ``n``.

    Orbits appear in declaration order. Pair orbits are empty for ``n < 2``
    and linear orbits for ``n = 0``.
    """
    validate(c)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    vertices: list[VertexLabel] = []
    blocks: dict[str, range] = {}
    for o in c.orbits:
        start = len(vertices)
        vertices += [VertexLabel(o.id, p) for p in orbit_payloads(o.kind, n)]
        blocks[o.id] = range(start, len(vertices))
    payload_sets = [frozenset(v.payload) for v in vertices]
    adj = [0] * len(vertices)

    rules: dict[tuple[str, str], list] = {}
    for l in c.loops:
        rules.setdefault((l.orbit, l.orbit), []).append(_SHARE[l.label])
    for e in c.edges:
        rules.setdefault((e.a, e.b), []).append(_SHARE[e.label])

    for (a, b), shares in rules.items():
        share_any = any(s is None for s in shares)
        allowed = set().union(*(s for s in shares if s is not None))
        if a == b:
            pairs = itertools.combinations(blocks[a], 2)
        else:
            pairs = itertools.product(blocks[a], blocks[b])
        for u, v in pairs:
            if share_any or len(payload_sets[u] & payload_sets[v]) in allowed:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return ConcreteGraph(n, tuple(vertices), tuple(adj))


def vertex_count_poly(c: ClassificationGraph) -> Polynomial:
    """``p*n(n-1)/2 + l*n + s`` for ``p`` pair, ``l`` linear and ``s`` singleton orbits."""
    p = c.count(OrbitKind.PAIR)
    l = c.count(OrbitKind.LINEAR)
    s = c.count(OrbitKind.SINGLETON)
    return Polynomial([s, l - Fraction(p, 2), Fraction(p, 2)])


def inclusion_map(c: ClassificationGraph, n: int) -> list[int]:
    """Index of each vertex of ``expand(c, n)`` inside ``expand(c, n + 1)``."""
    small = expand(c, n)
    index = expand(c, n + 1).index_of()
    return [index[v] for v in small.vertices]


def permute_labels(g: ConcreteGraph, sigma: dict[int, int]) -> list[VertexLabel]:
    """Apply a permutation of ``[1..n]`` to every vertex label."""
    out = []
    for v in g.vertices:
        out.append(VertexLabel(v.orbit, tuple(sorted(sigma[x] for x in v.payload))))
    return out


def build_kneser_union(k: int, r: int, n: int) -> ConcreteGraph:
    """``k`` copies of ``KG(n, r)``; labels in different copies are adjacent iff they intersect."""
    if k < 1 or r < 1 or n < 0:
        raise ValueError(f"need k >= 1, r >= 1, n >= 0; got k={k}, r={r}, n={n}")
    subsets = sorted(itertools.combinations(range(1, n + 1), r), key=lambda s: s[::-1])
    vertices = [VertexLabel(f"K{i}", s) for i in range(k) for s in subsets]
    masks = []
    for s in subsets:
        m = 0
        for x in s:
            m |= 1 << x
        masks.append(m)
    size = len(subsets)
    adj = [0] * len(vertices)
    for i in range(k):
        for j in range(i, k):
            for a in range(size):
                for b in range(a + 1 if i == j else 0, size):
                    disjoint = not (masks[a] & masks[b])
                    if disjoint if i == j else not disjoint:
                        u, v = i * size + a, j * size + b
                        adj[u] |= 1 << v
                        adj[v] |= 1 << u
    assert len(vertices) == k * comb(n, r)
    return ConcreteGraph(n, tuple(vertices), tuple(adj))

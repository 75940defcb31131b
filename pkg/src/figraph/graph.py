"""Concrete simple graphs with labeled vertices, plus DIMACS / JSON I/O.

Adjacency is stored as one Python ``int`` bitmask per vertex; bit ``j`` of
``adj[i]`` is set iff ``i`` and ``j`` are adjacent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class VertexLabel(NamedTuple):
    """Orbit id plus payload: ``(a, b)`` with ``a < b``, ``(c,)`` or ``()``."""

    orbit: str
    payload: tuple[int, ...]

    def __str__(self) -> str:
        if not self.payload:
            return self.orbit
        return f"{self.orbit}:{','.join(map(str, self.payload))}"


class GraphFormatError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class ConcreteGraph:
    n: int
    vertices: tuple[VertexLabel, ...]
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != len(self.vertices):
            raise ValueError("adjacency size does not match vertex count")
        for i, mask in enumerate(self.adj):
            if mask >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            if mask >> len(self.adj):
                raise ValueError(f"vertex {i} has a neighbor out of range")
            for j in iter_bits(mask):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[VertexLabel] | None = None, n: int = 0) -> "ConcreteGraph":
        adj = [0] * num_vertices
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is None:
            labels = [VertexLabel("v", (i + 1,)) for i in range(num_vertices)]
        return cls(n, tuple(labels), tuple(adj))

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConcreteGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.vertices, self.adj))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, mask in enumerate(self.adj) for v in iter_bits(mask >> (u + 1) << (u + 1))]

    def index_of(self) -> dict[VertexLabel, int]:
        return {label: i for i, label in enumerate(self.vertices)}

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def induced(self, keep: Sequence[int]) -> "ConcreteGraph":
        """Induced subgraph on ``keep`` (new indices follow the order of ``keep``)."""
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return ConcreteGraph.from_edges(len(keep), edges, [self.vertices[v] for v in keep], self.n)

    def relabel(self, perm: Sequence[int]) -> "ConcreteGraph":
        """Graph with vertex ``i`` moved to position ``perm[i]``."""
        labels: list[VertexLabel | None] = [None] * len(perm)
        for i, p in enumerate(perm):
            labels[p] = self.vertices[i]
        edges = [(perm[u], perm[v]) for u, v in self.edges()]
        return ConcreteGraph.from_edges(len(perm), edges, labels, self.n)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.num_vertices))
        g.add_edges_from(self.edges())
        return g


# --- DIMACS ---------------------------------------------------------------

def to_dimacs(g: ConcreteGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"c {line}" for line in comment.splitlines()]
    edges = g.edges()
    lines.append(f"p edge {g.num_vertices} {len(edges)}")
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> ConcreteGraph:
    num_vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if num_vertices is not None or len(parts) < 4:
                    raise GraphFormatError(f"line {lineno}: bad problem line")
                num_vertices = int(parts[2])
            elif parts[0] == "e":
                if num_vertices is None:
                    raise GraphFormatError(f"line {lineno}: edge before problem line")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
                    raise GraphFormatError(f"line {lineno}: invalid edge {raw.strip()!r}")
                edges.append((u, v))
            else:
                raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
    if num_vertices is None:
        raise GraphFormatError("missing 'p edge V E' line")
    return ConcreteGraph.from_edges(num_vertices, edges)


# --- JSON -----------------------------------------------------------------

def graph_to_dict(g: ConcreteGraph) -> dict:
    return {
        "n": g.n,
        "vertices": [{"orbit": v.orbit, "label": list(v.payload)} for v in g.vertices],
        "edges": [[u, v] for u, v in g.edges()],
    }


def graph_from_dict(doc: dict) -> ConcreteGraph:
    try:
        verts = doc["vertices"]
        labels = [VertexLabel(str(v["orbit"]), tuple(int(x) for x in v["label"])) for v in verts]
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
        return ConcreteGraph.from_edges(len(labels), edges, labels, int(doc.get("n", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph document: {exc}") from None


def to_json(g: ConcreteGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=1) + "\n"


def from_json(text: str) -> ConcreteGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from None
    return graph_from_dict(doc)


def read_graph(text: str) -> ConcreteGraph:
    """Read either format, deciding by the first non-blank character."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dimacs(text)


# --- small constructors used in tests and examples ------------------------

def complete_graph(m: int) -> ConcreteGraph:
    return ConcreteGraph.from_edges(m, [(u, v) for u in range(m) for v in range(u + 1, m)])


def empty_graph(m: int) -> ConcreteGraph:
    return ConcreteGraph.from_edges(m, [])


def path_graph(m: int) -> ConcreteGraph:
    return ConcreteGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def gnp_graph(m: int, p: float, rng) -> ConcreteGraph:
    """Erdos-Renyi G(m, p) drawn from a ``random.Random``-like ``rng``."""
    return ConcreteGraph.from_edges(m, [(u, v) for u in range(m) for v in range(u + 1, m)
                                        if rng.random() < p])

"""Exact maximum independent sets, minimum vertex covers and alpha scans."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .expand import expand
from .graph import ConcreteGraph, iter_bits
from .model import ClassificationGraph

BRUTEFORCE_LIMIT = 25


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    """Search ceilings; ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget(max_nodes=10_000_000, max_seconds=60.0)


@dataclass(frozen=True)
class MisResult:
    alpha: int
    witness: tuple[int, ...]
    nodes_explored: int
    elapsed: float


class BudgetExceeded(Exception):
    """Raised when a budget runs out; carries the bounds proven so far."""

    def __init__(self, lower_bound: int, upper_bound: int, witness: tuple[int, ...],
                 nodes_explored: int, elapsed: float, reason: str):
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.witness = witness
        self.nodes_explored = nodes_explored
        self.elapsed = elapsed
        self.reason = reason
        super().__init__(f"{reason} budget exhausted after {nodes_explored} nodes: "
                         f"{lower_bound} <= alpha <= {upper_bound}")


class _Stop(Exception):
    pass


def clique_cover_size(adj, cand: int, limit: int | None = None) -> int:
    """Greedy clique cover of the vertices in ``cand``; an upper bound on alpha there.

    Vertices are taken in index order and join the first clique they are
    fully adjacent to. Stops counting once ``limit`` is exceeded.
    """
    commons: list[int] = []
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        for i, common in enumerate(commons):
            if common & low:
                commons[i] = common & adj[v]
                break
        else:
            commons.append(adj[v] & cand)
            if limit is not None and len(commons) > limit:
                return len(commons)
    return len(commons)


class _BranchAndBound:
    def __init__(self, adj, budget: Budget | None):
        self.adj = adj
        self.budget = budget or Budget()
        self.nodes = 0
        self.best = 0
        self.best_set = 0
        self.start = time.perf_counter()

    def _tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _Stop("node")
        if b.max_seconds is not None and not self.nodes & 255 \
                and time.perf_counter() - self.start > b.max_seconds:
            raise _Stop("time")

    def search(self, cand: int, chosen: int, size: int) -> None:
        adj = self.adj
        while True:
            self._tick()
            # Fold degree-0 and degree-1 vertices: some maximum set contains them.
            changed = True
            while changed and cand:
                changed = False
                rest = cand
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if not cand & low:
                        continue
                    v = low.bit_length() - 1
                    nb = adj[v] & cand
                    if nb & (nb - 1) == 0:
                        chosen |= low
                        size += 1
                        cand &= ~(nb | low)
                        rest &= cand
                        changed = True
            if not cand:
                if size > self.best:
                    self.best, self.best_set = size, chosen
                return
            room = self.best - size
            if clique_cover_size(adj, cand, room) <= room:
                return
            best_v, best_d = -1, -1
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                d = (adj[v] & cand).bit_count()
                if d > best_d:
                    best_v, best_d = v, d
            bit = 1 << best_v
            self.search(cand & ~adj[best_v] & ~bit, chosen | bit, size + 1)
            cand &= ~bit


def components(adj, cand: int) -> list[int]:
    """Connected components of the subgraph induced by ``cand``, as bitmasks ordered by lowest vertex."""
    out = []
    while cand:
        comp = frontier = cand & -cand
        while frontier:
            grow = 0
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                grow |= adj[low.bit_length() - 1]
            frontier = grow & cand & ~comp
            comp |= frontier
        out.append(comp)
        cand &= ~comp
    return out


def max_independent_set(g: ConcreteGraph, budget: Budget | None = None) -> MisResult:
    """Exact maximum independent set by branch and bound.

    Connected components are solved separately. Within one, branches on a
    maximum-degree vertex (lowest index on ties), bounds with a greedy clique
    cover and folds degree-0/1 vertices. Deterministic.
    Raises :class:`BudgetExceeded` if ``budget`` runs out first.
    """
    bb = _BranchAndBound(g.adj, budget)
    full = (1 << g.num_vertices) - 1
    total, chosen = 0, 0
    try:
        for comp in components(g.adj, full):
            bb.best, bb.best_set = 0, 0
            bb.search(comp, 0, 0)
            total += bb.best
            chosen |= bb.best_set
    except _Stop as stop:
        elapsed = time.perf_counter() - bb.start
        chosen |= bb.best_set
        raise BudgetExceeded(total + bb.best, clique_cover_size(g.adj, full), tuple(iter_bits(chosen)),
                             bb.nodes, elapsed, str(stop)) from None
    witness = tuple(iter_bits(chosen))
    elapsed = time.perf_counter() - bb.start
    if not g.is_independent(witness) or len(witness) != total:
        raise AssertionError("solver produced an invalid witness")
    return MisResult(total, witness, bb.nodes, elapsed)


def alpha(g: ConcreteGraph, budget: Budget | None = None) -> int:
    return max_independent_set(g, budget).alpha


def alpha_bruteforce(g: ConcreteGraph, limit: int = BRUTEFORCE_LIMIT) -> int:
    """Exhaustive include/exclude recursion on the lowest remaining vertex.

    Shares nothing with :func:`max_independent_set`; memoized on the
    remaining-vertex set only. Refuses graphs above ``limit`` vertices
    (25 unless raised explicitly).
    """
    if g.num_vertices > limit:
        raise TooLarge(f"{g.num_vertices} vertices exceeds the brute-force limit {limit}")
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(rest: int) -> int:
        if not rest:
            return 0
        low = rest & -rest
        v = low.bit_length() - 1
        skip = best(rest ^ low)
        take = 1 + best(rest & ~adj[v] & ~low)
        return max(skip, take)

    return best((1 << g.num_vertices) - 1)


def _cover_search(adj, num_vertices):
    """Minimum vertex cover: branch on a max-degree vertex v (v in cover, or N(v) in cover)."""

    @lru_cache(maxsize=None)
    def cover(rest: int) -> tuple[int, int]:
        best_v, best_d = -1, 0
        for v in iter_bits(rest):
            d = (adj[v] & rest).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            return 0, 0
        bit = 1 << best_v
        size_a, set_a = cover(rest & ~bit)
        nb = adj[best_v] & rest
        size_b, set_b = cover(rest & ~nb & ~bit)
        if size_a + 1 <= size_b + best_d:
            return size_a + 1, set_a | bit
        return size_b + best_d, set_b | nb

    return cover((1 << num_vertices) - 1)


def min_vertex_cover(g: ConcreteGraph) -> tuple[int, tuple[int, ...]]:
    """Minimum vertex cover ``(size, witness)``.

    Graphs with at most 25 vertices use a dedicated cover search, so the
    result is an independent check on alpha; larger graphs take the
    complement of a maximum independent set.
    """
    if g.num_vertices <= BRUTEFORCE_LIMIT:
        size, mask = _cover_search(g.adj, g.num_vertices)
        witness = tuple(iter_bits(mask))
    else:
        mis = set(max_independent_set(g).witness)
        witness = tuple(v for v in range(g.num_vertices) if v not in mis)
        size = len(witness)
    if any(u not in witness and v not in witness for u, v in g.edges()):
        raise AssertionError("vertex cover misses an edge")
    return size, witness


# --- alpha sequences ------------------------------------------------------

@dataclass(frozen=True)
class AlphaRow:
    n: int
    alpha: int | None
    vertices: int
    edges: int
    nodes_explored: int
    millis: int
    status: str  # "ok" or "budget"
    lower_bound: int | None = None
    upper_bound: int | None = None
    witness_digest: str = ""
    witness: tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class AlphaSequence:
    digest: str
    rows: tuple[AlphaRow, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ns = [r.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("rows must have strictly increasing n")

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.rows)

    def values(self) -> dict[int, int]:
        return {r.n: r.alpha for r in self.rows if r.complete}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.n, "" if r.alpha is None else r.alpha, r.vertices, r.edges,
                        r.nodes_explored, r.millis, r.status])
        return buf.getvalue()

    def to_json(self, witnesses: bool = False) -> str:
        rows = []
        for r in self.rows:
            d = asdict(r)
            if not witnesses:
                d.pop("witness")
            else:
                d["witness"] = list(r.witness)
            rows.append(d)
        return json.dumps({"digest": self.digest, "rows": rows}, indent=2) + "\n"


CSV_COLUMNS = ("n", "alpha", "vertices", "edges", "nodes_explored", "millis", "status")


class MonotonicityError(AssertionError):
    pass


def sequence_from_csv(text: str, digest: str = "") -> AlphaSequence:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        try:
            a = rec.get("alpha", "")
            rows.append(AlphaRow(n=int(rec["n"]), alpha=int(a) if a not in ("", None) else None,
                                 vertices=int(rec.get("vertices") or 0), edges=int(rec.get("edges") or 0),
                                 nodes_explored=int(rec.get("nodes_explored") or 0),
                                 millis=int(rec.get("millis") or 0), status=rec.get("status") or "ok"))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad sequence row {rec!r}: {exc}") from None
    return AlphaSequence(digest, tuple(rows))


def sequence_from_json(text: str) -> AlphaSequence:
    doc = json.loads(text)
    rows = []
    for d in doc["rows"]:
        d = dict(d)
        d["witness"] = tuple(d.get("witness", ()))
        rows.append(AlphaRow(**d))
    return AlphaSequence(doc.get("digest", ""), tuple(rows))


def sequence_from_values(values: dict[int, int] | list[tuple[int, int]], digest: str = "") -> AlphaSequence:
    items = sorted(dict(values).items())
    return AlphaSequence(digest, tuple(AlphaRow(n, a, 0, 0, 0, 0, "ok") for n, a in items))


def witness_digest(labels) -> str:
    return hashlib.sha256("|".join(sorted(labels)).encode()).hexdigest()[:16]


def solve_row(c: ClassificationGraph, n: int, budget: Budget | None) -> AlphaRow:
    g = expand(c, n)
    try:
        res = max_independent_set(g, budget)
    except BudgetExceeded as exc:
        return AlphaRow(n, None, g.num_vertices, g.num_edges, exc.nodes_explored,
                        round(exc.elapsed * 1000), "budget", exc.lower_bound, exc.upper_bound)
    labels = tuple(str(g.vertices[v]) for v in res.witness)
    return AlphaRow(n, res.alpha, g.num_vertices, g.num_edges, res.nodes_explored,
                    round(res.elapsed * 1000), "ok", res.alpha, res.alpha,
                    witness_digest(labels), labels)


def _solve_row_args(args):
    return solve_row(*args)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("FIGRAPH_THREADS", "1")))
    except ValueError:
        return 1


def scan_alpha(c: ClassificationGraph, n_min: int = 2, n_max: int = 12,
               budget: Budget | None = DEFAULT_BUDGET, workers: int | None = None) -> AlphaSequence:
    """Solve ``expand(c, n)`` for every ``n`` in ``[n_min, n_max]``.

    Rows that run out of budget are kept with status ``"budget"`` and their
    bounds. Complete rows must be non-decreasing in alpha, otherwise
    :class:`MonotonicityError` is raised. ``workers`` defaults to
    ``$FIGRAPH_THREADS`` (1 if unset).
    """
    if not 0 <= n_min <= n_max:
        raise ValueError(f"need 0 <= n_min <= n_max, got {n_min}, {n_max}")
    ns = range(n_min, n_max + 1)
    workers = thread_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_solve_row_args, [(c, n, budget) for n in ns]))
    else:
        rows = [solve_row(c, n, budget) for n in ns]
    done = [r for r in rows if r.complete]
    for a, b in zip(done, done[1:]):
        if b.alpha < a.alpha:
            raise MonotonicityError(f"alpha decreased from n={a.n} ({a.alpha}) to n={b.n} ({b.alpha})")
    return AlphaSequence(c.digest(), tuple(rows))

"""Edge ideals of graphs and the Krull dimension of R/I.

For a square-free monomial edge ideal the minimal primes are generated by
minimal vertex covers, so ``dim R/I = |V| - tau(G)``. That is how the
dimension is computed here, with no symbolic algebra involved.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .graph import ConcreteGraph, VertexLabel
from .solver import BRUTEFORCE_LIMIT, TooLarge, alpha_bruteforce, max_independent_set, min_vertex_cover

log = logging.getLogger(__name__)


def variable_name(label: VertexLabel) -> str:
    if not label.payload:
        return f"x_{{{label.orbit}}}"
    return "x_{" + ",".join(map(str, label.payload)) + "}"


@dataclass(frozen=True)
class EdgeIdealPresentation:
    variables: tuple[str, ...]
    generators: tuple[tuple[int, int], ...]
    krull_dim: int
    provenance: str  # "vertex-cover-search" or "mis-solver"

    def ring_text(self) -> str:
        return "R_G = Q[" + ", ".join(self.variables) + "]"

    def ideal_text(self) -> str:
        gens = ", ".join(self.variables[u] + self.variables[v] for u, v in self.generators)
        return f"I_G = ({gens})"

    def text(self) -> str:
        return f"{self.ring_text()}\n{self.ideal_text()}\ndim R_G/I_G = {self.krull_dim}\n"

    def to_json(self) -> str:
        return json.dumps({
            "variables": list(self.variables),
            "generators": [[self.variables[u], self.variables[v]] for u, v in self.generators],
            "krull_dim": self.krull_dim,
            "provenance": self.provenance,
        }, indent=2) + "\n"


def _variables(g: ConcreteGraph) -> tuple[str, ...]:
    names = [variable_name(v) for v in g.vertices]
    if len(set(names)) != len(names):
        # Several orbits share payloads; qualify by orbit.
        names = [f"x_{{{v.orbit}:{','.join(map(str, v.payload))}}}" for v in g.vertices]
    return tuple(names)


def krull_dimension_with_provenance(g: ConcreteGraph) -> tuple[int, str]:
    if g.num_vertices <= BRUTEFORCE_LIMIT:
        tau, _ = min_vertex_cover(g)
        return g.num_vertices - tau, "vertex-cover-search"
    log.info("graph has %d vertices; Krull dimension taken from the MIS solver", g.num_vertices)
    alpha = max_independent_set(g).alpha
    return g.num_vertices - (g.num_vertices - alpha), "mis-solver"


def krull_dimension(g: ConcreteGraph) -> int:
    """``|V| - tau(G)``; tau comes from the cover search when ``|V| <= 25``."""
    return krull_dimension_with_provenance(g)[0]


def edge_ideal(g: ConcreteGraph) -> EdgeIdealPresentation:
    dim, provenance = krull_dimension_with_provenance(g)
    return EdgeIdealPresentation(_variables(g), tuple(g.edges()), dim, provenance)


@dataclass(frozen=True)
class DimAlphaReport:
    krull_dim: int
    alpha: int
    vertices: int

    @property
    def equal(self) -> bool:
        return self.krull_dim == self.alpha


def check_dim_equals_alpha(g: ConcreteGraph) -> tuple[bool, DimAlphaReport]:
    """Compare the cover-search Krull dimension with brute-force alpha."""
    if g.num_vertices > BRUTEFORCE_LIMIT:
        raise TooLarge(f"{g.num_vertices} vertices exceeds {BRUTEFORCE_LIMIT}")
    tau, _ = min_vertex_cover(g)
    report = DimAlphaReport(g.num_vertices - tau, alpha_bruteforce(g), g.num_vertices)
    return report.equal, report

"""FI-graph families: classification graphs, expansion, exact independence numbers and sequence analysis."""

__version__ = "0.1.0"

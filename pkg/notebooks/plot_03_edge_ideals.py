"""
Edge ideals and Krull dimension
===============================

The edge ideal of G has one quadratic generator per edge. The dimension of
the quotient ring equals |V| minus the smallest vertex cover, which is
alpha(G).
"""

from figraph.expand import expand
from figraph.graph import complete_graph
from figraph.ideals import check_dim_equals_alpha, edge_ideal
from figraph.model import family

print(edge_ideal(expand(family("kneser2"), 4)).text())

ok, report = check_dim_equals_alpha(complete_graph(5))
print("K_5:", report)

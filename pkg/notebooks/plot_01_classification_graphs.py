"""
Classification graphs and their expansions
==========================================

A classification graph describes a whole sequence of graphs G_0, G_1, ...
at once. Each orbit becomes a block of vertices labelled by pairs, single
elements or a lone point of {1..n}; labels on loops and edges say which
label intersections are adjacent.
"""

from figraph.expand import expand, inclusion_map, vertex_count_poly
from figraph.model import family, serialize

# The Kneser family: one pair orbit, pairs adjacent when disjoint.
kneser = family("kneser2")
print(serialize(kneser).decode())

# At n = 4 it is a perfect matching on the six 2-subsets.
g = expand(kneser, 4)
for u, v in g.edges():
    print(g.vertices[u], "--", g.vertices[v])

# Vertex counts are polynomial in n.
print("|V(G_n)| =", vertex_count_poly(kneser).format("n"))

# G_4 sits inside G_5 as an induced subgraph.
emb = inclusion_map(kneser, 4)
print("G_4 -> G_5:", [str(expand(kneser, 5).vertices[i]) for i in emb])

# Mixing orbit kinds: K_{n,n} from two linear orbits.
print(expand(family("complete_bipartite"), 3).num_edges, "edges in K_{3,3}")

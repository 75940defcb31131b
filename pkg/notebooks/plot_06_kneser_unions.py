"""
Unions of Kneser graphs
=======================

k copies of KG(n, r), adjacent across copies when the labels meet. For
r >= 3 the union is no better than one copy: alpha = C(n-1, r-1).
"""

from figraph.analysis import kneser_union_alpha_formula, verify_binomial_lemmas
from figraph.expand import build_kneser_union
from figraph.solver import alpha

for k, r, n in [(2, 3, 6), (3, 3, 7), (2, 2, 6), (2, 2, 7), (3, 1, 5)]:
    g = build_kneser_union(k, r, n)
    print(f"k={k} r={r} n={n}: solver {alpha(g)}, formula {kneser_union_alpha_formula(k, r, n)}")

print(verify_binomial_lemmas(8, 40).checked)

"""
Independence numbers along a family
===================================

``scan_alpha`` solves each G_n exactly and records the search effort.
"""

from figraph.model import family
from figraph.solver import Budget, BudgetExceeded, max_independent_set, scan_alpha
from figraph.expand import expand

# Erdos-Ko-Rado: stars are the largest intersecting families, so alpha = n - 1.
seq = scan_alpha(family("kneser2"), 4, 10)
print(seq.to_csv())

# Johnson graphs alternate: alpha = floor(n / 2).
print(scan_alpha(family("johnson2"), 2, 11).values())

# A singleton joined to everything caps alpha at the number of singletons until n catches up.
print(scan_alpha(family("singletons_vs_orbit", 5), 2, 9).values())

# A tiny budget gives bounds instead of an answer.
try:
    max_independent_set(expand(family("johnson2"), 12), Budget(max_nodes=10))
except BudgetExceeded as exc:
    print(f"{exc.lower_bound} <= alpha <= {exc.upper_bound}")

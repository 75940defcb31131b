"""
Trends on random families
=========================

Draw random classification graphs with pair orbits and check the three
observed trends: at most two pieces, polynomial when there is no Johnson
orbit, and quadratic growth exactly when some pair orbit has no loop.
"""

import random

from figraph.analysis import NoFit, check_trends, fit_quasi_polynomial
from figraph.model import RandomGenParams, random_classification_graph
from figraph.solver import scan_alpha

master = random.Random(1)
for _ in range(5):
    params = RandomGenParams(pair=(1, 2), linear=(0, 1), singleton=(0, 1), seed=master.getrandbits(64))
    c = random_classification_graph(params)
    seq = scan_alpha(c, 2, 11)
    try:
        fit = fit_quasi_polynomial(seq)
    except NoFit:
        # A period-2 quadratic needs 7 points per residue class; look further out.
        seq = scan_alpha(c, 2, 15)
        fit = fit_quasi_polynomial(seq)
    report = check_trends(c, seq, fit)
    print(c.digest(), f"T={fit.period} deg={fit.degree}",
          {k: v.status for k, v in report.verdicts.items()})

"""
Quasi-polynomials and recurrences
=================================

Alpha sequences are eventually quasi-polynomial. The fitter finds the
smallest period and degree that the data confirms, plus where the pattern
starts.
"""

from figraph.analysis import detect_recurrence, fit_quasi_polynomial
from figraph.model import family
from figraph.solver import scan_alpha

johnson = scan_alpha(family("johnson2"), 2, 12)
print(fit_quasi_polynomial(johnson).text())
print(detect_recurrence(johnson).text())

# Two Kneser copies: irregular for small n, then n - 1 from n = 7 on.
copies = scan_alpha(family("copies_of_kneser2", 2), 2, 12)
print(copies.values())
print(fit_quasi_polynomial(copies).text())

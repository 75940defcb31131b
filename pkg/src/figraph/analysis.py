"""Quasi-polynomial fits, linear recurrences and trend checks for alpha sequences.

All arithmetic is exact (``fractions.Fraction``); acceptance of a fit is
integer equality on every data point past the stable degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .model import ClassificationGraph, has_isolated_johnson_orbit, has_johnson_orbit, \
    has_quadratic_independent_orbit
from .poly import Polynomial, interpolate
from .solver import AlphaSequence


class InsufficientData(ValueError):
    pass


class NoFit(Exception):
    """No hypothesis within the search bounds is confirmed by the data."""

    def __init__(self, message: str, untested: tuple = ()):
        super().__init__(message)
        self.untested = untested


class Unsupported(ValueError):
    pass


def _as_points(seq) -> list[tuple[int, int]]:
    if isinstance(seq, AlphaSequence):
        if not seq.complete:
            bad = [r.n for r in seq.rows if not r.complete]
            raise InsufficientData(f"sequence has incomplete rows at n={bad}")
        items = [(r.n, r.alpha) for r in seq.rows]
    elif isinstance(seq, Mapping):
        items = sorted(seq.items())
    else:
        items = list(seq)
        if items and not isinstance(items[0], tuple):
            raise TypeError("expected (n, value) pairs, a mapping, or an AlphaSequence")
        items.sort()
    ns = [n for n, _ in items]
    if any(b != a + 1 for a, b in zip(ns, ns[1:])):
        raise InsufficientData("sequence must cover a contiguous range of n")
    return [(int(n), int(v)) for n, v in items]


# --- quasi-polynomials ----------------------------------------------------

@dataclass(frozen=True)
class QuasiPolynomialFit:
    period: int
    pieces: tuple[Polynomial, ...]
    stable_degree: int
    points_confirmed_per_class: int
    searched_degree: int

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def __call__(self, n: int) -> Fraction:
        return self.pieces[n % self.period](n)

    def text(self) -> str:
        lines = [f"period {self.period}, degree {self.degree}, stable degree {self.stable_degree}"]
        if self.period == 1:
            lines.append(f"  piece {self.pieces[0].format('n')}")
        else:
            for i, p in enumerate(self.pieces):
                lines.append(f"  n = {i} mod {self.period}: {p.format('n')}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "stable_degree": self.stable_degree,
            "points_confirmed_per_class": self.points_confirmed_per_class,
            "pieces": [{"residue": i, "coefficients": p.to_json(), "text": p.format("n")}
                       for i, p in enumerate(self.pieces)],
        }


def _try_fit(points, period, degree):
    """Fit for one (period, degree); returns the fit, ``None`` if refuted, or ``"short"``."""
    classes = [[(n, v) for n, v in points if n % period == i] for i in range(period)]
    need = 2 * degree + 3
    if any(len(cls) < need for cls in classes):
        return "short"
    pieces = []
    last_bad = points[0][0] - 1
    for cls in classes:
        tail = cls[-(degree + 1):]
        poly = interpolate([n for n, _ in tail], [v for _, v in tail])
        pieces.append(poly)
        for n, v in reversed(cls[:-(degree + 1)]):
            if poly(n) != v:
                last_bad = max(last_bad, n)
                break
    stable = last_bad + 1
    confirmed = min(sum(1 for n, _ in cls if n >= stable) - (degree + 1) for cls in classes)
    if confirmed < degree + 2:
        return None
    return QuasiPolynomialFit(period, tuple(pieces), stable, confirmed, degree)


def fit_quasi_polynomial(seq, max_period: int = 4, max_degree: int = 3) -> QuasiPolynomialFit:
    """Smallest (period, degree) quasi-polynomial confirmed by the sequence.

    Each residue class is interpolated on its latest ``degree + 1`` points and
    must be confirmed on at least ``degree + 2`` earlier ones. The stable
    degree is the smallest ``n`` past which every point matches.
    Raises :class:`NoFit` or :class:`InsufficientData`.
    """
    if max_period < 1 or max_degree < 0:
        raise ValueError("max_period must be >= 1 and max_degree >= 0")
    points = _as_points(seq)
    if len(points) < 3:
        raise InsufficientData(f"need at least 3 points, got {len(points)}")
    untested = []
    for period in range(1, max_period + 1):
        for degree in range(max_degree + 1):
            fit = _try_fit(points, period, degree)
            if fit == "short":
                untested.append((period, degree))
            elif fit is not None:
                return fit
    raise NoFit(f"no quasi-polynomial with period <= {max_period} and degree <= {max_degree} "
                f"is confirmed by n={points[0][0]}..{points[-1][0]}", tuple(untested))


# --- linear recurrences ---------------------------------------------------

@dataclass(frozen=True)
class RecurrenceGuess:
    """``a(n) = sum(c_i * a(n - i))`` for every ``n >= start + order``."""

    order: int
    coefficients: tuple[Fraction, ...]
    start: int
    verified: int

    @property
    def denominator(self) -> Polynomial:
        """Denominator of the generating function, ``1 - c_1 t - ... - c_L t^L``."""
        return Polynomial([1] + [-c for c in self.coefficients])

    def text(self) -> str:
        if self.order == 0:
            rhs = "0"
        else:
            rhs = " + ".join(f"({c})*a(n-{i})" for i, c in enumerate(self.coefficients, 1))
        return (f"order {self.order}: a(n) = {rhs} for n >= {self.start + self.order}\n"
                f"denominator {self.denominator.format('t')}\n")

    def to_dict(self) -> dict:
        return {"order": self.order, "coefficients": [str(c) for c in self.coefficients],
                "start": self.start, "verified": self.verified,
                "denominator": self.denominator.to_json()}


def _solve(rows: list[list[Fraction]], rhs: list[Fraction], size: int):
    """Solve ``rows @ x = rhs`` exactly; free variables set to zero, ``None`` if inconsistent."""
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(size):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * size
    for i, col in enumerate(pivots):
        x[col] = m[i][-1]
    return x


def _holds(values, coeffs, start):
    order = len(coeffs)
    return all(values[n] == sum(c * values[n - i] for i, c in enumerate(coeffs, 1))
               for n in range(start + order, len(values)))


def detect_recurrence(seq, max_order: int | None = None, min_extra: int = 1) -> RecurrenceGuess:
    """Minimal-order linear recurrence with rational coefficients.

    For each order ``L`` the linear system built from the latest ``2L``
    points is solved, then extended backwards while it stays consistent; it
    must be checked on at least ``min_extra`` further equations (so at least
    ``2L + 1`` points). Raises :class:`NoFit` when no order up to
    ``max_order`` works.
    """
    points = _as_points(seq)
    values = [Fraction(v) for _, v in points]
    first_n = points[0][0] if points else 0
    total = len(values)
    if max_order is None:
        max_order = (total - min_extra) // 2
    for order in range(0, max_order + 1):
        need = 2 * order + min_extra
        if need > total:
            break
        if order == 0:
            start = total
            while start > 0 and values[start - 1] == 0:
                start -= 1
            if total - start >= need:
                return RecurrenceGuess(0, (), first_n + start, total - start)
            continue
        best = None
        start = total - need
        while start >= 0:
            eqs = [[values[n - i] for i in range(1, order + 1)] for n in range(start + order, total)]
            rhs = [values[n] for n in range(start + order, total)]
            sol = _solve(eqs, rhs, order)
            if sol is None:
                break
            best = (start, sol)
            start -= 1
        if best is not None:
            start, sol = best
            assert _holds(values, sol, start)
            return RecurrenceGuess(order, tuple(sol), first_n + start, total - start - order)
    raise NoFit(f"no linear recurrence of order <= {max_order}")


# --- trends ---------------------------------------------------------------

HOLDS, VIOLATED, NOT_APPLICABLE, UNDETERMINED = "HOLDS", "VIOLATED", "NOT_APPLICABLE", "UNDETERMINED"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TrendReport:
    at_most_two_pieces: Verdict
    polynomial_without_johnson: Verdict
    quadratic_iff_free_pair_orbit: Verdict

    @property
    def verdicts(self) -> dict[str, Verdict]:
        return {"trend1": self.at_most_two_pieces, "trend2": self.polynomial_without_johnson,
                "trend3": self.quadratic_iff_free_pair_orbit}

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.status == VIOLATED]

    def to_dict(self) -> dict:
        return {k: {"verdict": v.status, "witness": v.witness} for k, v in self.verdicts.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def check_trends(c: ClassificationGraph, seq, fit: QuasiPolynomialFit | None) -> TrendReport:
    """Check the three observed trends for ``c`` against its fitted alpha sequence.

    Trend 2 uses the loop-set reading of "Johnson orbit"; the stricter
    reading (Johnson orbit with no cross edges) is reported in its witness.
    ``fit=None`` marks every trend ``UNDETERMINED``.
    """
    values = _as_points(seq) if seq is not None else []
    johnson = has_johnson_orbit(c)
    free_pair = has_quadratic_independent_orbit(c)
    base = {"alpha": dict(values)}
    if fit is None:
        u = Verdict(UNDETERMINED, {**base, "reason": "no fit"})
        return TrendReport(u, u, u)
    shape = {"period": fit.period, "degree": fit.degree, "stable_degree": fit.stable_degree}

    t1 = HOLDS if fit.period <= 2 and fit.degree <= 2 else VIOLATED
    trend1 = Verdict(t1, shape)

    readings = {"johnson_orbit_loopset": johnson,
                "johnson_orbit_isolated": has_isolated_johnson_orbit(c)}
    if johnson:
        trend2 = Verdict(NOT_APPLICABLE, {**shape, **readings})
    else:
        trend2 = Verdict(HOLDS if fit.period == 1 else VIOLATED, {**shape, **readings})

    quadratic = fit.degree == 2
    trend3 = Verdict(HOLDS if quadratic == free_pair else VIOLATED,
                     {**shape, "loop_free_pair_orbit": free_pair})
    return TrendReport(trend1, trend2, trend3)


# --- closed forms for unions of Kneser graphs -----------------------------

def kneser_union_alpha_formula(k: int, r: int, n: int) -> int:
    """Closed-form alpha of ``build_kneser_union(k, r, n)`` where it is proven.

    ``r >= 3, n >= 2r``: ``C(n-1, r-1)``. ``r = 2, n >= 2``: ``n`` when
    ``n <= 3k`` and ``3 | n``, else ``n - 1``. ``r = 1``: ``min(n, k)``.
    Anything else raises :class:`Unsupported`.
    """
    if k < 1 or r < 1:
        raise Unsupported(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    if r >= 3 and n >= 2 * r:
        return comb(n - 1, r - 1)
    if r == 2 and n >= 2:
        return n if n <= 3 * k and n % 3 == 0 else n - 1
    if r == 1 and n >= 0:
        return min(n, k)
    raise Unsupported(f"no proven formula for k={k}, r={r}, n={n}")


def partition_alpha_bound(r: int, m: int) -> int:
    """Largest independent set of one Kneser orbit whose labels use only an ``m``-set."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m < r:
        return 0
    if m <= 2 * r - 1:
        return comb(m, r)
    return comb(m - 1, r - 1)


@dataclass
class LemmaReport:
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"checked": self.checked, "violations": self.violations, "ok": self.ok}


def verify_binomial_lemmas(r_max: int = 10, range_bound: int = 60) -> LemmaReport:
    """Exhaustively check the binomial inequalities behind the Kneser-union formula.

    ``small_plus_large``: ``C(a,r) + C(b,r-1) < C(a+b-1,r-1)`` for
    ``r <= a <= 2r-2``, ``b >= 2r-1``. ``doubled_middle``:
    ``2 C(2r-1,r-1) < C(4r-3,r-1)``. ``large_pair``:
    ``C(c,r-1) + C(d,r-1) < C(c+d-1,r-1)`` for ``c, d >= 2r-1``.
    ``equal_blocks``: ``j C(2r-1,r-1) < C(j(2r-1)-1,r-1)`` for ``j >= 2``.
    All for ``3 <= r <= r_max`` with the free variables up to ``range_bound``.
    """
    if r_max < 3:
        raise ValueError("r_max must be at least 3")
    report = LemmaReport({"small_plus_large": 0, "doubled_middle": 0, "large_pair": 0,
                          "equal_blocks": 0})

    def check(name, ok, **where):
        report.checked[name] += 1
        if not ok:
            report.violations.append({"lemma": name, **where})

    for r in range(3, r_max + 1):
        for a in range(r, 2 * r - 1):
            for b in range(2 * r - 1, range_bound + 1):
                check("small_plus_large", comb(a, r) + comb(b, r - 1) < comb(a + b - 1, r - 1),
                      r=r, a=a, b=b)
        check("doubled_middle", 2 * comb(2 * r - 1, r - 1) < comb(4 * r - 3, r - 1), r=r)
        for c in range(2 * r - 1, range_bound + 1):
            for d in range(2 * r - 1, range_bound + 1):
                check("large_pair", comb(c, r - 1) + comb(d, r - 1) < comb(c + d - 1, r - 1),
                      r=r, c=c, d=d)
        j = 2
        while j * (2 * r - 1) <= range_bound:
            check("equal_blocks", j * comb(2 * r - 1, r - 1) < comb(j * (2 * r - 1) - 1, r - 1),
                  r=r, j=j)
            j += 1
    return report

"""Named verification suites: each check reproduces one known result end to end."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .analysis import NoFit, check_trends, detect_recurrence, fit_quasi_polynomial, \
    kneser_union_alpha_formula, partition_alpha_bound, verify_binomial_lemmas
from .expand import build_kneser_union, expand, inclusion_map, permute_labels, vertex_count_poly
from .graph import ConcreteGraph, complete_graph, gnp_graph
from .ideals import krull_dimension
from .model import RandomGenParams, family, random_classification_graph
from .poly import Polynomial
from .solver import Budget, alpha_bruteforce, max_independent_set, min_vertex_cover, scan_alpha


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    elapsed: float
    limit: float
    detail: str = ""
    findings: list[str] = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key} {self.title} ({self.elapsed:.1f}s / {self.limit:.0f}s) {self.detail}"


class _Check:
    def __init__(self, key, title, limit):
        self.key, self.title, self.limit = key, title, limit
        self.failures: list[str] = []
        self.findings: list[str] = []
        self.notes: list[str] = []

    def expect(self, ok: bool, message: str) -> bool:
        if not ok:
            self.failures.append(message)
        return ok


def _run(key: str, title: str, limit: float, body: Callable[[_Check], None]) -> CheckResult:
    chk = _Check(key, title, limit)
    t0 = time.perf_counter()
    try:
        body(chk)
    except Exception as exc:  # a crash is a failed check, reported with its message
        chk.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    if elapsed > limit:
        chk.failures.append(f"time {elapsed:.1f}s exceeds {limit:.0f}s")
    detail = "; ".join(chk.failures[:5]) if chk.failures else "; ".join(chk.notes)
    return CheckResult(key, title, not chk.failures, elapsed, limit, detail, chk.findings)


SCAN_BUDGET = Budget(max_nodes=10_000_000, max_seconds=120.0)


def _scan_values(chk: _Check, c, n_min, n_max, budget=SCAN_BUDGET) -> dict[int, int]:
    seq = scan_alpha(c, n_min, n_max, budget, workers=1)
    for r in seq.rows:
        chk.expect(r.complete, f"n={r.n} ran out of budget")
    return seq.values()


# --- individual checks ----------------------------------------------------

def check_ekr() -> CheckResult:
    def body(chk):
        vals = _scan_values(chk, family("kneser2"), 4, 12)
        for n, a in vals.items():
            chk.expect(a == n - 1, f"Kneser n={n}: alpha {a} != {n - 1}")
        chk.notes.append(f"alpha = {list(vals.values())}")
    return _run("C1", "Kneser2 alpha = n-1 on [4..12]", 120, body)


def check_johnson() -> CheckResult:
    def body(chk):
        vals = _scan_values(chk, family("johnson2"), 2, 13)
        for n, a in vals.items():
            chk.expect(a == n // 2, f"Johnson n={n}: alpha {a} != {n // 2}")
        fit = fit_quasi_polynomial(vals)
        chk.expect(fit.period == 2 and fit.degree == 1,
                   f"fit period {fit.period} degree {fit.degree}, expected 2 and 1")
        rec = detect_recurrence(vals)
        target = Polynomial([1, -1]) * Polynomial([1, -1]) * Polynomial([1, 1])
        chk.expect(rec.order == 3, f"recurrence order {rec.order} != 3")
        chk.expect(rec.denominator == target,
                   f"denominator {rec.denominator.format('t')} != (1-t)^2(1+t)")
        chk.notes.append(f"fit period {fit.period} degree {fit.degree}; "
                         f"denominator {rec.denominator.format('t')}")
    return _run("C2", "Johnson2 alpha = floor(n/2), period 2, order-3 recurrence", 120, body)


def random_graphs(count: int, max_vertices: int, seed: int, p_lo=0.1, p_hi=0.9) -> list[ConcreteGraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(min(8, max_vertices), max_vertices)
        p = rng.uniform(p_lo, p_hi)
        out.append(gnp_graph(m, p, rng))
    return out


def check_edge_ideals() -> CheckResult:
    def body(chk):
        k5 = complete_graph(5)
        kg42 = expand(family("kneser2"), 4)
        chk.expect(krull_dimension(k5) == 1, "dim R/I(K5) != 1")
        chk.expect(krull_dimension(kg42) == 3, "dim R/I(KG(4,2)) != 3")
        graphs = random_graphs(100, 20, seed=3) + [k5, kg42]
        mismatches = 0
        for g in graphs:
            dim, a = krull_dimension(g), alpha_bruteforce(g)
            if dim != a:
                mismatches += 1
                chk.expect(False, f"|V|={g.num_vertices}: dim {dim} != alpha {a}")
        chk.notes.append(f"{len(graphs)} graphs, {mismatches} mismatches")
    return _run("C3", "Krull dimension of R/I equals alpha", 180, body)


def check_solver_oracle() -> CheckResult:
    def body(chk):
        graphs = random_graphs(200, 22, seed=4)
        mismatches = 0
        for g in graphs:
            res = max_independent_set(g)
            brute = alpha_bruteforce(g)
            tau, _ = min_vertex_cover(g)
            ok = res.alpha == brute and g.is_independent(res.witness) and res.alpha + tau == g.num_vertices
            if not ok:
                mismatches += 1
                chk.expect(False, f"|V|={g.num_vertices}: solver {res.alpha}, brute {brute}, tau {tau}")
        chk.notes.append(f"{len(graphs)} graphs, {mismatches} mismatches")
    return _run("C4", "branch and bound agrees with brute force", 300, body)


def check_kneser_union() -> CheckResult:
    def body(chk):
        budget = Budget(max_nodes=50_000_000, max_seconds=600.0)
        seen = []
        for k in (2, 3):
            for n in (6, 7):
                res = max_independent_set(build_kneser_union(k, 3, n), budget)
                want = comb(n - 1, 2)
                chk.expect(res.alpha == want, f"k={k} n={n}: alpha {res.alpha} != {want}")
                chk.expect(kneser_union_alpha_formula(k, 3, n) == want, "formula disagrees")
                seen.append(f"(k={k},n={n})->{res.alpha}")
        chk.notes.append(", ".join(seen))
    return _run("C5", "k copies of KG(n,3): alpha = C(n-1,2)", 600, body)


def check_stable_degree_examples() -> CheckResult:
    def body(chk):
        cases = [
            ("singletons_vs_orbit k=5", family("singletons_vs_orbit", 5), 2, 9, lambda n: max(5, n)),
            ("copies_of_complete k=4", family("copies_of_complete", 4), 2, 9, lambda n: min(n, 4)),
            ("copies_of_kneser2 k=2", family("copies_of_kneser2", 2), 2, 10,
             lambda n: n if n <= 6 and n % 3 == 0 else n - 1),
        ]
        for name, c, lo, hi, expected in cases:
            vals = _scan_values(chk, c, lo, hi)
            for n, a in vals.items():
                chk.expect(a == expected(n), f"{name} n={n}: alpha {a} != {expected(n)}")
        chk.notes.append("3 families match")
    return _run("C6", "stable-degree examples", 300, body)


VERTEX_LINEAR_PARAMS = dict(pair=0, linear=(1, 3), singleton=(0, 4), p=0.5)


def check_vertex_linear() -> CheckResult:
    def body(chk):
        master = random.Random(14)
        for i in range(30):
            c = random_classification_graph(RandomGenParams(seed=master.getrandbits(64),
                                                            **VERTEX_LINEAR_PARAMS))
            vals = _scan_values(chk, c, 2, 14)
            try:
                fit = fit_quasi_polynomial(vals)
            except NoFit:
                chk.expect(False, f"instance {i} ({c.digest()}): no fit for {list(vals.values())}")
                continue
            chk.expect(fit.period == 1 and fit.degree <= 1 and fit.stable_degree <= 10,
                       f"instance {i}: period {fit.period} degree {fit.degree} "
                       f"stable degree {fit.stable_degree}")
        chk.notes.append("30 instances eventually linear")
    return _run("C7", "vertex-linear families have eventually linear alpha", 600, body)


TREND_PARAMS = dict(pair=(1, 2), linear=(0, 1), singleton=(0, 1), p=0.5)
TREND_N_MAX = 11
TREND_EXTENDED_N_MAX = 15


def check_trends_sweep(count: int = 50, seed: int = 2024) -> CheckResult:
    def body(chk):
        master = random.Random(seed)
        extended = 0
        for i in range(count):
            c = random_classification_graph(RandomGenParams(seed=master.getrandbits(64), **TREND_PARAMS))
            vals = _scan_values(chk, c, 2, TREND_N_MAX)
            try:
                fit = fit_quasi_polynomial(vals)
            except NoFit as exc:
                if not exc.untested:
                    chk.expect(False, f"instance {i} ({c.digest()}): no fit for {list(vals.values())}")
                    continue
                # Too few points to test some hypotheses: rescan a longer range.
                extended += 1
                vals = _scan_values(chk, c, 2, TREND_EXTENDED_N_MAX)
                try:
                    fit = fit_quasi_polynomial(vals)
                except NoFit:
                    chk.expect(False, f"instance {i} ({c.digest()}): no fit up to n={TREND_EXTENDED_N_MAX}")
                    continue
                chk.findings.append(f"instance {i}: needed n up to {TREND_EXTENDED_N_MAX} "
                                    f"(period {fit.period}, degree {fit.degree})")
            report = check_trends(c, vals, fit)
            for name in report.violations:
                chk.findings.append(f"instance {i} ({c.digest()}): {name} VIOLATED {report.verdicts[name].witness}")
        chk.notes.append(f"{count} instances fitted, {extended} rescanned to n={TREND_EXTENDED_N_MAX}, "
                         f"{sum('VIOLATED' in f for f in chk.findings)} trend violations")
    return _run("C8", "trend reproduction on random unordered-pair families", 1800, body)


def check_lemmas() -> CheckResult:
    def body(chk):
        report = verify_binomial_lemmas(10, 60)
        chk.expect(report.ok, f"violations: {report.violations[:3]}")
        for r in range(1, 4):
            for m in range(0, 9):
                g = build_kneser_union(1, r, m)
                brute = alpha_bruteforce(g, limit=64)
                chk.expect(partition_alpha_bound(r, m) == brute,
                           f"r={r} m={m}: bound {partition_alpha_bound(r, m)} != alpha {brute}")
        chk.notes.append(f"{sum(report.checked.values())} inequalities checked")
    return _run("C9", "binomial lemmas and per-block bound", 60, body)


STRUCTURE_PARAMS = dict(pair=(0, 2), linear=(0, 2), singleton=(0, 2), p=0.5)


def check_structure(count: int = 50, seed: int = 10) -> CheckResult:
    def body(chk):
        rng = random.Random(seed)
        for i in range(count):
            c = random_classification_graph(RandomGenParams(seed=rng.getrandbits(64), **STRUCTURE_PARAMS))
            n = rng.randint(0, 8)
            g = expand(c, n)
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            sigma = dict(zip(range(1, n + 1), perm))
            index = g.index_of()
            moved = [index[label] for label in permute_labels(g, sigma)]
            chk.expect(sorted(moved) == list(range(g.num_vertices)), f"instance {i}: labels not permuted")
            edges = set(g.edges())
            image = {tuple(sorted((moved[u], moved[v]))) for u, v in edges}
            chk.expect(image == edges, f"instance {i}: permutation of [1..{n}] is not an automorphism")
            big = expand(c, n + 1)
            emb = inclusion_map(c, n)
            chk.expect(big.induced(emb) == g, f"instance {i}: G_{n} is not induced in G_{n + 1}")
            poly = vertex_count_poly(c)
            for m in range(0, 13):
                chk.expect(poly(m) == expand(c, m).num_vertices, f"instance {i}: vertex count at n={m}")
        chk.notes.append(f"{count} instances")
    return _run("C10", "equivariance, inclusion and vertex counts", 60, body)


SUITES: dict[str, tuple[Callable[[], CheckResult], ...]] = {
    "known-families": (check_ekr, check_johnson, check_kneser_union, check_stable_degree_examples),
    "oracle": (check_edge_ideals, check_solver_oracle),
    "trends": (check_vertex_linear, check_trends_sweep),
    "lemmas": (check_lemmas,),
    "structure": (check_structure,),
}
SUITES["all"] = tuple(f for name in ("known-families", "oracle", "trends", "lemmas", "structure")
                      for f in SUITES[name])


def run_suite(name: str, echo: Callable[[str], None] | None = print) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    results = []
    for check in SUITES[name]:
        res = check()
        results.append(res)
        if echo:
            echo(res.line())
            for f in res.findings:
                echo(f"    finding: {f}")
    return results

"""
Verification Suites
Numeric identity checks and simulation-versus-bound checks behind `monores verify`
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Tuple

from .combinatorics import (
    bound_exceptional,
    catalan_partial_sum,
    propagation,
    propagation_schedule,
    reaches_exceptional_bound,
    verify_catalan_identity,
    verify_r_recurrence,
)
from .errors import DomainError
from .explorer import (
    explore,
    largest_branch,
    monomialization_depth,
    monotonicity_violations,
    order_growth_violations,
)
from .invariant import gamma
from .monomial import ExponentVector, build_state

SUITES = ("catalan", "bounds", "invariants")
SCALES = (2, 3, 5)

# n=2 roots with min(a) < c <= d <= 12 monomialize within 3 blowups
HIGHER_CODIMENSIONAL_DEGREE = 12
HIGHER_CODIMENSIONAL_C2 = 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    measurements: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [
                {"name": f.name, "detail": f.detail} for f in self.failures
            ],
            "measurements": dict(sorted(self.measurements.items())),
        }

    def to_text(self) -> str:
        mark = "✅" if self.passed else "❌"
        lines = [f"{mark} suite {self.suite}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"]
        for failure in self.failures:
            lines.append(f"   ❌ {failure.name}: {failure.detail}")
        for name, value in sorted(self.measurements.items()):
            lines.append(f"   📝 {name}: {value}")
        return "\n".join(lines) + "\n"


def sorted_exponents(n: int, d_max: int) -> Iterator[Tuple[int, ...]]:
    """Ascending exponent tuples of length n, entries >= 1, total <= d_max."""
    for combo in combinations_with_replacement(range(1, d_max + 1), n):
        if sum(combo) <= d_max:
            yield combo


# ============================================================================
# Suites
# ============================================================================


def verify_catalan(n_max: int = 20) -> SuiteReport:
    report = SuiteReport("catalan")
    for check in verify_catalan_identity(n_max):
        report.add(f"p({check.n},{check.n + 1}) = S_{check.n}", check.passed, f"{check.left} vs {check.right}")
    failures = verify_r_recurrence(40)
    report.add("r(i,j) = r(i-1,j+1) + r(i,j-1) for i+j <= 40", not failures, f"fails at {failures[:5]}")
    for j in range(1, n_max + 1):
        for i in range(j + 1):
            if i + 1 < j and propagation(i, j) > propagation(i + 1, j):
                report.add(f"p monotone in i at ({i},{j})", False)
            if propagation(i, j) > propagation(i, j + 1):
                report.add(f"p monotone in j at ({i},{j})", False)
    for n in range(1, n_max + 1):
        report.add(f"schedule sum n={n}", sum(propagation_schedule(n)) == catalan_partial_sum(n))
    return report


def verify_bounds(n_max: int = 3, d_max: int = 8) -> SuiteReport:
    """
    Exceptional-monomial roots against the exceptional bound, plus scaling
    and the n=2 higher-codimensional monomialization depths.
    """
    report = SuiteReport("bounds")
    for n in range(1, n_max + 1):
        for a in sorted_exponents(n, d_max):
            d = sum(a)
            for c in range(1, d + 1):
                bound = bound_exceptional(a, c)
                tree = explore(build_state(a, c, exceptional=range(1, n + 1)), depth_guard=bound + 1)
                longest = tree.stats.max_depth
                name = f"a={a} c={c}"
                report.add(f"{name} within bound", not tree.truncated and longest <= bound, f"{longest} > {bound}")
                report.add(
                    f"{name} equality case",
                    (longest == bound) == reaches_exceptional_bound(a, c),
                    f"longest {longest}, bound {bound}",
                )
                report.add(f"{name} monotone", not monotonicity_violations(tree))
                if n <= 3 and d <= 8:
                    _check_scaling(report, a, c, tree)

    worst = 0
    for a in sorted_exponents(2, HIGHER_CODIMENSIONAL_DEGREE):
        d = sum(a)
        for c in range(min(a) + 1, d + 1):
            tree = explore(build_state(a, c))
            name = f"a={a} c={c}"
            report.add(f"{name} not truncated", not tree.truncated)
            if tree.truncated:
                continue
            report.add(f"{name} order growth", not order_growth_violations(tree))
            report.add(f"{name} monotone", not monotonicity_violations(tree))
            depth = monomialization_depth(tree)
            report.add(f"{name} monomialized within {HIGHER_CODIMENSIONAL_C2}", depth <= HIGHER_CODIMENSIONAL_C2, f"{depth}")
            worst = max(worst, depth)
    report.measurements["n=2 higher-codimensional max monomialization depth"] = str(worst)
    return report


def _check_scaling(report: SuiteReport, a, c, tree) -> None:
    M = ExponentVector.from_list(list(a))
    shape = tree.shape()
    for k in SCALES:
        scaled = [k * v for v in a]
        same_gamma = gamma(M.scale(k), k * c, len(a)) == gamma(M, c, len(a))
        scaled_tree = explore(
            build_state(scaled, k * c, exceptional=range(1, len(a) + 1)),
            depth_guard=tree.depth_guard,
        )
        report.add(f"a={a} c={c} scaled by {k}", same_gamma and scaled_tree.shape() == shape)


def verify_invariants(n_max: int = 3) -> SuiteReport:
    """Minimal-codimensional roots: monomialization depth equals S_n."""
    report = SuiteReport("invariants")
    for n in range(1, n_max + 1):
        root = build_state([2] * n if n > 1 else [3], 2)
        branch = largest_branch(root)
        report.add(f"largest branch n={n}", len(branch) == catalan_partial_sum(n), f"{len(branch)}")
        if n > 3:
            continue
        tree = explore(root)
        if tree.truncated:
            report.add(f"exhaustive n={n}", False, "truncated")
            continue
        depth = monomialization_depth(tree)
        report.add(f"exhaustive n={n}", depth == catalan_partial_sum(n), f"{depth}")
        report.add(f"monotone n={n}", not monotonicity_violations(tree))
        report.add(f"order growth n={n}", not order_growth_violations(tree))
        report.measurements[f"n={n} max depth"] = str(tree.stats.max_depth)
    return report


def run_suite(suite: str, n_max: int, d_max: int) -> SuiteReport:
    if suite == "catalan":
        return verify_catalan(n_max)
    if suite == "bounds":
        return verify_bounds(n_max, d_max)
    if suite == "invariants":
        return verify_invariants(n_max)
    raise DomainError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}")

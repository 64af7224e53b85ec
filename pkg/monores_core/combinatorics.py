"""
Resolution Combinatorics
Propagation recurrence, Catalan partial sums and the three complexity bounds
"""

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import comb, gcd
from typing import Dict, List, Sequence, Set, Tuple

from .errors import DomainError, MalformedInputError


def _integral(exponents: Sequence) -> List[int]:
    values = []
    for a in exponents:
        if int(a) != a or a < 0:
            raise MalformedInputError(f"Bounds need nonnegative integer exponents, got {a}")
        values.append(int(a))
    return values


@lru_cache(maxsize=None)
def propagation(i: int, j: int) -> int:
    """
    Number of blowups spent consuming i exceptional divisors at dimension j.

    p(i, i) = 0 and p(i, j) = i + sum_{k=1}^{i} p(k, j - 1).

    Raises:
        DomainError: Unless 0 <= i <= j
    """
    if i < 0 or j < 0 or i > j:
        raise DomainError(f"p({i},{j}) is defined for 0 <= i <= j")
    if i == j:
        return 0
    return i + sum(propagation(k, j - 1) for k in range(1, i + 1))


def p_tilde(i: int, j: int) -> int:
    return propagation(i, i + j)


def r_value(i: int, j: int) -> int:
    """r(i, j) = p(i, i + j) + 1."""
    return propagation(i, i + j) + 1


def catalan(j: int) -> int:
    if j < 0:
        raise DomainError(f"Catalan numbers start at C_0, got {j}")
    return comb(2 * j, j) // (j + 1)


def catalan_partial_sum(n: int) -> int:
    """S_n = C_1 + ... + C_n."""
    if n < 0:
        raise DomainError(f"Partial sums need n >= 0, got {n}")
    return sum(catalan(j) for j in range(1, n + 1))


def catalan_segner(n_max: int) -> List[int]:
    """C_0..C_{n_max} from C_{k+1} = sum C_i C_{k-i}, independent of binomials."""
    values = [1]
    for k in range(n_max):
        values.append(sum(values[i] * values[k - i] for i in range(k + 1)))
    return values


def propagation_schedule(n: int) -> List[int]:
    """
    Steps taken by the largest branch between consecutive θ_n drops.

    Returns 1, p(1,n), 1, p(2,n), ..., p(n-1,n), 1; its sum is S_n.
    """
    schedule = [1]
    for j in range(1, n):
        schedule.extend([propagation(j, n), 1])
    return schedule


# ============================================================================
# Bounds
# ============================================================================


def bound_exceptional(a: Sequence, c: int) -> int:
    """
    Blowups needed to resolve an exceptional monomial: (d - c + g) / g.

    Returns 0 when d < c (Sing empty).
    """
    values = _integral(a)
    d = sum(values)
    if d < c:
        return 0
    g = reduce(gcd, values, c)
    return (d - c + g) // g


def equality_cases(a: Sequence) -> Set[int]:
    """Critical values {1, d} ∪ {a_n + ... + a_j + 1 : n >= j >= 2} for sorted a."""
    values = sorted(_integral(a))
    d = sum(values)
    cases = {1, d}
    tail = 0
    for j in range(len(values) - 1, 0, -1):
        tail += values[j]
        cases.add(tail + 1)
    return cases


def reaches_exceptional_bound(a: Sequence, c: int) -> bool:
    """Whether the exceptional bound is attained, judged on the gcd-reduced problem."""
    values = _integral(a)
    g = reduce(gcd, values, c)
    return c // g in equality_cases([v // g for v in values])


def exceptional_order_bound(N: int, d: int, c: int) -> int:
    """(2^N - 1)(d - c)."""
    if d < c:
        raise DomainError(f"Order bound needs d >= c, got d={d}, c={c}")
    return (2 ** N - 1) * (d - c)


def global_bound(n: int, d: int, c: int) -> int:
    """S_n + (2^{S_n} - 1)(d - c) - c + 1."""
    if n < 1:
        raise DomainError(f"Global bound needs n >= 1, got {n}")
    if d < c:
        raise DomainError(f"Global bound needs d >= c, got d={d}, c={c}")
    s = catalan_partial_sum(n)
    return s + exceptional_order_bound(s, d, c) - c + 1


@dataclass
class BoundReport:
    """Closed-form bounds for X^a with critical value c, plus measured counts."""

    n: int
    d: int
    c: int
    g: int
    bound_exceptional: int
    monomialization_bound: int
    exceptional_order_bound: int
    global_bound: int
    toric: bool = False
    measured: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def for_problem(cls, a: Sequence, c: int, toric: bool = False) -> "BoundReport":
        values = _integral(a)
        n, d = len(values), sum(values)
        if d < c:
            raise DomainError(f"Sing is empty for d={d} < c={c}; no bounds apply")
        s = catalan_partial_sum(n)
        return cls(
            n=n,
            d=d,
            c=c,
            g=reduce(gcd, values, c),
            bound_exceptional=bound_exceptional(values, c),
            monomialization_bound=s,
            exceptional_order_bound=exceptional_order_bound(s, d, c),
            global_bound=global_bound(n, d, c),
            toric=toric,
        )

    def consistent(self) -> bool:
        return self.global_bound == (
            self.monomialization_bound
            + (2 ** self.monomialization_bound - 1) * (self.d - self.c)
            - self.c
            + 1
        )

    def to_json(self) -> Dict[str, object]:
        """Integers are emitted as decimal strings to stay exact."""
        return {
            "n": self.n,
            "d": self.d,
            "c": self.c,
            "g": self.g,
            "bound_exceptional": str(self.bound_exceptional),
            "monomialization_bound": str(self.monomialization_bound),
            "exceptional_order_bound": str(self.exceptional_order_bound),
            "global_bound": str(self.global_bound),
            "toric": self.toric,
            "measured": {k: str(v) for k, v in sorted(self.measured.items())},
        }


# ============================================================================
# Identity checks
# ============================================================================


@dataclass
class IdentityCheck:
    n: int
    left: int
    right: int
    passed: bool


def verify_catalan_identity(n_max: int) -> List[IdentityCheck]:
    """
    Check p(n, n+1) = n + sum_{j<n} p(j, n) = S_n and r(n, 1) = sum_{k<=n} C_k.

    Failures are reported per n, never raised.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    segner = catalan_segner(n_max)
    checks = []
    for n in range(1, n_max + 1):
        recurrence = propagation(n, n + 1)
        unrolled = n + sum(propagation(j, n) for j in range(1, n))
        partial = sum(segner[1 : n + 1])
        passed = (
            recurrence == unrolled == partial == catalan_partial_sum(n)
            and r_value(n, 1) == sum(segner[: n + 1])
        )
        checks.append(IdentityCheck(n=n, left=recurrence, right=partial, passed=passed))
    return checks


def verify_r_recurrence(limit: int = 40) -> List[Tuple[int, int]]:
    """
    Points (i, j) with i + j <= limit where r(i,j) = r(i-1,j+1) + r(i,j-1) fails.

    Boundary values r(0, j) = r(i, 0) = 1 are checked too.
    """
    failures = []
    for total in range(limit + 1):
        for i in range(total + 1):
            j = total - i
            if i == 0 or j == 0:
                if r_value(i, j) != 1:
                    failures.append((i, j))
            elif r_value(i, j) != r_value(i - 1, j + 1) + r_value(i, j - 1):
                failures.append((i, j))
    return failures


def propagation_table(j_max: int) -> Dict[Tuple[int, int], int]:
    return {(i, j): propagation(i, j) for j in range(j_max + 1) for i in range(j + 1)}


def format_table(n_max: int, d_minus_c: str = "(d-c)") -> str:
    """Aligned text table of p(i, j), Catalan numbers, partial sums and global bounds."""
    lines = ["p(i,j)  " + " ".join(f"{'j=' + str(j):>6}" for j in range(1, n_max + 2))]
    for i in range(1, n_max + 1):
        cells = []
        for j in range(1, n_max + 2):
            cells.append(f"{propagation(i, j):>6}" if i <= j else f"{'':>6}")
        lines.append(f"i={i:<5} " + " ".join(cells))
    lines.append("")
    lines.append(f"{'n':>3} {'C_n':>8} {'S_n':>8}  global bound")
    for n in range(1, n_max + 1):
        s = catalan_partial_sum(n)
        lines.append(
            f"{n:>3} {catalan(n):>8} {s:>8}  {s}+{2 ** s - 1}{d_minus_c}-c+1"
        )
    return "\n".join(lines)

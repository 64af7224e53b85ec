"""
Monomial Basic Objects
Exact exponent vectors, coordinate strata, divisor ledgers and chart states
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import (
    TYPE_CHECKING,
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import MalformedInputError, UnsupportedReductionError

if TYPE_CHECKING:
    from .invariant import InvariantValue

Number = Union[int, Fraction]
Stratum = FrozenSet[int]


def as_fraction(value: Any) -> Fraction:
    """Coerce an int, Fraction or "p/q" string into an exact Fraction."""
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInputError(f"Exponents must be exact, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"Not a rational number: {value!r}") from e


def fraction_to_json(value: Fraction) -> List[str]:
    return [str(value.numerator), str(value.denominator)]


def fraction_from_json(payload: Any) -> Fraction:
    try:
        num, den = payload
        return Fraction(int(num), int(den))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"Bad rational payload: {payload!r}") from e


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def stratum(vars: Iterable[int]) -> Stratum:
    return frozenset(int(v) for v in vars)


def decreasing(vars: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(vars, reverse=True))


# ============================================================================
# Exponent vectors
# ============================================================================


@dataclass(frozen=True)
class ExponentVector:
    """
    Exponents of a monomial keyed by variable index.

    Entries are kept sorted by index with zero exponents dropped, so two
    vectors describing the same monomial compare and hash equal.
    """

    entries: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        seen = set()
        cleaned = []
        for var, exp in self.entries:
            if isinstance(var, bool) or not isinstance(var, int) or var < 1:
                raise MalformedInputError(f"Variable indices start at 1, got {var!r}")
            if var in seen:
                raise MalformedInputError(f"Duplicate variable index {var}")
            seen.add(var)
            value = as_fraction(exp)
            if value < 0:
                raise MalformedInputError(f"Negative exponent {value} on X{var}")
            if value:
                cleaned.append((var, value))
        object.__setattr__(self, "entries", tuple(sorted(cleaned)))

    @classmethod
    def of(cls, mapping: Mapping[int, Number]) -> "ExponentVector":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_list(cls, values: Sequence[Number]) -> "ExponentVector":
        """Exponents of X1..Xn in order."""
        return cls(tuple((i + 1, v) for i, v in enumerate(values)))

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, var: int) -> Fraction:
        return self.get(var)

    def get(self, var: int) -> Fraction:
        for v, e in self.entries:
            if v == var:
                return e
        return Fraction(0)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.entries)

    @property
    def support(self) -> Stratum:
        return frozenset(v for v, _ in self.entries)

    @property
    def total(self) -> Fraction:
        return sum((e for _, e in self.entries), Fraction(0))

    @property
    def is_trivial(self) -> bool:
        return not self.entries

    @property
    def is_integral(self) -> bool:
        return all(e.denominator == 1 for _, e in self.entries)

    def order_on(self, vars: Iterable[int]) -> Fraction:
        """Order at the generic point of the stratum where ``vars`` vanish."""
        wanted = set(vars)
        return sum((e for v, e in self.entries if v in wanted), Fraction(0))

    def restrict(self, vars: Iterable[int]) -> "ExponentVector":
        wanted = set(vars)
        return ExponentVector(tuple((v, e) for v, e in self.entries if v in wanted))

    def drop(self, vars: Iterable[int]) -> "ExponentVector":
        unwanted = set(vars)
        return ExponentVector(tuple((v, e) for v, e in self.entries if v not in unwanted))

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        merged = self.as_dict()
        for v, e in other.entries:
            merged[v] = merged.get(v, Fraction(0)) + e
        return ExponentVector.of(merged)

    def minus_clamped(self, other: "ExponentVector") -> "ExponentVector":
        """Pointwise difference, floored at zero."""
        return ExponentVector(
            tuple((v, max(Fraction(0), e - other.get(v))) for v, e in self.entries)
        )

    def scale(self, factor: Number) -> "ExponentVector":
        factor = as_fraction(factor)
        if factor < 0:
            raise MalformedInputError(f"Negative scale factor {factor}")
        return ExponentVector(tuple((v, e * factor) for v, e in self.entries))

    def divides(self, other: "ExponentVector") -> bool:
        return all(e <= other.get(v) for v, e in self.entries)

    def with_entry(self, var: int, exp: Number) -> "ExponentVector":
        merged = self.as_dict()
        merged[var] = as_fraction(exp)
        return ExponentVector.of(merged)

    def relabel(self, mapping: Mapping[int, int]) -> "ExponentVector":
        return ExponentVector(tuple((mapping[v], e) for v, e in self.entries))

    def monomial(self) -> str:
        """Render as X1^3*X2^(3/2); the trivial monomial is 1."""
        if not self.entries:
            return "1"
        parts = []
        for v, e in self.entries:
            if e == 1:
                parts.append(f"X{v}")
            elif e.denominator == 1:
                parts.append(f"X{v}^{e.numerator}")
            else:
                parts.append(f"X{v}^({format_fraction(e)})")
        return "*".join(parts)

    def to_json(self) -> List[list]:
        return [[v, fraction_to_json(e)] for v, e in self.entries]

    @classmethod
    def from_json(cls, payload: Any) -> "ExponentVector":
        try:
            return cls(tuple((int(v), fraction_from_json(e)) for v, e in payload))
        except (TypeError, ValueError) as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"Bad exponent payload: {payload!r}") from e


# ============================================================================
# Divisor ledger
# ============================================================================


@dataclass(frozen=True)
class DivisorLedger:
    """
    Per-level exceptional bookkeeping.

    ``levels[i - 1]`` holds ``(E_i, D_i)`` for dimension i. Each exceptional
    hypersurface belongs to exactly one E_i and every D_i lives on ∪E.
    """

    levels: Tuple[Tuple[FrozenSet[int], ExponentVector], ...]

    def __post_init__(self):
        levels = tuple((frozenset(e), d) for e, d in self.levels)
        object.__setattr__(self, "levels", levels)
        seen: set = set()
        for e, _ in levels:
            if seen & e:
                raise MalformedInputError(
                    f"Exceptional divisors {sorted(seen & e)} belong to two levels"
                )
            seen |= e
        for dim, (_, d) in enumerate(levels, start=1):
            stray = d.support - seen
            if stray:
                raise MalformedInputError(
                    f"D_{dim} has non-exceptional variables {sorted(stray)}"
                )

    @classmethod
    def empty(cls, n: int) -> "DivisorLedger":
        return cls(tuple((frozenset(), ExponentVector()) for _ in range(n)))

    @property
    def dims(self) -> int:
        return len(self.levels)

    def exceptional(self, dim: int) -> FrozenSet[int]:
        return self.levels[dim - 1][0]

    def divisor(self, dim: int) -> ExponentVector:
        return self.levels[dim - 1][1]

    def all_exceptional(self) -> FrozenSet[int]:
        return frozenset().union(*(e for e, _ in self.levels))

    def level_of(self, var: int) -> int:
        """Dimension whose E contains ``var``, or 0 for a free variable."""
        for dim, (e, _) in enumerate(self.levels, start=1):
            if var in e:
                return dim
        return 0

    def relabel(self, mapping: Mapping[int, int]) -> "DivisorLedger":
        return DivisorLedger(
            tuple((frozenset(mapping[v] for v in e), d.relabel(mapping)) for e, d in self.levels)
        )

    def scale(self, factor: Number) -> "DivisorLedger":
        return DivisorLedger(tuple((e, d.scale(factor)) for e, d in self.levels))

    def to_json(self) -> List[dict]:
        return [
            {"dim": dim, "E": sorted(e), "D": d.to_json()}
            for dim, (e, d) in enumerate(self.levels, start=1)
        ]

    @classmethod
    def from_json(cls, payload: Any, n: int) -> "DivisorLedger":
        levels = [(frozenset(), ExponentVector()) for _ in range(n)]
        try:
            for level in payload:
                dim = int(level["dim"])
                if not 1 <= dim <= n:
                    raise MalformedInputError(f"Level dimension {dim} outside 1..{n}")
                levels[dim - 1] = (
                    frozenset(int(v) for v in level["E"]),
                    ExponentVector.from_json(level["D"]),
                )
        except (KeyError, TypeError) as e:
            raise MalformedInputError(f"Bad ledger payload: {payload!r}") from e
        return cls(tuple(levels))


# ============================================================================
# Chart state
# ============================================================================


@dataclass(frozen=True)
class ChartState:
    """One affine chart of a monomial basic object (W, (J, c), E)."""

    num_vars: int
    critical: int
    exponents: ExponentVector
    ledger: DivisorLedger
    prev_invariant: Optional["InvariantValue"] = field(default=None, compare=False)
    depth: int = 0

    def __post_init__(self):
        if self.num_vars < 1:
            raise MalformedInputError("A chart needs at least one variable")
        if isinstance(self.critical, bool) or not isinstance(self.critical, int) or self.critical < 1:
            raise MalformedInputError(f"Critical value must be a positive integer, got {self.critical!r}")
        if self.ledger.dims != self.num_vars:
            raise MalformedInputError(
                f"Ledger has {self.ledger.dims} levels for {self.num_vars} variables"
            )
        known = set(self.variables)
        unknown = (self.exponents.support | self.ledger.all_exceptional()) - known
        if unknown:
            raise MalformedInputError(f"Unknown variable indices {sorted(unknown)}")

    @property
    def variables(self) -> range:
        return range(1, self.num_vars + 1)

    @property
    def origin(self) -> Stratum:
        return frozenset(self.variables)

    @property
    def total_degree(self) -> Fraction:
        return self.exponents.total

    @property
    def is_exceptional_monomial(self) -> bool:
        """J = M and I = 1."""
        return split_MI(self)[1].is_trivial

    def stripped(self) -> "ChartState":
        """The same chart without history (depth 0, no previous invariant)."""
        return replace(self, prev_invariant=None, depth=0)

    def describe(self) -> str:
        return f"J={self.exponents.monomial()} c={self.critical}"

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.num_vars,
            "c": self.critical,
            "exponents": self.exponents.to_json(),
            "levels": self.ledger.to_json(),
            "depth": self.depth,
        }

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "ChartState":
        try:
            n = int(payload["n"])
            return cls(
                num_vars=n,
                critical=int(payload["c"]),
                exponents=ExponentVector.from_json(payload["exponents"]),
                ledger=DivisorLedger.from_json(payload.get("levels", []), n),
                depth=int(payload.get("depth", 0)),
            )
        except (KeyError, TypeError) as e:
            raise MalformedInputError(f"Bad chart payload: {e}") from e


def build_state(
    exponents: Sequence[Number],
    critical: int,
    exceptional: Iterable[int] = (),
) -> ChartState:
    """
    Root chart for X^a with critical value c.

    Variables listed in ``exceptional`` start in E_n with D_n equal to
    their part of the monomial.
    """
    n = len(exponents)
    if n == 0:
        raise MalformedInputError("At least one exponent is required")
    vector = ExponentVector.from_list(list(exponents))
    exc = frozenset(exceptional)
    bad = [v for v in exc if not 1 <= v <= n]
    if bad:
        raise MalformedInputError(f"Exceptional variables {sorted(bad)} outside 1..{n}")
    levels = [(frozenset(), ExponentVector()) for _ in range(n)]
    levels[n - 1] = (exc, vector.restrict(exc))
    return ChartState(n, critical, vector, DivisorLedger(tuple(levels)))


# ============================================================================
# Operations
# ============================================================================


def _check_point(state: ChartState, point: Iterable[int]) -> Stratum:
    point = stratum(point)
    unknown = point - set(state.variables)
    if unknown:
        raise MalformedInputError(f"Unknown variable indices {sorted(unknown)}")
    return point


def order_at(state: ChartState, point: Iterable[int]) -> Fraction:
    """
    Order of J at the generic point of a coordinate stratum.

    Args:
        state: Chart to evaluate
        point: Indices of the variables vanishing on the stratum

    Returns:
        Sum of the exponents of the vanishing variables
    """
    return state.exponents.order_on(_check_point(state, point))


def singular_strata(state: ChartState) -> List[Stratum]:
    """Every coordinate stratum (minimal or not) inside Sing(J, c)."""
    found = []
    variables = list(state.variables)
    for size in range(1, len(variables) + 1):
        for combo in combinations(variables, size):
            if state.exponents.order_on(combo) >= state.critical:
                found.append(frozenset(combo))
    return found


def singular_locus(state: ChartState) -> List[Stratum]:
    """
    Minimal strata of Sing(J, c).

    Returns:
        Strata ordered by size then by sorted indices; empty iff d < c
    """
    minimal: List[Stratum] = []
    support = sorted(state.exponents.support)
    for size in range(1, len(support) + 1):
        for combo in combinations(support, size):
            s = frozenset(combo)
            if any(m <= s for m in minimal):
                continue
            if state.exponents.order_on(s) >= state.critical:
                minimal.append(s)
    return minimal


def gcd_reduce(state: ChartState) -> Tuple[ChartState, int]:
    """
    Divide exponents and critical value by k = gcd(a_1, ..., a_n, c).

    Raises:
        UnsupportedReductionError: If some exponent is not an integer
    """
    if not state.exponents.is_integral:
        raise UnsupportedReductionError(
            f"gcd reduction needs integral exponents: {state.exponents.monomial()}"
        )
    k = reduce(gcd, (int(e) for _, e in state.exponents), state.critical)
    if k == 1:
        return state, 1
    reduced = replace(
        state,
        critical=state.critical // k,
        exponents=state.exponents.scale(Fraction(1, k)),
        ledger=state.ledger.scale(Fraction(1, k)),
    )
    return reduced, k


def split_MI(state: ChartState) -> Tuple[ExponentVector, ExponentVector]:
    """Split J = M·I into the exceptional part M and the free part I."""
    exceptional = state.ledger.all_exceptional()
    return state.exponents.restrict(exceptional), state.exponents.drop(exceptional)

"""
Resolution Invariant
The lexicographic function t: Γ for exceptional monomials and the
companion / composition / junior descent for everything else
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from typing import Any, FrozenSet, Iterable, List, Optional, Protocol, Tuple, Union

from .errors import MalformedInputError, NoCenterError, NotSingularError
from .monomial import (
    ChartState,
    DivisorLedger,
    ExponentVector,
    Number,
    Stratum,
    as_fraction,
    decreasing,
    format_fraction,
    fraction_from_json,
    fraction_to_json,
    order_at,
    singular_strata,
)


# ============================================================================
# Values
# ============================================================================


@dataclass(frozen=True)
class GammaValue:
    """Γ = (-Γ1, Γ2, Γ3) of an exceptional monomial."""

    gamma1: int
    gamma2: Fraction
    gamma3: Tuple[int, ...]

    def key(self) -> tuple:
        return (-self.gamma1, self.gamma2, self.gamma3)

    def bracket(self) -> str:
        g3 = ",".join(str(v) for v in self.gamma3)
        return f"gamma({self.gamma1},{format_fraction(self.gamma2)},({g3}))"


FINITE = "finite"
GAMMA = "gamma"
INFINITY = "inf"

# Infinity > Finite > Gamma at a shared position
_RANK = {GAMMA: 0, FINITE: 1, INFINITY: 2}


@dataclass(frozen=True)
class InvariantEntry:
    kind: str
    ratio: Optional[Fraction] = None
    m: int = 0
    gamma: Optional[GammaValue] = None

    @classmethod
    def finite(cls, ratio: Number, m: int) -> "InvariantEntry":
        ratio = as_fraction(ratio)
        if ratio <= 0 or m < 0:
            raise MalformedInputError(f"Finite entry needs ratio > 0 and m >= 0, got [{ratio},{m}]")
        return cls(FINITE, ratio=ratio, m=m)

    @classmethod
    def of_gamma(cls, value: GammaValue) -> "InvariantEntry":
        return cls(GAMMA, gamma=value)

    @classmethod
    def infinity(cls) -> "InvariantEntry":
        return cls(INFINITY)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def key(self) -> tuple:
        if self.kind == FINITE:
            return (_RANK[FINITE], (self.ratio, self.m))
        if self.kind == GAMMA:
            return (_RANK[GAMMA], self.gamma.key())
        return (_RANK[INFINITY], ())

    def bracket(self) -> str:
        if self.kind == FINITE:
            return f"[{format_fraction(self.ratio)},{self.m}]"
        if self.kind == GAMMA:
            return self.gamma.bracket()
        return "inf"

    def to_json(self) -> Any:
        if self.kind == FINITE:
            return {"t": fraction_to_json(self.ratio) + [self.m]}
        if self.kind == GAMMA:
            g = self.gamma
            return {"gamma": [g.gamma1] + fraction_to_json(g.gamma2) + [list(g.gamma3)]}
        return "inf"

    @classmethod
    def from_json(cls, payload: Any) -> "InvariantEntry":
        try:
            if payload == "inf":
                return cls.infinity()
            if "t" in payload:
                num, den, m = payload["t"]
                return cls.finite(fraction_from_json([num, den]), int(m))
            if "gamma" in payload:
                g1, num, den, g3 = payload["gamma"]
                return cls.of_gamma(
                    GammaValue(int(g1), fraction_from_json([num, den]), tuple(int(v) for v in g3))
                )
        except (TypeError, ValueError, KeyError) as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"Bad invariant entry: {payload!r}") from e
        raise MalformedInputError(f"Bad invariant entry: {payload!r}")


@total_ordering
@dataclass(frozen=True, eq=False)
class InvariantValue:
    """Entries t_n, ..., t_1 compared lexicographically."""

    entries: Tuple[InvariantEntry, ...]

    def __post_init__(self):
        stopped = False
        for entry in self.entries:
            if stopped and entry.kind != INFINITY:
                raise MalformedInputError("Entries after a Gamma or inf entry must be inf")
            stopped = stopped or entry.kind != FINITE

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> InvariantEntry:
        return self.entries[index]

    def sort_key(self) -> tuple:
        return tuple(e.key() for e in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantValue):
            return NotImplemented
        return compare(self, other) == 0

    def __lt__(self, other: "InvariantValue") -> bool:
        return compare(self, other) < 0

    def __hash__(self) -> int:
        return hash(self.sort_key())

    def bracket(self) -> str:
        """Render as ([5/2,0],[1,0])."""
        return "(" + ",".join(e.bracket() for e in self.entries) + ")"

    def to_json(self) -> List[Any]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, payload: Any) -> "InvariantValue":
        if not isinstance(payload, list):
            raise MalformedInputError(f"Invariant must be a list, got {payload!r}")
        return cls(tuple(InvariantEntry.from_json(p) for p in payload))


def compare(lhs: InvariantValue, rhs: InvariantValue) -> int:
    """
    Lexicographic comparison of two invariants of the same length.

    Returns:
        -1, 0 or 1

    Raises:
        MalformedInputError: If the lengths differ
    """
    if len(lhs) != len(rhs):
        raise MalformedInputError(f"Cannot compare invariants of lengths {len(lhs)} and {len(rhs)}")
    a, b = lhs.sort_key(), rhs.sort_key()
    return (a > b) - (a < b)


# ============================================================================
# Formal sums of monomials
# ============================================================================


@dataclass(frozen=True)
class MonomialSum:
    """
    The monomial ideal generated by ``generators``.

    Generators divisible by another one are dropped; orders are minima
    over the remaining generators.
    """

    generators: Tuple[ExponentVector, ...]

    def __post_init__(self):
        unique = sorted(set(self.generators), key=lambda g: (g.total, g.entries))
        kept: List[ExponentVector] = []
        for g in unique:
            if not any(k.divides(g) for k in kept):
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    @classmethod
    def of(cls, *generators: ExponentVector) -> "MonomialSum":
        return cls(tuple(generators))

    @property
    def is_trivial(self) -> bool:
        return not self.generators or any(g.is_trivial for g in self.generators)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset().union(*(g.support for g in self.generators))

    def order(self) -> Fraction:
        if self.is_trivial:
            return Fraction(0)
        return min(g.total for g in self.generators)

    def order_on(self, vars: Iterable[int]) -> Fraction:
        vars = frozenset(vars)
        if not self.generators:
            return Fraction(0)
        return min(g.order_on(vars) for g in self.generators)

    def plus(self, other: "MonomialSum") -> "MonomialSum":
        return MonomialSum(self.generators + other.generators)

    def times(self, vars: Iterable[int]) -> "MonomialSum":
        """Multiply every generator by one power of each variable in ``vars``."""
        factor = ExponentVector.of({v: 1 for v in vars})
        return MonomialSum(tuple(g + factor for g in self.generators))

    def monomial(self) -> str:
        if self.is_trivial:
            return "1"
        return " + ".join(g.monomial() for g in self.generators)


# ============================================================================
# Γ and the descent pieces
# ============================================================================


def gamma(M: ExponentVector, c: Number, n: Optional[int] = None) -> Tuple[GammaValue, Stratum]:
    """
    Γ of an exceptional monomial and the center it selects.

    Args:
        M: Exponents of the exceptional monomial
        c: Critical value (may be rational below the top level)
        n: Length Γ3 is padded to, defaults to the largest index of M

    Returns:
        (GammaValue, center stratum)

    Raises:
        NoCenterError: If no subset of variables reaches c
    """
    c = as_fraction(c)
    support = sorted(M.support)
    n = n if n is not None else (support[-1] if support else 0)
    for size in range(1, len(support) + 1):
        reaching = [s for s in combinations(support, size) if M.order_on(s) >= c]
        if not reaching:
            continue
        best = max(M.order_on(s) for s in reaching)
        g3 = max(decreasing(s) for s in reaching if M.order_on(s) == best)
        value = GammaValue(size, best / c, g3 + (0,) * (n - size))
        return value, frozenset(g3)
    raise NoCenterError(f"Sing is empty: {M.monomial()} never reaches c={format_fraction(c)}")


def companion(I: Union[ExponentVector, MonomialSum], M: ExponentVector, c_next: Number) -> Optional[MonomialSum]:
    """
    P = I if θ >= c_next, else I + M^{θ/(c_next - θ)}.

    Returns None when θ = 0: the level is resolved and the caller emits a
    Gamma or inf entry instead.
    """
    I = I if isinstance(I, MonomialSum) else MonomialSum.of(I)
    c_next = as_fraction(c_next)
    theta = I.order()
    if theta == 0:
        return None
    if theta >= c_next or M.is_trivial:
        return I
    return I.plus(MonomialSum.of(M.scale(theta / (c_next - theta))))


def compose(
    P: Union[ExponentVector, MonomialSum],
    I: Union[ExponentVector, MonomialSum],
    E: Iterable[int],
) -> MonomialSum:
    """K = P · I(E) unless I is trivial, in which case K = 1."""
    P = P if isinstance(P, MonomialSum) else MonomialSum.of(P)
    I = I if isinstance(I, MonomialSum) else MonomialSum.of(I)
    if I.is_trivial:
        return MonomialSum.of(ExponentVector())
    return P.times(E)


def _is_bold_regular(K: MonomialSum) -> bool:
    return len(K.generators) == 1 and len(K.generators[0]) == 1


def maximal_contact(K: MonomialSum) -> int:
    """
    Smallest exponent >= 1 among minimal-order generators, ties to the lowest index.

    Exponents below 1 only come from the fractional power of M in the
    companion ideal; they are used when nothing else is available.
    """
    c = K.order()
    candidates = [(e, v) for g in K.generators if g.total == c for v, e in g]
    whole = [pair for pair in candidates if pair[0] >= 1]
    return min(whole or candidates)[1]


def _junior(K: MonomialSum) -> Optional[Tuple[MonomialSum, Fraction, int]]:
    if K.is_trivial or _is_bold_regular(K):
        return None
    c = K.order()
    z = maximal_contact(K)
    pieces = []
    for g in K.generators:
        e = g.get(z)
        if e < c:
            pieces.append(g.drop([z]).scale(c / (c - e)))
    return MonomialSum(tuple(pieces)), c, z


def junior(K: Union[ExponentVector, MonomialSum]) -> Optional[Tuple[MonomialSum, Fraction]]:
    """
    Junior ideal of K on the hypersurface of maximal contact.

    The maximal-contact variable is dropped and each generator raised so
    that ord(J) = ord(K) = c_i.

    Returns:
        (J_{i-1}, c_i), or None when K is trivial or bold regular
    """
    K = K if isinstance(K, MonomialSum) else MonomialSum.of(K)
    found = _junior(K)
    if found is None:
        return None
    return found[0], found[1]


# ============================================================================
# Descent
# ============================================================================


class LedgerView(Protocol):
    """Where the descent reads E_i and D_i from."""

    def all_exceptional(self) -> FrozenSet[int]:
        ...

    def divisor(self, dim: int, prefix: Tuple[InvariantEntry, ...]) -> ExponentVector:
        ...

    def exceptional(
        self, dim: int, prefix: Tuple[InvariantEntry, ...], theta: Optional[Fraction]
    ) -> FrozenSet[int]:
        ...


class StaticLedger:
    """A settled ledger: answers ignore the prefix."""

    def __init__(self, ledger: DivisorLedger):
        self.ledger = ledger

    def all_exceptional(self) -> FrozenSet[int]:
        return self.ledger.all_exceptional()

    def divisor(self, dim, prefix):
        return self.ledger.divisor(dim)

    def exceptional(self, dim, prefix, theta):
        return self.ledger.exceptional(dim)


@dataclass(frozen=True)
class LevelState:
    dim: int
    J: MonomialSum
    M: ExponentVector
    I: MonomialSum
    theta: Fraction
    critical: Fraction
    P: Optional[MonomialSum] = None
    K: Optional[MonomialSum] = None
    contact: Optional[int] = None


@dataclass(frozen=True)
class Descent:
    value: InvariantValue
    levels: Tuple[LevelState, ...]

    def level(self, dim: int) -> Optional[LevelState]:
        for level in self.levels:
            if level.dim == dim:
                return level
        return None

    def theta(self, dim: int) -> Optional[Fraction]:
        level = self.level(dim)
        return level.theta if level else None

    def critical(self, dim: int) -> Optional[Fraction]:
        level = self.level(dim)
        return level.critical if level else None


def descend(state: ChartState, point: Iterable[int], view: Optional[LedgerView] = None) -> Descent:
    """
    Run the descent i = n, ..., 1 at the generic point of ``point``.

    Variables off the stratum are units and are ignored throughout.
    """
    view = view or StaticLedger(state.ledger)
    S = frozenset(point)
    n = state.num_vars
    exceptional_all = view.all_exceptional()
    entries: List[InvariantEntry] = []
    levels: List[LevelState] = []
    working = set(S)
    c_next = Fraction(state.critical)
    J = MonomialSum.of(state.exponents.restrict(S))

    for dim in range(n, 0, -1):
        prefix = tuple(entries)
        if dim == n:
            top = J.generators[0] if J.generators else ExponentVector()
            M = top.restrict(exceptional_all)
            I = MonomialSum.of(top.drop(exceptional_all))
        else:
            M = view.divisor(dim, prefix).restrict(working)
            I = MonomialSum(tuple(g.minus_clamped(M) for g in J.generators))
        theta = I.order()
        E = view.exceptional(dim, prefix, theta) & S

        if theta == 0:
            if not M.is_trivial and M.total >= c_next:
                entries.append(InvariantEntry.of_gamma(gamma(M, c_next, n)[0]))
            else:
                entries.append(InvariantEntry.infinity())
            levels.append(LevelState(dim, J, M, I, theta, c_next))
            break

        entries.append(InvariantEntry.finite(theta / c_next, len(E)))
        P = companion(I, M, c_next)
        K = compose(P, I, E & working)
        found = _junior(K)
        levels.append(
            LevelState(dim, J, M, I, theta, c_next, P, K, found[2] if found else None)
        )
        if found is None:
            break
        J, c_next, z = found
        working.discard(z)
        if J.is_trivial:
            break

    entries.extend(InvariantEntry.infinity() for _ in range(n - len(entries)))
    return Descent(InvariantValue(tuple(entries)), tuple(levels))


def invariant_at(state: ChartState, point: Iterable[int]) -> InvariantValue:
    """
    Resolution function t at the generic point of a singular stratum.

    Raises:
        NotSingularError: If the stratum is not inside Sing(J, c)
    """
    point = frozenset(point)
    if order_at(state, point) < state.critical:
        raise NotSingularError(
            f"Stratum {sorted(point)} has order {order_at(state, point)} < c={state.critical}"
        )
    return descend(state, point).value


def max_locus(state: ChartState) -> Tuple[InvariantValue, Stratum]:
    """
    Maximum of t over Sing(J, c) and the stratum where it is attained.

    Ties go to the fewest variables, then to the lexicographically largest
    decreasing index tuple.

    Raises:
        NoCenterError: If Sing(J, c) is empty
    """
    strata = singular_strata(state)
    if not strata:
        raise NoCenterError(f"Sing is empty for {state.describe()}")
    best = max(
        ((descend(state, s).value, s) for s in strata),
        key=lambda pair: (pair[0].sort_key(), -len(pair[1]), decreasing(pair[1])),
    )
    return best

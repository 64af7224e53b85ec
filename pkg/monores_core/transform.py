"""
Monoidal Transformations
Chart-wise blowup of a monomial basic object at a combinatorial center,
with the controlled transform and the E_i / D_i ledger rules
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import IllegalCenterError, InternalInvariantError
from .invariant import (
    Descent,
    InvariantEntry,
    InvariantValue,
    descend,
    gamma,
)
from .monomial import (
    ChartState,
    DivisorLedger,
    ExponentVector,
    Stratum,
    fraction_to_json,
    order_at,
    split_MI,
    stratum,
)


@dataclass(frozen=True)
class BlowupEdge:
    """
    Center, chart variable and θ = ord of J along the center.

    ``child_t`` is the chart maximum of t in the parent's coordinates,
    None when the chart has no singular points. ``renamed`` lists the
    (old, new) index pairs the explorer moved when relabeling the chart.
    """

    center: Stratum
    chart_var: int
    theta: Fraction
    child_t: Optional[InvariantValue] = field(default=None, compare=False)
    renamed: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def label(self) -> str:
        return f"chart X{self.chart_var}"

    def to_json(self) -> dict:
        return {
            "center": sorted(self.center),
            "chart": self.chart_var,
            "theta": fraction_to_json(self.theta),
        }


class LedgerRules:
    """
    Ledger of a child chart, decided level by level while its descent runs.

    D_i' and E_i' depend on whether the child's prefix (t_n', ..., t_{i+1}')
    equals the parent's, and E_i' also on θ_i' = θ_i.
    """

    def __init__(self, parent: ChartState, parent_descent: Descent, center: Stratum, chart_var: int):
        self.parent = parent
        self.parent_descent = parent_descent
        self.parent_t = parent_descent.value
        self.center = center
        self.y = chart_var
        self.pool = (parent.ledger.all_exceptional() - {chart_var}) | {chart_var}
        self.divisors: Dict[int, ExponentVector] = {}
        self.assigned: Dict[int, FrozenSet[int]] = {}

    def _same_prefix(self, dim: int, prefix: Tuple[InvariantEntry, ...]) -> bool:
        n = self.parent.num_vars
        if len(prefix) != n - dim:
            raise InternalInvariantError(
                f"Prefix of length {len(prefix)} offered for level {dim} of {n}"
            )
        return prefix == self.parent_t.entries[: n - dim]

    def _pullback(self, dim: int, extra: Fraction) -> ExponentVector:
        D = self.parent.ledger.divisor(dim)
        coefficient = max(Fraction(0), D.order_on(self.center) + extra)
        return D.drop([self.y]).with_entry(self.y, coefficient)

    def all_exceptional(self) -> FrozenSet[int]:
        return self.pool

    def divisor(self, dim: int, prefix: Tuple[InvariantEntry, ...]) -> ExponentVector:
        if dim not in self.divisors:
            theta = self.parent_descent.theta(dim)
            if self._same_prefix(dim, prefix) and theta is not None:
                critical = self.parent_descent.critical(dim)
                self.divisors[dim] = self._pullback(dim, theta - critical)
            else:
                self.divisors[dim] = ExponentVector()
        return self.divisors[dim]

    def exceptional(
        self, dim: int, prefix: Tuple[InvariantEntry, ...], theta: Optional[Fraction]
    ) -> FrozenSet[int]:
        if dim not in self.assigned:
            free = self.pool - frozenset().union(*self.assigned.values())
            kept = self._same_prefix(dim, prefix) and theta == self.parent_descent.theta(dim)
            if kept:
                self.assigned[dim] = (self.parent.ledger.exceptional(dim) - {self.y}) & free
            else:
                self.assigned[dim] = free
        return self.assigned[dim]

    def finish(self, child_t: InvariantValue) -> DivisorLedger:
        n = self.parent.num_vars
        for dim in range(n, 0, -1):
            prefix = child_t.entries[: n - dim]
            if dim < n:
                self.divisor(dim, prefix)
            self.exceptional(dim, prefix, None)

        leftover = self.pool - frozenset().union(*self.assigned.values())
        if leftover:
            self.assigned[1] = self.assigned[1] | leftover

        top = self.parent_descent.theta(n)
        self.divisors[n] = self._pullback(n, top - self.parent.critical)
        return DivisorLedger(
            tuple((self.assigned[dim], self.divisors[dim]) for dim in range(1, n + 1))
        )


def _check_center(state: ChartState, center: Iterable[int]) -> Tuple[Stratum, Fraction]:
    center = stratum(center)
    if not center:
        raise IllegalCenterError("A blowup center needs at least one variable")
    theta = order_at(state, center)
    if theta < state.critical:
        raise IllegalCenterError(
            f"Center {sorted(center)} has order {theta} < c={state.critical}; not in Sing"
        )
    return center, theta


def _chart(
    state: ChartState, center: Stratum, theta: Fraction, chart_var: int, parent_descent: Descent
) -> Tuple[BlowupEdge, ChartState, InvariantValue]:
    exponents = state.exponents.with_entry(chart_var, theta - state.critical)
    rules = LedgerRules(state, parent_descent, center, chart_var)
    shell = replace(state, exponents=exponents)
    child_t = descend(shell, shell.origin, rules).value
    ledger = rules.finish(child_t)
    child = ChartState(
        num_vars=state.num_vars,
        critical=state.critical,
        exponents=exponents,
        ledger=ledger,
        prev_invariant=parent_descent.value,
        depth=state.depth + 1,
    )

    side = state.exponents.order_on(center - {chart_var})
    if child.total_degree != state.total_degree + side - state.critical:
        raise InternalInvariantError(f"Controlled transform lost track of degree in {child.describe()}")
    M_parent, _ = split_MI(state)
    if state.ledger.divisor(state.num_vars) == M_parent:
        if ledger.divisor(state.num_vars) != split_MI(child)[0]:
            raise InternalInvariantError(f"D_n no longer matches M in {child.describe()}")
    return BlowupEdge(center, chart_var, theta), child, child_t


def blowup(state: ChartState, center: Iterable[int]) -> List[Tuple[BlowupEdge, ChartState]]:
    """
    Blow up ``state`` along a coordinate center.

    Args:
        state: Parent chart
        center: Variables vanishing on the center

    Returns:
        One (edge, child) per variable of the center, in index order

    Raises:
        IllegalCenterError: If the center is empty or not singular
    """
    center, theta = _check_center(state, center)
    if state.is_exceptional_monomial:
        M, _ = split_MI(state)
        _, gamma_center = gamma(M, state.critical, state.num_vars)
        if center == gamma_center:
            new = theta - state.critical
            if not new < min(M.get(v) for v in center):
                raise InternalInvariantError(
                    f"Order did not drop: {new} >= min exponent on {sorted(center)}"
                )
    parent_descent = descend(state, center)
    children = []
    for j in sorted(center):
        edge, child, _ = _chart(state, center, theta, j, parent_descent)
        children.append((edge, child))
    return children


def update_ledger(
    parent: ChartState,
    edge: BlowupEdge,
    child_t: Optional[InvariantValue] = None,
    parent_t: Optional[InvariantValue] = None,
) -> DivisorLedger:
    """
    Ledger of the chart ``edge`` leads to.

    The child prefix is computed with the rules themselves, so ``child_t``
    and ``parent_t`` are optional; when given they must agree with it.

    Raises:
        InternalInvariantError: On prefix length or value disagreement
    """
    n = parent.num_vars
    for name, given in (("child", child_t), ("parent", parent_t)):
        if given is not None and len(given) != n:
            raise InternalInvariantError(f"{name} invariant has {len(given)} entries, expected {n}")
    center, theta = _check_center(parent, edge.center)
    if edge.chart_var not in center:
        raise IllegalCenterError(f"Chart X{edge.chart_var} is not a variable of the center")
    parent_descent = descend(parent, center)
    _, child, computed = _chart(parent, center, theta, edge.chart_var, parent_descent)
    if parent_t is not None and parent_t != parent_descent.value:
        raise InternalInvariantError(
            f"Parent invariant {parent_t.bracket()} differs from {parent_descent.value.bracket()}"
        )
    if child_t is not None and child_t != computed:
        raise InternalInvariantError(
            f"Child invariant {child_t.bracket()} differs from {computed.bracket()}"
        )
    return child.ledger

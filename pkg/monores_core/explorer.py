"""
Resolution Tree Explorer
Exhaustive (memoized) chart-tree search, greedy largest branch,
principalization chains and the toric reduction
"""

from __future__ import annotations

import math
import sys
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from . import config
from .combinatorics import bound_exceptional, exceptional_order_bound, global_bound
from .errors import (
    IndeterminateResultError,
    MalformedInputError,
    SmoothInputError,
    UnsupportedStrategyError,
)
from .invariant import GAMMA, InvariantValue, max_locus
from .monomial import (
    ChartState,
    DivisorLedger,
    ExponentVector,
    Stratum,
    build_state,
    singular_locus,
    split_MI,
)
from .transform import BlowupEdge, blowup

NodeKey = Hashable


# ============================================================================
# Canonical form
# ============================================================================


def _role(state: ChartState, var: int) -> tuple:
    ledger = state.ledger
    return (
        state.exponents.get(var),
        ledger.level_of(var),
        tuple(ledger.divisor(dim).get(var) for dim in range(1, state.num_vars + 1)),
    )


def canonicalize(state: ChartState) -> Tuple[ChartState, Dict[int, int]]:
    """
    Relabel variables in ascending (exponent, level, D-exponents) order.

    Returns:
        (relabeled state, old index -> new index)
    """
    order = sorted(state.variables, key=lambda v: (_role(state, v), v))
    mapping = {old: new for new, old in enumerate(order, start=1)}
    relabeled = replace(
        state,
        exponents=state.exponents.relabel(mapping),
        ledger=state.ledger.relabel(mapping),
    )
    return relabeled, mapping


def signature(state: ChartState) -> tuple:
    """Memo signature: critical value plus the sorted role of every variable."""
    return (
        state.num_vars,
        state.critical,
        tuple(sorted(_role(state, v) for v in state.variables)),
    )


# ============================================================================
# Tree model
# ============================================================================


@dataclass
class NodeRecord:
    """One explored chart with the statistics of everything below it."""

    key: NodeKey
    state: ChartState
    max_t: Optional[InvariantValue] = None
    center: Optional[Stratum] = None
    children: List[Tuple[BlowupEdge, NodeKey]] = field(default_factory=list)
    cut: bool = False
    height: int = 0
    branches: Counter = field(default_factory=Counter)
    size: int = 1
    mono: int = 0
    mono_branches: Counter = field(default_factory=Counter)
    truncated: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_monomialized(self) -> bool:
        """Sing is empty or some level of the maximal stratum is in the monomial case."""
        if self.max_t is None:
            return not self.cut
        return any(entry.kind == GAMMA for entry in self.max_t.entries)


@dataclass(frozen=True)
class TreeStats:
    max_depth: int
    node_count: int
    distinct_nodes: int
    monomialization_depth: int
    truncated: bool

    def to_json(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "monomialization_depth": self.monomialization_depth,
            "nodes": str(self.node_count),
            "distinct_nodes": self.distinct_nodes,
            "truncated": self.truncated,
        }


@dataclass
class ResolutionTree:
    """
    Rooted chart tree, stored as a table of node records.

    With memoization the table is a DAG keyed by signature; ``node_count``
    still counts the fully expanded tree.
    """

    root: ChartState
    root_key: NodeKey
    records: Dict[NodeKey, NodeRecord]
    depth_guard: int
    memoized: bool = True

    @property
    def root_record(self) -> NodeRecord:
        return self.records[self.root_key]

    @property
    def stats(self) -> TreeStats:
        top = self.root_record
        return TreeStats(
            max_depth=top.height,
            node_count=top.size,
            distinct_nodes=len(self.walk()[0]),
            monomialization_depth=top.mono,
            truncated=top.truncated,
        )

    @property
    def truncated(self) -> bool:
        return self.root_record.truncated

    def branch_lengths(self) -> Counter:
        """Multiset of root-to-leaf lengths."""
        return Counter(self.root_record.branches)

    def monomialization_depths(self) -> Counter:
        """Multiset over branches of the blowups spent before the branch is monomialized."""
        return Counter(self.root_record.mono_branches)

    def _topological(self) -> List[NodeKey]:
        order: List[NodeKey] = []
        seen = {self.root_key}
        stack = [(self.root_key, iter(self.records[self.root_key].children))]
        while stack:
            key, kids = stack[-1]
            for _, child in kids:
                if child not in seen:
                    seen.add(child)
                    stack.append((child, iter(self.records[child].children)))
                    break
            else:
                stack.pop()
                order.append(key)
        order.reverse()
        return order

    def leaf_counts(self) -> List[Tuple[NodeRecord, int]]:
        """Distinct leaves with the number of root-to-leaf paths reaching each."""
        paths: Counter = Counter({self.root_key: 1})
        found = []
        for key in self._topological():
            record = self.records[key]
            if record.is_leaf:
                found.append((record, paths[key]))
            for _, child in record.children:
                paths[child] += paths[key]
        return found

    def leaves(self) -> List[NodeRecord]:
        """Leaves of the fully expanded tree, shared records repeated."""
        return [record for record, count in self.leaf_counts() for _ in range(count)]

    def walk(self) -> Tuple[List[Tuple[int, int, NodeRecord]], List[Tuple[int, int, BlowupEdge]]]:
        """
        Breadth-first numbering of the distinct nodes.

        Returns:
            ([(id, depth, record)], [(from_id, to_id, edge)])
        """
        ids = {self.root_key: 0}
        nodes = [(0, 0, self.root_record)]
        edges = []
        queue = deque([(self.root_key, 0)])
        while queue:
            key, depth = queue.popleft()
            for edge, child in self.records[key].children:
                if child not in ids:
                    ids[child] = len(ids)
                    nodes.append((ids[child], depth + 1, self.records[child]))
                    queue.append((child, depth + 1))
                edges.append((ids[key], ids[child], edge))
        return nodes, edges

    def shape(self) -> List[Tuple[int, Optional[Tuple[int, ...]], Tuple[Tuple[int, int], ...]]]:
        """Per node in BFS order: depth, center and (chart, child id) pairs."""
        nodes, edges = self.walk()
        outgoing: Dict[int, List[Tuple[int, int]]] = {}
        for src, dst, edge in edges:
            outgoing.setdefault(src, []).append((edge.chart_var, dst))
        return [
            (
                depth,
                tuple(sorted(record.center)) if record.center is not None else None,
                tuple(outgoing.get(node_id, [])),
            )
            for node_id, depth, record in nodes
        ]


# ============================================================================
# Exploration
# ============================================================================


@lru_cache(maxsize=config.EXPANSION_CACHE)
def expand_chart(state: ChartState) -> Tuple[InvariantValue, Stratum, Tuple[Tuple[BlowupEdge, ChartState], ...]]:
    """
    Maximum of t, the center and the relabeled charts of one blowup.

    Each edge carries the chart's own maximum of t, taken before
    relabeling so it compares with the parent's.
    """
    max_t, center = max_locus(state)
    kids = []
    for edge, child in blowup(state, center):
        child = child.stripped()
        child_t = max_locus(child)[0] if singular_locus(child) else None
        relabeled, mapping = canonicalize(child)
        renamed = tuple((old, new) for old, new in sorted(mapping.items()) if old != new)
        kids.append((replace(edge, child_t=child_t, renamed=renamed), relabeled))
    return max_t, center, tuple(kids)


@dataclass
class _Frame:
    state: ChartState
    budget: int
    path: Tuple[int, ...]
    edge: Optional[BlowupEdge] = None
    sig: Optional[tuple] = None
    pending: Optional[List[Tuple[BlowupEdge, ChartState]]] = None
    done: List[Tuple[BlowupEdge, NodeKey]] = field(default_factory=list)
    max_t: Optional[InvariantValue] = None
    center: Optional[Stratum] = None


class Explorer:
    """Depth-first builder of node records, with an explicit stack."""

    def __init__(self, memoize: bool = True):
        self.memoize = memoize
        self.records: Dict[NodeKey, NodeRecord] = {}

    def _lookup(self, sig: tuple, budget: int) -> Optional[NodeKey]:
        full = self.records.get(("sig", sig, None))
        if full is not None and full.height <= budget:
            return full.key
        if ("sig", sig, budget) in self.records:
            return ("sig", sig, budget)
        return None

    def _key(self, frame: _Frame, truncated: bool) -> NodeKey:
        if not self.memoize:
            return ("path", frame.path)
        return ("sig", frame.sig, frame.budget if truncated else None)

    def _store(self, frame: _Frame, record: NodeRecord) -> NodeKey:
        record.key = self._key(frame, record.truncated)
        self.records[record.key] = record
        return record.key

    def _leaf(self, frame: _Frame, cut: bool) -> NodeKey:
        record = NodeRecord(
            key=None,
            state=frame.state.stripped(),
            cut=cut,
            branches=Counter({0: 1}),
            mono_branches=Counter({0: 1}),
            truncated=cut,
        )
        return self._store(frame, record)

    def _internal(self, frame: _Frame) -> NodeKey:
        kids = [self.records[key] for _, key in frame.done]
        branches: Counter = Counter()
        for kid in kids:
            for length, count in kid.branches.items():
                branches[length + 1] += count
        record = NodeRecord(
            key=None,
            state=frame.state.stripped(),
            max_t=frame.max_t,
            center=frame.center,
            children=list(frame.done),
            height=1 + max(kid.height for kid in kids),
            branches=branches,
            size=1 + sum(kid.size for kid in kids),
            truncated=any(kid.truncated for kid in kids),
        )
        if record.is_monomialized:
            record.mono_branches = Counter({0: sum(branches.values())})
        else:
            for kid in kids:
                for depth, count in kid.mono_branches.items():
                    record.mono_branches[depth + 1] += count
        record.mono = max(record.mono_branches)
        return self._store(frame, record)

    def expand(self, state: ChartState, budget: int, path: Tuple[int, ...] = ()) -> NodeKey:
        """Explore below ``state`` for at most ``budget`` further blowups."""
        stack = [_Frame(state, budget, path)]
        result: Optional[NodeKey] = None

        while stack:
            frame = stack[-1]
            key = None
            if frame.pending is None:
                frame.sig = signature(frame.state)
                if self.memoize:
                    key = self._lookup(frame.sig, frame.budget)
                if key is None and not singular_locus(frame.state):
                    key = self._leaf(frame, cut=False)
                elif key is None and frame.budget <= 0:
                    key = self._leaf(frame, cut=True)
                elif key is None:
                    frame.max_t, frame.center, kids = expand_chart(frame.state)
                    frame.pending = list(reversed(kids))
            if key is None and frame.pending:
                edge, child = frame.pending.pop()
                stack.append(_Frame(child, frame.budget - 1, frame.path + (edge.chart_var,), edge))
                continue
            if key is None:
                key = self._internal(frame)

            stack.pop()
            if stack:
                stack[-1].done.append((frame.edge, key))
            else:
                result = key
        return result


def _explore_subtree(
    state: ChartState, budget: int, path: Tuple[int, ...], memoize: bool
) -> Tuple[Dict[NodeKey, NodeRecord], NodeKey]:
    explorer = Explorer(memoize)
    key = explorer.expand(state, budget, path)
    return explorer.records, key


def default_depth_guard(state: ChartState) -> int:
    """
    Depth guard for ``state`` when none is given.

    Exceptional monomials use their exceptional bound and roots with
    E = ∅ and every a_i >= c the global bound. Everything else gets the
    configured hard limit. Bounds are capped by the hard limit.
    """
    d = math.ceil(state.total_degree)
    if d < state.critical:
        return 1
    if state.is_exceptional_monomial and state.exponents.is_integral:
        bound = bound_exceptional([int(e) for _, e in state.exponents], state.critical)
    elif _is_minimal_codimensional(state):
        bound = global_bound(state.num_vars, d, state.critical)
    else:
        bound = config.HARD_DEPTH_LIMIT
    return max(1, min(bound, config.HARD_DEPTH_LIMIT))


def explore(
    root: ChartState,
    depth_guard: Optional[int] = None,
    memoize: Optional[bool] = None,
    jobs: Optional[int] = None,
) -> ResolutionTree:
    """
    Build the full resolution tree of ``root``.

    Args:
        root: Root chart, canonicalized before exploring
        depth_guard: Maximum branch length; defaults to ``default_depth_guard``
        memoize: Share subtrees between charts with equal signatures
        jobs: Worker processes for the root's children

    Returns:
        ResolutionTree, flagged truncated if the guard was hit
    """
    depth_guard = default_depth_guard(root) if depth_guard is None else depth_guard
    if depth_guard < 1:
        raise MalformedInputError(f"Depth guard must be >= 1, got {depth_guard}")
    memoize = config.MEMOIZE if memoize is None else memoize
    jobs = config.JOBS if jobs is None else jobs
    root, _ = canonicalize(root.stripped())

    explorer = Explorer(memoize)
    if jobs > 1 and singular_locus(root):
        frame = _Frame(root, depth_guard, ())
        frame.sig = signature(root)
        frame.max_t, frame.center, kids = expand_chart(root)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_explore_subtree, child, depth_guard - 1, (edge.chart_var,), memoize)
                for edge, child in kids
            ]
            for (edge, _), future in zip(kids, futures):
                records, key = future.result()
                explorer.records.update(records)
                frame.done.append((edge, key))
        root_key = explorer._internal(frame)
    else:
        root_key = explorer.expand(root, depth_guard)

    tree = ResolutionTree(root, root_key, explorer.records, depth_guard, memoize)
    if tree.truncated:
        print(f"⚠️  Depth guard {depth_guard} reached; tree is truncated", file=sys.stderr)
    return tree


def monomialization_depth(tree: ResolutionTree) -> int:
    """
    Longest branch prefix before the branch is monomialized.

    A branch is monomialized at its first chart where Sing is empty or the
    maximal stratum reaches the monomial case (J_i = M_i) at some level.

    Raises:
        IndeterminateResultError: If the tree is truncated
    """
    if tree.truncated:
        raise IndeterminateResultError(
            f"Tree was cut at depth {tree.depth_guard}; monomialization depth is unknown"
        )
    return tree.root_record.mono


# ============================================================================
# Property checks over explored trees
# ============================================================================


def monotonicity_violations(tree: ResolutionTree) -> List[Tuple[int, int]]:
    """
    Edges (from_id, to_id) along which max t failed to drop strictly.

    The chart side is the maximum recorded on the edge, in the parent's
    coordinates.
    """
    nodes, edges = tree.walk()
    by_id = {node_id: record for node_id, _, record in nodes}
    bad = []
    for src, dst, edge in edges:
        before, after = by_id[src].max_t, edge.child_t
        if after is not None and not after < before:
            bad.append((src, dst))
    return bad


def order_growth_violations(tree: ResolutionTree) -> List[int]:
    """
    Nodes whose exceptional part exceeds (2^N - 1)(d - c) at depth N.

    Meaningful for roots without exceptional divisors.
    """
    d, c = math.ceil(tree.root.total_degree), tree.root.critical
    if d < c:
        return []
    bad = []
    for node_id, depth, record in tree.walk()[0]:
        M, _ = split_MI(record.state)
        if M.total > exceptional_order_bound(depth, d, c):
            bad.append(node_id)
    return bad


# ============================================================================
# Strategies
# ============================================================================


def _is_minimal_codimensional(state: ChartState) -> bool:
    return (
        not state.ledger.all_exceptional()
        and state.exponents.support == frozenset(state.variables)
        and all(e >= state.critical for _, e in state.exponents)
    )


def _branch_rank(option: Tuple[BlowupEdge, ChartState]) -> tuple:
    edge, child = option
    if not singular_locus(child):
        return (0, (), edge.chart_var)
    return (1, max_locus(child)[0].sort_key(), edge.chart_var)


def largest_branch(root: ChartState) -> List[Tuple[BlowupEdge, ChartState]]:
    """
    Greedy branch to the first exceptional monomial.

    At every step the chart with the largest max t is followed, ties to
    the highest chart variable.

    Raises:
        UnsupportedStrategyError: Unless E = ∅ and every a_i >= c
    """
    if not _is_minimal_codimensional(root):
        raise UnsupportedStrategyError(
            f"largest branch needs E = ∅ and all exponents >= c, got {root.describe()}"
        )
    branch: List[Tuple[BlowupEdge, ChartState]] = []
    state = root
    while singular_locus(state) and not state.is_exceptional_monomial:
        if len(branch) >= config.HARD_DEPTH_LIMIT:
            print(f"⚠️  Largest branch stopped at the hard limit {config.HARD_DEPTH_LIMIT}", file=sys.stderr)
            break
        _, center = max_locus(state)
        chosen = max(blowup(state, center), key=_branch_rank)
        branch.append(chosen)
        state = chosen[1]
    return branch


def _restart(state: ChartState) -> ChartState:
    """Leaf of one round as the root of the next: c = degree, all of E in E_n."""
    n = state.num_vars
    exc = state.ledger.all_exceptional()
    levels = [(frozenset(), ExponentVector()) for _ in range(n)]
    levels[n - 1] = (exc, state.exponents.restrict(exc))
    return ChartState(
        num_vars=n,
        critical=int(state.total_degree),
        exponents=state.exponents,
        ledger=DivisorLedger(tuple(levels)),
    )


def principalize(
    root: ChartState,
    depth_guard: Optional[int] = None,
    memoize: Optional[bool] = None,
    jobs: Optional[int] = None,
) -> List[ResolutionTree]:
    """
    Chain resolutions with c = max order until every leaf has degree 0.

    Returns:
        Trees in the order they were built; equal leaves are explored once
    """
    if root.ledger.all_exceptional():
        raise UnsupportedStrategyError("principalization starts from E = ∅")
    if not root.exponents.is_integral:
        raise MalformedInputError("principalization needs integral exponents")
    if root.total_degree == 0:
        return []

    trees: List[ResolutionTree] = []
    seen = set()
    pending = [replace(root.stripped(), critical=int(root.total_degree))]
    while pending:
        upcoming = []
        for state in pending:
            sig = signature(state)
            if sig in seen:
                continue
            seen.add(sig)
            tree = explore(state, depth_guard, memoize, jobs)
            trees.append(tree)
            for leaf, _ in tree.leaf_counts():
                if leaf.cut or leaf.state.total_degree == 0:
                    continue
                upcoming.append(_restart(leaf.state))
        pending = upcoming
    return trees


def toric_reduce(c: int, a: Sequence[int]) -> ChartState:
    """
    Monomial basic object (A^n, (x^a, c), ∅) standing for Z^c - x^a.

    Raises:
        SmoothInputError: If c < 2
    """
    if isinstance(a, ExponentVector):
        a = [a.get(v) for v in range(1, max(a.support, default=0) + 1)]
    if any(int(v) != v for v in a):
        raise MalformedInputError(f"Toric exponents must be integers, got {list(a)}")
    if c < 2:
        raise SmoothInputError(f"Z^{c} - x^a is smooth; nothing to resolve")
    return build_state([int(v) for v in a], c)

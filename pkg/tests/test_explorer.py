"""Tests for explorer.py"""

import pytest

from monores_core import config
from monores_core.combinatorics import bound_exceptional, catalan_partial_sum
from monores_core.errors import (
    IndeterminateResultError,
    MalformedInputError,
    SmoothInputError,
    UnsupportedStrategyError,
)
from monores_core.explorer import (
    canonicalize,
    default_depth_guard,
    expand_chart,
    explore,
    largest_branch,
    monomialization_depth,
    monotonicity_violations,
    order_growth_violations,
    principalize,
    signature,
    toric_reduce,
)
from monores_core.export import tree_to_json
from monores_core.monomial import ExponentVector, build_state


def exceptional_root(a, c):
    return build_state(a, c, exceptional=range(1, len(a) + 1))


def test_explore_exceptional_monomial_examples():
    """Exceptional roots are resolved within the exceptional bound."""
    tree = explore(exceptional_root([1, 1], 2))
    assert tree.stats.max_depth == 1
    assert len(tree.leaves()) == 2
    assert tree.branch_lengths() == {1: 2}

    assert explore(exceptional_root([2, 2], 2)).stats.max_depth == 2

    for c, depth in [(3, 2), (4, 3), (2, 3)]:
        tree = explore(exceptional_root([1, 2, 3], c))
        assert tree.stats.max_depth == depth
        assert depth <= bound_exceptional([1, 2, 3], c)
        assert monomialization_depth(tree) == 0


def test_explore_sing_empty_root():
    """A root without singular points is a single leaf."""
    tree = explore(build_state([1, 1], 3))
    assert tree.stats.max_depth == 0
    assert tree.stats.node_count == 1
    assert not tree.truncated


def test_explore_minimal_codimensional_roots():
    """Monomialization of a^i >= c roots takes exactly S_n blowups."""
    for a in ([3], [2, 2], [2, 2, 2]):
        tree = explore(build_state(a, 2))
        assert not tree.truncated
        assert monomialization_depth(tree) == catalan_partial_sum(len(a))


def test_explore_properties_hold():
    """max t drops along every edge and M stays under the order bound."""
    for a, c in [([2, 3], 2), ([1, 3], 2), ([2, 2, 2], 2)]:
        tree = explore(build_state(a, c))
        assert monotonicity_violations(tree) == []
        assert order_growth_violations(tree) == []


def test_edges_carry_chart_maximum_before_relabeling():
    """Γ3 of a chart is read in the parent's indices, then the chart is relabeled."""
    parent = exceptional_root([3, 3], 2)
    max_t, center, kids = expand_chart(parent)
    assert max_t.bracket() == "(gamma(1,3/2,(2,0)),inf)"
    assert center == {2}
    ((edge, child),) = kids
    assert edge.child_t.bracket() == "(gamma(1,3/2,(1,0)),inf)"
    assert edge.child_t < max_t
    assert edge.renamed == ((1, 2), (2, 1))
    assert child.exponents == ExponentVector.from_list([1, 3])
    assert monotonicity_violations(explore(parent)) == []


def test_monomialization_stops_at_a_monomial_level():
    """X1·X2^k keeps I = X1 but reaches a monomial level after 3 blowups."""
    tree = explore(build_state([1, 11], 2))
    assert not tree.truncated
    assert monomialization_depth(tree) == 3
    assert tree.stats.max_depth > 3
    assert max(tree.monomialization_depths()) == 3
    assert sum(tree.monomialization_depths().values()) == sum(tree.branch_lengths().values())


def test_leaves_count_shared_records_once_per_branch():
    """Memoized and plain trees report the same leaves."""
    root = build_state([1, 2, 3], 4, exceptional=(1, 2, 3))
    shared, plain = explore(root, memoize=True), explore(root, memoize=False)
    assert len(shared.leaves()) == len(plain.leaves()) == sum(shared.branch_lengths().values())
    assert sum(count for _, count in shared.leaf_counts()) == len(shared.leaves())



def test_truncated_tree_is_indeterminate():
    """Hitting the depth guard makes the depth unknown."""
    tree = explore(build_state([2, 2, 2], 2), depth_guard=1)
    assert tree.truncated
    assert tree.stats.truncated
    with pytest.raises(IndeterminateResultError):
        monomialization_depth(tree)


def test_explore_rejects_bad_guard():
    """The depth guard must allow at least one blowup."""
    with pytest.raises(MalformedInputError):
        explore(build_state([2, 3], 2), depth_guard=0)


def test_default_depth_guard():
    """Global bound for a_i >= c, exceptional bound for monomials, hard limit otherwise."""
    assert default_depth_guard(build_state([2, 3], 2)) == 23
    assert default_depth_guard(build_state([1, 1], 3)) == 1
    assert default_depth_guard(exceptional_root([1, 2, 3], 4)) == bound_exceptional([1, 2, 3], 4)
    assert default_depth_guard(build_state([2, 3], 5)) == config.HARD_DEPTH_LIMIT
    assert default_depth_guard(build_state([1, 9], 9)) == config.HARD_DEPTH_LIMIT


def test_higher_codimensional_roots_are_not_cut():
    """The default guard leaves room for roots with a_i < c."""
    tree = explore(build_state([1, 9], 9))
    assert not tree.truncated
    assert tree.stats.max_depth >= 2



def test_memoized_and_plain_exploration_agree():
    """Sharing subtrees changes nothing observable."""
    for a, c, exc in [([2, 3], 2, ()), ([1, 2, 3], 4, (1, 2, 3)), ([2, 2, 2], 2, ())]:
        root = build_state(a, c, exceptional=exc)
        shared, plain = explore(root, memoize=True), explore(root, memoize=False)
        assert shared.stats.max_depth == plain.stats.max_depth
        assert shared.stats.node_count == plain.stats.node_count
        assert shared.stats.monomialization_depth == plain.stats.monomialization_depth
        assert shared.branch_lengths() == plain.branch_lengths()
        assert plain.stats.distinct_nodes == plain.stats.node_count


def test_parallel_exploration_matches_serial():
    """Worker processes produce the same tree."""
    root = build_state([2, 3], 2)
    assert tree_to_json(explore(root, jobs=2)) == tree_to_json(explore(root, jobs=1))


def test_exploration_is_deterministic():
    """Same input, same serialized tree."""
    root = build_state([5, 4, 1], 4)
    assert tree_to_json(explore(root)) == tree_to_json(explore(root))


def test_signature_ignores_variable_order():
    """Permuted variables share a signature."""
    assert signature(build_state([1, 2, 3], 2)) == signature(build_state([3, 1, 2], 2))
    assert signature(build_state([1, 2], 2)) != signature(build_state([1, 2], 3))


def test_canonicalize_sorts_by_role():
    """Smaller exponents get smaller indices."""
    state, mapping = canonicalize(build_state([3, 1, 2], 2))
    assert state.exponents == ExponentVector.from_list([1, 2, 3])
    assert mapping == {2: 1, 3: 2, 1: 3}


def test_scaled_problems_have_the_same_tree():
    """Resolving k·a with k·c mirrors resolving a with c."""
    for a, c in [([1, 2], 2), ([1, 1, 1], 2), ([1, 2, 3], 4)]:
        base = explore(exceptional_root(a, c))
        for k in (2, 3):
            scaled = explore(exceptional_root([k * v for v in a], k * c), depth_guard=base.depth_guard)
            assert scaled.shape() == base.shape()


def test_largest_branch_lengths():
    """The greedy branch has length S_n."""
    assert len(largest_branch(build_state([3], 2))) == 1
    assert len(largest_branch(build_state([2, 3], 2))) == 3
    assert len(largest_branch(build_state([2, 2], 2))) == 3
    assert len(largest_branch(build_state([2, 2, 2], 2))) == 8


def test_largest_branch_ends_at_exceptional_monomial():
    """The last chart of the branch is an exceptional monomial."""
    branch = largest_branch(build_state([2, 2, 2], 2))
    assert branch[-1][1].is_exceptional_monomial
    assert all(not state.is_exceptional_monomial for _, state in branch[:-1])


def test_largest_branch_needs_minimal_codimensional_root():
    """Exponents below c or exceptional roots are refused."""
    with pytest.raises(UnsupportedStrategyError):
        largest_branch(build_state([1, 3], 2))
    with pytest.raises(UnsupportedStrategyError):
        largest_branch(exceptional_root([2, 2], 2))


def test_principalize_examples():
    """Rounds restart from leaves with c = degree."""
    trees = principalize(build_state([2], 1))
    assert len(trees) == 1
    assert trees[0].root.critical == 2

    trees = principalize(build_state([1, 1], 1))
    assert [tree.root.critical for tree in trees] == [2, 1]

    trees = principalize(build_state([2, 3], 2))
    assert trees[0].root.critical == 5
    assert all(not tree.truncated for tree in trees)


def test_principalize_refuses_exceptional_root():
    """Principalization starts without exceptional divisors."""
    with pytest.raises(UnsupportedStrategyError):
        principalize(exceptional_root([1, 1], 2))


def test_toric_reduce():
    """Z^c - x^a becomes (x^a, c) with no exceptional divisors."""
    assert toric_reduce(2, [2, 3]) == build_state([2, 3], 2)
    with pytest.raises(SmoothInputError):
        toric_reduce(1, [2, 3])
    with pytest.raises(MalformedInputError):
        toric_reduce(2, [1.5, 2])

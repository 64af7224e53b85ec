from monores_core.combinatorics import BoundReport, catalan_partial_sum
from monores_core.explorer import explore, largest_branch, monomialization_depth
from monores_core.monomial import build_state


def test():
    print("🧪 Testing monores End-to-End\n")

    for a, c in [([3], 2), ([2, 3], 2), ([2, 2, 2], 2)]:
        root = build_state(a, c)
        print(f"Resolving {root.describe()}...")
        tree = explore(root)
        stats = tree.stats
        print(f"📊 max depth {stats.max_depth}, {stats.node_count} nodes ({stats.distinct_nodes} distinct)")
        if tree.truncated:
            print("\n❌ ERROR: tree truncated by the depth guard")
            continue
        depth = monomialization_depth(tree)
        expected = catalan_partial_sum(len(a))
        mark = "✅" if depth == expected else "❌"
        print(f"{mark} monomialization depth {depth} (expected {expected})\n")

    branch = largest_branch(build_state([2, 2, 2, 2], 2))
    print(f"📊 largest branch in dimension 4: {len(branch)} blowups")

    report = BoundReport.for_problem([5, 4, 1], 4)
    print("\n✅ BOUNDS COMPLETE")
    print(f"   Exceptional: {report.bound_exceptional}")
    print(f"   Monomialization: {report.monomialization_bound}")
    print(f"   Global: {report.global_bound}")


if __name__ == "__main__":
    test()

"""
Tree Export
Text, JSON and graphviz DOT renderings of resolution trees and branches
"""

import json
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .explorer import ResolutionTree
from .invariant import InvariantValue, max_locus
from .monomial import ChartState, singular_locus
from .transform import BlowupEdge


def dumps(payload: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _center(center) -> str:
    return "{" + ",".join(str(v) for v in sorted(center)) + "}"


def _status(state: ChartState) -> Tuple[Optional[InvariantValue], str]:
    if not singular_locus(state):
        return None, "Sing empty"
    value, _ = max_locus(state)
    if state.is_exceptional_monomial:
        return value, value.bracket() + " exceptional monomial"
    return value, value.bracket()


# ============================================================================
# Trees
# ============================================================================


def tree_to_json(tree: ResolutionTree) -> Dict[str, Any]:
    nodes, edges = tree.walk()
    return {
        "root": tree.root.to_json(),
        "nodes": [
            {
                "id": node_id,
                "depth": depth,
                "state": record.state.to_json() | {"depth": depth},
                "t": record.max_t.to_json() if record.max_t is not None else None,
                "center": sorted(record.center) if record.center is not None else None,
                "leaf": record.is_leaf,
                "truncated": record.cut,
            }
            for node_id, depth, record in nodes
        ],
        "edges": [
            {"from": src, "to": dst, "edge": edge.to_json(), "renamed": [list(pair) for pair in edge.renamed]}
            for src, dst, edge in edges
        ],
        "stats": tree.stats.to_json(),
    }


def tree_to_text(tree: ResolutionTree) -> str:
    stats = tree.stats
    lines = [
        f"root: {tree.root.describe()}",
        f"max depth: {stats.max_depth}",
        f"monomialization depth: {stats.monomialization_depth}"
        + (" (indeterminate, truncated)" if stats.truncated else ""),
        f"nodes: {stats.node_count} ({stats.distinct_nodes} distinct)",
        f"branches: "
        + ", ".join(f"{length}x{count}" for length, count in sorted(tree.branch_lengths().items())),
        f"truncated: {'yes' if stats.truncated else 'no'}",
        "",
    ]
    nodes, edges = tree.walk()
    parents = {dst: (src, edge) for src, dst, edge in reversed(edges)}
    for node_id, depth, record in nodes:
        via = ""
        if node_id in parents:
            src, edge = parents[node_id]
            via = f" <- {src} {edge.label}"
        if record.max_t is not None:
            body = f"t:{record.max_t.bracket()} center:{_center(record.center)}"
        elif record.cut:
            body = "cut by depth guard"
        else:
            body = "Sing empty"
        lines.append(
            f"{'  ' * depth}[{node_id}] depth:{depth} J:{record.state.exponents.monomial()} {body}{via}"
        )
    return "\n".join(lines) + "\n"


def _serialized(value: Optional[InvariantValue]) -> str:
    if value is None:
        return "null"
    return json.dumps(value.to_json(), separators=(",", ":")).replace('"', '\\"')


def _edge_label(edge: BlowupEdge) -> str:
    """Chart label, plus the renaming that maps parent indices onto the chart's."""
    if not edge.renamed:
        return edge.label
    moves = ",".join(f"X{old}->X{new}" for old, new in edge.renamed)
    return f"{edge.label} ({moves})"


def tree_to_dot(tree: ResolutionTree) -> str:
    """Graphviz digraph; render with ``dot -Tpng -O tree.gv``."""
    out: List[str] = []
    write_line = out.append
    nodes, edges = tree.walk()
    write_line("digraph resolution {")
    write_line('\tnode [shape=box, fontname="monospace"];')
    for node_id, depth, record in nodes:
        label = f"depth:{depth} t:{_serialized(record.max_t)} J:{record.state.exponents.monomial()}"
        style = ""
        if record.cut:
            style = ", style=dashed"
        elif record.is_leaf:
            style = ", style=rounded"
        write_line(f'\t"{node_id}" [label="{label}"{style}];')
    for src, dst, edge in edges:
        write_line(f'\t"{src}" -> "{dst}" [label="{_edge_label(edge)}"];')
    write_line("}")
    return "\n".join(out) + "\n"


# ============================================================================
# Branches
# ============================================================================


def branch_to_json(root: ChartState, branch: Sequence[Tuple[BlowupEdge, ChartState]]) -> Dict[str, Any]:
    steps = []
    for edge, state in [(None, root)] + list(branch):
        value, _ = _status(state)
        steps.append(
            {
                "edge": edge.to_json() if edge is not None else None,
                "state": state.to_json(),
                "t": value.to_json() if value is not None else None,
                "exceptional_monomial": state.is_exceptional_monomial,
            }
        )
    return {"root": root.to_json(), "length": len(branch), "steps": steps}


def branch_to_text(root: ChartState, branch: Sequence[Tuple[BlowupEdge, ChartState]]) -> str:
    lines = [f"root: {root.describe()}"]
    for step, (edge, state) in enumerate([(None, root)] + list(branch)):
        _, status = _status(state)
        via = f"center {_center(edge.center)} {edge.label} " if edge is not None else ""
        lines.append(f"{step}: {via}J:{state.exponents.monomial()} {status}")
    lines.append(f"length: {len(branch)}")
    return "\n".join(lines) + "\n"


def branch_to_dot(root: ChartState, branch: Sequence[Tuple[BlowupEdge, ChartState]]) -> str:
    out: List[str] = []
    write_line = out.append
    write_line("digraph branch {")
    write_line('\tnode [shape=box, fontname="monospace"];')
    for step, (_, state) in enumerate([(None, root)] + list(branch)):
        value, _ = _status(state)
        write_line(f'\t"{step}" [label="depth:{step} t:{_serialized(value)} J:{state.exponents.monomial()}"];')
    for step, (edge, _) in enumerate(branch, start=1):
        write_line(f'\t"{step - 1}" -> "{step}" [label="{edge.label}"];')
    write_line("}")
    return "\n".join(out) + "\n"

"""Structural entropy of a graph on a coding tree, plus O(1)/O(children) move deltas.

The entropy of a graph on a rooted hierarchy is

    H = - sum over nonroot tree nodes t of (g_t / vol(V)) * log2(vol_t / vol_parent(t))

where vol_t is the degree mass of the vertex subset under t and g_t counts
edges leaving that subset.  The root contributes nothing; a node whose volume
equals its parent's contributes exactly zero.  The greedy tree builder never
re-evaluates this sum per move: ``merge_delta`` and ``delete_delta`` give the
exact entropy change of the two moves from cached local quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EntropyTerms:
    """Per-tree-node entropy contributions in bits (nonroot nodes only)."""

    contribution: dict[int, float]
    total: float


def _log(x: float, base: float) -> float:
    if base == 2.0:
        return math.log2(x)
    return math.log(x) / math.log(base)


def entropy_terms(graph, tree, log_base: float = 2.0) -> EntropyTerms:
    """Evaluate the full entropy sum over ``tree``; raises on inconsistent input."""
    total_vol = graph.volume
    if total_vol <= 0:
        raise ValueError("graph has no edges; structural entropy is undefined")
    n_leaves = 0
    seen_vertices = set()
    contrib: dict[int, float] = {}
    for node_id in tree.alive_ids():
        node = tree.node(node_id)
        if node.vertex is not None:
            n_leaves += 1
            seen_vertices.add(node.vertex)
        if node.parent is None:
            continue
        if node.vol <= 0:
            raise ValueError(f"tree node {node_id} has volume 0 (isolated node)")
        parent_vol = tree.node(node.parent).vol
        contrib[node_id] = -(node.g / total_vol) * _log(node.vol / parent_vol, log_base)
    if n_leaves != graph.node_count or seen_vertices != set(range(graph.node_count)):
        raise ValueError("tree leaves do not biject to graph nodes")
    return EntropyTerms(contribution=contrib, total=math.fsum(contrib.values()))


def entropy_of_tree(graph, tree, log_base: float = 2.0) -> float:
    """Structural entropy of ``graph`` on ``tree`` in bits (or the given log base)."""
    return entropy_terms(graph, tree, log_base=log_base).total


def star_tree_entropy(graph, log_base: float = 2.0) -> float:
    """Entropy of the flat root-over-all-leaves hierarchy, directly from degrees."""
    total_vol = graph.volume
    if total_vol <= 0:
        raise ValueError("graph has no edges; structural entropy is undefined")
    return math.fsum(
        -(d / total_vol) * _log(d / total_vol, log_base) for d in graph.degree if d > 0
    )


def merge_delta(state, i: int, j: int) -> float:
    """Entropy change (after - before) of merging root children ``i`` and ``j``.

    The new node w sits between the root and the pair, with
    vol_w = vol_i + vol_j and g_w = g_i + g_j - 2 * cut(i, j).  Only three
    terms change: i and j are re-parented under w, and w's own term appears.
    Negative values are entropy reductions.
    """
    if i == j:
        raise ValueError("cannot merge a community with itself")
    if not (state.is_active(i) and state.is_active(j)):
        raise ValueError(f"({i}, {j}) are not both current root children")
    total_vol = state.total_vol
    node_i = state.tree.node(i)
    node_j = state.tree.node(j)
    vol_i, g_i = node_i.vol, node_i.g
    vol_j, g_j = node_j.vol, node_j.g
    cut = state.cut_between(i, j)
    vol_w = vol_i + vol_j
    g_w = g_i + g_j - 2 * cut
    before = -(g_i / total_vol) * math.log2(vol_i / total_vol) - (g_j / total_vol) * math.log2(
        vol_j / total_vol
    )
    after = (
        -(g_w / total_vol) * math.log2(vol_w / total_vol)
        - (g_i / total_vol) * math.log2(vol_i / vol_w)
        - (g_j / total_vol) * math.log2(vol_j / vol_w)
    )
    return after - before


def delete_delta(tree, parent: int, child: int) -> float:
    """Entropy change (after - before) of deleting ``child`` and re-attaching
    its children to ``parent``.

    The child's own term disappears; each grandchild's denominator changes
    from vol_child to vol_parent.  Cached child g sums make this O(1); the
    cache is verified against a full recount in debug checks.
    """
    node = tree.node(child)
    if node.vertex is not None:
        raise ValueError("cannot delete a leaf")
    if node.parent is None:
        raise ValueError("cannot delete the root")
    if node.parent != parent:
        raise ValueError(f"node {parent} is not the parent of {child}")
    total_vol = tree.total_vol
    parent_vol = tree.node(parent).vol
    if node.vol == parent_vol:
        ratio = 0.0
    else:
        ratio = math.log2(parent_vol / node.vol)
    return (ratio / total_vol) * (node.g_child_sum - node.g)

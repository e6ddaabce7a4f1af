"""Graph data model, benchmark text-format IO, and initial node labels/features.

Graphs are undirected, unweighted and simple.  Datasets follow the common
benchmark text layout (NAME_A.txt, NAME_graph_indicator.txt,
NAME_graph_labels.txt, optional NAME_node_labels.txt) with 1-based indices
in the files and 0-based indices in memory.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

MODE_DEGREE = "degree"
MODE_DEGREE_CATEGORY = "degree_category"


@dataclass(frozen=True)
class Graph:
    """One classification sample: an undirected simple graph.

    ``edges`` is normalized to a sorted tuple of (u, v) pairs with u < v.
    ``node_category`` holds per-node categorical labels where the source
    dataset provides them (bioinformatics benchmarks).
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    node_category: tuple[int, ...] | None = None

    def __post_init__(self):
        n = self.node_count
        if n < 1:
            raise ValueError("graph must have at least one node")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references unknown node")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))
        if self.node_category is not None:
            if len(self.node_category) != n:
                raise ValueError("node_category length does not match node count")
            object.__setattr__(self, "node_category", tuple(self.node_category))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degree(self) -> tuple[int, ...]:
        deg = [0] * self.node_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @property
    def volume(self) -> int:
        """Sum of degrees; equals twice the edge count."""
        return 2 * len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def is_connected(self) -> bool:
        if self.node_count == 1:
            return True
        seen = [False] * self.node_count
        stack = [0]
        seen[0] = True
        count = 1
        adj = self.adjacency
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        return count == self.node_count


@dataclass(frozen=True)
class Dataset:
    """A named list of graphs with per-graph class labels in 0..class_count-1."""

    name: str
    graphs: tuple[Graph, ...]
    graph_label: tuple[int, ...]
    class_count: int

    def __post_init__(self):
        if len(self.graphs) != len(self.graph_label):
            raise ValueError("graph/label count mismatch")
        labels = set(self.graph_label)
        if labels and (labels != set(range(self.class_count))):
            raise ValueError("labels must be contiguous integers starting at 0")

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def has_categories(self) -> bool:
        return all(g.node_category is not None for g in self.graphs)


def _read_lines(path: Path) -> list[str]:
    text = path.read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def load_tudataset(path, name: str) -> Dataset:
    """Load a benchmark dataset from its text files under ``path``.

    The adjacency file lists both directions of every undirected edge; each
    edge is stored once.  1-based file indices are remapped to 0-based, and
    graph labels are remapped to 0..C-1 (sorted by original value).
    Disconnected graphs are rejected.
    """
    path = Path(path)
    a_file = path / f"{name}_A.txt"
    ind_file = path / f"{name}_graph_indicator.txt"
    lab_file = path / f"{name}_graph_labels.txt"
    node_lab_file = path / f"{name}_node_labels.txt"
    if not a_file.exists():
        raise FileNotFoundError(f"missing adjacency file: {a_file}")
    if not ind_file.exists():
        raise FileNotFoundError(f"missing graph indicator file: {ind_file}")
    if not lab_file.exists():
        raise FileNotFoundError(f"missing graph labels file: {lab_file}")

    indicator = [int(s) for s in _read_lines(ind_file)]
    total_nodes = len(indicator)
    if total_nodes == 0:
        raise ValueError(f"{name}: empty graph indicator file")
    graph_count = max(indicator)
    present = set(indicator)
    for gid in range(1, graph_count + 1):
        if gid not in present:
            raise ValueError(f"{name}: graph with a node-index gap (graph id {gid} has no nodes)")

    # global node id (0-based) -> (graph index, local node id)
    local_id = [0] * total_nodes
    graph_of = [0] * total_nodes
    sizes = [0] * graph_count
    for t, gid in enumerate(indicator):
        gi = gid - 1
        graph_of[t] = gi
        local_id[t] = sizes[gi]
        sizes[gi] += 1

    edge_sets: list[set[tuple[int, int]]] = [set() for _ in range(graph_count)]
    for ln, line in enumerate(_read_lines(a_file), start=1):
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{name}: malformed adjacency line {ln}: {line!r}")
        i, j = int(parts[0].strip()), int(parts[1].strip())
        if not (1 <= i <= total_nodes and 1 <= j <= total_nodes):
            raise ValueError(f"{name}: edge referencing unknown node on line {ln}: ({i}, {j})")
        if i == j:
            raise ValueError(f"{name}: self-loop on node {i} (line {ln})")
        gi, gj = graph_of[i - 1], graph_of[j - 1]
        if gi != gj:
            raise ValueError(f"{name}: edge referencing unknown node: ({i}, {j}) crosses graphs")
        u, v = local_id[i - 1], local_id[j - 1]
        edge_sets[gi].add((u, v) if u < v else (v, u))

    raw_labels = [int(s) for s in _read_lines(lab_file)]
    if len(raw_labels) != graph_count:
        raise ValueError(f"{name}: expected {graph_count} graph labels, got {len(raw_labels)}")
    classes = sorted(set(raw_labels))
    label_map = {c: i for i, c in enumerate(classes)}
    labels = tuple(label_map[c] for c in raw_labels)

    categories: list[tuple[int, ...]] | None = None
    if node_lab_file.exists():
        raw_cats = [int(s) for s in _read_lines(node_lab_file)]
        if len(raw_cats) != total_nodes:
            raise ValueError(f"{name}: expected {total_nodes} node labels, got {len(raw_cats)}")
        per_graph: list[list[int]] = [[0] * sizes[gi] for gi in range(graph_count)]
        for t, cat in enumerate(raw_cats):
            per_graph[graph_of[t]][local_id[t]] = cat
        categories = [tuple(c) for c in per_graph]

    graphs = []
    for gi in range(graph_count):
        g = Graph(
            node_count=sizes[gi],
            edges=tuple(edge_sets[gi]),
            node_category=categories[gi] if categories is not None else None,
        )
        if not g.is_connected():
            raise ValueError(f"{name}: graph {gi} is disconnected")
        graphs.append(g)

    return Dataset(name=name, graphs=tuple(graphs), graph_label=labels, class_count=len(classes))


def write_tudataset(dataset: Dataset, path) -> None:
    """Write ``dataset`` back to the benchmark text format (both edge directions)."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    name = dataset.name
    offsets = []
    off = 0
    for g in dataset.graphs:
        offsets.append(off)
        off += g.node_count

    a_lines = []
    ind_lines = []
    for gi, g in enumerate(dataset.graphs):
        base = offsets[gi]
        for u in range(g.node_count):
            ind_lines.append(str(gi + 1))
            for v in g.adjacency[u]:
                a_lines.append(f"{base + u + 1}, {base + v + 1}")
    (path / f"{name}_A.txt").write_text("\n".join(a_lines) + "\n")
    (path / f"{name}_graph_indicator.txt").write_text("\n".join(ind_lines) + "\n")
    (path / f"{name}_graph_labels.txt").write_text(
        "\n".join(str(l) for l in dataset.graph_label) + "\n"
    )
    if dataset.has_categories:
        cat_lines = []
        for g in dataset.graphs:
            cat_lines.extend(str(c) for c in g.node_category)
        (path / f"{name}_node_labels.txt").write_text("\n".join(cat_lines) + "\n")


@dataclass(frozen=True)
class FeatureInit:
    """Dataset-global vocabularies fixing the initial label ids and feature layout.

    mode "degree": label = interned degree, feature = degree one-hot.
    mode "degree_category": label = interned (degree, category) pair,
    feature = degree one-hot concatenated with category one-hot.
    """

    mode: str
    degree_vocab: tuple[int, ...]
    category_vocab: tuple[int, ...] = ()
    pair_vocab: tuple[tuple[int, int], ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.degree_vocab) + len(self.category_vocab)

    @property
    def label_count(self) -> int:
        if self.mode == MODE_DEGREE:
            return len(self.degree_vocab)
        return len(self.pair_vocab)

    @cached_property
    def _degree_index(self) -> dict[int, int]:
        return {d: i for i, d in enumerate(self.degree_vocab)}

    @cached_property
    def _category_index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.category_vocab)}

    @cached_property
    def _pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pair_vocab)}


def feature_init(dataset: Dataset, mode: str | None = None) -> FeatureInit:
    """Build the dataset-wide degree/category vocabularies.

    The vocabularies span the full dataset (train and test alike), which is
    the standard convention for kernel pipelines on these benchmarks; runs
    record this in their manifest.
    """
    if mode is None:
        mode = MODE_DEGREE_CATEGORY if dataset.has_categories else MODE_DEGREE
    if mode not in (MODE_DEGREE, MODE_DEGREE_CATEGORY):
        raise ValueError(f"unknown feature mode: {mode!r}")
    degrees = sorted({d for g in dataset.graphs for d in g.degree})
    if mode == MODE_DEGREE:
        return FeatureInit(mode=mode, degree_vocab=tuple(degrees))
    if not dataset.has_categories:
        raise ValueError("degree_category mode requested but node categories are absent")
    cats = sorted({c for g in dataset.graphs for c in g.node_category})
    pairs = sorted(
        {(g.degree[v], g.node_category[v]) for g in dataset.graphs for v in range(g.node_count)}
    )
    return FeatureInit(
        mode=mode,
        degree_vocab=tuple(degrees),
        category_vocab=tuple(cats),
        pair_vocab=tuple(pairs),
    )


def initial_labels(graph: Graph, init: FeatureInit) -> tuple[int, ...]:
    """Per-node label ids: interned degree, or interned (degree, category) pair."""
    if init.mode == MODE_DEGREE:
        idx = init._degree_index
        try:
            return tuple(idx[d] for d in graph.degree)
        except KeyError as e:
            raise ValueError(f"degree {e.args[0]} outside the dataset-wide vocabulary") from None
    if graph.node_category is None:
        raise ValueError("degree_category labels requested but graph has no node categories")
    idx = init._pair_index
    try:
        return tuple(
            idx[(graph.degree[v], graph.node_category[v])] for v in range(graph.node_count)
        )
    except KeyError as e:
        raise ValueError(f"(degree, category) pair {e.args[0]} outside the dataset-wide vocabulary") from None


def initial_features(graph: Graph, init: FeatureInit) -> np.ndarray:
    """Per-node one-hot feature rows (two concatenated one-hots in category mode)."""
    n = graph.node_count
    x = np.zeros((n, init.dimension), dtype=np.float64)
    dix = init._degree_index
    try:
        for v in range(n):
            x[v, dix[graph.degree[v]]] = 1.0
    except KeyError as e:
        raise ValueError(f"degree {e.args[0]} outside the dataset-wide vocabulary") from None
    if init.mode == MODE_DEGREE_CATEGORY:
        if graph.node_category is None:
            raise ValueError("degree_category features requested but graph has no node categories")
        cix = init._category_index
        base = len(init.degree_vocab)
        try:
            for v in range(n):
                x[v, base + cix[graph.node_category[v]]] = 1.0
        except KeyError as e:
            raise ValueError(f"category {e.args[0]} outside the dataset-wide vocabulary") from None
    return x


def random_connected_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform random spanning tree (Pruefer decode) plus random extra edges.

    ``m`` is the target edge count; it is clamped to [n-1, n(n-1)/2].
    """
    rng = np.random.default_rng(seed)
    if n == 1:
        return Graph(node_count=1, edges=())
    edges: set[tuple[int, int]] = set()
    if n == 2:
        edges.add((0, 1))
    else:
        seq = rng.integers(0, n, size=n - 2)
        deg = np.ones(n, dtype=np.int64)
        for s in seq:
            deg[s] += 1
        leaves = [v for v in range(n) if deg[v] == 1]
        heapq.heapify(leaves)
        for s in seq:
            leaf = heapq.heappop(leaves)
            edges.add((leaf, s) if leaf < s else (s, leaf))
            deg[s] -= 1
            if deg[s] == 1:
                heapq.heappush(leaves, int(s))
        u = heapq.heappop(leaves)
        v = heapq.heappop(leaves)
        edges.add((u, v) if u < v else (v, u))
    m = max(n - 1, min(m, n * (n - 1) // 2))
    while len(edges) < m:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        edges.add(e)
    return Graph(node_count=n, edges=tuple(edges))

"""Labelled graphs, trees and partition schemes on the vertex set {0, ..., n-1}.

A graph on [n] is an edge subset of the n(n-1)/2 vertex pairs, encoded as a
bitmask over the pairs in lexicographic order.  Trees are produced through the
Pruefer bijection, which guarantees exactly n^(n-2) of them.  Two maps from
rooted trees to connected graphs are provided -- the depth-rule closure of a
rooted tree and the minimum-spanning-tree closure induced by a total edge
order -- together with a verifier that checks, graph by graph, that the
boolean intervals [tree, closure(tree)] partition the connected graphs.

Vertices are 0-indexed and rooted trees are rooted at vertex 0.
"""

from __future__ import annotations

import math
import os
import pickle
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

GRAPH_CAP = 7       # enumeration over 2^(n(n-1)/2) bitmasks; n=7 is 2^21
GRAPH_CAP_HARD = 8  # opt-in ceiling (2^28 graphs)
TREE_CAP = 9        # n^(n-2) trees; n=9 is 4782969
CACHE_ENV = "CLUSTEREXP_CACHE"


class CapExceededError(ValueError):
    """Requested size is beyond the enumeration cap."""


def _check_cap(n: int, cap: int, hard: int, what: str) -> None:
    if n > min(cap, hard):
        raise CapExceededError(
            f"{what} enumeration refused for n={n}: cap is {min(cap, hard)} "
            f"(override with cap=..., hard ceiling {hard})"
        )


@lru_cache(maxsize=None)
def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Unordered pairs of [n] in lexicographic order; tuple index = bit index."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def pair_index_map(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(vertex_pairs(n))}


def pair_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return pair_index_map(n)[(i, j)]


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class LabeledGraph:
    """Edge set over [n] as a bitmask over the lexicographic pair order."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.mask >> num_pairs(self.n):
            raise ValueError(f"mask has bits beyond the {num_pairs(self.n)} pairs of [{self.n}]")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "LabeledGraph":
        mask = 0
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            bit = 1 << pair_index(n, i, j)
            if mask & bit:
                raise ValueError(f"duplicate edge {{{i},{j}}}")
            mask |= bit
        return cls(n, mask)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        ps = vertex_pairs(self.n)
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(ps[low.bit_length() - 1])
            m ^= low
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return self.mask.bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.mask >> pair_index(self.n, i, j) & 1)

    def contains(self, other: "LabeledGraph") -> bool:
        return self.n == other.n and other.mask & ~self.mask == 0

    def to_text(self) -> str:
        return f"{self.n};" + ",".join(f"{i}-{j}" for i, j in self.edges)

    def __str__(self) -> str:
        return self.to_text()


def parse_graph(text: str) -> LabeledGraph:
    """Parse "n;i-j,k-l,..." or the bitmask hex form "n;0x1a"."""
    head, _, body = text.strip().partition(";")
    n = int(head)
    body = body.strip()
    if not body:
        return LabeledGraph(n, 0)
    if body.startswith(("0x", "0X")):
        return LabeledGraph(n, int(body, 16))
    edges = []
    for item in body.split(","):
        i, _, j = item.strip().partition("-")
        edges.append((int(i), int(j)))
    return LabeledGraph.from_edges(n, edges)


def _adjacency_bitsets(n: int, mask: int) -> list[int]:
    adj = [0] * n
    ps = vertex_pairs(n)
    m = mask
    while m:
        low = m & -m
        i, j = ps[low.bit_length() - 1]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        m ^= low
    return adj


def _mask_connected(n: int, mask: int, adj: Sequence[int] | None = None) -> bool:
    if n <= 1:
        return True
    if mask.bit_count() < n - 1:
        return False
    if adj is None:
        adj = _adjacency_bitsets(n, mask)
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
        if seen == full:
            return True
    return False


def is_connected(g: LabeledGraph) -> bool:
    """Single connected component spanning all n vertices."""
    return _mask_connected(g.n, g.mask)


def enumerate_graphs(
    n: int,
    cap: int = GRAPH_CAP,
    mask_range: tuple[int, int] | None = None,
) -> Iterator[LabeledGraph]:
    """All 2^(n(n-1)/2) graphs on [n], each once, in bitmask order.

    ``mask_range`` restricts to [start, stop) so enumeration can be
    partitioned across workers.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    _check_cap(n, cap, GRAPH_CAP_HARD, "graph")
    start, stop = mask_range if mask_range is not None else (0, 1 << num_pairs(n))
    for mask in range(start, stop):
        yield LabeledGraph(n, mask)


def _cache_path(name: str) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, name)


@lru_cache(maxsize=None)
def connected_masks(n: int, cap: int = GRAPH_CAP) -> tuple[int, ...]:
    """Bitmasks of all connected graphs on [n], ascending."""
    if n == 1:
        return (0,)
    _check_cap(n, cap, GRAPH_CAP_HARD, "graph")
    path = _cache_path(f"connected_masks_{n}.pkl")
    if path and os.path.exists(path):
        with open(path, "rb") as fh:
            return pickle.load(fh)
    out = []
    for mask in range(1 << num_pairs(n)):
        if mask.bit_count() < n - 1:
            continue
        if _mask_connected(n, mask):
            out.append(mask)
    masks = tuple(out)
    if path:
        with open(path, "wb") as fh:
            pickle.dump(masks, fh)
    return masks


def count_connected(n: int, cap: int = GRAPH_CAP) -> int:
    """Exact number of connected graphs on [n], by brute-force filtering."""
    if n < 2:
        raise ValueError("need n >= 2")
    return len(connected_masks(n, cap))


def alternating_connected_sum(n: int, cap: int = GRAPH_CAP) -> int:
    """Signed sum over connected graphs of (-1)^(edge count).

    Equals (-1)^(n-1) * (n-1)!: the surviving terms are the linear trees.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    total = 0
    for mask in connected_masks(n, cap):
        total += -1 if mask.bit_count() & 1 else 1
    return total


class RootedTree:
    """Tree on [n] rooted at 0, with parent/depth/children derived maps."""

    __slots__ = ("n", "mask", "root", "parent", "depth", "children")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] | None = None, mask: int | None = None):
        self.n = n
        self.root = 0
        if mask is None:
            mask = LabeledGraph.from_edges(n, edges or []).mask
        self.mask = mask
        if mask.bit_count() != n - 1:
            raise ValueError(f"a tree on [{n}] must have exactly {n - 1} edges")
        adj = _adjacency_bitsets(n, mask)
        parent = [-1] * n
        depth = [-1] * n
        depth[0] = 0
        order = [0]
        seen = 1
        for v in order:
            nbrs = adj[v] & ~seen
            seen |= nbrs
            while nbrs:
                low = nbrs & -nbrs
                w = low.bit_length() - 1
                parent[w] = v
                depth[w] = depth[v] + 1
                order.append(w)
                nbrs ^= low
        if len(order) != n:
            raise ValueError("edge set is not connected, hence not a tree")
        self.parent = tuple(parent)
        self.depth = tuple(depth)
        kids: list[list[int]] = [[] for _ in range(n)]
        for v in range(1, n):
            kids[parent[v]].append(v)
        self.children = tuple(tuple(k) for k in kids)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return LabeledGraph(self.n, self.mask).edges

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def as_graph(self) -> LabeledGraph:
        return LabeledGraph(self.n, self.mask)

    def path_pairs(self, i: int, j: int) -> list[tuple[int, int]]:
        """Edges of the unique tree path between i and j."""
        pi, pj = [], []
        di, dj = self.depth[i], self.depth[j]
        while di > dj:
            pi.append((i, self.parent[i]))
            i = self.parent[i]
            di -= 1
        while dj > di:
            pj.append((j, self.parent[j]))
            j = self.parent[j]
            dj -= 1
        while i != j:
            pi.append((i, self.parent[i]))
            pj.append((j, self.parent[j]))
            i, j = self.parent[i], self.parent[j]
        return pi + pj[::-1]

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash((self.n, self.mask))

    def __repr__(self):
        return f"RootedTree({self.as_graph().to_text()!r})"


def prufer_to_tree(n: int, seq: Sequence[int]) -> RootedTree:
    """Decode a Pruefer sequence over [n]^(n-2) into the corresponding tree.

    Linear-time decode: repeatedly attach the smallest remaining leaf to the
    next sequence value.
    """
    if n == 1:
        return RootedTree(1, mask=0)
    if len(seq) != n - 2:
        raise ValueError(f"sequence length must be n-2 = {n - 2}")
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    ptr = 0
    leaf = -1
    for v in seq:
        if leaf < 0:
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
            ptr += 1
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
        # a vertex the scan already passed must be reused at once
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            leaf = -1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((min(u, w), max(u, w)))
    return RootedTree(n, edges)


def enumerate_trees(n: int, cap: int = TREE_CAP) -> Iterator[RootedTree]:
    """All n^(n-2) labelled trees on [n] via the Pruefer bijection."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n > cap:
        raise CapExceededError(f"tree enumeration refused for n={n}: cap is {cap}")
    if n == 1:
        yield RootedTree(1, mask=0)
        return
    if n == 2:
        yield RootedTree(2, [(0, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_to_tree(n, seq)


def tree_count_by_degrees(degrees: Sequence[int]) -> int:
    """Number of labelled trees with the given degree sequence.

    Exact arbitrary-precision value (n-2)! / prod (d_i - 1)!.
    """
    n = len(degrees)
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if any(d < 1 for d in degrees):
        raise ValueError("every degree must be >= 1")
    if sum(degrees) != 2 * n - 2:
        raise ValueError(f"degree sum must be 2n-2 = {2 * n - 2}, got {sum(degrees)}")
    denom = 1
    for d in degrees:
        denom *= math.factorial(d - 1)
    return math.factorial(n - 2) // denom


def penrose_closure(tree: RootedTree) -> LabeledGraph:
    """Depth-rule closure of a rooted tree: add every pair {i,j} with equal
    depths, or with depth(j) = depth(i) - 1 and j greater than i's parent."""
    n = tree.n
    depth = tree.depth
    parent = tree.parent
    mask = tree.mask
    for k, (i, j) in enumerate(vertex_pairs(n)):
        bit = 1 << k
        if mask & bit:
            continue
        di, dj = depth[i], depth[j]
        if di == dj:
            mask |= bit
        elif di == dj + 1 and j > parent[i]:
            mask |= bit
        elif dj == di + 1 and i > parent[j]:
            mask |= bit
    return LabeledGraph(n, mask)


@dataclass(frozen=True)
class EdgeOrder:
    """Strict total order on the pairs of [n]; rank 0 is the lowest edge."""

    n: int
    ranks: tuple[int, ...]  # rank per pair index

    @classmethod
    def from_weights(cls, n: int, weights) -> "EdgeOrder":
        """Order with weight(i,j) ascending, ties by lexicographic pair order.

        ``weights`` is a callable (i, j) -> value or a mapping from pairs.
        The resulting order satisfies: e above f implies weight(e) >= weight(f).
        """
        ps = vertex_pairs(n)
        if callable(weights):
            w = [weights(i, j) for i, j in ps]
        else:
            w = [weights[(i, j)] for i, j in ps]
        order = sorted(range(len(ps)), key=lambda k: (w[k], ps[k]))
        ranks = [0] * len(ps)
        for r, k in enumerate(order):
            ranks[k] = r
        return cls(n, tuple(ranks))

    @classmethod
    def lexicographic(cls, n: int) -> "EdgeOrder":
        return cls(n, tuple(range(num_pairs(n))))

    def rank(self, i: int, j: int) -> int:
        return self.ranks[pair_index(self.n, i, j)]


def kruskal_tree(g: LabeledGraph, order: EdgeOrder) -> RootedTree:
    """Minimum spanning tree of a connected graph under the total edge order,
    built greedily: always take the lowest edge not creating a cycle."""
    n = g.n
    edges = sorted(g.edges, key=lambda e: order.rank(*e))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.append((i, j))
            if len(chosen) == n - 1:
                break
    if len(chosen) != n - 1:
        raise ValueError("graph is disconnected: no spanning tree exists")
    return RootedTree(n, chosen)


def kruskal_closure(tree: RootedTree, order: EdgeOrder) -> LabeledGraph:
    """Closure of a tree under the order: the tree plus every pair strictly
    above all edges of the tree path joining its endpoints."""
    n = tree.n
    mask = tree.mask
    for k, (i, j) in enumerate(vertex_pairs(n)):
        bit = 1 << k
        if mask & bit:
            continue
        r = order.rank(i, j)
        if all(r > order.rank(*e) for e in tree.path_pairs(i, j)):
            mask |= bit
    return LabeledGraph(n, mask)


@dataclass
class PartitionSchemeReport:
    """Outcome of the interval-partition check; falsy when it fails."""

    ok: bool
    n: int
    reason: str = ""
    counterexample: LabeledGraph | None = None
    interval_count: int = 0

    def __bool__(self) -> bool:
        return self.ok


def verify_partition_scheme(
    n: int,
    closure: Callable[[RootedTree], LabeledGraph],
    cap: int = GRAPH_CAP,
) -> PartitionSchemeReport:
    """Check that {g : tree <= g <= closure(tree)} partitions the connected
    graphs on [n]: intervals must be disjoint and jointly cover all of them."""
    _check_cap(n, cap, GRAPH_CAP_HARD, "graph")
    if n < 2:
        raise ValueError("need n >= 2")
    marks = bytearray(1 << num_pairs(n))
    count = 0
    for tree in enumerate_trees(n):
        closed = closure(tree)
        if closed.mask & tree.mask != tree.mask:
            return PartitionSchemeReport(
                False, n, reason="closure does not contain its tree",
                counterexample=tree.as_graph(),
            )
        extra = closed.mask ^ tree.mask
        sub = extra
        while True:
            m = tree.mask | sub
            if marks[m]:
                return PartitionSchemeReport(
                    False, n, reason="intervals overlap",
                    counterexample=LabeledGraph(n, m), interval_count=count,
                )
            marks[m] = 1
            count += 1
            if sub == 0:
                break
            sub = (sub - 1) & extra
    for mask in connected_masks(n, cap):
        if not marks[mask]:
            return PartitionSchemeReport(
                False, n, reason="a connected graph is uncovered",
                counterexample=LabeledGraph(n, mask), interval_count=count,
            )
    if count != count_connected(n, cap):
        return PartitionSchemeReport(
            False, n, reason="interval sizes do not add up to the connected count",
            interval_count=count,
        )
    return PartitionSchemeReport(True, n, interval_count=count)

"""Small-graph machinery: representation, graph6 I/O, canonical forms, and
exhaustive enumeration of connected graphs, trees, and rooted proof kernels.

Graphs live on at most 64 vertices so each adjacency row fits in one
machine word.  Enumerations are desk-scale and deterministic: augmentation
plus canonical-form deduplication, with results sorted by canonical code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; adj[v] is the neighbor bitmask of v."""

    n: int
    adj: tuple

    def __post_init__(self):
        if not (1 <= self.n <= MAX_VERTICES):
            raise ValueError("vertex count out of range: %d" % self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency length mismatch")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError("self-loop at %d" % v)
            if row & ~full:
                raise ValueError("edge endpoint out of range")
        for v in range(self.n):
            for u in range(v):
                if (self.adj[u] >> v & 1) != (self.adj[v] >> u & 1):
                    raise ValueError("asymmetric adjacency")

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    def with_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def add_vertex(self, neighbors: int = 0) -> "Graph":
        adj = [row | ((neighbors >> v & 1) << self.n) for v, row in enumerate(self.adj)]
        adj.append(neighbors)
        return Graph(self.n + 1, tuple(adj))

    # -- basic queries --------------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list:
        return _bits(self.adj[v])

    def edges(self) -> list:
        out = []
        for v in range(self.n):
            row = self.adj[v] >> (v + 1) << (v + 1)
            for u in _bits(row):
                out.append((v, u))
        return out

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        full = (1 << self.n) - 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
            if seen == full:
                return True
        return seen == full

    def is_tree(self) -> bool:
        return self.edge_count() == self.n - 1 and self.is_connected()

    def distances_from(self, o: int) -> list:
        dist = [-1] * self.n
        dist[o] = 0
        frontier = [o]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                for u in _bits(self.adj[v]):
                    if dist[u] < 0:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        return dist

    def eccentricity(self, o: int) -> int:
        dist = self.distances_from(o)
        if min(dist) < 0:
            raise ValueError("graph is disconnected")
        return max(dist)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph where old vertex v becomes perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex k of the result is vertices[k]."""
        idx = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for v in vertices:
            for u in _bits(self.adj[v]):
                if u in idx:
                    adj[idx[v]] |= 1 << idx[u]
        return Graph(len(vertices), tuple(adj))

    def adjacency_rows(self) -> list:
        return [[self.adj[v] >> u & 1 for u in range(self.n)] for v in range(self.n)]


def _bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class RootedKernel:
    """Connected graph with a distinguished root vertex."""

    graph: Graph
    root: int

    def __post_init__(self):
        if not (0 <= self.root < self.graph.n):
            raise ValueError("root out of range")

    def canonical(self) -> bytes:
        return canonical_form(self.graph, self.root)

    def id_string(self) -> str:
        """Stable readable identifier: graph6 of a canonical relabeling with
        the root moved to vertex 0."""
        order = [self.root] + [v for v in range(self.graph.n) if v != self.root]
        g = self.graph.induced(order)
        return write_graph6(canonical_relabel(g, 0))


@dataclass(frozen=True)
class ActiveSet:
    """Kernel vertices allowed to have neighbors outside the kernel."""

    vertices: frozenset
    eccentricity: int


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

class Graph6Error(ValueError):
    pass


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (bit-exact per the public format)."""
    data = text.strip()
    if not data:
        raise Graph6Error("empty graph6 string")
    raw = [ord(ch) - 63 for ch in data]
    if any(c < 0 or c > 63 for c in raw):
        raise Graph6Error("character out of graph6 range")
    if raw[0] == 63:
        if len(raw) < 4:
            raise Graph6Error("truncated long-form header")
        n = (raw[1] << 12) | (raw[2] << 6) | raw[3]
        body = raw[4:]
    else:
        n = raw[0]
        body = raw[1:]
    if n > MAX_VERTICES:
        raise Graph6Error("graph too large: %d vertices" % n)
    if n == 0:
        raise Graph6Error("empty graph not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error("bit body has %d chars, expected %d" % (len(body), need))
    bits = 0
    for c in body:
        bits = bits << 6 | c
    pad = need * 6 - nbits
    if pad and bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    bits >>= pad
    adj = [0] * n
    k = nbits
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if bits >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def write_graph6(g: Graph) -> str:
    n = g.n
    header = [chr(n + 63)] if n <= 62 else [chr(126), chr((n >> 12) + 63),
                                            chr(((n >> 6) & 63) + 63), chr((n & 63) + 63)]
    bits = 0
    nbits = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            bits = bits << 1 | (g.adj[i] >> j & 1)
    pad = (6 - nbits % 6) % 6
    bits <<= pad
    body = []
    for k in range(((nbits + pad) // 6 - 1) * 6, -1, -6):
        body.append(chr((bits >> k & 63) + 63))
    return "".join(header + body)


def parse_edge_list(text: str) -> Graph:
    """Parse the fixture format "n; u-v, u-v, ..."."""
    try:
        head, _, rest = text.partition(";")
        n = int(head.strip())
        edges = []
        for item in rest.split(","):
            item = item.strip()
            if not item:
                continue
            u, _, v = item.partition("-")
            edges.append((int(u), int(v)))
        return Graph.from_edges(n, edges)
    except (ValueError, IndexError) as exc:
        raise ValueError("bad edge-list text: %s" % exc) from exc


def write_edge_list(g: Graph) -> str:
    return "%d; %s" % (g.n, ", ".join("%d-%d" % e for e in g.edges()))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def attach_path(h: Graph, v: int, k: int) -> Graph:
    """Join a path on k new vertices to h by an edge at v."""
    if not (0 <= v < h.n):
        raise ValueError("attachment vertex out of range")
    if k < 0:
        raise ValueError("negative path length")
    g = h
    last = v
    for _ in range(k):
        g = g.add_vertex(1 << last)
        last = g.n - 1
    return g


def attach_fork(h: Graph, v: int, k: int, leaves: int) -> Graph:
    """Join a path on k new vertices ending in `leaves` pendant leaves."""
    if leaves < 2:
        raise ValueError("fork needs at least 2 leaves")
    if k < 1:
        raise ValueError("fork needs at least 1 path vertex")
    g = attach_path(h, v, k)
    end = g.n - 1
    for _ in range(leaves):
        g = g.add_vertex(1 << end)
    return g


def bfs_layers(g: Graph, o: int) -> list:
    """Vertex layers by distance from o; ties broken by ascending id."""
    dist = g.distances_from(o)
    if min(dist) < 0:
        raise ValueError("graph is disconnected")
    layers = [[] for _ in range(max(dist) + 1)]
    for v in range(g.n):
        layers[dist[v]].append(v)
    return layers


# -- named small graphs -------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on n vertices: center 0 with n-1 leaves."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def fork_graph(n: int) -> Graph:
    """Path with two extra leaves at one end (star of 3 plus a path)."""
    if n < 4:
        raise ValueError("fork needs >= 4 vertices")
    return attach_path(star_graph(3), 0, n - 3)


def bifork_graph(n: int) -> Graph:
    """Path with two pendant leaves at each end; n=5 gives the 4-leaf star."""
    if n < 5:
        raise ValueError("bifork needs >= 5 vertices")
    core = path_graph(n - 4)
    g = core
    for _ in range(2):
        g = g.add_vertex(1 << 0)
    for _ in range(2):
        g = g.add_vertex(1 << (n - 5))
    return g


def diamond_graph() -> Graph:
    """K4 minus an edge; vertices 0,3 have degree 2 and 1,2 degree 3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def e_graph(kind: str) -> Graph:
    """The exceptional path-with-one-branch graphs and their one-vertex
    extensions (largest eigenvalue below / exactly 2)."""
    builders = {
        "E6": (5, 2),   # path of 5, leaf at middle
        "E7": (6, 2),
        "E8": (7, 2),
        "E7hat": (7, 3),
        "E8hat": (8, 2),
    }
    if kind == "E6hat":
        g = star_graph(4)
        for arm in (1, 2, 3):
            g = g.add_vertex(1 << arm)
        return g
    plen, at = builders[kind]
    return attach_path(path_graph(plen), at, 1)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _refine_colors(g: Graph, colors: list) -> list:
    """1-dimensional color refinement until stable; colors are small ints
    assigned canonically by sorting signature tuples."""
    n = g.n
    while True:
        sigs = []
        for v in range(n):
            nbr = sorted(colors[u] for u in _bits(g.adj[v]))
            sigs.append((colors[v], tuple(nbr)))
        order = sorted(set(sigs))
        lookup = {s: i for i, s in enumerate(order)}
        new = [lookup[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _is_acyclic_connected(g: Graph) -> bool:
    return g.edge_count() == g.n - 1 and g.is_connected()


def _tree_code(g: Graph, root: Optional[int]) -> bytes:
    """Canonical code of a tree (rooted or free) via sorted subtree encoding."""
    def encode(v: int, parent: int) -> bytes:
        subs = sorted(encode(u, v) for u in _bits(g.adj[v]) if u != parent)
        return b"(" + b"".join(subs) + b")"

    if root is not None:
        return b"R" + encode(root, -1)
    # free tree: root at the center (one or two middle vertices)
    centers = _tree_centers(g)
    return b"T" + min(encode(c, -1) for c in centers)


def _tree_centers(g: Graph) -> list:
    if g.n == 1:
        return [0]
    deg = g.degrees()
    removed = [False] * g.n
    leaves = [v for v in range(g.n) if deg[v] == 1]
    remaining = g.n
    while remaining > 2:
        nxt = []
        for v in leaves:
            removed[v] = True
            remaining -= 1
            for u in _bits(g.adj[v]):
                if not removed[u]:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        leaves = nxt
    return [v for v in range(g.n) if not removed[v]]


def _graph_code(g: Graph, root: Optional[int]) -> bytes:
    """Canonical code by refinement followed by minimization over the
    orderings consistent with the stable coloring."""
    n = g.n
    colors = [0] * n
    if root is not None:
        colors = [0 if v == root else 1 for v in range(n)]
    colors = _refine_colors(g, colors)
    cells: dict[int, list] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    ordered_cells = [cells[c] for c in sorted(cells)]
    best = None
    for perm_parts in itertools.product(*[itertools.permutations(cell) for cell in ordered_cells]):
        order = [v for part in perm_parts for v in part]
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        bits = 0
        for j in range(1, n):
            vj = order[j]
            for i in range(j):
                bits = bits << 1 | (g.adj[order[i]] >> vj & 1)
        if best is None or bits < best:
            best = bits
    tag = b"G" if root is None else b"g"
    return tag + n.to_bytes(1, "big") + best.to_bytes((n * n + 7) // 8, "big")


def canonical_form(g: Graph, root: Optional[int] = None) -> bytes:
    """Canonical byte string: equal iff (rooted-)isomorphic.

    Connected acyclic graphs use the linear-time tree code; everything else
    uses color refinement with exhaustive tie-breaking, which is exact at
    these sizes.
    """
    if _is_acyclic_connected(g):
        return _tree_code(g, root)
    return _graph_code(g, root)


def _tree_canonical_order(g: Graph, root: Optional[int]) -> list:
    """DFS order of a tree with children sorted by subtree code."""
    codes: dict[tuple, bytes] = {}

    def encode(v: int, parent: int) -> bytes:
        subs = sorted(encode(u, v) for u in _bits(g.adj[v]) if u != parent)
        code = b"(" + b"".join(subs) + b")"
        codes[(v, parent)] = code
        return code

    if root is None:
        centers = _tree_centers(g)
        root = min(centers, key=lambda c: encode(c, -1))
    else:
        encode(root, -1)
    order: list = []

    def walk(v: int, parent: int):
        order.append(v)
        kids = sorted((u for u in _bits(g.adj[v]) if u != parent),
                      key=lambda u: codes[(u, v)])
        for u in kids:
            walk(u, v)

    walk(root, -1)
    return order


def canonical_relabel(g: Graph, root: Optional[int] = None) -> Graph:
    """A canonically relabeled copy: isomorphic inputs give identical output.

    When a root is given it lands on vertex 0 of the result.
    """
    n = g.n
    if _is_acyclic_connected(g):
        order = _tree_canonical_order(g, root)
    else:
        colors = [0] * n if root is None else [0 if v == root else 1 for v in range(n)]
        colors = _refine_colors(g, colors)
        cells: dict[int, list] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        ordered_cells = [cells[c] for c in sorted(cells)]
        best = None
        order = None
        for perm_parts in itertools.product(*[itertools.permutations(cell) for cell in ordered_cells]):
            cand = [v for part in perm_parts for v in part]
            bits = 0
            for j in range(1, n):
                vj = cand[j]
                for i in range(j):
                    bits = bits << 1 | (g.adj[cand[i]] >> vj & 1)
            if best is None or bits < best:
                best, order = bits, cand
    perm = [0] * n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# kernels: predicates
# ---------------------------------------------------------------------------

def has_strictly_dominating_vertex(k: RootedKernel) -> bool:
    """True iff some non-root vertex's closed neighborhood strictly contains
    the root's closed neighborhood (impossible for a maximum-weight root)."""
    g, o = k.graph, k.root
    no = g.closed_neighborhood(o)
    for v in range(g.n):
        if v == o:
            continue
        nv = g.closed_neighborhood(v)
        if nv & no == no and nv != no:
            return True
    return False


def has_open_dominating_vertex(k: RootedKernel) -> bool:
    """True iff some non-root vertex's open neighborhood strictly contains
    the root's open neighborhood.

    Like the closed variant, this forces that vertex to outweigh the root in
    the Perron vector of any connected supergraph whose extra vertices
    attach outside the root's neighborhood, so such roots cannot be
    maximum-weight vertices.
    """
    g, o = k.graph, k.root
    no = g.adj[o]
    for v in range(g.n):
        if v == o:
            continue
        nv = g.adj[v]
        if nv & no == no and nv != no:
            return True
    return False


def active_vertices(k: RootedKernel, kind: str) -> ActiveSet:
    """Kernel vertices that may have neighbors outside the kernel.

    Graph kernels: all non-root vertices when the root's eccentricity is at
    most 2, otherwise everything outside the root's closed neighborhood.
    Tree kernels: vertices at distance >= ecc-1 from the root; for the star
    (eccentricity 1) this includes the root itself.
    """
    g, o = k.graph, k.root
    dist = g.distances_from(o)
    if min(dist) < 0:
        raise ValueError("kernel is disconnected")
    ecc = max(dist)
    if kind == "graph":
        if ecc <= 2:
            verts = frozenset(v for v in range(g.n) if v != o)
        else:
            closed = g.closed_neighborhood(o)
            verts = frozenset(v for v in range(g.n) if not (closed >> v & 1))
    elif kind == "tree":
        verts = frozenset(v for v in range(g.n) if dist[v] >= ecc - 1)
    else:
        raise ValueError("kind must be 'graph' or 'tree'")
    return ActiveSet(verts, ecc)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

GRAPH_ENUM_CAP = 7
TREE_ENUM_CAP = 14


@lru_cache(maxsize=None)
def enumerate_connected_graphs(n: int) -> tuple:
    """All connected graphs on n <= 7 vertices, one per isomorphism class.

    Builds candidates by attaching a new vertex to every nonempty subset of
    each (n-1)-vertex class representative; every connected graph has a
    non-cutting vertex, so every class is reached.
    """
    if not (1 <= n <= GRAPH_ENUM_CAP):
        raise ValueError("connected-graph enumeration capped at %d vertices" % GRAPH_ENUM_CAP)
    if n == 1:
        return (Graph(1, (0,)),)
    out: dict[bytes, Graph] = {}
    for g in enumerate_connected_graphs(n - 1):
        for mask in range(1, 1 << (n - 1)):
            h = g.add_vertex(mask)
            out.setdefault(canonical_form(h), h)
    return tuple(g for _, g in sorted(out.items()))


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple:
    """All trees on n <= 14 vertices, one per isomorphism class, built by
    leaf augmentation with canonical deduplication."""
    if not (1 <= n <= TREE_ENUM_CAP):
        raise ValueError("tree enumeration capped at %d vertices" % TREE_ENUM_CAP)
    if n == 1:
        return (Graph(1, (0,)),)
    out: dict[bytes, Graph] = {}
    for t in enumerate_trees(n - 1):
        for v in range(t.n):
            h = t.add_vertex(1 << v)
            out.setdefault(canonical_form(h), h)
    return tuple(g for _, g in sorted(out.items()))


def enumerate_connected_graphs_bruteforce(n: int) -> int:
    """Independent class count over all edge subsets; cross-check for n <= 6."""
    if n > 6:
        raise ValueError("brute-force check capped at 6 vertices")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            seen.add(canonical_form(g))
    return len(seen)


@lru_cache(maxsize=None)
def enumerate_graph_kernels() -> tuple:
    """The rooted 6-vertex kernels: connected, root degree >= 3, and no
    vertex dominating the root in either the closed or open sense.

    Both domination exclusions are sound for maximum-weight roots; together
    they give the 155 rooted classes the verification stage iterates over.
    """
    out: dict[bytes, RootedKernel] = {}
    for g in enumerate_connected_graphs(6):
        for o in range(6):
            if g.degree(o) < 3:
                continue
            k = RootedKernel(g, o)
            if has_strictly_dominating_vertex(k) or has_open_dominating_vertex(k):
                continue
            out.setdefault(canonical_form(g, o), k)
    return tuple(k for _, k in sorted(out.items()))


@lru_cache(maxsize=None)
def enumerate_tree_kernels() -> tuple:
    """The rooted 10-vertex tree kernels: root degree >= 3 (194 classes)."""
    out: dict[bytes, RootedKernel] = {}
    for t in enumerate_trees(10):
        for o in range(10):
            if t.degree(o) >= 3:
                out.setdefault(canonical_form(t, o), RootedKernel(t, o))
    return tuple(k for _, k in sorted(out.items()))


def automorphism_count(g: Graph) -> int:
    """Order of the automorphism group (trees only; used for the labeled
    Cayley-count cross-check of the tree enumeration)."""
    if not _is_acyclic_connected(g):
        raise ValueError("automorphism_count implemented for trees only")

    def count(v: int, parent: int) -> tuple:
        subs = [count(u, v) for u in _bits(g.adj[v]) if u != parent]
        subs.sort(key=lambda s: s[0])
        total = 1
        i = 0
        while i < len(subs):
            j = i
            while j < len(subs) and subs[j][0] == subs[i][0]:
                j += 1
            run = j - i
            fact = 1
            for m in range(2, run + 1):
                fact *= m
            total *= fact
            for k in range(i, j):
                total *= subs[k][1]
            i = j
        code = b"(" + b"".join(s[0] for s in subs) + b")"
        return code, total

    centers = _tree_centers(g)
    if len(centers) == 1:
        return count(centers[0], -1)[1]
    c1, c2 = centers
    code1, n1 = count(c1, c2)
    code2, n2 = count(c2, c1)
    swap = 2 if code1 == code2 else 1
    return n1 * n2 * swap

"""Graph representation, element adjacency, instance construction and I/O.

Vertices are 0-based everywhere in memory; DIMACS files use 1-based ids.
Elements (vertices and edges together) index a dense vector of length
n + m with the vertex block first, a layout every other module relies on.
"""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    FixtureMissingError,
    GraphFormatError,
    InvalidElementError,
    InvalidParameterError,
)
from ._data import CHVATAL_EDGES, TUTTE_EDGES

VERTEX = "vertex"
EDGE = "edge"


@dataclass(frozen=True)
class Element:
    """A vertex or an edge of a graph, tagged with its kind."""

    tag: str
    id: int

    @classmethod
    def vertex(cls, v: int) -> "Element":
        return cls(VERTEX, v)

    @classmethod
    def edge(cls, e: int) -> "Element":
        return cls(EDGE, e)

    def index(self, g: "Graph") -> int:
        """Position of this element in the dense [vertex | edge] layout."""
        g.check_element(self)
        return self.id if self.tag == VERTEX else g.n + self.id


class Graph:
    """Simple undirected graph with stable vertex and edge ids.

    Immutable after construction; safe to share across threads/processes.
    Edge ids are 0..m-1 in input order, endpoints normalized to u < v.
    """

    def __init__(self, n, edges, name=None):
        if n < 0:
            raise InvalidParameterError("vertex count must be nonnegative")
        norm = []
        seen = set()
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"loop at vertex {u} not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InvalidParameterError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v))
        self.n = n
        self.m = len(norm)
        self.edges = tuple(norm)
        self.name = name
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        inc = [[] for _ in range(n)]
        nbr = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
            nbr[u].append(v)
            nbr[v].append(u)
        self.incident = tuple(tuple(x) for x in inc)
        self.neighbors = tuple(tuple(sorted(x)) for x in nbr)
        self._adj_masks = None

    @property
    def num_elements(self) -> int:
        return self.n + self.m

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def endpoints(self, e: int):
        return self.edges[e]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_index

    def check_element(self, a: Element):
        if a.tag == VERTEX:
            if not 0 <= a.id < self.n:
                raise InvalidElementError(f"vertex id {a.id} out of range (n={self.n})")
        elif a.tag == EDGE:
            if not 0 <= a.id < self.m:
                raise InvalidElementError(f"edge id {a.id} out of range (m={self.m})")
        else:
            raise InvalidElementError(f"unknown element tag {a.tag!r}")

    def element_adjacency_masks(self):
        """Bitmask per element index of all adjacent element indices.

        Mask layout matches the dense element layout: bit i set in mask[j]
        iff elements i and j are adjacent (never i == j).
        """
        if self._adj_masks is not None:
            return self._adj_masks
        n = self.n
        masks = [0] * self.num_elements
        for e, (u, v) in enumerate(self.edges):
            masks[u] |= 1 << v
            masks[v] |= 1 << u
            masks[u] |= 1 << (n + e)
            masks[v] |= 1 << (n + e)
            masks[n + e] |= (1 << u) | (1 << v)
        for v in range(n):
            for e1, e2 in combinations(self.incident[v], 2):
                masks[n + e1] |= 1 << (n + e2)
                masks[n + e2] |= 1 << (n + e1)
        self._adj_masks = tuple(masks)
        return self._adj_masks

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


class ElementSet:
    """Dense 0/1 vector over V then E; the carrier of total matchings."""

    __slots__ = ("graph", "mask")

    def __init__(self, graph: Graph, bits):
        bits = list(bits)
        if len(bits) != graph.num_elements:
            raise InvalidElementError(
                f"bit vector length {len(bits)} != n+m = {graph.num_elements}"
            )
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, False, True):
                raise InvalidElementError(f"bit at position {i} is not 0/1")
            if b:
                mask |= 1 << i
        self.graph = graph
        self.mask = mask

    @classmethod
    def from_mask(cls, graph: Graph, mask: int) -> "ElementSet":
        obj = cls.__new__(cls)
        obj.graph = graph
        obj.mask = mask
        if mask < 0 or mask >> graph.num_elements:
            raise InvalidElementError("mask has bits outside the element range")
        return obj

    @classmethod
    def from_elements(cls, graph: Graph, elements) -> "ElementSet":
        mask = 0
        for el in elements:
            mask |= 1 << el.index(graph)
        return cls.from_mask(graph, mask)

    @property
    def bits(self):
        return tuple((self.mask >> i) & 1 for i in range(self.graph.num_elements))

    def vertices(self):
        return [v for v in range(self.graph.n) if (self.mask >> v) & 1]

    def edge_ids(self):
        n = self.graph.n
        return [e for e in range(self.graph.m) if (self.mask >> (n + e)) & 1]

    def elements(self):
        return [Element.vertex(v) for v in self.vertices()] + [
            Element.edge(e) for e in self.edge_ids()
        ]

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, el: Element):
        return (self.mask >> el.index(self.graph)) & 1 == 1

    def __eq__(self, other):
        return (
            isinstance(other, ElementSet)
            and other.graph is self.graph
            and other.mask == self.mask
        )

    def __hash__(self):
        return hash((id(self.graph), self.mask))

    def __repr__(self):
        return f"<ElementSet v={self.vertices()} e={self.edge_ids()}>"


def elements_adjacent(g: Graph, a: Element, b: Element) -> bool:
    """True iff the two elements are adjacent: adjacent vertices, incident
    edges, or an edge incident to a vertex. An element is never adjacent
    to itself."""
    g.check_element(a)
    g.check_element(b)
    if a == b:
        return False
    if a.tag == VERTEX and b.tag == VERTEX:
        return g.has_edge(a.id, b.id)
    if a.tag == EDGE and b.tag == EDGE:
        eu, ev = g.endpoints(a.id)
        fu, fv = g.endpoints(b.id)
        return len({eu, ev} & {fu, fv}) > 0
    if a.tag == EDGE:
        a, b = b, a
    u, v = g.endpoints(b.id)
    return a.id == u or a.id == v


def total_graph(g: Graph):
    """Graph on the elements of g, joining every adjacent pair.

    Returns (W, mapping) where W has n+m vertices and mapping sends each
    element of g to its vertex id in W (vertex i -> i, edge j -> n+j).
    Stable sets of W are exactly the total matchings of g.
    """
    n = g.n
    masks = g.element_adjacency_masks()
    wedges = []
    for i in range(g.num_elements):
        mi = masks[i] >> (i + 1)
        j = i + 1
        while mi:
            if mi & 1:
                wedges.append((i, j))
            mi >>= 1
            j += 1
    mapping = {Element.vertex(v): v for v in range(n)}
    mapping.update({Element.edge(e): n + e for e in range(g.m)})
    w = Graph(g.num_elements, wedges, name=f"total({g.name or 'graph'})")
    return w, mapping


# ---------------------------------------------------------------------------
# Named and random instances


_NAMED_RE = re.compile(r"^([a-z]+)(?:\((\d+)\))?$")


def _cycle(k):
    if k < 3:
        raise InvalidParameterError("cycle needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)], name=f"cycle({k})")


def _complete(h):
    if h < 1:
        raise InvalidParameterError("complete graph needs h >= 1")
    return Graph(h, list(combinations(range(h), 2)), name=f"complete({h})")


def _star(k):
    if k < 1:
        raise InvalidParameterError("star needs k >= 1 leaves")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)], name=f"star({k})")


def _wheel(k):
    if k < 3:
        raise InvalidParameterError("wheel needs a rim of k >= 3")
    rim = [(i, (i + 1) % k) for i in range(k)]
    spokes = [(i, k) for i in range(k)]
    return Graph(k + 1, rim + spokes, name=f"wheel({k})")


def _petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes, name="petersen")


def instances_dir(override=None):
    """Directory holding fixture instances; TOTMATCH_INSTANCES overrides."""
    if override:
        return override
    env = os.environ.get("TOTMATCH_INSTANCES")
    if env:
        return env
    return os.path.join(os.getcwd(), "instances")


def named_graph(name: str, instances=None) -> Graph:
    """Build one of the named instances.

    Accepts cycle(k), complete(h), star(k), wheel(k), petersen, chvatal,
    tutte, watkins. Watkins has no constructive formula and is read from
    <instances>/watkins.dimacs; a FixtureMissingError tells you where the
    file was expected if it is absent.
    """
    key = name.strip().lower()
    m = _NAMED_RE.match(key)
    if not m:
        raise InvalidParameterError(f"unknown graph name {name!r}")
    base, arg = m.group(1), m.group(2)
    parametric = {"cycle": _cycle, "complete": _complete, "star": _star, "wheel": _wheel}
    if base in parametric:
        if arg is None:
            raise InvalidParameterError(f"{base} needs a size, e.g. {base}(5)")
        return parametric[base](int(arg))
    if arg is not None:
        raise InvalidParameterError(f"unknown graph name {name!r}")
    if base == "petersen":
        return _petersen()
    if base == "chvatal":
        return Graph(12, CHVATAL_EDGES, name="chvatal")
    if base == "tutte":
        return Graph(46, TUTTE_EDGES, name="tutte")
    if base == "watkins":
        path = os.path.join(instances_dir(instances), "watkins.dimacs")
        if not os.path.exists(path):
            raise FixtureMissingError(
                f"watkins ships as a fixture edge list; expected {path}"
            )
        g = load_dimacs(path)
        g.name = "watkins"
        return g
    raise InvalidParameterError(f"unknown graph name {name!r}")


def random_cubic(n: int, seed: int) -> Graph:
    """3-regular graph via the pairing model, resampling whole pairings
    until the result is simple. Deterministic for a fixed seed."""
    if n < 4 or n % 2:
        raise InvalidParameterError("random_cubic needs even n >= 4")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            if u > v:
                u, v = v, u
            if (u, v) in edges:
                ok = False
                break
            edges.add((u, v))
        if ok:
            return Graph(n, sorted(edges), name=f"cubic(n={n},seed={seed})")


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); edge list deterministic for a fixed seed."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise InvalidParameterError("random_gnp needs n >= 0 and p in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges, name=f"gnp(n={n},p={p},seed={seed})")


# ---------------------------------------------------------------------------
# File formats


def load_dimacs(path: str) -> Graph:
    """Read a DIMACS edge-format file (`p edge n m`, `e u v`, 1-based)."""
    n = None
    declared_m = None
    edges = []
    seen = set()
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) != 4 or parts[1].lower() != "edge":
                    raise GraphFormatError(f"bad problem line {line!r}", line=lineno)
                try:
                    n, declared_m = int(parts[2]), int(parts[3])
                except ValueError:
                    raise GraphFormatError("non-integer size in header", line=lineno)
            elif parts[0] == "e":
                if n is None:
                    raise GraphFormatError("edge before 'p edge' header", line=lineno)
                if len(parts) != 3:
                    raise GraphFormatError(f"bad edge line {line!r}", line=lineno)
                try:
                    u, v = int(parts[1]) - 1, int(parts[2]) - 1
                except ValueError:
                    raise GraphFormatError("non-integer vertex id", line=lineno)
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(
                        f"vertex id out of range in {line!r}", line=lineno
                    )
                if u == v:
                    raise GraphFormatError(f"loop in {line!r}", line=lineno)
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise GraphFormatError(f"duplicate edge {line!r}", line=lineno)
                seen.add(key)
                edges.append(key)
            else:
                raise GraphFormatError(f"unknown line {line!r}", line=lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    if declared_m is not None and declared_m != len(edges):
        raise GraphFormatError(f"header declares m={declared_m}, file has {len(edges)}")
    name = os.path.splitext(os.path.basename(path))[0]
    return Graph(n, edges, name=name)


def save_dimacs(g: Graph, path: str):
    with open(path, "w") as f:
        f.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.edges:
            f.write(f"e {u + 1} {v + 1}\n")


def load_graph6(line: str) -> Graph:
    """Decode one graph6 line (<= 62 vertices use the 1-byte size form)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphFormatError("graph6 byte out of range")
    if data[0] <= 62:
        n = data[0]
        body = data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise GraphFormatError("unsupported graph6 size prefix")
    need = n * (n - 1) // 2
    bits = []
    for b in body:
        for k in range(5, -1, -1):
            bits.append((b >> k) & 1)
    if len(bits) < need:
        raise GraphFormatError("graph6 string too short for declared size")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def save_graph6(g: Graph) -> str:
    """Encode a graph as one graph6 line (upper-triangle, column order)."""
    n = g.n
    if n <= 62:
        head = [n]
    elif n <= 258047:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise InvalidParameterError("graph too large for this graph6 encoder")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        b = 0
        for k in range(6):
            b = (b << 1) | bits[i + k]
        body.append(b)
    return "".join(chr(63 + b) for b in head + body)


# ---------------------------------------------------------------------------
# Cliques


def maximal_cliques(g: Graph):
    """All maximal vertex cliques, each exactly once (Bron-Kerbosch with
    pivoting). Output deterministic: cliques sorted, list sorted."""
    if g.n == 0:
        return []
    nbr = [set(g.neighbors[v]) for v in range(g.n)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: (len(p & nbr[u]), -u))
        for v in sorted(p - nbr[pivot]):
            expand(r | {v}, p & nbr[v], x & nbr[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(range(g.n)), set())
    return sorted(out)

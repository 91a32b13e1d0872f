"""De Bruijn graphs G_n^k, their edge subsets, and Eulerian circuits.

Vertices are the integers 0..k^n-1, read as base-k words of length n with the
first letter most significant. The edge (v, b) joins v = a.t to t.b. For n = 0
there is one vertex (the empty word) carrying k loops told apart by letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from gdebruijn.words import CircularWord, format_word

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class NotBalancedError(GraphError):
    pass


class NotConnectedError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


def _check_params(k: int, n: int) -> None:
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")


def head(k: int, n: int, v: int, b: int) -> int:
    return (v * k + b) % k**n


def first_letter(k: int, n: int, v: int) -> int:
    return v // k ** (n - 1)


def vertex_label(k: int, n: int, v: int) -> str:
    if n == 0:
        return "ε"
    digits = []
    for _ in range(n):
        v, a = divmod(v, k)
        digits.append(a)
    return format_word(digits[::-1], k)


def successors(k: int, n: int, v: int) -> list[Edge]:
    """The k outgoing edges of v, as (v, letter) pairs."""
    _check_params(k, n)
    if not 0 <= v < k**n:
        raise GraphError(f"vertex {v} out of range for G_{n}^{k}")
    return [(v, b) for b in range(k)]


def predecessors(k: int, n: int, v: int) -> list[Edge]:
    """The k incoming edges of v, as (tail, letter) pairs."""
    _check_params(k, n)
    size = k**n
    if not 0 <= v < size:
        raise GraphError(f"vertex {v} out of range for G_{n}^{k}")
    if n == 0:
        return [(0, b) for b in range(k)]
    b, t = v % k, v // k
    step = k ** (n - 1)
    return [(a * step + t, b) for a in range(k)]


class DeBruijnSubgraph:
    """An edge subset of G_n^k, stored as one letter bitmask per vertex."""

    __slots__ = ("k", "n", "masks")

    def __init__(self, k: int, n: int, edges: Iterable[Edge] = ()):
        _check_params(k, n)
        self.k = k
        self.n = n
        self.masks = [0] * (k**n)
        for v, b in edges:
            self.add_edge(v, b)

    @classmethod
    def full(cls, k: int, n: int) -> DeBruijnSubgraph:
        g = cls(k, n)
        full_mask = (1 << k) - 1
        g.masks = [full_mask] * (k**n)
        return g

    @property
    def num_vertices(self) -> int:
        return len(self.masks)

    def copy(self) -> DeBruijnSubgraph:
        g = DeBruijnSubgraph(self.k, self.n)
        g.masks = list(self.masks)
        return g

    def head(self, v: int, b: int) -> int:
        return (v * self.k + b) % len(self.masks)

    def _check_edge(self, v: int, b: int) -> None:
        if not (0 <= v < len(self.masks) and 0 <= b < self.k):
            raise GraphError(f"edge ({v}, {b}) not in G_{self.n}^{self.k}")

    def has_edge(self, v: int, b: int) -> bool:
        self._check_edge(v, b)
        return bool(self.masks[v] >> b & 1)

    def add_edge(self, v: int, b: int) -> None:
        self._check_edge(v, b)
        if self.masks[v] >> b & 1:
            raise GraphError(f"duplicate edge ({v}, {b})")
        self.masks[v] |= 1 << b

    def remove_edge(self, v: int, b: int) -> None:
        self._check_edge(v, b)
        if not self.masks[v] >> b & 1:
            raise GraphError(f"edge ({v}, {b}) not present")
        self.masks[v] &= ~(1 << b)

    def edges(self) -> Iterator[Edge]:
        for v, mask in enumerate(self.masks):
            b = 0
            while mask:
                if mask & 1:
                    yield v, b
                mask >>= 1
                b += 1

    def edge_set(self) -> set[Edge]:
        return set(self.edges())

    def edge_count(self) -> int:
        return sum(bin(mask).count("1") for mask in self.masks)

    def out_degrees(self) -> list[int]:
        return [bin(mask).count("1") for mask in self.masks]

    def in_degrees(self) -> list[int]:
        deg = [0] * len(self.masks)
        for v, b in self.edges():
            deg[self.head(v, b)] += 1
        return deg

    def support(self) -> list[int]:
        """Vertices touched by at least one edge."""
        out, inc = self.out_degrees(), self.in_degrees()
        return [v for v in range(len(self.masks)) if out[v] or inc[v]]

    def complement(self) -> DeBruijnSubgraph:
        g = DeBruijnSubgraph(self.k, self.n)
        full_mask = (1 << self.k) - 1
        g.masks = [full_mask & ~mask for mask in self.masks]
        return g

    def union(self, other: DeBruijnSubgraph) -> DeBruijnSubgraph:
        """Edge union; the operands must be edge-disjoint."""
        if (self.k, self.n) != (other.k, other.n):
            raise GraphError("graphs live in different de Bruijn graphs")
        if any(a & b for a, b in zip(self.masks, other.masks)):
            raise GraphError("union of overlapping edge sets")
        g = DeBruijnSubgraph(self.k, self.n)
        g.masks = [a | b for a, b in zip(self.masks, other.masks)]
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeBruijnSubgraph):
            return NotImplemented
        return (self.k, self.n, self.masks) == (other.k, other.n, other.masks)

    def __repr__(self) -> str:
        return f"DeBruijnSubgraph(k={self.k}, n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True)
class Cycle:
    """Closed walk through distinct vertices of G_n^k (n >= 1)."""

    k: int
    n: int
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_params(self.k, self.n)
        if self.n < 1:
            raise GraphError("cycles are only represented for order >= 1")
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise GraphError("a cycle has at least one vertex")
        if len(set(vs)) != len(vs):
            raise GraphError("cycle repeats a vertex")
        size = self.k**self.n
        for i, v in enumerate(vs):
            if not 0 <= v < size:
                raise GraphError(f"vertex {v} out of range")
            nxt = vs[(i + 1) % len(vs)]
            if nxt // self.k != v % (size // self.k):
                raise GraphError(f"no edge from {v} to {nxt}")

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [(v, vs[(i + 1) % len(vs)] % self.k) for i, v in enumerate(vs)]

    def as_subgraph(self) -> DeBruijnSubgraph:
        return DeBruijnSubgraph(self.k, self.n, self.edges())


@dataclass(frozen=True)
class Circuit:
    """Closed walk through distinct edges of G_n^k."""

    k: int
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        _check_params(self.k, self.n)
        es = tuple((int(v), int(b)) for v, b in self.edges)
        object.__setattr__(self, "edges", es)
        if not es:
            raise GraphError("a circuit has at least one edge")
        if len(set(es)) != len(es):
            raise GraphError("circuit repeats an edge")
        size = self.k**self.n
        for i, (v, b) in enumerate(es):
            if not (0 <= v < size and 0 <= b < self.k):
                raise GraphError(f"edge ({v}, {b}) not in G_{self.n}^{self.k}")
            if head(self.k, self.n, v, b) != es[(i + 1) % len(es)][0]:
                raise GraphError("circuit edges are not head-to-tail")

    def __len__(self) -> int:
        return len(self.edges)

    def as_subgraph(self) -> DeBruijnSubgraph:
        return DeBruijnSubgraph(self.k, self.n, self.edges)


@dataclass(frozen=True)
class Factor:
    """Vertex-disjoint cycles covering every vertex of G_n^k."""

    k: int
    n: int
    cycles: tuple[Cycle, ...]

    def __post_init__(self) -> None:
        cycles = tuple(self.cycles)
        object.__setattr__(self, "cycles", cycles)
        seen: set[int] = set()
        for c in cycles:
            if (c.k, c.n) != (self.k, self.n):
                raise GraphError("cycle from a different de Bruijn graph")
            if seen.intersection(c.vertices):
                raise GraphError("factor cycles are not vertex-disjoint")
            seen.update(c.vertices)
        if len(seen) != self.k**self.n:
            raise GraphError("factor does not cover every vertex")

    def edges(self) -> list[Edge]:
        return [e for c in self.cycles for e in c.edges()]

    def as_subgraph(self) -> DeBruijnSubgraph:
        return DeBruijnSubgraph(self.k, self.n, self.edges())


def is_balanced(g: DeBruijnSubgraph) -> bool:
    return g.out_degrees() == g.in_degrees()


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def component_labels(g: DeBruijnSubgraph) -> list[int]:
    """Weak-component representative per vertex; -1 for vertices without edges."""
    parent = list(range(g.num_vertices))
    touched = [False] * g.num_vertices
    for v, b in g.edges():
        u = g.head(v, b)
        touched[v] = touched[u] = True
        rv, ru = _find(parent, v), _find(parent, u)
        if rv != ru:
            parent[max(rv, ru)] = min(rv, ru)
    return [_find(parent, v) if touched[v] else -1 for v in range(g.num_vertices)]


def edge_components(g: DeBruijnSubgraph) -> list[list[int]]:
    """Weakly connected components of the edge support, smallest vertex first."""
    groups: dict[int, list[int]] = {}
    for v, label in enumerate(component_labels(g)):
        if label >= 0:
            groups.setdefault(label, []).append(v)
    return [groups[label] for label in sorted(groups)]


def eulerian_circuit(g: DeBruijnSubgraph) -> Circuit:
    """Hierholzer's algorithm from the smallest vertex, lowest letter first."""
    if not is_balanced(g):
        raise NotBalancedError("indegree differs from outdegree at some vertex")
    components = edge_components(g)
    if not components:
        raise EmptyGraphError("graph has no edges")
    if len(components) > 1:
        raise NotConnectedError(f"edge support has {len(components)} components")

    remaining = list(g.masks)
    start = components[0][0]
    stack: list[tuple[int, Edge | None]] = [(start, None)]
    reversed_edges: list[Edge] = []
    while stack:
        v, arrived_by = stack[-1]
        mask = remaining[v]
        if mask:
            b = (mask & -mask).bit_length() - 1
            remaining[v] = mask & (mask - 1)
            stack.append((g.head(v, b), (v, b)))
        else:
            stack.pop()
            if arrived_by is not None:
                reversed_edges.append(arrived_by)
    reversed_edges.reverse()
    return Circuit(g.k, g.n, tuple(reversed_edges))


def lift(circuit: Circuit) -> Cycle:
    """Map each edge (at, tb) of G_n^k to the vertex atb of G_{n+1}^k."""
    k = circuit.k
    return Cycle(k, circuit.n + 1, tuple(v * k + b for v, b in circuit.edges))


def project(cycle: Cycle) -> DeBruijnSubgraph:
    """Inverse of :func:`lift`: the edges of G_{n-1}^k matching the cycle's vertices."""
    k = cycle.k
    return DeBruijnSubgraph(k, cycle.n - 1, ((v // k, v % k) for v in cycle.vertices))


def spell_cycle(cycle: Cycle) -> CircularWord:
    """Word whose i-th letter is the first letter of the i-th vertex."""
    step = cycle.k ** (cycle.n - 1)
    return CircularWord(tuple(v // step for v in cycle.vertices), cycle.k)


def spell_circuit(circuit: Circuit) -> CircularWord:
    """Same word as ``spell_cycle(lift(circuit))``.

    The edge labels alone give a rotation of this word by n positions.
    """
    k, step = circuit.k, circuit.k**circuit.n
    return CircularWord(tuple((v * k + b) // step for v, b in circuit.edges), k)


def spell(walk: Cycle | Circuit) -> CircularWord:
    if isinstance(walk, Cycle):
        return spell_cycle(walk)
    return spell_circuit(walk)


def cycles_of(g: DeBruijnSubgraph) -> list[Cycle]:
    """Split a graph with in- and outdegree 1 on its support into its cycles."""
    if g.n < 1:
        raise GraphError("cycles are only represented for order >= 1")
    nxt: dict[int, int] = {}
    for v, b in g.edges():
        if v in nxt:
            raise GraphError(f"vertex {v} has outdegree > 1")
        nxt[v] = g.head(v, b)
    if sorted(nxt.values()) != sorted(nxt):
        raise GraphError("graph is not a disjoint union of cycles")
    cycles = []
    seen: set[int] = set()
    for start in sorted(nxt):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        v = nxt[start]
        while v != start:
            walk.append(v)
            seen.add(v)
            v = nxt[v]
        cycles.append(Cycle(g.k, g.n, tuple(walk)))
    return cycles


def to_dot(g: DeBruijnSubgraph, name: str = "G", all_vertices: bool = True) -> str:
    """DOT source with base-k vertex names and letter-labelled edges."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    vertices = range(g.num_vertices) if all_vertices else g.support()
    for v in vertices:
        lines.append(f'  v{v} [label="{vertex_label(g.k, g.n, v)}"];')
    for v, b in g.edges():
        lines.append(f'  v{v} -> v{g.head(v, b)} [label="{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Constructive existence of generalized de Bruijn words of every length.

A word of length N with r = floor(log_k N) is built as an Eulerian circuit of a
connected balanced subgraph of G_r^k that has N edges and touches every vertex.
"""

from __future__ import annotations

from gdebruijn.graph import (
    Cycle,
    DeBruijnSubgraph,
    Factor,
    GraphError,
    component_labels,
    cycles_of,
    edge_components,
    eulerian_circuit,
    is_balanced,
    lift,
    project,
    spell_circuit,
)
from gdebruijn.words import CircularWord, ilog


def complete_to_factor(cycle: Cycle) -> Factor:
    """Extend ``cycle`` with vertex-disjoint cycles until every vertex is covered."""
    k, n = cycle.k, cycle.n
    if n == 1:
        covered = set(cycle.vertices)
        loops = [Cycle(k, 1, (a,)) for a in range(k) if a not in covered]
        return Factor(k, 1, (cycle, *loops))

    rest = project(cycle).complement()
    cycles = [cycle]
    for component in edge_components(rest):
        part = DeBruijnSubgraph(k, n - 1)
        for v in component:
            part.masks[v] = rest.masks[v]
        cycles.append(lift(eulerian_circuit(part)))
    return Factor(k, n, tuple(cycles))


def _perfect_matching(g: DeBruijnSubgraph) -> list[int]:
    """Letter chosen at each vertex so every vertex gets exactly one in-edge.

    Kuhn's augmenting paths on the out-copy/in-copy bipartite graph, scanning
    vertices and letters in increasing order.
    """
    size, k = g.num_vertices, g.k
    matched_tail = [-1] * size
    choice = [-1] * size
    for root in range(size):
        visited = bytearray(size)
        # each level: [tail vertex, next letter to try, letter taken, head reached]
        stack = [[root, 0, -1, -1]]
        augmented = False
        while stack and not augmented:
            level = stack[-1]
            v = level[0]
            mask = g.masks[v]
            advanced = False
            while level[1] < k:
                b = level[1]
                level[1] += 1
                if not mask >> b & 1:
                    continue
                u = g.head(v, b)
                if visited[u]:
                    continue
                visited[u] = 1
                level[2], level[3] = b, u
                if matched_tail[u] == -1:
                    for tail, _, letter, reached in stack:
                        matched_tail[reached] = tail
                        choice[tail] = letter
                    augmented = True
                else:
                    stack.append([matched_tail[u], 0, -1, -1])
                advanced = True
                break
            if not advanced:
                stack.pop()
        if not augmented:
            raise GraphError(f"no perfect matching covers vertex {root}")
    return choice


def petersen_factorize(g: DeBruijnSubgraph, degree: int) -> list[Factor]:
    """Partition a graph with in- and outdegree ``degree`` everywhere into factors."""
    if g.n < 1:
        raise GraphError("factorization needs order >= 1")
    outs, ins = g.out_degrees(), g.in_degrees()
    if any(d != degree for d in outs) or any(d != degree for d in ins):
        raise GraphError(f"graph is not regular with in/outdegree {degree}")

    remaining = g.copy()
    factors = []
    for _ in range(degree):
        choice = _perfect_matching(remaining)
        matching = DeBruijnSubgraph(g.k, g.n, enumerate(choice))
        for v, b in enumerate(choice):
            remaining.remove_edge(v, b)
        factors.append(Factor(g.k, g.n, tuple(cycles_of(matching))))
    return factors


def connect_components(g: DeBruijnSubgraph) -> DeBruijnSubgraph:
    """Swap edge pairs until the graph is connected; all degrees are kept."""
    if not is_balanced(g):
        raise GraphError("graph is not balanced")
    if any(mask == 0 for mask in g.masks):
        raise GraphError("every vertex needs indegree and outdegree >= 1")

    h = g.copy()
    k, n = h.k, h.n
    if n == 0:
        return h
    step = k ** (n - 1)
    labels = component_labels(h)
    count = len(set(labels))
    while count > 1:
        swap = _find_swap(h, labels, step)
        if swap is None:
            raise AssertionError("disconnected graph admits no edge swap")
        at, tb, t, b, c, d = swap
        dt = d * step + t
        h.remove_edge(at, c)
        h.remove_edge(dt, b)
        h.add_edge(at, b)
        h.add_edge(dt, c)
        old, new = labels[tb], labels[at]
        labels = [new if label == old else label for label in labels]
        count -= 1
    return h


def _find_swap(h: DeBruijnSubgraph, labels: list[int], step: int):
    k = h.k
    for t in range(step):
        for a in range(k):
            at = a * step + t
            for b in range(k):
                tb = t * k + b
                if labels[at] == labels[tb]:
                    continue
                mask = h.masks[at]
                c = (mask & -mask).bit_length() - 1
                d = next(x for x in range(k) if h.masks[x * step + t] >> b & 1)
                return at, tb, t, b, c, d
    return None


def _cycle_of_length(N: int, n: int, k: int) -> Cycle:
    if n == 1:
        return Cycle(k, 1, tuple(range(N)))
    return lift(eulerian_circuit(construct_subgraph(N, n - 1, k)))


def construct_subgraph(N: int, n: int, k: int) -> DeBruijnSubgraph:
    """Connected balanced subgraph of G_n^k with N edges on min(k^n, N) vertices."""
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    size = k**n
    if not 1 <= N <= size * k:
        raise ValueError(f"edge count {N} outside 1..{size * k}")

    if N <= size:
        return _cycle_of_length(N, n, k).as_subgraph()

    j, rest = divmod(N - 1, size)
    rest += 1
    cycle = _cycle_of_length(rest, n, k)
    first = complete_to_factor(cycle)
    others = petersen_factorize(first.as_subgraph().complement(), k - 1)
    h = cycle.as_subgraph()
    for factor in others[:j]:
        h = h.union(factor.as_subgraph())
    return connect_components(h)


def generate(N: int, k: int = 2) -> CircularWord:
    """A generalized de Bruijn word of length N over k letters, deterministically."""
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if N < 1:
        raise ValueError(f"length must be >= 1, got {N}")
    r = ilog(N, k)
    if r == 0:
        return CircularWord(tuple(range(N)), k)
    return spell_circuit(eulerian_circuit(construct_subgraph(N, r, k)))

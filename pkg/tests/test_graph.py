import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gdebruijn.construct import construct_subgraph
from gdebruijn.graph import (
    Circuit,
    Cycle,
    DeBruijnSubgraph,
    EmptyGraphError,
    GraphError,
    NotBalancedError,
    NotConnectedError,
    edge_components,
    eulerian_circuit,
    is_balanced,
    lift,
    predecessors,
    spell,
    spell_circuit,
    spell_cycle,
    successors,
    to_dot,
    vertex_label,
)
from gdebruijn.words import canonical_rotation, circular_factors, gamma, parse_word


def word_subgraph(text, n):
    """Edges of G_n^2 given by the circular length-(n+1) windows of a binary word."""
    letters = parse_word(text).letters
    doubled = letters * 2
    edges = []
    for j in range(len(letters)):
        v = 0
        for a in doubled[j : j + n]:
            v = 2 * v + a
        edges.append((v, doubled[j + n]))
    return DeBruijnSubgraph(2, n, edges)


def test_successors_match_figure():
    heads = {vertex_label(2, 3, (v * 2 + b) % 8) for v, b in successors(2, 3, 0b100)}
    assert heads == {"000", "001"}


def test_successors_small_orders():
    assert [(v * 2 + b) % 2 for v, b in successors(2, 1, 0)] == [0, 1]
    assert successors(2, 0, 0) == [(0, 0), (0, 1)]
    assert predecessors(2, 0, 0) == [(0, 0), (0, 1)]
    with pytest.raises(GraphError):
        successors(2, 2, 4)


@pytest.mark.parametrize("k, n", [(2, 1), (2, 3), (3, 2), (4, 2), (5, 1)])
def test_successors_and_predecessors_consistent(k, n):
    size = k**n
    forward = {(v, (v * k + b) % size) for v in range(size) for _, b in successors(k, n, v)}
    backward = {(t, u) for u in range(size) for t, _ in predecessors(k, n, u)}
    assert forward == backward
    assert len(forward) == k * size


def test_balance_and_components():
    full = DeBruijnSubgraph.full(2, 3)
    assert is_balanced(full) and len(edge_components(full)) == 1

    figure = word_subgraph("10011110000", 3)
    assert figure.edge_count() == 11
    assert is_balanced(figure) and len(edge_components(figure)) == 1
    assert 0b101 not in figure.support()

    loops = DeBruijnSubgraph(2, 1, [(0, 0), (1, 1)])
    assert is_balanced(loops) and edge_components(loops) == [[0], [1]]

    assert not is_balanced(DeBruijnSubgraph(2, 2, [(0, 1)]))


def test_duplicate_and_missing_edges_rejected():
    g = DeBruijnSubgraph(2, 2, [(1, 0)])
    with pytest.raises(GraphError):
        g.add_edge(1, 0)
    with pytest.raises(GraphError):
        g.remove_edge(2, 1)
    with pytest.raises(GraphError):
        g.add_edge(4, 0)


def test_eulerian_circuit_errors():
    with pytest.raises(NotBalancedError):
        eulerian_circuit(DeBruijnSubgraph(2, 2, [(0, 1)]))
    with pytest.raises(NotConnectedError):
        eulerian_circuit(DeBruijnSubgraph(2, 1, [(0, 0), (1, 1)]))
    with pytest.raises(EmptyGraphError):
        eulerian_circuit(DeBruijnSubgraph(2, 2))


def closed_trails(g):
    """Every Eulerian circuit of g starting at its smallest support vertex, by brute force."""
    edges = sorted(g.edge_set())
    start = min(v for v, _ in edges)
    found = []
    for order in itertools.permutations(edges):
        if order[0][0] != start:
            continue
        if all(g.head(*order[i]) == order[(i + 1) % len(order)][0] for i in range(len(order))):
            found.append(order)
    return found


def test_eulerian_circuit_of_g12_spells_0011():
    g = DeBruijnSubgraph.full(2, 1)
    trails = closed_trails(g)
    assert trails
    assert {canonical_rotation(spell(Circuit(2, 1, t))).letters for t in trails} == {(0, 0, 1, 1)}
    circuit = eulerian_circuit(g)
    assert len(circuit) == 4
    assert canonical_rotation(spell(circuit)).letters == (0, 0, 1, 1)


def test_eulerian_circuit_single_loop():
    circuit = eulerian_circuit(DeBruijnSubgraph(2, 1, [(0, 0)]))
    assert circuit.edges == ((0, 0),)
    assert str(spell(circuit)) == "0"


def test_eulerian_circuit_of_figure_subgraph():
    g = word_subgraph("10011110000", 3)
    word = spell(eulerian_circuit(g))
    assert canonical_rotation(word) == canonical_rotation(parse_word("10011110000"))
    assert circular_factors(word, 4) == circular_factors(parse_word("10011110000"), 4)


def test_eulerian_circuit_is_deterministic_and_complete():
    g = DeBruijnSubgraph.full(3, 2)
    first, second = eulerian_circuit(g), eulerian_circuit(g.copy())
    assert first == second
    assert sorted(first.edges) == sorted(g.edges())


def test_lift_and_spell_examples():
    circuit = Circuit(2, 1, ((0, 0), (0, 1), (1, 1), (1, 0)))
    cycle = lift(circuit)
    assert cycle.vertices == (0b00, 0b01, 0b11, 0b10)
    assert str(spell_cycle(cycle)) == "0011"
    assert str(spell(Cycle(2, 1, (0,)))) == "0"
    with pytest.raises(GraphError):
        Circuit(2, 1, ((0, 0), (0, 0)))
    with pytest.raises(GraphError):
        Cycle(2, 2, (0, 3))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)]), st.data())
def test_eulerian_spelling_bridges_to_factor_counts(kn, data):
    k, n = kn
    size = k**n
    N = data.draw(st.integers(size, size * k))
    g = construct_subgraph(N, n, k)
    circuit = eulerian_circuit(g)
    assert sorted(circuit.edges) == sorted(g.edges())
    word = spell(circuit)
    assert spell_cycle(lift(circuit)) == spell_circuit(circuit)
    labels = tuple(b for _, b in circuit.edges)
    assert canonical_rotation(word).letters == canonical_rotation(type(word)(labels, k)).letters
    assert gamma(word, n) == size
    assert gamma(word, n + 1) == N


def test_dot_export():
    dot = to_dot(DeBruijnSubgraph.full(2, 3))
    assert dot.startswith("digraph")
    assert dot.count("->") == 16
    assert 'label="100"' in dot and "v4 -> v0" in dot
    small = to_dot(DeBruijnSubgraph.full(2, 1))
    assert small.count("[label=") == 6

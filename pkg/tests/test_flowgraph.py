import random

import pydot
import pytest

from lkflow import flowgraph as FG
from lkflow import gens
from lkflow import kernel as K
from lkflow import syntax as S
from lkflow.kernel import check
from lkflow.syntax import Sign

import corpus
from corpus import f, pr


def degree(g, v):
    return g.graph.in_degree(v) + g.graph.out_degree(v)


def test_axiom_example_three_edges():
    g = FG.build(K.axiom(f('p \\/ (~p /\\ q)')))
    assert len(g.edges) == 3
    assert all(o == 'axiom' for _, _, o in g.edges)
    for u, v, _ in g.edges:
        assert g.sign(u) is Sign.NEGATIVE and g.sign(v) is Sign.POSITIVE


def test_single_axiom_edge_direction():
    g = FG.build(K.axiom(S.Prop('p')))
    (u, v, o), = g.edges
    assert (u.side, v.side, o) == ('L', 'R', 'axiom')


def test_weak_atoms_are_isolated():
    g = FG.build(K.axiom(S.Prop('p'), (S.Prop('q'),), (S.Prop('r'),)))
    assert len(g.edges) == 1
    iso = [v for v in g.graph.nodes if degree(g, v) == 0]
    assert sorted(S.print_formula(g.atom(v)) for v in iso) == ['q', 'r']


def test_cut_atoms_not_linked_to_endsequent():
    p = corpus.lemma_fragment()
    g = FG.build(p)
    cut_edges = [(u, v) for u, v, o in g.edges if o == 'cut']
    assert len(cut_edges) == 2  # the two atoms of p \/ ~p
    for u, v in cut_edges:
        assert g.sign(u) is Sign.POSITIVE and g.sign(v) is Sign.NEGATIVE
    root_atoms = {S.print_formula(g.atom(v)) for v in g.endsequent_vertices()}
    assert root_atoms == {'q'}
    # p-vertices never reach the endsequent
    und = g.graph.to_undirected()
    import networkx as nx
    for u, _ in cut_edges:
        comp = nx.node_connected_component(und, u)
        assert not any(v.node == () for v in comp)


def _check_laws(g):
    for u, v, o in g.edges:
        same = g.sign(u) is g.sign(v)
        if o in ('axiom', 'cut'):
            assert not same
        else:
            assert same
    p = g.proof
    # variant links at non-logical axiom leaves may fan out as well
    allowed = {path for path, n in K.iter_nodes(p)
               if n.rule in K.CONTRACTION_RULES or (n.rule == 'axiom' and n.axiom is not None)}
    for v in g.graph.nodes:
        if degree(g, v) > 2:
            assert v.node in allowed


def test_sign_and_degree_laws_corpus():
    for _, p in corpus.cut_corpus():
        _check_laws(FG.build(p))


def test_sign_and_degree_laws_feasibility():
    for n in range(4):
        _check_laws(FG.build(gens.feasibility_proof(n)))


def test_cut_free_and_contraction_free_are_acyclic():
    from lkflow.cutelim import eliminate_cuts
    for _, p in corpus.cut_corpus():
        q, _ = eliminate_cuts(p)
        assert FG.find_cycles(FG.build(q)).count == 0
        if K.metrics(p).contractions == 0:
            assert FG.find_cycles(FG.build(p)).count == 0


def test_feasibility_cycles_grow():
    counts = [FG.cycle_count(FG.build(gens.feasibility_proof(n)))[0] for n in (1, 2, 3, 4)]
    assert counts == [0, 4, 12, 28]


def test_unoriented_counts():
    counts = [FG.cycle_count(FG.build(gens.feasibility_proof(n)), 'unoriented')[0] for n in (1, 2)]
    assert counts == [1, 10]


def test_cycle_limit():
    g = FG.build(gens.feasibility_proof(3))
    c = FG.find_cycles(g, 'oriented', limit=5)
    assert c.count == 5 and not c.exact


def test_cycles_are_cycles():
    g = FG.build(gens.feasibility_proof(2))
    for cyc in FG.find_cycles(g).cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert g.graph.has_edge(a, b)


def test_axiom_links_none_mode():
    p = gens.feasibility_proof(2)
    g = FG.build(p, axiom_links='none')
    full = FG.build(p)
    count = lambda h: sum(o == 'axiom' for _, _, o in h.edges)
    assert count(g) < count(full)
    assert FG.cycle_count(g)[0] == 0
    with pytest.raises(ValueError):
        FG.build(gens.feasibility_proof(0), axiom_links='all')


def test_components_q_connected():
    p = pr('p \\/ ~p |- q \\/ ~q')
    g = FG.build(p)
    comps = FG.components_by_variable(g)
    q_root = [v for v in g.endsequent_vertices() if S.print_formula(g.atom(v)) == 'q']
    assert len(q_root) == 2
    assert any(set(q_root) <= c.vertices for c in comps['q'])


def test_rename_p_component():
    p = pr('p \\/ ~p |- q \\/ ~q')
    g = FG.build(p)
    for comp in FG.components_by_variable(g)['p']:
        r = FG.rename_component(p, comp, 'p_new')
        assert check(r)


def test_renaming_soundness_random():
    rng = random.Random(4)
    for _, p in corpus.valid_sequents(40, seed=5):
        g = FG.build(p)
        comps = FG.components(g)
        comp = rng.choice(comps)
        assert check(FG.rename_component(p, comp, 'fresh_var'))


def test_single_axiom_one_component():
    assert len(FG.components(FG.build(K.axiom(S.Prop('p'))))) == 1


def test_dot_output():
    dot = FG.to_dot(FG.build(K.axiom(S.Prop('p'), (S.Prop('q'),))))
    assert dot.startswith('digraph flow {')
    assert sum('->' in line for line in dot.splitlines()) == 1
    assert 'label="root:L:0:e"' in dot


def test_dot_without_edges():
    g = FG.build(K.axiom(S.Prop('p')))
    g.graph.remove_edges_from(list(g.graph.edges))
    dot = FG.to_dot(g)
    assert '->' not in dot and dot.count('[label=') == 2


def test_dot_parses():
    dot = FG.to_dot(FG.build(gens.feasibility_proof(1)))
    graphs = pydot.graph_from_dot_data(dot)
    assert len(graphs) == 1
    g = graphs[0]
    assert len(g.get_edges()) == len(FG.build(gens.feasibility_proof(1)).edges)


def test_json_roundtrip():
    g = FG.build(gens.feasibility_proof(2))
    h = FG.from_json(FG.dumps_json(g))
    assert FG.dumps_json(h) == FG.dumps_json(g)
    assert FG.cycle_count(h) == FG.cycle_count(g)


def test_vertex_labels():
    p = gens.feasibility_proof(1)
    g = FG.build(p)
    for v in list(g.graph.nodes)[:200]:
        assert FG.vertex_at(p, FG.vertex_label(v)) == v
    with pytest.raises(FG.FlowGraphError):
        FG.from_json('{"vertices": [{"id": "bad"}], "edges": []}')

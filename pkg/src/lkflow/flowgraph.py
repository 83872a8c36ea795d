"""Logical flow graphs.

Vertices are the occurrences of atomic formulas in the sequents of a proof;
edges follow those occurrences through the rules.  A vertex is identified by
``(node_path, side, index, formula_path)``: the proof node, the cedent, the
position of the formula in it and the path from the formula's root to the
atom.

Orientation: axiom edges run from the negative to the positive atom, cut
edges from the positive copy to the negative one, and every other edge runs
upward when its atoms are negative and downward when they are positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx

from . import syntax as S
from .kernel import CONTRACTION_RULES, Proof, iter_nodes, node_at
from .syntax import Sign


class FlowVertex(NamedTuple):
    node: tuple
    side: str
    index: int
    path: tuple


class FlowGraphError(ValueError):
    pass


def _node_id(path):
    return '.'.join(map(str, path)) if path else 'root'


def vertex_label(v: FlowVertex) -> str:
    fp = '.'.join(map(str, v.path)) if v.path else 'e'
    return f'{_node_id(v.node)}:{v.side}:{v.index}:{fp}'


def occurrence_sign(formula, side, path) -> Sign:
    """Positive iff positive in the succedent or negative in the antecedent."""
    s = S.sign_at(formula, path)
    return s if side == 'R' else s.flip()


@dataclass
class FlowGraph:
    graph: nx.DiGraph
    proof: Proof

    @property
    def vertices(self):
        return list(self.graph.nodes)

    @property
    def edges(self):
        return [(u, v, d['origin']) for u, v, d in self.graph.edges(data=True)]

    def sign(self, v) -> Sign:
        return self.graph.nodes[v]['sign']

    def atom(self, v):
        return self.graph.nodes[v]['atom']

    def endsequent_vertices(self):
        return [v for v in self.graph.nodes if v.node == ()]


def build(p: Proof, axiom_links: str = 'variants') -> FlowGraph:
    """Flow graph of ``p``.

    Logical axioms link their two distinguished occurrences.  For a declared
    non-logical axiom, ``axiom_links='variants'`` links every antecedent atom
    to every succedent atom with the same relation symbol (negative ->
    positive, like a logical axiom whose terms differ); ``'none'`` leaves its
    atoms isolated.
    """
    if axiom_links not in ('variants', 'none'):
        raise ValueError(f'unknown axiom_links mode {axiom_links!r}')
    g = nx.DiGraph()
    for path, node in iter_nodes(p):
        for s in 'LR':
            for i, f in enumerate(node.conclusion.side(s)):
                for q in S.atom_paths(f):
                    g.add_node(FlowVertex(path, s, i, q), sign=occurrence_sign(f, s, q),
                               atom=S.subformula_at(f, q))
    for path, node in iter_nodes(p):
        _edges_at(g, path, node, axiom_links)
    return FlowGraph(g, p)


def _add(g, a, b, origin):
    if a not in g or b not in g:
        raise FlowGraphError(f'edge endpoint missing: {vertex_label(a)} -> {vertex_label(b)}')
    g.add_edge(a, b, origin=origin)


def _link_copies(g, fa, va, fb, vb, origin):
    """Edges between corresponding atoms of two copies of the same formula shape.

    Orientation: ``origin`` axiom goes negative -> positive, cut positive -> negative.
    """
    pa, pb = list(S.atom_paths(fa)), list(S.atom_paths(fb))
    if pa != pb:
        raise FlowGraphError('linked formulas differ in shape')
    for q in pa:
        a, b = va(q), vb(q)
        sa = g.nodes[a]['sign']
        if g.nodes[b]['sign'] is sa:
            raise FlowGraphError(f'{origin} edge between equal signs at {vertex_label(a)}')
        neg_first = origin == 'axiom'
        if (sa is Sign.NEGATIVE) == neg_first:
            _add(g, a, b, origin)
        else:
            _add(g, b, a, origin)


def _nonlogical_links(g, path, node):
    c = node.conclusion
    principal = set(node.principal)
    lefts = [FlowVertex(path, 'L', i, q) for i, f in enumerate(c.ant) if ('L', i) in principal
             for q in S.atom_paths(f)]
    rights = [FlowVertex(path, 'R', i, q) for i, f in enumerate(c.suc) if ('R', i) in principal
              for q in S.atom_paths(f)]
    for a in lefts:
        for b in rights:
            if _atom_name(g.nodes[a]['atom']) != _atom_name(g.nodes[b]['atom']):
                continue
            if g.nodes[a]['sign'] is g.nodes[b]['sign']:
                continue
            if g.nodes[a]['sign'] is Sign.NEGATIVE:
                _add(g, a, b, 'axiom')
            else:
                _add(g, b, a, 'axiom')


def _edges_at(g, path, node, axiom_links='variants'):
    c = node.conclusion
    if node.rule == 'axiom':
        if node.axiom is not None:
            if axiom_links == 'variants':
                _nonlogical_links(g, path, node)
            return
        if len(node.principal) != 2:
            return  # constant axioms have a single distinguished formula
        (sl, il), (sr, ir) = sorted(node.principal)
        fl, fr = c.side(sl)[il], c.side(sr)[ir]
        _link_copies(g, fl, lambda q: FlowVertex(path, sl, il, q),
                     fr, lambda q: FlowVertex(path, sr, ir, q), 'axiom')
        return
    if node.rule == 'cut':
        (k0, s0, i0), (k1, s1, i1) = node.aux
        f0 = node.premises[k0].conclusion.side(s0)[i0]
        f1 = node.premises[k1].conclusion.side(s1)[i1]
        _link_copies(g, f0, lambda q: FlowVertex(path + (k0,), s0, i0, q),
                     f1, lambda q: FlowVertex(path + (k1,), s1, i1, q), 'cut')
    principal = set(node.principal)
    for o, srcs in node.ancestry.items():
        s, i = o
        f = c.side(s)[i]
        if o in principal:
            if node.rule in CONTRACTION_RULES:
                slots = [((), src) for src in srcs]
                origin = 'contraction'
            else:
                slots = [((j,), src) for j, src in enumerate(node.aux)]
                origin = 'logical'
        else:
            slots = [((), srcs[0])]
            origin = 'side'
        for prefix, (k, ps, pi) in slots:
            pf = node.premises[k].conclusion.side(ps)[pi]
            for q in S.atom_paths(pf):
                lower = FlowVertex(path, s, i, prefix + q)
                upper = FlowVertex(path + (k,), ps, pi, q)
                if g.nodes[lower]['sign'] is not g.nodes[upper]['sign']:
                    raise FlowGraphError(f'sign mismatch at {vertex_label(lower)}')
                if g.nodes[lower]['sign'] is Sign.NEGATIVE:
                    _add(g, lower, upper, origin)
                else:
                    _add(g, upper, lower, origin)


# ------------------------------------------------------------------- cycles

@dataclass
class CycleCensus:
    cycles: list
    exact: bool

    @property
    def count(self):
        return len(self.cycles)


def find_cycles(fg: FlowGraph, mode: str = 'oriented', limit: int = 100_000) -> CycleCensus:
    """Simple cycles, directed (``oriented``) or of the underlying undirected graph.

    At most ``limit`` cycles are collected; ``exact`` tells whether the census
    is complete.
    """
    if mode == 'oriented':
        g = fg.graph
    elif mode == 'unoriented':
        g = nx.Graph(fg.graph)
    else:
        raise ValueError(f'unknown cycle mode {mode!r}')
    out = []
    # vertices of degree < 2 lie on no cycle; restrict to the 2-core first
    core = nx.k_core(g.to_undirected(as_view=True) if mode == 'oriented' else g, 2)
    sub = g.subgraph(core.nodes)
    if mode == 'oriented':
        sccs = [c for c in nx.strongly_connected_components(sub) if len(c) > 1]
    else:
        sccs = [c for c in nx.biconnected_components(sub) if len(c) > 2]
    for comp in sorted(sccs, key=lambda c: min(map(_sort_key, c))):
        for cyc in nx.simple_cycles(sub.subgraph(comp)):
            if len(out) >= limit:
                return CycleCensus(out, False)
            out.append(_canonical(cyc))
    return CycleCensus(out, True)


def cycle_count(fg: FlowGraph, mode: str = 'oriented', limit: int = 100_000):
    c = find_cycles(fg, mode, limit)
    return c.count, c.exact


def _sort_key(v):
    return (v.node, v.side, v.index, v.path)


def _canonical(cyc):
    k = min(range(len(cyc)), key=lambda j: _sort_key(cyc[j]))
    return cyc[k:] + cyc[:k]


# --------------------------------------------------------------- components

@dataclass(frozen=True)
class Component:
    name: str
    vertices: frozenset

    def __len__(self):
        return len(self.vertices)


def _atom_name(atom):
    return atom.name if isinstance(atom, S.Prop) else atom.rel


def components(fg: FlowGraph) -> list:
    """Connected components of the undirected graph, labelled by their variable.

    Sorted by variable name, then by the first vertex.
    """
    out = []
    for comp in nx.connected_components(fg.graph.to_undirected(as_view=True)):
        names = {_atom_name(fg.atom(v)) for v in comp}
        if len(names) != 1:
            raise FlowGraphError(f'component mixes relation symbols {sorted(names)}')
        out.append(Component(names.pop(), frozenset(comp)))
    out.sort(key=lambda c: (c.name, min(map(_sort_key, c.vertices))))
    return out


def components_by_variable(fg: FlowGraph) -> dict:
    out = {}
    for c in components(fg):
        out.setdefault(c.name, []).append(c)
    return out


def rename_component(p: Proof, comp: Component, new_name: str) -> Proof:
    """Rename every atom occurrence of a propositional component to ``new_name``."""
    by_node = {}
    for v in comp.vertices:
        by_node.setdefault(v.node, []).append(v)
    new_atom = S.Prop(new_name)

    def go(node, path):
        prems = tuple(go(q, path + (k,)) for k, q in enumerate(node.premises))
        seq = node.conclusion
        hits = by_node.get(path)
        if hits:
            ant, suc = list(seq.ant), list(seq.suc)
            for v in hits:
                lst = ant if v.side == 'L' else suc
                if not isinstance(S.subformula_at(lst[v.index], v.path), S.Prop):
                    raise FlowGraphError('renaming needs propositional atoms')
                lst[v.index] = S.replace_at(lst[v.index], v.path, new_atom)
            seq = type(seq)(tuple(ant), tuple(suc))
        return Proof(node.rule, seq, prems, node.principal, node.aux, node.ancestry,
                     node.witness, node.eigen, node.axiom)

    return go(p, ())


# ------------------------------------------------------------------ export

def to_dot(fg: FlowGraph) -> str:
    lines = ['digraph flow {']
    ids = {v: f'v{i}' for i, v in enumerate(sorted(fg.graph.nodes, key=_sort_key))}
    for v, vid in ids.items():
        atom = S.print_formula(fg.atom(v)).replace('"', "'")
        lines.append(f'  {vid} [label="{vertex_label(v)}", atom="{atom}", sign="{fg.sign(v)}"];')
    for u, w, d in sorted(fg.graph.edges(data=True), key=lambda e: (_sort_key(e[0]), _sort_key(e[1]))):
        lines.append(f'  {ids[u]} -> {ids[w]} [origin="{d["origin"]}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def to_json(fg: FlowGraph) -> dict:
    verts = sorted(fg.graph.nodes, key=_sort_key)
    return {
        'vertices': [dict(id=vertex_label(v), atom=S.print_formula(fg.atom(v)),
                          sign=str(fg.sign(v))) for v in verts],
        'edges': [dict(source=vertex_label(u), target=vertex_label(w), origin=d['origin'])
                  for u, w, d in sorted(fg.graph.edges(data=True),
                                        key=lambda e: (_sort_key(e[0]), _sort_key(e[1])))],
    }


def dumps_json(fg: FlowGraph) -> str:
    return json.dumps(to_json(fg), indent=1, sort_keys=True) + '\n'


def vertex_at(p: Proof, label: str) -> FlowVertex:
    """Inverse of :func:`vertex_label` (validated against ``p``)."""
    v = _parse_label(label)
    f = node_at(p, v.node).conclusion.side(v.side)[v.index]
    if not S.is_atomic(S.subformula_at(f, v.path)):
        raise FlowGraphError(f'{label} is not an atom occurrence')
    return v


def _parse_label(label: str) -> FlowVertex:
    node_s, side, idx, fp = label.split(':')
    node = () if node_s == 'root' else tuple(int(x) for x in node_s.split('.'))
    path = () if fp == 'e' else tuple(int(x) for x in fp.split('.'))
    return FlowVertex(node, side, int(idx), path)


def from_json(data) -> FlowGraph:
    """Rebuild a graph written by :func:`to_json` (the proof itself is not kept)."""
    if isinstance(data, str):
        data = json.loads(data)
    g = nx.DiGraph()
    try:
        for d in data['vertices']:
            g.add_node(_parse_label(d['id']), sign=Sign(d['sign']), atom=S.parse_formula(d['atom']))
        for d in data['edges']:
            _add(g, _parse_label(d['source']), _parse_label(d['target']), d['origin'])
    except (KeyError, ValueError, TypeError) as exc:
        raise FlowGraphError(f'bad flow graph JSON: {exc}') from exc
    return FlowGraph(g, None)

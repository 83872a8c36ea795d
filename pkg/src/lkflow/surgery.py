"""Structural edits on proofs that keep every node valid.

These are the admissible operations the rest of the toolkit leans on:
weakening (pushed up to an axiom's side formulas), erasing a weak
occurrence, renaming eigenvariables and substituting terms for free
variables throughout a subproof.
"""

from __future__ import annotations

import itertools

from . import syntax as S
from .kernel import (CONTRACTION_RULES, Proof, Sequent, _copy, iter_nodes, reorder,
                     trace_leaves)


def rebuild_node(node: Proof, premises, maps, extra=()):
    """Rebuild ``node`` over new premises.

    ``maps[k]`` sends each old occurrence ``(s, i)`` of premise ``k`` to its
    new position; occurrences missing from the map were erased, and context
    occurrences descending from them are dropped from the conclusion.
    ``extra`` lists ``(side, formula, (k, s, i))`` context occurrences to
    append.  Returns ``(new_node, conclusion_map)``.
    """
    ant, suc, anc, conc_map = [], [], {}, {}
    principal = set(node.principal)
    for s in 'LR':
        out = ant if s == 'L' else suc
        for i, f in enumerate(node.conclusion.side(s)):
            o = (s, i)
            srcs = node.ancestry[o]
            if o in principal:
                new_srcs = tuple((k,) + maps[k][(ss, ii)] for k, ss, ii in srcs)
            else:
                k, ss, ii = srcs[0]
                if (ss, ii) not in maps[k]:
                    continue
                new_srcs = ((k,) + maps[k][(ss, ii)],)
            conc_map[o] = (s, len(out))
            anc[(s, len(out))] = new_srcs
            out.append(f)
    for s, f, src in extra:
        out = ant if s == 'L' else suc
        anc[(s, len(out))] = (src,)
        out.append(f)
    aux = tuple((k,) + maps[k][(s, i)] for k, s, i in node.aux)
    new = _copy(node, conclusion=Sequent(tuple(ant), tuple(suc)), premises=tuple(premises),
                principal=tuple(conc_map[o] for o in node.principal), aux=aux, ancestry=anc)
    return new, conc_map


def _identity_map(seq: Sequent):
    return {o: o for o in seq.occurrences()}


def _drop_map(seq: Sequent, dropped):
    m = {}
    for s in 'LR':
        j = 0
        for i in range(len(seq.side(s))):
            if (s, i) in dropped:
                continue
            m[(s, i)] = (s, j)
            j += 1
    return m


# ---------------------------------------------------------------- weak erase

def is_weak(p: Proof, occ) -> bool:
    """True iff every ancestor leaf of ``occ`` is an axiom side formula."""
    for _, o, node in trace_leaves(p, occ):
        if node.rule != 'axiom' or o in node.principal:
            return False
    return True


def erase_weak(p: Proof, occ) -> Proof:
    """Remove a weak occurrence from the conclusion of ``p`` and its whole ancestry."""
    new, _ = _erase(p, {occ})
    return new


def _erase(p: Proof, occs):
    """Erase a set of weak occurrences; returns (proof, old->new conclusion map)."""
    if not occs:
        return p, _identity_map(p.conclusion)
    if p.rule == 'axiom':
        keep = _drop_map(p.conclusion, occs)
        ant = tuple(f for i, f in enumerate(p.conclusion.ant) if ('L', i) not in occs)
        suc = tuple(f for i, f in enumerate(p.conclusion.suc) if ('R', i) not in occs)
        if any(o in occs for o in p.principal):
            raise ValueError('cannot erase a principal axiom occurrence')
        new = _copy(p, conclusion=Sequent(ant, suc), principal=tuple(keep[o] for o in p.principal))
        return new, keep
    per_prem = [set() for _ in p.premises]
    contracted = set()
    for o in occs:
        if o in p.principal:
            if p.rule not in CONTRACTION_RULES:
                raise ValueError(f'occurrence {o} is principal in {p.rule}; not weak')
            contracted.add(o)
        for k, s, i in p.ancestry[o]:
            per_prem[k].add((s, i))
    results = [_erase(q, per_prem[k]) for k, q in enumerate(p.premises)]
    prems = [r[0] for r in results]
    maps = [r[1] for r in results]
    if contracted:
        # the contraction itself disappears; its premise is the new subproof
        (q,) = prems
        target = Sequent(
            tuple(f for i, f in enumerate(p.conclusion.ant) if ('L', i) not in occs),
            tuple(f for i, f in enumerate(p.conclusion.suc) if ('R', i) not in occs))
        return reorder(q, target), _drop_map(p.conclusion, occs)
    return rebuild_node(p, prems, maps)


# ------------------------------------------------------------------ weakening

def weaken(p: Proof, ant=(), suc=()) -> Proof:
    """Add side formulas to the conclusion of ``p``.

    The new occurrences are appended (antecedent and succedent) and threaded up
    the leftmost branch to an axiom, renaming eigenvariables that would clash.
    """
    ant, suc = tuple(ant), tuple(suc)
    if not ant and not suc:
        return p
    fv = frozenset()
    for f in ant + suc:
        fv |= S.free_vars(f)
    return _weaken(p, ant, suc, fv)


def _weaken(p, ant, suc, fv):
    if p.rule == 'axiom':
        c = p.conclusion
        return _copy(p, conclusion=Sequent(c.ant + ant, c.suc + suc))
    if p.eigen is not None and p.eigen in fv:
        p = refresh_eigen(p, avoid=fv)
    k = 0
    q = p.premises[k]
    nq = _weaken(q, ant, suc, fv)
    prems = list(p.premises)
    prems[k] = nq
    maps = [_identity_map(x.conclusion) for x in p.premises]
    la, ls = len(q.conclusion.ant), len(q.conclusion.suc)
    extra = [('L', f, (k, 'L', la + j)) for j, f in enumerate(ant)]
    extra += [('R', f, (k, 'R', ls + j)) for j, f in enumerate(suc)]
    new, _ = rebuild_node(p, prems, maps, extra)
    return new


# ---------------------------------------------------------- variable renaming

def proof_vars(p: Proof) -> set:
    out = set()
    for _, node in iter_nodes(p):
        for f in node.conclusion.formulas():
            out |= S.all_vars(f)
        if node.eigen:
            out.add(node.eigen)
        if node.witness is not None:
            out |= S.term_vars(node.witness)
    return out


def map_formulas(p: Proof, fn) -> Proof:
    """Apply ``fn`` to every formula of every sequent (rules and ancestry unchanged)."""
    cache = {}

    def mf(f):
        r = cache.get(f)
        if r is None:
            r = cache[f] = fn(f)
        return r

    def go(node):
        c = node.conclusion
        seq = Sequent(tuple(mf(f) for f in c.ant), tuple(mf(f) for f in c.suc))
        return _copy(node, conclusion=seq, premises=tuple(go(q) for q in node.premises))

    return go(p)


def substitute_proof(p: Proof, var: str, t: S.Term) -> Proof:
    """Replace free ``var`` by ``t`` in every sequent, witness and eigen annotation.

    Callers make sure eigenvariables of ``p`` do not occur in ``t``.
    """
    cache = {}

    def sf(f):
        r = cache.get(id(f))
        if r is None:
            r = cache[id(f)] = (f, S.substitute(f, var, t))
        return r[1]

    def go(node):
        c = node.conclusion
        seq = Sequent(tuple(sf(f) for f in c.ant), tuple(sf(f) for f in c.suc))
        w = node.witness
        if w is not None:
            w = S.subst_term(w, var, t)
        eigen = node.eigen
        if eigen == var:
            if not isinstance(t, S.Var):
                raise ValueError('cannot substitute a compound term for an eigenvariable annotation')
            eigen = t.name
        return _copy(node, conclusion=seq, premises=tuple(go(q) for q in node.premises),
                     witness=w, eigen=eigen)

    return go(p)


def eigenvariables(p: Proof) -> set:
    return {node.eigen for _, node in iter_nodes(p) if node.eigen}


def refresh_eigen(p: Proof, avoid=frozenset()) -> Proof:
    """Rename every eigenvariable of ``p`` (the root's included) to a fresh name."""
    used = proof_vars(p) | set(avoid)
    mapping = {}
    for b in sorted(eigenvariables(p)):
        new = S.fresh_name(b, used)
        used.add(new)
        mapping[b] = new
    return rename_eigen(p, mapping)


def rename_eigen(p: Proof, mapping) -> Proof:
    """Rename eigenvariables: substitute inside the subproof each one governs.

    An eigenvariable does not occur free below its rule, so renaming it inside
    the premise (and the annotation) keeps the proof valid.
    """
    if not mapping:
        return p

    def go(node):
        prems = tuple(go(q) for q in node.premises)
        if node.eigen in mapping:
            new = mapping[node.eigen]
            prems = tuple(substitute_proof(q, node.eigen, S.Var(new)) for q in prems)
            node = _copy(node, premises=prems, eigen=new)
            # rebuild ancestry unchanged: only formulas above changed, and the
            # conclusion does not contain the eigenvariable
            return node
        return _copy(node, premises=prems)

    return go(p)


class NameSupply:
    """Deterministic fresh-name generator avoiding a growing set of names."""

    def __init__(self, avoid=()):
        self.used = set(avoid)

    def fresh(self, base):
        for k in itertools.count(1):
            cand = f'{base.split("_")[0]}_{k}'
            if cand not in self.used:
                self.used.add(cand)
                return cand

"""Midsequent form and Herbrand term extraction for cut-free proofs.

In a cut-free proof of prenex formulas every propositional rule works on
quantifier-free formulas, so a quantifier rule (or a contraction of a
quantified formula) standing above a propositional rule acts on a side
formula of that rule and can be moved below it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel as K
from . import syntax as S
from .kernel import CONTRACTION_RULES, QUANTIFIER_RULES, Proof, Sequent
from .prover import truth_table_valid
from .surgery import proof_vars, rebuild_node, substitute_proof


class HerbrandError(ValueError):
    pass


def _is_low(node: Proof) -> bool:
    """Quantifier rules and contractions of quantified formulas."""
    if node.rule in QUANTIFIER_RULES:
        return True
    if node.rule in CONTRACTION_RULES:
        (o,) = node.principal
        return S.has_quantifier(node.conclusion[o])
    return False


def _is_high(node: Proof) -> bool:
    return node.rule not in ('axiom', 'cut') and not _is_low(node)


def _require_cut_free(p):
    if not K.is_cut_free(p):
        raise HerbrandError('input proof has cuts')


def midsequent(p: Proof) -> Proof:
    """Move quantifier rules below all propositional rules on every branch."""
    _require_cut_free(p)
    for f in p.conclusion.formulas():
        if not S.is_prenex(f):
            raise HerbrandError(f'{S.print_formula(f)} is not prenex')
    changed = True
    while changed:
        p, changed = _sweep(p)
    return p


def _sweep(node):
    prems = []
    changed = False
    for q in node.premises:
        nq, c = _sweep(q)
        prems.append(nq)
        changed |= c
    if changed:
        node = K._copy(node, premises=tuple(prems))
    if _is_high(node):
        for k, q in enumerate(node.premises):
            if _is_low(q):
                return _swap(node, k), True
    return node, changed


def _swap(r: Proof, k: int) -> Proof:
    """``r`` has the low rule ``x`` as premise ``k``; return x applied below r."""
    x = r.premises[k]
    x0 = x.premises[0]
    if x.eigen is not None:
        avoid = set()
        for j, q in enumerate(r.premises):
            if j != k:
                avoid |= proof_vars(q)
        if x.eigen in avoid:
            new = S.fresh_name(x.eigen, avoid | proof_vars(x))
            x0 = substitute_proof(x0, x.eigen, S.Var(new))
            x = K._copy(x, premises=(x0,), eigen=new)
    maps = [{o: o for o in q.conclusion.occurrences()} for q in r.premises]
    mk = {}
    for o, srcs in x.ancestry.items():
        if o in x.principal:
            continue
        (_, s, i), = srcs
        mk[o] = (s, i)
    maps[k] = mk
    extra = [(s, x0.conclusion.side(s)[i], (k, s, i)) for _, s, i in x.aux]
    prems = list(r.premises)
    prems[k] = x0
    mid, _ = rebuild_node(r, prems, maps, extra)
    # the re-added auxiliary formulas sit at the ends of the cedents, in aux order
    n_l, n_r = len(mid.conclusion.ant), len(mid.conclusion.suc)
    n_extra = {'L': sum(1 for s, _, _ in extra if s == 'L'), 'R': sum(1 for s, _, _ in extra if s == 'R')}
    seen = {'L': 0, 'R': 0}
    pos = []
    for s, _, _ in extra:
        base = (n_l if s == 'L' else n_r) - n_extra[s]
        pos.append(base + seen[s])
        seen[s] += 1
    rule = x.rule
    if rule in CONTRACTION_RULES:
        low = getattr(K, rule.replace('-', '_'))(mid, pos[0], pos[1])
    else:
        pf = x.conclusion[x.principal[0]]
        fn = getattr(K, rule.replace('-', '_'))
        if rule in ('forall-left', 'exists-right'):
            low = fn(mid, pos[0], pf.var, pf.body, x.witness)
        else:
            low = fn(mid, pos[0], pf.var, pf.body, x.eigen)
    return K.reorder(low, r.conclusion)


def midsequent_ok(p: Proof) -> bool:
    """True iff on every branch no quantifier rule lies above a propositional rule."""
    def go(node, below_prop):
        if node.rule in QUANTIFIER_RULES and below_prop:
            return False
        flag = below_prop or (node.rule not in ('axiom', 'cut')
                              and node.rule not in QUANTIFIER_RULES
                              and node.rule not in CONTRACTION_RULES)
        return all(go(q, flag) for q in node.premises)
    return go(p, False)


# --------------------------------------------------------------- extraction

@dataclass
class HerbrandResult:
    terms: list
    disjunction_proof: Proof

    @property
    def disjunction(self):
        return S.disj(self.disjunction_proof.conclusion.suc)


def extract(p: Proof) -> HerbrandResult:
    """Terms t1..tn with a quantifier-free proof of ``|- A(t1), ..., A(tn)``.

    Every exists-right introducing the endsequent formula is peeled off and
    every contraction on it is undone; weak copies in axioms are dropped.
    """
    _require_cut_free(p)
    c = p.conclusion
    if c.ant or len(c.suc) != 1 or not isinstance(c.suc[0], S.Exists) \
            or S.has_quantifier(c.suc[0].body):
        raise HerbrandError('extract needs a proof of |- ?x A(x) with A quantifier-free')
    target = c.suc[0]
    key = S.alpha_key(target)
    new, omap, wit = _peel(p, key)
    occs = omap[('R', 0)]
    if not occs:
        raise HerbrandError('no instance of the existential formula is introduced')
    order = sorted(occs, key=lambda o: o[1])
    terms = [wit[o] for o in order]
    proof = K.reorder(new, Sequent((), tuple(new.conclusion[o] for o in order)))
    return HerbrandResult(terms, proof)


def _peel(node, key):
    """Return (proof, old occ -> list of new occs, new occ -> witness term)."""
    c = node.conclusion

    def is_target(o):
        return S.alpha_key(c[o]) == key

    if node.rule == 'axiom':
        drop = {o for o in c.occurrences() if is_target(o)}
        if any(o in node.principal for o in drop):
            raise HerbrandError('existential formula used as an axiom formula')
        if not drop:
            return node, {o: [o] for o in c.occurrences()}, {}
        ant = tuple(f for i, f in enumerate(c.ant) if ('L', i) not in drop)
        suc = tuple(f for i, f in enumerate(c.suc) if ('R', i) not in drop)
        keep = {}
        for s, lst in (('L', c.ant), ('R', c.suc)):
            j = 0
            for i in range(len(lst)):
                if (s, i) in drop:
                    keep[(s, i)] = []
                else:
                    keep[(s, i)] = [(s, j)]
                    j += 1
        principal = tuple(keep[o][0] for o in node.principal)
        return K._copy(node, conclusion=Sequent(ant, suc), principal=principal), keep, {}
    subs = [_peel(q, key) for q in node.premises]
    if node.rule == 'cut':
        raise HerbrandError('input proof has cuts')
    (po,) = node.principal
    if is_target(po) and (node.rule == 'exists-right' or node.rule in CONTRACTION_RULES):
        (q, qmap, qwit), = subs
        omap, wit = {}, dict(qwit)
        for o, srcs in node.ancestry.items():
            out = []
            for _, s, i in srcs:
                out.extend(qmap[(s, i)])
            omap[o] = out
        if node.rule == 'exists-right':
            (new_o,) = omap[po]
            wit[new_o] = node.witness
        return q, omap, wit
    if is_target(po):
        raise HerbrandError(f'{node.rule} acts on the existential formula')
    # ordinary rule: keep it, spreading peeled instances as extra context
    prems = [s[0] for s in subs]
    maps, extra, extra_src = [], [], []
    for k, (_, qmap, _) in enumerate(subs):
        m = {}
        for old, news in qmap.items():
            if news:
                m[old] = news[0]
        maps.append(m)
    for o, srcs in node.ancestry.items():
        if o in node.principal:
            continue
        (k, s, i), = srcs
        news = subs[k][1][(s, i)]
        for n in news[1:]:
            extra.append((n[0], prems[k].conclusion[n], (k,) + n))
            extra_src.append((o, k, n))
    new, conc_map = rebuild_node(node, prems, maps, extra)
    omap = {}
    for o in c.occurrences():
        omap[o] = [conc_map[o]] if o in conc_map else []
    counts = {'L': len(new.conclusion.ant), 'R': len(new.conclusion.suc)}
    n_extra = {'L': 0, 'R': 0}
    for s, _, _ in extra:
        n_extra[s] += 1
    seen = {'L': 0, 'R': 0}
    wit = {}
    for (o, k, n), (s, _, _) in zip(extra_src, extra):
        pos = (s, counts[s] - n_extra[s] + seen[s])
        seen[s] += 1
        omap[o].append(pos)
    # witnesses follow occurrences through the rebuilt node
    inv = {}
    for no, srcs in new.ancestry.items():
        if no in new.principal:
            continue
        (k, s, i), = srcs
        inv[(k, s, i)] = no
    for k, (_, _, qwit) in enumerate(subs):
        for qo, t in qwit.items():
            if (k,) + qo in inv:
                wit[inv[(k,) + qo]] = t
    return new, omap, wit


def instances_valid(res: HerbrandResult) -> bool:
    """Truth-functional validity of the Herbrand disjunction (atoms independent)."""
    return truth_table_valid(Sequent((), tuple(res.disjunction_proof.conclusion.suc)))

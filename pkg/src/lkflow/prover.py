"""Backward proof search for propositional sequents.

The LK rules are read bottom-up.  Formulas are decomposed eagerly,
non-branching rules first; a branch closes as soon as one formula occurs on
both sides.  Branching rules copy the whole context into both premises, and
afterwards context formulas that one branch never used are erased from it, so
contractions appear only where both branches really use a formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import kernel as K
from . import syntax as S
from .kernel import Proof, Sequent
from .surgery import erase_weak, is_weak, map_formulas


class ResourceError(RuntimeError):
    pass


class NotPropositional(ValueError):
    pass


@dataclass
class SearchResult:
    proof: Optional[Proof] = None
    countermodel: Optional[dict] = None

    @property
    def valid(self):
        return self.proof is not None


def prove(seq: Sequent, budget: int = 200_000) -> SearchResult:
    for f in seq.formulas():
        if not S.is_propositional(f):
            raise NotPropositional(f'{S.print_formula(f)} is not propositional')
    search = _Search(budget)
    res = search.run(list(seq.ant), list(seq.suc))
    if isinstance(res, dict):
        return SearchResult(countermodel=res)
    return SearchResult(proof=K.reorder(res, seq))


def prove_qf(seq: Sequent, budget: int = 200_000) -> SearchResult:
    """Quantifier-free sequents with predicate atoms: each distinct atom is
    treated as an independent propositional variable."""
    atoms, names = {}, set()
    for f in seq.formulas():
        if S.has_quantifier(f):
            raise NotPropositional(f'{S.print_formula(f)} has quantifiers')
        names |= S.prop_vars(f)
        for a in S.atoms_of(f):
            if isinstance(a, S.Atom) and a not in atoms:
                atoms[a] = None
    fwd = {}
    for a in atoms:
        fwd[a] = S.Prop(S.fresh_name('atom', names))
        names.add(fwd[a].name)
    back = {v.name: a for a, v in fwd.items()}

    def abstract(f):
        if isinstance(f, S.Atom):
            return fwd[f]
        return S.rebuild(f, [abstract(c) for c in S.children(f)])

    res = prove(Sequent(tuple(map(abstract, seq.ant)), tuple(map(abstract, seq.suc))), budget)
    if res.proof is not None:
        return SearchResult(proof=map_formulas(res.proof, lambda f: S.substitute_props(f, back)))
    model = {S.print_formula(back.get(k, S.Prop(k))): v for k, v in res.countermodel.items()}
    return SearchResult(countermodel=model)


def is_valid(seq: Sequent) -> bool:
    return prove(seq).valid


_UNARY_LEFT = (S.Neg, S.And)
_UNARY_RIGHT = (S.Neg, S.Or, S.Imp)


class _Search:
    def __init__(self, budget):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceError(f'proof search exceeded {self.budget} steps')

    def run(self, ant, suc):
        self.tick()
        closed = self._close(ant, suc)
        if closed is not None:
            return closed
        for i, f in enumerate(ant):
            if isinstance(f, _UNARY_LEFT):
                return self._left_unary(ant, suc, i)
        for i, f in enumerate(suc):
            if isinstance(f, _UNARY_RIGHT):
                return self._right_unary(ant, suc, i)
        for i, f in enumerate(suc):
            if isinstance(f, S.And):
                return self._branch(ant, suc, 'R', i)
        for i, f in enumerate(ant):
            if isinstance(f, (S.Or, S.Imp)):
                return self._branch(ant, suc, 'L', i)
        # only atoms and constants left: falsifying assignment
        model = {}
        for f in ant + suc:
            if S.is_atomic(f):
                model[f.name] = False
        for f in ant:
            if S.is_atomic(f):
                model[f.name] = True
        return dict(sorted(model.items()))

    def _close(self, ant, suc):
        keys = {S.alpha_key(f): j for j, f in reversed(list(enumerate(suc)))}
        for i, f in enumerate(ant):
            j = keys.get(S.alpha_key(f))
            if j is not None:
                rest_a = ant[:i] + ant[i + 1:]
                rest_s = suc[:j] + suc[j + 1:]
                return K.reorder(K.axiom(f, rest_a, rest_s), Sequent(tuple(ant), tuple(suc)))
        for i, f in enumerate(ant):
            if isinstance(f, S.Bot):
                return K.reorder(K.constant_axiom(f, ant[:i] + ant[i + 1:], suc),
                                 Sequent(tuple(ant), tuple(suc)))
        for j, f in enumerate(suc):
            if isinstance(f, S.Top):
                return K.reorder(K.constant_axiom(f, ant, suc[:j] + suc[j + 1:]),
                                 Sequent(tuple(ant), tuple(suc)))
        return None

    def _left_unary(self, ant, suc, i):
        f = ant[i]
        rest = ant[:i] + ant[i + 1:]
        if isinstance(f, S.Neg):
            sub = self.run(rest, suc + [f.body])
            if isinstance(sub, dict):
                return sub
            return K.neg_left(sub, f.body)
        sub = self.run([f.left, f.right] + rest, suc)
        if isinstance(sub, dict):
            return sub
        return K.and_left(sub, f.left, f.right)

    def _right_unary(self, ant, suc, i):
        f = suc[i]
        rest = suc[:i] + suc[i + 1:]
        if isinstance(f, S.Neg):
            sub = self.run([f.body] + ant, rest)
            if isinstance(sub, dict):
                return sub
            return K.neg_right(sub, f.body)
        if isinstance(f, S.Or):
            sub = self.run(ant, rest + [f.left, f.right])
            if isinstance(sub, dict):
                return sub
            return K.or_right(sub, f.left, f.right)
        sub = self.run([f.left] + ant, rest + [f.right])
        if isinstance(sub, dict):
            return sub
        return K.imp_right(sub, f.left, f.right)

    def _branch(self, ant, suc, side, i):
        f = (suc if side == 'R' else ant)[i]
        if side == 'R':
            ctx_a, ctx_s = ant, suc[:i] + suc[i + 1:]
            first = (ctx_a, ctx_s + [f.left])
            second = (ctx_a, ctx_s + [f.right])
        elif isinstance(f, S.Or):
            ctx_a, ctx_s = ant[:i] + ant[i + 1:], suc
            first = ([f.left] + ctx_a, ctx_s)
            second = ([f.right] + ctx_a, ctx_s)
        else:
            ctx_a, ctx_s = ant[:i] + ant[i + 1:], suc
            first = (ctx_a, ctx_s + [f.left])
            second = ([f.right] + ctx_a, ctx_s)
        p0 = self.run(*first)
        if isinstance(p0, dict):
            return p0
        p1 = self.run(*second)
        if isinstance(p1, dict):
            return p1
        p0, p1 = _share_context(p0, p1, ctx_a, ctx_s)
        if side == 'R':
            node = K.and_right(p0, p1, f.left, f.right)
        elif isinstance(f, S.Or):
            node = K.or_left(p0, p1, f.left, f.right)
        else:
            node = K.imp_left(p0, p1, f.left, f.right)
        target = Sequent(tuple(ant), tuple(suc))
        node = K.contract_all(node, target)
        return K.reorder(node, target)


def _share_context(p0, p1, ctx_a, ctx_s):
    """Drop each shared context formula from a branch that does not use it."""
    for side, ctx in (('L', ctx_a), ('R', ctx_s)):
        for f in ctx:
            o0 = _locate_last(p0, side, f)
            o1 = _locate_last(p1, side, f)
            if is_weak(p1, o1):
                p1 = erase_weak(p1, o1)
            elif is_weak(p0, o0):
                p0 = erase_weak(p0, o0)
    return p0, p1


def _locate_last(p, side, f):
    key = S.alpha_key(f)
    lst = p.conclusion.side(side)
    for i in range(len(lst) - 1, -1, -1):
        if S.alpha_key(lst[i]) == key:
            return (side, i)
    raise ValueError('context formula missing from subproof')


def countermodel_falsifies(seq: Sequent, model: dict) -> bool:
    val = {}
    for f in seq.formulas():
        for a in S.atoms_of(f):
            val[a] = model.get(a.name, False)
    return (all(S.evaluate(f, val) for f in seq.ant)
            and not any(S.evaluate(f, val) for f in seq.suc))


def truth_table_valid(seq: Sequent) -> bool:
    """Independent oracle: enumerate all assignments to the atoms of ``seq``."""
    atoms = []
    for f in seq.formulas():
        for a in S.atoms_of(f):
            if a not in atoms:
                atoms.append(a)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        val = dict(zip(atoms, bits))
        if all(S.evaluate(f, val) for f in seq.ant) and not any(S.evaluate(f, val) for f in seq.suc):
            return False
    return True

"""Craig interpolation for cut-free propositional proofs (Maehara's method).

A partition sends every endsequent occurrence to part ``L`` or ``R``.  The
interpolant C satisfies ``L-ant |- L-suc, C`` and ``C, R-ant |- R-suc``, and
its variables are common to both parts.  C is built by induction on the proof:

* axiom: bot, top, the atom itself or its negation, depending on which parts
  hold the two distinguished occurrences;
* unary rule or contraction: unchanged, the rule is replayed in the part
  holding its principal formula;
* binary rule: ``C1 \\/ C2`` when the principal formula is in L,
  ``C1 /\\ C2`` when it is in R.

No simplification is applied, so the size of C is linear in the number of
proof lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel as K
from . import syntax as S
from .kernel import CONTRACTION_RULES, Proof, Sequent
from .prover import prove
from .surgery import map_formulas


class InterpolationError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Occurrences of the endsequent assigned to part L; all others are in R."""
    left: frozenset

    def part(self, occ) -> str:
        return 'L' if occ in self.left else 'R'

    @classmethod
    def parse(cls, seq: Sequent, text: str) -> 'Partition':
        """One ``L``/``R`` letter per endsequent occurrence, comma-separated,
        antecedent first: ``"L,R,R"`` for a sequent with three formulas."""
        letters = [t.strip().upper() for t in text.split(',')] if text.strip() else []
        occs = list(seq.occurrences())
        if len(letters) != len(occs):
            raise InterpolationError(f'partition has {len(letters)} letters, sequent has {len(occs)} formulas')
        left = set()
        for o, letter in zip(occs, letters):
            if letter not in ('L', 'R'):
                raise InterpolationError(f'bad partition letter {letter!r}')
            if letter == 'L':
                left.add(o)
        return cls(frozenset(left))

    @classmethod
    def split(cls, seq: Sequent, ant_left, suc_left) -> 'Partition':
        """Part L = the antecedent indices ``ant_left`` and succedent indices ``suc_left``."""
        occs = {('L', i) for i in ant_left} | {('R', i) for i in suc_left}
        for s, i in occs:
            if not 0 <= i < len(seq.side(s)):
                raise InterpolationError(f'partition occurrence {s}{i} out of range')
        return cls(frozenset(occs))

    @classmethod
    def implication(cls, seq: Sequent) -> 'Partition':
        """The A |- B reading: every antecedent formula in L, every succedent formula in R."""
        return cls(frozenset(('L', i) for i in range(len(seq.ant))))

    def letters(self, seq: Sequent) -> str:
        return ','.join(self.part(o) for o in seq.occurrences())


@dataclass
class Interpolant:
    formula: object
    proof_left: Proof
    proof_right: Proof

    @property
    def size(self):
        return S.formula_size(self.formula)


def part_sequents(seq: Sequent, part: Partition):
    """``(L-ant |- L-suc)`` and ``(R-ant |- R-suc)``."""
    la = tuple(f for i, f in enumerate(seq.ant) if part.part(('L', i)) == 'L')
    ls = tuple(f for i, f in enumerate(seq.suc) if part.part(('R', i)) == 'L')
    ra = tuple(f for i, f in enumerate(seq.ant) if part.part(('L', i)) == 'R')
    rs = tuple(f for i, f in enumerate(seq.suc) if part.part(('R', i)) == 'R')
    return Sequent(la, ls), Sequent(ra, rs)


def _vars(seq: Sequent):
    out = set()
    for f in seq.formulas():
        out |= S.prop_vars(f)
    return out


def interpolate(p: Proof, part: Partition) -> Interpolant:
    for _, node in K.iter_nodes(p):
        if node.rule == 'cut':
            raise InterpolationError('interpolation needs a cut-free proof')
        if node.rule in K.QUANTIFIER_RULES or node.axiom is not None:
            raise InterpolationError('interpolation needs a pure propositional proof')
        for f in node.conclusion.formulas():
            if not S.is_propositional(f):
                raise InterpolationError('interpolation needs propositional formulas')
    labels = {o: part.part(o) for o in p.conclusion.occurrences()}
    c, left, right = _interp(p, labels)
    ls, rs = part_sequents(p.conclusion, part)
    left = K.reorder(left, Sequent(ls.ant, ls.suc + (c,)))
    right = K.reorder(right, Sequent((c,) + rs.ant, rs.suc))
    return Interpolant(c, left, right)


def _sides(node, labels, which):
    c = node.conclusion
    ant = [f for i, f in enumerate(c.ant) if labels[('L', i)] == which]
    suc = [f for i, f in enumerate(c.suc) if labels[('R', i)] == which]
    return ant, suc


def _drop(lst, f):
    out = list(lst)
    key = S.alpha_key(f)
    for i, g in enumerate(out):
        if S.alpha_key(g) == key:
            del out[i]
            return out
    raise InterpolationError('formula missing while splitting an axiom')


def _axiom_case(node, labels):
    c = node.conclusion
    la, ls = _sides(node, labels, 'L')
    ra, rs = _sides(node, labels, 'R')
    if len(node.principal) == 1:
        (o,) = node.principal
        f = c[o]
        if labels[o] == 'L':
            cf = S.BOT
            if o[0] == 'L':
                left = K.constant_axiom(f, _drop(la, f), ls + [cf])
            else:
                left = K.constant_axiom(f, la, _drop(ls, f) + [cf])
            right = K.constant_axiom(cf, ra, rs)
        else:
            cf = S.TOP
            left = K.constant_axiom(cf, la, ls)
            if o[0] == 'L':
                right = K.constant_axiom(f, [cf] + _drop(ra, f), rs)
            else:
                right = K.constant_axiom(f, [cf] + ra, _drop(rs, f))
        return cf, left, right
    (_, il), (_, ir) = node.principal
    a = c.ant[il]
    pa, ps = labels[('L', il)], labels[('R', ir)]
    if pa == 'L' and ps == 'L':
        cf = S.BOT
        left = K.axiom(a, _drop(la, a), _drop(ls, a) + [cf])
        right = K.constant_axiom(cf, ra, rs)
    elif pa == 'R' and ps == 'R':
        cf = S.TOP
        left = K.constant_axiom(cf, la, ls)
        right = K.axiom(a, [cf] + _drop(ra, a), _drop(rs, a))
    elif pa == 'L':
        cf = a
        left = K.axiom(a, _drop(la, a), ls)
        right = K.axiom(a, ra, _drop(rs, a))
    else:
        cf = S.Neg(a)
        left = K.neg_right(K.axiom(a, la, _drop(ls, a)), 0)
        right = K.neg_left(K.axiom(a, _drop(ra, a), rs), len(rs))
    return cf, left, right


def _premise_labels(node, labels):
    out = [dict() for _ in node.premises]
    for o, srcs in node.ancestry.items():
        for k, s, i in srcs:
            out[k][(s, i)] = labels[o]
    return out


def _replay(rule, node, prems):
    """Apply ``node``'s rule to ``prems``, naming auxiliary formulas by content."""
    aux = [node.premises[k].conclusion.side(s)[i] for k, s, i in node.aux]
    if rule in CONTRACTION_RULES:
        return getattr(K, rule.replace('-', '_'))(prems[0], aux[0])
    fn = getattr(K, rule.replace('-', '_'))
    if len(prems) == 2:
        return fn(prems[0], prems[1], aux[0], aux[1])
    if rule in ('neg-left', 'neg-right'):
        return fn(prems[0], aux[0])
    return fn(prems[0], aux[0], aux[1])


def _interp(node, labels):
    if node.rule == 'axiom':
        return _axiom_case(node, labels)
    plabels = _premise_labels(node, labels)
    subs = [_interp(q, pl) for q, pl in zip(node.premises, plabels)]
    (po,) = node.principal
    where = labels[po]
    if len(subs) == 1:
        cf, left, right = subs[0]
        if where == 'L':
            left = _replay(node.rule, node, [left])
        else:
            right = _replay(node.rule, node, [right])
        return cf, left, right
    (c1, l1, r1), (c2, l2, r2) = subs
    if where == 'L':
        cf = S.Or(c1, c2)
        left = K.or_right(_replay(node.rule, node, [l1, l2]), c1, c2)
        right = K.or_left(r1, r2, c1, c2)
    else:
        cf = S.And(c1, c2)
        left = K.and_right(l1, l2, c1, c2)
        right = K.and_left(_replay(node.rule, node, [r1, r2]), c1, c2)
    return cf, left, right


def check_interpolant(p: Proof, part: Partition, itp: Interpolant) -> list:
    """Problems with ``itp`` (empty list when it satisfies the contract)."""
    problems = []
    ls, rs = part_sequents(p.conclusion, part)
    common = _vars(ls) & _vars(rs)
    extra = S.prop_vars(itp.formula) - common
    if extra:
        problems.append(f'interpolant uses non-common variables {sorted(extra)}')
    want_l = Sequent(ls.ant, ls.suc + (itp.formula,))
    want_r = Sequent((itp.formula,) + rs.ant, rs.suc)
    for name, q, want in (('left', itp.proof_left, want_l), ('right', itp.proof_right, want_r)):
        rep = K.check(q, allow_constants=True)
        if not rep:
            problems.append(f'{name} proof rejected: {rep}')
        if q.conclusion.key() != want.key():
            problems.append(f'{name} proof proves {q.conclusion}, expected {want}')
        if not K.is_cut_free(q):
            problems.append(f'{name} proof has cuts')
    return problems


# ---------------------------------------------------------- assignment split

@dataclass
class SplitResult:
    kind: str          # 'left-refutation' or 'right-proof'
    proof: Proof


def _subst_proof(p: Proof, values) -> Proof:
    return map_formulas(p, lambda f: S.substitute_props(f, values))


def split_by_assignment(a, b, sigma: dict, itp: Interpolant) -> SplitResult:
    """Decide between ``A^s |-`` and ``|- B^s`` by evaluating C under ``sigma``.

    ``itp`` interpolates ``A |- B`` with A in part L.  The common variables are
    replaced by ``top``/``bot``.  The returned proof is the matching component
    proof with ``sigma`` substituted, cut against a proof of the closed
    formula ``C^s |-`` (or ``|- C^s``).
    """
    common = S.prop_vars(a) & S.prop_vars(b)
    missing = common - set(sigma)
    if missing:
        raise InterpolationError(f'assignment misses common variables {sorted(missing)}')
    values = {v: (S.TOP if sigma[v] else S.BOT) for v in common}
    c_val = S.substitute_props(itp.formula, values)
    truth = S.evaluate(c_val, {})
    if not truth:
        base = _subst_proof(itp.proof_left, values)
        lemma = prove(Sequent((c_val,), ())).proof
        proof = K.cut(base, lemma, c_val)
        target = Sequent((S.substitute_props(a, values),), ())
        kind = 'left-refutation'
    else:
        base = _subst_proof(itp.proof_right, values)
        lemma = prove(Sequent((), (c_val,))).proof
        proof = K.cut(lemma, base, c_val)
        target = Sequent((), (S.substitute_props(b, values),))
        kind = 'right-proof'
    proof = K.reorder(proof, target)
    return SplitResult(kind, proof)

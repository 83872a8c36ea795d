"""Sequents, LK proof objects and the proof checker.

A proof node stores its conclusion, the rule used, and an explicit ancestry
map from every conclusion occurrence to the premise occurrence(s) it comes
from.  Occurrences are addressed as ``('L', i)`` / ``('R', i)`` inside a
sequent and ``(k, 'L', i)`` inside the ``k``-th premise.

There is no weakening rule: weak formulas enter only as side formulas of
axioms.  Non-logical axioms (used by the feasibility proofs) are leaves with
rule ``axiom`` and an ``axiom`` name referring to a declared schema.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Optional

from . import syntax as S
from .syntax import Parser, ParseError, alpha_key, alpha_eq, free_vars

BINARY_RULES = frozenset({'and-right', 'or-left', 'imp-left', 'cut'})
QUANTIFIER_RULES = frozenset({'exists-left', 'exists-right', 'forall-left', 'forall-right'})
CONTRACTION_RULES = frozenset({'contract-left', 'contract-right'})
LOGICAL_RULES = frozenset({
    'neg-left', 'neg-right', 'and-left', 'and-right', 'or-left', 'or-right',
    'imp-left', 'imp-right'}) | QUANTIFIER_RULES
RULES = LOGICAL_RULES | CONTRACTION_RULES | {'axiom', 'cut'}

# side of the principal formula for each logical/structural rule
PRINCIPAL_SIDE = {
    'neg-left': 'L', 'neg-right': 'R', 'and-left': 'L', 'and-right': 'R',
    'or-left': 'L', 'or-right': 'R', 'imp-left': 'L', 'imp-right': 'R',
    'exists-left': 'L', 'exists-right': 'R', 'forall-left': 'L', 'forall-right': 'R',
    'contract-left': 'L', 'contract-right': 'R',
}


# ------------------------------------------------------------------ sequents

@dataclass(frozen=True)
class Sequent:
    ant: tuple = ()
    suc: tuple = ()

    def side(self, s):
        return self.ant if s == 'L' else self.suc

    def __getitem__(self, occ):
        s, i = occ
        return self.side(s)[i]

    def occurrences(self):
        return [('L', i) for i in range(len(self.ant))] + [('R', i) for i in range(len(self.suc))]

    def formulas(self):
        return self.ant + self.suc

    def key(self):
        return (Counter(alpha_key(f) for f in self.ant), Counter(alpha_key(f) for f in self.suc))

    def same(self, other: 'Sequent') -> bool:
        """Multiset equality up to bound-variable renaming."""
        return self.key() == other.key()

    def free_vars(self):
        out = frozenset()
        for f in self.formulas():
            out |= free_vars(f)
        return out

    def __str__(self):
        left = ', '.join(S.print_formula(f) for f in self.ant)
        right = ', '.join(S.print_formula(f) for f in self.suc)
        return f'{left} |- {right}'.strip()


def parse_sequent(text: str, signature=None) -> Sequent:
    p = Parser(text, signature)
    ant, suc = [], []
    cur = ant
    if p.at('|-'):
        p.take()
        cur = suc
    while p.peek()[0] != 'eof':
        cur.append(p.formula())
        if p.at(','):
            p.take()
            continue
        if p.at('|-') and cur is ant:
            p.take()
            cur = suc
            continue
        break
    p.done()
    if cur is ant:
        raise ParseError('sequent is missing "|-"')
    return Sequent(tuple(ant), tuple(suc))


# -------------------------------------------------------------------- proofs

@dataclass(frozen=True, eq=False)
class Proof:
    rule: str
    conclusion: Sequent
    premises: tuple = ()
    principal: tuple = ()
    aux: tuple = ()
    ancestry: Mapping = field(default_factory=dict)
    witness: Optional[S.Term] = None
    eigen: Optional[str] = None
    axiom: Optional[str] = None

    @cached_property
    def lines(self) -> int:
        return 1 + sum(p.lines for p in self.premises)

    @cached_property
    def cut_count(self) -> int:
        return int(self.rule == 'cut') + sum(p.cut_count for p in self.premises)

    def __repr__(self):
        return f'<Proof {self.rule} {self.conclusion} lines={self.lines}>'


def iter_nodes(p: Proof) -> Iterator[tuple]:
    """Preorder (path, node) pairs; paths are tuples of premise indices."""
    stack = [((), p)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for k in range(len(node.premises) - 1, -1, -1):
            stack.append((path + (k,), node.premises[k]))


def node_at(p: Proof, path) -> Proof:
    for k in path:
        p = p.premises[k]
    return p


def replace_at(p: Proof, path, new: Proof) -> Proof:
    """Replace the subproof at ``path``; ``new`` must have the identical conclusion list."""
    if not path:
        return new
    k = path[0]
    prem = list(p.premises)
    prem[k] = replace_at(prem[k], path[1:], new)
    return _copy(p, premises=tuple(prem))


def _copy(p: Proof, **changes) -> Proof:
    kw = dict(rule=p.rule, conclusion=p.conclusion, premises=p.premises, principal=p.principal,
              aux=p.aux, ancestry=p.ancestry, witness=p.witness, eigen=p.eigen, axiom=p.axiom)
    kw.update(changes)
    return Proof(**kw)


def endsequent(p: Proof) -> Sequent:
    return p.conclusion


# ------------------------------------------------------------------ builders
#
# Builders place a new principal formula first in the antecedent or last in
# the succedent, keep context formulas in premise order (first premise first)
# and compute the ancestry map.

def _assemble(rule, premises, aux, principal_formula=None, side=None, **extra) -> Proof:
    used = set(aux)
    ant, suc = [], []
    anc_ant, anc_suc = [], []
    for k, prem in enumerate(premises):
        for s, lst, anc in (('L', ant, anc_ant), ('R', suc, anc_suc)):
            for i, f in enumerate(prem.conclusion.side(s)):
                if (k, s, i) not in used:
                    lst.append(f)
                    anc.append(((k, s, i),))
    principal = ()
    if principal_formula is not None:
        if side == 'L':
            ant.insert(0, principal_formula)
            anc_ant.insert(0, tuple(aux))
            principal = (('L', 0),)
        else:
            suc.append(principal_formula)
            anc_suc.append(tuple(aux))
            principal = (('R', len(suc) - 1),)
    ancestry = {('L', i): a for i, a in enumerate(anc_ant)}
    ancestry.update({('R', i): a for i, a in enumerate(anc_suc)})
    return Proof(rule, Sequent(tuple(ant), tuple(suc)), tuple(premises), principal,
                 tuple(aux), ancestry, **extra)


def axiom(a, ant=(), suc=()) -> Proof:
    """The logical axiom ``A, ant |- suc, A``."""
    seq = Sequent((a,) + tuple(ant), tuple(suc) + (a,))
    return Proof('axiom', seq, principal=(('L', 0), ('R', len(seq.suc) - 1)))


def constant_axiom(const, ant=(), suc=()) -> Proof:
    """``bot, ant |- suc`` or ``ant |- suc, top`` (interpolation contexts only)."""
    if isinstance(const, S.Bot):
        return Proof('axiom', Sequent((const,) + tuple(ant), tuple(suc)), principal=(('L', 0),))
    return Proof('axiom', Sequent(tuple(ant), tuple(suc) + (const,)), principal=(('R', len(suc)),))


def nonlogical_axiom(name, instance: Sequent, ant=(), suc=()) -> Proof:
    """Leaf instantiating declared axiom ``name``; extra side formulas are weak."""
    seq = Sequent(instance.ant + tuple(ant), tuple(suc) + instance.suc)
    principal = tuple(('L', i) for i in range(len(instance.ant)))
    principal += tuple(('R', len(suc) + i) for i in range(len(instance.suc)))
    return Proof('axiom', seq, principal=principal, axiom=name)


def _find(p: Proof, side, f, skip=()):
    key = alpha_key(f)
    for i, g in enumerate(p.conclusion.side(side)):
        if i not in skip and alpha_key(g) == key:
            return i
    raise ValueError(f'{S.print_formula(f)} not found on side {side} of {p.conclusion}')


def _idx(p, side, which, skip=()):
    return which if isinstance(which, int) else _find(p, side, which, skip)


def neg_left(p, a):
    i = _idx(p, 'R', a)
    return _assemble('neg-left', [p], [(0, 'R', i)], S.Neg(p.conclusion.suc[i]), 'L')


def neg_right(p, a):
    i = _idx(p, 'L', a)
    return _assemble('neg-right', [p], [(0, 'L', i)], S.Neg(p.conclusion.ant[i]), 'R')


def and_left(p, a, b):
    i = _idx(p, 'L', a)
    j = _idx(p, 'L', b, skip=(i,))
    f = S.And(p.conclusion.ant[i], p.conclusion.ant[j])
    return _assemble('and-left', [p], [(0, 'L', i), (0, 'L', j)], f, 'L')


def or_right(p, a, b):
    i = _idx(p, 'R', a)
    j = _idx(p, 'R', b, skip=(i,))
    f = S.Or(p.conclusion.suc[i], p.conclusion.suc[j])
    return _assemble('or-right', [p], [(0, 'R', i), (0, 'R', j)], f, 'R')


def imp_right(p, a, b):
    i = _idx(p, 'L', a)
    j = _idx(p, 'R', b)
    f = S.Imp(p.conclusion.ant[i], p.conclusion.suc[j])
    return _assemble('imp-right', [p], [(0, 'L', i), (0, 'R', j)], f, 'R')


def and_right(p, q, a, b):
    i = _idx(p, 'R', a)
    j = _idx(q, 'R', b)
    f = S.And(p.conclusion.suc[i], q.conclusion.suc[j])
    return _assemble('and-right', [p, q], [(0, 'R', i), (1, 'R', j)], f, 'R')


def or_left(p, q, a, b):
    i = _idx(p, 'L', a)
    j = _idx(q, 'L', b)
    f = S.Or(p.conclusion.ant[i], q.conclusion.ant[j])
    return _assemble('or-left', [p, q], [(0, 'L', i), (1, 'L', j)], f, 'L')


def imp_left(p, q, a, b):
    i = _idx(p, 'R', a)
    j = _idx(q, 'L', b)
    f = S.Imp(p.conclusion.suc[i], q.conclusion.ant[j])
    return _assemble('imp-left', [p, q], [(0, 'R', i), (1, 'L', j)], f, 'L')


def exists_right(p, a, var, body, witness):
    """From ``A(t)`` in the succedent infer ``?var body``."""
    i = _idx(p, 'R', a)
    return _assemble('exists-right', [p], [(0, 'R', i)], S.Exists(var, body), 'R', witness=witness)


def forall_left(p, a, var, body, witness):
    i = _idx(p, 'L', a)
    return _assemble('forall-left', [p], [(0, 'L', i)], S.Forall(var, body), 'L', witness=witness)


def exists_left(p, a, var, body, eigen):
    i = _idx(p, 'L', a)
    return _assemble('exists-left', [p], [(0, 'L', i)], S.Exists(var, body), 'L', eigen=eigen)


def forall_right(p, a, var, body, eigen):
    i = _idx(p, 'R', a)
    return _assemble('forall-right', [p], [(0, 'R', i)], S.Forall(var, body), 'R', eigen=eigen)


def contract_left(p, a, b=None):
    i = _idx(p, 'L', a)
    j = _idx(p, 'L', b if b is not None else p.conclusion.ant[i], skip=(i,))
    return _assemble('contract-left', [p], [(0, 'L', i), (0, 'L', j)], p.conclusion.ant[i], 'L')


def contract_right(p, a, b=None):
    i = _idx(p, 'R', a)
    j = _idx(p, 'R', b if b is not None else p.conclusion.suc[i], skip=(i,))
    return _assemble('contract-right', [p], [(0, 'R', i), (0, 'R', j)], p.conclusion.suc[i], 'R')


def cut(p, q, a, b=None):
    """Cut ``p`` (with ``a`` in its succedent) against ``q`` (``a`` in its antecedent)."""
    i = _idx(p, 'R', a)
    j = _idx(q, 'L', b if b is not None else p.conclusion.suc[i])
    return _assemble('cut', [p, q], [(0, 'R', i), (1, 'L', j)])


def contract_all(p: Proof, target: Sequent) -> Proof:
    """Apply contractions until the conclusion is multiset-equal to ``target``."""
    want = target.key()
    while True:
        have = p.conclusion.key()
        if have == want:
            return p
        done = False
        for s, h, w in (('L', have[0], want[0]), ('R', have[1], want[1])):
            for k, n in h.items():
                if n > w.get(k, 0):
                    lst = p.conclusion.side(s)
                    idx = [i for i, f in enumerate(lst) if alpha_key(f) == k][:2]
                    p = (contract_left if s == 'L' else contract_right)(p, idx[0], idx[1])
                    done = True
                    break
            if done:
                break
        if not done:
            raise ValueError(f'cannot contract {p.conclusion} to {target}')


def reorder(p: Proof, target: Sequent, perm=None) -> Proof:
    """Permute the root conclusion of ``p`` to list formulas in ``target``'s order.

    Only the root node's conclusion list, principal and ancestry change; no rule
    is added.  ``target`` must be multiset-equal to ``p.conclusion``.  Equal
    formulas are matched first-come unless ``perm`` fixes the correspondence
    (a map from occurrences of ``p.conclusion`` to occurrences of ``target``).
    """
    if perm is not None:
        if sorted(perm) != sorted(p.conclusion.occurrences()) or \
                sorted(perm.values()) != sorted(target.occurrences()):
            raise ValueError('reorder: permutation is not a bijection')
        for o, t in perm.items():
            if alpha_key(p.conclusion[o]) != alpha_key(target[t]):
                raise ValueError(f'reorder: {o} and {t} hold different formulas')
        if all(o == t for o, t in perm.items()) and p.conclusion == target:
            return p
    elif p.conclusion == target:
        return p
    else:
        perm = {}
        for s in 'LR':
            old = list(p.conclusion.side(s))
            new = target.side(s)
            if len(old) != len(new):
                raise ValueError(f'reorder: {p.conclusion} is not a permutation of {target}')
            free = list(range(len(old)))
            for j, f in enumerate(new):
                key = alpha_key(f)
                for pos, i in enumerate(free):
                    if alpha_key(old[i]) == key:
                        perm[(s, i)] = (s, j)
                        free.pop(pos)
                        break
                else:
                    raise ValueError(f'reorder: {p.conclusion} is not a permutation of {target}')
    if p.rule == 'axiom' or not p.ancestry:
        ancestry = {}
    else:
        ancestry = {perm[o]: a for o, a in p.ancestry.items()}
    # keep the target's spelling of each formula (bound names may differ)
    return _copy(p, conclusion=target, principal=tuple(perm[o] for o in p.principal),
                 ancestry=ancestry)


# ------------------------------------------------------------------- checker

@dataclass
class CheckReport:
    ok: bool
    node: Optional[tuple] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return 'OK'
        where = '.'.join(map(str, self.node)) if self.node else 'root'
        return f'REJECT at {where}: {self.reason}'


class CheckFailure(Exception):
    pass


def check(p: Proof, axioms: Optional[Mapping[str, Sequent]] = None,
          allow_constants: bool = False) -> CheckReport:
    """Check every node of ``p`` against its rule schema.

    ``axioms`` declares non-logical axiom schemas by name; their free variables
    are schematic.  ``allow_constants`` admits ``top``/``bot`` and their axioms.
    """
    axioms = dict(axioms or {})
    for path, node in iter_nodes(p):
        try:
            check_node(node, axioms, allow_constants)
        except CheckFailure as exc:
            return CheckReport(False, path, str(exc))
    return CheckReport(True)


def _fail(msg):
    raise CheckFailure(msg)


def check_node(node: Proof, axioms: Mapping[str, Sequent], allow_constants=False):
    c = node.conclusion
    if not allow_constants and any(S.has_constant(f) for f in c.formulas()):
        _fail('top/bot outside an interpolation context')
    if node.rule not in RULES:
        _fail(f'unknown rule {node.rule!r}')
    for o in node.principal:
        if o[0] not in 'LR' or not 0 <= o[1] < len(c.side(o[0])):
            _fail(f'principal occurrence {o} out of range')
    if node.rule == 'axiom':
        _check_axiom(node, axioms, allow_constants)
        return
    want = 2 if node.rule in BINARY_RULES else 1
    if len(node.premises) != want:
        _fail(f'{node.rule} needs {want} premise(s), has {len(node.premises)}')
    for k, s, i in node.aux:
        if not 0 <= k < want or not 0 <= i < len(node.premises[k].conclusion.side(s)):
            _fail(f'auxiliary occurrence {(k, s, i)} out of range')
    _check_ancestry(node)
    if node.rule == 'cut':
        _check_cut(node)
    else:
        _check_rule(node)


def _check_axiom(node, axioms, allow_constants):
    c = node.conclusion
    if node.premises:
        _fail('axiom with premises')
    if node.axiom is not None:
        if node.axiom not in axioms:
            _fail(f'undeclared axiom {node.axiom!r}')
        schema = axioms[node.axiom]
        n_l, n_r = len(schema.ant), len(schema.suc)
        pr = node.principal
        if (len(pr) != n_l + n_r or any(o[0] != 'L' for o in pr[:n_l])
                or any(o[0] != 'R' for o in pr[n_l:]) or len(set(pr)) != len(pr)):
            _fail(f'principal occurrences do not fit axiom {node.axiom}')
        schematic = schema.free_vars()
        binding = {}
        for pat, o in zip(schema.formulas(), pr):
            if not S.match_formula(pat, c[o], schematic, binding):
                _fail(f'{S.print_formula(c[o])} is not an instance of axiom {node.axiom}')
        return
    pr = node.principal
    if len(pr) == 1 and allow_constants:
        f = c[pr[0]]
        if (pr[0][0] == 'L' and isinstance(f, S.Bot)) or (pr[0][0] == 'R' and isinstance(f, S.Top)):
            return
        _fail('constant axiom needs bot on the left or top on the right')
    if len(pr) != 2 or pr[0][0] != 'L' or pr[1][0] != 'R':
        _fail('axiom must designate one antecedent and one succedent occurrence')
    if not alpha_eq(c[pr[0]], c[pr[1]]):
        _fail('axiom formulas differ')


def _check_ancestry(node):
    c = node.conclusion
    anc = node.ancestry
    occs = c.occurrences()
    if set(anc) != set(occs):
        _fail('ancestry map is not total on the conclusion')
    principal = set(node.principal)
    used = []
    for o in occs:
        src = tuple(anc[o])
        if o in principal:
            if src != tuple(node.aux):
                _fail(f'principal occurrence {o} must map to the auxiliary occurrences')
            used.extend(src)
            continue
        if len(src) != 1:
            _fail(f'context occurrence {o} must have exactly one ancestor')
        k, s, i = src[0]
        if s != o[0] or not 0 <= k < len(node.premises) or not 0 <= i < len(node.premises[k].conclusion.side(s)):
            _fail(f'ancestor {src[0]} of {o} is invalid')
        if not alpha_eq(node.premises[k].conclusion.side(s)[i], c[o]):
            _fail(f'ancestor {src[0]} of {o} is a different formula')
        used.append(src[0])
    if node.rule == 'cut':
        for a in node.aux:
            if a in used:
                _fail('cut formula has a descendant in the conclusion')
        used.extend(node.aux)
    if len(used) != len(set(used)):
        _fail('premise occurrence used twice')
    every = {(k, s, i) for k, p in enumerate(node.premises) for s, i in p.conclusion.occurrences()}
    if set(used) != every:
        _fail('premise occurrences lost between premise and conclusion')


def _check_cut(node):
    if node.principal:
        _fail('cut has no principal formula')
    if len(node.aux) != 2 or node.aux[0][:2] != (0, 'R') or node.aux[1][:2] != (1, 'L'):
        _fail('cut auxiliaries must be succedent of premise 0 and antecedent of premise 1')
    a = node.premises[0].conclusion.suc[node.aux[0][2]]
    b = node.premises[1].conclusion.ant[node.aux[1][2]]
    if not alpha_eq(a, b):
        _fail('cut formulas differ')


_AUX_SHAPE = {
    # rule: (expected principal type, [(premise, side), ...] in subformula order)
    'neg-left': (S.Neg, [(0, 'R')]),
    'neg-right': (S.Neg, [(0, 'L')]),
    'and-left': (S.And, [(0, 'L'), (0, 'L')]),
    'and-right': (S.And, [(0, 'R'), (1, 'R')]),
    'or-left': (S.Or, [(0, 'L'), (1, 'L')]),
    'or-right': (S.Or, [(0, 'R'), (0, 'R')]),
    'imp-left': (S.Imp, [(0, 'R'), (1, 'L')]),
    'imp-right': (S.Imp, [(0, 'L'), (0, 'R')]),
    'exists-left': (S.Exists, [(0, 'L')]),
    'exists-right': (S.Exists, [(0, 'R')]),
    'forall-left': (S.Forall, [(0, 'L')]),
    'forall-right': (S.Forall, [(0, 'R')]),
}


def _check_rule(node):
    rule = node.rule
    if len(node.principal) != 1:
        _fail(f'{rule} needs exactly one principal formula')
    (o,) = node.principal
    if o[0] != PRINCIPAL_SIDE[rule]:
        _fail(f'{rule} principal formula on the wrong side')
    pf = node.conclusion[o]
    aux_f = [node.premises[k].conclusion.side(s)[i] for k, s, i in node.aux]
    if rule in CONTRACTION_RULES:
        if len(node.aux) != 2 or any(a[1] != o[0] or a[0] != 0 for a in node.aux) or node.aux[0] == node.aux[1]:
            _fail('contraction needs two distinct occurrences on the principal side')
        if not all(alpha_eq(a, pf) for a in aux_f):
            _fail('contracted formulas differ from the conclusion formula')
        return
    typ, shape = _AUX_SHAPE[rule]
    if not isinstance(pf, typ):
        _fail(f'{rule} principal formula {S.print_formula(pf)} has the wrong connective')
    if len(node.aux) != len(shape) or any(a[:2] != sh for a, sh in zip(node.aux, shape)):
        _fail(f'{rule} auxiliary occurrences do not fit the rule')
    if len(set(node.aux)) != len(node.aux):
        _fail('repeated auxiliary occurrence')
    if rule in QUANTIFIER_RULES:
        _check_quantifier(node, pf, aux_f[0])
        return
    for sub, a in zip(S.children(pf), aux_f):
        if not alpha_eq(sub, a):
            _fail(f'{rule}: {S.print_formula(a)} is not a component of {S.print_formula(pf)}')


def _check_quantifier(node, pf, a):
    rule = node.rule
    if rule in ('exists-right', 'forall-left'):
        if node.witness is None:
            _fail(f'{rule} needs a witness term')
        inst = S.naive_substitute(pf.body, pf.var, node.witness)
        if inst is None:
            _fail(f'witness {S.print_term(node.witness)} contains a variable bound in the formula')
        if not alpha_eq(inst, a):
            _fail(f'{S.print_formula(a)} is not the instance of {S.print_formula(pf)} '
                  f'at {S.print_term(node.witness)}')
        return
    b = node.eigen
    if b is None:
        _fail(f'{rule} needs an eigenvariable')
    inst = S.naive_substitute(pf.body, pf.var, S.Var(b))
    if inst is None or not alpha_eq(inst, a):
        _fail(f'{S.print_formula(a)} is not the instance of {S.print_formula(pf)} at {b}')
    if b in node.conclusion.free_vars():
        _fail(f'eigenvariable {b} occurs free in the conclusion')


# ------------------------------------------------------------------- metrics

@dataclass
class Metrics:
    lines: int
    symbols: int
    cuts: int
    contractions: int
    max_formula_size: int

    def as_dict(self):
        return dict(lines=self.lines, symbols=self.symbols, cuts=self.cuts,
                    contractions=self.contractions, max_formula_size=self.max_formula_size)


def metrics(p: Proof) -> Metrics:
    lines = symbols = cuts = contractions = biggest = 0
    sizes = {}
    for _, node in iter_nodes(p):
        lines += 1
        cuts += node.rule == 'cut'
        contractions += node.rule in CONTRACTION_RULES
        for f in node.conclusion.formulas():
            n = sizes.get(id(f))
            if n is None:
                n = sizes[id(f)] = S.formula_size(f)
            symbols += n
            biggest = max(biggest, n)
    return Metrics(lines, symbols, cuts, contractions, biggest)


def subformula_property(p: Proof) -> bool:
    ends = p.conclusion.formulas()
    seen = {}
    for _, node in iter_nodes(p):
        for f in node.conclusion.formulas():
            k = alpha_key(f)
            if k not in seen:
                seen[k] = any(S.is_subformula(f, e) for e in ends)
            if not seen[k]:
                return False
    return True


def is_cut_free(p: Proof) -> bool:
    return p.cut_count == 0


def rule_census(p: Proof) -> Counter:
    return Counter(node.rule for _, node in iter_nodes(p))


# --------------------------------------------------------------- occurrences

def ancestors_in_premise(node: Proof, occ) -> list:
    """Premise occurrences ``(k, side, i)`` that ``occ`` (of ``node``'s conclusion) comes from."""
    return list(node.ancestry.get(occ, ()))


def occurrence_trace(p: Proof, occ) -> Iterator[tuple]:
    """All (path, occurrence) pairs in the ancestry tree of ``occ`` at the root."""
    stack = [((), p, occ)]
    while stack:
        path, node, o = stack.pop()
        yield path, o
        for k, s, i in node.ancestry.get(o, ()):
            stack.append((path + (k,), node.premises[k], (s, i)))


def trace_leaves(p: Proof, occ) -> list:
    """Leaf (path, occurrence, node) triples reached by following ``occ`` upward.

    A leaf is an axiom node, or a node where the occurrence is the principal
    formula of a logical rule (its ancestry continues into proper subformulas).
    """
    out = []
    stack = [((), p, occ)]
    while stack:
        path, node, o = stack.pop()
        if node.rule == 'axiom' or (o in node.principal and node.rule not in CONTRACTION_RULES):
            out.append((path, o, node))
            continue
        for k, s, i in node.ancestry.get(o, ()):
            stack.append((path + (k,), node.premises[k], (s, i)))
    return out

"""Generators: pigeonhole sequents, the e2 tower, the F_i formulas and short
feasibility proofs.

Arithmetic terms are built over ``0``, ``s``, ``+``, ``*`` and ``exp`` (written
``z^x``).  The numeral 2 is the term ``s(s(0))`` and the tower number
``e2(k)`` (k >= 1) is the term ``2^2^...^2`` with k twos, so nothing is ever
expanded into a numeral.

Non-logical axioms are atomic sequent schemas whose free variables are
schematic: the closure axioms for F plus three equations about exponentiation
(``exp-law``, ``exp-square``, ``exp-cong``).  Rewriting an argument of F_j by
an equation goes through the lemma

    QEq_j = !u !v (u = v -> (F_j(u) -> F_j(v)))

proved once per level from QEq_{j-1} and cut in at the bottom of the proof, so
every quantified formula in a generated proof is introduced by a logical rule.
"""

from __future__ import annotations

from . import kernel as K
from . import syntax as S
from .kernel import Proof, Sequent

E2_MAX = 5

ZERO = S.Const('0')
X, Y, Z = S.Var('x'), S.Var('y'), S.Var('z')


def succ(t):
    return S.App('s', (t,))


TWO = succ(succ(ZERO))


def exp(base, power):
    return S.App('exp', (base, power))


def times(a, b):
    return S.App('*', (a, b))


def plus(a, b):
    return S.App('+', (a, b))


def F(t):
    return S.Atom('F', (t,))


# ------------------------------------------------------------------ pigeonhole

def php_var(i, j):
    return S.Prop(f'p_{i}_{j}')


def php_sequent(n: int) -> Sequent:
    """n+1 pigeons, n holes: every pigeon sits somewhere |- two share a hole."""
    if n < 1:
        raise ValueError('pigeonhole sequent needs n >= 1')
    ant = tuple(S.disj([php_var(i, j) for j in range(1, n + 1)]) for i in range(1, n + 2))
    suc = tuple(S.And(php_var(i, j), php_var(m, j))
                for i in range(1, n + 2) for m in range(i + 1, n + 2) for j in range(1, n + 1))
    return Sequent(ant, suc)


def php_counts(n: int):
    """Closed forms: (antecedent size, succedent size, atoms per disjunction)."""
    return n + 1, n * (n + 1) * n // 2, n


# ---------------------------------------------------------------------- towers

class TowerTooLarge(OverflowError):
    pass


def e2(n: int) -> int:
    """e2(0) = 1, e2(n+1) = 2**e2(n)."""
    if n < 0:
        raise ValueError('e2 is defined for n >= 0')
    if n > E2_MAX:
        raise TowerTooLarge(f'e2({n}) has more than 10**19727 digits; refusing')
    v = 1
    for _ in range(n):
        v = 2 ** v
    return v


def e2_term(k: int) -> S.Term:
    """Term denoting e2(k): ``s(0)`` for k = 0, ``2`` for k = 1, then ``2^previous``."""
    if k < 0:
        raise ValueError('e2 is defined for k >= 0')
    if k == 0:
        return succ(ZERO)
    t = TWO
    for _ in range(k - 1):
        t = exp(TWO, t)
    return t


def eval_term(t: S.Term, limit: int = 10 ** 6) -> int:
    """Value of a closed arithmetic term (used to cross-check e2_term)."""
    if isinstance(t, S.Const):
        return int(t.name)
    if isinstance(t, S.Var):
        raise ValueError(f'term has free variable {t.name}')
    args = [eval_term(a, limit) for a in t.args]
    if t.fn == 's':
        return args[0] + 1
    if t.fn == '+':
        return args[0] + args[1]
    if t.fn == '*':
        return args[0] * args[1]
    if t.fn == 'exp':
        if args[1] > limit:
            raise TowerTooLarge('exponent too large to evaluate')
        return args[0] ** args[1]
    raise ValueError(f'unknown function {t.fn}')


def f_tower(i: int, x: S.Term) -> S.Formula:
    """F_0(x) = F(x); F_i(x) = !z_i (F_{i-1}(z_i) -> F_{i-1}(z_i^x))."""
    if i < 0:
        raise ValueError('tower level must be >= 0')
    if i == 0:
        return F(x)
    zv = f'z{i}'
    if zv in S.term_vars(x):
        raise ValueError(f'term may not use the bound name {zv}')
    z = S.Var(zv)
    return S.Forall(zv, S.Imp(f_tower(i - 1, z), f_tower(i - 1, exp(z, x))))


# -------------------------------------------------------------------- axioms

def eq(a, b):
    return S.Atom('=', (a, b))


def feasibility_axioms() -> dict:
    """Named axiom schemas (all atomic)."""
    return {
        'F-zero': Sequent((), (F(ZERO),)),
        'F-equality': Sequent((eq(X, Y), F(X)), (F(Y),)),
        'F-inequality': Sequent((F(X), S.Atom('<', (Y, X))), (F(Y),)),
        'F-successor': Sequent((F(X),), (F(succ(X)),)),
        'F-plus': Sequent((F(X), F(Y)), (F(plus(X, Y)),)),
        'F-times': Sequent((F(X), F(Y)), (F(times(X, Y)),)),
        'exp-law': Sequent((), (eq(exp(exp(Z, X), Y), exp(Z, times(X, Y))),)),
        'exp-square': Sequent((), (eq(times(X, X), exp(X, TWO)),)),
        'exp-cong': Sequent((eq(X, Y),), (eq(exp(Z, X), exp(Z, Y)),)),
    }


AXIOMS = feasibility_axioms()


def axiom_instance(name, **terms) -> Proof:
    """Leaf for the named schema with ``x``, ``y``, ``z`` replaced simultaneously."""
    schema = AXIOMS[name]
    fresh = {v: S.Var(f'_{v}') for v in terms}
    inst = schema
    for stage in (fresh, {f'_{v}': t for v, t in terms.items()}):
        inst = Sequent(tuple(_subst_all(f, stage) for f in inst.ant),
                       tuple(_subst_all(f, stage) for f in inst.suc))
    return K.nonlogical_axiom(name, inst)


def _subst_all(f, mapping):
    for v, t in mapping.items():
        f = S.substitute(f, v, t)
    return f


# -------------------------------------------------------------------- lemmas

def qeq(j: int) -> S.Formula:
    """QEq_j = !u !v (u = v -> (F_j(u) -> F_j(v)))."""
    u, v = S.Var('u'), S.Var('v')
    return S.Forall('u', S.Forall('v', S.Imp(eq(u, v), S.Imp(f_tower(j, u), f_tower(j, v)))))


def qeq_use(j: int, s: S.Term, t: S.Term) -> Proof:
    """QEq_j, s = t, F_j(s) |- F_j(t)  (7 lines)."""
    fs, ft = f_tower(j, s), f_tower(j, t)
    st = K.imp_left(K.axiom(fs), K.axiom(ft), fs, ft)
    st = K.imp_left(K.axiom(eq(s, t)), st, eq(s, t), S.Imp(fs, ft))
    inner = qeq(j).body
    st = K.forall_left(st, S.Imp(eq(s, t), S.Imp(fs, ft)), inner.var,
                       S.substitute(inner.body, 'u', s), t)
    st = K.forall_left(st, S.substitute(inner, 'u', s), 'u', inner, s)
    return K.reorder(st, Sequent((qeq(j), eq(s, t), fs), (ft,)))


def rewrite_proof(j: int, s: S.Term, t: S.Term, name: str, **terms) -> Proof:
    """QEq_j, F_j(s) |- F_j(t), using the equation leaf ``name`` for s = t (9 lines)."""
    st = K.cut(axiom_instance(name, **terms), qeq_use(j, s, t), eq(s, t))
    return K.reorder(st, Sequent((qeq(j), f_tower(j, s)), (f_tower(j, t),)))


def qeq_base_proof() -> Proof:
    """|- QEq_0 from F-equality (5 lines)."""
    g, h = S.Var('g0'), S.Var('h0')
    st = axiom_instance('F-equality', x=g, y=h)
    st = K.imp_right(st, F(g), F(h))
    st = K.imp_right(st, eq(g, h), S.Imp(F(g), F(h)))
    inner = qeq(0).body
    st = K.forall_right(st, S.Imp(eq(g, h), S.Imp(F(g), F(h))), inner.var,
                        S.substitute(inner.body, 'u', g), 'h0')
    return K.forall_right(st, S.substitute(inner, 'u', g), 'u', inner, 'g0')


def qeq_step_proof(j: int) -> Proof:
    """QEq_{j-1} |- QEq_j (18 lines).

    Given u = v, instantiate F_j(u) at an eigenvariable c and rewrite
    F_{j-1}(c^u) to F_{j-1}(c^v) with QEq_{j-1} and exp-cong.
    """
    if j < 1:
        raise ValueError('step lemma needs j >= 1')
    gn, hn, cn = f'g{j}', f'h{j}', f'c{j}'
    g, h, c = S.Var(gn), S.Var(hn), S.Var(cn)
    lo = lambda t: f_tower(j - 1, t)
    st = qeq_use(j - 1, exp(c, g), exp(c, h))
    st = K.cut(axiom_instance('exp-cong', x=g, y=h, z=c), st, eq(exp(c, g), exp(c, h)))
    st = K.imp_left(K.axiom(lo(c)), st, lo(c), lo(exp(c, g)))
    fg, fh = f_tower(j, g), f_tower(j, h)
    st = K.forall_left(st, S.Imp(lo(c), lo(exp(c, g))), fg.var, fg.body, c)
    st = K.imp_right(st, lo(c), lo(exp(c, h)))
    st = K.forall_right(st, S.Imp(lo(c), lo(exp(c, h))), fh.var, fh.body, cn)
    st = K.imp_right(st, fg, fh)
    st = K.imp_right(st, eq(g, h), S.Imp(fg, fh))
    inner = qeq(j).body
    st = K.forall_right(st, S.Imp(eq(g, h), S.Imp(fg, fh)), inner.var,
                        S.substitute(inner.body, 'u', g), hn)
    st = K.forall_right(st, S.substitute(inner, 'u', g), 'u', inner, gn)
    return K.reorder(st, Sequent((qeq(j - 1),), (qeq(j),)))


# -------------------------------------------------------------------- proofs

def product_lemma_proof(i: int, x: S.Term = X, y: S.Term = Y, eigen: str = None) -> Proof:
    """QEq_{i-1}, F_i(x), F_i(y) |- F_i(x*y), without cuts on quantified formulas.

    F_i(y) is instantiated at w := a^x, F_i(x) at a, and F_{i-1}((a^x)^y) is
    rewritten to F_{i-1}(a^(x*y)) by exp-law; a is the eigenvariable.
    """
    if i < 1:
        raise ValueError('product lemma needs i >= 1')
    a = eigen or f'a{i}'
    if a in S.term_vars(x) | S.term_vars(y):
        raise ValueError(f'eigenvariable {a} occurs in the terms')
    av = S.Var(a)
    g = lambda t: f_tower(i - 1, t)
    law = rewrite_proof(i - 1, exp(exp(av, x), y), exp(av, times(x, y)), 'exp-law',
                        z=av, x=x, y=y)
    st = K.imp_left(K.axiom(g(exp(av, x))), law, g(exp(av, x)), g(exp(exp(av, x), y)))
    fy = f_tower(i, y)
    st = K.forall_left(st, S.Imp(g(exp(av, x)), g(exp(exp(av, x), y))), fy.var, fy.body,
                       exp(av, x))
    st = K.imp_left(K.axiom(g(av)), st, g(av), g(exp(av, x)))
    fx = f_tower(i, x)
    st = K.forall_left(st, S.Imp(g(av), g(exp(av, x))), fx.var, fx.body, av)
    st = K.imp_right(st, g(av), g(exp(av, times(x, y))))
    fxy = f_tower(i, times(x, y))
    st = K.forall_right(st, S.Imp(g(av), g(exp(av, times(x, y)))), fxy.var, fxy.body, a)
    return K.reorder(st, Sequent((qeq(i - 1), fx, fy), (fxy,)))


def two_proof(i: int) -> Proof:
    """|- F_i(2), with QEq lemmas for the levels below in the antecedent.

    i = 0: F(0) and two successor steps.  i >= 1: square an eigenvariable b
    with the product lemma one level down (F-times at level 0), rewrite
    b*b to b^2, contract the two copies of F_{i-1}(b) and generalize.
    """
    if i < 0:
        raise ValueError('tower level must be >= 0')
    if i == 0:
        one = K.cut(axiom_instance('F-zero'), axiom_instance('F-successor', x=ZERO), F(ZERO))
        return K.cut(one, axiom_instance('F-successor', x=succ(ZERO)), F(succ(ZERO)))
    b = f'b{i}'
    bv = S.Var(b)
    g = lambda t: f_tower(i - 1, t)
    if i == 1:
        sq = axiom_instance('F-times', x=bv, y=bv)
    else:
        sq = product_lemma_proof(i - 1, bv, bv)
    rw = rewrite_proof(i - 1, times(bv, bv), exp(bv, TWO), 'exp-square', x=bv)
    st = K.cut(sq, rw, g(times(bv, bv)))
    st = K.contract_left(st, g(bv))
    st = K.imp_right(st, g(bv), g(exp(bv, TWO)))
    fi = f_tower(i, TWO)
    st = K.forall_right(st, S.Imp(g(bv), g(exp(bv, TWO))), fi.var, fi.body, b)
    lem = tuple(qeq(j) for j in ((i - 2, i - 1) if i >= 2 else (0,)))
    return K.reorder(st, Sequent(lem, (fi,)))


def block_proof(i: int, t: S.Term) -> Proof:
    """F_i(t), F_{i-1}(2) |- F_{i-1}(2^t): instantiate F_i(t) at z := 2."""
    g = lambda u: f_tower(i - 1, u)
    st = K.imp_left(K.axiom(g(TWO)), K.axiom(g(exp(TWO, t))), g(TWO), g(exp(TWO, t)))
    fi = f_tower(i, t)
    st = K.forall_left(st, S.Imp(g(TWO), g(exp(TWO, t))), fi.var, fi.body, TWO)
    return K.reorder(st, Sequent((fi, g(TWO)), (g(exp(TWO, t)),)))


def chain_proof(n: int) -> Proof:
    """F_n(2), ..., F_1(2), F_0(2) |- F_0(e2(n+1)), by cutting the blocks together."""
    if n == 0:
        return K.axiom(F(TWO))
    st = block_proof(n, e2_term(1))
    for i in range(n - 1, 0, -1):
        # block i consumes F_i(e2(n-i+1)), produced by the chain so far
        st = K.cut(st, block_proof(i, e2_term(n - i + 1)), f_tower(i, e2_term(n - i + 1)))
    return K.reorder(st, Sequent(tuple(f_tower(i, TWO) for i in range(n, -1, -1)),
                                 (F(e2_term(n + 1)),)))


def _contract_dups(p: Proof) -> Proof:
    """Contract repeated antecedent formulas down to one copy each."""
    seen, target = set(), []
    for f in p.conclusion.ant:
        k = S.alpha_key(f)
        if k not in seen:
            seen.add(k)
            target.append(f)
    return K.contract_all(p, Sequent(tuple(target), p.conclusion.suc))


def feasibility_proof(n: int) -> Proof:
    """|- F(e2(n+1)) with O(n) lines.

    The chain (1) is cut against |- F_i(2) for every i; the QEq lemmas this
    leaves in the antecedent are discharged from the top level down.
    """
    if n < 0:
        raise ValueError('n must be >= 0')
    st = chain_proof(n)
    for i in range(n, -1, -1):
        st = _contract_dups(K.cut(two_proof(i), st, f_tower(i, TWO)))
    for j in range(n - 1, 0, -1):
        st = _contract_dups(K.cut(qeq_step_proof(j), st, qeq(j)))
    if n >= 1:
        st = K.cut(qeq_base_proof(), st, qeq(0))
    return K.reorder(st, Sequent((), (F(e2_term(n + 1)),)))

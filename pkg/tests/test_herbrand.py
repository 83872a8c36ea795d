import pytest

from lkflow import herbrand as H
from lkflow import kernel as K
from lkflow import syntax as S
from lkflow.kernel import QUANTIFIER_RULES, check, rule_census

import corpus
import oracles
from corpus import f, pr, term


def _no_quantifier_rules(p):
    return not any(rule_census(p)[r] for r in QUANTIFIER_RULES)


def _oracle_valid(res):
    return oracles.sequent_valid((), res.disjunction_proof.conclusion.suc)


@pytest.mark.parametrize('matrix,var,witnesses', corpus.HERBRAND_SUITE)
def test_suite_extraction(matrix, var, witnesses):
    p = corpus.herbrand_proof(matrix, var, witnesses)
    assert check(p) and K.is_cut_free(p)
    res = H.extract(p)
    assert [S.print_term(t) for t in res.terms] == list(witnesses)
    assert check(res.disjunction_proof)
    assert _no_quantifier_rules(res.disjunction_proof)
    assert _oracle_valid(res) and H.instances_valid(res)
    body = f(matrix)
    want = tuple(S.substitute(body, var, t) for t in res.terms)
    assert res.disjunction_proof.conclusion.suc == want


def test_single_witness_example():
    res = H.extract(corpus.herbrand_proof('P(c) -> P(x)', 'x', ('c',)))
    assert [S.print_term(t) for t in res.terms] == ['c']
    assert res.disjunction_proof.conclusion.suc == (f('P(c) -> P(c)'),)


def test_two_witness_example():
    res = H.extract(corpus.herbrand_proof('P(x) -> P(f(x))', 'x', ('c', 'f(c)')))
    assert [S.print_term(t) for t in res.terms] == ['c', 'f(c)']
    assert set(oracles.atoms(res.disjunction)) == {'P(c)', 'P(f(c))', 'P(f(f(c)))'}
    assert oracles.sequent_valid((), (res.disjunction,))
    # neither instance is valid on its own
    for inst in res.disjunction_proof.conclusion.suc:
        assert not oracles.sequent_valid((), (inst,))


def test_contraction_chain_depth_three():
    ws = ('c', 'f(c)', 'f(f(c))', 'a')
    p = corpus.herbrand_proof('P(x) -> P(f(x))', 'x', ws)
    census = rule_census(p)
    assert census['contract-right'] == 3 and census['exists-right'] == 4
    res = H.extract(p)
    assert len(res.terms) == census['exists-right']


def test_extract_shape_errors():
    with pytest.raises(H.HerbrandError):
        H.extract(pr('p |- p'))
    with pytest.raises(H.HerbrandError):
        H.extract(corpus.lemma_fragment())


def test_exists_over_neg_midsequent():
    pc = f('P(c)')
    p = K.exists_right(K.axiom(pc), pc, 'x', f('P(x)'), term('c'))
    p = K.neg_right(p, pc)
    assert p.conclusion.key() == K.parse_sequent('|- ?x P(x), ~P(c)').key()
    assert not H.midsequent_ok(p)
    m = H.midsequent(p)
    assert check(m) and H.midsequent_ok(m)
    assert m.conclusion.key() == p.conclusion.key()
    assert m.rule == 'exists-right'


def test_forall_exists_midsequent():
    ra = f('R(a)')
    p = K.forall_left(K.axiom(ra), ra, 'x', f('R(x)'), term('a'))
    p = K.exists_right(p, ra, 'y', f('R(y)'), term('a'))
    m = H.midsequent(p)
    assert check(m) and H.midsequent_ok(m)
    assert m.conclusion.key() == K.parse_sequent('!x R(x) |- ?y R(y)').key()


@pytest.mark.parametrize('name', sorted(corpus.midsequent_cases()))
def test_midsequent_cases(name):
    p = corpus.midsequent_cases()[name]
    assert check(p) and not H.midsequent_ok(p)
    m = H.midsequent(p)
    assert check(m) and H.midsequent_ok(m)
    assert m.conclusion.key() == p.conclusion.key()
    assert m.lines <= 2 * p.lines


def test_midsequent_suite_proofs():
    for matrix, var, ws in corpus.HERBRAND_SUITE:
        p = corpus.herbrand_proof(matrix, var, ws)
        m = H.midsequent(p)
        assert check(m) and H.midsequent_ok(m)


def test_quantifier_free_unchanged():
    p = pr('p /\\ q |- q \\/ r')
    assert H.midsequent(p) is p or H.midsequent(p) == p


def test_midsequent_errors():
    with pytest.raises(H.HerbrandError):
        H.midsequent(corpus.lemma_fragment())
    pa = f('P(a)')
    q = K.forall_left(K.axiom(pa), pa, 'x', f('P(x)'), term('a'))
    q = K.forall_right(q, pa, 'x', f('P(x)'), 'a')
    q = K.neg_left(q, f('!x P(x)'))
    q = K.neg_right(q, f('~(!x P(x))'))
    assert check(q)
    with pytest.raises(H.HerbrandError):
        H.midsequent(q)

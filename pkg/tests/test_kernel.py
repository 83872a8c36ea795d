import dataclasses

import pytest

from lkflow import gens
from lkflow import kernel as K
from lkflow import syntax as S
from lkflow.kernel import Sequent, check, metrics, parse_sequent, subformula_property

import corpus
from corpus import f, pr


def test_axiom_accepts():
    p = K.axiom(S.Prop('p'))
    assert check(p)
    m = metrics(p)
    assert (m.lines, m.cuts) == (1, 0)


def test_excluded_middle_by_hand():
    p = S.Prop('p')
    proof = K.or_right(K.neg_right(K.axiom(p), p), p, f('~p'))
    assert str(proof.conclusion) == '|- p \\/ ~p'
    assert check(proof)
    assert subformula_property(proof)


def test_eigenvariable_violation_rejected():
    fa = f('P(a)')
    base = K.axiom(fa)                       # P(a) |- P(a)
    bad = K.exists_left(base, fa, 'x', f('P(x)'), 'a')
    rep = check(bad)
    assert not rep
    assert 'eigenvariable' in rep.reason


def test_witness_capture_rejected():
    # !y R(y, y) |- ... instantiating !x ?y R(x, y) with witness y would capture
    inst = f('?y R(y, y)')
    leaf = K.axiom(inst)
    node = K.forall_left(leaf, inst, 'x', f('?y R(x, y)'), S.Var('y'))
    assert not check(node)


def test_tampered_conclusion_rejected():
    p = corpus.lemma_fragment()
    bad = dataclasses.replace(p, conclusion=parse_sequent('|- q'))
    rep = check(bad)
    assert not rep and rep.node == ()


def test_bad_axiom_rejected():
    bad = K.Proof('axiom', parse_sequent('p |- q'), principal=(('L', 0), ('R', 0)))
    assert 'differ' in check(bad).reason


def test_constants_only_when_allowed():
    p = K.constant_axiom(S.BOT, (), (S.Prop('q'),))
    assert not check(p)
    assert check(p, allow_constants=True)


def test_metrics_six_line_fragment():
    m = metrics(corpus.six_line_fragment())
    assert (m.lines, m.cuts, m.contractions) == (6, 1, 1)


def test_metrics_additive():
    for _, p in corpus.cut_corpus()[:40]:
        for _, node in K.iter_nodes(p):
            assert node.lines == 1 + sum(q.lines for q in node.premises)


def test_symbol_count():
    p = K.axiom(f('p /\\ q'))
    assert metrics(p).symbols == 6
    assert metrics(p).max_formula_size == 3


def test_subformula_property_fails_for_lemma_cut():
    # |- q \/ ~q through the lemma p \/ ~p: the cut formula is foreign
    proof = corpus.lemma_fragment()
    assert check(proof)
    assert not subformula_property(proof)
    assert subformula_property(proof.premises[0])


def test_sequent_multiset_equality():
    a = parse_sequent('p, q, p |- r')
    b = parse_sequent('q, p, p |- r')
    c = parse_sequent('q, p |- r')
    assert a.key() == b.key()
    assert a.key() != c.key()


def test_reorder_and_contract_all():
    p = pr('p, q |- q /\\ p')
    target = parse_sequent('q, p |- q /\\ p')
    r = K.reorder(p, target)
    assert check(r) and r.conclusion == target
    dup = K.axiom(S.Prop('p'), (S.Prop('p'),), (S.Prop('p'),))
    c = K.contract_all(dup, parse_sequent('p |- p'))
    assert check(c) and c.conclusion.key() == parse_sequent('p |- p').key()


def test_nonlogical_axiom_needs_declaration():
    leaf = gens.axiom_instance('F-successor', x=gens.ZERO)
    assert not check(leaf)
    assert check(leaf, gens.AXIOMS)
    wrong = dataclasses.replace(leaf, axiom='F-zero')
    assert not check(wrong, gens.AXIOMS)


def test_ancestry_must_be_total():
    p = K.neg_right(K.axiom(S.Prop('p')), S.Prop('p'))
    broken = dataclasses.replace(p, ancestry={})
    assert 'ancestry' in check(broken).reason


def test_closed_loop_over_corpus():
    for _, p in corpus.cut_corpus():
        assert check(p)


def test_trace_leaves_follow_direct_descent():
    p = corpus.conjunction_fragment()
    leaves = K.trace_leaves(p.premises[0], ('R', 0))
    assert leaves
    for path, occ, node in leaves:
        assert node is K.node_at(p.premises[0], path)
        assert node.rule == 'axiom' or (node.rule in K.LOGICAL_RULES and occ in node.principal)


def test_parse_sequent_needs_turnstile():
    with pytest.raises(S.ParseError):
        parse_sequent('p, q')
    assert parse_sequent('|-') == Sequent((), ())

"""Property-based checks over generated formulas, sequents and proofs."""

import random

from hypothesis import given, settings, strategies as st

from lkflow import flowgraph as FG
from lkflow import interp as I
from lkflow import kernel as K
from lkflow import syntax as S
from lkflow.cutelim import STRATEGIES, eliminate_cuts
from lkflow.prover import prove

import corpus
import oracles

ATOMS = st.sampled_from([S.Prop(n) for n in 'pqr'])

formulas = st.recursive(
    ATOMS,
    lambda sub: st.one_of(
        st.builds(S.Neg, sub),
        st.builds(S.And, sub, sub),
        st.builds(S.Or, sub, sub),
        st.builds(S.Imp, sub, sub),
    ),
    max_leaves=6,
)

sequents = st.builds(
    K.Sequent,
    st.lists(formulas, max_size=2).map(tuple),
    st.lists(formulas, min_size=1, max_size=2).map(tuple),
)

fast = settings(max_examples=60, deadline=None)


@fast
@given(formulas)
def test_print_parse_roundtrip(f):
    assert S.parse_formula(S.print_formula(f)) == f


@fast
@given(sequents)
def test_prover_matches_truth_tables(seq):
    res = prove(seq)
    assert res.valid == oracles.sequent_valid(seq.ant, seq.suc)
    if res.valid:
        assert K.check(res.proof) and K.is_cut_free(res.proof)
        assert res.proof.conclusion.key() == seq.key()
    else:
        assert oracles.falsifies(seq.ant, seq.suc, res.countermodel)


@fast
@given(sequents, st.randoms(use_true_random=False))
def test_interpolant_contract(seq, rnd):
    res = prove(seq)
    if not res.valid:
        return
    part = I.Partition(frozenset(o for o in seq.occurrences() if rnd.random() < 0.5))
    itp = I.interpolate(res.proof, part)
    assert I.check_interpolant(res.proof, part, itp) == []
    ls, rs = I.part_sequents(seq, part)
    assert oracles.sequent_valid(ls.ant, ls.suc + (itp.formula,))
    assert oracles.sequent_valid((itp.formula,) + rs.ant, rs.suc)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(STRATEGIES))
def test_cut_elimination_random(seed, strategy):
    rng = random.Random(seed)
    p = corpus.synthetic_cut(rng, max_lines=40)
    q, _ = eliminate_cuts(p, strategy=strategy)
    assert K.check(q) and K.is_cut_free(q)
    assert q.conclusion.key() == p.conclusion.key()
    assert K.subformula_property(q)
    assert FG.find_cycles(FG.build(q)).count == 0


@fast
@given(sequents)
def test_flow_graph_signs(seq):
    res = prove(seq)
    if not res.valid:
        return
    g = FG.build(res.proof)
    for u, v, origin in g.edges:
        assert (g.sign(u) is g.sign(v)) == (origin not in ('axiom', 'cut'))

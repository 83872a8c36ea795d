"""Acceptance criteria 1-10, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (also repeated in
the terminal summary by conftest) and then fails normally if the criterion
does not hold.
"""

import itertools
import os
import random
import statistics
import time

import pytest

from lkflow import flowgraph as FG
from lkflow import gens
from lkflow import herbrand as H
from lkflow import interp as I
from lkflow import kernel as K
from lkflow import syntax as S
from lkflow.cli import run
from lkflow.cutelim import STRATEGIES, StrategyChoice, eliminate_cuts, eliminate_free_cuts, \
    reduce_step_info
from lkflow.deep import run_deep
from lkflow.kernel import Sequent, check
from lkflow.prover import prove

import corpus
import golden_cases
import oracles
from test_prover import formulas_upto

RESULTS = []


def record(n, ok, detail=''):
    line = f'criterion {n}: {"PASS" if ok else "FAIL"}' + (f'  {detail}' if detail else '')
    RESULTS.append(line)
    print(line)
    assert ok, line


# ------------------------------------------------------------------ 1

def test_criterion_1_cut_elimination_corpus():
    proofs = corpus.cut_corpus()
    start = time.perf_counter()
    bad = []
    for name, p in proofs:
        for strat in STRATEGIES:
            q, _ = eliminate_cuts(p, strat)
            if not (check(q) and K.is_cut_free(q)
                    and q.conclusion.key() == p.conclusion.key()
                    and K.subformula_property(q)):
                bad.append((name, strat))
    secs = time.perf_counter() - start
    ok = len(proofs) >= 200 and not bad and secs < 60
    record(1, ok, f'proofs={len(proofs)} strategies={len(STRATEGIES)} failures={len(bad)} time={secs:.1f}s')


# ------------------------------------------------------------------ 2

def _cut_formulas(q):
    return [S.print_formula(golden_cases.cut_formula(n)) for _, n in K.iter_nodes(q) if n.rule == 'cut']


def test_criterion_2_worked_reductions():
    problems = []
    for name, text in golden_cases.cases().items():
        with open(os.path.join(golden_cases.GOLDEN_DIR, name), encoding='utf-8') as fh:
            if fh.read() != text:
                problems.append(f'golden {name}')

    p, pi0 = corpus.contraction_fragment()
    q, info = reduce_step_info(p, (), StrategyChoice(side='right'))
    copies = [n for _, n in K.iter_nodes(q) if n.conclusion == pi0.conclusion and n.rule == pi0.rule]
    if not (info.dup == pi0.lines and len(copies) == 2 and q.rule.startswith('contract')
            and q.cut_count == 2 and check(q)):
        problems.append('contraction crossing')

    conj = corpus.conjunction_fragment()
    q0, _ = reduce_step_info(conj, (), StrategyChoice(order=0))
    q1, _ = reduce_step_info(conj, (), StrategyChoice(order=1))
    if not (_cut_formulas(q0) == ['q', 'p'] and _cut_formulas(q1) == ['p', 'q']):
        problems.append('conjunction orders')

    qp = golden_cases.quantifier_push()
    if sorted(_cut_formulas(qp)) != ['F(s)', 'F(t)'] or not check(qp):
        problems.append('quantifier substitution')
    record(2, not problems, 'mismatches=' + (','.join(problems) or 'none'))


# ------------------------------------------------------------------ 3

def test_criterion_3_oriented_acyclicity():
    start = time.perf_counter()
    checked, cyclic = 0, []
    pool = [(n, p) for n, p in corpus.cut_corpus()]
    pool += [(f'valid-{i}', p) for i, (_, p) in enumerate(corpus.valid_sequents(220, seed=11))]
    for name, p in pool:
        targets = [eliminate_cuts(p)[0]]
        if K.metrics(p).contractions == 0:
            targets.append(p)
        if K.is_cut_free(p):
            targets.append(p)
        for t in targets:
            checked += 1
            if FG.find_cycles(FG.build(t)).count:
                cyclic.append(name)
    secs = time.perf_counter() - start
    record(3, not cyclic and secs < 30, f'graphs={checked} with_cycles={len(cyclic)} time={secs:.1f}s')


# ------------------------------------------------------------------ 4

def _law_violations(p):
    g = FG.build(p)
    out = 0
    for u, v, origin in g.edges:
        if (g.sign(u) is g.sign(v)) == (origin in ('axiom', 'cut')):
            out += 1
    fan_ok = {path for path, n in K.iter_nodes(p)
              if n.rule in K.CONTRACTION_RULES or (n.rule == 'axiom' and n.axiom is not None)}
    for v in g.graph.nodes:
        if g.graph.in_degree(v) + g.graph.out_degree(v) > 2 and v.node not in fan_ok:
            out += 1
    return out


def test_criterion_4_sign_and_degree_laws():
    violations = sum(_law_violations(p) for _, p in corpus.cut_corpus())
    violations += sum(_law_violations(gens.feasibility_proof(n)) for n in range(3))
    example = FG.build(K.axiom(S.parse_formula('p \\/ (~p /\\ q)')))
    f = S.parse_formula('p /\\ (~q \\/ ~(~r))')
    signs = {S.print_formula(S.subformula_at(f, q)): S.sign_at(f, q).value
             for q in S.atom_paths(f)}
    want_signs = {'p': S.Sign.POSITIVE.value, 'q': S.Sign.NEGATIVE.value, 'r': S.Sign.POSITIVE.value}
    ok = violations == 0 and len(example.edges) == 3 and signs == want_signs
    record(4, ok, f'violations={violations} axiom_example_edges={len(example.edges)}')


# ------------------------------------------------------------------ 5

def test_criterion_5_feasibility():
    start = time.perf_counter()
    lines = [gens.feasibility_proof(n).lines for n in range(2, 9)]
    diffs = {b - a for a, b in zip(lines, lines[1:])}

    def free_lines(n):
        q, _ = eliminate_free_cuts(gens.feasibility_proof(n), gens.AXIOMS)
        return q.lines

    free = [run_deep(free_lines, n) for n in (1, 2, 3)]
    ratios = [free[1] / free[0], free[2] / free[1]]
    cycles = [FG.cycle_count(FG.build(gens.feasibility_proof(n)))[0] for n in (1, 2, 3)]
    gaps = [b - a for a, b in zip(cycles, cycles[1:])]
    secs = time.perf_counter() - start
    ok = (len(diffs) == 1 and ratios[1] > ratios[0] and gaps[1] > gaps[0] > 0 and secs < 300)
    record(5, ok, f'lines(2..8)={lines} free(1..3)={free} ratios={ratios[0]:.3f},{ratios[1]:.3f} '
                  f'cycles(1..3)={cycles}')


# ------------------------------------------------------------------ 6

def test_criterion_6_interpolation():
    rng = random.Random(17)
    fails, pts = 0, []
    sample = corpus.valid_sequents(220, seed=11)
    for seq, p in sample:
        part = I.Partition(frozenset(o for o in seq.occurrences() if rng.random() < 0.5))
        itp = I.interpolate(p, part)
        ls, rs = I.part_sequents(seq, part)
        common = set(oracles.atoms_of_sequent(ls)) & set(oracles.atoms_of_sequent(rs))
        good = (I.check_interpolant(p, part, itp) == []
                and set(oracles.atoms(itp.formula)) <= common
                and oracles.sequent_valid(ls.ant, ls.suc + (itp.formula,))
                and oracles.sequent_valid((itp.formula,) + rs.ant, rs.suc))
        fails += not good
        pts.append((p.lines, itp.size))
    xs, ys = [x for x, _ in pts], [y for _, y in pts]
    mx, my = statistics.mean(xs), statistics.mean(ys)
    slope = sum((x - mx) * (y - my) for x, y in pts) / sum((x - mx) ** 2 for x in xs)
    pts.sort()
    quarter = len(pts) // 4
    lo = statistics.mean(y / x for x, y in pts[:quarter])
    hi = statistics.mean(y / x for x, y in pts[-quarter:])
    vars_ok = all(len(oracles.atoms_of_sequent(s)) <= 10 for s, _ in sample)
    ok = len(sample) >= 200 and fails == 0 and vars_ok and hi <= lo
    record(6, ok, f'sequents={len(sample)} failures={fails} slope={slope:.3f} '
                  f'size/lines low={lo:.3f} high={hi:.3f}')


# ------------------------------------------------------------------ 7

def test_criterion_7_herbrand():
    fails = 0
    for matrix, var, ws in corpus.HERBRAND_SUITE:
        p = corpus.herbrand_proof(matrix, var, ws)
        res = H.extract(p)
        qp = res.disjunction_proof
        census = K.rule_census(qp)
        good = (check(qp) and not any(census[r] for r in K.QUANTIFIER_RULES)
                and oracles.sequent_valid((), qp.conclusion.suc))
        m = H.midsequent(p)
        good = good and check(m) and H.midsequent_ok(m)
        fails += not good
    for p in corpus.midsequent_cases().values():
        m = H.midsequent(p)
        fails += not (check(m) and H.midsequent_ok(m))
    has_example = any(m == 'P(x) -> P(f(x))' for m, _, _ in corpus.HERBRAND_SUITE)
    ok = len(corpus.HERBRAND_SUITE) >= 10 and has_example and fails == 0
    record(7, ok, f'theorems={len(corpus.HERBRAND_SUITE)} failures={fails}')


# ------------------------------------------------------------------ 8

def test_criterion_8_pigeonhole():
    proved = []
    for n in (1, 2):
        res = prove(gens.php_sequent(n))
        proved.append(res.valid and bool(check(res.proof)))
    counts = all(
        (len(gens.php_sequent(n).ant), len(gens.php_sequent(n).suc))
        == (n + 1, n * len(list(itertools.combinations(range(n + 1), 2))))
        for n in range(1, 7))
    record(8, all(proved) and counts, f'proved(n=1,2)={proved} counts_n<=6={counts}')


# ------------------------------------------------------------------ 9

def test_criterion_9_oracle_agreement():
    disagree = 0
    cases = [((), (f,)) for f in formulas_upto(2)]
    small = formulas_upto(1)
    cases += [((a,), (b,)) for a, b in itertools.product(small, small)]
    for ant, suc in cases:
        res = prove(Sequent(ant, suc))
        if res.valid != oracles.sequent_valid(ant, suc):
            disagree += 1
        elif not res.valid and not oracles.falsifies(ant, suc, res.countermodel):
            disagree += 1
    e2 = [gens.e2(n) for n in range(5)]
    want = [1]
    for _ in range(4):
        want.append(2 ** want[-1])
    ok = disagree == 0 and e2 == want and e2[4] == 65536
    record(9, ok, f'sequents={len(cases)} disagreements={disagree} e2(0..4)={e2}')


# ------------------------------------------------------------------ 10

def _pipelines(d):
    def call(*argv):
        import io
        return run([str(a) for a in argv], io.StringIO(), io.StringIO())

    codes = []
    src = d / 'feas2.proof'
    codes.append(call('gen', 'feas', 2, '--output', src))
    codes.append(call('check', src))
    codes.append(call('freecuts', '--axioms', 'feasibility', '--trace', d / 'free.json',
                      src, d / 'free.proof'))
    codes.append(call('flowgraph', '--json', d / 'graph.json', '--dot', d / 'graph.dot', src))
    codes.append(call('cycles', d / 'graph.json'))
    lemma = d / 'lemma.proof'
    from lkflow import proofio
    proofio.dump(corpus.lemma_fragment(), str(lemma))
    for strat in STRATEGIES:
        codes.append(call('eliminate', '--strategy', strat, '--trace', d / f'{strat}.json',
                          lemma, d / f'{strat}.proof'))
    codes.append(call('prove', 'p /\\ q |- p \\/ r', '--output', d / 'itp.proof'))
    codes.append(call('interpolate', '--partition', 'L,R', '--left-out', d / 'l.proof',
                      '--right-out', d / 'r.proof', d / 'itp.proof'))
    h = d / 'h.proof'
    proofio.dump(corpus.herbrand_proof('P(x) -> P(f(x))', 'x', ('c', 'f(c)')), str(h))
    codes.append(call('herbrand', '--output', d / 'h-qf.proof', h))
    codes.append(call('midsequent', h, d / 'h-mid.proof'))
    codes.append(call('gen', 'php', 2, '--output', d / 'php.proof'))
    codes.append(call('report', d / 'report', '--max-n', 3, '--freecut-max', 1, '--cycles-max', 3))
    files = {}
    for root, _, names in os.walk(d):
        for name in names:
            path = os.path.join(root, name)
            with open(path, 'rb') as fh:
                files[os.path.relpath(path, d)] = fh.read()
    return codes, files


def test_criterion_10_determinism(tmp_path):
    a, b = tmp_path / 'a', tmp_path / 'b'
    a.mkdir()
    b.mkdir()
    codes_a, files_a = _pipelines(a)
    codes_b, files_b = _pipelines(b)
    differing = sorted(k for k in files_a if files_a[k] != files_b.get(k))
    ok = codes_a == codes_b and all(c == 0 for c in codes_a) and not differing \
        and files_a.keys() == files_b.keys()
    record(10, ok, f'files={len(files_a)} differing={len(differing)}')

"""Cut elimination by local rewriting.

Every rewrite acts on a single cut node and returns a valid subproof with
the same conclusion, so the proof stays checkable after each step:

``axiom-erase``
    one premise is an axiom whose distinguished formula is the cut formula;
    the axiom is dropped and the other premise weakened with its side formulas.
``weak-erase``
    the cut formula only ever comes from axiom side formulas on one side; it
    is erased there and the other premise is discarded.
``contraction-cross-left`` / ``contraction-cross-right``
    the cut formula was produced by a contraction; the cut is pushed above it
    and the opposite premise is duplicated, with contractions added below.
``rank-permute``
    the cut formula is a side formula of the premise's last rule; the cut moves
    into the premise holding it.
``logical-pair`` / ``quantifier-pair``
    both premises introduce the cut formula; it is replaced by cuts on its
    immediate subformulas (or an instance, after substituting the witness for
    the eigenvariable).

Full elimination (:func:`eliminate_cuts`) drives these steps.  For a chosen
cut it first works along one premise, carrying along every cut that
contraction-crossing creates on the same formula, until the cut formula is
introduced there, then does the same on the other premise, and finally
applies the pair step; the smaller cuts are eliminated recursively.  Each
phase recurses on a strictly smaller subproof, and the pair step lowers the
cut degree, which gives termination.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional

from . import kernel as K
from . import syntax as S
from .kernel import (CONTRACTION_RULES, LOGICAL_RULES, Metrics, Proof, iter_nodes, metrics,
                     node_at, reorder, replace_at, trace_leaves)
from .surgery import (_erase, is_weak, proof_vars, rebuild_node, refresh_eigen,
                      substitute_proof, weaken)

STRATEGIES = ('uppermost-first', 'lowest-first', 'rightmost-duplication')


class CutElimError(Exception):
    pass


class NotACut(CutElimError):
    pass


class Blocked(CutElimError):
    """The cut formula is anchored in a non-logical axiom."""


@dataclass
class StrategyChoice:
    """Resolves the nondeterminism of a single step.

    ``side`` picks which premise to work on ('auto', 'left' or 'right');
    ``order`` picks which of the two subformula cuts goes on top after a
    logical pair (0 keeps the left component innermost).
    """
    side: str = 'auto'
    order: int = 0


@dataclass
class ReductionStep:
    kind: str
    cut_node: str
    duplicated_subproof_lines: int = 0
    connective: Optional[str] = None
    lines: int = 0
    cuts: int = 0


@dataclass
class Trace:
    steps: List[ReductionStep] = field(default_factory=list)
    metrics_before: Optional[Metrics] = None
    metrics_after: Optional[Metrics] = None

    def to_json(self) -> str:
        return json.dumps([asdict(s) for s in self.steps], indent=1, sort_keys=True)


@dataclass
class _Info:
    kind: str
    new_cuts: tuple = ()
    dup: int = 0
    connective: Optional[str] = None


def path_str(path) -> str:
    return '.'.join(map(str, path)) if path else 'root'


# ------------------------------------------------------------- local helpers

def _cut_parts(c: Proof):
    if c.rule != 'cut':
        raise NotACut(f'node is a {c.rule}, not a cut')
    p, q = c.premises
    (_, _, i), (_, _, j) = c.aux
    return p, q, ('R', i), ('L', j)


def _locate_src(node: Proof, src):
    """Conclusion occurrence of ``node`` whose ancestry is exactly ``src``."""
    for o, a in node.ancestry.items():
        if tuple(a) == (src,):
            return o
    raise CutElimError(f'occurrence {src} has no descendant')


def _finish(c: Proof, new: Proof) -> Proof:
    return reorder(new, c.conclusion)


def _cut_paths(new: Proof):
    """Paths (relative) of the cut nodes on the unary-contraction spine of ``new``."""
    path = ()
    node = new
    while node.rule in CONTRACTION_RULES:
        node = node.premises[0]
        path += (0,)
    return path


def _anchored_leaves(p: Proof, occ) -> bool:
    return any(node.axiom is not None and o in node.principal
               for _, o, node in trace_leaves(p, occ))


def is_anchored(c: Proof) -> bool:
    p, q, op, oq = _cut_parts(c)
    return _anchored_leaves(p, op) or _anchored_leaves(q, oq)


def _principal_logical(p: Proof, occ) -> bool:
    return p.rule in LOGICAL_RULES and occ in p.principal


def _context_of(p: Proof, occ):
    """Ancestor ``(k, s, i)`` of a non-principal occurrence."""
    (src,) = p.ancestry[occ]
    return src


# ----------------------------------------------------------------- the steps

def _inv(node):
    """Premise occurrence ``(k, s, i)`` -> conclusion occurrence of ``node``."""
    out = {}
    for o, srcs in node.ancestry.items():
        for src in srcs:
            out[src] = o
    return out


def _exact(c, new, corr):
    """Reorder ``new`` to ``c``'s conclusion; ``corr`` maps c's occurrences to new's."""
    return reorder(new, c.conclusion, {v: k for k, v in corr.items()})


def _ranks(n, skip):
    out, r = {}, 0
    for i in range(n):
        if i != skip:
            out[i] = r
            r += 1
    return out


def _sources(c):
    return {o: srcs[0] for o, srcs in c.ancestry.items()}


def axiom_erase_left(c):
    p, q, op, oq = _cut_parts(c)
    if p.rule != 'axiom' or p.axiom is not None or op not in p.principal:
        raise CutElimError('left premise is not a logical axiom on the cut formula')
    la = next(o for o in p.principal if o[0] == 'L')
    gam = [f for i, f in enumerate(p.conclusion.ant) if ('L', i) != la]
    dlt = [f for i, f in enumerate(p.conclusion.suc) if ('R', i) != op]
    new = weaken(q, gam, dlt)
    ra, rs = _ranks(len(p.conclusion.ant), la[1]), _ranks(len(p.conclusion.suc), op[1])
    na, ns = len(q.conclusion.ant), len(q.conclusion.suc)
    corr = {}
    for o, (k, s, i) in _sources(c).items():
        if k == 1:
            corr[o] = (s, i)
        elif (s, i) == la:
            corr[o] = oq        # the axiom's copy of the cut formula takes Q's place
        else:
            corr[o] = (s, (na + ra[i]) if s == 'L' else (ns + rs[i]))
    return _exact(c, new, corr), _Info('axiom-erase')


def axiom_erase_right(c):
    p, q, op, oq = _cut_parts(c)
    if q.rule != 'axiom' or q.axiom is not None or oq not in q.principal:
        raise CutElimError('right premise is not a logical axiom on the cut formula')
    ra_ = next(o for o in q.principal if o[0] == 'R')
    gam = [f for i, f in enumerate(q.conclusion.ant) if ('L', i) != oq]
    dlt = [f for i, f in enumerate(q.conclusion.suc) if ('R', i) != ra_]
    new = weaken(p, gam, dlt)
    ra, rs = _ranks(len(q.conclusion.ant), oq[1]), _ranks(len(q.conclusion.suc), ra_[1])
    na, ns = len(p.conclusion.ant), len(p.conclusion.suc)
    corr = {}
    for o, (k, s, i) in _sources(c).items():
        if k == 0:
            corr[o] = (s, i)
        elif (s, i) == ra_:
            corr[o] = op
        else:
            corr[o] = (s, (na + ra[i]) if s == 'L' else (ns + rs[i]))
    return _exact(c, new, corr), _Info('axiom-erase')


def weak_erase_left(c):
    p, q, op, oq = _cut_parts(c)
    if not is_weak(p, op):
        raise CutElimError('left cut formula is not weak')
    gam = [f for i, f in enumerate(q.conclusion.ant) if ('L', i) != oq]
    pe, m = _erase(p, {op})
    new = weaken(pe, gam, q.conclusion.suc)
    ra = _ranks(len(q.conclusion.ant), oq[1])
    na, ns = len(pe.conclusion.ant), len(pe.conclusion.suc)
    corr = {}
    for o, (k, s, i) in _sources(c).items():
        if k == 0:
            corr[o] = m[(s, i)]
        else:
            corr[o] = (s, (na + ra[i]) if s == 'L' else (ns + i))
    return _exact(c, new, corr), _Info('weak-erase')


def weak_erase_right(c):
    p, q, op, oq = _cut_parts(c)
    if not is_weak(q, oq):
        raise CutElimError('right cut formula is not weak')
    dlt = [f for i, f in enumerate(p.conclusion.suc) if ('R', i) != op]
    qe, m = _erase(q, {oq})
    new = weaken(qe, p.conclusion.ant, dlt)
    rs = _ranks(len(p.conclusion.suc), op[1])
    na, ns = len(qe.conclusion.ant), len(qe.conclusion.suc)
    corr = {}
    for o, (k, s, i) in _sources(c).items():
        if k == 1:
            corr[o] = m[(s, i)]
        else:
            corr[o] = (s, (na + i) if s == 'L' else (ns + rs[i]))
    return _exact(c, new, corr), _Info('weak-erase')


def _contract_pairs(node, track, pairs):
    """Contract each tracked pair of occurrences, keeping ``track`` up to date.

    ``track`` maps keys to occurrences of ``node``'s conclusion; ``pairs`` lists
    (key_a, key_b) whose occurrences are merged; key_a keeps the result.
    """
    for ka, kb in pairs:
        x, y = track[ka], track[kb]
        build = K.contract_left if x[0] == 'L' else K.contract_right
        node = build(node, x[1], y[1])
        inv = _inv(node)
        track = {key: inv[(0,) + o] for key, o in track.items()}
    return node, track


def contraction_cross_left(c):
    p, q, op, oq = _cut_parts(c)
    if p.rule != 'contract-right' or op not in p.principal:
        raise CutElimError('left premise does not contract the cut formula')
    (p1,) = p.premises
    (_, _, i1), (_, _, i2) = p.aux
    q2 = refresh_eigen(q, avoid=proof_vars(c))
    inner = K.cut(p1, q, i1, oq[1])
    inv_in = _inv(inner)
    a2 = inv_in[(0, 'R', i2)]
    outer = K.cut(inner, q2, a2[1], oq[1])
    inv_out = _inv(outer)
    track, pairs = {}, []
    for o, (k, s, i) in _sources(c).items():
        if k == 0:
            (_, s1, j1), = p.ancestry[(s, i)]
            track[o] = inv_out[(0,) + inv_in[(0, s1, j1)]]
        else:
            track[o] = inv_out[(0,) + inv_in[(1, s, i)]]
            track[('copy', o)] = inv_out[(1, s, i)]
            pairs.append((o, ('copy', o)))
    node, track = _contract_pairs(outer, track, pairs)
    new = _exact(c, node, {o: track[o] for o in c.conclusion.occurrences()})
    base = _cut_paths(new)
    return new, _Info('contraction-cross-left', (base, base + (0,)), dup=q.lines)


def contraction_cross_right(c):
    p, q, op, oq = _cut_parts(c)
    if q.rule != 'contract-left' or oq not in q.principal:
        raise CutElimError('right premise does not contract the cut formula')
    (q1,) = q.premises
    (_, _, j1), (_, _, j2) = q.aux
    p2 = refresh_eigen(p, avoid=proof_vars(c))
    inner = K.cut(p, q1, op[1], j1)
    inv_in = _inv(inner)
    a2 = inv_in[(1, 'L', j2)]
    outer = K.cut(p2, inner, op[1], a2[1])
    inv_out = _inv(outer)
    track, pairs = {}, []
    for o, (k, s, i) in _sources(c).items():
        if k == 1:
            (_, s1, j), = q.ancestry[(s, i)]
            track[o] = inv_out[(1,) + inv_in[(1, s1, j)]]
        else:
            track[o] = inv_out[(1,) + inv_in[(0, s, i)]]
            track[('copy', o)] = inv_out[(0, s, i)]
            pairs.append((o, ('copy', o)))
    node, track = _contract_pairs(outer, track, pairs)
    new = _exact(c, node, {o: track[o] for o in c.conclusion.occurrences()})
    base = _cut_paths(new)
    return new, _Info('contraction-cross-right', (base, base + (1,)), dup=p.lines)


def _permute(c, side):
    p, q, op, oq = _cut_parts(c)
    d = 0 if side == 'left' else 1
    prem, occ = (p, op) if d == 0 else (q, oq)
    other = q if d == 0 else p
    if prem.rule == 'axiom' or occ in prem.principal:
        raise CutElimError(f'cut formula is not a side formula of the {side} premise')
    if prem.eigen is not None and prem.eigen in other.conclusion.free_vars():
        prem = refresh_eigen(prem, avoid=proof_vars(other))
    k, s, i = _context_of(prem, occ)
    sub = prem.premises[k]
    if d == 0:
        new_cut = K.cut(sub, q, i, oq[1])
    else:
        new_cut = K.cut(p, sub, op[1], i)
    m, extra = {}, []
    for o, (src,) in sorted(new_cut.ancestry.items()):
        if src[0] == d:
            m[src[1:]] = o
        else:
            extra.append((o[0], new_cut.conclusion[o], (k,) + o))
    maps = [dict((x, x) for x in pr.conclusion.occurrences()) for pr in prem.premises]
    maps[k] = m
    prems = list(prem.premises)
    prems[k] = new_cut
    node, conc_map = rebuild_node(prem, prems, maps, extra)
    inv_cut, inv_node = _inv(new_cut), _inv(node)
    corr = {}
    for o, (kk, ss, ii) in _sources(c).items():
        if kk == d:
            corr[o] = conc_map[(ss, ii)]
        else:
            corr[o] = inv_node[(k,) + inv_cut[(kk, ss, ii)]]
    return _exact(c, node, corr), _Info('rank-permute', ((k,),))


def permute_left(c):
    return _permute(c, 'left')


def permute_right(c):
    return _permute(c, 'right')


def principal_pair(c, order=0):
    p, q, op, oq = _cut_parts(c)
    if not (_principal_logical(p, op) and _principal_logical(q, oq)):
        raise CutElimError('cut formula is not introduced on both sides')
    a = p.conclusion[op]
    conn = type(a).__name__.lower()
    (_, _, a1), *rest_p = p.aux
    (_, _, b1), *rest_q = q.aux
    if isinstance(a, S.Neg):
        new = K.cut(q.premises[0], p.premises[0], b1, a1)
        return _finish(c, new), _Info('logical-pair', ((),), connective=conn)
    if isinstance(a, S.And):
        p1, p2 = p.premises
        (q1,) = q.premises
        a2 = p.aux[1][2]
        b2 = q.aux[1][2]
        if order == 0:
            inner = K.cut(p1, q1, a1, b1)
            idx = _locate_src(inner, (1, 'L', b2))
            new = K.cut(p2, inner, a2, idx[1])
        else:
            inner = K.cut(p2, q1, a2, b2)
            idx = _locate_src(inner, (1, 'L', b1))
            new = K.cut(p1, inner, a1, idx[1])
        return _finish(c, new), _Info('logical-pair', ((), (1,)), connective=conn)
    if isinstance(a, S.Or):
        (p1,) = p.premises
        q1, q2 = q.premises
        a2 = p.aux[1][2]
        b2 = q.aux[1][2]
        if order == 0:
            inner = K.cut(p1, q1, a1, b1)
            idx = _locate_src(inner, (0, 'R', a2))
            new = K.cut(inner, q2, idx[1], b2)
        else:
            inner = K.cut(p1, q2, a2, b2)
            idx = _locate_src(inner, (0, 'R', a1))
            new = K.cut(inner, q1, idx[1], b1)
        return _finish(c, new), _Info('logical-pair', ((), (0,)), connective=conn)
    if isinstance(a, S.Imp):
        (p1,) = p.premises
        q1, q2 = q.premises
        a2 = p.aux[1][2]       # consequent, succedent of p1
        b2 = q.aux[1][2]       # consequent, antecedent of q2
        if order == 0:
            inner = K.cut(p1, q2, a2, b2)
            idx = _locate_src(inner, (0, 'L', a1))
            new = K.cut(q1, inner, b1, idx[1])
            return _finish(c, new), _Info('logical-pair', ((), (1,)), connective=conn)
        inner = K.cut(q1, p1, b1, a1)
        idx = _locate_src(inner, (1, 'R', a2))
        new = K.cut(inner, q2, idx[1], b2)
        return _finish(c, new), _Info('logical-pair', ((), (0,)), connective=conn)
    # quantifiers
    if isinstance(a, S.Forall):
        eig, wit = p, q
    else:
        eig, wit = q, p
    t = wit.witness
    b = eig.eigen
    (e1,) = eig.premises
    e1 = refresh_eigen(e1, avoid=proof_vars(c) | S.term_vars(t))
    e1 = substitute_proof(e1, b, t)
    if isinstance(a, S.Forall):
        new = K.cut(e1, q.premises[0], a1, b1)
    else:
        new = K.cut(p.premises[0], e1, a1, b1)
    return _finish(c, new), _Info('quantifier-pair', ((),), connective=conn)


_BY_KIND = {
    'axiom-erase-left': axiom_erase_left,
    'axiom-erase-right': axiom_erase_right,
    'weak-erase-left': weak_erase_left,
    'weak-erase-right': weak_erase_right,
    'contraction-cross-left': contraction_cross_left,
    'contraction-cross-right': contraction_cross_right,
    'rank-permute-left': permute_left,
    'rank-permute-right': permute_right,
}


def _side_step(c, side):
    """The step that makes progress on one premise, or None if it is principal."""
    p, q, op, oq = _cut_parts(c)
    prem, occ = (p, op) if side == 'left' else (q, oq)
    if prem.rule == 'axiom':
        if prem.axiom is not None and occ in prem.principal:
            raise Blocked('cut formula anchored in a non-logical axiom')
        return f'axiom-erase-{side}' if occ in prem.principal else f'weak-erase-{side}'
    if is_weak(prem, occ):
        return f'weak-erase-{side}'
    if occ not in prem.principal:
        return f'rank-permute-{side}'
    if prem.rule in CONTRACTION_RULES:
        return f'contraction-cross-{side}'
    return None


def choose_step(c: Proof, choice: StrategyChoice = None) -> str:
    choice = choice or StrategyChoice()
    sides = ['right', 'left'] if choice.side == 'right' else ['left', 'right']
    for side in sides:
        kind = _side_step(c, side)
        if kind is not None:
            return kind
    return 'principal-pair'


def _apply_local(c: Proof, kind: str, order=0):
    if kind == 'principal-pair':
        return principal_pair(c, order)
    return _BY_KIND[kind](c)


def reduce_step(p: Proof, cut, choice: StrategyChoice = None, kind: str = None) -> Proof:
    """Apply one local reduction to the cut at path ``cut`` and return the new proof."""
    return reduce_step_info(p, cut, choice, kind)[0]


def reduce_step_info(p: Proof, cut, choice: StrategyChoice = None, kind: str = None):
    choice = choice or StrategyChoice()
    node = node_at(p, tuple(cut))
    if node.rule != 'cut':
        raise NotACut(f'node {path_str(cut)} is a {node.rule}, not a cut')
    kind = kind or choose_step(node, choice)
    new, info = _apply_local(node, kind, choice.order)
    return replace_at(p, tuple(cut), new), info


# ------------------------------------------------------------------- driver

class _Eliminator:
    def __init__(self, proof, strategy, free=False, on_step=None, max_steps=None):
        if strategy not in STRATEGIES:
            raise ValueError(f'unknown strategy {strategy!r}')
        self.proof = proof
        self.strategy = strategy
        self.first = 'R' if strategy == 'rightmost-duplication' else 'L'
        self.order = 1 if strategy == 'rightmost-duplication' else 0
        self.free = free
        self.on_step = on_step
        self.max_steps = max_steps
        self.trace = Trace(metrics_before=metrics(proof))

    # bookkeeping
    def at(self, path):
        return node_at(self.proof, path)

    def apply(self, path, kind):
        node = self.at(path)
        new, info = _apply_local(node, kind, self.order)
        self.proof = replace_at(self.proof, path, new)
        self.trace.steps.append(ReductionStep(
            kind=info.kind, cut_node=path_str(path), duplicated_subproof_lines=info.dup,
            connective=info.connective, lines=self.proof.lines, cuts=self.proof.cut_count))
        if self.max_steps is not None and len(self.trace.steps) > self.max_steps:
            raise CutElimError(f'step budget {self.max_steps} exhausted')
        if self.on_step is not None:
            self.on_step(self.proof, self.trace.steps[-1])
        return info

    def reducible(self, node):
        return node.rule == 'cut' and not (self.free and is_anchored(node))

    # selection
    def select(self):
        cands = [(path, node) for path, node in iter_nodes(self.proof) if self.reducible(node)]
        if not cands:
            return None
        if self.strategy == 'lowest-first':
            return min(cands, key=lambda pn: len(pn[0]))[0]
        for path, node in cands:
            if not any(self.reducible(n) for pth, n in iter_nodes(node) if pth):
                return path
        return cands[0][0]

    def run(self):
        while True:
            path = self.select()
            if path is None:
                break
            self.eliminate(path)
        self.trace.metrics_after = metrics(self.proof)
        return self.proof, self.trace

    def eliminate(self, path):
        if self.reducible(self.at(path)):
            self.phase(path, 1, self.first)

    # tower phases
    @staticmethod
    def _d(side):
        return 0 if side == 'L' else 1

    def walk(self, path, k, side):
        """Positions of the ``k`` tower cuts (outermost first) and of the base."""
        d = self._d(side)
        cuts, cur = [], tuple(path)
        while len(cuts) < k:
            node = self.at(cur)
            if node.rule == 'cut':
                cuts.append(cur)
                cur = cur + (d,)
            elif node.rule in CONTRACTION_RULES:
                cur = cur + (0,)
            else:
                raise CutElimError(f'broken cut tower at {path_str(cur)}')
        return cuts, cur

    def base_occ(self, cut_path, base_path, side):
        node = self.at(cut_path)
        d = self._d(side)
        o = node.aux[d][1:]
        cur, path = node.premises[d], cut_path + (d,)
        while len(path) < len(base_path):
            (src,) = cur.ancestry[o]
            k, s, i = src
            o = (s, i)
            cur, path = cur.premises[k], path + (k,)
        return o

    def lift(self, path, side):
        kind = 'rank-permute-left' if side == 'L' else 'rank-permute-right'
        info = self.apply(path, kind)
        return path + info.new_cuts[0]

    def phase(self, path, k, side):
        sname = 'left' if side == 'L' else 'right'
        path = tuple(path)
        while k > 0:
            cuts, base_path = self.walk(path, k, side)
            base = self.at(base_path)
            occs = [self.base_occ(c, base_path, side) for c in cuts]
            weak = [i for i in range(k) if base.rule == 'axiom' and occs[i] not in base.principal
                    or base.rule != 'axiom' and is_weak(base, occs[i])]
            if weak:
                self.apply(cuts[weak[-1]], f'weak-erase-{sname}')
                k -= 1
                continue
            if base.rule == 'axiom':
                if base.axiom is not None:
                    raise Blocked(f'cut at {path_str(cuts[-1])} is anchored in axiom {base.axiom}')
                self.apply(cuts[-1], f'axiom-erase-{sname}')
                k -= 1
                continue
            pj = [i for i in range(k) if occs[i] in base.principal]
            if not pj:
                self.lift_all_past_base(path, k, side)
                return
            j = pj[0]
            if j != k - 1:
                self.sink(cuts[j], len(base_path) - len(cuts[j]) - 1, side)
                continue
            if base.rule in CONTRACTION_RULES:
                self.apply(cuts[-1], f'contraction-cross-{sname}')
                k += 1
                continue
            self.principal_case(path, k, side)
            return

    def sink(self, cut_path, n, side):
        for _ in range(n):
            cut_path = self.lift(cut_path, side)
        return cut_path

    def lift_all_past_base(self, path, k, side):
        """Base rule does not touch any tower formula: move every tower cut above it."""
        cuts, base_path = self.walk(path, k, side)
        depth_base = len(base_path)
        dest = {}
        for idx in range(k - 1, -1, -1):
            cp = cuts[idx]
            n = depth_base - len(cp)
            for _ in range(n):
                nxt = self.lift(cp, side)
                last = nxt[-1]
                cp = nxt
            dest.setdefault(last, 0)
            dest[last] += 1
            # the lifted cut left the chain, so the base rule moved up a level
            depth_base -= 1
        # the base rule now sits right below the lifted cuts
        rpos = cp[:-1]
        for kp in sorted(dest):
            self.phase(rpos + (kp,), dest[kp], side)

    def principal_case(self, path, k, side):
        """Innermost tower cut's formula is introduced by the base rule."""
        dest = {}
        kc = k
        rpos = None
        while kc > 1:
            cuts, base_path = self.walk(path, kc, side)
            cp = cuts[-2]
            n = len(base_path) - len(cp)
            for _ in range(n):
                cp = self.lift(cp, side)
            dest.setdefault(cp[-1], 0)
            dest[cp[-1]] += 1
            rpos = cp[:-1]
            kc -= 1
        cuts, base_path = self.walk(path, 1, side)
        tpath = cuts[0]
        for kp in sorted(dest):
            self.phase(base_path + (kp,), dest[kp], side)
        self.other_side(tpath, side)

    def other_side(self, tpath, side):
        node = self.at(tpath)
        p, q, op, oq = _cut_parts(node)
        other_prem, other_occ = (q, oq) if side == 'L' else (p, op)
        if _principal_logical(other_prem, other_occ):
            info = self.apply(tpath, 'principal-pair')
            for rel in reversed(info.new_cuts):
                self.eliminate(tpath + rel)
            return
        self.phase(tpath, 1, 'R' if side == 'L' else 'L')


def eliminate_cuts(p: Proof, strategy: str = 'uppermost-first', on_step: Callable = None,
                   max_steps: int = None):
    """Remove every cut from a pure-logic proof; returns ``(proof, trace)``."""
    for _, node in iter_nodes(p):
        if node.rule == 'axiom' and node.axiom is not None:
            raise Blocked('proof has non-logical axiom leaves; use eliminate_free_cuts')
    return _Eliminator(p, strategy, on_step=on_step, max_steps=max_steps).run()


def eliminate_free_cuts(p: Proof, axioms=None, strategy: str = 'uppermost-first',
                        on_step: Callable = None, max_steps: int = None):
    """Remove every cut except those whose cut formula traces to a non-logical axiom."""
    return _Eliminator(p, strategy, free=True, on_step=on_step, max_steps=max_steps).run()


def expansion_report(t: Trace) -> list:
    """Rows ``(step, kind, lines, cuts, duplicated)`` followed by a summary row."""
    rows = []
    for i, s in enumerate(t.steps):
        rows.append(dict(step=i + 1, kind=s.kind, cut_node=s.cut_node, lines=s.lines,
                         cuts=s.cuts, duplicated=s.duplicated_subproof_lines))
    before, after = t.metrics_before, t.metrics_after
    rows.append(dict(step='summary', kind='-', cut_node='-',
                     lines=f'{before.lines}->{after.lines}' if before and after else '',
                     cuts=f'{before.cuts}->{after.cuts}' if before and after else '',
                     duplicated=sum(s.duplicated_subproof_lines for s in t.steps)))
    return rows

"""Command-line front end: ``lkflow <command> ...``.

Exit codes: 0 success, 1 domain failure (rejected proof, invalid sequent,
blocked transformation), 2 usage or parse error.  ``--json`` switches any
command to one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cutelim, flowgraph, gens, herbrand, interp, proofio, prover
from . import kernel as K
from . import syntax as S
from .deep import run_deep


class DomainFailure(Exception):
    """Exit status 1 with a structured message."""

    def __init__(self, message, **data):
        super().__init__(message)
        self.data = data


class UsageFailure(Exception):
    """Exit status 2."""


DOMAIN_ERRORS = (cutelim.CutElimError, interp.InterpolationError, herbrand.HerbrandError,
                 flowgraph.FlowGraphError, prover.NotPropositional, prover.ResourceError,
                 gens.TowerTooLarge)
PARSE_ERRORS = (proofio.ProofFormatError, S.ParseError, S.ArityError)


# ------------------------------------------------------------------ helpers

def _load_proof(path):
    try:
        return proofio.load(path)
    except OSError as exc:
        raise UsageFailure(f'cannot read {path}: {exc.strerror}') from exc


def _axioms(source):
    """``feasibility`` names the built-in schemas; anything else is a file."""
    if source in (None, 'feasibility'):
        return dict(gens.AXIOMS)
    try:
        return proofio.load_axioms(source)
    except OSError as exc:
        raise UsageFailure(f'cannot read {source}: {exc.strerror}') from exc


def _write(path, text):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(text)


def _require_ok(p, axioms, allow_constants=False):
    rep = K.check(p, axioms, allow_constants=allow_constants)
    if not rep:
        raise DomainFailure(str(rep), node='.'.join(map(str, rep.node or ())), reason=rep.reason)


# ----------------------------------------------------------------- commands

def cmd_check(args):
    p = _load_proof(args.input)
    rep = K.check(p, _axioms(args.axioms))
    m = K.metrics(p)
    if not rep:
        raise DomainFailure(str(rep), node='.'.join(map(str, rep.node or ())), reason=rep.reason)
    return dict(status='OK', lines=m.lines, cuts=m.cuts), f'OK lines={m.lines} cuts={m.cuts}'


def cmd_metrics(args):
    p = _load_proof(args.input)
    d = K.metrics(p).as_dict()
    d['cut_free'] = K.is_cut_free(p)
    d['endsequent'] = str(p.conclusion)
    text = ' '.join(f'{k}={d[k]}' for k in ('lines', 'symbols', 'cuts', 'contractions', 'max_formula_size'))
    return d, text


def _trace_out(trace, path):
    if path:
        _write(path, trace.to_json() + '\n')


def _elim_result(q, trace, out):
    proofio.dump(q, out)
    before, after = trace.metrics_before, trace.metrics_after
    d = dict(status='OK', steps=len(trace.steps), lines_before=before.lines, lines_after=after.lines,
             cuts_before=before.cuts, cuts_after=after.cuts)
    text = (f'OK steps={d["steps"]} lines={before.lines}->{after.lines} '
            f'cuts={before.cuts}->{after.cuts}')
    return d, text


def cmd_eliminate(args):
    p = _load_proof(args.input)
    _require_ok(p, {})
    q, trace = cutelim.eliminate_cuts(p, strategy=args.strategy)
    _trace_out(trace, args.trace)
    return _elim_result(q, trace, args.output)


def cmd_freecuts(args):
    p = _load_proof(args.input)
    axioms = _axioms(args.axioms)
    _require_ok(p, axioms)
    q, trace = cutelim.eliminate_free_cuts(p, axioms, strategy=args.strategy)
    _trace_out(trace, args.trace)
    d, text = _elim_result(q, trace, args.output)
    anchored = sum(1 for _, n in K.iter_nodes(q) if n.rule == 'cut')
    d['anchored_cuts'] = anchored
    return d, text + f' anchored={anchored}'


def _graph_from(path, axiom_links):
    try:
        with open(path, encoding='utf-8') as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageFailure(f'cannot read {path}: {exc.strerror}') from exc
    if text.lstrip().startswith('{'):
        return flowgraph.from_json(text)
    return flowgraph.build(proofio.loads(text), axiom_links)


def cmd_flowgraph(args):
    g = flowgraph.build(_load_proof(args.input), args.axiom_links)
    if args.dot:
        _write(args.dot, flowgraph.to_dot(g))
    if args.json_out:
        _write(args.json_out, flowgraph.dumps_json(g))
    comps = flowgraph.components(g)
    d = dict(vertices=g.graph.number_of_nodes(), edges=g.graph.number_of_edges(),
             components=len(comps))
    return d, ' '.join(f'{k}={v}' for k, v in d.items())


def cmd_cycles(args):
    g = _graph_from(args.input, args.axiom_links)
    census = flowgraph.find_cycles(g, args.mode, args.limit)
    d = dict(mode=args.mode, count=census.count, exact=census.exact,
             cycles=[[flowgraph.vertex_label(v) for v in c] for c in census.cycles])
    text = f'cycles={census.count} mode={args.mode}' + ('' if census.exact else ' (limit reached)')
    return d, text


def cmd_interpolate(args):
    p = _load_proof(args.input)
    _require_ok(p, {})
    try:
        part = interp.Partition.parse(p.conclusion, args.partition)
    except interp.InterpolationError as exc:
        raise UsageFailure(str(exc)) from exc
    itp = interp.interpolate(p, part)
    problems = interp.check_interpolant(p, part, itp)
    if problems:
        raise DomainFailure('; '.join(problems))
    if args.left_out:
        proofio.dump(itp.proof_left, args.left_out)
    if args.right_out:
        proofio.dump(itp.proof_right, args.right_out)
    c = S.print_formula(itp.formula)
    return dict(interpolant=c, size=itp.size, partition=part.letters(p.conclusion)), c


def cmd_herbrand(args):
    p = _load_proof(args.input)
    _require_ok(p, {})
    res = herbrand.extract(p)
    if args.output:
        proofio.dump(res.disjunction_proof, args.output)
    terms = [S.print_term(t) for t in res.terms]
    disj = S.print_formula(res.disjunction)
    return dict(terms=terms, disjunction=disj), 'terms: ' + ', '.join(terms) + '\n' + disj


def cmd_midsequent(args):
    p = _load_proof(args.input)
    _require_ok(p, {})
    q = herbrand.midsequent(p)
    proofio.dump(q, args.output)
    ok = herbrand.midsequent_ok(q)
    return dict(status='OK', lines=q.lines, midsequent=ok), f'OK lines={q.lines}'


def cmd_prove(args):
    seq = K.parse_sequent(args.sequent)
    res = prover.prove_qf(seq)
    if not res.valid:
        model = dict(sorted(res.countermodel.items()))
        shown = ' '.join(f'{k}={"T" if v else "F"}' for k, v in model.items())
        raise DomainFailure(f'INVALID countermodel: {shown}', countermodel=model)
    if args.output:
        proofio.dump(res.proof, args.output)
        text = f'VALID lines={res.proof.lines}'
    else:
        text = proofio.dumps(res.proof).rstrip('\n')
    return dict(status='VALID', lines=res.proof.lines), text


GEN_FAMILIES = ('feasibility', 'feas', 'php', 'two', 'prodlemma', 'chain', 'qeq')


def cmd_gen(args):
    n, fam = args.n, args.family
    if n < 0:
        raise UsageFailure('n must be non-negative')
    if fam in ('feasibility', 'feas'):
        p = gens.feasibility_proof(n)
    elif fam == 'two':
        p = gens.two_proof(n)
    elif fam == 'prodlemma':
        if n < 1:
            raise UsageFailure('prodlemma needs i >= 1')
        p = gens.product_lemma_proof(n)
    elif fam == 'chain':
        p = gens.chain_proof(n)
    elif fam == 'qeq':
        p = gens.qeq_base_proof() if n == 0 else gens.qeq_step_proof(n)
    else:
        if n < 1:
            raise UsageFailure('php needs n >= 1')
        res = prover.prove(gens.php_sequent(n))
        if not res.valid:
            raise DomainFailure('pigeonhole sequent not proved')
        p = res.proof
    text = proofio.dumps(p)
    if args.output:
        _write(args.output, text)
        return dict(family=args.family, n=n, lines=p.lines), f'OK lines={p.lines}'
    return dict(family=args.family, n=n, lines=p.lines, proof=text), text.rstrip('\n')


def cmd_report(args):
    from . import report
    files = report.write_report(args.outdir, max_feasibility=args.max_n,
                                max_freecut=args.freecut_max, max_cycles=args.cycles_max)
    return dict(files=files), '\n'.join(files)


# ------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageFailure(message)


def _json_flag(sp):
    sp.add_argument('--json', dest='as_json', action='store_true', default=argparse.SUPPRESS,
                    help='print one JSON object instead of text')


def build_parser():
    ap = _Parser(prog='lkflow', description='LK proofs: checking, cut elimination, flow graphs.')
    ap.add_argument('--json', dest='as_json', action='store_true', help='JSON output')
    sub = ap.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser('check', help='check a proof')
    sp.add_argument('input')
    sp.add_argument('--axioms', help='axiom file, or "feasibility" (default)')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser('metrics', help='size measures of a proof')
    sp.add_argument('input')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_metrics)

    for name, fn, helptext in (('eliminate', cmd_eliminate, 'remove all cuts'),
                               ('freecuts', cmd_freecuts, 'remove cuts not anchored in axioms')):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument('--strategy', choices=cutelim.STRATEGIES, default='uppermost-first')
        sp.add_argument('--trace', help='write the reduction trace (JSON) here')
        if name == 'freecuts':
            sp.add_argument('--axioms', required=True, help='axiom file, or "feasibility"')
        sp.add_argument('input')
        sp.add_argument('output')
        _json_flag(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser('flowgraph', help='build the logical flow graph')
    sp.add_argument('--dot', help='write Graphviz DOT here')
    sp.add_argument('--json', dest='json_out', help='write the graph as JSON here')
    sp.add_argument('--axiom-links', choices=('variants', 'none'), default='variants')
    sp.add_argument('input')
    sp.set_defaults(fn=cmd_flowgraph)

    sp = sub.add_parser('cycles', help='count cycles of the flow graph')
    sp.add_argument('--mode', choices=('oriented', 'unoriented'), default='oriented')
    sp.add_argument('--limit', type=int, default=100_000)
    sp.add_argument('--axiom-links', choices=('variants', 'none'), default='variants')
    sp.add_argument('input', help='proof file or flow graph JSON')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_cycles)

    sp = sub.add_parser('interpolate', help='Craig interpolant of a cut-free proof')
    sp.add_argument('--partition', required=True, help='e.g. "L,L,R", antecedent first')
    sp.add_argument('--left-out')
    sp.add_argument('--right-out')
    sp.add_argument('input')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_interpolate)

    sp = sub.add_parser('herbrand', help='Herbrand terms of a proof of |- ?x A(x)')
    sp.add_argument('--output', help='write the quantifier-free proof here')
    sp.add_argument('input')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_herbrand)

    sp = sub.add_parser('midsequent', help='move quantifier rules below propositional rules')
    sp.add_argument('input')
    sp.add_argument('output')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_midsequent)

    sp = sub.add_parser('prove', help='decide a quantifier-free sequent')
    sp.add_argument('sequent')
    sp.add_argument('--output', help='write the proof here instead of stdout')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_prove)

    sp = sub.add_parser('gen', help='generate a proof family')
    sp.add_argument('family', choices=GEN_FAMILIES)
    sp.add_argument('n', type=int)
    sp.add_argument('--output')
    _json_flag(sp)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser('report', help='CSV tables and PNG figures')
    sp.add_argument('outdir')
    sp.add_argument('--max-n', type=int, default=8, help='largest feasibility n')
    sp.add_argument('--freecut-max', type=int, default=3)
    sp.add_argument('--cycles-max', type=int, default=5)
    _json_flag(sp)
    sp.set_defaults(fn=cmd_report)
    return ap


def _emit(as_json, data, text, stream):
    if as_json:
        stream.write(json.dumps(data, sort_keys=True) + '\n')
    elif text:
        stream.write(text + '\n')


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    as_json = argv is not None and '--json' in argv
    try:
        args = build_parser().parse_args(argv)
        as_json = args.as_json
        data, text = run_deep(args.fn, args)
    except UsageFailure as exc:
        _emit(as_json, dict(status='USAGE', error=str(exc)), f'usage error: {exc}', stderr)
        return 2
    except PARSE_ERRORS as exc:
        _emit(as_json, dict(status='PARSE', error=str(exc)), f'parse error: {exc}', stderr)
        return 2
    except DomainFailure as exc:
        payload = dict(status='FAIL', error=str(exc), **exc.data)
        _emit(as_json, payload, str(exc), stdout)
        return 1
    except DOMAIN_ERRORS as exc:
        _emit(as_json, dict(status='FAIL', error=str(exc)), f'FAIL: {exc}', stdout)
        return 1
    _emit(as_json, data, text, stdout)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()

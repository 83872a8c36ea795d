"""Golden outputs for the worked reductions.

``python tests/golden_cases.py`` rewrites tests/golden/; the tests compare
against the committed files byte for byte.
"""

import os
import sys

from lkflow import proofio
from lkflow import syntax as S
from lkflow.cutelim import STRATEGIES, StrategyChoice, eliminate_cuts, reduce_step
from lkflow.kernel import iter_nodes

sys.path.insert(0, os.path.dirname(__file__))
import corpus  # noqa: E402

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), 'golden')


def cut_formula(node):
    k, s, i = node.aux[0]
    return node.premises[k].conclusion.side(s)[i]


def cut_paths(p):
    return [path for path, node in iter_nodes(p) if node.rule == 'cut']


def push_quantified_cuts(p):
    """Reduce cuts on quantified formulas, uppermost first, until none is left."""
    while True:
        todo = [path for path in cut_paths(p)
                if S.has_quantifier(cut_formula(node_at(p, path)))]
        if not todo:
            return p
        p = reduce_step(p, max(todo, key=len))


def node_at(p, path):
    for q_path, node in iter_nodes(p):
        if q_path == tuple(path):
            return node
    raise KeyError(path)


def contraction_step():
    p, _ = corpus.contraction_fragment()
    return reduce_step(p, (), StrategyChoice(side='right'))


def conjunction_step(order):
    return reduce_step(corpus.conjunction_fragment(), (), StrategyChoice(order=order))


def quantifier_push():
    return push_quantified_cuts(corpus.quantifier_fragment())


def axiom_step():
    p, _ = corpus.axiom_fragment()
    return reduce_step(p, ())


def cases():
    """``{file name: text}``."""
    out = {
        'contraction-cross.proof': proofio.dumps(contraction_step()),
        'conjunction-order0.proof': proofio.dumps(conjunction_step(0)),
        'conjunction-order1.proof': proofio.dumps(conjunction_step(1)),
        'quantifier-push.proof': proofio.dumps(quantifier_push()),
        'axiom-erase.proof': proofio.dumps(axiom_step()),
    }
    for name, p in sorted(corpus.hand_fragments().items()):
        for strat in STRATEGIES:
            _, trace = eliminate_cuts(p, strat)
            out[f'trace-{name}-{strat}.json'] = trace.to_json() + '\n'
    return out


if __name__ == '__main__':
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    for name, text in cases().items():
        with open(os.path.join(GOLDEN_DIR, name), 'w', encoding='utf-8', newline='\n') as fh:
            fh.write(text)
    print(f'wrote {len(cases())} files to {GOLDEN_DIR}')

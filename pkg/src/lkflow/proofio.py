r"""Reading and writing proof files.

One proof per file, as nested s-expressions::

    ; excluded middle
    (or-right "|- p \/ ~p" :principal R0 :aux 0.R0 0.R1
              :ancestry ((R0 0.R0 0.R1))
      (neg-right "|- p, ~p" :principal R1 :aux 0.L0 :ancestry ((R0 0.R0) (R1 0.L0))
        (axiom "p |- p" :principal L0 R0)))

Sequents, witness terms and axiom names are double-quoted strings (formula
syntax has no double quotes, so there are no escapes).
Occurrences are written ``L3``/``R0``; premise occurrences ``k.L3``.
"""

from __future__ import annotations

import re

from . import syntax as S
from .kernel import Proof, Sequent, parse_sequent

_TOK = re.compile(r'\s+|;[^\n]*|(\()|(\))|"([^"]*)"|([^\s()";]+)')


class ProofFormatError(ValueError):
    pass


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ProofFormatError(f'bad character at offset {pos}')
        pos = m.end()
        if m.group(1):
            out.append('(')
        elif m.group(2):
            out.append(')')
        elif m.group(3) is not None:
            out.append(('str', m.group(3)))
        elif m.group(4):
            out.append(m.group(4))
    return out


def _sexpr(tokens):
    stack = [[]]
    for t in tokens:
        if t == '(':
            stack.append([])
        elif t == ')':
            if len(stack) == 1:
                raise ProofFormatError('unbalanced ")"')
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise ProofFormatError('unbalanced "("')
    return stack[0]


def _occ(tok):
    m = re.fullmatch(r'([LR])(\d+)', tok)
    if not m:
        raise ProofFormatError(f'bad occurrence {tok!r}')
    return (m.group(1), int(m.group(2)))


def _pocc(tok):
    m = re.fullmatch(r'(\d+)\.([LR])(\d+)', tok)
    if not m:
        raise ProofFormatError(f'bad premise occurrence {tok!r}')
    return (int(m.group(1)), m.group(2), int(m.group(3)))


def _string(tok, what):
    if not (isinstance(tok, tuple) and tok[0] == 'str'):
        raise ProofFormatError(f'{what} must be a quoted string')
    return tok[1]


def _starts_node_or_key(item):
    if isinstance(item, str):
        return item.startswith(':')
    return isinstance(item, list) and bool(item) and isinstance(item[0], str)


def _build(expr) -> Proof:
    if not isinstance(expr, list) or len(expr) < 2 or not isinstance(expr[0], str):
        raise ProofFormatError('proof node must be (rule "sequent" ...)')
    rule = expr[0]
    try:
        seq = parse_sequent(_string(expr[1], 'sequent'))
    except ValueError as exc:
        raise ProofFormatError(f'in {rule} node: {exc}') from exc
    kw = dict(principal=(), aux=(), ancestry={}, witness=None, eigen=None, axiom=None)
    premises = []
    i = 2
    while i < len(expr):
        item = expr[i]
        if isinstance(item, list):
            premises.append(_build(item))
            i += 1
            continue
        if not (isinstance(item, str) and item.startswith(':')):
            raise ProofFormatError(f'unexpected token {item!r} in {rule} node')
        key = item[1:]
        i += 1
        vals = []
        while i < len(expr) and not _starts_node_or_key(expr[i]):
            vals.append(expr[i])
            i += 1
        if key == 'principal':
            kw['principal'] = tuple(_occ(v) for v in vals)
        elif key == 'aux':
            kw['aux'] = tuple(_pocc(v) for v in vals)
        elif key == 'ancestry':
            if len(vals) != 1 or not isinstance(vals[0], list):
                raise ProofFormatError(':ancestry takes one list')
            anc = {}
            for entry in vals[0]:
                if not isinstance(entry, list) or not entry:
                    raise ProofFormatError('bad ancestry entry')
                anc[_occ(entry[0])] = tuple(_pocc(v) for v in entry[1:])
            kw['ancestry'] = anc
        elif key == 'witness':
            kw['witness'] = S.parse_term(_string(vals[0], 'witness'))
        elif key == 'eigen':
            kw['eigen'] = vals[0] if isinstance(vals[0], str) else _string(vals[0], 'eigen')
        elif key == 'axiom':
            kw['axiom'] = _string(vals[0], 'axiom name')
        else:
            raise ProofFormatError(f'unknown annotation :{key}')
    return Proof(rule, seq, tuple(premises), **kw)


def loads(text: str) -> Proof:
    exprs = _sexpr(_tokens(text))
    if len(exprs) != 1:
        raise ProofFormatError(f'expected exactly one proof, found {len(exprs)}')
    return _build(exprs[0])


def load(path) -> Proof:
    with open(path, encoding='utf-8') as fh:
        return loads(fh.read())


def _q(s):
    return f'"{s}"'


def _focc(o):
    return f'{o[0]}{o[1]}'


def _fpocc(o):
    return f'{o[0]}.{o[1]}{o[2]}'


def dumps(p: Proof) -> str:
    lines = []
    _emit(p, 0, lines)
    return '\n'.join(lines) + '\n'


def _emit(p, indent, lines):
    head = f'{" " * indent}({p.rule} {_q(str(p.conclusion))}'
    if p.axiom is not None:
        head += f' :axiom {_q(p.axiom)}'
    if p.principal:
        head += ' :principal ' + ' '.join(_focc(o) for o in p.principal)
    if p.aux:
        head += ' :aux ' + ' '.join(_fpocc(o) for o in p.aux)
    if p.witness is not None:
        head += f' :witness {_q(S.print_term(p.witness))}'
    if p.eigen is not None:
        head += f' :eigen {p.eigen}'
    if p.ancestry:
        order = sorted(p.ancestry, key=lambda o: (o[0] != 'L', o[1]))
        entries = ' '.join('(' + ' '.join([_focc(o)] + [_fpocc(a) for a in p.ancestry[o]]) + ')'
                           for o in order)
        head += f' :ancestry ({entries})'
    if not p.premises:
        lines.append(head + ')')
        return
    lines.append(head)
    for q in p.premises:
        _emit(q, indent + 2, lines)
    lines[-1] += ')'


def dump(p: Proof, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(dumps(p))


def dump_sequent(seq: Sequent, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(str(seq) + '\n')


# ------------------------------------------------------------ axiom files
# One schema per line, ``name: sequent``; ``;`` starts a comment.

def loads_axioms(text: str) -> dict:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split(';', 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(':')
        name = name.strip()
        if not sep or not re.fullmatch(r'[A-Za-z][\w-]*', name):
            raise ProofFormatError(f'line {n}: expected "name: sequent"')
        if name in out:
            raise ProofFormatError(f'line {n}: duplicate axiom {name!r}')
        try:
            out[name] = parse_sequent(body)
        except S.ParseError as exc:
            raise ProofFormatError(f'line {n}: {exc}') from exc
    return out


def load_axioms(path) -> dict:
    with open(path, encoding='utf-8') as fh:
        return loads_axioms(fh.read())


def dumps_axioms(axioms: dict) -> str:
    return ''.join(f'{name}: {seq}\n' for name, seq in sorted(axioms.items()))

"""Terms and formulas of first-order logic, with the propositional fragment
as the quantifier-free, term-free case.

Concrete syntax::

    formula := "top" | "bot" | ident | ident "(" termlist ")"
             | "~" formula | formula "/\\" formula | formula "\\/" formula
             | formula "->" formula | "!" ident formula | "?" ident formula
             | "(" formula ")"

Precedence is ``~`` (and the quantifier prefixes) > ``/\\`` > ``\\/`` > ``->``;
``->`` associates to the right, ``/\\`` and ``\\/`` to the left.

Terms extend the identifier grammar with digit constants and the infix
arithmetic operators ``+``, ``*`` and ``^`` (exponentiation, right
associative), which are stored as ordinary function applications named
``+``, ``*`` and ``exp``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Optional, Union


class ParseError(ValueError):
    """Raised on malformed formula text. ``pos`` is a character offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f'{message} at position {pos}'
        super().__init__(message)


class ArityError(ValueError):
    pass


# --------------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __str__(self):
        return print_term(self)


Term = Union[Var, Const, App]

INFIX = {'+': 1, '*': 2, 'exp': 3}
INFIX_TEXT = {'+': '+', '*': '*', 'exp': '^'}


def _term_prec(t):
    if isinstance(t, App) and t.fn in INFIX and len(t.args) == 2:
        return INFIX[t.fn]
    return 4


def print_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if t.fn in INFIX and len(t.args) == 2:
        lvl = INFIX[t.fn]
        left, right = t.args
        ls, rs = print_term(left), print_term(right)
        # + and * are left associative, ^ right associative
        if _term_prec(left) < lvl or (t.fn == 'exp' and _term_prec(left) == lvl):
            ls = f'({ls})'
        if _term_prec(right) < lvl or (t.fn != 'exp' and _term_prec(right) == lvl):
            rs = f'({rs})'
        return f'{ls}{INFIX_TEXT[t.fn]}{rs}'
    return f'{t.fn}({", ".join(print_term(a) for a in t.args)})'


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Const):
        return frozenset()
    out = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def term_size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def subst_term(t: Term, v: str, r: Term) -> Term:
    if isinstance(t, Var):
        return r if t.name == v else t
    if isinstance(t, Const):
        return t
    return App(t.fn, tuple(subst_term(a, v, r) for a in t.args))


# ------------------------------------------------------------------ formulas

@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Neg:
    body: 'Formula'


@dataclass(frozen=True)
class And:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Or:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Imp:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Forall:
    var: str
    body: 'Formula'


@dataclass(frozen=True)
class Exists:
    var: str
    body: 'Formula'


Formula = Union[Prop, Atom, Top, Bot, Neg, And, Or, Imp, Forall, Exists]
BINARY = (And, Or, Imp)
QUANT = (Forall, Exists)
TOP, BOT = Top(), Bot()


def is_atomic(f) -> bool:
    return isinstance(f, (Prop, Atom))


def children(f) -> tuple:
    if isinstance(f, Neg):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANT):
        return (f.body,)
    return ()


def rebuild(f, kids):
    """Return ``f`` with its immediate subformulas replaced by ``kids``."""
    if isinstance(f, Neg):
        return Neg(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, QUANT):
        return type(f)(f.var, kids[0])
    return f


# ------------------------------------------------------------------- printing

_PREC = {Imp: 1, Or: 2, And: 3}
INFIX_RELATIONS = ('=', '<')
_OPS = {Imp: '->', Or: '\\/', And: '/\\'}


def _prec(f):
    return _PREC.get(type(f), 4)


def print_formula(f) -> str:
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Atom):
        if f.rel in INFIX_RELATIONS and len(f.args) == 2:
            return f'{print_term(f.args[0])} {f.rel} {print_term(f.args[1])}'
        return f'{f.rel}({", ".join(print_term(a) for a in f.args)})'
    if isinstance(f, Top):
        return 'top'
    if isinstance(f, Bot):
        return 'bot'
    if isinstance(f, Neg):
        inner = print_formula(f.body)
        return '~' + (f'({inner})' if _prec(f.body) < 4 else inner)
    if isinstance(f, QUANT):
        q = '!' if isinstance(f, Forall) else '?'
        inner = print_formula(f.body)
        if _prec(f.body) < 4:
            inner = f'({inner})'
        return f'{q}{f.var} {inner}'
    lvl = _PREC[type(f)]
    ls, rs = print_formula(f.left), print_formula(f.right)
    lp, rp = _prec(f.left), _prec(f.right)
    if lp < lvl or (isinstance(f, Imp) and lp == lvl):
        ls = f'({ls})'
    if rp < lvl or (not isinstance(f, Imp) and rp == lvl):
        rs = f'({rs})'
    return f'{ls} {_OPS[type(f)]} {rs}'


# -------------------------------------------------------------------- parsing

_TOKEN = re.compile(r'''
    (?P<ws>\s+)
  | (?P<op>/\\|\\/|->|\|-|[~!?(),+*^=<])
  | (?P<num>[0-9]+)
  | (?P<ident>[a-zA-Z][a-zA-Z0-9_]*)
''', re.VERBOSE)


def tokenize(text: str) -> list:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f'unexpected character {text[pos]!r}', pos)
        if m.lastgroup != 'ws':
            toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(('eof', '', len(text)))
    return toks


class Parser:
    """Recursive-descent parser over a token list.

    ``signature`` maps function and relation symbols to arities; symbols not in
    it are assigned the arity of their first use, and later uses must agree.
    """

    def __init__(self, text, signature: Optional[Mapping[str, int]] = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.arity = dict(signature or {})

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f'expected {value!r}, found {tok[1] or "end of input"!r}', tok[2])
        return tok

    def at(self, value):
        return self.peek()[1] == value and self.peek()[0] == 'op'

    def done(self):
        tok = self.peek()
        if tok[0] != 'eof':
            raise ParseError(f'unexpected {tok[1]!r}', tok[2])

    def _check_arity(self, sym, n, pos):
        known = self.arity.setdefault(sym, n)
        if known != n:
            raise ArityError(f'symbol {sym!r} used with arity {n}, expected {known} (position {pos})')

    # formula levels
    def formula(self):
        left = self.disj()
        if self.at('->'):
            self.take()
            return Imp(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.at('\\/'):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.at('/\\'):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        rel = self.infix_atom()
        if rel is not None:
            return rel
        kind, val, pos = self.peek()
        if kind == 'op' and val == '~':
            self.take()
            return Neg(self.unary())
        if kind == 'op' and val in '!?':
            self.take()
            k2, var, p2 = self.take()
            if k2 != 'ident':
                raise ParseError('expected bound variable', p2)
            body = self.unary()
            return Forall(var, body) if val == '!' else Exists(var, body)
        if kind == 'op' and val == '(':
            self.take()
            f = self.formula()
            self.expect(')')
            return f
        if kind == 'ident':
            self.take()
            if val == 'top':
                return TOP
            if val == 'bot':
                return BOT
            if self.at('('):
                self.take()
                args = self.termlist()
                self.expect(')')
                self._check_arity(val, len(args), pos)
                return Atom(val, tuple(args))
            return Prop(val)
        raise ParseError(f'unexpected {val or "end of input"!r}', pos)

    def infix_atom(self):
        """``s = t`` or ``s < t``; backtracks when no term/relation prefix matches."""
        kind = self.peek()[0]
        if kind not in ('ident', 'num') and not self.at('('):
            return None
        save = self.i
        try:
            left = self.term()
        except ParseError:
            self.i = save
            return None
        if self.peek()[0] == 'op' and self.peek()[1] in INFIX_RELATIONS:
            rel = self.take()[1]
            return Atom(rel, (left, self.term()))
        self.i = save
        return None

    # terms
    def termlist(self):
        args = [self.term()]
        while self.at(','):
            self.take()
            args.append(self.term())
        return args

    def term(self):
        t = self.product()
        while self.at('+'):
            self.take()
            t = App('+', (t, self.product()))
        return t

    def product(self):
        t = self.power()
        while self.at('*'):
            self.take()
            t = App('*', (t, self.power()))
        return t

    def power(self):
        base = self.primary()
        if self.at('^'):
            self.take()
            return App('exp', (base, self.power()))
        return base

    def primary(self):
        kind, val, pos = self.take()
        if kind == 'num':
            return Const(val)
        if kind == 'op' and val == '(':
            t = self.term()
            self.expect(')')
            return t
        if kind == 'ident':
            if self.at('('):
                self.take()
                args = self.termlist()
                self.expect(')')
                self._check_arity(val, len(args), pos)
                return App(val, tuple(args))
            return Var(val)
        raise ParseError(f'expected a term, found {val or "end of input"!r}', pos)


def parse_formula(text: str, signature=None, propositional=False):
    p = Parser(text, signature)
    f = p.formula()
    p.done()
    if propositional and not is_propositional(f):
        raise ParseError('quantifiers or terms not allowed in propositional mode')
    return f


def parse_term(text: str, signature=None) -> Term:
    p = Parser(text, signature)
    t = p.term()
    p.done()
    return t


# ---------------------------------------------------------- variables & size

def free_vars(f) -> frozenset:
    if isinstance(f, Atom):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f) -> frozenset:
    """Every variable name occurring in ``f``, free or bound."""
    if isinstance(f, Atom):
        return free_vars(f)
    out = frozenset([f.var]) if isinstance(f, QUANT) else frozenset()
    for c in children(f):
        out |= all_vars(c)
    return out


def bound_vars(f) -> frozenset:
    out = frozenset([f.var]) if isinstance(f, QUANT) else frozenset()
    for c in children(f):
        out |= bound_vars(c)
    return out


def prop_vars(f) -> frozenset:
    """Propositional variables and relation symbols (the formula's language)."""
    if isinstance(f, Prop):
        return frozenset([f.name])
    if isinstance(f, Atom):
        return frozenset([f.rel])
    out = frozenset()
    for c in children(f):
        out |= prop_vars(c)
    return out


def is_propositional(f) -> bool:
    if isinstance(f, (Atom, Forall, Exists)):
        return False
    return all(is_propositional(c) for c in children(f))


def has_quantifier(f) -> bool:
    return isinstance(f, QUANT) or any(has_quantifier(c) for c in children(f))


def has_constant(f) -> bool:
    return isinstance(f, (Top, Bot)) or any(has_constant(c) for c in children(f))


def quantifier_count(f) -> int:
    return int(isinstance(f, QUANT)) + sum(quantifier_count(c) for c in children(f))


def formula_size(f) -> int:
    """Symbol count: connectives, quantifier prefixes (2), atoms with terms."""
    if isinstance(f, Atom):
        return 1 + sum(term_size(a) for a in f.args)
    if isinstance(f, QUANT):
        return 2 + formula_size(f.body)
    return 1 + sum(formula_size(c) for c in children(f))


def depth(f) -> int:
    """Logical depth: number of connectives/quantifiers on the longest branch."""
    kids = children(f)
    return 0 if not kids else 1 + max(depth(c) for c in kids)


def is_prenex(f) -> bool:
    while isinstance(f, QUANT):
        f = f.body
    return not has_quantifier(f)


# -------------------------------------------------------------- substitution

def fresh_name(base: str, avoid) -> str:
    base = base.split('_')[0] if '_' in base and base.split('_')[-1].isdigit() else base
    for k in itertools.count(1):
        cand = f'{base}_{k}'
        if cand not in avoid:
            return cand


def substitute(f, v: str, t: Term):
    """Replace free occurrences of ``v`` by ``t``, renaming binders to avoid capture."""
    tv = term_vars(t)
    return _subst(f, v, t, tv)


def _subst(f, v, t, tv):
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(subst_term(a, v, t) for a in f.args))
    if isinstance(f, (Prop, Top, Bot)):
        return f
    if isinstance(f, QUANT):
        if f.var == v:
            return f
        if v not in free_vars(f.body):
            return f
        if f.var in tv:
            new = fresh_name(f.var, tv | all_vars(f.body) | {v})
            body = _subst(f.body, f.var, Var(new), frozenset([new]))
            return type(f)(new, _subst(body, v, t, tv))
        return type(f)(f.var, _subst(f.body, v, t, tv))
    return rebuild(f, [_subst(c, v, t, tv) for c in children(f)])


def naive_substitute(f, v: str, t: Term):
    """Substitution without renaming; returns ``None`` if a variable of ``t`` would be captured."""
    tv = term_vars(t)

    def go(g, bound):
        if isinstance(g, Atom):
            if any(v in term_vars(a) for a in g.args) and (tv & bound):
                return None
            return Atom(g.rel, tuple(subst_term(a, v, t) for a in g.args))
        if isinstance(g, (Prop, Top, Bot)):
            return g
        if isinstance(g, QUANT):
            if g.var == v:
                return g
            b = go(g.body, bound | {g.var})
            return None if b is None else type(g)(g.var, b)
        kids = [go(c, bound) for c in children(g)]
        return None if any(k is None for k in kids) else rebuild(g, kids)

    return go(f, frozenset())


def rename_free(f, mapping: Mapping[str, str]):
    """Simultaneously rename free variables (used for eigenvariable refreshing)."""
    for old, new in mapping.items():
        f = substitute(f, old, Var(new))
    return f


# ---------------------------------------------------------- alpha-equivalence

def alpha_key(f):
    """A hashable key identifying ``f`` up to renaming of bound variables."""
    return _key(f, {})


def _tkey(t, env):
    if isinstance(t, Var):
        return ('b', env[t.name]) if t.name in env else ('v', t.name)
    if isinstance(t, Const):
        return ('c', t.name)
    return ('f', t.fn, tuple(_tkey(a, env) for a in t.args))


def _key(f, env):
    if isinstance(f, Prop):
        return ('p', f.name)
    if isinstance(f, Atom):
        return ('a', f.rel, tuple(_tkey(a, env) for a in f.args))
    if isinstance(f, (Top, Bot)):
        return (type(f).__name__,)
    if isinstance(f, QUANT):
        env2 = dict(env)
        env2[f.var] = len(env)
        return (type(f).__name__, _key(f.body, env2))
    return (type(f).__name__,) + tuple(_key(c, env) for c in children(f))


def alpha_eq(a, b) -> bool:
    return a == b or alpha_key(a) == alpha_key(b)


# ------------------------------------------------------------------ matching

def match_term(pat: Term, t: Term, schematic, binding: dict, penv=None, tenv=None) -> bool:
    """First-order matching of ``pat`` against ``t``; extends ``binding`` in place.

    ``penv``/``tenv`` map bound variables of the pattern/target to binder
    depths so that bound occurrences match only their counterparts.
    """
    penv = penv or {}
    tenv = tenv or {}
    if isinstance(pat, Var) and pat.name in penv:
        return isinstance(t, Var) and tenv.get(t.name) == penv[pat.name]
    if isinstance(pat, Var) and pat.name in schematic:
        if any(x in tenv for x in term_vars(t)):
            return False
        if pat.name in binding:
            return binding[pat.name] == t
        binding[pat.name] = t
        return True
    if isinstance(pat, Var):
        return isinstance(t, Var) and t.name == pat.name and t.name not in tenv
    if isinstance(pat, Const):
        return pat == t
    return (isinstance(t, App) and t.fn == pat.fn and len(t.args) == len(pat.args)
            and all(match_term(a, b, schematic, binding, penv, tenv)
                    for a, b in zip(pat.args, t.args)))


def match_formula(pat, f, schematic, binding: dict, penv=None, tenv=None) -> bool:
    penv = penv or {}
    tenv = tenv or {}
    if isinstance(pat, Atom):
        return (isinstance(f, Atom) and f.rel == pat.rel and len(f.args) == len(pat.args)
                and all(match_term(a, b, schematic, binding, penv, tenv)
                        for a, b in zip(pat.args, f.args)))
    if type(pat) is not type(f):
        return False
    if isinstance(pat, (Prop, Top, Bot)):
        return pat == f
    if isinstance(pat, QUANT):
        d = len(penv)
        return match_formula(pat.body, f.body, schematic, binding,
                             {**penv, pat.var: d}, {**tenv, f.var: d})
    return all(match_formula(a, b, schematic, binding, penv, tenv)
               for a, b in zip(children(pat), children(f)))


# ------------------------------------------------------------- subformulas

def subformulas(f) -> Iterator:
    yield f
    for c in children(f):
        yield from subformulas(c)


def is_subformula(a, b) -> bool:
    """Whether ``a`` is a subformula of ``b``.

    Below a quantifier every instance counts: ``R(s)`` is a subformula of
    ``?x R(x)`` for any term ``s``.  Instances compose through nested
    quantifiers (the relation is transitively closed).
    """
    return _sub_search(a, b, frozenset())


def _sub_search(a, node, inst):
    if match_formula(node, a, inst, {}):
        return True
    if isinstance(node, QUANT):
        return _sub_search(a, node.body, inst | {node.var})
    return any(_sub_search(a, c, inst) for c in children(node))


# --------------------------------------------------------------------- signs

class Sign(Enum):
    POSITIVE = '+'
    NEGATIVE = '-'

    def flip(self):
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE

    def __str__(self):
        return self.value


def subformula_at(f, path):
    for i in path:
        kids = children(f)
        if not 0 <= i < len(kids):
            raise IndexError(f'invalid occurrence path {tuple(path)}')
        f = kids[i]
    return f


def replace_at(f, path, new):
    if not path:
        return new
    kids = list(children(f))
    i = path[0]
    if not 0 <= i < len(kids):
        raise IndexError(f'invalid occurrence path {tuple(path)}')
    kids[i] = replace_at(kids[i], path[1:], new)
    return rebuild(f, kids)


def sign_at(f, path) -> Sign:
    sign = Sign.POSITIVE
    for i in path:
        kids = children(f)
        if not 0 <= i < len(kids):
            raise IndexError(f'invalid occurrence path {tuple(path)}')
        if isinstance(f, Neg) or (isinstance(f, Imp) and i == 0):
            sign = sign.flip()
        f = kids[i]
    return sign


def atom_paths(f, prefix=()) -> Iterator[tuple]:
    """Paths to atomic occurrences (propositional variables and relations), left to right."""
    if is_atomic(f):
        yield prefix
        return
    for i, c in enumerate(children(f)):
        yield from atom_paths(c, prefix + (i,))


# -------------------------------------------------------------- evaluation

def evaluate(f, val: Mapping) -> bool:
    """Truth-functional value; atoms (any ``Prop``/``Atom``) are looked up in ``val``."""
    if is_atomic(f):
        return bool(val[f])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Neg):
        return not evaluate(f.body, val)
    if isinstance(f, And):
        return evaluate(f.left, val) and evaluate(f.right, val)
    if isinstance(f, Or):
        return evaluate(f.left, val) or evaluate(f.right, val)
    if isinstance(f, Imp):
        return (not evaluate(f.left, val)) or evaluate(f.right, val)
    raise ValueError('cannot evaluate a quantified formula truth-functionally')


def atoms_of(f) -> list:
    """Distinct atomic formulas in order of first occurrence."""
    seen = {}
    for p in atom_paths(f):
        seen.setdefault(subformula_at(f, p), None)
    return list(seen)


def conj(items):
    items = list(items)
    if not items:
        return TOP
    out = items[0]
    for g in items[1:]:
        out = And(out, g)
    return out


def disj(items):
    items = list(items)
    if not items:
        return BOT
    out = items[0]
    for g in items[1:]:
        out = Or(out, g)
    return out


def simplify_constants(f):
    """Constant folding only: ``top /\\ X`` to ``X``, ``bot \\/ X`` to ``X`` and so on."""
    if isinstance(f, Neg):
        b = simplify_constants(f.body)
        if isinstance(b, Top):
            return BOT
        if isinstance(b, Bot):
            return TOP
        return Neg(b)
    if isinstance(f, And):
        l, r = simplify_constants(f.left), simplify_constants(f.right)
        if isinstance(l, Bot) or isinstance(r, Bot):
            return BOT
        if isinstance(l, Top):
            return r
        if isinstance(r, Top):
            return l
        return And(l, r)
    if isinstance(f, Or):
        l, r = simplify_constants(f.left), simplify_constants(f.right)
        if isinstance(l, Top) or isinstance(r, Top):
            return TOP
        if isinstance(l, Bot):
            return r
        if isinstance(r, Bot):
            return l
        return Or(l, r)
    if isinstance(f, Imp):
        l, r = simplify_constants(f.left), simplify_constants(f.right)
        if isinstance(l, Bot) or isinstance(r, Top):
            return TOP
        if isinstance(l, Top):
            return r
        if isinstance(r, Bot):
            return simplify_constants(Neg(l))
        return Imp(l, r)
    if isinstance(f, QUANT):
        return type(f)(f.var, simplify_constants(f.body))
    return f


def substitute_props(f, values: Mapping[str, object]):
    """Replace propositional variables by formulas (e.g. truth constants)."""
    if isinstance(f, Prop):
        return values.get(f.name, f)
    return rebuild(f, [substitute_props(c, values) for c in children(f)])

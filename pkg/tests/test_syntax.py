import random

import pytest

from lkflow import syntax as S
from lkflow.syntax import Sign

from corpus import random_formula


def fm(text):
    return S.parse_formula(text)


def test_parse_sign_example():
    p, q, r = S.Prop('p'), S.Prop('q'), S.Prop('r')
    want = S.And(p, S.Or(S.Neg(q), S.Neg(S.Neg(r))))
    assert fm('p /\\ (~q \\/ ~(~r))') == want


def test_parse_atom_and_quantifier():
    assert fm('p') == S.Prop('p')
    f = fm('?x (P(c) -> P(x))')
    assert f == S.Exists('x', S.Imp(S.Atom('P', (S.Var('c'),)), S.Atom('P', (S.Var('x'),))))


def test_precedence_and_associativity():
    assert fm('p -> q -> r') == fm('p -> (q -> r)')
    assert fm('~p /\\ q \\/ r -> s') == fm('(((~p) /\\ q) \\/ r) -> s')


def test_infix_terms_and_relations():
    f = fm('(z^x)^y = z^(x*y)')
    assert isinstance(f, S.Atom) and f.rel == '='
    assert S.print_formula(fm('F(x) /\\ y < x -> F(y)')) == 'F(x) /\\ y < x -> F(y)'
    assert fm(S.print_formula(fm('~(a = b)'))) == fm('~(a = b)')


def test_parse_errors_have_position():
    with pytest.raises(S.ParseError) as exc:
        fm('p /\\ ')
    assert exc.value.pos is not None and 'position' in str(exc.value)


def test_arity_mismatch():
    with pytest.raises(S.ArityError):
        fm('P(x) /\\ P(x, y)')
    with pytest.raises(S.ArityError):
        S.parse_formula('P(x)', signature={'P': 2})


def test_print_parse_roundtrip_random():
    rng = random.Random(3)
    atoms = (S.Prop('p'), S.Prop('q'), fm('R(f(x), c)'), fm('P(y)'))
    for _ in range(150):
        f = random_formula(rng, 6, atoms)
        if rng.random() < 0.3:
            f = S.Forall('x', f) if rng.random() < 0.5 else S.Exists('y', f)
        assert fm(S.print_formula(f)) == f


def test_term_roundtrip():
    for text in ('f(x, g(c))', 's(s(0))', '(z^x)^y', 'x*y+z', 'x^(y^z)'):
        t = S.parse_term(text)
        assert S.parse_term(S.print_term(t)) == t


def test_substitute_examples():
    assert S.substitute(fm('P(a)'), 'a', S.parse_term('f(c)')) == fm('P(f(c))')
    assert S.substitute(fm('!x P(x)'), 'x', S.parse_term('c')) == fm('!x P(x)')
    g = S.substitute(fm('?y Q(x, y)'), 'x', S.parse_term('g(y)'))
    assert isinstance(g, S.Exists) and g.var != 'y'
    assert g.body == S.Atom('Q', (S.parse_term('g(y)'), S.Var(g.var)))
    assert S.free_vars(g) == frozenset({'y'})


def test_substitute_removes_variable():
    rng = random.Random(5)
    atoms = (fm('P(x)'), fm('Q(x, y)'), fm('R(y)'))
    for _ in range(100):
        f = random_formula(rng, 4, atoms)
        if rng.random() < 0.5:
            f = S.Exists('y', f)
        g = S.substitute(f, 'x', S.parse_term('h(y, z)'))
        assert 'x' not in S.free_vars(g)
        if 'x' in S.free_vars(f):
            assert {'y', 'z'} <= S.free_vars(g)


def test_is_subformula():
    assert S.is_subformula(fm('p'), fm('p /\\ q'))
    assert S.is_subformula(fm('R(t)'), fm('?x R(x)'))
    assert not S.is_subformula(fm('q'), fm('p /\\ ~p'))
    # instances compose through nested quantifiers
    assert S.is_subformula(fm('R(a, b)'), fm('!x ?y R(x, y)'))
    assert not S.is_subformula(fm('R(a)'), fm('R(b)'))


def _count_sign(f, path):
    """Negation counting, written independently of sign_at."""
    flips = 0
    node = f
    for k in path:
        if isinstance(node, S.Neg) or (isinstance(node, S.Imp) and k == 0):
            flips += 1
        node = S.children(node)[k]
    return Sign.NEGATIVE if flips % 2 else Sign.POSITIVE


def test_sign_example():
    f = fm('p /\\ (~q \\/ ~(~r))')
    signs = {S.print_formula(S.subformula_at(f, q)): S.sign_at(f, q) for q in S.atom_paths(f)}
    assert signs == {'p': Sign.POSITIVE, 'q': Sign.NEGATIVE, 'r': Sign.POSITIVE}


def test_sign_against_negation_count():
    rng = random.Random(9)
    for _ in range(200):
        f = random_formula(rng, 5)
        for q in S.atom_paths(f):
            assert S.sign_at(f, q) is _count_sign(f, q)


def test_sign_invalid_path():
    with pytest.raises((IndexError, ValueError)):
        S.sign_at(fm('p /\\ q'), (2,))


def test_alpha_equivalence():
    assert S.alpha_eq(fm('!x P(x)'), fm('!y P(y)'))
    assert not S.alpha_eq(fm('!x R(x, y)'), fm('!y R(y, y)'))


def test_constants_and_propositional_mode():
    assert S.has_constant(fm('top /\\ p'))
    with pytest.raises(S.ParseError):
        S.parse_formula('P(x)', propositional=True)


def test_fresh_name_is_deterministic():
    assert S.fresh_name('y', {'y'}) == 'y_1'
    assert S.fresh_name('y_1', {'y', 'y_1'}) == 'y_2'

"""Independent oracles: truth tables written against the formula classes
directly, sharing no code with the prover or the evaluator in syntax."""

import itertools

from lkflow import syntax as S


def atoms(f, acc=None):
    acc = {} if acc is None else acc
    if isinstance(f, (S.Prop, S.Atom)):
        acc.setdefault(S.print_formula(f), None)
    elif isinstance(f, S.Neg):
        atoms(f.body, acc)
    elif isinstance(f, (S.And, S.Or, S.Imp)):
        atoms(f.left, acc)
        atoms(f.right, acc)
    return acc


def value(f, env):
    if isinstance(f, S.Top):
        return True
    if isinstance(f, S.Bot):
        return False
    if isinstance(f, (S.Prop, S.Atom)):
        return env[S.print_formula(f)]
    if isinstance(f, S.Neg):
        return not value(f.body, env)
    a, b = value(f.left, env), value(f.right, env)
    if isinstance(f, S.And):
        return a and b
    if isinstance(f, S.Or):
        return a or b
    return (not a) or b


def sequent_valid(ant, suc):
    names = {}
    for f in list(ant) + list(suc):
        atoms(f, names)
    names = sorted(names)
    for bits in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if all(value(f, env) for f in ant) and not any(value(f, env) for f in suc):
            return False
    return True


def falsifies(ant, suc, model):
    env = {k: bool(v) for k, v in model.items()}
    for f in list(ant) + list(suc):
        for name in atoms(f):
            env.setdefault(name, False)
    return all(value(f, env) for f in ant) and not any(value(f, env) for f in suc)


def atoms_of_sequent(seq):
    acc = {}
    for f in list(seq.ant) + list(seq.suc):
        atoms(f, acc)
    return acc

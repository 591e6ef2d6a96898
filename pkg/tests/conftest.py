from __future__ import annotations

import random

from hypothesis import strategies as st

from fdekit import (And, Arrow, Atom, Bicond, Const, DArrow, DBicond, Exists,
                    Forall, Hook, Neg, Or)

BINARY_CLASSES = (And, Or, Arrow, Hook, DArrow, Bicond, DBicond)


def formula_strategy(atoms=("p", "q", "r"), quantifiers=True, constants=True,
                     binaries=BINARY_CLASSES, max_leaves=12):
    """Hypothesis strategy over the full formula language."""
    leaves = [st.sampled_from(atoms).map(Atom)]
    if constants:
        leaves.append(st.sampled_from("tbnf").map(Const))
    base = st.one_of(*leaves)

    def extend(kids):
        options = [st.builds(Neg, kids)]
        options += [st.builds(cls, kids, kids) for cls in binaries]
        if quantifiers:
            var = st.sampled_from(atoms)
            options.append(st.builds(Forall, var, kids))
            options.append(st.builds(Exists, var, kids))
        return st.one_of(*options)

    return st.recursive(base, extend, max_leaves=max_leaves)


def gen_formula(rng: random.Random, depth: int, atoms=("p", "q", "r"),
                quantifiers=True, constants=True,
                binaries=BINARY_CLASSES) -> object:
    """Seeded random formula of tree depth at most ``depth``."""
    choices = ["atom"]
    if constants:
        choices.append("const")
    if depth > 0:
        choices += ["neg", "binary", "binary", "binary"]
        if quantifiers:
            choices.append("quant")
    pick = rng.choice(choices)
    args = (atoms, quantifiers, constants, binaries)
    if pick == "atom":
        return Atom(rng.choice(atoms))
    if pick == "const":
        return Const(rng.choice("tbnf"))
    if pick == "neg":
        return Neg(gen_formula(rng, depth - 1, *args))
    if pick == "quant":
        cls = rng.choice((Forall, Exists))
        return cls(rng.choice(atoms), gen_formula(rng, depth - 1, *args))
    cls = rng.choice(binaries)
    return cls(gen_formula(rng, depth - 1, *args),
               gen_formula(rng, depth - 1, *args))

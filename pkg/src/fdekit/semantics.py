"""Valuations and the reference evaluator.

``evaluate`` walks the AST directly; the sweep kernel in :mod:`fdekit.kernel`
is an independent implementation of the same semantics, and the two are
cross-checked in the test suite.  Propositional quantifiers take the lattice
meet (``forall``) or join (``exists``) of the body's value across every value
the logic admits.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .formulas import Formula, free_atoms
from .logics import (Logic, UnboundAtomError, UnsupportedConnectiveError,
                     Valuation)
from .values import TruthValue, join, meet

__all__ = [
    "Valuation", "evaluate", "enumerate_valuations", "is_designated",
    "apply_connective",
]


def is_designated(logic: Logic, v: TruthValue) -> bool:
    """True iff ``v`` is one of the logic's designated values."""
    if v not in logic.values:
        raise ValueError(f"{v.letter} is not a value of {logic.name}")
    return v in logic.designated


def apply_connective(logic: Logic, kind: str, args: Iterable[TruthValue]) -> TruthValue:
    """Look up a connective matrix entry.

    ``kind`` is one of ``neg, and, or, arrow, hook, darrow, bicond, dbicond``;
    ``args`` must be drawn from the logic's value set.
    """
    args = tuple(args)
    table = logic.matrices.get(kind)
    if table is None:
        raise UnsupportedConnectiveError(logic.name, f"the connective {kind!r}")
    arity = 1 if kind == "neg" else 2
    if len(args) != arity:
        raise ValueError(f"{kind} expects {arity} argument(s), got {len(args)}")
    for v in args:
        if v not in logic.values:
            raise ValueError(f"{v.letter} is not a value of {logic.name}")
    return table[args[0] if kind == "neg" else args]


def evaluate(logic: Logic, f: Formula, valuation: Valuation) -> TruthValue:
    """Compositional evaluation of ``f`` under ``valuation``."""
    missing = free_atoms(f) - set(valuation)
    if missing:
        raise UnboundAtomError(missing)
    for name, v in valuation.items():
        if v not in logic.values:
            raise ValueError(f"{name} is assigned {v.letter}, not a value of {logic.name}")

    def ev(node: Formula, env: dict[str, TruthValue]) -> TruthValue:
        k = node.kind
        if k == "atom":
            return env[node.name]
        if k == "const":
            if node.value not in logic.values:
                raise UnsupportedConnectiveError(logic.name, f"the constant #{node.which}")
            return node.value
        if k == "neg":
            return logic.matrices["neg"][ev(node.child, env)]
        if k in ("forall", "exists"):
            combine = meet if k == "forall" else join
            acc: TruthValue | None = None
            for v in logic.values:
                value = ev(node.body, {**env, node.var: v})
                acc = value if acc is None else combine(acc, value)
            return acc
        table = logic.matrices.get(k)
        if table is None:
            raise UnsupportedConnectiveError(logic.name, f"the connective {k!r}")
        return table[(ev(node.left, env), ev(node.right, env))]

    return ev(f, dict(valuation))


def enumerate_valuations(logic: Logic, atoms: Iterable[str]) -> Iterator[dict[str, TruthValue]]:
    """All admitted valuations over ``atoms``, in enumeration order.

    The atom order is taken as given; values cycle in the order T < B < N < F
    with the first atom most significant.  Valuations rejected by the logic's
    filter (M's no-B/N-mixing condition) are skipped.
    """
    atoms = tuple(atoms)
    for combo in itertools.product(logic.values, repeat=len(atoms)):
        valuation = dict(zip(atoms, combo))
        if logic.valuation_filter is not None and not logic.valuation_filter(valuation):
            continue
        yield valuation

"""Functional-completeness constructor for 4-valued truth functions.

With the four constants as primitives, any n-ary truth function over
{T, B, N, F} is realized by a conjunction of 4^n conditionals: each row of the
table contributes ``(p1 <=> c1 & ... & pn <=> cn) -> c`` where the ``ci`` pin
the row's argument values and ``c`` is the constant for the row's result.  On
a given valuation exactly one antecedent is designated, so that conjunct takes
the row value and every other conjunct is T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .formulas import (And, Arrow, Atom, Const, DBicond, Formula,
                       CONST_NAMES)
from .values import VALUES, TruthValue, from_letter

__all__ = ["TruthFunction", "value_probe", "synthesize", "synthesis_atoms"]

_FALSUM = Const("f")


@dataclass(frozen=True)
class TruthFunction:
    """An explicit n-ary table over the four values.

    ``values`` lists the outputs in enumeration order: argument tuples cycle
    through (T, B, N, F) per position, first position most significant.  The
    table must be total (exactly ``4**arity`` entries).
    """

    arity: int
    values: tuple[TruthValue, ...]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if len(self.values) != 4 ** self.arity:
            raise ValueError(
                f"table is not total: arity {self.arity} needs {4 ** self.arity} "
                f"entries, got {len(self.values)}")

    @classmethod
    def from_callable(cls, arity: int, fn: Callable[..., TruthValue]) -> "TruthFunction":
        values = tuple(fn(*args) for args in itertools.product(VALUES, repeat=arity))
        return cls(arity, values)

    def rows(self) -> Iterator[tuple[tuple[TruthValue, ...], TruthValue]]:
        return zip(itertools.product(VALUES, repeat=self.arity), self.values)

    def __call__(self, *args: TruthValue) -> TruthValue:
        index = 0
        for v in args:
            index = index * 4 + v.code
        return self.values[index]

    # -- text format: first line "arity n", then 4^n lines "v1 ... vn : v" --

    @classmethod
    def from_text(cls, text: str) -> "TruthFunction":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("arity"):
            raise ValueError("truth function text must start with 'arity <n>'")
        try:
            arity = int(lines[0].split()[1])
        except (IndexError, ValueError):
            raise ValueError("truth function text must start with 'arity <n>'") from None
        expected = list(itertools.product(VALUES, repeat=arity))
        if len(lines) - 1 != len(expected):
            raise ValueError(f"expected {len(expected)} rows, got {len(lines) - 1}")
        outputs = []
        for lineno, (line, args) in enumerate(zip(lines[1:], expected), start=2):
            head, sep, tail = line.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: missing ':'")
            cells = tuple(from_letter(tok) for tok in head.split())
            if cells != args:
                want = " ".join(v.letter for v in args)
                raise ValueError(f"line {lineno}: rows must follow enumeration "
                                 f"order (expected arguments '{want}')")
            outputs.append(from_letter(tail.strip()))
        return cls(arity, tuple(outputs))

    def to_text(self) -> str:
        lines = [f"arity {self.arity}"]
        for args, out in self.rows():
            cells = " ".join(v.letter for v in args)
            lines.append(f"{cells} : {out.letter}".lstrip())
        return "\n".join(lines)


def value_probe(f: Formula, constant: Const | TruthValue) -> Formula:
    """``((f <=> c) -> #f) -> #f``: T when f's value equals c's, F otherwise.

    The inner conditional is the classical negation given by the falsum
    constant; applying it twice turns "designated iff equal" into "exactly T
    or F".
    """
    c = Const(CONST_NAMES[constant]) if isinstance(constant, TruthValue) else constant
    return Arrow(Arrow(DBicond(f, c), _FALSUM), _FALSUM)


def synthesis_atoms(arity: int) -> tuple[str, ...]:
    return tuple(f"p{i + 1}" for i in range(arity))


def synthesize(tf: TruthFunction) -> Formula:
    """A formula whose FDE+cmi truth table equals ``tf`` entry for entry.

    The result is a right-nested conjunction of exactly ``4**arity``
    conditionals over the atoms p1..pn, rows in enumeration order; constants
    appear as primitives, so the formula is quantifier-free.
    """
    if tf.arity == 0:
        return Const(CONST_NAMES[tf.values[0]])
    atoms = [Atom(name) for name in synthesis_atoms(tf.arity)]
    conjuncts: list[Formula] = []
    for args, out in tf.rows():
        pins = [DBicond(atom, Const(CONST_NAMES[v])) for atom, v in zip(atoms, args)]
        antecedent = pins[-1]
        for pin in reversed(pins[:-1]):
            antecedent = And(pin, antecedent)
        conjuncts.append(Arrow(antecedent, Const(CONST_NAMES[out])))
    result = conjuncts[-1]
    for conjunct in reversed(conjuncts[:-1]):
        result = And(conjunct, result)
    return result

"""Validity, designation-preserving entailment, countermodels, truth tables.

Everything here is decided by brute-force sweep over the admitted valuations
of the formulas' free atoms (sorted lexicographically), which keeps outputs
deterministic: the countermodel returned is always the first witness in
enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernel
from .formulas import Formula, free_atoms
from .logics import Logic
from .values import VALUES, TruthValue

__all__ = [
    "Sequent", "TruthTable", "valid", "entails", "countermodel",
    "countermodels", "truth_table", "equivalent",
]


@dataclass(frozen=True)
class Sequent:
    """Premises and a conclusion, checked for designation preservation."""

    premises: tuple[Formula, ...]
    conclusion: Formula

    @classmethod
    def of(cls, premises: Iterable[Formula], conclusion: Formula) -> "Sequent":
        return cls(tuple(premises), conclusion)

    def __str__(self) -> str:
        left = "; ".join(str(p) for p in self.premises)
        return f"{left} |- {self.conclusion}" if left else f"|- {self.conclusion}"


@dataclass(frozen=True, eq=False)
class TruthTable:
    logic: str
    atoms: tuple[str, ...]
    rows: tuple[tuple[dict[str, TruthValue], TruthValue], ...]
    formula_text: str = ""

    @property
    def values(self) -> tuple[TruthValue, ...]:
        return tuple(v for _, v in self.rows)

    def to_text(self) -> str:
        lines = [f"{self.logic} | {' '.join(self.atoms)} | {self.formula_text}"]
        for valuation, value in self.rows:
            cells = " ".join(valuation[a].letter for a in self.atoms)
            lines.append(f"{cells} : {value.letter}".lstrip())
        return "\n".join(lines)


def _atoms_of(formulas: Sequence[Formula]) -> tuple[str, ...]:
    names: set[str] = set()
    for f in formulas:
        names |= free_atoms(f)
    return tuple(sorted(names))


def _designated_mask(logic: Logic, out: np.ndarray) -> np.ndarray:
    des_codes = np.array(sorted(v.code for v in logic.designated), dtype=np.uint8)
    return np.isin(out, des_codes)


def valid(logic: Logic, f: Formula) -> bool:
    """True iff ``f`` is designated on every admitted valuation."""
    atoms = _atoms_of([f])
    _, out = kernel.sweep_formulas(logic, [f], atoms)
    return bool(_designated_mask(logic, out[:, 0]).all())


def _failing_rows(logic: Logic, sequent: Sequent):
    formulas = list(sequent.premises) + [sequent.conclusion]
    atoms = _atoms_of(formulas)
    vals, out = kernel.sweep_formulas(logic, formulas, atoms)
    des = _designated_mask(logic, out)
    premises_ok = des[:, :-1].all(axis=1)
    failing = premises_ok & ~des[:, -1]
    return atoms, vals, failing


def entails(logic: Logic, sequent: Sequent) -> bool:
    """Designation preservation: every valuation designating all premises
    designates the conclusion."""
    _, _, failing = _failing_rows(logic, sequent)
    return not bool(failing.any())


def countermodel(logic: Logic, sequent: Sequent) -> dict[str, TruthValue] | None:
    """First valuation (enumeration order) designating the premises but not
    the conclusion, or ``None`` iff the sequent holds."""
    atoms, vals, failing = _failing_rows(logic, sequent)
    idx = np.flatnonzero(failing)
    if idx.size == 0:
        return None
    return kernel.decode_row(atoms, vals[idx[0]])


def countermodels(logic: Logic, sequent: Sequent) -> list[dict[str, TruthValue]]:
    """Every countermodel, in enumeration order."""
    atoms, vals, failing = _failing_rows(logic, sequent)
    return [kernel.decode_row(atoms, vals[i]) for i in np.flatnonzero(failing)]


def truth_table(logic: Logic, f: Formula) -> TruthTable:
    """Full table of ``f`` over its free atoms, rows in enumeration order."""
    atoms = _atoms_of([f])
    vals, out = kernel.sweep_formulas(logic, [f], atoms)
    rows = tuple(
        (kernel.decode_row(atoms, vals[i]), VALUES[int(out[i, 0])])
        for i in range(vals.shape[0]))
    return TruthTable(logic=logic.name, atoms=atoms, rows=rows, formula_text=str(f))


def equivalent(logic: Logic, f: Formula, g: Formula) -> bool:
    """Value identity (not mere co-designation) on every admitted valuation
    over the union of free atoms."""
    atoms = _atoms_of([f, g])
    _, out = kernel.sweep_formulas(logic, [f, g], atoms)
    return bool((out[:, 0] == out[:, 1]).all())

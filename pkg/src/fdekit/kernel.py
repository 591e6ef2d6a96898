"""Formula compilation and backend selection for exhaustive valuation sweeps.

Every consequence-level question here (validity, entailment, countermodels,
truth tables, equivalence) reduces to evaluating formulas on every admitted
valuation.  That inner loop is the hot path, so it has a compiled Cython
implementation (``fdekit._speedups``) and a pure-Python fallback
(``fdekit._pykernel``) with identical semantics; whichever is available is
picked at import time.  Set ``FDEKIT_PURE_PYTHON=1`` to force the fallback.

Formulas are compiled to a flat node pool (kind / arg / arg arrays).  Atom
slots 0..natoms-1 hold the enumerated valuation, further slots hold quantified
variables by nesting depth.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .formulas import BINARY_KINDS, Formula
from .logics import Logic, UnboundAtomError, UnsupportedConnectiveError
from .values import VALUES, TruthValue

from . import _pykernel

if os.environ.get("FDEKIT_PURE_PYTHON"):
    _impl = _pykernel
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernel
        BACKEND = "python"

_KIND_CODES = {"atom": 0, "const": 1, "neg": 2}
for _i, _k in enumerate(BINARY_KINDS):
    _KIND_CODES[_k] = 3 + _i
_KIND_CODES["forall"] = 10
_KIND_CODES["exists"] = 11

_MAX_ROWS = 50_000_000


@dataclass
class Program:
    """One or more formulas compiled against a shared atom slot layout."""

    logic: Logic
    atoms: tuple[str, ...]
    kinds: np.ndarray
    a: np.ndarray
    b: np.ndarray
    roots: np.ndarray
    nslots: int

    @property
    def natoms(self) -> int:
        return len(self.atoms)


_PAYLOADS: dict[str, tuple] = {}


def logic_payload(logic: Logic):
    """Numpy form of a logic's matrices: (codes, neg, tables, mix)."""
    cached = _PAYLOADS.get(logic.name)
    if cached is not None:
        return cached
    codes = np.array([v.code for v in logic.values], dtype=np.uint8)
    neg = np.arange(4, dtype=np.uint8)
    for v, out in logic.matrices["neg"].items():
        neg[v.code] = out.code
    tables = np.zeros((len(BINARY_KINDS), 4, 4), dtype=np.uint8)
    for i, kind in enumerate(BINARY_KINDS):
        table = logic.matrices.get(kind)
        if table is None:
            continue
        for (x, y), out in table.items():
            tables[i, x.code, y.code] = out.code
    payload = (codes, neg, tables, logic.valuation_filter is not None)
    _PAYLOADS[logic.name] = payload
    return payload


def compile_formulas(formulas, logic: Logic, atoms: tuple[str, ...]) -> Program:
    """Flatten ``formulas`` into one node pool over the given atom order.

    Raises :class:`UnsupportedConnectiveError` for connectives or constants the
    logic rejects and :class:`UnboundAtomError` for free atoms outside
    ``atoms``.
    """
    kinds: list[int] = []
    arg_a: list[int] = []
    arg_b: list[int] = []
    slot_of = {name: i for i, name in enumerate(atoms)}
    max_depth = 0

    def emit(kind: int, x: int, y: int) -> int:
        kinds.append(kind)
        arg_a.append(x)
        arg_b.append(y)
        return len(kinds) - 1

    def walk(node: Formula, binders: dict[str, int], depth: int) -> int:
        nonlocal max_depth
        k = node.kind
        if k == "atom":
            slot = binders.get(node.name)
            if slot is None:
                slot = slot_of.get(node.name)
            if slot is None:
                raise UnboundAtomError([node.name])
            return emit(0, slot, 0)
        if k == "const":
            if node.value not in logic.values:
                raise UnsupportedConnectiveError(logic.name, f"the constant #{node.which}")
            return emit(1, node.value.code, 0)
        if k == "neg":
            return emit(2, walk(node.child, binders, depth), 0)
        if k in ("forall", "exists"):
            slot = len(atoms) + depth
            max_depth = max(max_depth, depth + 1)
            body = walk(node.body, {**binders, node.var: slot}, depth + 1)
            return emit(10 if k == "forall" else 11, body, slot)
        if k not in logic.matrices:
            raise UnsupportedConnectiveError(logic.name, f"the connective {k!r}")
        left = walk(node.left, binders, depth)
        right = walk(node.right, binders, depth)
        return emit(_KIND_CODES[k], left, right)

    roots = [walk(f, {}, 0) for f in formulas]
    return Program(
        logic=logic,
        atoms=tuple(atoms),
        kinds=np.array(kinds, dtype=np.uint8),
        a=np.array(arg_a, dtype=np.int32),
        b=np.array(arg_b, dtype=np.int32),
        roots=np.array(roots, dtype=np.int32),
        nslots=len(atoms) + max_depth,
    )


def sweep(program: Program) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate every root of ``program`` on every admitted valuation.

    Returns ``(vals, out)``: admitted valuations (value codes, enumeration
    order with the first atom most significant) and the value codes of each
    root per valuation.
    """
    codes, neg, tables, mix = logic_payload(program.logic)
    if len(codes) ** program.natoms > _MAX_ROWS:
        raise ValueError(
            f"sweep over {program.natoms} atoms in {program.logic.name} exceeds "
            f"{_MAX_ROWS} valuations")
    return _impl.sweep(program.kinds, program.a, program.b, program.roots,
                       program.natoms, program.nslots, codes, neg, tables, mix)


def sweep_formulas(logic: Logic, formulas, atoms: tuple[str, ...]):
    """Compile-and-sweep convenience wrapper."""
    return sweep(compile_formulas(formulas, logic, atoms))


def decode_row(atoms: tuple[str, ...], row: np.ndarray) -> dict[str, TruthValue]:
    return {name: VALUES[int(code)] for name, code in zip(atoms, row)}

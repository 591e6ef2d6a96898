"""Bounded formula-space sweeps via semantic fingerprints.

A quantifier-free formula over a fixed atom list denotes a finite vector of
values, one per admitted valuation (its *signature*).  Validity, entailment
and equivalence are functions of the signature alone, so a claim quantified
over "all formulas up to size n" can be decided exactly by enumerating the
*signatures* reachable at each size instead of the (exponentially many)
formulas: combining one minimal representative per signature reaches exactly
the signatures of all bounded formulas.  Pools carry a representative formula
per signature so failed checks can report a concrete witness.

Two pool builders are provided: by size (number of connective nodes) and by
depth (closure iteration).  A pool may carry several *tracks*: parallel
signatures of the same formula skeleton under different table sets, which is
how translated formulas are tracked next to their sources (the translation is
homomorphic, so the translated arrow acts as one derived table).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .formulas import Atom, Formula, _BINARY_CLASSES, Neg
from .logics import Logic
from .semantics import evaluate
from .values import TruthValue

__all__ = [
    "Pool", "valuation_grid", "track_tables", "clause_table",
    "pool_by_size", "pool_by_depth", "find_formula_with_signature",
]

_CHUNK_CELLS = 8_000_000


@dataclass
class Pool:
    """Distinct reachable signatures with minimal representatives.

    ``sigs`` has one row per signature; with ``k`` tracks over ``R`` valuation
    rows a row is the concatenation of ``k`` length-``R`` value-code vectors.
    ``metric[i]`` is the size (or depth) at which ``reps[i]`` first appeared.
    """

    atoms: tuple[str, ...]
    grid: np.ndarray
    tracks: int
    sigs: np.ndarray
    reps: list[Formula]
    metric: np.ndarray

    @property
    def nrows(self) -> int:
        return self.grid.shape[0]

    def track(self, i: int) -> np.ndarray:
        R = self.nrows
        return self.sigs[:, i * R:(i + 1) * R]


def valuation_grid(logic: Logic, atoms: Sequence[str]) -> np.ndarray:
    """Admitted valuations over ``atoms`` as value codes, enumeration order."""
    codes = np.array([v.code for v in logic.values], dtype=np.uint8)
    natoms = len(atoms)
    grids = np.meshgrid(*([codes] * natoms), indexing="ij") if natoms else []
    if natoms == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    grid = np.stack([g.ravel() for g in grids], axis=1)
    if logic.valuation_filter is not None:
        keep = ~((grid == 1).any(axis=1) & (grid == 2).any(axis=1))
        grid = grid[keep]
    return np.ascontiguousarray(grid)


def track_tables(logic: Logic) -> dict[str, np.ndarray]:
    """The logic's matrices as 4x4 (or length-4) uint8 arrays."""
    out: dict[str, np.ndarray] = {}
    neg = np.arange(4, dtype=np.uint8)
    for v, r in logic.matrices["neg"].items():
        neg[v.code] = r.code
    out["neg"] = neg
    for kind, table in logic.matrices.items():
        if kind == "neg":
            continue
        arr = np.zeros((4, 4), dtype=np.uint8)
        for (x, y), r in table.items():
            arr[x.code, y.code] = r.code
        out[kind] = arr
    return out


def clause_table(logic: Logic, clause: Callable[[Formula, Formula], Formula]) -> np.ndarray:
    """Derived 4x4 table of a binary formula schema evaluated in ``logic``."""
    x, y = Atom("x"), Atom("y")
    schema = clause(x, y)
    arr = np.zeros((4, 4), dtype=np.uint8)
    for a in logic.values:
        for b in logic.values:
            arr[a.code, b.code] = evaluate(logic, schema, {"x": a, "y": b}).code
    return arr


def _atom_sigs(grid: np.ndarray, tracks: int) -> list[np.ndarray]:
    return [np.tile(np.ascontiguousarray(grid[:, i]), tracks)
            for i in range(grid.shape[1])]


def _combine(tables: Sequence[np.ndarray], A: np.ndarray, B: np.ndarray,
             R: int) -> np.ndarray:
    """Pointwise table application per track, over all pairs of rows (A x B)."""
    na, nb = A.shape[0], B.shape[0]
    parts = []
    for t, table in enumerate(tables):
        a = A[:, t * R:(t + 1) * R]
        b = B[:, t * R:(t + 1) * R]
        parts.append(table[a[:, None, :], b[None, :, :]].reshape(na * nb, R))
    return np.concatenate(parts, axis=1)


def _neg_tracks(negs: Sequence[np.ndarray], A: np.ndarray, R: int) -> np.ndarray:
    parts = [negs[t][A[:, t * R:(t + 1) * R]] for t in range(len(negs))]
    return np.concatenate(parts, axis=1)


def pool_by_size(logic: Logic, atoms: Sequence[str], kinds: Sequence[str],
                 max_size: int,
                 tracks: Sequence[Mapping[str, np.ndarray]] | None = None) -> Pool:
    """Signatures of all formulas with at most ``max_size`` connective nodes.

    ``kinds`` lists the admitted connectives (``"neg"`` plus binary kinds).
    ``tracks`` defaults to the single track of the logic's own tables.
    """
    grid = valuation_grid(logic, atoms)
    R = grid.shape[0]
    if tracks is None:
        tracks = [track_tables(logic)]
    k = len(tracks)
    binary = [kind for kind in kinds if kind != "neg"]
    with_neg = "neg" in kinds
    bin_tables = {kind: [tr[kind] for tr in tracks] for kind in binary}
    negs = [tr["neg"] for tr in tracks]

    seen: dict[bytes, int] = {}
    all_sigs: list[np.ndarray] = []
    reps: list[Formula] = []
    metric: list[int] = []

    base = _atom_sigs(grid, k)
    level0 = []
    for i, sig in enumerate(base):
        key = sig.tobytes()
        if key not in seen:
            seen[key] = len(reps)
            all_sigs.append(sig)
            reps.append(Atom(atoms[i]))
            metric.append(0)
            level0.append(len(reps) - 1)
    levels: list[list[int]] = [level0]

    def add(sig: np.ndarray, rep: Formula, size: int, fresh: list[int]) -> None:
        key = sig.tobytes()
        if key in seen:
            return
        seen[key] = len(reps)
        all_sigs.append(sig.copy())
        reps.append(rep)
        metric.append(size)
        fresh.append(len(reps) - 1)

    for size in range(1, max_size + 1):
        fresh: list[int] = []
        if with_neg and levels[size - 1]:
            idx = levels[size - 1]
            A = np.stack([all_sigs[i] for i in idx])
            out = _neg_tracks(negs, A, R)
            for r in range(out.shape[0]):
                add(out[r], Neg(reps[idx[r]]), size, fresh)
        for i in range(size):
            j = size - 1 - i
            if j >= len(levels):
                continue
            li, lj = levels[i], levels[j]
            if not li or not lj:
                continue
            A = np.stack([all_sigs[x] for x in li])
            B = np.stack([all_sigs[x] for x in lj])
            chunk = max(1, _CHUNK_CELLS // max(1, len(lj) * R * k))
            for kind in binary:
                cls = _BINARY_CLASSES[kind]
                tabs = bin_tables[kind]
                for s in range(0, len(li), chunk):
                    sub = A[s:s + chunk]
                    out = _combine(tabs, sub, B, R)
                    uniq, first = np.unique(out, axis=0, return_index=True)
                    for u, flat in zip(uniq, first):
                        ai, bi = divmod(int(flat), len(lj))
                        rep = cls(reps[li[s + ai]], reps[lj[bi]])
                        add(u, rep, size, fresh)
        levels.append(fresh)

    return Pool(atoms=tuple(atoms), grid=grid, tracks=k,
                sigs=np.stack(all_sigs) if all_sigs else np.zeros((0, k * R), np.uint8),
                reps=reps, metric=np.array(metric))


def pool_by_depth(logic: Logic, atoms: Sequence[str], kinds: Sequence[str],
                  max_depth: int,
                  tracks: Sequence[Mapping[str, np.ndarray]] | None = None) -> Pool:
    """Signatures of all formulas of tree depth at most ``max_depth``.

    Closure iteration: each round closes the current signature set under the
    admitted connectives, so round ``d`` holds exactly the depth-``<= d``
    signatures.
    """
    grid = valuation_grid(logic, atoms)
    R = grid.shape[0]
    if tracks is None:
        tracks = [track_tables(logic)]
    k = len(tracks)
    binary = [kind for kind in kinds if kind != "neg"]
    with_neg = "neg" in kinds
    negs = [tr["neg"] for tr in tracks]

    seen: dict[bytes, int] = {}
    all_sigs: list[np.ndarray] = []
    reps: list[Formula] = []
    metric: list[int] = []

    base = _atom_sigs(grid, k)
    for i, sig in enumerate(base):
        key = sig.tobytes()
        if key not in seen:
            seen[key] = len(reps)
            all_sigs.append(sig)
            reps.append(Atom(atoms[i]))
            metric.append(0)

    new_idx = list(range(len(reps)))
    for depth in range(1, max_depth + 1):
        if not new_idx:
            break  # closure reached: deeper formulas add no signatures
        old_count = len(reps)
        everything = np.stack(all_sigs)
        fresh_rows = np.stack([all_sigs[i] for i in new_idx])
        candidates: list[tuple[np.ndarray, Formula]] = []
        if with_neg:
            out = _neg_tracks(negs, fresh_rows, R)
            for pos, r in enumerate(new_idx):
                candidates.append((out[pos], Neg(reps[r])))

        def combine_block(tabs, cls, left_rows, left_ids, right_rows, right_ids):
            chunk = max(1, _CHUNK_CELLS // max(1, len(right_ids) * R * k))
            for s in range(0, len(left_ids), chunk):
                sub = left_rows[s:s + chunk]
                out = _combine(tabs, sub, right_rows, R)
                uniq, first = np.unique(out, axis=0, return_index=True)
                for u, flat in zip(uniq, first):
                    ai, bi = divmod(int(flat), len(right_ids))
                    candidates.append((u, cls(reps[left_ids[s + ai]],
                                              reps[right_ids[bi]])))

        all_ids = list(range(old_count))
        for kind in binary:
            cls = _BINARY_CLASSES[kind]
            tabs = [tr[kind] for tr in tracks]
            # new pairs only: (new x all) plus (all x new)
            combine_block(tabs, cls, fresh_rows, new_idx, everything, all_ids)
            combine_block(tabs, cls, everything, all_ids, fresh_rows, new_idx)

        new_idx = []
        for sig, rep in candidates:
            key = sig.tobytes()
            if key not in seen:
                seen[key] = len(reps)
                all_sigs.append(sig.copy())
                reps.append(rep)
                metric.append(depth)
                new_idx.append(len(reps) - 1)

    return Pool(atoms=tuple(atoms), grid=grid, tracks=k,
                sigs=np.stack(all_sigs) if all_sigs else np.zeros((0, k * R), np.uint8),
                reps=reps, metric=np.array(metric))


def find_formula_with_signature(pool: Pool, target: Sequence[TruthValue]) -> Formula | None:
    """Representative whose (single-track) signature matches, if reachable."""
    want = np.array([v.code for v in target], dtype=np.uint8)
    hits = np.flatnonzero((pool.sigs == want).all(axis=1))
    return pool.reps[int(hits[0])] if hits.size else None

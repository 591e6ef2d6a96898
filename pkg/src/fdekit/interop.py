"""Defined connectives, quantified constants, translations, and synonymy.

The defined connectives unfold to the primitive language::

    a >> b   :=  ~a | b
    a => b   :=  (a -> b) & (~b -> ~a)
    a <-> b  :=  (a -> b) & (b -> a)
    a <=> b  :=  (a => b) & (b => a)

and the constants to quantified sentences::

    #t := exists p. p          #f := forall p. p
    #b := forall p. p -> p     #n := the sigma-2 sentence built from <=>, #t, #b, #f

Translation schemes are homomorphic on atoms, negation, conjunction and
disjunction, with one clause for the conditional; the four built-in schemes
realize the mutual interpretations of K3+cmi with L3 and of LP+cmi with RM3.
``check_synonymy`` verifies the four translational-equivalence conditions,
schema-level by table identity and corroboratively over every formula up to a
size bound (via signature pools).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from . import pool as _pool
from .consequence import equivalent
from .formulas import (And, Arrow, Atom, DArrow, Formula, Neg, Or, children,
                       free_atoms, parse, substitute_all, _rebuild)
from .logics import Logic, get_logic
from .semantics import evaluate
from .values import VALUES, TruthValue, join, meet

__all__ = [
    "Definition", "BUILTIN_DEFINITIONS", "expand",
    "constant_check", "block_closure_values",
    "TranslationScheme", "BUILTIN_SCHEMES", "translate",
    "ConditionResult", "SynonymyReport", "SYNONYMY_PAIRS", "check_synonymy",
]

_PLACEHOLDERS = (Atom("_1"), Atom("_2"))


@dataclass(frozen=True)
class Definition:
    """A rewrite for one defined node: connective kind or constant name.

    ``definiens`` may use the placeholder atoms ``_1`` and ``_2`` for the
    operands (indices up to ``arity`` only).
    """

    name: str
    arity: int
    definiens: Formula

    def __post_init__(self):
        if not 0 <= self.arity <= 2:
            raise ValueError("definition arity must be 0, 1 or 2")
        allowed = {f"_{i + 1}" for i in range(self.arity)}
        used = {a for a in free_atoms(self.definiens) if a.startswith("_")}
        if not used <= allowed:
            raise ValueError(
                f"definiens of {self.name!r} uses placeholders {sorted(used - allowed)} "
                f"beyond its arity {self.arity}")


def _binary_def(name: str, definiens: Formula) -> Definition:
    return Definition(name, 2, definiens)


_1, _2 = _PLACEHOLDERS

_HOOK_DEF = _binary_def("hook", Or(Neg(_1), _2))
_DARROW_DEF = _binary_def("darrow", And(Arrow(_1, _2), Arrow(Neg(_2), Neg(_1))))
_BICOND_DEF = _binary_def("bicond", And(Arrow(_1, _2), Arrow(_2, _1)))
_DBICOND_DEF = _binary_def("dbicond", And(DArrow(_1, _2), DArrow(_2, _1)))

_T_DEF = Definition("t", 0, parse("exists p. p"))
_F_DEF = Definition("f", 0, parse("forall p. p"))
_B_DEF = Definition("b", 0, parse("forall p. p -> p"))

_CONSTANT_DEFS = {"t": _T_DEF, "f": _F_DEF, "b": _B_DEF}

# The n-definiens is stored with its inner constants already unfolded, so the
# definition set stays non-recursive.
_N_RAW = parse("exists q. ((q <=> #t) -> #f) & ((q <=> #b) -> #f) & ((q <=> #f) -> #f) & q")


def _expand_with(f: Formula, defs: Mapping[str, Definition]) -> Formula:
    def walk(node: Formula, active: frozenset[str]) -> Formula:
        kids = tuple(walk(kid, active) for kid in children(node))
        node = _rebuild(node, kids)
        key = node.which if node.kind == "const" else node.kind
        d = defs.get(key)
        if d is None:
            return node
        if key in active:
            raise ValueError(f"circular definition chain through {key!r}")
        body = walk(d.definiens, active | {key})
        mapping = {f"_{i + 1}": kid for i, kid in enumerate(kids[:d.arity])}
        return substitute_all(body, mapping) if mapping else body

    return walk(f, frozenset())


_N_DEF = Definition("n", 0, _expand_with(_N_RAW, _CONSTANT_DEFS))

BUILTIN_DEFINITIONS: Mapping[str, Definition] = {
    "hook": _HOOK_DEF,
    "darrow": _DARROW_DEF,
    "bicond": _BICOND_DEF,
    "dbicond": _DBICOND_DEF,
    "t": _T_DEF,
    "f": _F_DEF,
    "b": _B_DEF,
    "n": _N_DEF,
}


def expand(f: Formula, definitions: Mapping[str, Definition] | None = None) -> Formula:
    """Unfold every defined node and constant; primitive nodes are untouched."""
    defs = BUILTIN_DEFINITIONS if definitions is None else definitions
    return _expand_with(f, defs)


_CONSTANT_TARGETS = {
    "t": TruthValue.T, "f": TruthValue.F, "b": TruthValue.B, "n": TruthValue.N,
}
_CONSTANT_DEPS = {"t": (), "f": (), "b": (), "n": ("t", "b", "f")}


def constant_check(logic: Logic) -> dict[str, TruthValue]:
    """Evaluate the quantified constant definientia as sentences of ``logic``.

    A constant enters the returned map only when its target value is admitted
    by the logic, every constant its definiens relies on checks out itself,
    and the definiens evaluates to the target (so e.g. K3+cmi keeps only t
    and f: B is not a K3 value, and the n-definiens leans on #b).
    """
    definientia = {"t": _T_DEF.definiens, "f": _F_DEF.definiens,
                   "b": _B_DEF.definiens, "n": _N_DEF.definiens}
    out: dict[str, TruthValue] = {}
    for name in ("t", "f", "b", "n"):
        target = _CONSTANT_TARGETS[name]
        if target not in logic.values:
            continue
        if any(dep not in out for dep in _CONSTANT_DEPS[name]):
            continue
        if evaluate(logic, definientia[name], {}) is target:
            out[name] = target
    return out


def block_closure_values(f: Formula) -> tuple[TruthValue, TruthValue]:
    """Values of the existential and universal closures of ``f`` in FDE+cmi.

    ``f`` must be quantifier-free and constant-free; binding all its free
    atoms with one block of quantifiers takes the join (existential) or meet
    (universal) of its value across all valuations.
    """
    for kind in ("forall", "exists", "const"):
        if any(sub.kind == kind for sub in _subnodes(f)):
            raise ValueError(f"block closure expects a quantifier-free, "
                             f"constant-free formula (found {kind!r})")
    logic = get_logic("FDE+cmi")
    atoms = sorted(free_atoms(f))
    if not atoms:
        v = evaluate(logic, f, {})
        return v, v
    from . import kernel
    _, out = kernel.sweep_formulas(logic, [f], tuple(atoms))
    values = [VALUES[int(c)] for c in out[:, 0]]
    lo = hi = values[0]
    for v in values[1:]:
        hi = join(hi, v)
        lo = meet(lo, v)
    return hi, lo


def _subnodes(f: Formula):
    yield f
    for kid in children(f):
        yield from _subnodes(kid)


# ---------------------------------------------------------------------------
# Translation schemes and synonymy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TranslationScheme:
    """Homomorphic rewrite between logics, special-casing the conditional.

    ``arrow`` receives the already-translated operands and builds the target
    rendering of the conditional.  The source language is atoms and
    ``~ & | ->`` only.
    """

    name: str
    source: str
    target: str
    arrow: Callable[[Formula, Formula], Formula]


BUILTIN_SCHEMES: Mapping[str, TranslationScheme] = {
    "K3+cmi-to-L3": TranslationScheme(
        "K3+cmi-to-L3", "K3+cmi", "L3",
        lambda a, b: Arrow(a, Arrow(a, b))),
    "L3-to-K3+cmi": TranslationScheme(
        "L3-to-K3+cmi", "L3", "K3+cmi",
        lambda a, b: And(Arrow(a, b), Arrow(Neg(b), Neg(a)))),
    "LP+cmi-to-RM3": TranslationScheme(
        "LP+cmi-to-RM3", "LP+cmi", "RM3",
        lambda a, b: Or(Arrow(a, b), b)),
    "RM3-to-LP+cmi": TranslationScheme(
        "RM3-to-LP+cmi", "RM3", "LP+cmi",
        lambda a, b: And(Arrow(a, b), Arrow(Neg(b), Neg(a)))),
}


def translate(f: Formula, scheme: TranslationScheme) -> Formula:
    """Apply ``scheme`` homomorphically; atoms map to themselves."""
    k = f.kind
    if k == "atom":
        return f
    if k == "neg":
        return Neg(translate(f.child, scheme))
    if k == "and":
        return And(translate(f.left, scheme), translate(f.right, scheme))
    if k == "or":
        return Or(translate(f.left, scheme), translate(f.right, scheme))
    if k == "arrow":
        return scheme.arrow(translate(f.left, scheme), translate(f.right, scheme))
    raise ValueError(
        f"{k!r} is not in the source language of scheme {scheme.name} "
        "(atoms, ~, &, |, -> only)")


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witness: Formula | None = None
    schema_passed: bool | None = None


@dataclass(frozen=True)
class SynonymyReport:
    """Verdicts for the four translational-equivalence conditions."""

    pair: str
    bound: int
    conditions: Mapping[int, ConditionResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def to_text(self) -> str:
        lines = []
        for k in sorted(self.conditions):
            c = self.conditions[k]
            line = f"condition-{k}: {'PASS' if c.passed else 'FAIL'} bound={self.bound}"
            if c.witness is not None:
                line += f" witness={c.witness}"
            lines.append(line)
        return "\n".join(lines)


SYNONYMY_PAIRS: tuple[str, ...] = ("K3+cmi/L3", "LP+cmi/RM3")

_PAIR_SCHEMES = {
    "K3+cmi/L3": ("K3+cmi-to-L3", "L3-to-K3+cmi"),
    "LP+cmi/RM3": ("LP+cmi-to-RM3", "RM3-to-LP+cmi"),
}

_POOL_ATOMS = ("p", "q")
_POOL_KINDS = ("neg", "and", "or", "arrow")


def _all_valid(track: np.ndarray, logic: Logic) -> np.ndarray:
    des = np.array(sorted(v.code for v in logic.designated), dtype=np.uint8)
    return np.isin(track, des).all(axis=1)


def _theoremhood_condition(src: Logic, dst: Logic,
                           scheme: TranslationScheme, bound: int) -> ConditionResult:
    """If a formula is valid in ``src``, its translation is valid in ``dst``."""
    tracks = [_pool.track_tables(src),
              {**_pool.track_tables(dst), "arrow": _pool.clause_table(dst, scheme.arrow)}]
    p = _pool.pool_by_size(src, _POOL_ATOMS, _POOL_KINDS, bound, tracks=tracks)
    bad = _all_valid(p.track(0), src) & ~_all_valid(p.track(1), dst)
    idx = np.flatnonzero(bad)
    if idx.size:
        return ConditionResult(False, witness=p.reps[int(idx[0])])
    return ConditionResult(True)


def _roundtrip_condition(logic: Logic, first: TranslationScheme,
                         second: TranslationScheme, bound: int) -> ConditionResult:
    """The round trip is equivalent (value identity) to the original."""
    p_atom, q_atom = Atom("p"), Atom("q")
    schema = translate(translate(Arrow(p_atom, q_atom), first), second)
    schema_ok = equivalent(logic, schema, Arrow(p_atom, q_atom))

    def rt_arrow(a: Formula, b: Formula) -> Formula:
        return translate(translate(Arrow(a, b), first), second)

    tracks = [_pool.track_tables(logic),
              {**_pool.track_tables(logic), "arrow": _pool.clause_table(logic, rt_arrow)}]
    p = _pool.pool_by_size(logic, _POOL_ATOMS, _POOL_KINDS, bound, tracks=tracks)
    bad = (p.track(0) != p.track(1)).any(axis=1)
    idx = np.flatnonzero(bad)
    witness = p.reps[int(idx[0])] if idx.size else None
    return ConditionResult(schema_ok and idx.size == 0, witness=witness,
                           schema_passed=schema_ok)


def check_synonymy(pair: str, bound: int = 7) -> SynonymyReport:
    """Check the four translational-equivalence conditions for a built-in pair.

    Conditions 1 and 2 (theoremhood preservation, each direction) are checked
    over every formula of the shared ~/&/|/-> language on two atoms with at
    most ``bound`` connectives.  Conditions 3 and 4 (round trips equivalent to
    the identity) are checked schema-level on the conditional's table, which
    settles them for all formulas, and corroborated over the same pool.
    """
    if pair not in _PAIR_SCHEMES:
        raise ValueError(f"unknown pair {pair!r}; choose from {', '.join(SYNONYMY_PAIRS)}")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    name1, name2 = _PAIR_SCHEMES[pair]
    t1, t2 = BUILTIN_SCHEMES[name1], BUILTIN_SCHEMES[name2]
    logic1, logic2 = get_logic(t1.source), get_logic(t2.source)
    conditions = {
        1: _theoremhood_condition(logic1, logic2, t1, bound),
        2: _theoremhood_condition(logic2, logic1, t2, bound),
        3: _roundtrip_condition(logic1, t1, t2, bound),
        4: _roundtrip_condition(logic2, t2, t1, bound),
    }
    return SynonymyReport(pair=pair, bound=bound, conditions=conditions)

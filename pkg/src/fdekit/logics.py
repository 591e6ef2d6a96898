"""Logic registry: value sets, designation, and connective matrices.

Eleven logics are registered.  The four-valued base family interprets the
lattice connectives the same way everywhere; they differ in which values are
admitted, whether the primitive conditional is available, and (for M) which
valuations are admitted:

========  ============  ==========  =========  =======================
name      values        designated  ``->``     valuation filter
========  ============  ==========  =========  =======================
FDE       T B N F       T B         rejected   none
K3        T N F         T           rejected   none
LP        T B F         T B         rejected   none
M         T B N F       T B         rejected   no B/N mixing
FDE+cmi   T B N F       T B         cmi        none
K3+cmi    T N F         T           cmi        none
LP+cmi    T B F         T B         cmi        none
M+cmi     T B N F       T B         cmi        no B/N mixing
L3        T N F         T           Lukasiewicz  none
RM3       T B F         T B         RM3        none
CL        T F           T           material   none
========  ============  ==========  =========  =======================

The cmi conditional returns the consequent when the antecedent is designated
and T otherwise.  The derived connectives are fixed once per logic from the
definitions ``>>  := ~a | b``, ``=> := (a -> b) & (~b -> ~a)``,
``<-> := (a -> b) & (b -> a)`` and ``<=> := (a => b) & (b => a)``, so
evaluation never re-expands them.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping

from .values import TruthValue, join, meet, negate

__all__ = [
    "Logic", "registry", "get_logic", "LOGIC_NAMES",
    "LogicError", "UnknownLogicError", "UnsupportedConnectiveError", "UnboundAtomError",
]

T, B, N, F = TruthValue.T, TruthValue.B, TruthValue.N, TruthValue.F


class LogicError(ValueError):
    """Base class for semantic errors raised by the kernel."""


class UnknownLogicError(LogicError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"unknown logic {name!r}; registered logics: {', '.join(LOGIC_NAMES)}")


class UnsupportedConnectiveError(LogicError):
    def __init__(self, logic_name: str, what: str):
        self.logic_name = logic_name
        self.what = what
        super().__init__(f"{what} is not available in {logic_name}")


class UnboundAtomError(LogicError):
    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__(f"valuation does not cover atoms: {', '.join(self.missing)}")


Valuation = Mapping[str, TruthValue]


@dataclass(frozen=True, eq=False)
class Logic:
    """A named many-valued logic: admitted values, designation, matrices.

    ``matrices`` maps a connective kind to its table: ``"neg"`` to a map
    value -> value, every binary kind to a map (value, value) -> value over
    the admitted values only.
    """

    name: str
    values: tuple[TruthValue, ...]
    designated: frozenset[TruthValue]
    matrices: Mapping[str, Mapping]
    valuation_filter: Callable[[Valuation], bool] | None = None

    @property
    def has_arrow(self) -> bool:
        return "arrow" in self.matrices

    def admits(self, kind: str) -> bool:
        if kind in ("atom", "forall", "exists"):
            return True
        if kind == "const":
            return True  # per-constant admission is checked via admits_value
        return kind in self.matrices

    def admits_value(self, v: TruthValue) -> bool:
        return v in self.values

    def admits_valuation(self, valuation: Valuation) -> bool:
        if any(v not in self.values for v in valuation.values()):
            return False
        return self.valuation_filter is None or self.valuation_filter(valuation)

    def __repr__(self) -> str:
        return f"Logic({self.name})"


def _cmi_arrow(a: TruthValue, b: TruthValue) -> TruthValue:
    return b if a.designated else T


_L3_ARROW = {
    (T, T): T, (T, N): N, (T, F): F,
    (N, T): T, (N, N): T, (N, F): N,
    (F, T): T, (F, N): T, (F, F): T,
}

_RM3_ARROW = {
    (T, T): T, (T, B): F, (T, F): F,
    (B, T): T, (B, B): B, (B, F): F,
    (F, T): T, (F, B): T, (F, F): T,
}


def _build_matrices(values: tuple[TruthValue, ...],
                    arrow: Mapping[tuple[TruthValue, TruthValue], TruthValue] | None):
    pairs = [(a, b) for a in values for b in values]
    m: dict[str, Mapping] = {
        "neg": {a: negate(a) for a in values},
        "and": {(a, b): meet(a, b) for a, b in pairs},
        "or": {(a, b): join(a, b) for a, b in pairs},
        "hook": {(a, b): join(negate(a), b) for a, b in pairs},
    }
    if arrow is not None:
        arr = {(a, b): arrow[(a, b)] for a, b in pairs}
        darr = {(a, b): meet(arr[(a, b)], arr[(negate(b), negate(a))]) for a, b in pairs}
        m["arrow"] = arr
        m["darrow"] = darr
        m["bicond"] = {(a, b): meet(arr[(a, b)], arr[(b, a)]) for a, b in pairs}
        m["dbicond"] = {(a, b): meet(darr[(a, b)], darr[(b, a)]) for a, b in pairs}
    for kind, table in m.items():
        for out in table.values():
            assert out in values, f"{kind} table leaves the value set"
    return MappingProxyType({k: MappingProxyType(v) for k, v in m.items()})


def _no_mix(valuation: Valuation) -> bool:
    vals = set(valuation.values())
    return not (B in vals and N in vals)


def _make(name: str, values: tuple[TruthValue, ...], *, arrow=None, filter_mix=False) -> Logic:
    designated = frozenset(v for v in values if v.designated)
    if arrow is not None and not isinstance(arrow, dict):
        arrow = {(a, b): arrow(a, b) for a in values for b in values}
    return Logic(
        name=name,
        values=values,
        designated=designated,
        matrices=_build_matrices(values, arrow),
        valuation_filter=_no_mix if filter_mix else None,
    )


_FOUR = (T, B, N, F)
_K3V = (T, N, F)
_LPV = (T, B, F)
_CLV = (T, F)

_REGISTRY: dict[str, Logic] = {
    "FDE": _make("FDE", _FOUR),
    "K3": _make("K3", _K3V),
    "LP": _make("LP", _LPV),
    "M": _make("M", _FOUR, filter_mix=True),
    "FDE+cmi": _make("FDE+cmi", _FOUR, arrow=_cmi_arrow),
    "K3+cmi": _make("K3+cmi", _K3V, arrow=_cmi_arrow),
    "LP+cmi": _make("LP+cmi", _LPV, arrow=_cmi_arrow),
    "M+cmi": _make("M+cmi", _FOUR, arrow=_cmi_arrow, filter_mix=True),
    "L3": _make("L3", _K3V, arrow=_L3_ARROW),
    "RM3": _make("RM3", _LPV, arrow=_RM3_ARROW),
    "CL": _make("CL", _CLV, arrow=_cmi_arrow),
}

#: Registered logic names, in registry order.
LOGIC_NAMES: tuple[str, ...] = tuple(_REGISTRY)


def registry() -> Mapping[str, Logic]:
    """All registered logics, keyed by their exact names."""
    return MappingProxyType(_REGISTRY)


def get_logic(name: str) -> Logic:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownLogicError(name) from None

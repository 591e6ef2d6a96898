"""Fitch-style natural-deduction proofs: data model, file format, checker, audit.

File format (line oriented, two-space indentation per nesting level)::

    logic: FDE+cmi
    premise 1 p -> q
      2 p hyp
      3 q arrE 1,2
    4 p -> q arrI 2-3

The first line names the logic; ``premise`` lines follow, then steps
``<id> <formula> <rule> [<ref>{,<ref>}]`` where a ref is a step id or a
``first-last`` subproof range.  A subproof opens with a ``hyp`` step one level
deeper (or at the same depth, closing its sibling) and closes when the
indentation drops back.  Blank lines and ``#`` comment lines are ignored.

Deduction systems exist for FDE+cmi and its extensions: K3+cmi adds ``efq``,
LP+cmi adds ``lem``, M+cmi adds ``mingle``, and CL has both ``efq`` and
``lem``.  ``check_proof`` verifies each step against its rule schema and the
Fitch accessibility discipline; ``soundness_audit`` then confirms, by sweeping
every admitted valuation, that designated premises force a designated
conclusion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

from . import kernel
from .formulas import Formula, Neg, free_atoms, parse, FormulaSyntaxError
from .logics import get_logic, UnknownLogicError

__all__ = [
    "Step", "Subproof", "Proof", "StepDiagnostic", "CheckReport",
    "ProofSyntaxError", "ProofNotAcceptedError",
    "RULES", "PROOF_RULES", "parse_proof", "check_proof", "soundness_audit",
    "corpus_dir", "corpus_paths", "load_corpus",
]

Ref = Union[int, tuple[int, int]]

RULES = frozenset({
    "premise", "hyp", "reit",
    "andI", "andE1", "andE2", "orI1", "orI2", "orE",
    "arrI", "arrE", "dnI", "dnE",
    "norI", "norE1", "norE2", "nandI1", "nandI2", "nandE",
    "narrI", "narrE1", "narrE2",
    "dilemma", "efq", "lem", "mingle",
})

_BASE_RULES = RULES - {"efq", "lem", "mingle"}

#: Rules available per proof logic.
PROOF_RULES: dict[str, frozenset[str]] = {
    "FDE+cmi": _BASE_RULES,
    "K3+cmi": _BASE_RULES | {"efq"},
    "LP+cmi": _BASE_RULES | {"lem"},
    "M+cmi": _BASE_RULES | {"mingle"},
    "CL": _BASE_RULES | {"efq", "lem"},
}


class ProofSyntaxError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ProofNotAcceptedError(ValueError):
    """Raised when an audit is requested for a proof the checker rejects."""


@dataclass(frozen=True)
class Step:
    id: int
    formula: Formula
    rule: str
    refs: tuple[Ref, ...] = ()


@dataclass(frozen=True)
class Subproof:
    items: tuple[Union[Step, "Subproof"], ...]  # items[0] is the hypothesis

    @property
    def hypothesis(self) -> Step:
        return self.items[0]

    @property
    def first_id(self) -> int:
        return self.items[0].id

    @property
    def last_id(self) -> int:
        last = self.items[-1]
        return last.id if isinstance(last, Step) else last.last_id

    @property
    def conclusion(self) -> Formula | None:
        last = self.items[-1]
        return last.formula if isinstance(last, Step) else None


Item = Union[Step, Subproof]


@dataclass(frozen=True)
class Proof:
    logic_name: str
    premises: tuple[Step, ...]
    items: tuple[Item, ...]

    @property
    def conclusion(self) -> Formula:
        if not self.items or not isinstance(self.items[-1], Step):
            raise ValueError("proof does not end with a top-level step")
        return self.items[-1].formula

    def steps(self) -> Iterator[Step]:
        yield from self.premises

        def walk(items):
            for item in items:
                if isinstance(item, Step):
                    yield item
                else:
                    yield from walk(item.items)

        yield from walk(self.items)


@dataclass(frozen=True)
class StepDiagnostic:
    step_id: int
    rule: str
    status: str  # "ok" or "error"
    message: str = ""


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    diagnostics: tuple[StepDiagnostic, ...]

    @property
    def failures(self) -> tuple[StepDiagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.status == "error")

    def to_text(self) -> str:
        lines = []
        for d in self.diagnostics:
            if d.status == "ok":
                lines.append(f"{d.step_id} ok")
            else:
                lines.append(f"{d.step_id} error: {d.message}")
        lines.append("accepted" if self.accepted else "rejected")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_REF_RE = re.compile(r"\d+(-\d+)?(,\d+(-\d+)?)*\Z")


def _parse_refs(text: str) -> tuple[Ref, ...]:
    refs: list[Ref] = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            refs.append((int(a), int(b)))
        else:
            refs.append(int(part))
    return tuple(refs)


def parse_proof(text: str) -> Proof:
    """Parse the proof file format into a structurally faithful Proof."""
    logic_name: str | None = None
    premises: list[Step] = []
    # stack[0] collects top-level items; deeper entries collect open subproofs
    stack: list[list[Item]] = [[]]
    seen_ids: set[int] = set()
    last_id = 0
    body_started = False

    def close_one(lineno: int) -> None:
        items = stack.pop()
        stack[-1].append(Subproof(tuple(items)))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if logic_name is None:
            if not line.startswith("logic:"):
                raise ProofSyntaxError("proof must start with 'logic: <name>'", lineno)
            logic_name = line[len("logic:"):].strip()
            try:
                get_logic(logic_name)
            except UnknownLogicError as exc:
                raise ProofSyntaxError(str(exc), lineno) from None
            continue

        indent = len(line) - len(line.lstrip(" "))
        if indent % 2:
            raise ProofSyntaxError("indentation must be a multiple of two spaces", lineno)
        level = indent // 2
        words = line.split()

        if words[0] == "premise":
            if body_started:
                raise ProofSyntaxError("premises must precede all steps", lineno)
            if level != 0:
                raise ProofSyntaxError("premises cannot be indented", lineno)
            if len(words) < 3:
                raise ProofSyntaxError("premise needs an id and a formula", lineno)
            step_id = _parse_id(words[1], lineno)
            formula = _parse_formula(" ".join(words[2:]), lineno)
            _bump_id(step_id, seen_ids, last_id, lineno)
            last_id = step_id
            premises.append(Step(step_id, formula, "premise"))
            continue

        body_started = True
        step_id = _parse_id(words[0], lineno)
        rest = words[1:]
        if not rest:
            raise ProofSyntaxError("step needs a formula and a rule", lineno)
        refs: tuple[Ref, ...] = ()
        if len(rest) >= 2 and rest[-2] in RULES and _REF_RE.match(rest[-1]):
            rule = rest[-2]
            refs = _parse_refs(rest[-1])
            formula_words = rest[:-2]
        elif rest[-1] in RULES:
            rule = rest[-1]
            formula_words = rest[:-1]
        else:
            raise ProofSyntaxError(
                "could not find a rule name at the end of the step", lineno)
        if not formula_words:
            raise ProofSyntaxError("step needs a formula", lineno)
        formula = _parse_formula(" ".join(formula_words), lineno)
        _bump_id(step_id, seen_ids, last_id, lineno)
        last_id = step_id
        for ref in refs:
            for rid in (ref if isinstance(ref, tuple) else (ref,)):
                if rid >= step_id or rid not in seen_ids:
                    raise ProofSyntaxError(
                        f"step {step_id} cites {rid} out of order", lineno)
        step = Step(step_id, formula, rule, refs)

        current = len(stack) - 1
        if level > current + 1:
            raise ProofSyntaxError("indentation jumps more than one level", lineno)
        if level == current + 1:
            if rule != "hyp":
                raise ProofSyntaxError("a subproof must open with a 'hyp' step", lineno)
            stack.append([step])
            continue
        while len(stack) - 1 > level:
            close_one(lineno)
        if rule == "hyp":
            if level == 0:
                raise ProofSyntaxError("'hyp' cannot appear at the top level", lineno)
            close_one(lineno)  # close the sibling subproof at this level
            stack.append([step])
        elif rule == "premise":
            raise ProofSyntaxError("'premise' is not a derivation rule", lineno)
        else:
            stack[-1].append(step)

    if logic_name is None:
        raise ProofSyntaxError("empty proof")
    while len(stack) > 1:
        close_one(0)
    return Proof(logic_name=logic_name, premises=tuple(premises), items=tuple(stack[0]))


def _parse_id(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ProofSyntaxError(f"expected a step id, found {token!r}", lineno)
    return int(token)


def _parse_formula(text: str, lineno: int) -> Formula:
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise ProofSyntaxError(f"bad formula {text!r}: {exc}", lineno) from None


def _bump_id(step_id: int, seen: set[int], last: int, lineno: int) -> None:
    if step_id in seen:
        raise ProofSyntaxError(f"duplicate step id {step_id}", lineno)
    if step_id <= last:
        raise ProofSyntaxError(
            f"step ids must increase (found {step_id} after {last})", lineno)
    seen.add(step_id)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

class _RuleError(Exception):
    pass


class _Scope:
    """Accessible items at one nesting level: steps and closed subproofs."""

    def __init__(self):
        self.steps: dict[int, Step] = {}
        self.subs: dict[tuple[int, int], Subproof] = {}


class _Checker:
    def __init__(self, logic_name: str):
        self.available = PROOF_RULES[logic_name]
        self.logic_name = logic_name
        self.diagnostics: list[StepDiagnostic] = []
        self.ok = True

    def resolve_step(self, scopes: list[_Scope], ref: Ref) -> Step:
        if isinstance(ref, tuple):
            raise _RuleError(f"expected a step citation, got subproof range "
                             f"{ref[0]}-{ref[1]}")
        for scope in reversed(scopes):
            if ref in scope.steps:
                return scope.steps[ref]
        raise _RuleError(f"step {ref} is not accessible here")

    def resolve_sub(self, scopes: list[_Scope], ref: Ref) -> Subproof:
        if not isinstance(ref, tuple):
            raise _RuleError(f"expected a subproof range citation, got step {ref}")
        sub = scopes[-1].subs.get(ref)
        if sub is None:
            raise _RuleError(
                f"subproof {ref[0]}-{ref[1]} is not a closed subproof at this level")
        if sub.conclusion is None:
            raise _RuleError(
                f"subproof {ref[0]}-{ref[1]} ends with a nested subproof")
        return sub

    def note(self, step: Step, error: str | None) -> None:
        if error is None:
            self.diagnostics.append(StepDiagnostic(step.id, step.rule, "ok"))
        else:
            self.diagnostics.append(StepDiagnostic(step.id, step.rule, "error", error))
            self.ok = False

    def check_items(self, items, scopes: list[_Scope]) -> None:
        for item in items:
            if isinstance(item, Subproof):
                inner = _Scope()
                hyp = item.hypothesis
                self.note(hyp, None)  # hypotheses are free
                inner.steps[hyp.id] = hyp
                self.check_items(item.items[1:], scopes + [inner])
                scopes[-1].subs[(item.first_id, item.last_id)] = item
            else:
                try:
                    self.check_step(item, scopes)
                    self.note(item, None)
                except _RuleError as exc:
                    self.note(item, str(exc))
                scopes[-1].steps[item.id] = item

    def check_step(self, step: Step, scopes: list[_Scope]) -> None:
        rule = step.rule
        if rule not in RULES:
            raise _RuleError(f"unknown rule {rule!r}")
        if rule in ("premise", "hyp"):
            raise _RuleError(f"{rule!r} cannot justify a derived step")
        if rule not in self.available:
            raise _RuleError(f"rule {rule!r} not available in logic {self.logic_name}")
        handler = _RULE_HANDLERS[rule]
        arity = _RULE_REFS[rule]
        if len(step.refs) != len(arity):
            want = ", ".join(arity) if arity else "no citations"
            raise _RuleError(f"rule {rule!r} expects {want}")
        resolved = []
        for ref, want in zip(step.refs, arity):
            if want == "step":
                resolved.append(self.resolve_step(scopes, ref))
            else:
                resolved.append(self.resolve_sub(scopes, ref))
        error = handler(step.formula, *resolved)
        if error is not None:
            raise _RuleError(error)


def _is(f: Formula, kind: str) -> bool:
    return f.kind == kind


def _rule_reit(f, cited: Step):
    return None if f == cited.formula else "reiterated formula differs from the cited step"


def _rule_andI(f, a: Step, b: Step):
    if not _is(f, "and"):
        return "conclusion of andI must be a conjunction"
    if f.left != a.formula:
        return "left conjunct differs from the first cited step"
    if f.right != b.formula:
        return "right conjunct differs from the second cited step"
    return None


def _rule_andE1(f, a: Step):
    if not _is(a.formula, "and"):
        return "andE1 must cite a conjunction"
    return None if f == a.formula.left else "conclusion is not the left conjunct"


def _rule_andE2(f, a: Step):
    if not _is(a.formula, "and"):
        return "andE2 must cite a conjunction"
    return None if f == a.formula.right else "conclusion is not the right conjunct"


def _rule_orI1(f, a: Step):
    if not _is(f, "or"):
        return "conclusion of orI1 must be a disjunction"
    return None if f.left == a.formula else "left disjunct differs from the cited step"


def _rule_orI2(f, a: Step):
    if not _is(f, "or"):
        return "conclusion of orI2 must be a disjunction"
    return None if f.right == a.formula else "right disjunct differs from the cited step"


def _rule_orE(f, d: Step, s1: Subproof, s2: Subproof):
    if not _is(d.formula, "or"):
        return "orE must cite a disjunction"
    if s1.hypothesis.formula != d.formula.left:
        return "first subproof must hypothesize the left disjunct"
    if s2.hypothesis.formula != d.formula.right:
        return "second subproof must hypothesize the right disjunct"
    if s1.conclusion != f or s2.conclusion != f:
        return "both subproofs must conclude the asserted formula"
    return None


def _rule_arrI(f, s: Subproof):
    if not _is(f, "arrow"):
        return "conclusion of arrI must be a conditional"
    if s.hypothesis.formula != f.left:
        return "subproof hypothesis differs from the antecedent"
    if s.conclusion != f.right:
        return "subproof conclusion differs from the consequent"
    return None


def _rule_arrE(f, c: Step, a: Step):
    if not _is(c.formula, "arrow"):
        return "arrE must cite a conditional first"
    if c.formula.left != a.formula:
        return "second citation differs from the antecedent"
    return None if f == c.formula.right else "conclusion is not the consequent"


def _rule_dnI(f, a: Step):
    if not (_is(f, "neg") and _is(f.child, "neg")):
        return "conclusion of dnI must be a double negation"
    return None if f.child.child == a.formula else "conclusion is not the double negation of the cited step"


def _rule_dnE(f, a: Step):
    g = a.formula
    if not (_is(g, "neg") and _is(g.child, "neg")):
        return "dnE must cite a double negation"
    return None if f == g.child.child else "conclusion is not the de-negated formula"


def _rule_norI(f, a: Step, b: Step):
    if not (_is(f, "neg") and _is(f.child, "or")):
        return "conclusion of norI must be a negated disjunction"
    if a.formula != Neg(f.child.left):
        return "first citation must negate the left disjunct"
    if b.formula != Neg(f.child.right):
        return "second citation must negate the right disjunct"
    return None


def _rule_norE1(f, a: Step):
    g = a.formula
    if not (_is(g, "neg") and _is(g.child, "or")):
        return "norE1 must cite a negated disjunction"
    return None if f == Neg(g.child.left) else "conclusion is not the negated left disjunct"


def _rule_norE2(f, a: Step):
    g = a.formula
    if not (_is(g, "neg") and _is(g.child, "or")):
        return "norE2 must cite a negated disjunction"
    return None if f == Neg(g.child.right) else "conclusion is not the negated right disjunct"


def _rule_nandI1(f, a: Step):
    if not (_is(f, "neg") and _is(f.child, "and")):
        return "conclusion of nandI1 must be a negated conjunction"
    return None if a.formula == Neg(f.child.left) else "citation must negate the left conjunct"


def _rule_nandI2(f, a: Step):
    if not (_is(f, "neg") and _is(f.child, "and")):
        return "conclusion of nandI2 must be a negated conjunction"
    return None if a.formula == Neg(f.child.right) else "citation must negate the right conjunct"


def _rule_nandE(f, d: Step, s1: Subproof, s2: Subproof):
    g = d.formula
    if not (_is(g, "neg") and _is(g.child, "and")):
        return "nandE must cite a negated conjunction"
    if s1.hypothesis.formula != Neg(g.child.left):
        return "first subproof must hypothesize the negated left conjunct"
    if s2.hypothesis.formula != Neg(g.child.right):
        return "second subproof must hypothesize the negated right conjunct"
    if s1.conclusion != f or s2.conclusion != f:
        return "both subproofs must conclude the asserted formula"
    return None


def _rule_narrI(f, a: Step, b: Step):
    if not (_is(f, "neg") and _is(f.child, "arrow")):
        return "conclusion of narrI must be a negated conditional"
    if a.formula != f.child.left:
        return "first citation must be the antecedent"
    if b.formula != Neg(f.child.right):
        return "second citation must negate the consequent"
    return None


def _rule_narrE1(f, a: Step):
    g = a.formula
    if not (_is(g, "neg") and _is(g.child, "arrow")):
        return "narrE1 must cite a negated conditional"
    return None if f == g.child.left else "conclusion is not the antecedent"


def _rule_narrE2(f, a: Step):
    g = a.formula
    if not (_is(g, "neg") and _is(g.child, "arrow")):
        return "narrE2 must cite a negated conditional"
    return None if f == Neg(g.child.right) else "conclusion is not the negated consequent"


def _rule_dilemma(f, s1: Subproof, s2: Subproof):
    hyp2 = s2.hypothesis.formula
    if not _is(hyp2, "arrow"):
        return "second dilemma subproof must hypothesize a conditional"
    if hyp2.left != s1.hypothesis.formula:
        return "the conditional's antecedent must match the first hypothesis"
    if s1.conclusion != f or s2.conclusion != f:
        return "both subproofs must conclude the asserted formula"
    return None


def _rule_efq(f, a: Step, b: Step):
    if b.formula != Neg(a.formula):
        return "efq must cite a formula and its negation, in that order"
    return None


def _rule_lem(f, s1: Subproof, s2: Subproof):
    if s2.hypothesis.formula != Neg(s1.hypothesis.formula):
        return "lem subproofs must hypothesize a formula and its negation"
    if s1.conclusion != f or s2.conclusion != f:
        return "both subproofs must conclude the asserted formula"
    return None


def _rule_mingle(f, a: Step):
    g = a.formula
    if not (_is(g, "and") and _is(g.right, "neg") and g.right.child == g.left):
        return "mingle must cite a contradiction of the form A & ~A"
    if not (_is(f, "or") and _is(f.right, "neg") and f.right.child == f.left):
        return "conclusion of mingle must have the form B | ~B"
    return None


_RULE_HANDLERS = {
    "reit": _rule_reit,
    "andI": _rule_andI, "andE1": _rule_andE1, "andE2": _rule_andE2,
    "orI1": _rule_orI1, "orI2": _rule_orI2, "orE": _rule_orE,
    "arrI": _rule_arrI, "arrE": _rule_arrE,
    "dnI": _rule_dnI, "dnE": _rule_dnE,
    "norI": _rule_norI, "norE1": _rule_norE1, "norE2": _rule_norE2,
    "nandI1": _rule_nandI1, "nandI2": _rule_nandI2, "nandE": _rule_nandE,
    "narrI": _rule_narrI, "narrE1": _rule_narrE1, "narrE2": _rule_narrE2,
    "dilemma": _rule_dilemma, "efq": _rule_efq, "lem": _rule_lem,
    "mingle": _rule_mingle,
}

_RULE_REFS = {
    "reit": ("step",),
    "andI": ("step", "step"), "andE1": ("step",), "andE2": ("step",),
    "orI1": ("step",), "orI2": ("step",), "orE": ("step", "sub", "sub"),
    "arrI": ("sub",), "arrE": ("step", "step"),
    "dnI": ("step",), "dnE": ("step",),
    "norI": ("step", "step"), "norE1": ("step",), "norE2": ("step",),
    "nandI1": ("step",), "nandI2": ("step",), "nandE": ("step", "sub", "sub"),
    "narrI": ("step", "step"), "narrE1": ("step",), "narrE2": ("step",),
    "dilemma": ("sub", "sub"), "efq": ("step", "step"), "lem": ("sub", "sub"),
    "mingle": ("step",),
}


def check_proof(proof: Proof) -> CheckReport:
    """Accept iff every step instantiates its rule exactly and cites only
    accessible items.  Failures become report entries, never exceptions."""
    if proof.logic_name not in PROOF_RULES:
        diag = StepDiagnostic(0, "", "error",
                              f"no deduction system for logic {proof.logic_name} "
                              f"(available: {', '.join(PROOF_RULES)})")
        return CheckReport(False, (diag,))
    checker = _Checker(proof.logic_name)
    root = _Scope()
    for premise in proof.premises:
        checker.note(premise, None)
        root.steps[premise.id] = premise
    checker.check_items(proof.items, [root])
    return CheckReport(checker.ok, tuple(checker.diagnostics))


def soundness_audit(proof: Proof) -> CheckReport:
    """Executable soundness: sweep every admitted valuation of the proof's
    atoms and verify designated premises force a designated conclusion.

    Refuses proofs the checker rejects (:class:`ProofNotAcceptedError`).
    """
    base = check_proof(proof)
    if not base.accepted:
        first = base.failures[0]
        raise ProofNotAcceptedError(
            f"cannot audit a rejected proof (step {first.step_id}: {first.message})")
    logic = get_logic(proof.logic_name)
    conclusion = proof.conclusion
    atoms: set[str] = set()
    for step in proof.steps():
        atoms |= free_atoms(step.formula)
    formulas = [p.formula for p in proof.premises] + [conclusion]
    vals, out = kernel.sweep_formulas(logic, formulas, tuple(sorted(atoms)))
    des_codes = {v.code for v in logic.designated}
    conclusion_id = proof.items[-1].id
    for i in range(vals.shape[0]):
        row = out[i]
        if all(int(c) in des_codes for c in row[:-1]) and int(row[-1]) not in des_codes:
            valuation = kernel.decode_row(tuple(sorted(atoms)), vals[i])
            text = " ".join(f"{k}={v.letter}" for k, v in valuation.items())
            diag = StepDiagnostic(conclusion_id, "audit", "error",
                                  f"designation not preserved at {text}")
            return CheckReport(False, (diag,))
    diag = StepDiagnostic(conclusion_id, "audit", "ok",
                          f"designation preserved on {vals.shape[0]} valuations")
    return CheckReport(True, (diag,))


# ---------------------------------------------------------------------------
# Shipped corpus
# ---------------------------------------------------------------------------

def corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


def corpus_paths() -> list[Path]:
    return sorted(corpus_dir().glob("*.prf"))


def load_corpus() -> list[tuple[str, Proof]]:
    """Parse every shipped proof, as (name, proof) pairs."""
    out = []
    for path in corpus_paths():
        out.append((path.stem, parse_proof(path.read_text())))
    return out

"""Formula AST, text grammar, parser, renderer, and capture-avoiding substitution.

ASCII grammar (tightest binding first):

    ~              negation
    &              conjunction            (left associative)
    |              disjunction            (left associative)
    ->  >>         conditional / hook     (right associative, same level,
                                           mixing requires parentheses)
    =>             contraposable arrow    (right associative)
    <->  <=>       biconditionals         (left associative, same level,
                                           mixing requires parentheses)
    forall v. …    / exists v. …          scope extends maximally right

Atoms are identifiers ``[a-zA-Z][a-zA-Z0-9_]*`` excluding the reserved words
``forall`` and ``exists``; constants are ``#t #b #n #f``.  Unicode connectives
(¬ ∧ ∨ → ⊃ ⇒ ↔ ⇔ ∀ ∃) are accepted on input; canonical output is ASCII.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar, Iterator

from .values import VALUES, TruthValue

__all__ = [
    "Formula", "Atom", "Const", "Neg", "And", "Or", "Arrow", "Hook",
    "DArrow", "Bicond", "DBicond", "Forall", "Exists",
    "FormulaError", "FormulaSyntaxError",
    "parse", "render", "free_atoms", "substitute", "substitute_all",
    "positions", "subformula_at", "replace_at",
    "BINARY_KINDS", "CONST_VALUES",
]

RESERVED_WORDS = frozenset({"forall", "exists"})
_IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
# Definition templates may use the placeholder atoms _1 and _2; the grammar
# itself never produces them.
_PLACEHOLDER_RE = re.compile(r"_[12]\Z")


class FormulaError(ValueError):
    """Malformed formula construction (bad atom name, bad constant, ...)."""


class FormulaSyntaxError(FormulaError):
    """Parse failure, carrying the 1-based line/column and the expected tokens."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{line}:{column}: {message}{hint}")


def _check_atom_name(name: str, *, allow_placeholder: bool = True) -> None:
    if allow_placeholder and _PLACEHOLDER_RE.match(name or ""):
        return
    if not _IDENT_RE.match(name or ""):
        raise FormulaError(f"invalid atom name {name!r}")
    if name in RESERVED_WORDS:
        raise FormulaError(f"{name!r} is a reserved word and cannot name an atom")


class Formula:
    """Base class for all AST nodes.  Nodes are immutable and hashable."""

    __slots__ = ()
    kind: ClassVar[str]

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str
    kind: ClassVar[str] = "atom"

    def __post_init__(self):
        _check_atom_name(self.name)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    """A propositional constant: one of t, b, n, f (written ``#t`` etc.)."""

    which: str
    kind: ClassVar[str] = "const"

    def __post_init__(self):
        if self.which not in ("t", "b", "n", "f"):
            raise FormulaError(f"unknown constant {self.which!r} (expected one of t, b, n, f)")

    @property
    def value(self) -> TruthValue:
        return CONST_VALUES[self.which]


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    child: Formula
    kind: ClassVar[str] = "neg"


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    kind: ClassVar[str] = "and"


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    kind: ClassVar[str] = "or"


@dataclass(frozen=True, slots=True)
class Arrow(Formula):
    """The primitive conditional (interpreted per logic; ``->`` in text)."""

    left: Formula
    right: Formula
    kind: ClassVar[str] = "arrow"


@dataclass(frozen=True, slots=True)
class Hook(Formula):
    """The material hook defined from negation and disjunction (``>>``)."""

    left: Formula
    right: Formula
    kind: ClassVar[str] = "hook"


@dataclass(frozen=True, slots=True)
class DArrow(Formula):
    """The contraposable conditional (``=>``)."""

    left: Formula
    right: Formula
    kind: ClassVar[str] = "darrow"


@dataclass(frozen=True, slots=True)
class Bicond(Formula):
    """Biconditional built from the primitive conditional (``<->``)."""

    left: Formula
    right: Formula
    kind: ClassVar[str] = "bicond"


@dataclass(frozen=True, slots=True)
class DBicond(Formula):
    """Biconditional built from the contraposable conditional (``<=>``)."""

    left: Formula
    right: Formula
    kind: ClassVar[str] = "dbicond"


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula
    kind: ClassVar[str] = "forall"

    def __post_init__(self):
        _check_atom_name(self.var, allow_placeholder=False)


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula
    kind: ClassVar[str] = "exists"

    def __post_init__(self):
        _check_atom_name(self.var, allow_placeholder=False)


#: Binary connective kinds in the fixed order used by matrix tables.
BINARY_KINDS: tuple[str, ...] = ("and", "or", "arrow", "hook", "darrow", "bicond", "dbicond")

CONST_VALUES: dict[str, TruthValue] = {
    "t": TruthValue.T, "b": TruthValue.B, "n": TruthValue.N, "f": TruthValue.F,
}
CONST_NAMES: dict[TruthValue, str] = {v: k for k, v in CONST_VALUES.items()}

_BINARY_CLASSES: dict[str, type] = {
    "and": And, "or": Or, "arrow": Arrow, "hook": Hook,
    "darrow": DArrow, "bicond": Bicond, "dbicond": DBicond,
}
_QUANT_CLASSES: dict[str, type] = {"forall": Forall, "exists": Exists}


def children(f: Formula) -> tuple[Formula, ...]:
    k = f.kind
    if k in ("atom", "const"):
        return ()
    if k == "neg":
        return (f.child,)
    if k in ("forall", "exists"):
        return (f.body,)
    return (f.left, f.right)


def _rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    k = f.kind
    if k in ("atom", "const"):
        return f
    if k == "neg":
        return Neg(kids[0])
    if k in ("forall", "exists"):
        return _QUANT_CLASSES[k](f.var, kids[0])
    return _BINARY_CLASSES[k](kids[0], kids[1])


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_UNICODE_ALIASES = {
    "¬": "~", "∧": "&", "∨": "|", "→": "->", "⊃": ">>", "⇒": "=>",
    "↔": "<->", "⇔": "<=>", "∀": "forall", "∃": "exists",
}
_MULTI_OPS = ("<->", "<=>", "->", ">>", "=>")
_SINGLE_OPS = {"~": "~", "&": "&", "|": "|", "(": "(", ")": ")", ".": "."}


@dataclass(frozen=True)
class _Token:
    type: str  # op | ident | const | forall | exists | end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _UNICODE_ALIASES:
            alias = _UNICODE_ALIASES[ch]
            if alias in ("forall", "exists"):
                tokens.append(_Token(alias, alias, line, col))
            else:
                tokens.append(_Token("op", alias, line, col))
            i += 1
            col += 1
            continue
        matched = False
        for op in _MULTI_OPS:
            if text.startswith(op, i):
                tokens.append(_Token("op", op, line, col))
                i += len(op)
                col += len(op)
                matched = True
                break
        if matched:
            continue
        if ch in _SINGLE_OPS:
            tokens.append(_Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "#":
            if i + 1 < n and text[i + 1] in "tbnf":
                tokens.append(_Token("const", text[i + 1], line, col))
                i += 2
                col += 2
                continue
            raise FormulaSyntaxError("bad constant", line, col, ("#t", "#b", "#n", "#f"))
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in RESERVED_WORDS:
                tokens.append(_Token(word, word, line, col))
            else:
                tokens.append(_Token("ident", word, line, col))
            col += j - i
            i = j
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent, one function per precedence level)
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, expected: tuple[str, ...] = ()) -> FormulaSyntaxError:
        tok = self.peek()
        return FormulaSyntaxError(message, tok.line, tok.col, expected)

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok.type != "end":
            raise self.error(f"unexpected {tok.text!r} after formula", ("end of input",))
        return f

    def formula(self) -> Formula:
        return self.bicond()

    def bicond(self) -> Formula:
        left = self.darrow()
        op_text = None
        while self.peek().type == "op" and self.peek().text in ("<->", "<=>"):
            tok = self.take()
            if op_text is None:
                op_text = tok.text
            elif tok.text != op_text:
                raise FormulaSyntaxError(
                    f"cannot mix {op_text!r} and {tok.text!r} without parentheses",
                    tok.line, tok.col)
            right = self.darrow()
            left = (Bicond if tok.text == "<->" else DBicond)(left, right)
        return left

    def darrow(self) -> Formula:
        left = self.arrow()
        if self.peek().type == "op" and self.peek().text == "=>":
            self.take()
            return DArrow(left, self.darrow())
        return left

    def arrow(self) -> Formula:
        parts = [self.disj()]
        ops: list[_Token] = []
        while self.peek().type == "op" and self.peek().text in ("->", ">>"):
            ops.append(self.take())
            parts.append(self.disj())
        if not ops:
            return parts[0]
        first = ops[0].text
        for tok in ops[1:]:
            if tok.text != first:
                raise FormulaSyntaxError(
                    f"cannot mix {first!r} and {tok.text!r} without parentheses",
                    tok.line, tok.col)
        cls = Arrow if first == "->" else Hook
        result = parts[-1]
        for part in reversed(parts[:-1]):
            result = cls(part, result)
        return result

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek().type == "op" and self.peek().text == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.neg()
        while self.peek().type == "op" and self.peek().text == "&":
            self.take()
            left = And(left, self.neg())
        return left

    def neg(self) -> Formula:
        if self.peek().type == "op" and self.peek().text == "~":
            self.take()
            return Neg(self.neg())
        return self.atomlike()

    def atomlike(self) -> Formula:
        tok = self.peek()
        if tok.type == "ident":
            self.take()
            return Atom(tok.text)
        if tok.type == "const":
            self.take()
            return Const(tok.text)
        if tok.type == "op" and tok.text == "(":
            self.take()
            f = self.formula()
            closing = self.peek()
            if closing.type != "op" or closing.text != ")":
                raise self.error("unbalanced parenthesis", ("')'",))
            self.take()
            return f
        if tok.type in ("forall", "exists"):
            self.take()
            var = self.peek()
            if var.type != "ident":
                if var.type in ("forall", "exists"):
                    raise FormulaSyntaxError(
                        f"reserved word {var.text!r} cannot be used as a variable",
                        var.line, var.col)
                raise self.error("quantifier needs a variable", ("identifier",))
            self.take()
            dot = self.peek()
            if dot.type != "op" or dot.text != ".":
                raise self.error("quantifier needs '.' after its variable", ("'.'",))
            self.take()
            body = self.formula()  # scope extends maximally right
            return _QUANT_CLASSES[tok.type](var.text, body)
        raise self.error(
            f"expected a formula, found {tok.text!r}" if tok.type != "end"
            else "unexpected end of input",
            ("atom", "constant", "'~'", "'('", "'forall'", "'exists'"))


def parse(text: str) -> Formula:
    """Parse formula text into its unique AST under the grammar above."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Renderer (canonical ASCII text, minimal parentheses)
# ---------------------------------------------------------------------------

_PREC = {"neg": 6, "and": 5, "or": 4, "arrow": 3, "hook": 3, "darrow": 2,
         "bicond": 1, "dbicond": 1}
_RIGHT_ASSOC = frozenset({"arrow", "hook", "darrow"})
_OP_TEXT = {"and": "&", "or": "|", "arrow": "->", "hook": ">>", "darrow": "=>",
            "bicond": "<->", "dbicond": "<=>"}


def render(f: Formula) -> str:
    """Canonical text for ``f``; ``parse(render(f))`` is structurally ``f``."""
    return _render(f, 0, None, True, True)


def _render(f: Formula, parent_prec: int, parent_kind: str | None,
            assoc_side: bool, rightmost: bool) -> str:
    k = f.kind
    if k == "atom":
        return f.name
    if k == "const":
        return "#" + f.which
    if k in ("forall", "exists"):
        s = f"{k} {f.var}. {_render(f.body, 0, None, True, True)}"
        # Scope extends maximally right, so a bare quantifier is only safe in
        # the rightmost position of its context.
        return s if rightmost else f"({s})"
    if k == "neg":
        return "~" + _render(f.child, 6, "neg", True, rightmost)
    prec = _PREC[k]
    bare = prec > parent_prec or (prec == parent_prec and k == parent_kind and assoc_side)
    inner_rightmost = rightmost if bare else True
    if k in _RIGHT_ASSOC:
        left = _render(f.left, prec, k, False, False)
        right = _render(f.right, prec, k, True, inner_rightmost)
    else:
        left = _render(f.left, prec, k, True, False)
        right = _render(f.right, prec, k, False, inner_rightmost)
    s = f"{left} {_OP_TEXT[k]} {right}"
    return s if bare else f"({s})"


# ---------------------------------------------------------------------------
# Free atoms, substitution, positions
# ---------------------------------------------------------------------------

def free_atoms(f: Formula) -> frozenset[str]:
    """Atoms with at least one occurrence not bound by a quantifier."""
    out: set[str] = set()

    def walk(node: Formula, bound: frozenset[str]) -> None:
        k = node.kind
        if k == "atom":
            if node.name not in bound:
                out.add(node.name)
        elif k in ("forall", "exists"):
            walk(node.body, bound | {node.var})
        else:
            for kid in children(node):
                walk(kid, bound)

    walk(f, frozenset())
    return frozenset(out)


def _all_names(f: Formula) -> set[str]:
    """Every atom or binder name occurring anywhere in ``f``."""
    out: set[str] = set()

    def walk(node: Formula) -> None:
        if node.kind == "atom":
            out.add(node.name)
        elif node.kind in ("forall", "exists"):
            out.add(node.var)
            walk(node.body)
        else:
            for kid in children(node):
                walk(kid)

    walk(f)
    return out


def _fresh_name(base: str, used: set[str]) -> str:
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


def substitute(f: Formula, atom: str, replacement: Formula) -> Formula:
    """Replace every free occurrence of ``atom`` in ``f`` by ``replacement``.

    Bound variables are renamed (smallest unused positive suffix) whenever the
    replacement would otherwise be captured.
    """
    return substitute_all(f, {atom: replacement})


def substitute_all(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Simultaneous capture-avoiding substitution of several atoms at once.

    Unlike chained single substitutions, atoms introduced by one replacement
    are never rewritten by another.
    """

    def walk(node: Formula, live: dict[str, Formula]) -> Formula:
        k = node.kind
        if k == "atom":
            return live.get(node.name, node)
        if k in ("forall", "exists"):
            body_free = free_atoms(node.body)
            inner = {a: g for a, g in live.items()
                     if a != node.var and a in body_free}
            if not inner:
                return node
            var, body = node.var, node.body
            rep_free = frozenset().union(*(free_atoms(g) for g in inner.values()))
            if var in rep_free:
                used = _all_names(body) | set(inner)
                for g in inner.values():
                    used |= _all_names(g)
                fresh = _fresh_name(var, used)
                body = substitute_all(body, {var: Atom(fresh)})
                var = fresh
            return _QUANT_CLASSES[k](var, walk(body, inner))
        kids = tuple(walk(kid, live) for kid in children(node))
        return _rebuild(node, kids)

    return walk(f, dict(mapping))


def positions(f: Formula) -> Iterator[tuple[int, ...]]:
    """All subformula positions (paths of child indices) in preorder."""

    def walk(node: Formula, path: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield path
        for i, kid in enumerate(children(node)):
            yield from walk(kid, path + (i,))

    return walk(f, ())


def subformula_at(f: Formula, path: tuple[int, ...]) -> Formula:
    node = f
    for i in path:
        kids = children(node)
        if i >= len(kids):
            raise IndexError(f"position {path} does not address a subformula")
        node = kids[i]
    return node


def replace_at(f: Formula, path: tuple[int, ...], replacement: Formula) -> Formula:
    """Return ``f`` with the subformula at ``path`` swapped for ``replacement``.

    Purely structural (no capture avoidance); the position-walking oracle for
    substitution tests is built from this.
    """
    if not path:
        return replacement
    kids = list(children(f))
    if path[0] >= len(kids):
        raise IndexError(f"position {path} does not address a subformula")
    kids[path[0]] = replace_at(kids[path[0]], path[1:], replacement)
    return _rebuild(f, tuple(kids))


def random_formula(rng, atoms: tuple[str, ...], max_depth: int,
                   kinds: tuple[str, ...] = BINARY_KINDS,
                   allow_neg: bool = True) -> Formula:
    """Seeded random quantifier-free, constant-free formula generator."""
    if max_depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(atoms))
    if allow_neg and rng.random() < 0.3:
        return Neg(random_formula(rng, atoms, max_depth - 1, kinds, allow_neg))
    cls = _BINARY_CLASSES[rng.choice(kinds)]
    return cls(random_formula(rng, atoms, max_depth - 1, kinds, allow_neg),
               random_formula(rng, atoms, max_depth - 1, kinds, allow_neg))

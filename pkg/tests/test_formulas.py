import random

import pytest
from hypothesis import given, settings

from fdekit import (And, Arrow, Atom, Bicond, Const, DArrow, DBicond, Exists,
                    Forall, Hook, Neg, Or, FormulaError, FormulaSyntaxError,
                    free_atoms, parse, positions, render, replace_at,
                    subformula_at, substitute)

from conftest import formula_strategy, gen_formula

p, q, r, s = Atom("p"), Atom("q"), Atom("r"), Atom("s")


class TestParsing:
    def test_precedence_and_over_or(self):
        assert parse("p & q | r") == Or(And(p, q), r)

    def test_arrow_right_associative(self):
        assert parse("p -> q -> r") == Arrow(p, Arrow(q, r))

    def test_quantified_constant_fragment(self):
        got = parse("exists q. ((q <=> #t) -> #f) & q")
        want = Exists("q", And(Arrow(DBicond(q, Const("t")), Const("f")), q))
        assert got == want

    def test_and_or_left_associative(self):
        assert parse("p & q & r") == And(And(p, q), r)
        assert parse("p | q | r") == Or(Or(p, q), r)

    def test_hook_right_associative(self):
        assert parse("p >> q >> r") == Hook(p, Hook(q, r))

    def test_darrow_right_associative(self):
        assert parse("p => q => r") == DArrow(p, DArrow(q, r))

    def test_biconditionals_left_associative(self):
        assert parse("p <-> q <-> r") == Bicond(Bicond(p, q), r)
        assert parse("p <=> q <=> r") == DBicond(DBicond(p, q), r)

    def test_precedence_ladder(self):
        got = parse("p -> q => r <-> s")
        assert got == Bicond(DArrow(Arrow(p, q), r), s)

    def test_negation_binds_tightest(self):
        assert parse("~p & q") == And(Neg(p), q)
        assert parse("~~p") == Neg(Neg(p))

    def test_quantifier_scope_extends_right(self):
        assert parse("forall p. p -> q") == Forall("p", Arrow(p, q))
        assert parse("p & forall q. q | r") == And(p, Forall("q", Or(q, r)))
        assert parse("~forall p. p") == Neg(Forall("p", p))
        assert parse("(forall p. p) -> q") == Arrow(Forall("p", p), q)

    def test_mixing_arrow_and_hook_needs_parens(self):
        with pytest.raises(FormulaSyntaxError, match="mix"):
            parse("p -> q >> r")
        assert parse("p -> (q >> r)") == Arrow(p, Hook(q, r))

    def test_mixing_biconditionals_needs_parens(self):
        with pytest.raises(FormulaSyntaxError, match="mix"):
            parse("p <-> q <=> r")

    def test_unicode_input_accepted(self):
        assert parse("¬(p ∧ q) → r") == Arrow(Neg(And(p, q)), r)
        assert parse("∀p. p ⊃ q") == Forall("p", Hook(p, q))
        assert parse("p ⇔ q ∨ r") == DBicond(p, Or(q, r))

    def test_constants(self):
        assert parse("#t & #b & #n & #f") == And(And(And(Const("t"), Const("b")),
                                                     Const("n")), Const("f"))

    def test_syntax_error_carries_position(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("p &\n& q")
        assert exc.value.line == 2
        assert exc.value.column == 1
        assert exc.value.expected

    def test_reserved_word_as_variable(self):
        with pytest.raises(FormulaSyntaxError, match="reserved"):
            parse("forall forall. p")

    def test_reserved_word_as_atom(self):
        with pytest.raises(FormulaError):
            Atom("exists")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(FormulaSyntaxError, match="parenthesis"):
            parse("(p & q")

    def test_bad_constant(self):
        with pytest.raises(FormulaSyntaxError):
            parse("#x")

    def test_trailing_garbage(self):
        with pytest.raises(FormulaSyntaxError):
            parse("p q")


class TestRendering:
    def test_right_chain_is_bare(self):
        assert render(Arrow(p, Arrow(q, r))) == "p -> q -> r"

    def test_left_nested_arrow_parenthesized(self):
        assert render(Arrow(Arrow(p, q), r)) == "(p -> q) -> r"

    def test_negated_conjunction(self):
        assert render(Neg(And(p, q))) == "~(p & q)"

    def test_quantifier_bare_when_rightmost(self):
        assert render(Forall("p", Arrow(p, p))) == "forall p. p -> p"
        assert render(And(q, Forall("p", p))) == "q & forall p. p"

    def test_quantifier_parenthesized_when_not_rightmost(self):
        assert render(Or(And(q, Forall("p", p)), r)) == "q & (forall p. p) | r"
        assert render(Arrow(Forall("p", p), q)) == "(forall p. p) -> q"

    def test_same_level_different_op_parenthesized(self):
        assert render(Arrow(p, Hook(q, r))) == "p -> (q >> r)"
        assert render(Bicond(p, DBicond(q, r))) == "p <-> (q <=> r)"

    def test_output_is_ascii(self):
        text = render(parse("¬p ⇒ (q ⇔ ∃v. v)"))
        assert text == "~p => (q <=> exists v. v)"
        text.encode("ascii")

    @given(formula_strategy())
    @settings(max_examples=300)
    def test_round_trip_hypothesis(self, f):
        assert parse(render(f)) == f

    def test_round_trip_seeded_depth_8(self):
        rng = random.Random(20250809)
        for _ in range(500):
            f = gen_formula(rng, depth=8)
            assert parse(render(f)) == f

    def test_render_after_parse_is_identity_up_to_whitespace(self):
        for text in ("p&q|r", "p ->q ->  r", "~ ( p & q )",
                     "forall v.  v ->  v", "(p=>q)<=>r"):
            canonical = render(parse(text))
            assert canonical.replace(" ", "") == \
                render(parse(canonical)).replace(" ", "")
            assert parse(canonical) == parse(text)


class TestFreeAtoms:
    def test_simple(self):
        assert free_atoms(parse("p & ~p")) == {"p"}

    def test_bound_excluded(self):
        assert free_atoms(parse("forall p. p -> q")) == {"q"}

    def test_sentence(self):
        assert free_atoms(parse("exists p. p")) == frozenset()


class TestSubstitution:
    def test_plain(self):
        assert substitute(parse("p & r"), "p", parse("q | s")) == parse("(q | s) & r")

    def test_capture_forces_rename(self):
        got = substitute(parse("forall p. p -> q"), "q", p)
        assert got == parse("forall p1. p1 -> p")

    def test_no_rename_when_atom_not_free(self):
        f = parse("forall p. p -> q")
        assert substitute(f, "r", p) == f

    def test_identity(self):
        rng = random.Random(7)
        for _ in range(200):
            f = gen_formula(rng, depth=5)
            for a in free_atoms(f):
                assert substitute(f, a, Atom(a)) == f

    @given(formula_strategy(max_leaves=8), formula_strategy(max_leaves=5))
    @settings(max_examples=200)
    def test_free_atom_bound_property(self, f, g):
        for a in sorted(free_atoms(f)):
            result = substitute(f, a, g)
            assert free_atoms(result) <= (free_atoms(f) - {a}) | free_atoms(g)

    def test_position_walking_oracle(self):
        # Replace occurrences one position at a time and compare; valid for
        # quantifier-free targets where no capture can happen.
        rng = random.Random(99)
        for _ in range(150):
            f = gen_formula(rng, depth=5, quantifiers=False)
            replacement = parse("p & ~p")
            expected = f
            for path in positions(f):
                if subformula_at(f, path) == Atom("x"):
                    expected = replace_at(expected, path, replacement)
            assert substitute(f, "x", replacement) == expected
        g = substitute(parse("~x"), "x", parse("p & ~p"))
        assert g == parse("~(p & ~p)")


class TestPositions:
    def test_every_position_addresses_a_subformula(self):
        f = parse("~(p & q) -> forall v. v | p")
        for path in positions(f):
            subformula_at(f, path)

    def test_replace_root(self):
        assert replace_at(p, (), q) == q

    def test_bad_position(self):
        with pytest.raises(IndexError):
            subformula_at(p, (0,))

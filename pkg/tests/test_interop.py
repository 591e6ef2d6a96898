import itertools
import random
import re

import pytest

from fdekit import (Arrow, Atom, Definition, VALUES, apply_connective,
                    block_closure_values, check_synonymy, constant_check,
                    equivalent, evaluate, expand, get_logic, is_designated,
                    parse, translate, BUILTIN_SCHEMES, SYNONYMY_PAIRS)
from fdekit.formulas import children

from conftest import gen_formula

T, B, N, F = VALUES

CMI = get_logic("FDE+cmi")
K3C = get_logic("K3+cmi")
LPC = get_logic("LP+cmi")
L3 = get_logic("L3")
RM3 = get_logic("RM3")


def kinds_in(f):
    out = {f.kind}
    for kid in children(f):
        out |= kinds_in(kid)
    return out


def valid_in(logic, f):
    from fdekit import valid
    return valid(logic, f)


def translate_with(f, scheme):
    return translate(f, scheme)


class TestExpand:
    def test_darrow_definition(self):
        assert expand(parse("p => q")) == parse("(p -> q) & (~q -> ~p)")

    def test_falsum_definition(self):
        assert expand(parse("#f")) == parse("forall p. p")

    def test_primitive_untouched(self):
        f = parse("p & q")
        assert expand(f) == f

    def test_idempotent_on_primitives(self):
        f = expand(parse("(p <=> q) >> #n"))
        assert expand(f) == f
        assert kinds_in(f) <= {"atom", "neg", "and", "or", "arrow",
                               "forall", "exists"}

    def test_expansion_preserves_value(self):
        rng = random.Random(11)
        for _ in range(100):
            f = gen_formula(rng, 4, quantifiers=False)
            g = expand(f)
            valuation = {a: rng.choice(VALUES) for a in ("p", "q", "r")}
            assert evaluate(CMI, f, valuation) is evaluate(CMI, g, valuation)

    def test_custom_definition_subset(self):
        from fdekit.interop import BUILTIN_DEFINITIONS
        subset = {"hook": BUILTIN_DEFINITIONS["hook"]}
        g = expand(parse("(p >> q) & (p => q)"), subset)
        assert g == parse("(~p | q) & (p => q)")

    def test_circular_definitions_rejected(self):
        from fdekit import DArrow, Hook
        x, y = Atom("_1"), Atom("_2")
        a = Definition("hook", 2, DArrow(x, y))
        b = Definition("darrow", 2, Hook(x, y))
        with pytest.raises(ValueError, match="circular"):
            expand(parse("p >> q"), {"hook": a, "darrow": b})

    def test_placeholder_arity_validated(self):
        from fdekit import And
        with pytest.raises(ValueError, match="placeholder"):
            Definition("once", 1, And(Atom("_1"), Atom("_2")))


class TestConstants:
    def test_four_valued_map(self):
        assert constant_check(CMI) == {"t": T, "f": F, "b": B, "n": N}

    def test_k3_keeps_t_and_f(self):
        assert constant_check(K3C) == {"t": T, "f": F}

    def test_lp_gains_b(self):
        assert constant_check(LPC) == {"t": T, "f": F, "b": B}

    def test_cl(self):
        assert constant_check(get_logic("CL")) == {"t": T, "f": F}

    def test_three_valued_glut_gap_definientia(self):
        f = parse("exists p. p & ~p")
        assert evaluate(CMI, f, {}) is T
        assert evaluate(LPC, f, {}) is B
        assert evaluate(K3C, f, {}) is N


class TestBlockClosure:
    def test_contradiction(self):
        assert block_closure_values(parse("p & ~p")) == (T, F)

    def test_identity_conditional(self):
        # brute force: values over the 4 assignments are {T, B}; join T, meet B
        assert block_closure_values(parse("p -> p")) == (T, B)

    def test_bare_atom(self):
        assert block_closure_values(parse("p")) == (T, F)

    def test_rejects_quantifiers_and_constants(self):
        with pytest.raises(ValueError):
            block_closure_values(parse("forall p. p"))
        with pytest.raises(ValueError):
            block_closure_values(parse("p & #t"))

    def test_closure_law_seeded(self):
        rng = random.Random(2024)
        for _ in range(200):
            f = gen_formula(rng, 5, quantifiers=False, constants=False)
            from fdekit import free_atoms
            all_b = {a: B for a in free_atoms(f)}
            assert evaluate(CMI, f, all_b) is B
            hi, lo = block_closure_values(f)
            assert hi in (B, T)
            assert lo in (B, F)


class TestDBicondLaws:
    def test_designated_iff_equal(self):
        for a, b in itertools.product(VALUES, repeat=2):
            value = apply_connective(CMI, "dbicond", (a, b))
            assert value.designated == (a is b)

    def test_value_shape(self):
        for a in VALUES:
            value = apply_connective(CMI, "dbicond", (a, a))
            assert value is (B if a is B else T)

    def test_bicond_does_not_license_substitution(self):
        witnesses = [
            (a, b)
            for a, b in itertools.product(VALUES, repeat=2)
            if apply_connective(CMI, "bicond", (a, b)).designated
            and not apply_connective(
                CMI, "bicond",
                (apply_connective(CMI, "neg", (a,)),
                 apply_connective(CMI, "neg", (b,)))).designated
        ]
        assert witnesses  # e.g. (T, B)
        assert (T, B) in witnesses


class TestSubstitutionPrinciple:
    def test_negation_context(self):
        from fdekit import valid
        assert valid(CMI, parse("(p <=> q) -> (~p <=> ~q)"))

    def test_random_contexts(self):
        # (p <=> q) -> (C[p] <=> C[q]) is valid for any context C
        from fdekit import Arrow, Atom, DBicond, substitute, valid
        rng = random.Random(808)
        for _ in range(60):
            context = gen_formula(rng, 3, atoms=("p", "r"), quantifiers=False,
                                  constants=False)
            swapped = substitute(context, "p", Atom("q"))
            claim = Arrow(DBicond(Atom("p"), Atom("q")),
                          DBicond(context, swapped))
            assert valid(CMI, claim)


class TestDerivedTables:
    def test_k3_darrow_equals_l3_arrow(self):
        for a, b in itertools.product(K3C.values, repeat=2):
            assert apply_connective(K3C, "darrow", (a, b)) is \
                apply_connective(L3, "arrow", (a, b))

    def test_lp_darrow_equals_rm3_arrow(self):
        for a, b in itertools.product(LPC.values, repeat=2):
            assert apply_connective(LPC, "darrow", (a, b)) is \
                apply_connective(RM3, "arrow", (a, b))

    def test_classical_negation_law(self):
        for a in VALUES:
            value = evaluate(CMI, parse("p -> #f"), {"p": a})
            assert value is (F if a.designated else T)


class TestTranslate:
    def test_k3_to_l3(self):
        scheme = BUILTIN_SCHEMES["K3+cmi-to-L3"]
        assert translate(parse("p -> q"), scheme) == parse("p -> (p -> q)")

    def test_lp_to_rm3(self):
        scheme = BUILTIN_SCHEMES["LP+cmi-to-RM3"]
        assert translate(parse("p -> q"), scheme) == parse("(p -> q) | q")

    def test_homomorphic_on_lattice_connectives(self):
        for scheme in BUILTIN_SCHEMES.values():
            f = parse("p & ~q")
            assert translate(f, scheme) == f

    def test_recursion_into_subterms(self):
        scheme = BUILTIN_SCHEMES["L3-to-K3+cmi"]
        got = translate(parse("~(p -> q) | r"), scheme)
        assert got == parse("~((p -> q) & (~q -> ~p)) | r")

    def test_source_language_enforced(self):
        scheme = BUILTIN_SCHEMES["K3+cmi-to-L3"]
        for text in ("p >> q", "p <=> q", "forall p. p", "#t"):
            with pytest.raises(ValueError, match="source language"):
                translate(parse(text), scheme)


class TestSynonymy:
    def test_k3_l3_pair_passes(self):
        report = check_synonymy("K3+cmi/L3", bound=5)
        assert report.passed
        assert all(c.passed for c in report.conditions.values())
        assert report.conditions[3].schema_passed is True
        assert report.conditions[4].schema_passed is True

    def test_lp_rm3_pair_passes(self):
        report = check_synonymy("LP+cmi/RM3", bound=5)
        assert report.passed

    def test_l3_side_schema_identity(self):
        # the round trip of the L3 conditional, written out
        roundtrip = parse("(p -> (p -> q)) & (~q -> (~q -> ~p))")
        assert equivalent(L3, roundtrip, parse("p -> q"))

    def test_k3_side_schema_identity(self):
        t1 = BUILTIN_SCHEMES["K3+cmi-to-L3"]
        t2 = BUILTIN_SCHEMES["L3-to-K3+cmi"]
        roundtrip = translate(translate(parse("p -> q"), t1), t2)
        assert equivalent(K3C, roundtrip, parse("p -> q"))

    def test_round_trips_in_primitive_notation(self):
        # the exact unfolded shapes of both round trips
        t1 = BUILTIN_SCHEMES["K3+cmi-to-L3"]
        t2 = BUILTIN_SCHEMES["L3-to-K3+cmi"]
        k3_side = translate(translate(parse("p -> q"), t1), t2)
        assert k3_side == parse(
            "(p -> (p -> q) & (~q -> ~p)) & (~((p -> q) & (~q -> ~p)) -> ~p)")
        l3_side = translate(translate(parse("p -> q"), t2), t1)
        assert l3_side == parse("(p -> (p -> q)) & (~q -> (~q -> ~p))")

    def test_report_serialization(self):
        text = check_synonymy("K3+cmi/L3", bound=3).to_text()
        lines = text.splitlines()
        assert len(lines) == 4
        for i, line in enumerate(lines, start=1):
            assert re.fullmatch(
                rf"condition-{i}: (PASS|FAIL) bound=3( witness=.*)?", line)

    def test_unknown_pair(self):
        with pytest.raises(ValueError, match="unknown pair"):
            check_synonymy("FDE/CL")

    def test_bad_bound(self):
        with pytest.raises(ValueError, match="bound"):
            check_synonymy(SYNONYMY_PAIRS[0], bound=0)

    def test_failed_condition_carries_witness(self):
        # a deliberately broken translation: the conditional becomes a
        # conjunction, which cannot preserve theoremhood
        from fdekit.interop import TranslationScheme, _theoremhood_condition
        from fdekit import And
        broken = TranslationScheme("broken", "K3+cmi", "L3",
                                   lambda a, b: And(a, b))
        result = _theoremhood_condition(K3C, L3, broken, bound=4)
        assert result.passed is False
        assert result.witness is not None
        assert valid_in(K3C, result.witness) and not valid_in(L3, translate_with(
            result.witness, broken))

    def test_translations_preserve_signatures_seeded(self):
        # t1 preserves the whole table, not just validity; spot-check it.
        rng = random.Random(9)
        t1 = BUILTIN_SCHEMES["K3+cmi-to-L3"]
        from fdekit import And, Or
        for _ in range(60):
            f = gen_formula(rng, 4, atoms=("p", "q"), quantifiers=False,
                            constants=False, binaries=(And, Or, Arrow))
            g = translate(f, t1)
            for a, b in itertools.product(K3C.values, repeat=2):
                valuation = {"p": a, "q": b}
                assert evaluate(K3C, f, valuation) is evaluate(L3, g, valuation)

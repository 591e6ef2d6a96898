import random

import numpy as np
import pytest

from fdekit import (Sequent, UnsupportedConnectiveError, VALUES, countermodel,
                    countermodels, entails, equivalent, evaluate, get_logic,
                    is_designated, parse, truth_table, valid)
from fdekit.pool import pool_by_depth

from conftest import gen_formula

T, B, N, F = VALUES

FDE = get_logic("FDE")
K3 = get_logic("K3")
LP = get_logic("LP")
M = get_logic("M")
CL = get_logic("CL")
CMI = get_logic("FDE+cmi")
K3C = get_logic("K3+cmi")
LPC = get_logic("LP+cmi")


def seq(premises, conclusion):
    return Sequent.of([parse(t) for t in premises], parse(conclusion))


class TestValid:
    def test_hook_mp_statement(self):
        f = parse("((p >> q) & p) >> q")
        assert valid(K3, f) is False
        assert valid(LP, f) is True

    def test_substitution_principle(self):
        assert valid(CMI, parse("(p <=> q) -> ((~p) <=> (~q))")) is True

    def test_contraction_fails_for_darrow(self):
        assert valid(K3C, parse("(p => (p => q)) => (p => q)")) is False

    def test_thinning_fails_for_darrow(self):
        assert valid(LPC, parse("p => (q => p)")) is False

    def test_connective_error_propagates(self):
        with pytest.raises(UnsupportedConnectiveError):
            valid(FDE, parse("p -> p"))


class TestEntails:
    def test_mp_rule(self):
        mp = seq(["p >> q", "p"], "q")
        assert entails(K3, mp) is True
        assert entails(LP, mp) is False

    def test_explosion_to_excluded_middle(self):
        s = seq(["p & ~p"], "q | ~q")
        assert entails(FDE, s) is False
        for logic in (K3, LP, M):
            assert entails(logic, s) is True

    def test_empty_premises_reduce_to_validity(self):
        s = seq([], "p | ~p")
        assert entails(CL, s) is True
        assert entails(K3, s) is False


class TestCountermodel:
    def test_mp_witness_in_lp(self):
        got = countermodel(LP, seq(["p >> q", "p"], "q"))
        assert got == {"p": B, "q": F}

    def test_fde_separator_witness(self):
        got = countermodel(FDE, seq(["p & ~p"], "q | ~q"))
        assert got == {"p": B, "q": N}

    def test_none_when_entailed(self):
        assert countermodel(CL, seq(["p"], "p")) is None

    def test_first_witness_is_deterministic(self):
        s = seq(["p >> q", "p"], "q")
        all_witnesses = countermodels(LP, s)
        assert countermodel(LP, s) == all_witnesses[0]
        assert countermodels(LP, s) == all_witnesses

    def test_witness_soundness_and_completeness_seeded(self):
        # Dual route: whatever countermodel() returns must actually refute the
        # sequent under evaluate(), and a None must coincide with entails().
        rng = random.Random(4242)
        logics = (FDE, K3, LP, M, CMI, K3C, LPC, CL)
        for _ in range(120):
            logic = rng.choice(logics)
            if logic.has_arrow:
                mk = lambda: gen_formula(rng, 3, constants=False, quantifiers=False)
            else:
                from fdekit import And, Hook, Or
                mk = lambda: gen_formula(rng, 3, constants=False,
                                         quantifiers=False,
                                         binaries=(And, Or, Hook))
            s = Sequent.of([mk()], mk())
            witness = countermodel(logic, s)
            if witness is None:
                assert entails(logic, s) is True
            else:
                assert entails(logic, s) is False
                assert is_designated(logic, evaluate(logic, s.premises[0], witness))
                assert not is_designated(logic, evaluate(logic, s.conclusion, witness))


class TestTruthTable:
    def test_cmi_arrow_full_table(self):
        table = truth_table(CMI, parse("p -> q"))
        assert len(table.rows) == 16
        want = {(a, b): (b if a.designated else T) for a in VALUES for b in VALUES}
        for valuation, value in table.rows:
            assert value is want[(valuation["p"], valuation["q"])]

    def test_k3_darrow_is_lukasiewicz(self):
        table = truth_table(K3C, parse("p => q"))
        l3 = truth_table(get_logic("L3"), parse("p -> q"))
        assert len(table.rows) == 9
        assert table.values == l3.values

    def test_zero_atom_table(self):
        table = truth_table(FDE, parse("#b"))
        assert len(table.rows) == 1
        assert table.values == (B,)

    def test_text_format(self):
        text = truth_table(CL, parse("p -> q")).to_text()
        lines = text.splitlines()
        assert lines[0] == "CL | p q | p -> q"
        assert lines[1] == "T T : T"
        assert lines[-1] == "F F : T"


class TestEquivalent:
    def test_recovery_identity_four_valued(self):
        assert equivalent(CMI, parse("p -> q"), parse("(p => (p => q)) | q"))

    def test_distinct_tables(self):
        assert equivalent(get_logic("L3"), parse("p -> q"), parse("p => p")) is False

    def test_recovery_identity_lp(self):
        assert equivalent(LPC, parse("p -> q"), parse("(p => q) | q"))

    def test_cross_logic_row_identity(self):
        # The cmi table over {T,B,F} equals RM3's table for (p -> q) | q.
        lp_table = truth_table(LPC, parse("p -> q"))
        rm3_table = truth_table(get_logic("RM3"), parse("(p -> q) | q"))
        assert lp_table.values == rm3_table.values

    def test_value_identity_not_co_designation(self):
        # p | ~p takes value B at p=B while #t stays T: co-designated on
        # every LP+cmi valuation yet not equivalent.
        f, g = parse("p | ~p"), parse("#t")
        assert all(is_designated(LPC, v) for v in truth_table(LPC, f).values)
        assert all(is_designated(LPC, v) for v in truth_table(LPC, g).values)
        assert equivalent(LPC, f, g) is False


class TestDeductionTheoremAsymmetry:
    def test_k3_rule_without_statement(self):
        assert entails(K3, seq(["p"], "p")) is True
        assert valid(K3, parse("p >> p")) is False

    def test_lp_statement_without_rule(self):
        assert valid(LP, parse("((p >> q) & p) >> q")) is True
        assert entails(LP, seq(["p >> q", "p"], "q")) is False


class TestTheoremhood:
    """K3 proves nothing, LP proves exactly the classical theorems."""

    def _random_hook_formula(self, rng, atoms):
        from fdekit import And, Hook, Or
        return gen_formula(rng, 6, atoms=atoms, constants=False,
                           quantifiers=False, binaries=(And, Or, Hook))

    def test_k3_has_no_valid_formulas_generated(self):
        rng = random.Random(31337)
        for _ in range(400):
            f = self._random_hook_formula(rng, ("p", "q", "r"))
            assert valid(K3, f) is False

    def test_k3_has_no_valid_formulas_exhaustive_two_atoms(self):
        # Depth-closure saturates on the two-generator algebra, so this covers
        # every ~/&/|/>> formula over p, q of any depth.
        pool = pool_by_depth(K3, ("p", "q"), ("neg", "and", "or", "hook"), 8)
        designated = np.isin(pool.sigs, [0]).all(axis=1)  # K3 designates T only
        assert not designated.any()

    def test_lp_theorems_are_classical_theorems_generated(self):
        rng = random.Random(777)
        for _ in range(300):
            f = self._random_hook_formula(rng, ("p", "q"))
            assert valid(LP, f) == valid(CL, f)

    def test_lp_theorems_are_classical_theorems_exhaustive_two_atoms(self):
        pool = pool_by_depth(LP, ("p", "q"), ("neg", "and", "or", "hook"), 8)
        classical_rows = (np.isin(pool.grid, [0, 3])).all(axis=1)
        lp_valid = np.isin(pool.sigs, [0, 1]).all(axis=1)
        cl_valid = np.isin(pool.sigs[:, classical_rows], [0, 1]).all(axis=1)
        assert (lp_valid == cl_valid).all()

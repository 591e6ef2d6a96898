import random

import numpy as np
import pytest

from fdekit import (UnboundAtomError, UnsupportedConnectiveError,
                    enumerate_valuations, evaluate, free_atoms, get_logic,
                    parse)
from fdekit import _pykernel
from fdekit.kernel import BACKEND, compile_formulas, logic_payload, sweep

from conftest import gen_formula

try:
    from fdekit import _speedups
except ImportError:
    _speedups = None

LOGICS = [get_logic(n) for n in
          ("FDE", "K3", "LP", "M", "FDE+cmi", "K3+cmi", "LP+cmi", "M+cmi",
           "L3", "RM3", "CL")]


def random_case(rng, logic):
    if logic.has_arrow:
        f = gen_formula(rng, 4, quantifiers=True)
    else:
        from fdekit import And, Hook, Or
        f = gen_formula(rng, 4, quantifiers=True, binaries=(And, Or, Hook),
                        constants=False)
    atoms = tuple(sorted(free_atoms(f) | {"p"}))
    return f, atoms


def compilable(logic, f, atoms):
    try:
        return compile_formulas([f], logic, atoms)
    except UnsupportedConnectiveError:
        return None


class TestBackendsAgree:
    @pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")
    def test_identical_outputs(self):
        rng = random.Random(6060)
        checked = 0
        for _ in range(200):
            logic = rng.choice(LOGICS)
            f, atoms = random_case(rng, logic)
            program = compilable(logic, f, atoms)
            if program is None:
                continue
            args = (program.kinds, program.a, program.b, program.roots,
                    program.natoms, program.nslots, *logic_payload(logic))
            vals_py, out_py = _pykernel.sweep(*args)
            vals_c, out_c = _speedups.sweep(*args)
            assert np.array_equal(vals_py, vals_c)
            assert np.array_equal(out_py, out_c)
            checked += 1
        assert checked > 100


class TestSweepMatchesReferenceEvaluator:
    def test_dual_route(self):
        rng = random.Random(7070)
        for _ in range(150):
            logic = rng.choice(LOGICS)
            f, atoms = random_case(rng, logic)
            program = compilable(logic, f, atoms)
            if program is None:
                continue
            vals, out = sweep(program)
            listed = list(enumerate_valuations(logic, atoms))
            assert vals.shape[0] == len(listed)
            for i, valuation in enumerate(listed):
                assert [int(c) for c in vals[i]] == [valuation[a].code for a in atoms]
                assert int(out[i, 0]) == evaluate(logic, f, valuation).code


class TestCompileErrors:
    def test_arrow_rejected_in_bare_fde(self):
        with pytest.raises(UnsupportedConnectiveError):
            compile_formulas([parse("p -> q")], get_logic("FDE"), ("p", "q"))

    def test_constant_outside_value_set(self):
        with pytest.raises(UnsupportedConnectiveError):
            compile_formulas([parse("#b")], get_logic("K3"), ())

    def test_unbound_atom(self):
        with pytest.raises(UnboundAtomError):
            compile_formulas([parse("p & q")], get_logic("FDE"), ("p",))

    def test_row_cap(self):
        logic = get_logic("FDE")
        atoms = tuple(f"a{i}" for i in range(20))
        f = parse(" & ".join(atoms))
        with pytest.raises(ValueError, match="valuations"):
            sweep(compile_formulas([f], logic, atoms))


class TestBackendSelection:
    def test_backend_is_reported(self):
        assert BACKEND in ("compiled", "python")

    def test_pure_python_forced_by_env(self):
        import subprocess
        import sys
        code = ("import fdekit.kernel as k; print(k.BACKEND)")
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={"FDEKIT_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
            capture_output=True, text=True)
        assert out.stdout.strip() == "python"

"""Compare the compiled sweep kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernel.py [natoms]

Times the full-valuation sweep of a moderately deep formula in FDE+cmi over
``natoms`` atoms (default 6, i.e. 4096 valuations) on both backends and, if
the compiled extension is present, reports the speedup and cross-checks the
outputs bit for bit.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from fdekit import _pykernel, parse
from fdekit.kernel import compile_formulas, logic_payload
from fdekit.logics import get_logic

try:
    from fdekit import _speedups
except ImportError:
    _speedups = None


def build_case(natoms: int):
    atoms = tuple(f"x{i}" for i in range(natoms))
    clause = " & ".join(f"(({a} => x0) | ~{a})" for a in atoms)
    body = f"({clause}) -> exists v. (v <=> x0) & ({' | '.join(atoms)})"
    logic = get_logic("FDE+cmi")
    program = compile_formulas([parse(body)], logic, atoms)
    return program, logic_payload(logic)


def run(impl, program, payload, repeats: int) -> tuple[float, np.ndarray]:
    args = (program.kinds, program.a, program.b, program.roots,
            program.natoms, program.nslots, *payload)
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        _, out = impl.sweep(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    natoms = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    program, payload = build_case(natoms)
    rows = len(payload[0]) ** natoms
    print(f"sweep of 1 formula, {natoms} atoms, {rows} valuations (FDE+cmi)")

    t_py, out_py = run(_pykernel, program, payload, repeats=3)
    print(f"  python   : {t_py * 1000:9.2f} ms")
    if _speedups is None:
        print("  compiled : not built (pip install -e . rebuilds it)")
        return 0
    t_c, out_c = run(_speedups, program, payload, repeats=3)
    same = np.array_equal(out_py, out_c)
    print(f"  compiled : {t_c * 1000:9.2f} ms   ({t_py / t_c:5.1f}x faster, "
          f"outputs {'identical' if same else 'DIFFER'})")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())

"""Pure-Python valuation sweep, the fallback for the compiled kernel.

Same contract as ``fdekit._speedups.sweep``: evaluate every root of a compiled
formula pool on every admitted valuation, in enumeration order.
"""

from __future__ import annotations

import numpy as np


def sweep(kinds, a, b, roots, natoms, nslots, codes, neg, tables, mix):
    """Evaluate ``roots`` over all admitted valuations.

    Returns ``(vals, out)`` where ``vals[r]`` is the r-th admitted valuation
    (value codes per atom slot, atoms enumerated most-significant first) and
    ``out[r][j]`` the code of root ``j`` on that valuation.
    """
    kinds_l = list(map(int, kinds))
    a_l = list(map(int, a))
    b_l = list(map(int, b))
    codes_l = list(map(int, codes))
    neg_l = list(map(int, neg))
    tables_l = [[list(map(int, row)) for row in t] for t in tables]
    meet_t, join_t = tables_l[0], tables_l[1]
    ncodes = len(codes_l)
    env = [0] * max(nslots, 1)

    def ev(i: int) -> int:
        k = kinds_l[i]
        if k == 0:
            return env[a_l[i]]
        if k == 1:
            return a_l[i]
        if k == 2:
            return neg_l[ev(a_l[i])]
        if k <= 9:
            return tables_l[k - 3][ev(a_l[i])][ev(b_l[i])]
        body, slot = a_l[i], b_l[i]
        red = meet_t if k == 10 else join_t
        acc = -1
        for c in codes_l:
            env[slot] = c
            v = ev(body)
            acc = v if acc < 0 else red[acc][v]
        return acc

    nrows = ncodes ** natoms
    vals_rows: list[list[int]] = []
    out_rows: list[list[int]] = []
    digits = [0] * natoms
    for _ in range(nrows):
        row = [codes_l[d] for d in digits]
        keep = True
        if mix and 1 in row and 2 in row:
            keep = False
        if keep:
            for i in range(natoms):
                env[i] = row[i]
            out_rows.append([ev(r) for r in roots])
            vals_rows.append(row)
        # odometer, first atom most significant
        for pos in range(natoms - 1, -1, -1):
            digits[pos] += 1
            if digits[pos] < ncodes:
                break
            digits[pos] = 0
    vals = np.array(vals_rows, dtype=np.uint8).reshape(len(vals_rows), natoms)
    out = np.array(out_rows, dtype=np.uint8).reshape(len(out_rows), len(roots))
    return vals, out

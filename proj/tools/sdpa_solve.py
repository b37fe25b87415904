#!/usr/bin/env python3
# Copyright 2026 The cubeflag Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""SDPA sparse (.dat-s) solver with a CSDP-compatible command line.

Usage: sdpa_solve.py PROBLEM.dat-s SOLUTION.sol

Solves  max tr(C X)  s.t.  tr(A_i X) = a_i,  X block-diagonal PSD,
and writes the solution in CSDP's layout: the dual vector y on the first
line, then "1 b i j v" entries of Z = sum y_i A_i - C and "2 b i j v"
entries of X. Exit status follows CSDP: 0 success, 1 primal infeasible,
2 dual infeasible, 3 partial success, 7 lack of progress.
"""

import re
import sys

import cvxpy as cp
import numpy as np
import scipy.sparse as sp


def read_sdpa(path):
    with open(path) as f:
        lines = [ln for ln in f if ln.strip() and ln.lstrip()[0] not in '"*']
    tokens = lambda s: [t for t in re.split(r"[\s,{}()]+", s) if t]
    m = int(tokens(lines[0])[0])
    nblocks = int(tokens(lines[1])[0])
    sizes = [int(t) for t in tokens(lines[2])[:nblocks]]
    rhs = np.array([float(t) for t in tokens(lines[3])[:m]])
    entries = []
    for ln in lines[4:]:
        t = tokens(ln)
        if len(t) != 5:
            raise ValueError("bad entry line: " + ln.strip())
        entries.append((int(t[0]), int(t[1]), int(t[2]), int(t[3]), float(t[4])))
    return m, sizes, rhs, entries


def main(argv):
    if len(argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 4
    m, sizes, rhs, entries = read_sdpa(argv[1])
    print(f"sdpa_solve: {m} constraints, blocks {sizes}")

    # Per block: a sparse map from the flattened block to the constraints,
    # and the objective coefficients.
    dims = [abs(s) for s in sizes]
    width = [d * d if s > 0 else d for d, s in zip(dims, sizes)]
    rows = [[] for _ in sizes]
    cols = [[] for _ in sizes]
    vals = [[] for _ in sizes]
    obj = [np.zeros(w) for w in width]
    mats = {}  # (matno, block) -> list of (i, j, v), for Z reconstruction
    for matno, blk, i, j, v in entries:
        b = blk - 1
        i -= 1
        j -= 1
        mats.setdefault((matno, b), []).append((i, j, v))
        if sizes[b] > 0:
            pos = [(i * dims[b] + j, v)] if i == j else [(i * dims[b] + j, v), (j * dims[b] + i, v)]
        else:
            if i != j:
                raise ValueError("off-diagonal entry in a diagonal block")
            pos = [(i, v)]
        for k, val in pos:
            if matno == 0:
                obj[b][k] += val
            else:
                rows[b].append(matno - 1)
                cols[b].append(k)
                vals[b].append(val)

    xs = []
    cons = []
    lhs = 0
    objective = 0
    for b, s in enumerate(sizes):
        if s > 0:
            X = cp.Variable((s, s), PSD=True)
            flat = cp.reshape(X, (s * s,), order="C")
        else:
            X = cp.Variable(-s, nonneg=True)
            flat = X
        xs.append(X)
        A = sp.csr_matrix((vals[b], (rows[b], cols[b])), shape=(m, width[b]))
        lhs = lhs + A @ flat
        objective = objective + obj[b] @ flat
    eq = lhs == rhs
    cons.append(eq)
    prob = cp.Problem(cp.Maximize(objective), cons)
    status = None
    for solver, opts in (
        ("CLARABEL", dict(tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10, max_iter=500)),
        ("SCS", dict(eps=1e-9, max_iters=200000)),
    ):
        try:
            prob.solve(solver=solver, **opts)
            status = prob.status
            print(f"sdpa_solve: {solver} status {status}, objective {prob.value}")
            break
        except cp.error.SolverError as exc:
            print(f"sdpa_solve: {solver} failed: {exc}")
    if status is None:
        return 7
    if status in ("infeasible", "infeasible_inaccurate"):
        return 1
    if status in ("unbounded", "unbounded_inaccurate"):
        return 2
    if status not in ("optimal", "optimal_inaccurate"):
        return 7

    # cvxpy's equality duals enter the Lagrangian with the opposite sign of
    # CSDP's y for a maximization problem.
    y = -np.asarray(eq.dual_value, dtype=float).reshape(m)

    with open(argv[2], "w") as out:
        out.write(" ".join(f"{v:.17g}" for v in y) + "\n")
        for b, s in enumerate(sizes):
            d = dims[b]
            Z = np.zeros((d, d)) if s > 0 else np.zeros(d)
            for (matno, bb), items in mats.items():
                if bb != b:
                    continue
                coef = -1.0 if matno == 0 else y[matno - 1]
                for i, j, v in items:
                    if s > 0:
                        Z[i, j] += coef * v
                        if i != j:
                            Z[j, i] += coef * v
                    else:
                        Z[i] += coef * v
            for i in range(d):
                for j in range(i, d) if s > 0 else (i,):
                    z = Z[i, j] if s > 0 else Z[i]
                    out.write(f"1 {b + 1} {i + 1} {j + 1} {z:.17g}\n")
        for b, s in enumerate(sizes):
            val = np.asarray(xs[b].value, dtype=float)
            d = dims[b]
            for i in range(d):
                for j in range(i, d) if s > 0 else (i,):
                    x = val[i, j] if s > 0 else val[i]
                    out.write(f"2 {b + 1} {i + 1} {j + 1} {x:.17g}\n")
    return 0 if status == "optimal" else 3


if __name__ == "__main__":
    sys.exit(main(sys.argv))

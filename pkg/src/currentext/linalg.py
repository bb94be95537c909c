"""Exact linear algebra: sparse rational rows, RREF, kernels, Smith form.

Everything here works over the rationals with `fractions.Fraction`; the one
exception is `rank_mod_prime`, the word-size modular fast path used when an
exact rank would blow a configured operation budget.  Callers that use the
modular path must surface that fact in their reports.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

SVec = dict[int, Fraction]

# Primes used by the modular rank fast path; products stay below 2**63.
MOD_PRIMES = (2147483629, 2147483587)

# Rough throughput of one exact row-reduction cell per second, used to turn
# a wall-clock budget into a deterministic operation budget.
EXACT_CELLS_PER_SECOND = 400_000


def svec_add_scaled(target: SVec, source: SVec, factor: Fraction) -> None:
    """target += factor * source, dropping exact zeros."""
    if not factor:
        return
    for col, val in source.items():
        new = target.get(col, 0) + factor * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


class RowReducer:
    """Incremental reduced row echelon form over the rationals.

    Rows are sparse dicts.  Stored rows are normalized (pivot value 1) and
    fully reduced against each other, so expressing a vector in the row
    basis is a direct pivot read-off.
    """

    def __init__(self) -> None:
        self.rows: dict[int, SVec] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SVec) -> SVec:
        """Return the remainder of vec after eliminating all known pivots."""
        out = {c: v for c, v in vec.items() if v}
        while True:
            hit = None
            for col in out:
                if col in self.rows:
                    hit = col
                    break
            if hit is None:
                return out
            svec_add_scaled(out, self.rows[hit], -out[hit])

    def insert(self, vec: SVec) -> int | None:
        """Insert a row; return its pivot column, or None if dependent."""
        rem = self.reduce(vec)
        if not rem:
            return None
        pivot = min(rem)
        inv = Fraction(1) / rem[pivot]
        row = {c: v * inv for c, v in rem.items()}
        for other in self.rows.values():
            if pivot in other:
                svec_add_scaled(other, row, -other[pivot])
        self.rows[pivot] = row
        return pivot

    def express(self, vec: SVec) -> dict[int, Fraction]:
        """Coordinates of vec over the stored rows, keyed by pivot column.

        Raises ValueError if vec is not in the row span.
        """
        coords: dict[int, Fraction] = {}
        rem = {c: v for c, v in vec.items() if v}
        while rem:
            hit = min((c for c in rem if c in self.rows), default=None)
            if hit is None:
                raise ValueError("vector not in row span")
            coeff = rem[hit]
            coords[hit] = coeff
            svec_add_scaled(rem, self.rows[hit], -coeff)
        return coords


def rank_exact(rows: list[SVec]) -> int:
    red = RowReducer()
    for row in sorted(rows, key=len):
        red.insert(row)
    return red.rank


def kernel_basis(rows: list[SVec], ncols: int) -> list[SVec]:
    """Basis of the solution space of `rows * x = 0` (columns 0..ncols-1)."""
    red = RowReducer()
    for row in sorted(rows, key=len):
        red.insert(row)
    pivots = set(red.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: SVec = {free: Fraction(1)}
        for piv, row in red.rows.items():
            if free in row:
                vec[piv] = -row[free]
        basis.append(vec)
    return basis


def _integerize(row: SVec) -> dict[int, int]:
    denom = 1
    for val in row.values():
        denom = denom * val.denominator // gcd(denom, val.denominator)
    return {c: int(v * denom) for c, v in row.items()}


def rank_mod_prime(rows: list[SVec], ncols: int, prime: int) -> int:
    """Rank of the row span modulo a prime (numpy elimination)."""
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for col, val in _integerize(row).items():
            mat[i, col] = val % prime
    r = 0
    for col in range(ncols):
        nz = np.nonzero(mat[r:, col])[0]
        if len(nz) == 0:
            continue
        pick = r + int(nz[0])
        if pick != r:
            mat[[r, pick]] = mat[[pick, r]]
        inv = pow(int(mat[r, col]), prime - 2, prime)
        mat[r] = (mat[r] * inv) % prime
        below = np.nonzero(mat[r + 1 :, col])[0]
        if len(below):
            idx = below + r + 1
            mat[idx] = (mat[idx] - np.outer(mat[idx, col], mat[r])) % prime
        r += 1
        if r == len(rows):
            break
    return r


def rank_with_budget(rows: list[SVec], ncols: int, seconds: float) -> tuple[int, str]:
    """Exact rank when affordable, else two-prime modular rank.

    The wall-clock budget is converted to a deterministic cell count so that
    the exact/modular decision never depends on machine load.  When the two
    primes disagree (vanishingly rare) we fall back to the exact path.
    """
    rows = [r for r in rows if r]
    if not rows:
        return 0, "exact"
    est_cells = len(rows) * min(len(rows), ncols) * ncols
    if est_cells <= seconds * EXACT_CELLS_PER_SECOND:
        return rank_exact(rows), "exact"
    for row in rows:
        denom = 1
        for val in row.values():
            denom = denom * val.denominator // gcd(denom, val.denominator)
        if any(denom % p == 0 for p in MOD_PRIMES):
            return rank_exact(rows), "exact"
    r1 = rank_mod_prime(rows, ncols, MOD_PRIMES[0])
    r2 = rank_mod_prime(rows, ncols, MOD_PRIMES[1])
    if r1 != r2:
        return rank_exact(rows), "exact"
    return r1, "modular(%d,%d)" % MOD_PRIMES


def solve_exact(rows: list[SVec], rhs: list[Fraction], ncols: int) -> SVec | None:
    """One solution of the inhomogeneous system, or None if inconsistent."""
    red = RowReducer()
    aug = ncols  # extra column carries the negated right-hand side
    for row, b in zip(rows, rhs):
        full = dict(row)
        if b:
            full[aug] = -Fraction(b)
        red.insert(full)
    if aug in red.rows:
        return None
    sol: SVec = {}
    for piv, row in red.rows.items():
        val = -row.get(aug, Fraction(0))
        # free variables are set to zero, so only the rhs column survives
        if val:
            sol[piv] = val
    return sol


# ---------------------------------------------------------------------------
# dense exact helpers (tiny matrices: Cartan data, Jacobians, jets)


def invert_rational(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    work = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def determinant(mat: list[list[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat: list[list[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diag, U, V) with U*mat*V diagonal and d_i | d_{i+1}.

    Pivots are chosen by smallest nonzero absolute value, which keeps the
    intermediate entries small for the Cartan-sized matrices we feed it.
    """
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            row_op(t, fix, -1)  # pulls the offending row up; loop again
            continue
        t += 1
    for i in range(t):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            U[i] = [-x for x in U[i]]
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V


# ---------------------------------------------------------------------------
# sparse matrices as {(row, col): Fraction}, used for module actions

SMat = dict[tuple[int, int], Fraction]


def sm_from_rows(rows: list[list]) -> SMat:
    out: SMat = {}
    for i, row in enumerate(rows):
        for j, val in enumerate(row):
            if val:
                out[i, j] = Fraction(val)
    return out


def sm_identity(n: int) -> SMat:
    return {(i, i): Fraction(1) for i in range(n)}


def sm_add(a: SMat, b: SMat, coeff: Fraction = Fraction(1)) -> SMat:
    out = dict(a)
    for key, val in b.items():
        new = out.get(key, 0) + coeff * val
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


def sm_scale(a: SMat, coeff: Fraction) -> SMat:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in a.items()}


def sm_mul(a: SMat, b: SMat) -> SMat:
    by_row: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, k), val in b.items():
        by_row.setdefault(i, []).append((k, val))
    out: SMat = {}
    for (i, k), av in a.items():
        for j, bv in by_row.get(k, ()):
            key = (i, j)
            new = out.get(key, 0) + av * bv
            if new:
                out[key] = new
            else:
                out.pop(key, None)
    return out


def sm_commutator(a: SMat, b: SMat) -> SMat:
    return sm_add(sm_mul(a, b), sm_mul(b, a), Fraction(-1))


def sm_apply(a: SMat, vec: SVec) -> SVec:
    out: SVec = {}
    by_col: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), val in a.items():
        by_col.setdefault(j, []).append((i, val))
    for j, v in vec.items():
        for i, av in by_col.get(j, ()):
            new = out.get(i, 0) + av * v
            if new:
                out[i] = new
            else:
                out.pop(i, None)
    return out


def sm_eq(a: SMat, b: SMat) -> bool:
    return not sm_add(a, b, Fraction(-1))


def sm_kron(a: SMat, b: SMat, bdim: int) -> SMat:
    out: SMat = {}
    for (i, j), av in a.items():
        for (k, l), bv in b.items():
            out[i * bdim + k, j * bdim + l] = av * bv
    return out

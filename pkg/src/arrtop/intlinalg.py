"""Exact integer linear algebra: Bareiss rank, determinant, Smith normal form.

Everything here works on plain lists of Python ints, so intermediate
entries may grow to arbitrary size without overflow.
"""

from __future__ import annotations

from dataclasses import dataclass


def rank_int(rows: list[list[int]]) -> int:
    """Rank of an integer matrix via fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = m[i]
            f = ri[c]
            if f:
                for j in range(c, ncols):
                    # Bareiss one-step update; the division is exact.
                    ri[j] = (ri[j] * p - f * pr[j]) // prev
            else:
                for j in range(c, ncols):
                    ri[j] = (ri[j] * p) // prev
        prev = p
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss; exact)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            f = m[i][c]
            for j in range(c, n):
                m[i][j] = (m[i][j] * p - f * m[c][j]) // prev
        prev = p
    return sign * prev


@dataclass
class SNF:
    """Smith normal form ``left @ mat @ right == diag`` with unimodular transforms.

    ``diag`` holds the invariant factors d_1 | d_2 | ... (positive, then
    trailing zeros); ``rank`` is the number of nonzero factors.
    """

    diag: list[int]
    left: list[list[int]]
    right: list[list[int]]
    rank: int

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diag if d > 1]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(rows: list[list[int]]) -> SNF:
    """Smith normal form with unimodular transforms.

    Classic min-pivot algorithm: at each step the smallest nonzero entry of
    the trailing block is moved to the pivot slot, the pivot row/column are
    reduced, and the pivot is forced to divide the whole trailing block
    before advancing, which yields the divisor chain directly.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    left = _identity(nr)
    right = _identity(nc)
    limit = min(nr, nc)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        ad, asrc = a[dst], a[src]
        for k in range(nc):
            ad[k] += q * asrc[k]
        ld, lsrc = left[dst], left[src]
        for k in range(nr):
            ld[k] += q * lsrc[k]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < limit:
        # Smallest nonzero entry of the trailing block becomes the pivot.
        piv = None
        best = None
        for i in range(t, nr):
            ai = a[i]
            for j in range(t, nc):
                v = ai[j]
                if v:
                    av = -v if v < 0 else v
                    if best is None or av < best:
                        best = av
                        piv = (i, j)
                        if av == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        p = a[t][t]

        leftover = False
        for i in range(t + 1, nr):
            v = a[i][t]
            if v:
                addmul_row(i, t, -(v // p))
                if a[i][t]:
                    leftover = True
        for j in range(t + 1, nc):
            v = a[t][j]
            if v:
                addmul_col(j, t, -(v // p))
                if a[t][j]:
                    leftover = True
        if leftover:
            continue  # a strictly smaller entry appeared; re-pick pivot

        # Pivot must divide every entry of the trailing block.
        bad = None
        for i in range(t + 1, nr):
            ai = a[i]
            for j in range(t + 1, nc):
                if ai[j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            addmul_row(t, bad, 1)
            continue
        t += 1

    diag = [a[i][i] for i in range(limit)]
    rank = sum(1 for d in diag if d)
    return SNF(diag=diag, left=left, right=right, rank=rank)


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    cols = len(b[0]) if b else 0
    out = []
    for ra in a:
        row = [0] * cols
        for k, v in enumerate(ra):
            if v:
                rb = b[k]
                for j in range(cols):
                    row[j] += v * rb[j]
        out.append(row)
    return out

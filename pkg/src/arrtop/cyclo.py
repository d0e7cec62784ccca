"""Exact arithmetic in Z[x]/Phi_r(x) and matrix rank over its fraction field.

Elements are coefficient tuples of length deg Phi_r.  Rank uses
fraction-free Bareiss elimination: every intermediate entry is a minor of
the original matrix, so the stepwise divisions stay in the ring.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Coefficients of Phi_r, low degree first, computed by exact division
    of x^r - 1 by the Phi_d for proper divisors d."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    poly = [-1] + [0] * (r - 1) + [1]  # x^r - 1
    for d in range(1, r):
        if r % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        if c % den[dd]:
            raise ConsistencyError("inexact polynomial division")
        c //= den[dd]
        out[k] = c
        if c:
            for i, dv in enumerate(den):
                num[k + i] -= c * dv
    if any(num):
        raise ConsistencyError("inexact polynomial division (remainder)")
    return out


class CyclotomicRing:
    """Z[x]/Phi_r(x); ``zeta_power(k)`` is the image of x^k."""

    def __init__(self, r: int):
        self.r = r
        self.phi = cyclotomic_polynomial(r)
        self.deg = len(self.phi) - 1
        d = self.deg
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # x^k mod Phi_r for 0 <= k < max(2d - 1, r).
        table = [list(self.one)]
        for _ in range(max(2 * d - 1, r) - 1):
            cur = [0] + list(table[-1])
            top = cur.pop()
            if top:
                for i in range(d):
                    cur[i] -= top * self.phi[i]
            table.append(cur)
        self._xpow = [tuple(row) for row in table]

    def zeta_power(self, k: int) -> tuple[int, ...]:
        return self._xpow[k % self.r]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.deg
        if d == 1:
            return (a[0] * b[0],)
        if d == 2:
            # x^2 = -phi1*x - phi0
            a0, a1 = a
            b0, b1 = b
            t = a1 * b1
            return (a0 * b0 - t * self.phi[0], a0 * b1 + a1 * b0 - t * self.phi[1])
        acc = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        acc[i + j] += ai * bj
        out = list(acc[:d])
        for k in range(d, 2 * d - 1):
            c = acc[k]
            if c:
                xp = self._xpow[k]
                for i in range(d):
                    out[i] += c * xp[i]
        return tuple(out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def from_int(self, c: int):
        return (c,) + (0,) * (self.deg - 1)

    def inv_with_den(self, a) -> tuple[tuple[int, ...], int]:
        """(u, D) with a * u = D in the ring; u integral, D a positive integer.

        Extended Euclid against Phi_r over Q, denominators cleared.  Always
        succeeds for a != 0 because Phi_r is irreducible over Q.
        """
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in cyclotomic ring")
        if self.deg == 1:
            a0 = a[0]
            return ((1,), a0) if a0 > 0 else ((-1,), -a0)
        if self.deg == 2:
            # Norm form: (a0 + a1 x)(a0 - a1 phi1 - a1 x) = a0^2 - a0 a1 phi1 + a1^2 phi0
            a0, a1 = a
            p0, p1 = self.phi[0], self.phi[1]
            norm = a0 * a0 - a0 * a1 * p1 + a1 * a1 * p0
            u = (a0 - a1 * p1, -a1)
            if norm < 0:
                return ((-u[0], -u[1]), -norm)
            return (u, norm)
        r0 = [Fraction(c) for c in self.phi]
        r1 = [Fraction(c) for c in a]
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def degq(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while degq(r1) > 0:
            q, rem = _polydivmod_q(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _polysub_q(s0, _polymul_q(q, s1))
        if degq(r1) != 0:
            raise ConsistencyError("cyclotomic modulus split; zero divisor hit")
        c = r1[0]
        u = [x / c for x in s1]
        while u and not u[-1]:
            u.pop()
        if len(u) > self.deg:
            raise ConsistencyError("Bezout coefficient degree out of range")
        den = 1
        for x in u:
            den = den * x.denominator // gcd(den, x.denominator)
        poly = [int(x * den) for x in u] + [0] * (self.deg - len(u))
        if den < 0:
            den, poly = -den, [-x for x in poly]
        return tuple(poly), den

    def exact_div(self, a, b, b_inv=None):
        """a / b, exact in the ring (raises ConsistencyError if not)."""
        if b_inv is None:
            b_inv = self.inv_with_den(b)
        u, den = b_inv
        prod = self.mul(a, u)
        out = []
        for c in prod:
            if c % den:
                raise ConsistencyError("inexact division in cyclotomic ring")
            out.append(c // den)
        return tuple(out)

    def rank(self, rows: list[list[tuple[int, ...]]]) -> int:
        """Rank over Q(zeta_r) by fraction-free Bareiss elimination."""
        if not rows or not rows[0]:
            return 0
        if self.deg == 2:
            return self._rank_deg2(rows)
        m = [list(r) for r in rows]
        nr, nc = len(m), len(m[0])
        rank = 0
        r = 0
        prev = self.one
        prev_inv = None
        mul_, sub_, div_ = self.mul, self.sub, self.exact_div
        for c in range(nc):
            piv = None
            for i in range(r, nr):
                if not self.is_zero(m[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            pr = m[r]
            p = pr[c]
            for i in range(r + 1, nr):
                ri = m[i]
                f = ri[c]
                if self.is_zero(f):
                    for j in range(c, nc):
                        v = mul_(ri[j], p)
                        ri[j] = v if prev_inv is None else div_(v, prev, prev_inv)
                else:
                    for j in range(c, nc):
                        v = sub_(mul_(ri[j], p), mul_(f, pr[j]))
                        ri[j] = v if prev_inv is None else div_(v, prev, prev_inv)
            prev = p
            prev_inv = self.inv_with_den(p)
            rank += 1
            r += 1
            if r == nr:
                break
        return rank


    def _rank_deg2(self, rows) -> int:
        """Bareiss with the quadratic-ring arithmetic inlined; the stepwise
        divisions are exact by the minor identity, so plain // is safe."""
        q0, q1 = self.phi[0], self.phi[1]
        m = [list(r) for r in rows]
        nr, nc = len(m), len(m[0])
        rank = 0
        r = 0
        pu0 = pu1 = 0
        pden = 1
        have_prev = False
        for c in range(nc):
            piv = None
            for i in range(r, nr):
                e = m[i][c]
                if e[0] or e[1]:
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            pr = m[r]
            a0, a1 = pr[c]
            for i in range(r + 1, nr):
                ri = m[i]
                f0, f1 = ri[c]
                if f0 or f1:
                    for j in range(c, nc):
                        e0, e1 = ri[j]
                        b0, b1 = pr[j]
                        t = e1 * a1
                        x0 = e0 * a0 - t * q0
                        x1 = e0 * a1 + e1 * a0 - t * q1
                        t = f1 * b1
                        v0 = x0 - (f0 * b0 - t * q0)
                        v1 = x1 - (f0 * b1 + f1 * b0 - t * q1)
                        if have_prev:
                            t = v1 * pu1
                            w0 = v0 * pu0 - t * q0
                            w1 = v0 * pu1 + v1 * pu0 - t * q1
                            v0 = w0 // pden
                            v1 = w1 // pden
                        ri[j] = (v0, v1)
                else:
                    for j in range(c, nc):
                        e0, e1 = ri[j]
                        if e0 or e1:
                            t = e1 * a1
                            v0 = e0 * a0 - t * q0
                            v1 = e0 * a1 + e1 * a0 - t * q1
                            if have_prev:
                                t = v1 * pu1
                                w0 = v0 * pu0 - t * q0
                                w1 = v0 * pu1 + v1 * pu0 - t * q1
                                v0 = w0 // pden
                                v1 = w1 // pden
                            ri[j] = (v0, v1)
            pu0 = a0 - a1 * q1
            pu1 = -a1
            pden = a0 * a0 - a0 * a1 * q1 + a1 * a1 * q0
            if pden < 0:
                pden, pu0, pu1 = -pden, -pu0, -pu1
            have_prev = True
            rank += 1
            r += 1
            if r == nr:
                break
        return rank


@lru_cache(maxsize=None)
def get_ring(r: int) -> CyclotomicRing:
    return CyclotomicRing(r)


def _polydivmod_q(num, den):
    num = list(num)
    dd = len(den) - 1
    while dd >= 0 and not den[dd]:
        dd -= 1
    q = [Fraction(0)] * max(len(num) - dd, 1)
    for k in range(len(num) - dd - 1, -1, -1):
        c = num[k + dd] / den[dd]
        q[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    return q, num[:dd] if dd > 0 else [Fraction(0)]


def _polymul_q(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _polysub_q(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]

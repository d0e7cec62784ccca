"""Degree-<=2 truncation of the Orlik-Solomon algebra, the Aomoto complex,
resonance membership, and the mod-p diagonal resonance numbers.

A^1 has basis {e_H}; A^2 splits as a direct sum over rank-2 flats X of a
space of dimension |A_X| - 1 with basis the classes of
e_{H_min} ^ e_{H_t}.  For a = sum a_H e_H the differential b -> ab has the
closed form, on the X-summand coordinate t:

    (ab)_{X,t} = a_X * b_t - b_X * a_t        (a_X = sum of a over X)

which is what makes the cup map sparse and cheap to evaluate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import IntersectionLattice
from .errors import ValidationError
from .intlinalg import rank_int


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (p None) or a prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
                raise ValidationError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


RATIONALS = FieldSpec(None)


@dataclass(frozen=True)
class OSTruncation:
    """The data of A^1, A^2 and the cup product, over a fixed field."""

    field: FieldSpec
    lat: IntersectionLattice
    rows: tuple[tuple[int, int], ...]  # (flat index, t) for basis class e_min ^ e_{lines[t]}

    @property
    def n(self) -> int:
        return self.lat.n

    @property
    def dim2(self) -> int:
        return len(self.rows)


def build_os_truncation(lat: IntersectionLattice, field: FieldSpec = RATIONALS) -> OSTruncation:
    rows = tuple(
        (fi, t)
        for fi, fl in enumerate(lat.flats)
        for t in range(1, fl.multiplicity)
    )
    return OSTruncation(field=field, lat=lat, rows=rows)


def _coerce_vector(os: OSTruncation, a) -> list:
    if len(a) != os.n:
        raise ValidationError(f"class vector must have length {os.n}")
    if os.field.is_rational:
        return [Fraction(v) for v in a]
    p = os.field.p
    for v in a:
        if isinstance(v, Fraction) and v.denominator % p == 0:
            raise ValidationError(f"{v} has no image in F_{p}")
    return [
        (v.numerator * pow(v.denominator, -1, p)) % p if isinstance(v, Fraction) else int(v) % p
        for v in a
    ]


def cup(os: OSTruncation, a, b) -> list:
    """The product ab in A^2, in the per-flat basis ordered like os.rows."""
    av = _coerce_vector(os, a)
    bv = _coerce_vector(os, b)
    out = []
    for fi, t in os.rows:
        ls = os.lat.flats[fi].lines
        a_x = sum(av[i] for i in ls)
        b_x = sum(bv[i] for i in ls)
        h = ls[t]
        v = a_x * bv[h] - b_x * av[h]
        out.append(v % os.field.p if not os.field.is_rational else v)
    return out


def delta_matrix(os: OSTruncation, a) -> list[list]:
    """Matrix of delta_a: A^1 -> A^2 (rows indexed like os.rows)."""
    av = _coerce_vector(os, a)
    p = os.field.p
    rows = []
    for fi, t in os.rows:
        ls = os.lat.flats[fi].lines
        a_x = sum(av[i] for i in ls)
        a_t = av[ls[t]]
        row = [0] * os.n
        for i in ls:
            row[i] = -a_t
        row[ls[t]] = a_x - a_t
        if p is not None:
            row = [v % p for v in row]
        rows.append(row)
    return rows


def _rank(os: OSTruncation, rows: list[list]) -> int:
    if not rows:
        return 0
    if os.field.is_rational:
        scaled = []
        for row in rows:
            den = 1
            for v in row:
                if isinstance(v, Fraction):
                    den = den * v.denominator // __import__("math").gcd(den, v.denominator)
            scaled.append([int(v * den) for v in row])
        return rank_int(scaled)
    return _rank_mod_p(rows, os.field.p)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in row] for row in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(vi - f * vr) % p for vi, vr in zip(m[i], m[r])]
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


@dataclass(frozen=True)
class AomotoH1:
    dim: int
    trivial_class: bool  # a == 0: dim is just dim A^1, not resonance depth


def aomoto_h1(os: OSTruncation, a) -> AomotoH1:
    """dim H^1 of the Aomoto complex (A, delta_a).

    For a != 0 this is dim ker(delta_a: A^1 -> A^2) - 1, the resonance
    depth of a.  The zero class is reported with an explicit flag.
    """
    av = _coerce_vector(os, a)
    if all(v == 0 for v in av):
        return AomotoH1(dim=os.n, trivial_class=True)
    rank = _rank(os, delta_matrix(os, av))
    return AomotoH1(dim=os.n - rank - 1, trivial_class=False)


def aomoto_h1_dim(os: OSTruncation, a) -> int:
    return aomoto_h1(os, a).dim


def resonance_membership(os: OSTruncation, a, s: int) -> bool:
    """a in R^1_s, per the rank-jump definition; 0 lies in R_s iff dim A^1 >= s."""
    if s < 1:
        raise ValidationError(f"depth s must be >= 1, got {s}")
    res = aomoto_h1(os, a)
    return res.dim >= s


def beta_p(lat: IntersectionLattice, p: int) -> int:
    """Depth of the diagonal class sigma = sum e_H over F_p."""
    os = build_os_truncation(lat, FieldSpec(p))
    res = aomoto_h1(os, [1] * lat.n)
    return res.dim

"""Twisted first homology at finite-order characters via Fox calculus.

For a presentation with g generators and a nontrivial character chi of
order r, dim H_1 with coefficients in C_chi equals

    (g - 1) - rank_{Q(zeta_r)} J(chi)

where J is the Fox Jacobian of the relators evaluated at chi.  All ranks
are exact, over Z[x]/Phi_r(x).

The diagonal characters rho_r (every meridian to a primitive r-th root)
give the cyclotomic exponents e_r of the Milnor fiber monodromy; scanning
all r^{b_1} characters of the fiber group gives the torsion-point counts
of its characteristic varieties.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclo import CyclotomicRing, get_ring
from .errors import BudgetError, ConsistencyError, ValidationError
from .intlinalg import smith_normal_form, mat_mul
from .milnor import CharPolyFactorization
from .pi1 import CosetSchreierData, GroupPresentation, reidemeister_schreier
from .words import Word


@dataclass(frozen=True)
class Character:
    """Finite-order character on a presented group: generator -> zeta^exps[j]."""

    order: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("character order must be >= 1")

    @property
    def is_trivial(self) -> bool:
        return all(e % self.order == 0 for e in self.exps)

    def inverse(self) -> "Character":
        return Character(self.order, tuple((-e) % self.order for e in self.exps))


def check_character(pres: GroupPresentation, chi: Character) -> None:
    """A character must kill every relator (exponent sums mod order)."""
    if len(chi.exps) != pres.num_gens:
        raise ValidationError(
            f"character has {len(chi.exps)} exponents for {pres.num_gens} generators"
        )
    for idx, rel in enumerate(pres.relators):
        total = 0
        for x in rel:
            total += chi.exps[abs(x) - 1] if x > 0 else -chi.exps[abs(x) - 1]
        if total % chi.order:
            raise ValidationError(
                f"character ill-defined: relator {idx} maps to {total % chi.order} "
                f"!= 0 mod {chi.order}"
            )


def diagonal_character(pres: GroupPresentation, r: int) -> Character:
    chi = Character(order=r, exps=(1,) * pres.num_gens)
    check_character(pres, chi)
    return chi


# --- Fox derivative machinery ----------------------------------------------

FoxEntry = list[tuple[int, tuple[int, ...]]]  # (sign, abelianized prefix)


def fox_structure(relators: tuple[Word, ...], num_gens: int, proj=None):
    """Per relator and generator: the occurrences (sign, prefix image).

    ``proj`` maps a generator index to an integer vector (its image in a
    free abelian quotient); default is the standard basis, so prefixes are
    abelianized in Z^g.  Evaluating a character then only needs a dot
    product per occurrence.
    """
    dim = num_gens if proj is None else len(proj[0])
    structure = []
    for rel in relators:
        occs: list[list[FoxEntry]] = [[] for _ in range(num_gens)]
        prefix = [0] * dim
        for x in rel:
            j = abs(x) - 1
            vec = (
                [1 if t == j else 0 for t in range(dim)] if proj is None else proj[j]
            )
            if x > 0:
                occs[j].append((1, tuple(prefix)))
                for t in range(dim):
                    prefix[t] += vec[t]
            else:
                for t in range(dim):
                    prefix[t] -= vec[t]
                occs[j].append((-1, tuple(prefix)))
        structure.append([tuple(o) for o in occs])
    return structure


def fox_jacobian(structure, ring: CyclotomicRing, exps) -> list[list[tuple[int, ...]]]:
    """Evaluate the Fox Jacobian at the character zeta^{exps . prefix}."""
    r = ring.r
    zeta = ring._xpow
    deg = ring.deg
    rows = []
    for occs_per_gen in structure:
        row = []
        for occs in occs_per_gen:
            acc = [0] * deg
            for sign, prefix in occs:
                k = 0
                for e, p in zip(exps, prefix):
                    if e and p:
                        k += e * p
                xp = zeta[k % r]
                if sign > 0:
                    for t in range(deg):
                        acc[t] += xp[t]
                else:
                    for t in range(deg):
                        acc[t] -= xp[t]
            row.append(tuple(acc))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class DepthReport:
    character: Character
    dim: int
    trivial_character: bool

    @property
    def depth(self) -> int:
        return self.dim


def twisted_h1(pres: GroupPresentation, chi: Character) -> DepthReport:
    """dim H_1 of the group with coefficients twisted by chi.

    The trivial character reports b_1 of the abelianization, flagged; this
    is the one code path every counting operation shares.
    """
    check_character(pres, chi)
    if chi.is_trivial:
        rank, _ = pres.abelianization()
        return DepthReport(character=chi, dim=rank, trivial_character=True)
    ring = get_ring(chi.order)
    structure = fox_structure(pres.relators, pres.num_gens)
    jac = fox_jacobian(structure, ring, chi.exps)
    rank = ring.rank(jac)
    return DepthReport(
        character=chi, dim=pres.num_gens - 1 - rank, trivial_character=False
    )


def twisted_h1_dim(pres: GroupPresentation, chi: Character) -> int:
    return twisted_h1(pres, chi).dim


def e_r(pres: GroupPresentation, n: int, r: int) -> int:
    """Cyclotomic exponent e_r = depth of the diagonal order-r character.

    Defined for divisors r of n with r > 1 (otherwise the diagonal map does
    not kill the meridian product relation)."""
    if r <= 1:
        raise ValidationError(f"e_r needs r > 1, got {r}")
    if n % r:
        raise ValidationError(
            f"rho_{r} is ill-defined on this group: {r} does not divide n = {n}"
        )
    return twisted_h1_dim(pres, diagonal_character(pres, r))


def all_e_r(pres: GroupPresentation, n: int) -> dict[int, int]:
    return {r: e_r(pres, n, r) for r in range(2, n + 1) if n % r == 0}


def euler_totient(r: int) -> int:
    return sum(1 for k in range(1, r + 1) if gcd(k, r) == 1)


def milnor_h1_decomposition(e: dict[int, int], n: int):
    """(b_1(F), Delta(t)) from the cyclotomic exponents.

    Delta(t) = (t-1)^{n-1} * prod Phi_r(t)^{e_r}; the first Betti number of
    the fiber is n - 1 + sum phi(r) e_r.
    """
    missing = [r for r in range(2, n + 1) if n % r == 0 and r not in e]
    if missing:
        raise ValidationError(f"exponent map missing divisors {missing} of {n}")
    factors = {1: n - 1}
    for r, er in sorted(e.items()):
        if er:
            factors[r] = er
    b1 = n - 1 + sum(euler_totient(r) * er for r, er in e.items())
    return b1, CharPolyFactorization(factors=factors)


@dataclass(frozen=True)
class ModularBoundReport:
    p: int
    s: int
    e_value: int | None  # None when p^s does not divide n (vacuous)
    beta_value: int
    holds: bool


def modular_bound_check(
    pres: GroupPresentation, n: int, beta: int, p: int, s: int = 1
) -> ModularBoundReport:
    """The prime-power exponents are bounded by the mod-p diagonal resonance:
    e_{p^s} <= beta_p, checked with both sides computed independently."""
    q = p**s
    if n % q:
        return ModularBoundReport(p=p, s=s, e_value=None, beta_value=beta, holds=True)
    val = e_r(pres, n, q)
    return ModularBoundReport(p=p, s=s, e_value=val, beta_value=beta, holds=val <= beta)


# --- The Milnor fiber as a group, and torsion-point counting ----------------

class MilnorFiberGroup:
    """pi_1 of the Milnor fiber via Reidemeister-Schreier, with the
    change-of-basis data needed to enumerate its finite-order characters."""

    def __init__(self, pres_u: GroupPresentation, n: int):
        self.n = n
        self.csd: CosetSchreierData = reidemeister_schreier(
            pres_u, [1] * pres_u.num_gens, n
        )
        sub = self.csd.presentation
        mat = sub.abelianization_matrix()
        snf = smith_normal_form(mat)
        self.snf = snf
        self.b1 = sub.num_gens - snf.rank
        self.torsion = snf.torsion
        # Free-part projection Z^gens -> Z^{b1}: in the SNF basis, generator
        # images are the rows of right^{-T}; equivalently columns of `right`
        # beyond the rank give the kernel, and the projection of generator i
        # is row i of (right^{-1})^T restricted... we avoid inverting by
        # using the identity proj = (right^T applied to standard basis) on
        # the quotient coordinates: x -> (right^{-1} x) truncated.  Compute
        # right^{-1} exactly via SNF of right.
        self.proj = self._free_projection(mat, snf)

    def _free_projection(self, mat, snf):
        # H1 = Z^G / rowspace(mat); with left*mat*right = diag, the
        # composite v -> v @ right has relation rows spanning diag, so the
        # coordinates of index >= rank (where diag is 0) give the free part.
        g = self.csd.presentation.num_gens
        right = snf.right
        proj = []
        for i in range(g):
            row = right[i]
            proj.append(tuple(row[snf.rank :]))
        # Sanity: every relator must project to zero.
        prod = mat_mul(mat, [list(r) for r in [[right[i][j] for j in range(snf.rank, g)] for i in range(g)]])
        if any(any(v for v in row) for row in prod):
            raise ConsistencyError("free-part projection does not kill relators")
        return proj

    def character(self, r: int, exps) -> Character:
        """Character of order r from exponents on the free part of H_1."""
        exps = tuple(int(v) % r for v in exps)
        if len(exps) != self.b1:
            raise ValidationError(f"need {self.b1} exponents, got {len(exps)}")
        gen_exps = tuple(
            sum(e * p for e, p in zip(exps, self.proj[i])) % r
            for i in range(self.csd.presentation.num_gens)
        )
        chi = Character(order=r, exps=gen_exps)
        check_character(self.csd.presentation, chi)
        return chi

    def depth_table(self, r: int, budget: int = 100_000) -> dict[tuple[int, ...], int]:
        """Twisted H_1 dimension for every character with eta^r = 1.

        Exhaustive over the r^{b1} exponent vectors; the trivial vector uses
        the flagged b_1 convention.  Results are cached by the caller."""
        total = r**self.b1
        if total > budget:
            raise BudgetError(
                f"scan needs {total} characters, budget is {budget}",
                required=total,
                budget=budget,
            )
        if self.torsion:
            # Characters of the free part only; torsion would contribute
            # extra characters, so make the caller aware.
            raise ConsistencyError(
                f"H_1 of the fiber has torsion {self.torsion}; "
                "character scan over the free part would be incomplete"
            )
        sub = self.csd.presentation
        ring = get_ring(r)
        structure = fox_structure(sub.relators, sub.num_gens, proj=self.proj)
        g = sub.num_gens
        out: dict[tuple[int, ...], int] = {}
        stack = [(0,) * self.b1]
        # Plain mixed-radix enumeration, deterministic order.
        exps = [0] * self.b1
        while True:
            key = tuple(exps)
            if all(v == 0 for v in exps):
                out[key] = self.b1
            else:
                jac = fox_jacobian(structure, ring, key)
                out[key] = g - 1 - ring.rank(jac)
            i = self.b1 - 1
            while i >= 0 and exps[i] == r - 1:
                exps[i] = 0
                i -= 1
            if i < 0:
                break
            exps[i] += 1
        return out

    def count_torsion_points(self, r: int, s: int, budget: int = 100_000) -> int:
        """Number of characters eta with eta^r = 1 and depth >= s."""
        table = self.depth_table(r, budget=budget)
        return sum(1 for v in table.values() if v >= s)

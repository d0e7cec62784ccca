"""Characteristic polynomials of the degree-1 monodromy as cyclotomic
factorizations, and the combinatorial formulas that predict them.

Computed and conjectural outputs are distinct types: a conjectural
factorization cannot be compared or mixed with a computed one without
explicitly unwrapping it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arrangement import IntersectionLattice
from .errors import ConsistencyError, ValidationError
from .multinet import Multinet


def _totient(r: int) -> int:
    return sum(1 for k in range(1, r + 1) if gcd(k, r) == 1)


@dataclass(frozen=True)
class CharPolyFactorization:
    """prod_r Phi_r(t)^{factors[r]}; the (t-1)-exponent is stored at r = 1."""

    factors: dict[int, int]

    def __post_init__(self):
        clean = {r: e for r, e in sorted(self.factors.items()) if e}
        if any(e < 0 for e in clean.values()) or any(r < 1 for r in clean):
            raise ValidationError(f"bad factorization data {self.factors}")
        object.__setattr__(self, "factors", clean)

    @property
    def degree(self) -> int:
        return sum(e * _totient(r) for r, e in self.factors.items())

    def exponent(self, r: int) -> int:
        return self.factors.get(r, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, ConjecturalFactorization):
            raise TypeError(
                "cannot compare a computed factorization with a conjectural one; "
                "unwrap it explicitly"
            )
        if not isinstance(other, CharPolyFactorization):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(tuple(sorted(self.factors.items())))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        names = {1: "(t-1)", 2: "(t+1)", 3: "(t^2+t+1)", 4: "(t^2+1)", 6: "(t^2-t+1)"}
        parts = []
        for r, e in self.factors.items():
            base = names.get(r, f"Phi_{r}(t)")
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts)

    def as_json(self) -> dict:
        return {str(r): e for r, e in self.factors.items()}


@dataclass(frozen=True)
class ConjecturalFactorization:
    """A factorization predicted by an unproven formula; typed apart so it is
    never silently mixed with computed values."""

    value: CharPolyFactorization

    def unwrap(self) -> CharPolyFactorization:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} [conjectural]"


def validate_beta3(lat: IntersectionLattice, beta3: int) -> None:
    """On a lattice with no flats of multiplicity 3r (r > 1), the diagonal
    mod-3 resonance depth is at most 2; more is an internal inconsistency."""
    if any(q % 3 == 0 and q > 3 for q in lat.census):
        return
    if not 0 <= beta3 <= 2:
        raise ConsistencyError(
            f"beta_3 = {beta3} outside 0..2 on a lattice satisfying the "
            "triple-point hypothesis"
        )


def delta_triple_points(lat: IntersectionLattice, beta3: int) -> CharPolyFactorization:
    """Monodromy polynomial for arrangements with only double and triple
    points: (t-1)^{n-1} (t^2+t+1)^{beta_3}."""
    if not set(lat.census) <= {2, 3}:
        raise ValidationError(
            f"lattice has multiplicities {sorted(lat.census)}; the double/triple "
            "formula does not apply -- use the conjectural formula instead"
        )
    validate_beta3(lat, beta3)
    return CharPolyFactorization(factors={1: lat.n - 1, 3: beta3})


def delta_conjectural(
    lat: IntersectionLattice, beta2: int, beta3: int, essential: bool = True
) -> ConjecturalFactorization:
    """The conjectured combinatorial formula
    (t-1)^{n-1} ((t+1)(t^2+1))^{beta_2} (t^2+t+1)^{beta_3}
    for essential rank-3 arrangements; output is typed as conjectural."""
    if not essential:
        raise ValidationError("the conjectural formula needs an essential rank-3 arrangement")
    return ConjecturalFactorization(
        CharPolyFactorization(
            factors={1: lat.n - 1, 2: beta2, 4: beta2, 3: beta3}
        )
    )


@dataclass(frozen=True)
class BoundClaim:
    """A machine-checkable lower bound e_r >= bound from a reduced multinet."""

    r: int
    bound: int
    source: str
    checked: bool | None = None  # None when no computed e_r is available

    def with_check(self, e_value: int) -> "BoundClaim":
        return BoundClaim(self.r, self.bound, self.source, e_value >= self.bound)


def multinet_lower_bounds(
    multinets: list[Multinet], e_values: dict[int, int] | None = None
) -> list[BoundClaim]:
    """Lower bounds e_k >= k - 2 from reduced k-multinets, with the
    prime-power refinement e_{p^t} >= k - 2 for k = p^s, 1 <= t <= s."""
    claims: dict[tuple[int, int], BoundClaim] = {}

    def add(r: int, bound: int, source: str):
        key = (r, bound)
        if key not in claims:
            claims[key] = BoundClaim(r=r, bound=bound, source=source)

    for mn in multinets:
        if not mn.reduced:
            continue
        k = mn.k
        add(k, k - 2, f"reduced {k}-multinet")
        p = _prime_power_base(k)
        if p is not None:
            s = 0
            q = k
            while q > 1:
                q //= p
                s += 1
            for t in range(1, s + 1):
                add(p**t, k - 2, f"reduced {k}-multinet (prime power refinement)")
    out = []
    for key in sorted(claims):
        claim = claims[key]
        if e_values is not None and claim.r in e_values:
            claim = claim.with_check(e_values[claim.r])
        out.append(claim)
    return out


def _prime_power_base(k: int) -> int | None:
    for p in range(2, k + 1):
        if k % p == 0:
            q = k
            while q % p == 0:
                q //= p
            return p if q == 1 else None
    return None


@dataclass(frozen=True)
class FourNetClaim:
    beta2: int
    checked_e2: bool | None = None
    checked_e4: bool | None = None


def beta4_equalities(
    has_four_net: bool, beta2: int, e_values: dict[int, int] | None = None
) -> FourNetClaim | None:
    """With a 4-net and beta_2 <= 2, the equalities e_2 = e_4 = beta_2 hold;
    returns None when the hypotheses fail."""
    if not has_four_net or beta2 > 2:
        return None
    c2 = c4 = None
    if e_values is not None:
        if 2 in e_values:
            c2 = e_values[2] == beta2
        if 4 in e_values:
            c4 = e_values[4] == beta2
    return FourNetClaim(beta2=beta2, checked_e2=c2, checked_e4=c4)

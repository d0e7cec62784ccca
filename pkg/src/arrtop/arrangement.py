"""Rational line arrangements in CP^2 and their rank-2 intersection lattices.

Lines are integer covectors (a, b, c) for ax + by + cz = 0, stored in a
canonical form (gcd 1, first nonzero entry positive).  All arithmetic is
exact; no floating point enters this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ValidationError

Triple = tuple[int, int, int]


def normalize_triple(t: tuple[int, int, int]) -> Triple:
    """Canonical representative of a projective triple: gcd 1, first nonzero > 0."""
    a, b, c = t
    if a == 0 and b == 0 and c == 0:
        raise ValidationError("projective triple must be nonzero")
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    for v in (a, b, c):
        if v:
            if v < 0:
                a, b, c = -a, -b, -c
            break
    return (a, b, c)


def cross(u: Triple, v: Triple) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True, order=True)
class ProjLine:
    """A projective line ax + by + cz = 0 with canonical integer coefficients."""

    coeffs: Triple

    @classmethod
    def make(cls, a: int, b: int, c: int) -> "ProjLine":
        for v in (a, b, c):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValidationError(f"line coefficients must be integers, got {(a, b, c)!r}")
        return cls(normalize_triple((a, b, c)))

    def contains(self, point: Triple) -> bool:
        a, b, c = self.coeffs
        return a * point[0] + b * point[1] + c * point[2] == 0


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of pairwise-distinct projective lines."""

    lines: tuple[ProjLine, ...]
    label: str = ""

    @classmethod
    def make(cls, coeffs: list[tuple[int, int, int]], label: str = "") -> "Arrangement":
        lines = tuple(ProjLine.make(*t) for t in coeffs)
        if not lines:
            raise ValidationError("arrangement needs at least one line")
        seen: dict[Triple, int] = {}
        for i, ln in enumerate(lines):
            if ln.coeffs in seen:
                raise ValidationError(
                    f"duplicate lines at indices {seen[ln.coeffs]} and {i}: {ln.coeffs}"
                )
            seen[ln.coeffs] = i
        return cls(lines=lines, label=label)

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def is_essential(self) -> bool:
        """True iff the lines do not all pass through a single projective point."""
        if self.n < 3:
            return False
        p = cross(self.lines[0].coeffs, self.lines[1].coeffs)
        return any(not ln.contains(p) for ln in self.lines[2:])


@dataclass(frozen=True)
class Flat2:
    """A rank-2 flat: an intersection point together with all lines through it.

    ``point`` is None for incidence-tier lattices that carry no coordinates.
    """

    point: Triple | None
    lines: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class IntersectionLattice:
    """All rank-2 flats of an arrangement, plus the multiplicity census."""

    n: int
    flats: tuple[Flat2, ...]
    label: str = ""
    realized: bool = True
    _pair_to_flat: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        pair_map: dict[tuple[int, int], int] = {}
        for fi, fl in enumerate(self.flats):
            for i, j in combinations(fl.lines, 2):
                key = (i, j)
                if key in pair_map:
                    raise ValidationError(
                        f"line pair {key} lies in two flats ({pair_map[key]} and {fi})"
                    )
                pair_map[key] = fi
        if len(pair_map) != self.n * (self.n - 1) // 2:
            raise ValidationError("flats do not cover every line pair exactly once")
        object.__setattr__(self, "_pair_to_flat", pair_map)

    @property
    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for fl in self.flats:
            out[fl.multiplicity] = out.get(fl.multiplicity, 0) + 1
        return dict(sorted(out.items()))

    def flat_of_pair(self, i: int, j: int) -> int:
        if i == j:
            raise ValidationError("a flat of a pair needs two distinct lines")
        if i > j:
            i, j = j, i
        return self._pair_to_flat[(i, j)]

    def flats_through_line(self, i: int) -> list[int]:
        return [fi for fi, fl in enumerate(self.flats) if i in fl.lines]


def build_lattice(arr: Arrangement) -> IntersectionLattice:
    """Group the pairwise intersection points into maximal rank-2 flats."""
    points: dict[Triple, set[int]] = {}
    for i, j in combinations(range(arr.n), 2):
        p = cross(arr.lines[i].coeffs, arr.lines[j].coeffs)
        key = normalize_triple(p)
        points.setdefault(key, set()).update((i, j))
    flats = tuple(
        Flat2(point=pt, lines=tuple(sorted(lines)))
        for pt, lines in sorted(points.items())
    )
    for fl in flats:
        for i in fl.lines:
            assert arr.lines[i].contains(fl.point)
    return IntersectionLattice(n=arr.n, flats=flats, label=arr.label, realized=True)


def lattice_from_incidence(
    n: int, flats: list[list[int]], label: str = ""
) -> IntersectionLattice:
    """Abstract (incidence-tier) lattice from the flats of multiplicity >= 3.

    Any line pair not covered by a listed flat becomes a double point.  The
    listed flats must be pairwise line-disjoint in pairs: two flats sharing
    two lines are rejected.
    """
    if n < 1:
        raise ValidationError("need n >= 1 lines")
    norm: list[tuple[int, ...]] = []
    for fl in flats:
        t = tuple(sorted(set(fl)))
        if len(t) != len(fl):
            raise ValidationError(f"flat {fl} repeats a line index")
        if len(t) < 2:
            raise ValidationError(f"flat {fl} needs at least two lines")
        if t[0] < 0 or t[-1] >= n:
            raise ValidationError(f"flat {fl} has line indices outside 0..{n - 1}")
        norm.append(t)
    covered: set[tuple[int, int]] = set()
    for t in norm:
        for pair in combinations(t, 2):
            if pair in covered:
                raise ValidationError(f"line pair {pair} lies in two declared flats")
            covered.add(pair)
    doubles = [
        (i, j) for i, j in combinations(range(n), 2) if (i, j) not in covered
    ]
    all_flats = sorted(norm + [tuple(p) for p in doubles])
    return IntersectionLattice(
        n=n,
        flats=tuple(Flat2(point=None, lines=t) for t in all_flats),
        label=label,
        realized=False,
    )


@dataclass(frozen=True)
class MultiplicityReport:
    """Flat-multiplicity predicates used by the monodromy vanishing criteria."""

    r: int
    has_flat_with_r_dividing: bool       # exists q >= 3 with r | q
    no_multiple_of_three_beyond_three: bool  # no flats of multiplicity 3r', r' > 1
    only_double_and_triple: bool


def multiplicity_predicates(lat: IntersectionLattice, r: int) -> MultiplicityReport:
    if r < 2:
        raise ValidationError(f"r must be >= 2, got {r}")
    census = lat.census
    return MultiplicityReport(
        r=r,
        has_flat_with_r_dividing=any(q >= 3 and q % r == 0 for q in census),
        no_multiple_of_three_beyond_three=not any(
            q % 3 == 0 and q > 3 for q in census
        ),
        only_double_and_triple=set(census) <= {2, 3},
    )


@dataclass(frozen=True)
class CollinearReport:
    """Which lines carry which flats of multiplicity >= 3."""

    high_flats: tuple[int, ...]                 # flat indices with multiplicity >= 3
    by_line: tuple[tuple[int, ...], ...]        # per line, the high flats through it
    some_line_contains_all: bool


def collinear_triples_report(lat: IntersectionLattice) -> CollinearReport:
    high = tuple(fi for fi, fl in enumerate(lat.flats) if fl.multiplicity >= 3)
    by_line = tuple(
        tuple(fi for fi in high if i in lat.flats[fi].lines) for i in range(lat.n)
    )
    return CollinearReport(
        high_flats=high,
        by_line=by_line,
        some_line_contains_all=any(len(b) == len(high) for b in by_line),
    )


# ---------------------------------------------------------------------------
# File input.  Two text forms for realized arrangements (JSON object or
# whitespace triples), plus a JSON incidence tier.
# ---------------------------------------------------------------------------

def parse_arrangement_text(text: str, label: str = "") -> Arrangement:
    """Whitespace-separated integer triples, one line each; '#' starts a comment."""
    coeffs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ValidationError(
                f"line {lineno}: expected 3 integers, got {len(parts)} tokens"
            )
        row = []
        for tok in parts:
            col = body.index(tok) + 1
            try:
                row.append(int(tok, 10))
            except ValueError:
                raise ValidationError(
                    f"line {lineno}, column {col}: non-integer token {tok!r}"
                ) from None
        coeffs.append(tuple(row))
    if not coeffs:
        raise ValidationError("no lines found in input")
    return Arrangement.make(coeffs, label=label)


def _parse_json_lines(obj: dict, source: str) -> Arrangement:
    lines = obj["lines"]
    if not isinstance(lines, list):
        raise ValidationError(f"{source}: 'lines' must be a list")
    coeffs = []
    for k, entry in enumerate(lines):
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or any(not isinstance(v, int) or isinstance(v, bool) for v in entry)
        ):
            raise ValidationError(
                f"{source}: lines[{k}] must be a triple of integers, got {entry!r}"
            )
        coeffs.append(tuple(entry))
    return Arrangement.make(coeffs, label=str(obj.get("label", "")))


def load_arrangement_source(text: str, source: str = "<input>"):
    """Parse either input tier.

    Returns ``("realized", Arrangement)`` or ``("incidence", IntersectionLattice)``.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{source}: invalid JSON at line {e.lineno}, column {e.colno}") from None
        if not isinstance(obj, dict):
            raise ValidationError(f"{source}: top-level JSON must be an object")
        if "lines" in obj:
            return "realized", _parse_json_lines(obj, source)
        if "flats" in obj:
            n = obj.get("n")
            if not isinstance(n, int) or isinstance(n, bool):
                raise ValidationError(f"{source}: incidence input needs an integer 'n'")
            flats = obj["flats"]
            if not isinstance(flats, list) or any(
                not isinstance(fl, list)
                or any(not isinstance(v, int) or isinstance(v, bool) for v in fl)
                for fl in flats
            ):
                raise ValidationError(f"{source}: 'flats' must be a list of integer lists")
            return "incidence", lattice_from_incidence(
                n, flats, label=str(obj.get("label", ""))
            )
        raise ValidationError(f"{source}: JSON object needs 'lines' or 'flats'")
    return "realized", parse_arrangement_text(text, label=source)


def load_arrangement_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_arrangement_source(fh.read(), source=path)

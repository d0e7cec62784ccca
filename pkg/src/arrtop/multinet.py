"""Multinets on line arrangements: axiom checking, enumeration, pencils.

A (k, d)-multinet is a partition of the lines into k >= 3 classes with
positive line weights m_H and a base locus of flats such that

  (1) every class has the same total weight d;
  (2) lines from different classes meet only at base-locus flats;
  (3) at a base flat the weighted count n_X of incident lines is the same
      for every class;
  (4) each class stays connected after removing the base locus (here: the
      graph on the class's lines with an edge for every shared flat off the
      base locus is connected).

The base locus is forced to be exactly the set of cross-class flats, so
candidates are described by (classes, weights) alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .arrangement import IntersectionLattice
from .errors import BudgetError, ConsistencyError, ValidationError


@dataclass(frozen=True)
class Multinet:
    classes: tuple[tuple[int, ...], ...]
    mult: tuple[int, ...]
    base_locus: tuple[int, ...]     # flat indices into the lattice
    n_x: tuple[int, ...]            # per base flat, the common weighted count
    weight: int                     # d

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def reduced(self) -> bool:
        return all(m == 1 for m in self.mult)

    def class_of(self, line: int) -> int:
        for ci, cl in enumerate(self.classes):
            if line in cl:
                return ci
        raise ValidationError(f"line {line} not in any class")

    def summary(self) -> dict:
        return {
            "k": self.k,
            "d": self.weight,
            "classes": [list(c) for c in self.classes],
            "mult": list(self.mult),
            "base_locus_size": len(self.base_locus),
            "reduced": self.reduced,
        }


@dataclass(frozen=True)
class MultinetVerdict:
    ok: bool
    failed_axiom: int | None = None   # 0 = structural, 1..4 = Definition axiom
    witness: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _canonical_classes(classes) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0]))


def _cross_class_flats(lat: IntersectionLattice, class_of: list[int]) -> list[int]:
    out = []
    for fi, fl in enumerate(lat.flats):
        seen = {class_of[i] for i in fl.lines}
        if len(seen) > 1:
            out.append(fi)
    return out


def verify_multinet(
    lat: IntersectionLattice,
    classes,
    mult,
    base_locus=None,
) -> tuple[MultinetVerdict, Multinet | None]:
    """Check Definition axioms (1)-(4); on success return the canonical Multinet.

    ``base_locus`` may be supplied (flat indices) and is then checked against
    the forced value; by default it is derived as the cross-class flats.
    """
    classes = _canonical_classes(classes)
    k = len(classes)
    if k < 3:
        return MultinetVerdict(False, 0, f"needs k >= 3 classes, got {k}"), None
    flat_list = [i for c in classes for i in c]
    if sorted(flat_list) != list(range(lat.n)):
        return MultinetVerdict(False, 0, "classes do not partition the lines"), None
    mult = tuple(int(m) for m in mult)
    if len(mult) != lat.n or any(m < 1 for m in mult):
        return MultinetVerdict(False, 0, "weights must be positive, one per line"), None
    g = 0
    for m in mult:
        g = gcd(g, m)
    if g != 1:
        return MultinetVerdict(False, 0, f"weights have common factor {g}"), None

    class_of = [0] * lat.n
    for ci, cl in enumerate(classes):
        for i in cl:
            class_of[i] = ci

    # Axiom (1): equal class weights.
    weights = [sum(mult[i] for i in cl) for cl in classes]
    if len(set(weights)) != 1:
        return MultinetVerdict(False, 1, f"class weights differ: {weights}"), None
    d = weights[0]

    derived_base = _cross_class_flats(lat, class_of)
    if base_locus is not None:
        given = sorted(set(base_locus))
        # Axiom (2): cross-class intersections must lie in the given locus.
        missing = [fi for fi in derived_base if fi not in set(given)]
        if missing:
            fl = lat.flats[missing[0]]
            return (
                MultinetVerdict(
                    False, 2, f"cross-class flat {missing[0]} (lines {fl.lines}) not in base locus"
                ),
                None,
            )
        extra = [fi for fi in given if fi not in set(derived_base)]
        if extra:
            # A mono-class flat in the locus makes axiom (3) unsatisfiable.
            return (
                MultinetVerdict(
                    False, 3, f"flat {extra[0]} in base locus meets only one class"
                ),
                None,
            )

    # Axiom (3): weighted counts agree across classes at each base flat.
    n_x = []
    for fi in derived_base:
        fl = lat.flats[fi]
        sums = [0] * k
        for i in fl.lines:
            sums[class_of[i]] += mult[i]
        if len(set(sums)) != 1:
            return (
                MultinetVerdict(
                    False, 3, f"flat {fi} (lines {fl.lines}) has class sums {sums}"
                ),
                None,
            )
        n_x.append(sums[0])

    # Axiom (4): per-class connectivity off the base locus.
    base_set = set(derived_base)
    for ci, cl in enumerate(classes):
        if len(cl) == 1:
            continue
        idx = {line: t for t, line in enumerate(cl)}
        parent = list(range(len(cl)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in combinations(cl, 2):
            if lat.flat_of_pair(a, b) not in base_set:
                ra, rb = find(idx[a]), find(idx[b])
                if ra != rb:
                    parent[ra] = rb
        roots = {find(t) for t in range(len(cl))}
        if len(roots) != 1:
            return (
                MultinetVerdict(
                    False, 4, f"class {ci} (lines {cl}) splits off the base locus"
                ),
                None,
            )

    mn = Multinet(
        classes=classes,
        mult=mult,
        base_locus=tuple(derived_base),
        n_x=tuple(n_x),
        weight=d,
    )
    pereira_yuzvinsky_check(mn)
    return MultinetVerdict(True), mn


def pereira_yuzvinsky_check(mn: Multinet) -> None:
    """Structure theorem guard: base locus > 1 forces k in {3, 4}, and k = 3
    when non-reduced.  A verified multinet violating this is a bug here."""
    if len(mn.base_locus) > 1:
        if mn.k not in (3, 4):
            raise ConsistencyError(f"verified {mn.k}-multinet with base locus > 1")
        if not mn.reduced and mn.k != 3:
            raise ConsistencyError(f"verified non-reduced {mn.k}-multinet")


def is_net(lat: IntersectionLattice, mn: Multinet) -> bool:
    """Reduced, and every base flat meets exactly one line of every class."""
    if not mn.reduced:
        return False
    class_of = [0] * lat.n
    for ci, cl in enumerate(mn.classes):
        for i in cl:
            class_of[i] = ci
    for fi in mn.base_locus:
        counts = [0] * mn.k
        for i in lat.flats[fi].lines:
            counts[class_of[i]] += 1
        if counts != [1] * mn.k:
            return False
    return True


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------

def enumerate_nets(lat: IntersectionLattice, k: int, max_lines: int = 15) -> list[Multinet]:
    """All k-nets up to class permutation.

    Backtracking on the class of each line.  A cross-class flat of a k-net
    has exactly one line of every class (so multiplicity exactly k); once
    k - 1 classes appear at a flat with one line left, that line's class is
    forced, which for k = 3 fills the Latin square cell by cell.
    """
    n = lat.n
    if n > max_lines:
        raise BudgetError(
            f"{k}-net search limited to {max_lines} lines, got {n}",
            required=n,
            budget=max_lines,
        )
    if k < 3:
        raise ValidationError(f"nets need k >= 3, got {k}")
    if n % k:
        return []  # the k classes of a k-net have equal size
    results: list[Multinet] = []
    class_of: list[int] = [-1] * n

    def flat_ok(fi: int) -> bool:
        """Net condition on one flat given the partial assignment."""
        fl = lat.flats[fi]
        counts = [0] * k
        unassigned = 0
        for i in fl.lines:
            c = class_of[i]
            if c < 0:
                unassigned += 1
            else:
                counts[c] += 1
        distinct = sum(1 for c in counts if c)
        if distinct >= 2:
            if max(counts) >= 2:
                return False  # cross-class flat with a doubled class
            if fl.multiplicity != k:
                return False
            if unassigned == 0 and distinct != k:
                return False
        return True

    def assign(i: int, c: int, trail: list[int]) -> bool:
        class_of[i] = c
        trail.append(i)
        for fi in lat.flats_through_line(i):
            if not flat_ok(fi):
                return False
            fl = lat.flats[fi]
            if fl.multiplicity != k:
                continue
            cs = [class_of[j] for j in fl.lines]
            present = {x for x in cs if x >= 0}
            if cs.count(-1) == 1 and len(present) == k - 1:
                j = fl.lines[cs.index(-1)]
                forced = next(x for x in range(k) if x not in present)
                if not assign(j, forced, trail):
                    return False
        return True

    def undo(trail: list[int]):
        while trail:
            class_of[trail.pop()] = -1

    def rec(used: int):
        i = next((j for j in range(n) if class_of[j] < 0), None)
        if i is None:
            if max(class_of) != k - 1:
                return
            classes = [[] for _ in range(k)]
            for j, c in enumerate(class_of):
                classes[c].append(j)
            verdict, mn = verify_multinet(lat, classes, [1] * n)
            if verdict and mn is not None and is_net(lat, mn):
                results.append(mn)
            return
        top = min(used + 1, k)
        for c in range(top):
            trail: list[int] = []
            if assign(i, c, trail):
                rec(max(used, c + 1))
            undo(trail)

    rec(0)
    return _dedup(results)


def enumerate_3nets(lat: IntersectionLattice, max_lines: int = 15) -> list[Multinet]:
    return enumerate_nets(lat, 3, max_lines=max_lines)


def enumerate_multinets(
    lat: IntersectionLattice,
    k: int = 3,
    max_mult: int = 3,
    reduced_only: bool = False,
    max_lines: int = 12,
) -> list[Multinet]:
    """All k-multinets with weights <= max_mult, up to class permutation.

    Exhaustive over canonical class assignments with dead-flat pruning
    (a completed cross-class flat must meet all k classes), then over
    weight vectors constrained flat by flat.
    """
    n = lat.n
    if n > max_lines:
        raise BudgetError(
            f"multinet search limited to {max_lines} lines, got {n}",
            required=n,
            budget=max_lines,
        )
    if k < 3:
        raise ValidationError(f"multinets need k >= 3, got {k}")
    results: list[Multinet] = []
    class_of = [-1] * n
    line_flats = [lat.flats_through_line(i) for i in range(n)]

    def flat_viable(fi: int) -> bool:
        fl = lat.flats[fi]
        present = set()
        unassigned = 0
        for i in fl.lines:
            c = class_of[i]
            if c < 0:
                unassigned += 1
            else:
                present.add(c)
        if len(present) <= 1:
            return True
        # Cross-class flats must eventually meet all k classes.
        return len(present) + unassigned >= k

    def rec(i: int, used: int):
        if i == n:
            if used != k:
                return
            classes = [[] for _ in range(k)]
            for j, c in enumerate(class_of):
                classes[c].append(j)
            _solve_weights(lat, classes, max_mult, reduced_only, results)
            return
        if used + (n - i) < k:
            return
        top = min(used + 1, k)
        for c in range(top):
            class_of[i] = c
            if all(flat_viable(fi) for fi in line_flats[i]):
                rec(i + 1, max(used, c + 1))
            class_of[i] = -1

    rec(0, 0)
    return _dedup(results)


def _solve_weights(lat, classes, max_mult, reduced_only, results):
    n = lat.n
    verdict, mn = verify_multinet(lat, classes, [1] * n)
    if verdict and mn is not None:
        results.append(mn)
    if reduced_only or max_mult < 2:
        return
    class_of = [0] * n
    for ci, cl in enumerate(classes):
        for i in cl:
            class_of[i] = ci
    base_set = set(_cross_class_flats(lat, class_of))
    mult = [0] * n

    def flats_done_ok(i: int) -> bool:
        for fi in lat.flats_through_line(i):
            if fi not in base_set:
                continue
            fl = lat.flats[fi]
            if any(mult[j] == 0 for j in fl.lines):
                continue
            sums: dict[int, int] = {}
            for j in fl.lines:
                sums[class_of[j]] = sums.get(class_of[j], 0) + mult[j]
            if len(set(sums.values())) != 1:
                return False
        return True

    def rec(i: int):
        if i == n:
            if all(m == 1 for m in mult):
                return  # reduced case already recorded
            verdict, mn = verify_multinet(lat, classes, list(mult))
            if verdict and mn is not None:
                results.append(mn)
            return
        for m in range(1, max_mult + 1):
            mult[i] = m
            if flats_done_ok(i):
                rec(i + 1)
            mult[i] = 0

    rec(0)


def _dedup(results: list[Multinet]) -> list[Multinet]:
    seen = set()
    out = []
    for mn in sorted(results, key=lambda m: (m.classes, m.mult)):
        key = (mn.classes, mn.mult)
        if key not in seen:
            seen.add(key)
            out.append(mn)
    return out


# ---------------------------------------------------------------------------
# Derived structures.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PencilSubspace:
    """The resonance subspace spanned by u_alpha - u_1 for a multinet's pencil."""

    k: int
    basis: tuple[tuple[int, ...], ...]  # k-1 integer vectors in Z^n


def pencil_subspace(mn: Multinet, n: int) -> PencilSubspace:
    us = []
    for cl in mn.classes:
        u = [0] * n
        for i in cl:
            u[i] = mn.mult[i]
        us.append(u)
    basis = tuple(
        tuple(b - a for a, b in zip(us[0], us[j])) for j in range(1, mn.k)
    )
    return PencilSubspace(k=mn.k, basis=basis)


def latin_square(lat: IntersectionLattice, mn: Multinet) -> list[list[int]]:
    """The d x d square of a 3-net: entry (p, q) is the index r in class 3
    of the line through the intersection of the p-th and q-th lines of
    classes 1 and 2."""
    if mn.k != 3 or not is_net(lat, mn):
        raise ValidationError("latin square encoding needs a 3-net")
    c1, c2, c3 = mn.classes
    pos3 = {line: r for r, line in enumerate(c3)}
    square = []
    for hp in c1:
        row = []
        for hq in c2:
            fl = lat.flats[lat.flat_of_pair(hp, hq)]
            third = [i for i in fl.lines if i in pos3]
            if len(third) != 1:
                raise ConsistencyError(
                    f"net flat {fl.lines} does not meet class 3 exactly once"
                )
            row.append(pos3[third[0]])
        square.append(row)
    return square


def find_pointed_multinets(
    lat: IntersectionLattice, max_mult: int = 3, max_lines: int = 12
) -> list[tuple[Multinet, int]]:
    """All (multinet, line) pairs with m_H > 1 and m_H | n_X for every base
    flat X on H; these are what produce translated subtori downstream."""
    out = []
    for mn in enumerate_multinets(lat, k=3, max_mult=max_mult, max_lines=max_lines):
        for h in range(lat.n):
            m_h = mn.mult[h]
            if m_h <= 1:
                continue
            on_h = [
                nx
                for fi, nx in zip(mn.base_locus, mn.n_x)
                if h in lat.flats[fi].lines
            ]
            if all(nx % m_h == 0 for nx in on_h):
                out.append((mn, h))
    return out

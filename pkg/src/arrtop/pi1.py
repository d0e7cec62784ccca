"""Fundamental groups of complements of complexified-real line arrangements.

The pipeline is: pick an affine chart in which every intersection point is
visible at a distinct x-coordinate (choose_chart_and_wire), sweep the
resulting wiring diagram left to right keeping a meridian word per strand
(braid_presentation), and derive finite-index subgroup presentations by
Reidemeister-Schreier rewriting (reidemeister_schreier).

Sweep bookkeeping: at a crossing of strands carrying words A_1..A_m
(bottom to top) the full twist contributes the relations
[A_1 A_2 ... A_m, A_i] = 1, and afterwards the strand block reverses with
words conjugated progressively,

    A'_i = (A_1 ... A_{m-i}) A_{m+1-i} (A_1 ... A_{m-i})^{-1},

which is the standard half-twist action on meridians.  Correctness is
certified downstream by abelianization plus twisted-homology cross-checks,
not by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arrangement import Arrangement, IntersectionLattice, build_lattice
from .errors import ArrtopError, ConsistencyError, ValidationError
from .intlinalg import smith_normal_form
from .words import Word, exponent_sums, gen, inv, mul


@dataclass(frozen=True)
class WiringEvent:
    x: Fraction
    wires: tuple[int, ...]  # crossing lines, bottom-to-top just left of the event


@dataclass(frozen=True)
class WiringDiagram:
    arr: Arrangement
    chart: tuple[Fraction, Fraction, Fraction]  # z' = z + a*x + b*y, then x' = x + g*y
    slopes: tuple[Fraction, ...]
    intercepts: tuple[Fraction, ...]
    initial_order: tuple[int, ...]        # line indices bottom-to-top left of all events
    events: tuple[WiringEvent, ...]


def _chart_candidates(budget: int):
    """Deterministic stream of rational (alpha, beta, gamma) chart parameters,
    small combinations first."""
    vals = [Fraction(0)]
    for den in (1, 2, 3):
        for num in range(1, 7):
            q = Fraction(num, den)
            if q not in vals:
                vals.append(q)
            if -q not in vals:
                vals.append(-q)
    count = 0
    for level in range(3 * (len(vals) - 1) + 1):
        for i in range(min(level, len(vals) - 1) + 1):
            for j in range(min(level - i, len(vals) - 1) + 1):
                k = level - i - j
                if k >= len(vals):
                    continue
                if count >= budget:
                    return
                count += 1
                yield vals[i], vals[j], vals[k]


def choose_chart_and_wire(
    arr: Arrangement,
    lat: IntersectionLattice | None = None,
    chart: tuple[Fraction, Fraction, Fraction] | None = None,
    budget: int = 5000,
) -> WiringDiagram:
    """Find a chart (z' = z + alpha*x + beta*y composed with x' = x + gamma*y)
    in which the arrangement is a valid wiring diagram: no line at infinity
    or vertical, no flat at infinity, all crossing x-coordinates distinct."""
    if lat is None:
        lat = build_lattice(arr)
    if not lat.realized:
        raise ValidationError("wiring diagrams need a realized (coordinate) arrangement")
    candidates = [chart] if chart is not None else _chart_candidates(budget)
    for alpha, beta, gamma in candidates:
        ok, diagram = _try_chart(
            arr, lat, Fraction(alpha), Fraction(beta), Fraction(gamma)
        )
        if ok:
            return diagram
    if chart is not None:
        raise ValidationError(f"chart {chart} is degenerate for this arrangement")
    raise ValidationError(
        "no valid chart found in the search budget; pass chart=(alpha, beta, gamma)"
    )


def _try_chart(arr, lat, alpha: Fraction, beta: Fraction, gamma: Fraction):
    slopes: list[Fraction] = []
    intercepts: list[Fraction] = []
    for ln in arr.lines:
        a, b, c = ln.coeffs
        a2 = a - c * alpha
        b2 = b - a * gamma - c * beta + c * alpha * gamma
        if b2 == 0:
            return False, None  # vertical (or at infinity) in this chart
        slopes.append(Fraction(-a2, b2))
        intercepts.append(Fraction(-c, b2))
    xs: dict[Fraction, int] = {}
    events = []
    for fi, fl in enumerate(lat.flats):
        p, q, r = fl.point
        z2 = r + alpha * p + beta * q
        if z2 == 0:
            return False, None  # flat at infinity
        x = Fraction(p + gamma * q, z2)
        if x in xs:
            return False, None  # two events share an x-coordinate
        xs[x] = fi
        events.append((x, fl.lines))
    events.sort(key=lambda e: e[0])
    x0 = (events[0][0] - 1) if events else Fraction(0)
    order = sorted(range(arr.n), key=lambda i: slopes[i] * x0 + intercepts[i])
    wired = tuple(
        WiringEvent(
            x=x,
            # Bottom-to-top just left of the crossing = slope descending.
            wires=tuple(sorted(lines, key=lambda i: -slopes[i])),
        )
        for x, lines in events
    )
    return True, WiringDiagram(
        arr=arr,
        chart=(alpha, beta, gamma),
        slopes=tuple(slopes),
        intercepts=tuple(intercepts),
        initial_order=tuple(order),
        events=wired,
    )


def half_twist(block: list[Word]) -> list[Word]:
    """Meridian words after a positive half twist of an adjacent block.

    Bottom-to-top words (A_1, ..., A_m) become
    B_i = (A_1 ... A_{m-i}) A_{m+1-i} (A_1 ... A_{m-i})^{-1}; applying the
    update twice conjugates every word by the block product, and the block
    product itself is preserved.
    """
    m = len(block)
    prefixes: list[Word] = [()] * m
    acc: Word = ()
    for i in range(m):
        prefixes[i] = acc
        acc = mul(acc, block[i])
    return [
        mul(prefixes[m - i], block[m - i], inv(prefixes[m - i]))
        for i in range(1, m + 1)
    ]


@dataclass(frozen=True)
class GroupPresentation:
    """A finite presentation with generators tagged by what they are meridians of."""

    num_gens: int
    relators: tuple[Word, ...]
    gen_tags: tuple[str, ...]
    meridian_of_line: tuple[int, ...] | None = None  # generator index per line

    def abelianization_matrix(self) -> list[list[int]]:
        return [exponent_sums(r, self.num_gens) for r in self.relators]

    def abelianization(self):
        """(free rank, torsion list) of the abelianized group."""
        if not self.relators:
            return self.num_gens, []
        snf = smith_normal_form(self.abelianization_matrix())
        return self.num_gens - snf.rank, snf.torsion


def braid_presentation(
    diagram: WiringDiagram, projectivize: bool = True
) -> GroupPresentation:
    """Van Kampen presentation from the wiring diagram sweep.

    Generators are the meridians of the strands over the leftmost fiber,
    tagged by line; with ``projectivize`` the product of all meridians (the
    loop around the line at infinity of the chart) is killed, giving the
    group of the projective complement.
    """
    n = diagram.arr.n
    pos_of_line = {ln: p for p, ln in enumerate(diagram.initial_order)}
    words: list[Word] = [gen(ln) for ln in diagram.initial_order]
    order = list(diagram.initial_order)
    relators: list[Word] = []
    for ev in diagram.events:
        positions = sorted(pos_of_line[ln] for ln in ev.wires)
        m = len(positions)
        if positions != list(range(positions[0], positions[0] + m)):
            raise ConsistencyError(
                f"crossing wires not adjacent at x = {ev.x}: positions {positions}"
            )
        base = positions[0]
        block = [words[base + i] for i in range(m)]
        expected = list(ev.wires)
        actual = [order[base + i] for i in range(m)]
        if actual != expected:
            raise ConsistencyError(
                f"wire order mismatch at x = {ev.x}: {actual} vs {expected}"
            )
        prod = mul(*block)
        for i in range(m - 1):
            relators.append(mul(prod, block[i], inv(prod), inv(block[i])))
        new_block = half_twist(block)
        for i in range(m):
            words[base + i] = new_block[i]
            order[base + i] = expected[m - 1 - i]
        for i, ln in enumerate(order):
            pos_of_line[ln] = i

    expected_relators = sum(len(ev.wires) - 1 for ev in diagram.events)
    if len(relators) != expected_relators:
        raise ConsistencyError(
            f"relator count {len(relators)} != sum of (multiplicity - 1) = {expected_relators}"
        )
    if projectivize:
        relators.append(mul(*(gen(ln) for ln in diagram.initial_order)))

    meridian = [0] * n
    for ln in range(n):
        meridian[ln] = ln
    pres = GroupPresentation(
        num_gens=n,
        relators=tuple(relators),
        gen_tags=tuple(f"x{ln}" for ln in range(n)),
        meridian_of_line=tuple(meridian),
    )
    rank, torsion = pres.abelianization()
    want = n - 1 if projectivize else n
    if rank != want or torsion:
        raise ConsistencyError(
            f"abelianization check failed: got Z^{rank} + {torsion}, want Z^{want}"
        )
    return pres


def pi1_projective(arr: Arrangement, chart=None) -> GroupPresentation:
    """Meridian presentation of the group of the projective complement."""
    lat = build_lattice(arr)
    return braid_presentation(choose_chart_and_wire(arr, lat, chart=chart))


# ---------------------------------------------------------------------------
# Reidemeister-Schreier.
# ---------------------------------------------------------------------------

@dataclass
class CosetSchreierData:
    """Presentation of the kernel of a surjection onto Z_n.

    ``full_gen_count``/``full_relator_count`` record the sizes before the
    Schreier-tree generators were discarded, for Euler bookkeeping.
    """

    index: int
    parent: GroupPresentation
    hom: tuple[int, ...]
    presentation: GroupPresentation
    transversal: tuple[Word, ...]
    schreier_gens: tuple[tuple[int, int], ...]  # (coset, parent generator)
    full_gen_count: int
    full_relator_count: int

    def abelianization_snf(self):
        mat = self.presentation.abelianization_matrix()
        if not mat:
            return None
        return smith_normal_form(mat)


def reidemeister_schreier(
    pres: GroupPresentation, images, modulus: int
) -> CosetSchreierData:
    """Presentation of ker(pi -> Z_modulus), generator g_j -> images[j].

    The coset transversal is built by breadth-first search over the coset
    graph (generators in index order), which for the diagonal homomorphism
    x_H -> 1 gives the transversal {x_0^i}.
    """
    images = tuple(int(v) % modulus for v in images)
    if len(images) != pres.num_gens:
        raise ValidationError("need one image per generator")
    if modulus < 1:
        raise ValidationError(f"modulus must be >= 1, got {modulus}")
    from math import gcd

    g = modulus
    for v in images:
        g = gcd(g, v)
    if g != 1:
        raise ValidationError(
            f"homomorphism not surjective: image is the subgroup {g}*Z_{modulus} "
            f"of index {g}"
        )
    if modulus == 1:
        return CosetSchreierData(
            index=1,
            parent=pres,
            hom=images,
            presentation=pres,
            transversal=((),),
            schreier_gens=tuple((0, j) for j in range(pres.num_gens)),
            full_gen_count=pres.num_gens,
            full_relator_count=len(pres.relators),
        )

    # BFS Schreier transversal over positive generator edges (positive steps
    # reach every coset of a finite cyclic group); for the diagonal
    # homomorphism this yields exactly {g_0^i}.
    transversal: list[Word | None] = [None] * modulus
    transversal[0] = ()
    tree_edges: set[tuple[int, int]] = set()  # (coset, generator) tree edges
    queue = [0]
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        for j in range(pres.num_gens):
            nxt = (c + images[j]) % modulus
            if transversal[nxt] is None:
                transversal[nxt] = mul(transversal[c], (j + 1,))
                tree_edges.add((c, j))
                queue.append(nxt)
    if any(t is None for t in transversal):
        raise ConsistencyError("coset graph not connected despite surjectivity check")

    sgens: list[tuple[int, int]] = []
    sgen_index: dict[tuple[int, int], int] = {}
    for c in range(modulus):
        for j in range(pres.num_gens):
            if (c, j) not in tree_edges:
                sgen_index[(c, j)] = len(sgens)
                sgens.append((c, j))

    def rewrite(start: int, word: Word) -> Word:
        out: list[int] = []
        c = start
        for x in word:
            j = abs(x) - 1
            if x > 0:
                key = (c, j)
                c = (c + images[j]) % modulus
                if key in sgen_index:
                    s = sgen_index[key] + 1
                    if out and out[-1] == -s:
                        out.pop()
                    else:
                        out.append(s)
            else:
                c = (c - images[j]) % modulus
                key = (c, j)
                if key in sgen_index:
                    s = -(sgen_index[key] + 1)
                    if out and out[-1] == -s:
                        out.pop()
                    else:
                        out.append(s)
        return tuple(out)

    relators = []
    for c in range(modulus):
        for r in pres.relators:
            relators.append(rewrite(c, r))

    tags = tuple(
        f"s{c}_{pres.gen_tags[j] if pres.gen_tags else j}" for c, j in sgens
    )
    sub = GroupPresentation(
        num_gens=len(sgens),
        relators=tuple(relators),
        gen_tags=tags,
        meridian_of_line=None,
    )
    return CosetSchreierData(
        index=modulus,
        parent=pres,
        hom=images,
        presentation=sub,
        transversal=tuple(transversal),
        schreier_gens=tuple(sgens),
        full_gen_count=modulus * pres.num_gens,
        full_relator_count=modulus * len(pres.relators),
    )

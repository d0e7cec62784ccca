"""One-stop analysis of a single arrangement, with caching.

Wraps either a realized arrangement (full pipeline) or an incidence-tier
lattice (combinatorial computations only) and exposes every invariant the
CLI reports.  Pure and deterministic: repeated calls return identical
values, and two analyses never share mutable state.
"""

from __future__ import annotations

from functools import cached_property

from .arrangement import (
    Arrangement,
    IntersectionLattice,
    build_lattice,
    collinear_triples_report,
)
from .boundary import (
    b1_boundary_U,
    boundary_cover_classifier,
    build_graph,
    delta_boundary_F,
)
from .errors import ConsistencyError, ValidationError
from .jumploci import (
    MilnorFiberGroup,
    all_e_r,
    milnor_h1_decomposition,
    modular_bound_check,
)
from .milnor import (
    beta4_equalities,
    delta_conjectural,
    delta_triple_points,
    multinet_lower_bounds,
    validate_beta3,
)
from .multinet import (
    enumerate_multinets,
    enumerate_nets,
    find_pointed_multinets,
    is_net,
)
from .osalgebra import beta_p
from .pi1 import braid_presentation, choose_chart_and_wire

DEFAULT_PRIMES = (2, 3, 5)
SCHEMA_VERSION = 1


def lattice_is_essential(lat: IntersectionLattice) -> bool:
    if lat.n < 3:
        return False
    return not any(fl.multiplicity == lat.n for fl in lat.flats)


class ArrangementAnalysis:
    """Lazy, cached computation of every invariant for one arrangement."""

    def __init__(
        self,
        source,
        chart=None,
        max_weight: int = 3,
        net_search_bound: int = 15,
        multinet_search_bound: int = 12,
    ):
        if isinstance(source, Arrangement):
            self.arr: Arrangement | None = source
            self._lat = None
        elif isinstance(source, IntersectionLattice):
            self.arr = None
            self._lat = source
        else:
            raise ValidationError(f"cannot analyse {type(source).__name__}")
        self.chart = chart
        self.max_weight = max_weight
        self.net_search_bound = net_search_bound
        self.multinet_search_bound = multinet_search_bound

    @property
    def realized(self) -> bool:
        return self.arr is not None

    @property
    def label(self) -> str:
        return self.arr.label if self.arr is not None else self._lat.label

    @cached_property
    def lattice(self) -> IntersectionLattice:
        return build_lattice(self.arr) if self.arr is not None else self._lat

    @property
    def n(self) -> int:
        return self.lattice.n

    @cached_property
    def essential(self) -> bool:
        if self.arr is not None:
            return self.arr.is_essential
        return lattice_is_essential(self.lattice)

    def beta(self, p: int) -> int:
        return beta_p(self.lattice, p)

    def beta_table(self, primes=DEFAULT_PRIMES) -> dict[int, int]:
        return {p: self.beta(p) for p in primes}

    @cached_property
    def collinear_report(self):
        return collinear_triples_report(self.lattice)

    @cached_property
    def multinets(self):
        """All 3-multinets with weights <= max_weight, plus k-nets for k = 3, 4."""
        found = list(
            enumerate_multinets(
                self.lattice,
                k=3,
                max_mult=self.max_weight,
                max_lines=self.multinet_search_bound,
            )
        )
        keys = {(mn.classes, mn.mult) for mn in found}
        if self.n <= self.net_search_bound:
            for k in (3, 4):
                for mn in enumerate_nets(self.lattice, k, max_lines=self.net_search_bound):
                    if (mn.classes, mn.mult) not in keys:
                        keys.add((mn.classes, mn.mult))
                        found.append(mn)
        return found

    @cached_property
    def nets3(self):
        return enumerate_nets(self.lattice, 3, max_lines=self.net_search_bound)

    @cached_property
    def has_4net(self) -> bool:
        return bool(enumerate_nets(self.lattice, 4, max_lines=self.net_search_bound))

    @cached_property
    def pointed(self):
        return find_pointed_multinets(
            self.lattice,
            max_mult=self.max_weight,
            max_lines=self.multinet_search_bound,
        )

    # -- realized-tier invariants --------------------------------------------

    def _need_realized(self, what: str):
        if not self.realized:
            raise ValidationError(f"{what} needs a realized arrangement (incidence-tier input)")

    @cached_property
    def wiring(self):
        self._need_realized("a wiring diagram")
        return choose_chart_and_wire(self.arr, self.lattice, chart=self.chart)

    @cached_property
    def presentation(self):
        return braid_presentation(self.wiring)

    @cached_property
    def e_r(self) -> dict[int, int]:
        return all_e_r(self.presentation, self.n)

    @cached_property
    def delta_computed(self):
        b1, delta = milnor_h1_decomposition(self.e_r, self.n)
        return delta

    @cached_property
    def b1_F(self) -> int:
        b1, _ = milnor_h1_decomposition(self.e_r, self.n)
        return b1

    @cached_property
    def milnor_fiber(self) -> MilnorFiberGroup:
        self._need_realized("the Milnor fiber group")
        mfg = MilnorFiberGroup(self.presentation, self.n)
        # Central cross-check: the cyclotomic route and the Smith normal
        # form of the cyclic-cover abelianization are independent pipelines.
        if mfg.b1 != self.b1_F:
            raise ConsistencyError(
                f"b_1 of the fiber disagrees between routes: Fox {self.b1_F}, SNF {mfg.b1}"
            )
        return mfg

    def depth_counts(self, r: int, depths=(1, 2), budget: int = 100_000):
        table = self.milnor_fiber.depth_table(r, budget=budget)
        return {s: sum(1 for v in table.values() if v >= s) for s in depths}

    # -- formula confrontation ------------------------------------------------

    @cached_property
    def delta_corollary(self):
        census = self.lattice.census
        if set(census) <= {2, 3}:
            b3 = self.beta(3)
            validate_beta3(self.lattice, b3)
            return delta_triple_points(self.lattice, b3)
        return None

    @cached_property
    def delta_conj(self):
        if not self.essential:
            return None
        return delta_conjectural(self.lattice, self.beta(2), self.beta(3))

    def bound_claims(self):
        e = self.e_r if self.realized else None
        return multinet_lower_bounds(self.multinets, e_values=e)

    def four_net_claim(self):
        return beta4_equalities(
            self.has_4net, self.beta(2), self.e_r if self.realized else None
        )

    def modular_bounds(self, primes=DEFAULT_PRIMES):
        out = []
        for p in primes:
            s = 1
            while self.n % (p**s) == 0 and p**s <= self.n:
                out.append(
                    modular_bound_check(self.presentation, self.n, self.beta(p), p, s)
                )
                s += 1
        return out

    # -- boundary --------------------------------------------------------------

    @cached_property
    def graph(self):
        return build_graph(self.lattice)

    @cached_property
    def b1_boundary(self) -> int:
        return b1_boundary_U(self.graph)

    @cached_property
    def delta_boundary(self):
        return delta_boundary_F(self.lattice, self.n)

    @cached_property
    def cover_classifier(self):
        return boundary_cover_classifier(self.graph, self.lattice)


def build_report(
    analysis: ArrangementAnalysis,
    primes=DEFAULT_PRIMES,
    cv_order: int | None = None,
    cv_budget: int = 100_000,
) -> dict:
    """The full JSON-ready report; incidence-tier inputs get explicit
    ``skipped`` entries for the pi_1-dependent blocks."""
    a = analysis
    lat = a.lattice
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "label": a.label,
        "tier": "realized" if a.realized else "incidence",
        "n": a.n,
        "essential": a.essential,
        "lattice": {
            "flat_count": len(lat.flats),
            "census": {str(q): c for q, c in lat.census.items()},
            "high_flats_on_common_line": a.collinear_report.some_line_contains_all,
        },
        "beta": {str(p): a.beta(p) for p in primes},
        "multinets": {
            "max_weight": a.max_weight,
            "count": len(a.multinets),
            "three_net_count": len(a.nets3),
            "has_4net": a.has_4net,
            "items": [mn.summary() | {"net": is_net(lat, mn)} for mn in a.multinets],
            "pointed": [
                {"line": h, "m_H": mn.mult[h], "classes": [list(c) for c in mn.classes]}
                for mn, h in a.pointed
            ],
        },
        "boundary": {
            "graph": {
                "V": a.graph.vertex_count,
                "E": a.graph.edge_count,
                "b1": a.graph.b1,
            },
            "b1_boundary_U": a.b1_boundary,
            "delta_boundary_F": a.delta_boundary.as_json(),
            "delta_boundary_F_display": str(a.delta_boundary),
            "b1_boundary_F": a.delta_boundary.degree,
            "cover_classifier": a.cover_classifier.as_json(),
            "torsion_boundary_F": "not computed (outside the scope of the incidence data)",
        },
        "notes": [],
    }

    conj = a.delta_conj
    cor = a.delta_corollary
    delta_block: dict = {
        "corollary_triple_points": cor.as_json() if cor is not None else None,
        "conjectural": conj.unwrap().as_json() if conj is not None else None,
    }
    if conj is not None:
        report["notes"].append("the 'conjectural' monodromy factorization is CONJECTURAL")

    if a.realized:
        delta_block["computed"] = a.delta_computed.as_json()
        delta_block["computed_display"] = str(a.delta_computed)
        delta_block["agreement"] = {
            "corollary": None if cor is None else cor == a.delta_computed,
            "conjectural": None if conj is None else conj.unwrap() == a.delta_computed,
        }
        report["e_r"] = {str(r): v for r, v in sorted(a.e_r.items())}
        snf = a.milnor_fiber
        report["b1_F"] = a.b1_F
        report["h1_F"] = {"rank": snf.b1, "torsion": snf.torsion}
        report["modular_bounds"] = [
            {
                "p": mb.p,
                "s": mb.s,
                "e": mb.e_value,
                "beta": mb.beta_value,
                "holds": mb.holds,
            }
            for mb in a.modular_bounds(primes)
        ]
        if cv_order is not None:
            counts = a.depth_counts(cv_order, budget=cv_budget)
            report["cv_counts"] = {
                "order": cv_order,
                "depth_1": counts[1],
                "depth_2": counts[2],
            }
        else:
            report["cv_counts"] = {"skipped": "pass --cv-order to scan torsion points"}
    else:
        skipped = "skipped: incidence-tier input has no realization, pi_1 unavailable"
        delta_block["computed"] = None
        report["e_r"] = skipped
        report["b1_F"] = skipped
        report["h1_F"] = skipped
        report["modular_bounds"] = skipped
        report["cv_counts"] = skipped
    report["delta"] = delta_block

    report["bound_claims"] = [
        {"r": c.r, "bound": c.bound, "source": c.source, "checked": c.checked}
        for c in a.bound_claims()
    ]
    fn = a.four_net_claim()
    report["four_net_equalities"] = (
        None
        if fn is None
        else {"beta2": fn.beta2, "e2_matches": fn.checked_e2, "e4_matches": fn.checked_e4}
    )
    return report

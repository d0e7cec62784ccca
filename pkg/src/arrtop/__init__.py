"""Exact-arithmetic invariants of complex line arrangements.

The package computes, over the rationals and cyclotomic integers:
intersection lattices, Orlik-Solomon/Aomoto resonance and the mod-p
diagonal resonance numbers, multinets and nets, fundamental groups of the
projective complements of complexified-real arrangements, cyclotomic
monodromy exponents and the characteristic polynomial of the Milnor fiber
monodromy, torsion-point counts in characteristic varieties, and
boundary-manifold invariants.
"""

from .arrangement import (
    Arrangement,
    Flat2,
    IntersectionLattice,
    ProjLine,
    build_lattice,
    collinear_triples_report,
    lattice_from_incidence,
    load_arrangement_file,
    multiplicity_predicates,
)
from .boundary import build_graph, b1_boundary_U, delta_boundary_F
from .errors import ArrtopError, BudgetError, ConsistencyError, ValidationError
from .jumploci import (
    Character,
    MilnorFiberGroup,
    all_e_r,
    e_r,
    milnor_h1_decomposition,
    twisted_h1,
    twisted_h1_dim,
)
from .milnor import (
    CharPolyFactorization,
    ConjecturalFactorization,
    delta_conjectural,
    delta_triple_points,
)
from .multinet import (
    Multinet,
    enumerate_3nets,
    enumerate_multinets,
    enumerate_nets,
    find_pointed_multinets,
    is_net,
    latin_square,
    pencil_subspace,
    verify_multinet,
)
from .osalgebra import (
    FieldSpec,
    aomoto_h1,
    aomoto_h1_dim,
    beta_p,
    build_os_truncation,
    cup,
    resonance_membership,
)
from .pi1 import (
    GroupPresentation,
    braid_presentation,
    choose_chart_and_wire,
    pi1_projective,
    reidemeister_schreier,
)
from .pipeline import ArrangementAnalysis, build_report

__version__ = "0.1.0"

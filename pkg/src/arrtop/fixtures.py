"""Built-in arrangements: the worked examples every other module is tested on.

Realized fixtures carry rational coordinates and run the full pipeline;
incidence fixtures carry only the rank-2 lattice (no known convenient
rational realization) and run the lattice/resonance/multinet/boundary tiers.
"""

from __future__ import annotations

from .arrangement import Arrangement, IntersectionLattice, lattice_from_incidence
from .errors import ValidationError

# A pair of 6-line arrangements with census {3: 2, 2: 9}; the two triple
# points are collinear with an arrangement line in the first but not in the
# second, so the lattices are non-isomorphic.
FALK_A = [
    (0, 0, 1),   # z
    (1, 0, 0),   # x
    (1, 0, -1),  # x - z
    (0, 1, 0),   # y
    (0, 1, -1),  # y - z
    (1, -1, -2),  # x - y - 2z
]

FALK_A_PRIME = [
    (0, 0, 1),   # z
    (1, 0, 0),   # x
    (0, 1, 0),   # y
    (1, 1, -1),  # x + y - z
    (1, -1, 0),  # x - y
    (1, 1, -2),  # x + y - 2z
]

# Generic 3-slice of the rank-3 braid arrangement; supports a (3,2)-net.
BRAID = [
    (1, 0, 0),   # x
    (0, 1, 0),   # y
    (0, 0, 1),   # z
    (1, -1, 0),  # x - y
    (1, 0, -1),  # x - z
    (0, 1, -1),  # y - z
]

# B3 reflection arrangement (9 lines); supports a non-reduced (3,4)-multinet
# with weight 2 on the three coordinate lines.
B3 = [
    (1, 0, 0),    # x
    (0, 1, 0),    # y
    (0, 0, 1),    # z
    (1, -1, 0),   # x - y
    (1, 1, 0),    # x + y
    (1, 0, -1),   # x - z
    (1, 0, 1),    # x + z
    (0, 1, -1),   # y - z
    (0, 1, 1),    # y + z
]

PENCIL3 = [
    (1, 0, 0),   # x
    (0, 1, 0),   # y
    (1, -1, 0),  # x - y
]

GENERIC4 = [
    (1, 0, 0),   # x
    (0, 1, 0),   # y
    (0, 0, 1),   # z
    (1, 1, 1),   # x + y + z
]

# 12-line simplicial arrangement supporting a reduced (3,4)-multinet that is
# not a 3-net (two lines of every class pass through the multiplicity-6
# point at infinity of the vertical direction).
TRIPLE_WEAVE_12 = [
    (0, 0, 1),    # z                 class 0
    (1, 0, 0),    # x                 class 0
    (0, 1, -1),   # y - z             class 0
    (0, 1, 1),    # y + z             class 0
    (2, 0, 1),    # 2x + z            class 1
    (2, 0, -3),   # 2x - 3z           class 1
    (2, -2, 1),   # 2x - 2y + z       class 1
    (2, 2, 1),    # 2x + 2y + z       class 1
    (2, 0, 3),    # 2x + 3z           class 2
    (2, 0, -1),   # 2x - z            class 2
    (2, -2, -1),  # 2x - 2y - z       class 2
    (2, 2, -1),   # 2x + 2y - z       class 2
]

TRIPLE_WEAVE_CLASSES = ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))


def _hesse_incidence() -> tuple[int, list[list[int]], list[tuple[int, ...]]]:
    """Hessian arrangement combinatorics via the affine plane AG(2, 3).

    The 12 arrangement lines are the 12 lines of AG(2, 3); the 9 points of
    the plane become the multiplicity-4 flats.  The four parallel classes
    of AG(2, 3) are the classes of the (4, 3)-net.
    """
    points = [(x, y) for x in range(3) for y in range(3)]
    lines = []
    classes: list[list[int]] = [[], [], [], []]
    # Lines y = m x + b (classes m = 0, 1, 2) and verticals x = c (class 3).
    for m in range(3):
        for b in range(3):
            idx = len(lines)
            lines.append([points.index((x, (m * x + b) % 3)) for x in range(3)])
            classes[m].append(idx)
    for c in range(3):
        idx = len(lines)
        lines.append([points.index((c, y)) for y in range(3)])
        classes[3].append(idx)
    flats = [
        [li for li, pts in enumerate(lines) if pi in pts] for pi in range(9)
    ]
    return 12, flats, tuple(tuple(sorted(c)) for c in classes)


_HESSE_N, _HESSE_FLATS, HESSE_NET_CLASSES = _hesse_incidence()

_REALIZED = {
    "falk_A": FALK_A,
    "falk_A_prime": FALK_A_PRIME,
    "braid": BRAID,
    "b3": B3,
    "pencil3": PENCIL3,
    "generic4": GENERIC4,
    "triple_weave_12": TRIPLE_WEAVE_12,
}

_INCIDENCE = {
    "hesse": (_HESSE_N, _HESSE_FLATS),
}


def fixture_names() -> list[str]:
    return sorted(_REALIZED) + sorted(_INCIDENCE)


def get_arrangement(name: str) -> Arrangement:
    if name not in _REALIZED:
        raise ValidationError(
            f"no realized fixture {name!r} (have {', '.join(fixture_names())})"
        )
    return Arrangement.make(_REALIZED[name], label=name)


def get_fixture(name: str):
    """Return ("realized", Arrangement) or ("incidence", IntersectionLattice)."""
    if name in _REALIZED:
        return "realized", get_arrangement(name)
    if name in _INCIDENCE:
        n, flats = _INCIDENCE[name]
        return "incidence", lattice_from_incidence(n, flats, label=name)
    raise ValidationError(
        f"unknown fixture {name!r} (have {', '.join(fixture_names())})"
    )


def fixture_json(name: str) -> dict:
    """The on-disk JSON form of a fixture (both tiers)."""
    tier, obj = get_fixture(name)
    if tier == "realized":
        return {"label": name, "lines": [list(t) for t in _REALIZED[name]]}
    lat: IntersectionLattice = obj
    return {
        "label": name,
        "n": lat.n,
        "flats": [list(fl.lines) for fl in lat.flats if fl.multiplicity >= 3],
    }

"""
Torsion subgroups over Q, quadratic fields and multiquadratic towers.

Work happens on the short model y^2 = x^3 + A*x + B. The 2-primary part is
the halving closure of E[2] over the field. The odd part over a tower F is
the direct sum, over the quadratic subfields Q(sqrt(d)) of F and Q itself,
of the odd rational torsion of the twists E^d, each mapped into E(F). The
results are checked against the classification tables and the generators
are carried back to the input model.
"""

from functools import lru_cache
from typing import Iterable, Optional

from src.config import get_config
from src.core.curve import Curve, Point
from src.core.isomorphism import Isomorphism
from src.core.transforms import quadratic_twist, to_short_form, untwist_point
from src.errors import DomainError, InconsistencyError
from src.fields.rationals import rational_sqrt
from src.fields.roots import rational_roots
from src.fields.tower import QQ, TowerField
from src.logging_config import get_logger
from src.torsion.division import division_polynomial
from src.torsion.groups import GroupStructure, TorsionData
from src.torsion.halving import two_primary_points
from src.torsion.reduction import torsion_order_bound

logger = get_logger(__name__)

# Odd prime powers that occur in rational torsion, searched per prime
_ODD_SEARCH = {3: (9, 3), 5: (5,), 7: (7,)}

Component = tuple[Point, int]


@lru_cache(maxsize=1024)
def odd_rational_components(E: Curve) -> tuple[Component, ...]:
    """
    Cyclic generators of the odd part of E(Q)_tors, one per prime.

    E must be a short model. Each p-part is cyclic over Q, so the root of
    the division polynomial with the largest order generates it.
    """
    if not E.is_short:
        raise DomainError(f"Expected a short model, got {E}")
    bound = torsion_order_bound(E)
    components = []
    for p, powers in _ODD_SEARCH.items():
        if bound and bound % p:
            continue
        for n in powers:
            if bound and bound % n:
                continue
            best: Optional[Component] = None
            for x0 in sorted(rational_roots(division_polynomial(E, n))):
                y0 = rational_sqrt(E.cubic()(x0))
                if y0 is None:
                    continue
                P = E.point(x0, y0)
                order = E.order(P, cap=n)
                if order and (best is None or order > best[1]):
                    best = (P, order)
            if best:
                components.append(best)
                break
    return tuple(components)


def _two_primary_components(E: Curve, points: set[Point], F: TowerField) -> list[Component]:
    """Split the 2-primary group given by its points into at most two cyclic factors."""
    if len(points) == 1:
        return []
    cap = len(points)
    orders = {P: E.order(P, cap=cap) for P in points}
    ranked = sorted(points, key=lambda P: (-orders[P], P.sort_key()))
    g1 = ranked[0]
    m = orders[g1]
    if m == len(points):
        return [(g1, m)]
    n = len(points) // m
    multiples = set()
    Q = Point(F)
    for _ in range(m):
        multiples.add(Q)
        Q = E.add(Q, g1)
    for g2 in sorted((P for P in points if orders[P] == n), key=Point.sort_key):
        R, independent = g2, True
        for _ in range(1, n):
            if R in multiples:
                independent = False
                break
            R = E.add(R, g2)
        if independent:
            return [(g2, n), (g1, m)]
    raise InconsistencyError(f"2-primary group of order {len(points)} over {F} is not C{n}xC{m}")


def _assemble(E: Curve, F: TowerField, components: Iterable[Component]) -> TorsionData:
    """Invariant factors and generators from cyclic components of coprime-free orders."""
    by_prime: dict[int, list[Component]] = {}
    for P, order in components:
        k, p = order, 2
        while k > 1:
            while k % p:
                p += 1
            pe = 1
            while k % p == 0:
                k //= p
                pe *= p
            by_prime.setdefault(p, []).append((E.multiply(order // pe, P), pe))
    big, small = Point(F), Point(F)
    n = m = 1
    for p, parts in by_prime.items():
        parts.sort(key=lambda c: -c[1])
        if len(parts) > 2:
            raise InconsistencyError(f"{p}-part over {F} has rank {len(parts)}")
        big = E.add(big, parts[0][0])
        m *= parts[0][1]
        if len(parts) == 2:
            small = E.add(small, parts[1][0])
            n *= parts[1][1]
    structure = GroupStructure(n=n, m=m)
    if m == 1:
        generators = ()
    elif n == 1:
        generators = (big,)
    else:
        generators = (small, big)
    return TorsionData(E, F, structure, generators)


def _map_back(data: TorsionData, curve: Curve, iso: Isomorphism) -> TorsionData:
    inverse = iso.inverse()
    result = TorsionData(
        curve,
        data.field,
        data.structure,
        tuple(inverse.map_point(g) for g in data.generators),
    )
    result.check()
    return result


def _odd_components_over(short: Curve, F: TowerField) -> list[Component]:
    components = [(P.promote(F), k) for P, k in odd_rational_components(short)]
    for d in F.quadratic_subfields():
        twist = quadratic_twist(short, d)
        for P, k in odd_rational_components(twist):
            components.append((untwist_point(P, d, F), k))
    return components


def _torsion_on_short_model(short: Curve, F: TowerField, cap: int) -> TorsionData:
    points = two_primary_points(short, F, cap)
    components = _two_primary_components(short, points, F)
    components += _odd_components_over(short, F)
    data = _assemble(short, F, components)
    data.check()
    return data


def _tables():
    # Deferred: the tables module lives with the growth code
    from src.growth.tables import get_tables

    return get_tables()


@lru_cache(maxsize=1024)
def torsion_over_Q(E: Curve) -> TorsionData:
    short, iso = to_short_form(E)
    data = _map_back(_torsion_on_short_model(short, QQ, 16), E, iso)
    if data.structure not in _tables().rational_torsion:
        raise InconsistencyError(f"{data.structure} over Q is not a possible torsion group")
    logger.debug(f"E(Q)_tors = {data.structure} for {E}")
    return data


@lru_cache(maxsize=4096)
def torsion_over_quadratic(E: Curve, d: int) -> TorsionData:
    if d == 1:
        raise DomainError("d = 1 does not give a quadratic field")
    K = TowerField.of(d)
    short, iso = to_short_form(E)
    data = _torsion_on_short_model(short, K, get_config().quadratic_two_power_cap)
    data = _map_back(data, E, iso)
    tables = _tables()
    H = data.structure
    if H not in tables.quadratic_torsion:
        raise InconsistencyError(f"{H} over {K} is not a possible quadratic torsion group")
    G = torsion_over_Q(E).structure
    if H not in tables.quadratic_growth.get(G, frozenset()):
        raise InconsistencyError(f"{G} over Q cannot grow to {H} over {K}")
    return data


def torsion_over_tower(E: Curve, F: TowerField) -> TorsionData:
    if F.rank == 0:
        return torsion_over_Q(E)
    if F.rank == 1:
        return torsion_over_quadratic(E, F.generators[0])
    short, iso = to_short_form(E)
    data = _torsion_on_short_model(short, F, get_config().tower_two_power_cap)
    data = _map_back(data, E, iso)
    H = data.structure
    if not any(H.embeds_in(T) for T in _tables().multiquadratic_torsion):
        raise InconsistencyError(f"{H} over {F} does not embed in a possible tower group")
    return data

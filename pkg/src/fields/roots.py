"""
Root finding restricted to what torsion computations need.

Rational roots of high degree polynomials (division polynomials reach
degree 40) are found modularly: roots modulo a few primes, a p-adic lift of
the roots from the prime with the fewest of them, and exact verification of
every candidate. Quartics are factored over Q with the resolvent cubic, and
roots inside a multiquadratic field come from that factorization.
"""

from fractions import Fraction
from typing import Optional

from sympy import Poly, divisors, nextprime, symbols

from src.config import get_config
from src.errors import DomainError, InconsistencyError
from src.fields.polynomial import Polynomial, linear, product
from src.fields.rationals import squarefree_label
from src.fields.tower import QQ, TowerElement, TowerField, is_square_with_witness
from src.logging_config import get_logger

logger = get_logger(__name__)

_X = symbols("x")

# Candidate primes tried before concluding the input is not squarefree
_MAX_PRIME_ATTEMPTS = 24


def _eval_mod(coeffs: list[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _poly_mod(coeffs: list[int], p: int) -> Poly:
    return Poly(list(reversed(coeffs)), _X, modulus=p)


def _roots_mod_p(f: Poly, p: int) -> list[int]:
    """Distinct roots of f in GF(p), from gcd(f, x^p - x)."""
    x = Poly(_X, _X, modulus=p)
    power, base, e = Poly(1, _X, modulus=p), x, p
    while e:
        if e & 1:
            power = (power * base).rem(f)
        base = (base * base).rem(f)
        e >>= 1
    split = f.gcd(power - x)
    if split.degree() <= 0:
        return []
    roots = []
    for factor, _ in split.factor_list()[1]:
        a, b = (int(c) % p for c in factor.all_coeffs())
        roots.append(-b * pow(a, -1, p) % p)
    return sorted(roots)


def _squarefree_mod_p(f: Poly) -> bool:
    return f.gcd(f.diff(_X)).degree() == 0


def _hensel_lift(coeffs: list[int], r: int, p: int, bound: int) -> tuple[int, int]:
    """Lift a simple root r mod p to a root mod p^(2^k) > bound."""
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    m = p
    while m <= bound:
        m = m * m
        fr = _eval_mod(coeffs, r, m)
        dfr = _eval_mod(deriv, r, m)
        r = (r - fr * pow(dfr, -1, m)) % m
    return r, m


def _symmetric(r: int, m: int) -> int:
    return r - m if r > m // 2 else r


def _modular_roots(coeffs: list[int]) -> Optional[set[Fraction]]:
    """
    Rational roots of a primitive integer polynomial with nonzero constant
    term, or None when no prime keeps it squarefree.
    """
    config = get_config()
    a0, an = coeffs[0], coeffs[-1]
    screened: list[tuple[int, list[int]]] = []
    p = config.root_prime_start
    for _ in range(_MAX_PRIME_ATTEMPTS):
        p = nextprime(p)
        if an % p == 0:
            continue
        f = _poly_mod(coeffs, p)
        if not _squarefree_mod_p(f):
            continue
        roots = _roots_mod_p(f, p)
        if not roots:
            logger.debug(f"No roots modulo {p}; degree {len(coeffs) - 1} rejected")
            return set()
        screened.append((p, roots))
        if len(screened) >= config.root_screen_primes:
            break
    if not screened:
        return None

    p, roots = min(screened, key=lambda item: len(item[1]))
    logger.debug(f"Lifting {len(roots)} roots modulo {p}")
    # u/v in lowest terms has u | a0 and v | an
    bound = 2 * abs(a0) * abs(an)
    residues = [(q, set(rs)) for q, rs in screened]
    found: set[Fraction] = set()
    for r in roots:
        lifted, m = _hensel_lift(coeffs, r, p, bound)
        for v in divisors(abs(an)):
            u = _symmetric(lifted * v % m, m)
            candidate = Fraction(u, v)
            if not all(
                candidate.numerator * pow(candidate.denominator, -1, q) % q in rs
                for q, rs in residues
            ):
                continue
            if _eval_fraction(coeffs, candidate) == 0:
                found.add(candidate)
    return found


def _eval_fraction(coeffs: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(p: Polynomial) -> set[Fraction]:
    """Exactly the rational roots of a nonzero polynomial over Q."""
    if p.is_zero():
        raise DomainError("rational_roots of the zero polynomial")
    coeffs = p.integer_coefficients()
    roots: set[Fraction] = set()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        roots.add(Fraction(0))
    degree = len(coeffs) - 1
    if degree == 0:
        return roots
    if degree == 1:
        roots.add(Fraction(-coeffs[0], coeffs[1]))
        return roots

    found = _modular_roots(coeffs)
    if found is None:
        # Repeated factors over Q; retry on the squarefree part
        reduced = Polynomial(tuple(coeffs))
        reduced = reduced // reduced.gcd(reduced.derivative())
        logger.debug(f"Reducing to squarefree part of degree {reduced.degree}")
        found = _modular_roots(reduced.integer_coefficients())
        if found is None:
            raise InconsistencyError(f"No usable prime for {reduced}")
    roots |= found
    for r in roots:
        if p(r) != 0:
            raise InconsistencyError(f"{r} is not a root of {p}")
    return roots


def _depress(p: Polynomial) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """For monic quartic p return (a/4, P, Q, R) with p(y - a/4) = y^4+Py^2+Qy+R."""
    shift = p[3] / 4
    depressed = p.shift(-shift)
    return shift, depressed[2], depressed[1], depressed[0]


def _resolvent_roots(P, Q, R) -> list[Fraction]:
    """Rational m with (2m - P) * (m^2 - R) = Q^2 / 4."""
    resolvent = Polynomial.of(4 * P * R - Q * Q, -8 * R, -4 * P, 8)
    return sorted(rational_roots(resolvent))


def _split_quartic(p: Polynomial, F: TowerField) -> Optional[list[Polynomial]]:
    """
    Split a monic quartic into two quadratics with coefficients in F.

    With m a resolvent root and w = 2m - P, the depressed quartic equals
    (y^2 + m)^2 - w*(y - Q/(2w))^2, so it splits once sqrt(w) is in F
    (or sqrt(m^2 - R) when w = 0).
    """
    shift, P, Q, R = _depress(p)
    for m in _resolvent_roots(P, Q, R):
        w = 2 * m - P
        if w != 0:
            s = is_square_with_witness(w, F)
            if s is None:
                continue
            halves = [
                Polynomial((m + Q / (2 * s), -s, 1)),
                Polynomial((m - Q / (2 * s), s, 1)),
            ]
        else:
            t = is_square_with_witness(m * m - R, F)
            if t is None or t.is_zero():
                continue
            halves = [Polynomial((m - t, 0, 1)), Polynomial((m + t, 0, 1))]
        factors = [h.shift(shift) for h in halves]
        if product(factors) != p:
            raise InconsistencyError(f"Resolvent split of {p} does not multiply back")
        return factors
    return None


def factor_quartic_over_Q(p: Polynomial) -> tuple[Fraction, list[Polynomial]]:
    """
    Factor a polynomial of degree 1..4 into monic irreducibles over Q.

    Returns ``(unit, factors)`` with ``p == unit * product(factors)``;
    repeated factors are listed with multiplicity.
    """
    p = p.to_rational()
    if not 1 <= p.degree <= 4:
        raise DomainError(f"Degree must be between 1 and 4, got {p.degree}")
    unit = p.leading
    rest = p.monic()
    factors: list[Polynomial] = []
    for r in sorted(rational_roots(rest)):
        while not rest.is_zero() and rest.degree >= 1 and rest(r) == 0:
            rest = rest // linear(r)
            factors.append(linear(r))
    if rest.degree == 4:
        split = _split_quartic(rest, QQ)
        factors.extend([f.to_rational() for f in split] if split else [rest])
    elif rest.degree >= 2:
        factors.append(rest)
    return unit, factors


def _quadratic_roots(q: Polynomial, F: TowerField) -> set[TowerElement]:
    c0, c1, c2 = (F.coerce(q[i]) for i in range(3))
    w = is_square_with_witness(c1 * c1 - 4 * c2 * c0, F)
    if w is None:
        return set()
    return {(-c1 + w) / (2 * c2), (-c1 - w) / (2 * c2)}


def roots_in_tower(p: Polynomial, F: TowerField) -> set[TowerElement]:
    """All roots of a rational polynomial of degree 1..4 that lie in F."""
    _, factors = factor_quartic_over_Q(p)
    roots: set[TowerElement] = set()
    for f in set(factors):
        if f.degree == 1:
            roots.add(F.scalar(-f[0]))
        elif f.degree == 2:
            roots |= _quadratic_roots(f, F)
        elif f.degree == 4 and F.rank >= 2:
            # Irreducible over Q; a root in F needs a split over a subfield
            split = _split_quartic(f, F)
            if split:
                for half in split:
                    roots |= _quadratic_roots(half, F)
    for r in roots:
        if p(r) != 0:
            raise InconsistencyError(f"{r} is not a root of {p} in {F}")
    return roots


def quadratic_factor_labels(p: Polynomial) -> set[int]:
    """Squarefree discriminant labels of the irreducible quadratic factors of p."""
    labels = set()
    for f in factor_quartic_over_Q(p)[1]:
        if f.degree == 2:
            labels.add(squarefree_label(f[1] * f[1] - 4 * f[0]))
    return labels

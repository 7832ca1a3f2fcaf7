"""
A multiplicative bound on the rational torsion order from point counts.

For a prime p >= 5 of good reduction of an integral short model, E(Q)_tors
injects into E(F_p), so the gcd of #E(F_p) over several such primes is a
multiple of #E(Q)_tors. The odd-part searches only run for primes dividing it.
"""

from functools import lru_cache
from math import gcd, lcm

from sympy import legendre_symbol, primerange

from src.config import get_config
from src.core.curve import Curve
from src.core.transforms import short_coefficients
from src.logging_config import get_logger

logger = get_logger(__name__)


def integral_short_coefficients(E: Curve) -> tuple[int, int]:
    """Integers (A, B) with y^2 = x^3 + A*x + B isomorphic to E over Q."""
    A, B = short_coefficients(E)
    scale = lcm(A.denominator, B.denominator)
    # (A, B) -> (A*u^4, B*u^6) is an isomorphism
    A, B = A * scale**4, B * scale**6
    return int(A), int(B)


def point_count(A: int, B: int, p: int) -> int:
    """#E(F_p) for y^2 = x^3 + A*x + B with p odd and of good reduction."""
    a, b = A % p, B % p
    return p + 1 + sum(legendre_symbol((x * x * x + a * x + b) % p, p) for x in range(p))


@lru_cache(maxsize=1024)
def torsion_order_bound(E: Curve) -> int:
    A, B = integral_short_coefficients(E)
    disc = 4 * A**3 + 27 * B**2
    bound = 0
    for p in primerange(5, get_config().reduction_prime_limit + 1):
        if disc % p == 0:
            continue
        bound = gcd(bound, point_count(A, B, p))
        if bound == 1:
            break
    if bound == 0:
        # every prime in range is bad; no information
        logger.warning(f"No good prime below the limit for {E}")
        return 0
    logger.debug(f"Torsion order of {E} divides {bound}")
    return bound

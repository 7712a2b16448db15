"""Universal colouring families built from modular hashing.

A member of the family is a pair of a hash ``x -> (j*x mod p) mod k^2`` and a
function ``omega`` from hash values ``0..k^2-1`` to colours ``1..c``.  The
omega functions are addressed by a base-``c`` integer and never materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import ceil, comb, log2
from typing import Iterator, Sequence

from sympy import primerange

ENUMERATION_LIMIT = 10**7


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int
    c: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.c < 1:
            raise ValueError(f"family parameters must be >= 1: {self}")


@dataclass(frozen=True, order=True)
class ColouringIndex:
    """One family member.

    ``p == 0`` marks the small-domain fallback, where the raw hash is
    ``x - 1`` and ``omega_idx`` addresses a function on ``0..n-1``.
    """

    p: int
    j: int
    omega_idx: int

    @property
    def is_fallback(self) -> bool:
        return self.p == 0


def prime_bound(n: int, k: int) -> int:
    """Exclusive upper bound ``k^2 * ceil(log2 n)`` on the hash primes."""
    return k * k * ceil(log2(n)) if n > 1 else 0


def uses_fallback(n: int, k: int) -> bool:
    return prime_bound(n, k) <= 2


def hash_pairs(n: int, k: int) -> list[tuple[int, int]]:
    """All ``(p, j)`` with p prime below the bound and ``1 <= j <= p-1``."""
    if uses_fallback(n, k):
        return [(0, 0)]
    return [(p, j) for p in primerange(2, prime_bound(n, k)) for j in range(1, p)]


def omega_arity(params: FamilyParams) -> int:
    """Number of hash values an omega function is defined on."""
    return params.n if uses_fallback(params.n, params.k) else params.k * params.k


def family_size(params: FamilyParams) -> int:
    return len(hash_pairs(params.n, params.k)) * params.c ** omega_arity(params)


def build_family(params: FamilyParams) -> Iterator[ColouringIndex]:
    """Yield every member lazily, in lexicographic ``(p, j, omega)`` order."""
    omegas = params.c ** omega_arity(params)
    for p, j in hash_pairs(params.n, params.k):
        for w in range(omegas):
            yield ColouringIndex(p, j, w)


def raw_hash(idx: ColouringIndex | tuple[int, int], k: int, x: int) -> int:
    if isinstance(idx, ColouringIndex):
        p, j = idx.p, idx.j
    else:
        p, j = idx
    if p == 0:
        return x - 1
    return (j * x % p) % (k * k)


def omega_value(omega_idx: int, c: int, m: int) -> int:
    """Colour (1-based) assigned to hash value ``m`` by the base-c index."""
    return (omega_idx // c**m) % c + 1


def omega_index(values: Sequence[int], c: int) -> int:
    """Inverse of ``omega_value``: encode colours for hash values 0, 1, ..."""
    return sum((col - 1) * c**m for m, col in enumerate(values))


def eval(idx: ColouringIndex, k: int, x: int, c: int | None = None) -> int:
    """Colour of domain element ``x`` under family member ``idx``.

    ``c`` defaults to ``k`` (the colour count used for path finding).
    """
    c = k if c is None else c
    return omega_value(idx.omega_idx, c, raw_hash(idx, k, x))


def colouring_vector(idx: ColouringIndex, params: FamilyParams) -> list[int]:
    """Colours of ``0..n`` (position 0 unused, set to 0)."""
    return [0] + [eval(idx, params.k, x, params.c) for x in range(1, params.n + 1)]


def injective_witness(params: FamilyParams, subset: Sequence[int]) -> tuple[int, int] | None:
    """First ``(p, j)`` whose raw hash is injective on ``subset``, if any."""
    for pj in hash_pairs(params.n, params.k):
        values = {raw_hash(pj, params.k, x) for x in subset}
        if len(values) == len(subset):
            return pj
    return None


def check_universal(params: FamilyParams) -> bool:
    """Exhaustively decide whether the family is (n, k, c)-universal.

    For each k-subset S the colourings the family induces on S are enumerated
    directly: a hash pair fixes which elements of S share a hash value, and
    the omega functions then range over every colour choice per shared value.
    """
    n, k, c = params.n, params.k, params.c
    if k > n:
        return True
    work = comb(n, k) * c**k
    if work > ENUMERATION_LIMIT:
        raise ValueError(
            f"enumeration needs {work} subset/assignment pairs, limit is {ENUMERATION_LIMIT}")
    pairs = hash_pairs(n, k)
    want = c**k
    for subset in combinations(range(1, n + 1), k):
        seen: set[tuple[int, ...]] = set()
        for pj in pairs:
            hashes = [raw_hash(pj, k, x) for x in subset]
            distinct = sorted(set(hashes))
            pos = {h: i for i, h in enumerate(distinct)}
            for cols in product(range(1, c + 1), repeat=len(distinct)):
                seen.add(tuple(cols[pos[h]] for h in hashes))
            if len(seen) == want:
                break
        if len(seen) != want:
            return False
    return True

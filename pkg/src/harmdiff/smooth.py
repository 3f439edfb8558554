"""Exact arithmetic on 3-smooth ("harmonic") numbers.

Everything here is integer-only: no floating point enters a correctness path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterator

__all__ = [
    "NotCoprime",
    "PrimalityRangeError",
    "PowerOrbit",
    "SmoothNumber",
    "Valuations",
    "enumerate_smooth",
    "is_prime",
    "is_smooth",
    "make_smooth",
    "multiplicative_order",
    "power_orbit",
    "smooth_divisors",
    "trial_factor",
    "valuations",
]

PRIMALITY_LIMIT = 1 << 64

# Deterministic Miller-Rabin witnesses for every n < 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NotCoprime(ValueError):
    pass


class PrimalityRangeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SmoothNumber:
    value: int
    two_exp: int
    three_exp: int

    def __post_init__(self) -> None:
        if self.two_exp < 0 or self.three_exp < 0:
            raise ValueError("exponents must be nonnegative")
        if self.value != (1 << self.two_exp) * 3**self.three_exp:
            raise ValueError(
                f"value {self.value} != 2^{self.two_exp}*3^{self.three_exp}"
            )

    def __int__(self) -> int:
        return self.value

    def __mul__(self, other: SmoothNumber) -> SmoothNumber:
        return make_smooth(self.two_exp + other.two_exp, self.three_exp + other.three_exp)


@dataclass(frozen=True)
class Valuations:
    v2: int
    v3: int
    cofactor: int


@dataclass(frozen=True)
class PowerOrbit:
    base: int
    modulus: int
    preperiod: int
    period: int
    residues: tuple[int, ...]

    def residue(self, exponent: int) -> int:
        if exponent < self.preperiod:
            return self.residues[exponent]
        return self.residues[self.preperiod + (exponent - self.preperiod) % self.period]

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.residues[self.preperiod:]


def make_smooth(a: int, b: int) -> SmoothNumber:
    return SmoothNumber((1 << a) * 3**b, a, b)


def enumerate_smooth(limit: int) -> list[SmoothNumber]:
    """All 2^a 3^b <= limit in ascending order.

    Each power of three starts a ladder of doublings; the ladders are already
    sorted, so a k-way merge yields the sequence without any comparisons
    beyond exact integer ones.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")

    def ladder(b: int, p3: int) -> Iterator[SmoothNumber]:
        a, v = 0, p3
        while v <= limit:
            yield SmoothNumber(v, a, b)
            a += 1
            v <<= 1

    ladders = []
    b, p3 = 0, 1
    while p3 <= limit:
        ladders.append(ladder(b, p3))
        b += 1
        p3 *= 3
    return list(heapq.merge(*ladders))


def valuations(n: int) -> Valuations:
    if n < 1:
        raise ValueError("n must be positive")
    v2 = (n & -n).bit_length() - 1
    n >>= v2
    v3 = 0
    while n % 3 == 0:
        n //= 3
        v3 += 1
    return Valuations(v2, v3, n)


def is_smooth(n: int) -> tuple[int, int] | None:
    v = valuations(n)
    return (v.v2, v.v3) if v.cofactor == 1 else None


def smooth_divisors(n: int) -> list[SmoothNumber]:
    v = valuations(n)
    return sorted(make_smooth(i, j) for i in range(v.v2 + 1) for j in range(v.v3 + 1))


def is_prime(n: int) -> bool:
    if n >= PRIMALITY_LIMIT:
        raise PrimalityRangeError(f"{n} exceeds the deterministic primality range 2^64")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trial_factor(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk scale only)."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _carmichael(m: int) -> int:
    lam = 1
    for p, k in trial_factor(m).items():
        if p == 2 and k >= 3:
            part = 1 << (k - 2)
        else:
            part = (p - 1) * p ** (k - 1)
        lam = lam * part // gcd(lam, part)
    return lam


def multiplicative_order(base: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(base, modulus) != 1:
        raise NotCoprime(f"gcd({base}, {modulus}) != 1")
    order = _carmichael(modulus)
    for p in trial_factor(order):
        while order % p == 0 and pow(base, order // p, modulus) == 1:
            order //= p
    return order


def power_orbit(base: int, modulus: int) -> PowerOrbit:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    seen: dict[int, int] = {}
    residues: list[int] = []
    r, e = 1 % modulus, 0
    while r not in seen:
        seen[r] = e
        residues.append(r)
        r = r * base % modulus
        e += 1
    pre = seen[r]
    return PowerOrbit(base, modulus, pre, e - pre, tuple(residues))

"""Scans and censuses over the families that matter for ndh-numbers.

Scans fan out over a process pool when ``cfg.jobs > 1``; ``Executor.map``
keeps results in input order, so output is identical for every job count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Sequence

from .certificates import NDH, UNKNOWN, Classification, classify
from .config import Config
from .smooth import enumerate_smooth, is_prime, is_smooth, trial_factor

FERMAT_PRIMES: tuple[int, ...] = (3, 5, 17, 257, 65537)
MERSENNE_EXPONENTS: tuple[int, ...] = (2, 3, 5, 7, 13, 17, 19, 31)
NDH_BELOW_100: tuple[int, ...] = (41, 43, 59, 67, 82, 83, 85, 86, 89, 91, 97)
EXTENSIONS = ("ndh", "p48k41", "fermat", "mersenne")


class NotMersennePrime(ValueError):
    pass


@dataclass(frozen=True)
class ScanRow:
    n: int
    status: str
    kinds: tuple[str, ...]
    rep_count: int
    reps: tuple[str, ...]

    @classmethod
    def from_classification(cls, c: Classification) -> ScanRow:
        return cls(
            c.n,
            c.status,
            tuple(c.certificate_kinds),
            len(c.representations),
            tuple(str(r) for r in c.representations),
        )


def _classify_job(args: tuple[int, Config]) -> Classification:
    n, cfg = args
    return classify(n, cfg)


def classify_many(ns: Sequence[int], cfg: Config | None = None) -> list[Classification]:
    cfg = cfg or Config()
    if cfg.jobs == 1 or len(ns) < 2:
        return [classify(n, cfg) for n in ns]
    chunk = max(1, len(ns) // (4 * cfg.jobs))
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(_classify_job, [(n, cfg) for n in ns], chunksize=chunk))


def ndh_scan(lo: int, hi: int, cfg: Config | None = None) -> list[ScanRow]:
    if lo < 1 or lo > hi:
        raise ValueError("need 1 <= lo <= hi")
    return [ScanRow.from_classification(c) for c in classify_many(range(lo, hi + 1), cfg)]


def family_x41(kind: str, max_exp: int, cfg: Config | None = None) -> list[tuple[int, Classification]]:
    """Classify 41 * 2^e (kind ``pow2``) or 41 * 3^e (``pow3``) for e <= max_exp."""
    base = {"pow2": 2, "pow3": 3}.get(kind)
    if base is None:
        raise ValueError("kind must be 'pow2' or 'pow3'")
    ns = [41 * base**e for e in range(max_exp + 1)]
    return list(zip(ns, classify_many(ns, cfg)))


def primes_48k41_list(count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    out, p = [], 41
    while len(out) < count:
        if is_prime(p):
            out.append(p)
        p += 48
    return out


def primes_48k41(count: int, cfg: Config | None = None) -> list[tuple[int, Classification]]:
    ps = primes_48k41_list(count)
    return list(zip(ps, classify_many(ps, cfg)))


def fermat_report(cfg: Config | None = None) -> list[tuple[int, Classification]]:
    return list(zip(FERMAT_PRIMES, classify_many(FERMAT_PRIMES, cfg)))


def mersenne_report(p_list: Iterable[int] = MERSENNE_EXPONENTS, cfg: Config | None = None) -> list[tuple[int, Classification]]:
    ms = []
    for p in p_list:
        m = 2**p - 1
        if not is_prime(m):
            raise NotMersennePrime(f"2^{p} - 1 = {m} is not prime")
        ms.append(m)
    return list(zip(ms, classify_many(ms, cfg)))


@dataclass(frozen=True)
class SumRow:
    p: int
    q: int
    total: int
    smooth: bool
    coprime: bool


def sum_scan(family: str) -> list[SumRow]:
    """Which sums of two family members (repeats allowed) are harmonic."""
    if family == "fermat":
        members: Sequence[int] = FERMAT_PRIMES
    elif family == "mersenne":
        members = [2**p - 1 for p in MERSENNE_EXPONENTS]
    else:
        raise ValueError("family must be 'fermat' or 'mersenne'")
    return [
        SumRow(p, q, p + q, is_smooth(p + q) is not None, gcd(p, q) == 1)
        for p, q in combinations_with_replacement(members, 2)
    ]


# ---------------------------------------------------------------- abc

@lru_cache(maxsize=None)
def radical(n: int) -> int:
    return math.prod(trial_factor(n))


@dataclass(frozen=True)
class AbcTriple:
    a: int
    b: int
    c: int
    radical: int

    @property
    def exceptional(self) -> bool:
        return self.c > self.radical

    @property
    def quality(self) -> str:
        # Display only; exceptional is decided by the integer comparison.
        return f"{math.log(self.c) / math.log(self.radical):.6f}"


def extension_members(name: str, bound: int) -> list[int]:
    if name == "ndh":
        members: Iterable[int] = NDH_BELOW_100
    elif name == "p48k41":
        members = primes_48k41_list(10)
    elif name == "fermat":
        members = FERMAT_PRIMES
    elif name == "mersenne":
        members = (2**p - 1 for p in MERSENNE_EXPONENTS)
    else:
        raise ValueError(f"unknown extension {name!r}; choose from {EXTENSIONS}")
    return [m for m in members if m <= bound]


def abc_audit(extensions: Iterable[str] = (), bound: int = 10**4) -> list[AbcTriple]:
    """Coprime a + b = c (a <= b) with a, b, c in harmonic numbers plus extensions."""
    if bound < 9:
        raise ValueError("bound must be >= 9")
    members = {s.value for s in enumerate_smooth(bound)}
    for name in extensions:
        members.update(extension_members(name, bound))
    ordered = sorted(members)
    triples = []
    for c in ordered:
        for a in ordered:
            b = c - a
            if b < a:
                break
            if b in members and gcd(a, b) == 1:
                # pairwise coprime, so the radical is multiplicative
                triples.append(AbcTriple(a, b, c, radical(a) * radical(b) * radical(c)))
    return triples


# ---------------------------------------------------------------- 2x / 3x property

@dataclass(frozen=True)
class DoublingReport:
    violations: tuple[int, ...]
    undecided: tuple[int, ...]


def doubling_property(ndh_set: Iterable[int], cfg: Config | None = None) -> DoublingReport:
    """For each ndh x, check that 2x or 3x is ndh too.

    x is a violation only when both 2x and 3x are decided representable; an
    Unknown on either side with no NDH on the other lands in ``undecided``.
    """
    xs = sorted(set(ndh_set))
    doubles = classify_many([2 * x for x in xs], cfg)
    triples = classify_many([3 * x for x in xs], cfg)
    violations, undecided = [], []
    for x, c2, c3 in zip(xs, doubles, triples):
        if c2.kind == NDH or c3.kind == NDH:
            continue
        if c2.kind == UNKNOWN or c3.kind == UNKNOWN:
            undecided.append(x)
        else:
            violations.append(x)
    return DoublingReport(tuple(violations), tuple(undecided))

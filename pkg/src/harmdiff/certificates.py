"""Certificates that a primitive case ``form(x, y) = t`` is closed.

A case is *closed* when a certificate lists its complete (possibly empty)
solution set.  The builders here only construct; :mod:`harmdiff.verify`
re-derives every claim along a separate code path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import ClassVar, Iterable, Union

from .representations import (
    CompletenessStatus,
    Form,
    Proven,
    Representation,
    UpToBound,
    representations_from_cases,
    search_form,
    solve_for_x,
    solve_for_y,
    solve_succ_smooth,
)
from .smooth import PRIMALITY_LIMIT, SmoothNumber, is_prime, power_orbit, smooth_divisors, valuations

__all__ = [
    "CATALAN_2_MINUS_3",
    "CATALAN_3_MINUS_2",
    "GERSONIDES_SOLUTIONS",
    "Case",
    "Classification",
    "Conclusion",
    "DivisorConstraint",
    "DividesFact",
    "GersonidesAxiom",
    "NonDivisorConstraint",
    "NotDividesFact",
    "NotPrime",
    "OrderChain",
    "OrderFact",
    "PrimeSplit",
    "RectangleOutcome",
    "ResidueRectangle",
    "SuccessorSmoothness",
    "chain_fixtures",
    "chain_from_dict",
    "classify",
    "close_case",
    "find_obstruction",
    "prime_split",
    "rectangle_analysis",
]

# Axiomatized base facts (Catalan/Mihailescu restricted to bases 2 and 3).
# (s, u) with 3^s - 2^u = 1, and (l, k) with 2^l - 3^k = 1.
CATALAN_3_MINUS_2: tuple[tuple[int, int], ...] = ((1, 1), (2, 3))
CATALAN_2_MINUS_3: tuple[tuple[int, int], ...] = ((1, 0), (2, 1))
# The four ways of writing 1: 2-1, 4-3 (form A) and 3-2, 9-8 (form B).
GERSONIDES_SOLUTIONS: dict[Form, tuple[tuple[int, int], ...]] = {
    Form.A: ((1, 0), (2, 1)),
    Form.B: ((1, 1), (3, 2)),
}

Solutions = tuple[tuple[int, int], ...]


class NotPrime(ValueError):
    pass


def catalan_targets(form: Form) -> tuple[int, ...]:
    """Primes t for which forced-even exponents can still solve the case."""
    if form is Form.B:
        return tuple(sorted(3**s + 2**u for s, u in CATALAN_3_MINUS_2))
    if form is Form.A:
        return tuple(sorted(2**l + 3**k for l, k in CATALAN_2_MINUS_3))
    raise ValueError("prime split applies to forms A and B only")


# ---------------------------------------------------------------- outcomes

OBSTRUCTION = "obstruction"
EXACT_COMPLETE = "exact-complete"
ATTAINABLE = "attainable"


@dataclass(frozen=True)
class RectangleOutcome:
    kind: str
    modulus: int
    window: tuple[int, int]
    solutions: Solutions = ()
    classes: frozenset[tuple[int, int]] = frozenset()
    forced_parities: tuple[int | None, int | None] | None = None


# ---------------------------------------------------------------- chain steps

@dataclass(frozen=True)
class DividesFact:
    p: int
    base: int
    k: int
    cofactor: int | None = None
    kind: ClassVar[str] = "divides"


@dataclass(frozen=True)
class NotDividesFact:
    m: int
    base: int
    k: int
    kind: ClassVar[str] = "not-divides"


@dataclass(frozen=True)
class OrderFact:
    base: int
    m: int
    d: int
    kind: ClassVar[str] = "order"


@dataclass(frozen=True)
class DivisorConstraint:
    unknown: str
    divisor: int
    kind: ClassVar[str] = "divisor"


@dataclass(frozen=True)
class NonDivisorConstraint:
    unknown: str
    modulus: int
    kind: ClassVar[str] = "non-divisor"


@dataclass(frozen=True)
class Conclusion:
    kind: ClassVar[str] = "conclusion"


ChainStep = Union[DividesFact, NotDividesFact, OrderFact, DivisorConstraint, NonDivisorConstraint, Conclusion]

_STEP_TYPES = {cls.kind: cls for cls in (DividesFact, NotDividesFact, OrderFact, DivisorConstraint, NonDivisorConstraint, Conclusion)}
_STEP_FIELDS = {
    "divides": ("p", "base", "k", "cofactor"),
    "not-divides": ("m", "base", "k"),
    "order": ("base", "m", "d"),
    "divisor": ("unknown", "divisor"),
    "non-divisor": ("unknown", "modulus"),
    "conclusion": (),
}


def step_to_dict(step: ChainStep) -> dict[str, str]:
    out = {"kind": step.kind}
    for name in _STEP_FIELDS[step.kind]:
        value = getattr(step, name)
        if value is not None:
            out[name] = str(value)
    return out


def step_from_dict(data: dict[str, str]) -> ChainStep:
    kind = data.get("kind")
    if kind not in _STEP_TYPES:
        raise ValueError(f"unknown chain step kind {kind!r}")
    allowed = set(_STEP_FIELDS[kind]) | {"kind"}
    extra = set(data) - allowed
    if extra:
        raise ValueError(f"unexpected fields {sorted(extra)} in {kind} step")
    kwargs = {}
    for name in _STEP_FIELDS[kind]:
        if name not in data:
            if name == "cofactor":
                continue
            raise ValueError(f"{kind} step missing {name!r}")
        raw = data[name]
        if not isinstance(raw, str):
            raise ValueError(f"{kind}.{name} must be a string")
        kwargs[name] = raw if name == "unknown" else int(raw)
    if kwargs.get("unknown", "a") not in ("a", "b"):
        raise ValueError("unknown must be 'a' or 'b'")
    return _STEP_TYPES[kind](**kwargs)


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class ResidueRectangle:
    form: Form
    t: int
    modulus: int
    solutions: Solutions = ()
    kind: ClassVar[str] = "residue-rectangle"


@dataclass(frozen=True)
class PrimeSplit:
    form: Form
    t: int
    modulus: int
    catalan_targets: tuple[int, ...]
    solutions: Solutions = ()
    kind: ClassVar[str] = "prime-split"


@dataclass(frozen=True)
class OrderChain:
    """Anchored at a known solution (x0, y0): any other solution with
    x = x0 + a, y = y0 + b, a, b >= 1 would satisfy
    2^x0 (2^a - 1) = 3^y0 (3^b - 1); the steps derive incompatible
    divisibility constraints on a or b from that identity."""

    form: Form
    t: int
    anchor: tuple[int, int]
    steps: tuple[ChainStep, ...]
    solutions: Solutions = ()
    kind: ClassVar[str] = "order-chain"


@dataclass(frozen=True)
class SuccessorSmoothness:
    t: int
    witness: int | None = None
    exponents: tuple[int, int] | None = None
    solutions: Solutions = ()
    kind: ClassVar[str] = "successor-smoothness"

    @property
    def form(self) -> Form:
        return Form.C


@dataclass(frozen=True)
class GersonidesAxiom:
    form: Form
    t: int = 1
    solutions: Solutions = ()
    kind: ClassVar[str] = "gersonides-axiom"


Certificate = Union[ResidueRectangle, PrimeSplit, OrderChain, SuccessorSmoothness, GersonidesAxiom]
CERTIFICATE_KINDS = tuple(c.kind for c in (ResidueRectangle, PrimeSplit, OrderChain, SuccessorSmoothness, GersonidesAxiom))


# ---------------------------------------------------------------- rectangle

def _boundary_solutions(form: Form, t: int, x_start: int, y_start: int) -> Solutions:
    """Exact solutions with x < x_start or y < y_start."""
    xmin, ymin = form.min_exponents
    found = set()
    for x in range(xmin, x_start):
        y = solve_for_y(form, t, x)
        if y is not None:
            found.add((x, y))
    for y in range(ymin, y_start):
        x = solve_for_x(form, t, y)
        if x is not None:
            found.add((x, y))
    return tuple(sorted(found))


def _periodic_hits(form: Form, t: int, modulus: int, x_start: int, y_start: int) -> list[tuple[int, int]]:
    o2, o3 = power_orbit(2, modulus), power_orbit(3, modulus)
    xs = [(e, o2.residue(e)) for e in range(x_start, x_start + o2.period)]
    ys = [(e, o3.residue(e)) for e in range(y_start, y_start + o3.period)]
    target = t % modulus
    if form is Form.C:
        return [(ex, ey) for ex, r2 in xs for ey, r3 in ys if (r2 * r3 - 1) % modulus == target]
    by_residue: dict[int, list[int]] = {}
    for ex, r2 in xs:
        by_residue.setdefault(r2, []).append(ex)
    sign = 1 if form is Form.A else -1
    hits = []
    for ey, r3 in ys:
        # A: 2^x = t + 3^y ; B: 2^x = 3^y - t
        want = (sign * target + r3) % modulus
        hits.extend((ex, ey) for ex in by_residue.get(want, ()))
    return hits


def _forced_parity(exponents: Iterable[int], period: int) -> int | None:
    parities = {e % 2 for e in exponents}
    if period % 2 == 0 and len(parities) == 1:
        return parities.pop()
    return None


@lru_cache(maxsize=65536)
def rectangle_analysis(form: Form, t: int, modulus: int) -> RectangleOutcome:
    """Residues of form(x, y) mod M over one period of each power orbit.

    Exponents below the orbit preperiods (or the form's minimum) are not
    periodic and are solved exactly over the integers instead, so the
    outcome is sound for all exponents.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    o2, o3 = power_orbit(2, modulus), power_orbit(3, modulus)
    xmin, ymin = form.min_exponents
    x_start, y_start = max(o2.preperiod, xmin), max(o3.preperiod, ymin)
    window = (x_start, y_start)
    boundary = _boundary_solutions(form, t, x_start, y_start)
    hits = _periodic_hits(form, t, modulus, x_start, y_start)
    if not hits:
        kind = EXACT_COMPLETE if boundary else OBSTRUCTION
        return RectangleOutcome(kind, modulus, window, boundary)
    classes = frozenset((ex % o2.period, ey % o3.period) for ex, ey in hits)
    px = _forced_parity((ex for ex, _ in hits), o2.period)
    py = _forced_parity((ey for _, ey in hits), o3.period)
    forced = None if px is None and py is None else (px, py)
    return RectangleOutcome(ATTAINABLE, modulus, window, boundary, classes, forced)


def find_obstruction(form: Form, t: int, pool: Iterable[int]) -> ResidueRectangle | None:
    pool = list(pool)
    if not pool:
        raise ValueError("modulus pool is empty")
    for m in pool:
        out = rectangle_analysis(form, t, m)
        if out.kind in (OBSTRUCTION, EXACT_COMPLETE):
            return ResidueRectangle(form, t, m, out.solutions)
    return None


def prime_split(form: Form, t: int, modulus: int) -> PrimeSplit | None:
    """Close a prime case once residues force both exponents even.

    With x = 2u, y = 2s the difference factors as (3^s - 2^u)(3^s + 2^u)
    (resp. (2^u - 3^s)(2^u + 3^s)); primality of t makes the smaller factor
    1, and the Catalan base fact leaves finitely many candidates.
    """
    targets = catalan_targets(form)
    if t >= PRIMALITY_LIMIT or not is_prime(t):
        raise NotPrime(f"{t} is not a (desk-scale) prime")
    out = rectangle_analysis(form, t, modulus)
    if out.kind != ATTAINABLE or out.forced_parities != (0, 0):
        return None
    if form is Form.B:
        candidates = [(2 * u, 2 * s) for s, u in CATALAN_3_MINUS_2]
    else:
        candidates = [(2 * l, 2 * k) for l, k in CATALAN_2_MINUS_3]
    x_start, y_start = out.window
    periodic = {
        (x, y) for x, y in candidates if x >= x_start and y >= y_start and form.evaluate(x, y) == t
    }
    return PrimeSplit(form, t, modulus, targets, tuple(sorted(periodic | set(out.solutions))))


# ---------------------------------------------------------------- chains

def chain_from_dict(data: dict) -> OrderChain:
    form = Form(data["form"])
    return OrderChain(
        form=form,
        t=int(data["t"]),
        anchor=(int(data["anchor"][0]), int(data["anchor"][1])),
        steps=tuple(step_from_dict(s) for s in data["steps"]),
        solutions=tuple((int(x), int(y)) for x, y in data["solutions"]),
    )


@lru_cache(maxsize=1)
def chain_fixtures() -> dict[tuple[Form, int], OrderChain]:
    text = resources.files("harmdiff").joinpath("data/order_chains.json").read_text(encoding="utf-8")
    chains = [chain_from_dict(d) for d in json.loads(text)]
    return {(c.form, c.t): c for c in chains}


# ---------------------------------------------------------------- cases

def successor_certificate(t: int) -> SuccessorSmoothness:
    hit = solve_succ_smooth(t)
    if hit is not None:
        sols = (hit,) if hit[0] >= 1 and hit[1] >= 1 else ()
        return SuccessorSmoothness(t, exponents=hit, solutions=sols)
    cof = valuations(t + 1).cofactor
    witness = cof
    p = 5
    while p * p <= cof and p < 100_000:
        if cof % p == 0:
            witness = p
            break
        p += 2
    return SuccessorSmoothness(t, witness=witness)


@lru_cache(maxsize=65536)
def _close_case(form: Form, t: int, pool: tuple[int, ...]) -> Certificate | None:
    if form is Form.C:
        return successor_certificate(t)
    if t % 2 == 0:
        out = rectangle_analysis(form, t, 2)
        if out.kind != ATTAINABLE:
            return ResidueRectangle(form, t, 2, out.solutions)
    if t == 1:
        return GersonidesAxiom(form, 1, GERSONIDES_SOLUTIONS[form])
    cert = find_obstruction(form, t, pool)
    if cert is not None:
        return cert
    if t < PRIMALITY_LIMIT and is_prime(t):
        for m in pool:
            split = prime_split(form, t, m)
            if split is not None:
                return split
    chain = chain_fixtures().get((form, t))
    if chain is not None:
        from .verify import verify_order_chain

        if verify_order_chain(chain):
            return chain
    return None


def close_case(form: Form, t: int, pool: Iterable[int] | None = None) -> Certificate | None:
    """Certificate closing ``form(x, y) = t``, or None if the case stays open.

    Strategies are tried in a fixed order: the exact successor decision
    (form C), parity at modulus 2, the Gersonides base fact (t = 1), the
    residue-rectangle pool, prime splitting, then shipped order chains.
    """
    from .config import DEFAULT_POOL

    return _close_case(Form(form), t, tuple(pool) if pool is not None else DEFAULT_POOL)


@dataclass(frozen=True)
class Case:
    divisor: SmoothNumber
    form: Form
    t: int
    certificate: Certificate | None
    solutions: Solutions

    @property
    def closed(self) -> bool:
        return self.certificate is not None


NDH = "ndh"
REPRESENTABLE = "representable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Classification:
    n: int
    kind: str
    cases: tuple[Case, ...]
    representations: tuple[Representation, ...] = ()
    completeness: CompletenessStatus | None = None
    searched_bound: int | None = None

    def __post_init__(self) -> None:
        if self.kind == NDH and self.representations:
            raise AssertionError(f"{self.n}: NDH with representations")
        if self.kind == REPRESENTABLE and not self.representations:
            raise AssertionError(f"{self.n}: representable without representations")

    @property
    def status(self) -> str:
        if self.kind == REPRESENTABLE:
            return "representable-proven" if isinstance(self.completeness, Proven) else "representable-bounded"
        return self.kind

    @property
    def certificate_kinds(self) -> list[str]:
        return sorted({c.certificate.kind for c in self.cases if c.certificate is not None})


class InconsistentCertificate(AssertionError):
    pass


def classify(n: int, cfg=None) -> Classification:
    """Decide whether n is a difference of harmonic numbers.

    Every (smooth divisor, form) case is closed by a certificate when
    possible; open cases fall back to bounded search.  ``Unknown`` is the
    honest answer when an open case remains and nothing was found.
    """
    from .config import Config

    cfg = cfg or Config()
    if n < 1:
        raise ValueError("n must be positive")
    cases = []
    all_closed = True
    for g in smooth_divisors(n):
        t = n // g.value
        for form in Form:
            cert = close_case(form, t, cfg.modulus_pool)
            found = tuple(search_form(form, t, cfg.exponent_bound))
            if cert is None:
                all_closed = False
                cases.append(Case(g, form, t, None, found))
                continue
            if not set(found) <= set(cert.solutions):
                raise InconsistentCertificate(f"{cert} misses searched solutions {found}")
            cases.append(Case(g, form, t, cert, tuple(cert.solutions)))
    reps = tuple(representations_from_cases(cases))
    if all_closed:
        kind = REPRESENTABLE if reps else NDH
        return Classification(n, kind, tuple(cases), reps, Proven() if reps else None)
    if reps:
        return Classification(n, REPRESENTABLE, tuple(cases), reps, UpToBound(cfg.exponent_bound), cfg.exponent_bound)
    return Classification(n, UNKNOWN, tuple(cases), (), None, cfg.exponent_bound)

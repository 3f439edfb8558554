"""Writing n as h1 - h2 with h1, h2 harmonic.

Every representation factors uniquely as ``g * (h1' - h2')`` where ``g`` is
the gcd (itself 3-smooth) and ``h1', h2'`` are coprime harmonic numbers.  A
coprime difference is always one of three primitive shapes::

    A:  2^x - 3^y          x >= 1, y >= 0
    B:  3^y - 2^x          y >= 1, x >= 0
    C:  2^x * 3^y - 1      x >= 1, y >= 1
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .smooth import SmoothNumber, enumerate_smooth, is_smooth, make_smooth, smooth_divisors

if TYPE_CHECKING:
    from .certificates import Case

__all__ = [
    "BoundTooLarge",
    "DEFAULT_BOUND",
    "EXPONENT_CEILING",
    "Form",
    "PrimitiveForm",
    "Proven",
    "Representation",
    "UpToBound",
    "all_representations",
    "consecutive_pairs",
    "search_form",
    "solve_for_x",
    "solve_for_y",
    "solve_succ_smooth",
]

DEFAULT_BOUND = 96
EXPONENT_CEILING = 4096


class BoundTooLarge(ValueError):
    pass


class Form(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def min_exponents(self) -> tuple[int, int]:
        return _MIN_EXPONENTS[self]

    def evaluate(self, x: int, y: int) -> int:
        if self is Form.A:
            return (1 << x) - 3**y
        if self is Form.B:
            return 3**y - (1 << x)
        return (1 << x) * 3**y - 1

    def terms(self, x: int, y: int) -> tuple[SmoothNumber, SmoothNumber]:
        """(minuend, subtrahend) of the primitive difference."""
        if self is Form.A:
            return make_smooth(x, 0), make_smooth(0, y)
        if self is Form.B:
            return make_smooth(0, y), make_smooth(x, 0)
        return make_smooth(x, y), make_smooth(0, 0)


_MIN_EXPONENTS = {Form.A: (1, 0), Form.B: (0, 1), Form.C: (1, 1)}


@dataclass(frozen=True)
class PrimitiveForm:
    form: Form
    x: int
    y: int

    def __post_init__(self) -> None:
        xmin, ymin = self.form.min_exponents
        if self.x < xmin or self.y < ymin:
            raise ValueError(f"exponents ({self.x}, {self.y}) outside form {self.form.value}")

    @property
    def value(self) -> int:
        return self.form.evaluate(self.x, self.y)


@dataclass(frozen=True)
class Representation:
    minuend: SmoothNumber
    subtrahend: SmoothNumber
    n: int
    scale: SmoothNumber
    primitive: PrimitiveForm

    def __post_init__(self) -> None:
        if self.minuend.value - self.subtrahend.value != self.n:
            raise ValueError(f"{self.minuend.value} - {self.subtrahend.value} != {self.n}")
        if self.scale.value * self.primitive.value != self.n:
            raise ValueError("scale * primitive != n")

    @classmethod
    def from_case(cls, scale: SmoothNumber, form: Form, x: int, y: int) -> Representation:
        hi, lo = form.terms(x, y)
        t = form.evaluate(x, y)
        return cls(hi * scale, lo * scale, scale.value * t, scale, PrimitiveForm(form, x, y))

    @property
    def pair(self) -> tuple[int, int]:
        return self.minuend.value, self.subtrahend.value

    def __str__(self) -> str:
        return f"{self.minuend.value}-{self.subtrahend.value}"


@dataclass(frozen=True)
class Proven:
    def __str__(self) -> str:
        return "proven"


@dataclass(frozen=True)
class UpToBound:
    bound: int

    def __str__(self) -> str:
        return f"up-to-2^{self.bound}"


CompletenessStatus = Union[Proven, UpToBound]


def _log_exact(v: int, base: int) -> int | None:
    """e with base**e == v, else None."""
    if v < 1:
        return None
    if base == 2:
        return v.bit_length() - 1 if v & (v - 1) == 0 else None
    e = 0
    while v % base == 0:
        v //= base
        e += 1
    return e if v == 1 else None


def solve_for_y(form: Form, t: int, x: int) -> int | None:
    """The unique y (if any) solving form(x, y) = t for fixed x."""
    if form is Form.A:
        v = (1 << x) - t
    elif form is Form.B:
        v = t + (1 << x)
    else:
        q, r = divmod(t + 1, 1 << x)
        v = q if r == 0 else 0
    y = _log_exact(v, 3)
    if y is None or y < form.min_exponents[1]:
        return None
    return y


def solve_for_x(form: Form, t: int, y: int) -> int | None:
    if form is Form.A:
        v = t + 3**y
    elif form is Form.B:
        v = 3**y - t
    else:
        q, r = divmod(t + 1, 3**y)
        v = q if r == 0 else 0
    x = _log_exact(v, 2)
    if x is None or x < form.min_exponents[0]:
        return None
    return x


def solve_succ_smooth(t: int) -> tuple[int, int] | None:
    if t < 1:
        raise ValueError("t must be positive")
    return is_smooth(t + 1)


def _check_bound(bound: int) -> None:
    if bound < 1:
        raise ValueError("bound must be positive")
    if bound > EXPONENT_CEILING:
        raise BoundTooLarge(f"bound {bound} exceeds ceiling {EXPONENT_CEILING}")


def search_form(form: Form, t: int, bound: int = DEFAULT_BOUND) -> list[tuple[int, int]]:
    """Solutions of form(x, y) = t with 2^x <= 2^bound and 3^y <= 2^bound."""
    _check_bound(bound)
    if t < 1:
        raise ValueError("t must be positive")
    cap = 1 << bound
    found: list[tuple[int, int]] = []
    if form is Form.C:
        hit = solve_succ_smooth(t)
        if hit and hit[0] >= 1 and hit[1] >= 1 and 3 ** hit[1] <= cap and hit[0] <= bound:
            found.append(hit)
    elif form is Form.A:
        y, p3 = 0, 1
        while p3 <= cap:
            x = solve_for_x(form, t, y)
            if x is not None and x <= bound:
                found.append((x, y))
            y += 1
            p3 *= 3
    else:
        for x in range(bound + 1):
            y = solve_for_y(form, t, x)
            if y is not None and 3**y <= cap:
                found.append((x, y))
    return sorted(found)


def _sorted_reps(reps: dict[tuple[int, int], Representation]) -> list[Representation]:
    return [reps[k] for k in sorted(reps)]


def representations_from_cases(cases: list[Case]) -> list[Representation]:
    reps: dict[tuple[int, int], Representation] = {}
    for case in cases:
        for x, y in case.solutions:
            rep = Representation.from_case(case.divisor, case.form, x, y)
            reps.setdefault(rep.pair, rep)
    return _sorted_reps(reps)


def all_representations(
    n: int, bound: int = DEFAULT_BOUND, pool: list[int] | None = None
) -> tuple[list[Representation], CompletenessStatus]:
    """Every n = h1 - h2 with h1 <= 2^bound, sorted by minuend.

    The status is Proven when every (divisor, form) case carries a
    certificate; the search bound plays no part in that decision.
    """
    from .certificates import close_case

    _check_bound(bound)
    if n < 1:
        raise ValueError("n must be positive")
    cap = 1 << bound
    reps: dict[tuple[int, int], Representation] = {}
    closed = True
    for g in smooth_divisors(n):
        t = n // g.value
        for form in Form:
            if close_case(form, t, pool) is None:
                closed = False
            for x, y in search_form(form, t, bound):
                rep = Representation.from_case(g, form, x, y)
                if rep.minuend.value <= cap:
                    reps.setdefault(rep.pair, rep)
    status: CompletenessStatus = Proven() if closed else UpToBound(bound)
    return _sorted_reps(reps), status


def consecutive_pairs(limit: int) -> list[tuple[SmoothNumber, SmoothNumber]]:
    if limit < 2:
        raise ValueError("limit must be >= 2")
    values = enumerate_smooth(limit)
    return [(lo, hi) for lo, hi in zip(values, values[1:]) if hi.value - lo.value == 1]

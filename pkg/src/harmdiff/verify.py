"""Independent checker for certificates.

Nothing here calls into the builders: orbits come from valuations plus a
naive order loop, primality from trial division, and the boundary equations
are solved by monotone scans rather than exact logarithms.  A certificate is
accepted only if every claim is re-derived from (form, t) and the
certificate's own parameters.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from .certificates import (
    CATALAN_2_MINUS_3,
    CATALAN_3_MINUS_2,
    GERSONIDES_SOLUTIONS,
    Conclusion,
    DivisorConstraint,
    DividesFact,
    GersonidesAxiom,
    NonDivisorConstraint,
    NotDividesFact,
    OrderChain,
    OrderFact,
    PrimeSplit,
    ResidueRectangle,
    SuccessorSmoothness,
)
from .representations import Form

__all__ = ["gersonides_census", "catalan_census", "verify", "verify_order_chain"]

_TRIAL_LIMIT = 10**14
_MAX_CHAIN_EXPONENT = 10_000
_MAX_ORDER_MODULUS = 10**7
_MINIMUM = {Form.A: (1, 0), Form.B: (0, 1), Form.C: (1, 1)}


def _value(form: Form, x: int, y: int) -> int:
    p2, p3 = 2**x, 3**y
    if form is Form.A:
        return p2 - p3
    if form is Form.B:
        return p3 - p2
    return p2 * p3 - 1


def _prime(n: int) -> bool:
    if n > _TRIAL_LIMIT:
        raise ValueError("outside trial-division range")
    if n < 2:
        return False
    for d in range(2, min(isqrt(n), 3) + 1):
        if n % d == 0:
            return n == d
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def _order(base: int, m: int) -> int:
    if m > _MAX_ORDER_MODULUS:
        raise ValueError("modulus too large for naive order")
    if m == 1:
        return 1
    if gcd(base, m) != 1:
        raise ValueError("not coprime")
    r, d = base % m, 1
    while r != 1:
        r = r * base % m
        d += 1
    return d


def _orbit_shape(base: int, m: int) -> tuple[int, int]:
    """(preperiod, period) of base^e mod m for prime base."""
    pre = 0
    while m % base == 0:
        m //= base
        pre += 1
    return pre, _order(base, m)


def _solve_fixed_x(form: Form, t: int, x: int) -> list[int]:
    ymin = _MINIMUM[form][1]
    out = []
    y = ymin
    if form is Form.A:
        while 3**y < 2**x:
            if _value(form, x, y) == t:
                out.append(y)
            y += 1
    else:
        while _value(form, x, y) <= t:
            if _value(form, x, y) == t:
                out.append(y)
            y += 1
    return out


def _solve_fixed_y(form: Form, t: int, y: int) -> list[int]:
    xmin = _MINIMUM[form][0]
    out = []
    x = xmin
    if form is Form.B:
        while 2**x < 3**y:
            if _value(form, x, y) == t:
                out.append(x)
            x += 1
    else:
        while _value(form, x, y) <= t:
            if _value(form, x, y) == t:
                out.append(x)
            x += 1
    return out


def _boundary(form: Form, t: int, x_end: int, y_end: int) -> set[tuple[int, int]]:
    """Solutions with x < x_end or y < y_end."""
    xmin, ymin = _MINIMUM[form]
    found = set()
    for x in range(xmin, x_end):
        found.update((x, y) for y in _solve_fixed_x(form, t, x))
    for y in range(ymin, y_end):
        found.update((x, y) for x in _solve_fixed_y(form, t, y))
    return found


def _periodic_region(form: Form, t: int, m: int):
    """Window start, periods and the exponent pairs attaining t mod m."""
    pre2, per2 = _orbit_shape(2, m)
    pre3, per3 = _orbit_shape(3, m)
    xmin, ymin = _MINIMUM[form]
    x0, y0 = max(pre2, xmin), max(pre3, ymin)
    hits = [
        (x, y)
        for x in range(x0, x0 + per2)
        for y in range(y0, y0 + per3)
        if _value_mod(form, x, y, m) == t % m
    ]
    return (x0, y0), (per2, per3), hits


def _value_mod(form: Form, x: int, y: int, m: int) -> int:
    a, b = pow(2, x, m), pow(3, y, m)
    if form is Form.A:
        return (a - b) % m
    if form is Form.B:
        return (b - a) % m
    return (a * b - 1) % m


def _check_rectangle(c: ResidueRectangle) -> bool:
    if c.t < 1 or c.modulus < 2:
        return False
    (x0, y0), _, hits = _periodic_region(c.form, c.t, c.modulus)
    if hits:
        return False
    return sorted(_boundary(c.form, c.t, x0, y0)) == list(c.solutions)


def _check_prime_split(c: PrimeSplit) -> bool:
    if c.form not in (Form.A, Form.B) or not _prime(c.t):
        return False
    if c.form is Form.B:
        pairs = [(2 * u, 2 * s, 3**s + 2**u) for s, u in CATALAN_3_MINUS_2]
    else:
        pairs = [(2 * l, 2 * k, 2**l + 3**k) for l, k in CATALAN_2_MINUS_3]
    if tuple(sorted(p for _, _, p in pairs)) != tuple(c.catalan_targets):
        return False
    (x0, y0), (per2, per3), hits = _periodic_region(c.form, c.t, c.modulus)
    if per2 % 2 or per3 % 2:
        return False
    if any(x % 2 or y % 2 for x, y in hits):
        return False
    expected = _boundary(c.form, c.t, x0, y0)
    expected.update(
        (x, y) for x, y, target in pairs if target == c.t and x >= x0 and y >= y0 and _value(c.form, x, y) == c.t
    )
    return sorted(expected) == list(c.solutions)


def _check_successor(c: SuccessorSmoothness) -> bool:
    s = c.t + 1
    if c.t < 1:
        return False
    if c.exponents is not None:
        a, b = c.exponents
        if c.witness is not None or a < 0 or b < 0 or 2**a * 3**b != s:
            return False
        return list(c.solutions) == ([(a, b)] if a >= 1 and b >= 1 else [])
    w = c.witness
    if w is None or w < 2 or gcd(w, 6) != 1 or s % w:
        return False
    return not c.solutions


@lru_cache(maxsize=None)
def gersonides_census(bits: int = 64) -> tuple[tuple[int, int], ...]:
    """Consecutive harmonic pairs (h, h + 1) with h + 1 <= 2^bits, by double loop."""
    cap = 2**bits
    values = set()
    p3 = 1
    while p3 <= cap:
        v = p3
        while v <= cap:
            values.add(v)
            v *= 2
        p3 *= 3
    return tuple(sorted((h, h + 1) for h in values if h + 1 in values))


@lru_cache(maxsize=None)
def catalan_census(bits: int = 64) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
    """Bounded solutions of 3^s - 2^u = 1 and of 2^l - 3^k = 1."""
    three_minus_two, two_minus_three = [], []
    for s in range(0, bits + 1):
        for u in range(0, bits + 1):
            if 3**s <= 2**bits and 3**s - 2**u == 1:
                three_minus_two.append((s, u))
            if 3**s <= 2**bits and 2**u - 3**s == 1:
                two_minus_three.append((u, s))
    return tuple(sorted(three_minus_two)), tuple(sorted(two_minus_three))


def _check_gersonides(c: GersonidesAxiom) -> bool:
    if c.t != 1 or c.form not in GERSONIDES_SOLUTIONS:
        return False
    if tuple(c.solutions) != GERSONIDES_SOLUTIONS[c.form]:
        return False
    if not all(_value(c.form, x, y) == 1 for x, y in c.solutions):
        return False
    return gersonides_census(64) == ((1, 2), (2, 3), (3, 4), (8, 9))


def _divides_member(m: int, known: set[int]) -> bool:
    return any(k % m == 0 for k in known)


def _multiple_of_member(m: int, known: set[int]) -> bool:
    return any(m % k == 0 for k in known)


def verify_order_chain(chain: OrderChain) -> bool:
    """Replay an order chain.

    The unknowns are a = x - x0 and b = y - y0 (both >= 1), tied by
    2^x0 (2^a - 1) = 3^y0 (3^b - 1).  We track numbers known to divide
    (resp. not divide) 2^a - 1 and 3^b - 1, the established divisors of each
    unknown, and the constraints asserted so far.
    """
    try:
        return _replay_chain(chain)
    except (ValueError, TypeError, ZeroDivisionError, OverflowError):
        return False


def _replay_chain(chain: OrderChain) -> bool:
    if chain.form not in (Form.A, Form.B) or not chain.steps:
        return False
    x0, y0 = chain.anchor
    xmin, ymin = _MINIMUM[chain.form]
    if x0 < xmin or y0 < ymin or _value(chain.form, x0, y0) != chain.t:
        return False
    base = {"a": 2, "b": 3}
    other = {"a": "b", "b": "a"}
    divides = {"a": {3**y0}, "b": {2**x0}}
    not_divides = {"a": {3 ** (y0 + 1)}, "b": {2 ** (x0 + 1)}}
    lcm = {"a": 1, "b": 1}
    orders: list[OrderFact] = []
    asserted_div: dict[str, set[int]] = {"a": set(), "b": set()}
    asserted_nondiv: dict[str, set[int]] = {"a": set(), "b": set()}

    def learn(u: str, m: int) -> None:
        divides[u].add(m)
        if gcd(m, 6) == 1:
            divides[other[u]].add(m)

    for i, step in enumerate(chain.steps):
        if isinstance(step, DividesFact):
            if step.p < 2 or not 1 <= step.k <= _MAX_CHAIN_EXPONENT:
                return False
            if pow(step.base, step.k, step.p) != 1:
                return False
            if step.cofactor is not None and step.p * step.cofactor != step.base**step.k - 1:
                return False
            for u in ("a", "b"):
                if base[u] == step.base and lcm[u] % step.k == 0:
                    learn(u, step.p)
        elif isinstance(step, NotDividesFact):
            if step.m < 2 or not 1 <= step.k <= _MAX_CHAIN_EXPONENT:
                return False
            if pow(step.base, step.k, step.m) == 1:
                return False
        elif isinstance(step, OrderFact):
            if step.m < 2 or _order(step.base, step.m) != step.d:
                return False
            orders.append(step)
        elif isinstance(step, DivisorConstraint):
            u, d = step.unknown, step.divisor
            if u not in base or d < 1:
                return False
            justified = lcm[u] % d == 0 or any(
                o.base == base[u] and o.d == d and _divides_member(o.m, divides[u]) for o in orders
            )
            if not justified:
                return False
            lcm[u] = lcm[u] * d // gcd(lcm[u], d)
            asserted_div[u].add(d)
        elif isinstance(step, NonDivisorConstraint):
            u, e = step.unknown, step.modulus
            if u not in base or e < 2:
                return False
            combined = lcm[u] * e // gcd(lcm[u], e)
            justified = any(
                o.base == base[u] and _multiple_of_member(o.m, not_divides[u]) and combined % o.d == 0
                for o in orders
            )
            if not justified:
                return False
            asserted_nondiv[u].add(e)
        elif isinstance(step, Conclusion):
            if i != len(chain.steps) - 1:
                return False
            return any(d % e == 0 for u in base for d in asserted_div[u] for e in asserted_nondiv[u])
        else:
            return False
    return False


def _check_chain(c: OrderChain) -> bool:
    if not verify_order_chain(c):
        return False
    x0, y0 = c.anchor
    return sorted(_boundary(c.form, c.t, x0 + 1, y0 + 1)) == list(c.solutions)


_CHECKS = {
    ResidueRectangle: _check_rectangle,
    PrimeSplit: _check_prime_split,
    OrderChain: _check_chain,
    SuccessorSmoothness: _check_successor,
    GersonidesAxiom: _check_gersonides,
}


def verify(cert) -> bool:
    check = _CHECKS.get(type(cert))
    if check is None:
        return False
    try:
        return bool(check(cert))
    except (ValueError, TypeError, ZeroDivisionError, OverflowError):
        return False

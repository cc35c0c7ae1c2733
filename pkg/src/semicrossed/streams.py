"""Symbol rules for itinerary streams.

Each rule is a small frozen object with a pure ``symbol(n) -> int`` method.
The catalog covers fixed points of substitutions (Thue-Morse, Fibonacci, or
any user-supplied prolongable substitution), mechanical words with an exact
quadratic-irrational slope, and explicit prefixes spliced onto another rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .dynamics import Word, as_word


@dataclass(frozen=True)
class ThueMorse:
    """symbol(n) = parity of the binary digit sum of n."""

    def symbol(self, n: int) -> int:
        return bin(n).count("1") & 1


# expansion cache for substitution fixed points, keyed by (rules, seed)
_SUBST_CACHE: dict = {}


@dataclass(frozen=True)
class SubstitutionFixedPoint:
    """Fixed point of a substitution ``s -> rules[s]`` starting from ``seed``.

    The substitution must be prolongable: the image of the seed begins with
    the seed itself, so iterating the substitution on the seed produces a
    nested family of prefixes of a unique infinite word.
    """

    rules: tuple  # tuple of (symbol, image word) pairs, sorted by symbol
    seed: int = 0

    def __post_init__(self):
        images = dict(self.rules)
        if self.seed not in images or not images[self.seed] or images[self.seed][0] != self.seed:
            raise ValueError("substitution is not prolongable from the seed")
        if any(not img for _, img in self.rules):
            raise ValueError("substitution images must be nonempty")

    def _prefix(self, length: int) -> list:
        key = (self.rules, self.seed)
        cached = _SUBST_CACHE.get(key)
        if cached is None:
            cached = [self.seed]
            _SUBST_CACHE[key] = cached
        images = dict(self.rules)
        while len(cached) < length:
            expanded = []
            for s in cached:
                expanded.extend(images[s])
                if len(expanded) >= max(length, 2 * len(cached)):
                    break
            if len(expanded) <= len(cached):
                raise ValueError("substitution fails to grow")
            cached[:] = expanded
        return cached

    def symbol(self, n: int) -> int:
        return self._prefix(n + 1)[n]


def substitution(rules_map, seed: int = 0) -> SubstitutionFixedPoint:
    rules = tuple(sorted((int(s), as_word(img)) for s, img in dict(rules_map).items()))
    return SubstitutionFixedPoint(rules, seed)


def thue_morse_substitution() -> SubstitutionFixedPoint:
    return substitution({0: (0, 1), 1: (1, 0)}, seed=0)


def fibonacci_word() -> SubstitutionFixedPoint:
    return substitution({0: (0, 1), 1: (0,)}, seed=0)


def _floor_affine_sqrt(a: int, b: int, d: int, c: int) -> int:
    """floor((a + b*sqrt(d)) / c) in exact integer arithmetic (c > 0, d >= 0)."""
    if c <= 0:
        raise ValueError("denominator must be positive")
    if b == 0:
        return a // c
    s2 = b * b * d
    t = isqrt(s2)
    if t * t == s2:  # sqrt is exact, the expression is rational
        x = t if b > 0 else -t
        return (a + x) // c
    if b > 0:
        return (a + t) // c
    # b*sqrt(d) = -(t + frac) with 0 < frac < 1
    return (a - t - 1) // c


@dataclass(frozen=True)
class MechanicalWord:
    """Lower mechanical word with slope ``alpha = (p + q*sqrt(d)) / r``,
    rational intercept ``rho = rho_num / rho_den`` and index origin ``n0``:

        symbol(n) = floor((n+n0+1)*alpha + rho) - floor((n+n0)*alpha + rho)

    computed exactly with integer square roots.  For an irrational slope in
    (0, 1) this is a Sturmian sequence.
    """

    p: int
    q: int
    d: int
    r: int
    rho_num: int = 0
    rho_den: int = 1
    n0: int = 0

    def __post_init__(self):
        if self.r <= 0 or self.rho_den <= 0 or self.d < 0:
            raise ValueError("invalid slope parameters")
        alpha = (self.p + self.q * self.d ** 0.5) / self.r
        if not (0.0 < alpha < 1.0):
            raise ValueError(f"slope {alpha} outside (0, 1)")

    def _floor_at(self, n: int) -> int:
        # floor(n*alpha + rho) over the common denominator r*rho_den
        a = n * self.p * self.rho_den + self.rho_num * self.r
        b = n * self.q * self.rho_den
        return _floor_affine_sqrt(a, b, self.d, self.r * self.rho_den)

    def symbol(self, n: int) -> int:
        k = n + self.n0
        return self._floor_at(k + 1) - self._floor_at(k)


def golden_mechanical() -> MechanicalWord:
    """Slope (3 - sqrt(5))/2 = 1/phi^2 with index origin 1: reproduces the
    Fibonacci substitution word symbol for symbol."""
    return MechanicalWord(p=3, q=-1, d=5, r=2, n0=1)


@dataclass(frozen=True)
class PrefixedRule:
    """Explicit finite prefix followed by another rule (re-indexed from 0)."""

    prefix: Word
    tail: object

    def symbol(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.tail.symbol(n - len(self.prefix))


def prefixed(prefix, tail) -> PrefixedRule:
    return PrefixedRule(as_word(prefix), tail)

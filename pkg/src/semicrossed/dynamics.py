"""One-sided subshifts of finite type: transition graphs, points, cycles,
and cylinder functions.

Symbols are integers ``0..m-1`` and words are tuples of symbols.  Points of
the shift space come in two flavours: eventually periodic "lasso" points
(finite preperiod + repeating period) and rule-driven itinerary streams with
a certified admissibility horizon.  Everything is immutable after
construction; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    DeadState,
    GeneratorExhausted,
    NotSurjective,
    Overflow,
    WordInadmissible,
)

Word = tuple
Symbol = int

DEFAULT_CYCLE_CAP = 100_000


def as_word(w) -> Word:
    """Coerce a word given as a tuple/list of ints or a digit string."""
    if isinstance(w, str):
        return tuple(int(ch) for ch in w)
    return tuple(int(s) for s in w)


# ---------------------------------------------------------------------------
# transition graphs


@dataclass(frozen=True)
class SftGraph:
    """A shift of finite type presented by its transition matrix.

    ``edges[i][j]`` is True when symbol ``j`` may follow symbol ``i``.  The
    ``two_sided`` flag marks the bilateral extension; the matrix itself is
    shared between the one-sided space and its extension.
    """

    alphabet_size: int
    edges: tuple
    two_sided: bool = False

    def is_edge(self, a: Symbol, b: Symbol) -> bool:
        return bool(self.edges[a][b])

    def followers(self, a: Symbol) -> Word:
        return tuple(j for j in range(self.alphabet_size) if self.edges[a][j])

    def predecessors(self, b: Symbol) -> Word:
        return tuple(i for i in range(self.alphabet_size) if self.edges[i][b])

    def word_admissible(self, word: Iterable[Symbol]) -> bool:
        word = tuple(word)
        m = self.alphabet_size
        if any(not (0 <= s < m) for s in word):
            return False
        return all(self.edges[a][b] for a, b in zip(word, word[1:]))

    def admissible_words(self, length: int) -> tuple:
        """All admissible words of the given length, lexicographically sorted."""
        return _admissible_words(self, length)

    def count_words(self, length: int) -> int:
        """Exact number of admissible words (arbitrary precision)."""
        if length <= 0:
            return 1
        m = self.alphabet_size
        vec = [1] * m
        for _ in range(length - 1):
            vec = [sum(vec[j] for j in range(m) if self.edges[i][j]) for i in range(m)]
        return sum(vec)

    def is_permutation(self) -> bool:
        """True when every symbol has exactly one follower (the space is a
        finite union of periodic orbits)."""
        return all(sum(1 for e in row if e) == 1 for row in self.edges)

    def has_aperiodic_points(self) -> bool:
        """The space contains a non-periodic point exactly when the graph is
        not a disjoint union of cycles."""
        return not self.is_permutation()

    def as_two_sided(self) -> "SftGraph":
        return SftGraph(self.alphabet_size, self.edges, two_sided=True)


def validate_sft(alphabet_size: int, edges) -> SftGraph:
    """Build a validated one-sided transition graph.

    Raises DeadState when some row is empty (a symbol with no future) and
    NotSurjective when some column is empty (the shift would not be onto).
    """
    m = int(alphabet_size)
    if m < 1:
        raise ValueError("alphabet_size must be >= 1")
    rows = tuple(tuple(bool(x) for x in row) for row in edges)
    if len(rows) != m or any(len(r) != m for r in rows):
        raise ValueError(f"edges must be a {m}x{m} matrix")
    for i, row in enumerate(rows):
        if not any(row):
            raise DeadState(f"symbol {i} has no admissible follower")
    for j in range(m):
        if not any(rows[i][j] for i in range(m)):
            raise NotSurjective(f"symbol {j} has no admissible predecessor")
    return SftGraph(m, rows, two_sided=False)


@lru_cache(maxsize=None)
def _admissible_words(g: SftGraph, length: int) -> tuple:
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return ((),)
    words = [(s,) for s in range(g.alphabet_size)]
    for _ in range(length - 1):
        words = [w + (b,) for w in words for b in g.followers(w[-1])]
    return tuple(sorted(words))


def _require_admissible(g: SftGraph, word: Word, what: str) -> None:
    if not g.word_admissible(word):
        raise WordInadmissible(f"{what} {word!r} is not admissible")


# ---------------------------------------------------------------------------
# points


def _primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d]
    return w


@dataclass(frozen=True)
class LassoPoint:
    """Eventually periodic point ``pre . per per per ...`` in normal form:
    the period is primitive and the preperiod is as short as possible."""

    graph: SftGraph
    pre: Word
    per: Word

    def symbol_at(self, k: int) -> Symbol:
        if k < len(self.pre):
            return self.pre[k]
        return self.per[(k - len(self.pre)) % len(self.per)]

    @property
    def preperiod(self) -> int:
        return len(self.pre)

    @property
    def period(self) -> int:
        return len(self.per)


def make_lasso(g: SftGraph, pre, per) -> LassoPoint:
    """Validated, normalized lasso point.

    Normalization reduces the period to its primitive root and then strips
    preperiod symbols that merely repeat the tail of the period (rotating
    the period to keep the same infinite sequence).
    """
    pre, per = as_word(pre), as_word(per)
    if not per:
        raise ValueError("period must be nonempty")
    _require_admissible(g, pre + per + per, "lasso word")
    per = _primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return LassoPoint(g, pre, per)


@dataclass(frozen=True)
class ItineraryStream:
    """Rule-driven point: symbol ``n`` of the underlying sequence is
    ``rule.symbol(n)``; this point starts at ``offset``.  Admissibility of
    adjacent pairs has been verified for indices below ``checked_to``; any
    request past that horizon raises GeneratorExhausted rather than emitting
    uncertified symbols."""

    graph: SftGraph
    rule: object
    offset: int = 0
    checked_to: int = 0

    @property
    def horizon(self) -> int:
        """Number of certified symbols remaining from the current offset."""
        return max(0, self.checked_to - self.offset)


def make_stream(g: SftGraph, rule, check_to: int, offset: int = 0) -> ItineraryStream:
    """Wrap a symbol rule as a stream point, certifying admissibility of the
    emitted sequence up to index ``check_to``."""
    if check_to < 1:
        raise ValueError("check_to must be >= 1")
    m = g.alphabet_size
    prev = None
    for i in range(offset, check_to):
        s = rule.symbol(i)
        if not (0 <= s < m):
            raise WordInadmissible(f"stream emits symbol {s} outside alphabet at index {i}")
        if prev is not None and not g.is_edge(prev, s):
            raise WordInadmissible(f"stream emits forbidden pair ({prev},{s}) at index {i - 1}")
        prev = s
    return ItineraryStream(g, rule, offset, check_to)


Point = Union[LassoPoint, ItineraryStream]


def shift_point(x: Point) -> Point:
    """Drop the first symbol: one application of the shift map."""
    if isinstance(x, LassoPoint):
        if x.pre:
            return LassoPoint(x.graph, x.pre[1:], x.per)
        return LassoPoint(x.graph, (), x.per[1:] + x.per[:1])
    return ItineraryStream(x.graph, x.rule, x.offset + 1, x.checked_to)


def itinerary(x: Point, length: int) -> Word:
    """First ``length`` symbols of the point."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if isinstance(x, LassoPoint):
        return tuple(x.symbol_at(i) for i in range(length))
    if x.offset + length > x.checked_to:
        raise GeneratorExhausted(
            f"itinerary of length {length} exceeds certified horizon {x.horizon}"
        )
    return tuple(x.rule.symbol(x.offset + i) for i in range(length))


@dataclass(frozen=True)
class PointClassification:
    kind: str  # "periodic" | "eventually_periodic" | "aperiodic_up_to"
    period: Optional[int] = None
    preperiod: Optional[int] = None
    bound: Optional[int] = None


def classify_point(x: Point, bound: int = 16) -> PointClassification:
    """Exact classification for lasso points.  For streams, certify the
    absence of any global period up to ``bound`` by scanning a prefix for
    per-period witnesses; the certified bound is reported (it may fall short
    of the request when the horizon is small or the stream looks periodic).
    """
    if isinstance(x, LassoPoint):
        if not x.pre:
            return PointClassification("periodic", period=len(x.per))
        return PointClassification(
            "eventually_periodic", period=len(x.per), preperiod=len(x.pre)
        )
    if bound < 1:
        raise ValueError("bound must be >= 1")
    scan = min(x.horizon, max(64, 4 * bound))
    if scan < 2:
        raise GeneratorExhausted("horizon too small to classify")
    w = itinerary(x, scan)
    certified = 0
    for p in range(1, bound + 1):
        if any(w[i] != w[i + p] for i in range(scan - p)):
            certified = p
        else:
            break
    return PointClassification("aperiodic_up_to", bound=certified)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class Cycle:
    """Primitive cycle of the transition graph, stored as the
    lexicographically least rotation of its symbol word."""

    graph: SftGraph
    word: Word

    @property
    def period(self) -> int:
        return len(self.word)

    def point(self) -> LassoPoint:
        """The periodic point tracing this cycle."""
        return make_lasso(self.graph, (), self.word)


def _least_rotation(w: Word) -> Word:
    return min(w[i:] + w[:i] for i in range(len(w)))


def enumerate_cycles(g: SftGraph, max_period: int, cap: int = DEFAULT_CYCLE_CAP) -> tuple:
    """All primitive cycles of period <= max_period, one per rotation class,
    sorted by (period, word).  Raises Overflow past ``cap`` cycles."""
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    out = []
    for p in range(1, max_period + 1):
        for w in g.admissible_words(p):
            if not g.is_edge(w[-1], w[0]):
                continue
            if _primitive_root(w) != w:
                continue
            if _least_rotation(w) != w:
                continue  # one representative per rotation class
            out.append(Cycle(g, w))
            if len(out) > cap:
                raise Overflow(
                    f"more than {cap} cycles up to period {max_period}; raise the cap"
                )
    return tuple(sorted(out, key=lambda c: (c.period, c.word)))


def girth(g: SftGraph) -> int:
    """Length of the shortest cycle (exists for every validated graph)."""
    for p in range(1, g.alphabet_size + 1):
        for w in g.admissible_words(p):
            if g.is_edge(w[-1], w[0]):
                return p
    raise AssertionError("validated graph must contain a cycle")


# ---------------------------------------------------------------------------
# cylinder functions


@dataclass(frozen=True)
class CylinderFunction:
    """Complex-valued function of the first ``window`` coordinates, stored as
    a total table on the admissible words of that length."""

    graph: SftGraph
    window: int
    values: Mapping  # Word -> complex

    def __eq__(self, other):
        if not isinstance(other, CylinderFunction):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.window == other.window
            and dict(self.values) == dict(other.values)
        )


def make_cylinder(g: SftGraph, window: int, values: Mapping) -> CylinderFunction:
    """Validated cylinder function: the table must cover exactly the
    admissible words of the window length."""
    if window < 1:
        raise ValueError("window must be >= 1")
    table = {as_word(w): complex(v) for w, v in values.items()}
    admissible = set(g.admissible_words(window))
    extra = set(table) - admissible
    if extra:
        raise WordInadmissible(f"values assigned to inadmissible words: {sorted(extra)[:3]}")
    missing = admissible - set(table)
    if missing:
        raise ValueError(f"missing values for admissible words: {sorted(missing)[:3]}")
    return CylinderFunction(g, window, MappingProxyType(table))


def constant_cylinder(g: SftGraph, value, window: int = 1) -> CylinderFunction:
    return make_cylinder(g, window, {w: value for w in g.admissible_words(window)})


def is_constant(f: CylinderFunction) -> bool:
    vals = set(f.values.values())
    return len(vals) <= 1


def eval_cylinder(f: CylinderFunction, x: Point) -> complex:
    """Value of the cylinder function at a point of the shift space."""
    w = itinerary(x, f.window)
    try:
        return f.values[w]
    except KeyError:  # unreachable for validated inputs; defensive
        raise WordInadmissible(f"itinerary prefix {w!r} is not admissible") from None


def compose_shift(f: CylinderFunction, n: int) -> CylinderFunction:
    """The composition with the n-th iterate of the shift: a cylinder
    function of window ``window + n`` reading coordinates ``n+1 .. n+window``."""
    if n < 0:
        raise ValueError("shift power must be >= 0")
    if n == 0:
        return f
    g = f.graph
    k = f.window
    table = {w: f.values[w[n:]] for w in g.admissible_words(k + n)}
    return CylinderFunction(g, k + n, MappingProxyType(table))


def extend_window(f: CylinderFunction, window: int) -> CylinderFunction:
    """Reinterpret ``f`` as a function of a longer window (values depend on
    the prefix only)."""
    if window < f.window:
        raise ValueError("cannot shrink a window")
    if window == f.window:
        return f
    g = f.graph
    table = {w: f.values[w[: f.window]] for w in g.admissible_words(window)}
    return CylinderFunction(g, window, MappingProxyType(table))


def _aligned(f: CylinderFunction, h: CylinderFunction):
    if f.graph != h.graph:
        raise ValueError("cylinder functions live on different graphs")
    k = max(f.window, h.window)
    return extend_window(f, k), extend_window(h, k)


def cylinder_add(f: CylinderFunction, h: CylinderFunction) -> CylinderFunction:
    f, h = _aligned(f, h)
    table = {w: f.values[w] + h.values[w] for w in f.values}
    return CylinderFunction(f.graph, f.window, MappingProxyType(table))


def cylinder_mul(f: CylinderFunction, h: CylinderFunction) -> CylinderFunction:
    f, h = _aligned(f, h)
    table = {w: f.values[w] * h.values[w] for w in f.values}
    return CylinderFunction(f.graph, f.window, MappingProxyType(table))


def cylinder_scale(f: CylinderFunction, c) -> CylinderFunction:
    c = complex(c)
    table = {w: c * v for w, v in f.values.items()}
    return CylinderFunction(f.graph, f.window, MappingProxyType(table))


def cylinder_arith(f: CylinderFunction, h: Optional[CylinderFunction] = None,
                   op: str = "add", scalar=None) -> CylinderFunction:
    """Pointwise arithmetic with automatic window alignment."""
    if op == "add":
        return cylinder_add(f, h)
    if op == "mul":
        return cylinder_mul(f, h)
    if op == "scale":
        return cylinder_scale(f, scalar)
    raise ValueError(f"unknown op {op!r}")


def sup_norm(f: CylinderFunction) -> float:
    """Supremum norm; exact since every admissible word names a nonempty
    cylinder set."""
    return max(abs(v) for v in f.values.values())

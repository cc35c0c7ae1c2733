"""Two-sided natural extension of a one-sided subshift.

A point of the extension is a full backward orbit: a bi-infinite admissible
sequence.  We realize the computable ones as "bi-lasso" points -- a left
period repeating toward -infinity, an explicit center block, and a right
period repeating toward +infinity.  Coordinate ``n`` of the abstract
backward-orbit tuple corresponds to the one-sided ray starting at bi-sequence
index ``2 - n``, so the projection onto the base space reads the ray from
index 1 and one application of the extended map shifts all indices down by
one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from types import MappingProxyType
from typing import Mapping, Optional

from .dynamics import (
    CylinderFunction,
    LassoPoint,
    SftGraph,
    Word,
    _primitive_root,
    as_word,
    make_lasso,
)
from .errors import WordInadmissible


def extend_system(g: SftGraph) -> SftGraph:
    """The two-sided shift on the same transition graph."""
    return g.as_two_sided()


# ---------------------------------------------------------------------------
# bi-lasso points


@dataclass(frozen=True)
class BiLassoPoint:
    """Bi-infinite admissible sequence ``... left left | center | right right ...``
    with the center block occupying indices ``start .. start+len(center)-1``.

    Stored in a canonical form: both periods are primitive, the center is
    minimal (symbols that merely continue a period are absorbed into it), and
    globally periodic points are aligned to the least rotation of the period
    with ``0 <= start < period``.
    """

    graph: SftGraph
    left: Word
    center: Word
    start: int
    right: Word

    def symbol_at(self, i: int) -> int:
        s, c = self.start, self.center
        if i < s:
            return self.left[(i - s) % len(self.left)]
        if i < s + len(c):
            return c[i - s]
        return self.right[(i - s - len(c)) % len(self.right)]

    def window(self, lo: int, hi: int) -> Word:
        """Symbols at indices lo .. hi-1."""
        return tuple(self.symbol_at(i) for i in range(lo, hi))

    @property
    def center_end(self) -> int:
        return self.start + len(self.center)


def _rot_left(w: Word, k: int = 1) -> Word:
    k %= len(w)
    return w[k:] + w[:k]


def _rot_right(w: Word, k: int = 1) -> Word:
    return _rot_left(w, len(w) - (k % len(w)))


def _normalize_bilasso(left: Word, center: Word, start: int, right: Word):
    left = _primitive_root(left)
    right = _primitive_root(right)
    # absorb center symbols into the right period (from the right end) ...
    while center and center[-1] == right[-1]:
        right = _rot_right(right)
        center = center[:-1]
    # ... and into the left period (from the left end)
    while center and center[0] == left[0]:
        left = _rot_left(left)
        center = center[1:]
        start += 1
    if not center:
        if left == right:
            # globally periodic: canonical alignment at the least rotation
            p = len(right)
            fill = tuple(right[(i - start) % p] for i in range(2 * p))
            least = min(_rot_left(right, k) for k in range(p))
            for s in range(p):
                if fill[s : s + p] == least:
                    return least, (), s, least
            raise AssertionError("primitive word must realign")
        # aperiodic seam: push the junction as far left as it goes (both
        # periods rotate with it, since their phases are anchored to start)
        guard = len(left) * len(right)
        while left[-1] == right[-1]:
            left = _rot_right(left)
            right = _rot_right(right)
            start -= 1
            guard -= 1
            if guard < 0:
                raise AssertionError("endless junction implies global periodicity")
    return left, center, start, right


def make_bilasso(g: SftGraph, left, center, start: int, right) -> BiLassoPoint:
    """Validated, canonical bi-lasso point."""
    left, center, right = as_word(left), as_word(center), as_word(right)
    if not left or not right:
        raise ValueError("both periods must be nonempty")
    for w, name in ((left, "left period"), (right, "right period")):
        if not g.word_admissible(w + w):
            raise WordInadmissible(f"{name} {w!r} is not an admissible loop")
    seam = left + center + right  # covers every junction
    if not g.word_admissible(seam):
        raise WordInadmissible(f"junction in {seam!r} is not admissible")
    left, center, start, right = _normalize_bilasso(left, center, start, right)
    return BiLassoPoint(g, left, center, start, right)


def bilasso_from_cycle(g: SftGraph, word) -> BiLassoPoint:
    """The bi-periodic point tracing a cycle, aligned so index 1 reads the
    first cycle symbol."""
    w = as_word(word)
    return make_bilasso(g, w, (), 1, w)


def same_bisequence(x: BiLassoPoint, y: BiLassoPoint) -> bool:
    """Semantic equality by comparing symbols on a window wide enough to
    pin down both eventually periodic tails."""
    if x.graph != y.graph:
        return False
    lp = len(x.left) * len(y.left) // gcd(len(x.left), len(y.left))
    rp = len(x.right) * len(y.right) // gcd(len(x.right), len(y.right))
    lo = min(x.start, y.start) - 2 * lp
    hi = max(x.center_end, y.center_end) + 2 * rp
    return x.window(lo, hi) == y.window(lo, hi)


# ---------------------------------------------------------------------------
# projection, dynamics, lifting


def ray_point(x: BiLassoPoint, i0: int) -> LassoPoint:
    """One-sided ray read from bi-sequence index ``i0`` onward, in lasso
    normal form."""
    end = x.center_end
    if i0 >= end:
        per = _rot_left(x.right, (i0 - end) % len(x.right))
        return make_lasso(x.graph, (), per)
    pre = x.window(i0, end)
    return make_lasso(x.graph, pre, x.right)


def project_p(x: BiLassoPoint) -> LassoPoint:
    """Canonical projection onto the base space: the ray from index 1."""
    return ray_point(x, 1)


def apply_phi_tilde(x: BiLassoPoint, n: int = 1) -> BiLassoPoint:
    """n-th power of the extended shift homeomorphism (n may be negative):
    coordinate i of the result is coordinate i+n of the input."""
    return make_bilasso(x.graph, x.left, x.center, x.start - n, x.right)


def lift_point(x: LassoPoint) -> BiLassoPoint:
    """Canonical lift of a base point into the extension.

    The base sequence occupies indices 1, 2, ...; indices 0, -1, -2, ... are
    filled one at a time with the least admissible predecessor of the current
    leftmost symbol.  The predecessor rule iterates a deterministic map on
    symbols, so it enters a cycle within alphabet-size steps; that cycle
    becomes the left period.
    """
    g = x.graph
    chain = [x.symbol_at(0)]  # chain[k] sits at bi-index 1-k
    seen = {chain[0]: 0}
    while True:
        nxt = min(g.predecessors(chain[-1]))
        if nxt in seen:
            i = seen[nxt]
            if i == 0:
                # the repeat closes on the base symbol itself (bi-index 1,
                # outside the fill region); realign one step into the fill
                chain.append(nxt)
                i = 1
            j = len(chain)
            break
        seen[nxt] = len(chain)
        chain.append(nxt)
    # chain[i] repeats with period j-i from bi-index 1-i leftward
    left = tuple(reversed(chain[i:j]))
    center = tuple(reversed(chain[1:i])) + x.pre  # bi-indices 2-i .. len(pre)
    return make_bilasso(g, left, center, 2 - i, x.per)


def backward_orbit_view(x: BiLassoPoint, depth: int) -> tuple:
    """Backward-orbit coordinates 1..depth: coordinate n is the ray from
    bi-sequence index 2-n."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return tuple(ray_point(x, 2 - n) for n in range(1, depth + 1))


@dataclass(frozen=True)
class ExtendedClassification:
    periodic: bool
    period: Optional[int]
    finite_coordinate_repeats: bool


def classify_extended_point(x: BiLassoPoint) -> ExtendedClassification:
    """Global periodicity of the bi-sequence.  In canonical form the point is
    periodic exactly when the center is empty and the two periods coincide.
    Each backward-orbit coordinate value recurs only finitely often precisely
    in the aperiodic case, which the report records."""
    periodic = not x.center and x.left == x.right
    return ExtendedClassification(
        periodic=periodic,
        period=len(x.right) if periodic else None,
        finite_coordinate_repeats=not periodic,
    )


# ---------------------------------------------------------------------------
# two-sided cylinder functions


@dataclass(frozen=True)
class TwoSidedCylinder:
    """Complex function of the coordinates ``start .. start+window-1`` of a
    two-sided point; the table covers all admissible words of that length."""

    graph: SftGraph
    start: int
    window: int
    values: Mapping

    def __eq__(self, other):
        if not isinstance(other, TwoSidedCylinder):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.start == other.start
            and self.window == other.window
            and dict(self.values) == dict(other.values)
        )


def make_two_sided(g: SftGraph, start: int, window: int, values: Mapping) -> TwoSidedCylinder:
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
    return TwoSidedCylinder(g, start, window, MappingProxyType(table))


def embed_function(f: CylinderFunction) -> TwoSidedCylinder:
    """Pull a base cylinder function back through the projection: the result
    reads coordinates 1 .. window of the extension."""
    return make_two_sided(f.graph, 1, f.window, f.values)


def shift_window(f: TwoSidedCylinder, n: int) -> TwoSidedCylinder:
    """Composition with the n-th power of the extended shift: the reading
    window translates by n (n may be negative)."""
    return TwoSidedCylinder(f.graph, f.start + n, f.window, f.values)


def eval_two_sided(f: TwoSidedCylinder, x: BiLassoPoint) -> complex:
    word = x.window(f.start, f.start + f.window)
    try:
        return f.values[word]
    except KeyError:  # defensive: bi-lasso points are admissible by construction
        raise WordInadmissible(f"window word {word!r} is not admissible") from None


def to_one_sided(f: TwoSidedCylinder) -> CylinderFunction:
    """Reinterpret a two-sided cylinder whose window sits at indices >= 1 as
    a base cylinder function (of the first start+window-1 coordinates)."""
    if f.start < 1:
        raise ValueError("window must start at index >= 1 to descend to the base")
    g = f.graph
    k = f.start + f.window - 1
    table = {w: f.values[w[f.start - 1 : f.start - 1 + f.window]] for w in g.admissible_words(k)}
    return CylinderFunction(g, k, MappingProxyType(table))


def _aligned_two_sided(f: TwoSidedCylinder, h: TwoSidedCylinder):
    if f.graph != h.graph:
        raise ValueError("cylinder functions live on different graphs")
    lo = min(f.start, h.start)
    hi = max(f.start + f.window, h.start + h.window)
    g = f.graph

    def ext(c: TwoSidedCylinder) -> TwoSidedCylinder:
        if c.start == lo and c.start + c.window == hi:
            return c
        off = c.start - lo
        table = {w: c.values[w[off : off + c.window]] for w in g.admissible_words(hi - lo)}
        return TwoSidedCylinder(g, lo, hi - lo, MappingProxyType(table))

    return ext(f), ext(h)


def two_sided_add(f: TwoSidedCylinder, h: TwoSidedCylinder) -> TwoSidedCylinder:
    f, h = _aligned_two_sided(f, h)
    table = {w: f.values[w] + h.values[w] for w in f.values}
    return TwoSidedCylinder(f.graph, f.start, f.window, MappingProxyType(table))


def two_sided_mul(f: TwoSidedCylinder, h: TwoSidedCylinder) -> TwoSidedCylinder:
    f, h = _aligned_two_sided(f, h)
    table = {w: f.values[w] * h.values[w] for w in f.values}
    return TwoSidedCylinder(f.graph, f.start, f.window, MappingProxyType(table))


def two_sided_scale(f: TwoSidedCylinder, c) -> TwoSidedCylinder:
    c = complex(c)
    table = {w: c * v for w, v in f.values.items()}
    return TwoSidedCylinder(f.graph, f.start, f.window, MappingProxyType(table))


def two_sided_sup_norm(f: TwoSidedCylinder) -> float:
    return max(abs(v) for v in f.values.values())


# ---------------------------------------------------------------------------
# dynamical properties, base vs extension


PROPERTIES = ("transitive", "periodic_dense", "minimal", "recurrent_dense")


def _reachable_from(g: SftGraph, a: int) -> set:
    """Forward closure of a symbol under the one-sided word extension."""
    seen = {a}
    frontier = [a]
    while frontier:
        v = frontier.pop()
        for w in g.followers(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


def _base_property(g: SftGraph, prop: str, closure_length: int = 6) -> bool:
    """One-sided word-closure checks.

    transitive: every cylinder can be continued into every other, i.e. every
    symbol reaches every other by admissible words.
    periodic_dense / recurrent_dense: every admissible word (up to the
    closure length) is the prefix of a periodic point, i.e. the word's last
    symbol reaches its first.
    minimal: the word count never branches (one follower per symbol) and the
    single resulting loop visits every symbol.
    """
    m = g.alphabet_size
    reach = {a: _reachable_from(g, a) for a in range(m)}
    if prop == "transitive":
        return all(b in reach[a] for a in range(m) for b in range(m))
    if prop in ("periodic_dense", "recurrent_dense"):
        # recurrent points are exactly the closures of periodic words here,
        # so both predicates reduce to the same word-closure condition
        for length in range(1, closure_length + 1):
            for w in g.admissible_words(length):
                if w[0] not in reach[w[-1]]:
                    return False
        return True
    if prop == "minimal":
        if g.count_words(2) != m:
            return False
        return all(b in reach[a] for a in range(m) for b in range(m))
    raise ValueError(f"unknown property {prop!r}")


def _tarjan_scc_ids(g: SftGraph) -> list:
    """Iterative Tarjan strongly-connected-component ids."""
    m = g.alphabet_size
    index = [-1] * m
    low = [0] * m
    comp = [-1] * m
    on_stack = [False] * m
    stack: list = []
    counter = 0
    n_comp = 0
    for root in range(m):
        if index[root] != -1:
            continue
        work = [(root, iter(g.followers(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(g.followers(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
    return comp


def _extension_property(g: SftGraph, prop: str) -> bool:
    """Two-sided checks via the component structure: a two-sided word closes
    into a bi-periodic point exactly when it stays inside one strongly
    connected component."""
    m = g.alphabet_size
    comp = _tarjan_scc_ids(g)
    if prop == "transitive":
        return len(set(comp)) == 1
    if prop in ("periodic_dense", "recurrent_dense"):
        return all(
            comp[a] == comp[b]
            for a in range(m)
            for b in range(m)
            if g.edges[a][b]
        )
    if prop == "minimal":
        return g.is_permutation() and len(set(comp)) == 1
    raise ValueError(f"unknown property {prop!r}")


def property_check(g: SftGraph, prop: str, side: str) -> bool:
    """Dynamical property of the base system or its extension.

    The two sides deliberately use independent code paths (one-sided word
    closure with BFS reachability vs two-sided closure with Tarjan
    components); for shifts of finite type the answers must agree.

    ``transitive`` is taken in the standard sense: some forward orbit meets
    every nonempty open set, which for these graphs is strong connectivity.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    if side == "base":
        return _base_property(g, prop)
    if side == "extension":
        return _extension_property(g, prop)
    raise ValueError(f"side must be 'base' or 'extension', got {side!r}")


@dataclass(frozen=True)
class PropertyReport:
    property: str
    base: bool
    extension: bool

    @property
    def agreement(self) -> bool:
        return self.base == self.extension


def transfer_check(g: SftGraph) -> tuple:
    """Verify that each dynamical property holds for the base system exactly
    when it holds for the extension."""
    return tuple(
        PropertyReport(p, property_check(g, p, "base"), property_check(g, p, "extension"))
        for p in PROPERTIES
    )

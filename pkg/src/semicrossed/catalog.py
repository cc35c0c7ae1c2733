"""A small zoo of named shift systems used by the test suite, the bundled
configs, and anyone who wants a quick graph without typing a matrix.

The collection deliberately spans the structural axes the library cares
about: full shifts (mixing, far from invertible), the golden-mean shift,
single cycles (already invertible, minimal extensions), permutations with
several orbits, and graphs with more than one strongly connected
component (eventually-periodic behaviour, transfer-property failures).
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import SftGraph, validate_sft


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: SftGraph
    summary: str


def _entry(name: str, edges, summary: str) -> CatalogEntry:
    return CatalogEntry(name, validate_sft(len(edges), edges), summary)


_ENTRIES = (
    _entry("full-2", [[1, 1], [1, 1]], "full shift on two symbols"),
    _entry("full-3", [[1, 1, 1], [1, 1, 1], [1, 1, 1]], "full shift on three symbols"),
    _entry("golden-mean", [[1, 1], [1, 0]], "no two consecutive 1s"),
    _entry("fixed-point", [[1]], "single fixed point"),
    _entry("two-cycle", [[0, 1], [1, 0]], "one periodic orbit of length 2"),
    _entry(
        "three-cycle",
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
        "one periodic orbit of length 3",
    ),
    _entry(
        "sink-tail",
        [[1, 1], [0, 1]],
        "0s may flip to 1 once; every orbit is eventually constant 1",
    ),
    _entry(
        "funnel",
        [[1, 1, 0], [0, 0, 1], [0, 1, 0]],
        "a loop at 0 feeding a 2-cycle on {1,2}; two strongly connected pieces",
    ),
    _entry(
        "two-fixed-points",
        [[1, 0], [0, 1]],
        "permutation with two orbits; invertible but not minimal",
    ),
    _entry(
        "mixing-3",
        [[1, 1, 0], [1, 0, 1], [1, 0, 0]],
        "strongly connected 3-symbol graph with cycles of coprime lengths",
    ),
    _entry(
        "swap-plus-rest",
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        "permutation: a 2-cycle on {0,1} and a fixed point at 2",
    ),
)

CATALOG = {e.name: e for e in _ENTRIES}


def catalog_names() -> tuple:
    return tuple(e.name for e in _ENTRIES)


def get_system(name: str) -> SftGraph:
    try:
        return CATALOG[name].graph
    except KeyError:
        known = ", ".join(catalog_names())
        raise KeyError(f"unknown system {name!r}; catalog has: {known}") from None

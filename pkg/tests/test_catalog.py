"""Built-in example systems."""

import pytest

from semicrossed.catalog import CATALOG, CatalogEntry, catalog_names, get_system
from semicrossed.dynamics import validate_sft


def test_catalog_is_populated_and_consistent():
    assert len(CATALOG) >= 10
    for name, entry in CATALOG.items():
        assert isinstance(entry, CatalogEntry)
        assert entry.name == name
        assert entry.summary
        # every stored graph revalidates
        edges = [[1 if e else 0 for e in row] for row in entry.graph.edges]
        assert validate_sft(entry.graph.alphabet_size, edges) == entry.graph


def test_names_are_unique_and_match_keys():
    names = catalog_names()
    assert len(names) == len(set(names))
    assert list(names) == list(CATALOG)
    assert "golden-mean" in names and "full-2" in names


def test_get_system_round_trip():
    g = get_system("golden-mean")
    assert g.alphabet_size == 2
    assert not g.is_edge(1, 1)


def test_get_system_unknown_names_known():
    with pytest.raises(KeyError) as exc:
        get_system("no-such-system")
    assert "golden-mean" in str(exc.value)

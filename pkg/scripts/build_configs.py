#!/usr/bin/env python3
"""Regenerate the bundled example configs in configs/.

Each config wraps one catalog graph with a few cylinder functions,
polynomial elements, and sample points, so every CLI command has a
ready-made target.  Run from anywhere; paths are anchored at the repo
root.  The files double as fixtures for the test suite, so regenerate
them only together with the tests that pin their contents.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from semicrossed.catalog import CATALOG  # noqa: E402
from semicrossed.config import load_config  # noqa: E402


def weighted_indicator(g, window: int = 1) -> dict:
    """A simple non-constant function: weight 1 on words starting with 0,
    1/2 on the rest."""
    values = {}
    for w in g.admissible_words(window):
        key = "".join(map(str, w))
        values[key] = 1.0 if w[0] == 0 else 0.5
    return {"window": window, "values": values}


def two_window_mix(g) -> dict:
    """Window-2 function with distinct weights per word, exercising wider
    cylinder supports."""
    words = g.admissible_words(2)
    values = {}
    for i, w in enumerate(words):
        key = "".join(map(str, w))
        values[key] = [round(0.25 + 0.5 * i / max(1, len(words) - 1), 6), 0.25]
    return {"window": 2, "values": values}


def base_elements() -> dict:
    return {
        "U": [{"power": 1}],
        "onePlusU": [{"power": 0}, {"power": 1}],
        "fU": [{"power": 1, "function": "f"}],
        "mixed": [{"power": 0}, {"power": 1, "function": "f"}, {"power": 2, "function": "g"}],
    }


def first_cycle_word(g) -> list:
    """Lexicographically least short cycle, for lasso points."""
    from semicrossed.dynamics import enumerate_cycles, girth

    return list(enumerate_cycles(g, girth(g))[0].word)


def seam_point(g) -> dict | None:
    from semicrossed.representations import seam_points

    pts = seam_points(g)
    if not pts:
        return None
    x = pts[0]
    return {
        "kind": "bilasso",
        "left": list(x.left),
        "center": list(x.center),
        "at": x.start,
        "right": list(x.right),
    }


def build_config(name: str) -> dict:
    entry = CATALOG[name]
    g = entry.graph
    cfg = {
        "name": name,
        "alphabet_size": g.alphabet_size,
        "edges": [[1 if e else 0 for e in row] for row in g.edges],
        "functions": {"f": weighted_indicator(g), "g": two_window_mix(g)},
        "elements": base_elements(),
        "points": {},
        "policy": {
            "K_initial": 8,
            "K_max": 256,
            "tolerance": 1e-6,
            "lambda_grid": 128,
            "refine_steps": 60,
            "max_period": 4,
            "word_cap": 100000,
            "mode": "beam:8",
        },
    }
    cyc = first_cycle_word(g)
    cfg["points"]["cycleStart"] = {"kind": "lasso", "pre": [], "per": cyc}
    seam = seam_point(g)
    if seam is not None:
        cfg["points"]["seam"] = seam
    if name == "full-2":
        # an eventually-periodic demo and a never-periodic stream
        cfg["points"]["tail"] = {"kind": "lasso", "pre": [0, 1, 1, 0], "per": [1]}
        cfg["points"]["thueMorse"] = {"kind": "stream", "rule": "thue-morse", "check_to": 4096}
    if name == "golden-mean":
        cfg["points"]["fib"] = {"kind": "stream", "rule": "fibonacci", "check_to": 4096}
        cfg["points"]["tail"] = {"kind": "lasso", "pre": [1, 0], "per": [0]}
    if name == "full-3":
        cfg["points"]["tail"] = {"kind": "lasso", "pre": [2, 1], "per": [0, 1]}
    return cfg


def main() -> int:
    out_dir = ROOT / "configs"
    out_dir.mkdir(exist_ok=True)
    for name in CATALOG:
        cfg = build_config(name)
        load_config(cfg)  # must round-trip before we write it
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(cfg, indent=2, sort_keys=True) + "\n")
        print("wrote", path.relative_to(ROOT))
    return 0


if __name__ == "__main__":
    sys.exit(main())

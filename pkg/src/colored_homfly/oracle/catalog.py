"""Committed PD fixtures and the plat words they were generated from.

Twist knots are stored with the chirality the colored formulas describe:
``p`` negative-letter half-twists on positions 1-2, a positive clasp letter
on 0-1 and one more negative letter on 1-2. The Whitehead link is
amphichiral, so its word is used as drawn.

Variants tagged ``_r2`` insert a canceling pair of letters, ``_r3`` insert
``s1 s2 s1 (s2 s1 s2)^-1``, which needs a third Reidemeister move to remove.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .diagram import UNKNOT, Diagram
from .plat import plat_closure

FIXTURE_DIR = Path(__file__).with_name("fixtures")

_R3 = [(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]


def twist_word(p: int) -> list[tuple[int, int]]:
    return [(1, -1)] * p + [(0, 1), (1, -1)]


WH_WORD = [(1, 1), (1, 1), (0, -1), (1, 1), (1, 1)]

WORDS: dict[str, tuple[list[tuple[int, int]], int]] = {
    "unknot_kink": ([(0, 1)], 2),
    "unknot_negkink": ([(0, -1)], 2),
    "4_1": (twist_word(2), 4),
    "5_2": (twist_word(3), 4),
    "6_1": (twist_word(4), 4),
    "twist_5": (twist_word(5), 4),
    "twist_6": (twist_word(6), 4),
    "wh": (WH_WORD, 4),
    "4_1_r3": (twist_word(2)[:2] + _R3 + twist_word(2)[2:], 4),
    "5_2_r2": (twist_word(3)[:3] + [(2, 1), (2, -1)] + twist_word(3)[3:], 4),
    "5_2_r3": (twist_word(3)[:1] + _R3 + twist_word(3)[1:], 4),
    "6_1_r2": (twist_word(4)[:4] + [(0, -1), (0, 1)] + twist_word(4)[4:], 4),
    "twist_5_r2": ([(1, 1), (1, -1)] + twist_word(5), 4),
    "wh_r2": (WH_WORD[:2] + [(2, -1), (2, 1)] + WH_WORD[2:], 4),
    "wh_r3": (WH_WORD[:3] + _R3 + WH_WORD[3:], 4),
}

# fixture name -> knot selector accepted by invariants.parse_knot
KNOT_OF = {"5_2": "5_2", "6_1": "6_1", "twist_5": "twist:5", "twist_6": "twist:6", "wh": "wh", "4_1": "4_1"}


def build(name: str) -> Diagram:
    if name == "unknot":
        return UNKNOT
    if name not in WORDS:
        raise KeyError(f"unknown fixture {name!r}")
    word, width = WORDS[name]
    return plat_closure(word, width, name=name)


def fixture_names() -> list[str]:
    return ["unknot"] + list(WORDS)


def load_fixture(name: str) -> Diagram:
    """Load a committed fixture; the JSON is validated on load."""
    try:
        text = resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text()
    except FileNotFoundError:
        raise KeyError(f"unknown fixture {name!r}") from None
    return Diagram.from_dict(json.loads(text))


def write_fixtures(directory: Path = FIXTURE_DIR) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in fixture_names():
        path = directory / f"{name}.json"
        path.write_text(build(name).to_json() + "\n")
        out.append(path)
    return out

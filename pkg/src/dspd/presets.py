"""Named experiment settings, one per published setting string.

A preset name reads ``"<family> <size> <method> <sample size>"``, e.g.
``"bin 20000 rand 200"``.  The block-structured family keeps a fixed block
size and scales the number of blocks, so its "20000/40000/100000" labels are
nominal (actual node counts 22360/44720/111800).
"""

from __future__ import annotations

from typing import Tuple

from .graphs import BinomialGraph, GraphSpec, PowerLawGraph, SbmGraph
from .sampling import RANDOM, SNOWBALL, SampleSpec

SIZE_LABELS = (20000, 40000, 100000)
SAMPLE_SIZES = (200, 400, 1000)

_GRAPHS = {
    ("bin", 20000): BinomialGraph(20000, 0.0005),
    ("bin", 40000): BinomialGraph(40000, 0.00025),
    ("bin", 100000): BinomialGraph(100000, 0.0001),
    ("pow_a", 20000): PowerLawGraph(20000, 2.0, 6, 29),
    ("pow_a", 40000): PowerLawGraph(40000, 2.0, 6, 29),
    ("pow_a", 100000): PowerLawGraph(100000, 2.0, 6, 29),
    ("pow_b", 20000): PowerLawGraph(20000, 3.0, 6, 19),
    ("pow_b", 40000): PowerLawGraph(40000, 3.0, 6, 19),
    ("pow_b", 100000): PowerLawGraph(100000, 3.0, 6, 19),
    ("sbm", 20000): SbmGraph(130, 172, 0.08323, 0.00004718),
    ("sbm", 40000): SbmGraph(260, 172, 0.08323, 0.00004718),
    ("sbm", 100000): SbmGraph(650, 172, 0.08323, 0.00004718),
}

_METHODS = {"rand": RANDOM, "snow": SNOWBALL}

SNOWBALL_RETENTION = 0.5


def preset(name: str) -> Tuple[GraphSpec, SampleSpec]:
    """Resolve a setting string like ``"bin 20000 rand 200"``."""
    parts = name.split()
    if len(parts) != 4:
        raise ValueError(
            f"preset {name!r} must read '<family> <size> <method> <s>'")
    family, size_text, method_text, s_text = parts
    try:
        size = int(size_text)
        s = int(s_text)
    except ValueError:
        raise ValueError(f"preset {name!r} has non-integer size fields")
    if (family, size) not in _GRAPHS:
        raise ValueError(f"unknown graph setting {family!r} at size {size}")
    if method_text not in _METHODS:
        raise ValueError(f"unknown sampling method {method_text!r}")
    if s not in SAMPLE_SIZES:
        raise ValueError(f"unknown sample size {s}; pick one of {SAMPLE_SIZES}")
    graph = _GRAPHS[(family, size)]
    sample = SampleSpec(_METHODS[method_text], s, SNOWBALL_RETENTION)
    return graph, sample


def preset_names() -> list:
    """All supported setting strings, in table order."""
    names = []
    for family in ("bin", "pow_a", "pow_b", "sbm"):
        for size in SIZE_LABELS:
            for method in ("rand", "snow"):
                for s in SAMPLE_SIZES:
                    names.append(f"{family} {size} {method} {s}")
    return names

"""Named group corpora and corpus files."""
from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .errors import SpecParseError
from .groups import CayleyGroup, make_group

DEFAULT_CORPUS = (
    "cyclic:3",
    "cyclic:9",
    "cyclic:27",
    "abelian:3,3",
    "abelian:9,3",
    "abelian:2,2",
    "dihedral:8",
    "dihedral:16",
    "quaternion:8",
    "heisenberg:3",
    "modular:3",
    "wreath:3",
    "product(cyclic:3,heisenberg:3)",
    "product(cyclic:2,dihedral:8)",
    "product(cyclic:9,cyclic:3)",
)

# Extra groups whose Hom rings have non-zero products or odd primes other than 3.
EXTENDED_CORPUS = DEFAULT_CORPUS + (
    "cyclic:1",
    "heisenberg:5",
    "modular:5",
    "modular:3,4",
    "modular:2,4",
    "dihedral:32",
    "quaternion:16",
    "product(cyclic:3,modular:3)",
    "product(cyclic:4,quaternion:8)",
)

NAMED = {"default": DEFAULT_CORPUS, "extended": EXTENDED_CORPUS}


@lru_cache(maxsize=None)
def corpus_group(spec: str) -> CayleyGroup:
    """``make_group`` memoised per spec, so repeated runs share derived data."""
    return make_group(spec)


def load_corpus(path: str | Path) -> tuple[str, ...]:
    """Read group specs from a JSON list / ``{"groups": [...]}`` file or a text file (one per line, ``#`` comments)."""
    if str(path) in NAMED:
        return NAMED[str(path)]
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read corpus {path}: {exc.strerror}") from None
    if path.suffix == ".json":
        data = json.loads(text)
        specs = data["groups"] if isinstance(data, dict) else data
    else:
        specs = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    specs = tuple(s for s in specs if s)
    if not specs:
        raise SpecParseError(f"corpus {path} is empty")
    base = path.parent
    return tuple(_resolve(s, base) for s in specs)


def _resolve(spec: str, base: Path) -> str:
    # cayley paths in a corpus file are relative to the file
    if spec.startswith("cayley:") and not Path(spec[7:]).is_absolute():
        return "cayley:" + str(base / spec[7:])
    return spec

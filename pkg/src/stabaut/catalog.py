"""Built-in example codes and the plain-text code file format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .group import StabilizerGroup, build_group


@dataclass(frozen=True)
class Expected:
    n: int
    k: int
    d: int | None = None
    strong: int | None = None
    weak: int | None = None
    clifford: int | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    generators: tuple[str, ...]
    expected: Expected
    long_kinds: tuple[str, ...] = field(default=())

    def group(self) -> StabilizerGroup:
        return build_group(list(self.generators))


_ENTRIES = [
    CatalogEntry(
        "513",
        "[[5,1,3]] perfect code",
        ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"),
        Expected(5, 1, 3, strong=10, weak=10, clifford=120),
    ),
    CatalogEntry(
        "604",
        "[[6,0,4]] maximally entangled state",
        ("IXZZXI", "IIXZZX", "IXIXZZ", "IZXIXZ", "XXXXXX", "ZZZZZZ"),
        Expected(6, 0, 4, strong=10, weak=60, clifford=720),
    ),
    CatalogEntry(
        "713",
        "[[7,1,3]] Steane code",
        ("IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"),
        Expected(7, 1, 3, strong=168, weak=168, clifford=168),
    ),
    CatalogEntry(
        "833",
        "[[8,3,3]] code",
        ("XIZIYZXY", "IXZZYXYI", "IZXIYYZX", "IZIYZXXY", "ZZZZZZZZ"),
        Expected(8, 3, 3, strong=8, weak=56, clifford=168),
    ),
    CatalogEntry(
        "823",
        "[[8,2,3]] subcode of the [[8,3,3]] code",
        ("XIZIYZXY", "IXZZYXYI", "IZXIYYZX", "IZZYZXZZ", "IIZIIIYX", "ZZZZZZZZ"),
        Expected(8, 2, 3, strong=2, weak=2),
    ),
    CatalogEntry(
        "1004",
        "[[10,0,4]] cyclic code with an M10.2 Clifford-twisted group",
        (
            "XIIZXZXZII", "IXIIZXZXZI", "IIXIIZXZXZ", "ZIIXIIZXZX", "XZIIXIIZXZ",
            "ZXZIIXIIZX", "XZXZIIXIIZ", "ZXZXZIIXII", "IZXZXZIIXI", "IIZXZXZIIX",
        ),
        Expected(10, 0, 4, strong=20, weak=20, clifford=1440),
    ),
    CatalogEntry(
        "1115",
        "[[11,1,5]] code",
        (
            "ZZZZZZIIIII", "XXXXXXIIIII", "IIIZXYYYYXZ", "IIIXYZZZZYX", "ZYXIIIZYXII",
            "XZYIIIXZYII", "IIIZYXXYZII", "IIIXZYZXYII", "ZXYIIIZZZXY", "YZXIIIYYYZX",
        ),
        Expected(11, 1, 5),
        long_kinds=("clifford",),
    ),
    CatalogEntry(
        "ex24",
        "3-qubit example with S = {III, XZZ, ZXZ, YYI}",
        ("XZZ", "ZXZ"),
        Expected(3, 1, strong=2),
    ),
    CatalogEntry(
        "ex28",
        "3-qubit example with a signed stabilizer",
        ("XXX", "YYI", "ZXZ"),
        Expected(3, 0, strong=2, weak=6),
    ),
    CatalogEntry(
        "422a",
        "[[4,2,2]] code <XXXX, ZZZZ>",
        ("XXXX", "ZZZZ"),
        Expected(4, 2, 2, strong=24),
    ),
    CatalogEntry(
        "422b",
        "[[4,2,2]] code <XXZZ, YYXX>",
        ("XXZZ", "YYXX"),
        Expected(4, 2, 2, strong=4, weak=4, clifford=24),
    ),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


class UnknownCode(KeyError):
    def __str__(self) -> str:
        return f"unknown code {self.args[0]!r}; available: {', '.join(CATALOG)}"


def catalog_lookup(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCode(name) from None


_HEADER_RE = re.compile(r"\[\[\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]\]")


def parse_code_text(text: str) -> tuple[list[str], Expected | None]:
    """Generators and the optional ``# [[n,k,d]]`` expectation of a code file."""
    gens = []
    expected = None
    for line in text.splitlines():
        body, _, comment = line.partition("#")
        if comment and expected is None:
            m = _HEADER_RE.search(comment)
            if m:
                n, k, d = m.groups()
                expected = Expected(int(n), int(k), int(d) if d else None)
        body = body.strip()
        if body:
            gens.append(body)
    return gens, expected


def load_code_file(path: str | Path) -> tuple[list[str], Expected | None]:
    return parse_code_text(Path(path).read_text(encoding="utf-8"))

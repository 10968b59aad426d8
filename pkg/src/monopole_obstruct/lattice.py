"""Intersection forms built from standard unimodular blocks."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Block(Enum):
    H = ("H", 2, 0, True)
    E8_PLUS = ("E8p", 8, 8, True)
    E8_MINUS = ("E8m", 8, -8, True)
    DIAG_PLUS = ("D1p", 1, 1, False)
    DIAG_MINUS = ("D1m", 1, -1, False)

    def __init__(self, code: str, rank: int, signature: int, even: bool):
        self.code = code
        self.rank = rank
        self.signature = signature
        self.even = even


_BY_CODE = {b.code: b for b in Block}
_ORDER = list(Block)


class LatticeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class InvalidCharacteristic(ValueError):
    pass


class Invariants(NamedTuple):
    rank: int
    signature: int
    b_plus: int
    b_minus: int
    parity: str


@dataclass(frozen=True)
class IntersectionLattice:
    counts: tuple[tuple[Block, int], ...] = ()

    def __init__(self, counts=None):
        c = Counter()
        if counts:
            items = counts.items() if isinstance(counts, dict) else counts
            for block, n in items:
                if n < 0:
                    raise ValueError("block counts must be nonnegative")
                c[block] += n
        object.__setattr__(self, "counts", tuple((b, c[b]) for b in _ORDER if c[b]))

    @classmethod
    def of(cls, **kw: int) -> IntersectionLattice:
        """IntersectionLattice.of(H=3, E8_MINUS=2)."""
        return cls({Block[name]: n for name, n in kw.items()})

    def count(self, block: Block) -> int:
        return dict(self.counts).get(block, 0)

    @property
    def rank(self) -> int:
        return sum(b.rank * n for b, n in self.counts)

    @property
    def signature(self) -> int:
        return sum(b.signature * n for b, n in self.counts)

    @property
    def b_plus(self) -> int:
        return (self.rank + self.signature) // 2

    @property
    def b_minus(self) -> int:
        return (self.rank - self.signature) // 2

    @property
    def is_even(self) -> bool:
        return all(b.even for b, _ in self.counts)

    def __add__(self, other: IntersectionLattice) -> IntersectionLattice:
        return connected_sum(self, other)

    def __mul__(self, k: int) -> IntersectionLattice:
        return IntersectionLattice([(b, n * k) for b, n in self.counts])

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "+".join(f"{n}{b.code}" for b, n in self.counts) or "0"


H = IntersectionLattice({Block.H: 1})
E8_PLUS = IntersectionLattice({Block.E8_PLUS: 1})
E8_MINUS = IntersectionLattice({Block.E8_MINUS: 1})
DIAG_PLUS = IntersectionLattice({Block.DIAG_PLUS: 1})
DIAG_MINUS = IntersectionLattice({Block.DIAG_MINUS: 1})
EMPTY = IntersectionLattice()

_TERM = re.compile(r"\s*(\d*)\s*(E8p|E8m|D1p|D1m|H)\s*")


def parse_lattice(text: str) -> IntersectionLattice:
    """Parse ``10H+6E8m+3D1p``.  A missing count means 1; ``0`` or an empty
    string is the empty lattice."""
    if text.strip() in ("", "0"):
        return EMPTY
    counts: Counter = Counter()
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise LatticeSyntaxError("expected <count><H|E8p|E8m|D1p|D1m>", text, pos)
        counts[_BY_CODE[m.group(2)]] += int(m.group(1)) if m.group(1) else 1
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise LatticeSyntaxError("expected '+'", text, pos)
        pos += 1
    return IntersectionLattice(counts)


def connected_sum(a: IntersectionLattice, b: IntersectionLattice) -> IntersectionLattice:
    return IntersectionLattice(list(a.counts) + list(b.counts))


def lattice_invariants(L: IntersectionLattice) -> Invariants:
    return Invariants(L.rank, L.signature, L.b_plus, L.b_minus, "even" if L.is_even else "odd")


@dataclass(frozen=True)
class SpinCData:
    """Characteristic element recorded only through its square."""

    c_squared: int
    is_spin: bool = False

    @classmethod
    def spin(cls) -> SpinCData:
        return cls(0, True)

    def validate(self, L: IntersectionLattice) -> None:
        if (self.c_squared - L.signature) % 8:
            raise InvalidCharacteristic(
                f"c^2 = {self.c_squared} is not congruent to the signature {L.signature} mod 8"
            )
        if self.is_spin:
            if not L.is_even:
                raise InvalidCharacteristic(f"lattice {L} is odd and admits no spin structure")
            if self.c_squared != 0:
                raise InvalidCharacteristic("a spin structure has c = 0")


def dirac_index(L: IntersectionLattice, s: SpinCData) -> int:
    """(c^2 - signature) / 8."""
    s.validate(L)
    return (s.c_squared - L.signature) // 8

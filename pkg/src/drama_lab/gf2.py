"""Bit-level linear algebra over GF(2) using int bitsets.

Masks are XOR functions of physical-address bits: evaluating a mask on an
address XORs the address bits selected by the mask.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InconsistentSystem, UnderdeterminedSystem

# Physical addresses are modeled as 40-bit unsigned integers.
MAX_ADDRESS_BITS = 40
ADDRESS_MASK = (1 << MAX_ADDRESS_BITS) - 1


@dataclass(frozen=True, order=True)
class BitMask:
    """Set of address-bit indices, packed into one machine word."""

    value: int = 0

    def __post_init__(self) -> None:
        if self.value < 0 or self.value >> MAX_ADDRESS_BITS:
            raise ValueError(f"mask uses bits >= {MAX_ADDRESS_BITS}: {self.value:#x}")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "BitMask":
        value = 0
        for i in indices:
            if not 0 <= int(i) < MAX_ADDRESS_BITS:
                raise ValueError(f"bit index out of range: {i}")
            value |= 1 << int(i)
        return cls(value)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(MAX_ADDRESS_BITS) if (self.value >> i) & 1)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def evaluate(self, addr: int) -> int:
        return (self.value & addr).bit_count() & 1

    def __xor__(self, other: "BitMask") -> "BitMask":
        return BitMask(self.value ^ other.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __contains__(self, bit: int) -> bool:
        return bool((self.value >> bit) & 1)

    def to_json(self) -> list[int]:
        return list(self.indices)

    def pretty(self) -> str:
        if not self.value:
            return "0"
        return " xor ".join(f"a{i}" for i in self.indices)


def eval_mask(mask: BitMask, addr: int) -> int:
    """XOR of the address bits selected by the mask."""
    return mask.evaluate(addr)


@dataclass
class Gf2System:
    """Linear equations: parity(rows[i] AND solution) == rhs[i]."""

    rows: list[BitMask] = field(default_factory=list)
    rhs: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.rhs):
            raise ValueError("rows and rhs length mismatch")
        if any(b not in (0, 1) for b in self.rhs):
            raise ValueError("rhs entries must be bits")

    @classmethod
    def from_observations(
        cls, observations: Iterable[tuple[int, int]], universe: "BitMask | None" = None
    ) -> "Gf2System":
        """Build a system from (address, observed bit) pairs.

        Address bits outside the universe are ignored; they are not unknowns.
        """
        keep = universe.value if universe is not None else ADDRESS_MASK
        rows, rhs = [], []
        for addr, bit in observations:
            rows.append(BitMask(addr & keep))
            rhs.append(int(bit))
        return cls(rows, rhs)

    def __len__(self) -> int:
        return len(self.rows)


def solve_system(system: Gf2System, universe: Iterable[int] | None = None) -> BitMask:
    """Solve for the unique mask satisfying every equation.

    Unknowns are the universe bits (default: every bit appearing in a row).
    Gaussian elimination with deterministic pivot order, lowest bit first.
    Raises InconsistentSystem or UnderdeterminedSystem; the returned mask is
    re-substituted into all equations before returning, so a wrong answer is
    never produced silently.
    """
    if universe is None:
        seen = 0
        for row in system.rows:
            seen |= row.value
        cols = [i for i in range(MAX_ADDRESS_BITS) if (seen >> i) & 1]
    else:
        cols = sorted(set(int(i) for i in universe))
    universe_mask = 0
    for c in cols:
        universe_mask |= 1 << c

    work = [(row.value & universe_mask, bit) for row, bit in zip(system.rows, system.rhs)]
    pivots: list[tuple[int, int, int]] = []  # (col, lhs, rhs) in ascending col order
    for col in cols:
        pivot_idx = None
        for i, (lhs, _) in enumerate(work):
            if (lhs >> col) & 1:
                pivot_idx = i
                break
        if pivot_idx is None:
            continue
        plhs, prhs = work.pop(pivot_idx)
        work = [
            (lhs ^ plhs, bit ^ prhs) if (lhs >> col) & 1 else (lhs, bit)
            for lhs, bit in work
        ]
        pivots.append((col, plhs, prhs))

    if any(lhs == 0 and bit == 1 for lhs, bit in work):
        raise InconsistentSystem("equations contradict each other")

    free = sorted(set(cols) - {col for col, _, _ in pivots})
    if free:
        raise UnderdeterminedSystem(free)

    solution = 0
    for col, lhs, rhs in reversed(pivots):
        rest = lhs ^ (1 << col)
        if rhs ^ ((rest & solution).bit_count() & 1):
            solution |= 1 << col

    for row, bit in zip(system.rows, system.rhs):
        if (row.value & universe_mask & solution).bit_count() & 1 != bit:
            raise InconsistentSystem("solution failed re-substitution")
    return BitMask(solution)


def enumerate_masks(bit_universe: Iterable[int], weight: int) -> Iterator[BitMask]:
    """Yield every mask of exactly `weight` bits drawn from the universe.

    Deterministic lexicographic order over the sorted universe.
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    bits = sorted(set(int(i) for i in bit_universe))
    for combo in itertools.combinations(bits, weight):
        yield BitMask.from_indices(combo)


def mask_rank(masks: Sequence[BitMask]) -> int:
    """Rank of the masks viewed as GF(2) row vectors."""
    pivots: dict[int, int] = {}
    rank = 0
    for m in masks:
        v = m.value
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def reduce_to_independent(masks: Sequence[BitMask]) -> list[BitMask]:
    """Greedy linearly independent subset, preferring low-weight masks.

    Every input mask lies in the span of the output.
    """
    ordered = sorted(masks, key=lambda m: (m.weight, m.value))
    pivots: dict[int, int] = {}
    kept: list[BitMask] = []
    for m in ordered:
        v = m.value
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                kept.append(m)
                break
    return kept


def in_span(mask: BitMask, basis: Sequence[BitMask]) -> bool:
    return mask_rank(list(basis) + [mask]) == mask_rank(basis)


def spans_equal(a: Sequence[BitMask], b: Sequence[BitMask]) -> bool:
    """True iff both mask lists generate the same GF(2) subspace.

    Mutual rank check; no basis canonicalization.
    """
    ra = mask_rank(a)
    rb = mask_rank(b)
    return ra == rb == mask_rank(list(a) + list(b))


def restrict_span(masks: Sequence[BitMask], visible_bits: Iterable[int]) -> list[BitMask]:
    """Basis of the sub-span supported entirely on the visible bits.

    Eliminates the invisible coordinates: rows that can be combined to drop
    every invisible bit survive, everything else is projected away.
    """
    visible = 0
    for b in visible_bits:
        visible |= 1 << int(b)
    rows = [m.value for m in masks if m.value]
    support = 0
    for r in rows:
        support |= r
    hidden = [i for i in range(MAX_ADDRESS_BITS) if (support >> i) & 1 and not (visible >> i) & 1]
    for col in hidden:
        pivot = None
        for i, r in enumerate(rows):
            if (r >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        p = rows.pop(pivot)
        rows = [r ^ p if (r >> col) & 1 else r for r in rows]
    return reduce_to_independent([BitMask(r) for r in rows if r])

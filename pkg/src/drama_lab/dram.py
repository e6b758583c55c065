"""Model of a multi-channel DRAM subsystem.

A configuration decodes a physical address into a bank coordinate (one bit
per XOR addressing function), a row index and a column index. The mutable
state tracks the open row of every bank plus a seeded stochastic latency
model, and is the ground-truth oracle for the reverse-engineering,
covert-channel and side-channel code.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DramaLabError
from .gf2 import MAX_ADDRESS_BITS, BitMask

FUNCTION_LABELS = ("CPU", "Channel", "DIMM", "Rank", "BG0", "BG1", "BA0", "BA1", "BA2")

# Decode order of the bank-address vector: selector functions first, then
# bank-group and bank bits.
_LABEL_ORDER = {label: i for i, label in enumerate(FUNCTION_LABELS)}


class LatencyClass(enum.Enum):
    CACHE_HIT = "cache_hit"
    ROW_HIT = "row_hit"
    ROW_CONFLICT = "row_conflict"


@dataclass(frozen=True)
class AddressFunction:
    """One bank-coordinate bit: an XOR of physical-address bits, optionally labeled."""

    mask: BitMask
    label: str | None = None

    def __post_init__(self) -> None:
        if self.label is not None and self.label not in FUNCTION_LABELS:
            raise ValueError(f"unknown function label: {self.label!r}")
        if not self.mask:
            raise ValueError("addressing function must use at least one bit")


@dataclass(frozen=True)
class Decoded:
    bank: tuple[int, ...]
    row: int
    column: int


@dataclass(frozen=True)
class DramConfig:
    """Geometry plus the ordered addressing functions of one machine."""

    name: str
    bus_width_bits: int
    functions: tuple[AddressFunction, ...]
    row_bits: tuple[int, ...]
    column_bits: tuple[int, ...]
    notes: str = ""

    def __post_init__(self) -> None:
        if self.bus_width_bits not in (64, 32):
            raise ValueError("bus width must be 64 or 32 bits")
        byte_bits = self.byte_bits
        for fn in self.functions:
            low = fn.mask.indices[0]
            if low < byte_bits:
                raise ValueError(
                    f"{self.name}: function {fn.label} uses byte-index bit a{low}"
                )
        for bit in (*self.row_bits, *self.column_bits):
            if not byte_bits <= bit < MAX_ADDRESS_BITS:
                raise ValueError(f"{self.name}: row/column bit a{bit} out of range")
        if set(self.row_bits) & set(self.column_bits):
            raise ValueError(f"{self.name}: row and column bits overlap")

    @property
    def byte_bits(self) -> int:
        return (self.bus_width_bits // 8).bit_length() - 1

    @property
    def row_size_bytes(self) -> int:
        return (1 << len(self.column_bits)) * self.bus_width_bits // 8

    @property
    def bank_count(self) -> int:
        return 1 << len(self.functions)

    @property
    def channel_count(self) -> int:
        return 1 << sum(1 for f in self.functions if f.label == "Channel")

    def function_masks(self) -> np.ndarray:
        return np.array([f.mask.value for f in self.functions], dtype=np.int64)

    def row_mask(self) -> int:
        mask = 0
        for b in self.row_bits:
            mask |= 1 << b
        return mask

    def labeled(self, label: str) -> AddressFunction:
        for fn in self.functions:
            if fn.label == label:
                return fn
        raise KeyError(label)

    def decode(self, addr: int) -> Decoded:
        """Pure decode of one address; repeated calls agree."""
        _check_addr(addr)
        bank = tuple(f.mask.evaluate(addr) for f in self.functions)
        row = _gather_bits(addr, self.row_bits)
        column = _gather_bits(addr, self.column_bits)
        return Decoded(bank=bank, row=row, column=column)

    def bank_index(self, addr: int) -> int:
        """Bank vector packed into an int, function 0 at bit 0."""
        _check_addr(addr)
        idx = 0
        for i, f in enumerate(self.functions):
            idx |= f.mask.evaluate(addr) << i
        return idx

    def same_bank(self, a: int, b: int) -> bool:
        """True iff both addresses land in the same channel/DIMM/rank/bank.

        Uses linearity: the functions agree iff they vanish on the XOR of the
        two addresses.
        """
        _check_addr(a)
        _check_addr(b)
        diff = a ^ b
        return all((f.mask.value & diff).bit_count() & 1 == 0 for f in self.functions)

    def to_json_dict(self) -> dict:
        doc = {
            "name": self.name,
            "bus_width_bits": self.bus_width_bits,
            "functions": [
                {"label": f.label, "bits": f.mask.to_json()} for f in self.functions
            ],
            "row_bits": list(self.row_bits),
            "column_bits": list(self.column_bits),
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "DramConfig":
        functions = tuple(
            AddressFunction(BitMask.from_indices(f["bits"]), f.get("label"))
            for f in doc["functions"]
        )
        return cls(
            name=doc["name"],
            bus_width_bits=int(doc["bus_width_bits"]),
            functions=functions,
            row_bits=tuple(int(b) for b in doc["row_bits"]),
            column_bits=tuple(int(b) for b in doc["column_bits"]),
            notes=doc.get("notes", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "DramConfig":
        return cls.from_json_dict(json.loads(text))


def _check_addr(addr: int) -> None:
    if not 0 <= addr < (1 << MAX_ADDRESS_BITS):
        raise ValueError(f"address out of 40-bit range: {addr:#x}")


def _gather_bits(addr: int, bits: Iterable[int]) -> int:
    value = 0
    for i, b in enumerate(bits):
        value |= ((addr >> b) & 1) << i
    return value


@dataclass(frozen=True)
class TimingModel:
    """Mean latencies per access class plus truncated Gaussian jitter.

    Defaults put the row-hit mass in the 180..216 cycle band observed on real
    parts and the conflict mass well above it; noise is clipped at +/- 4 sigma
    so the classes stay separable and latencies stay positive.
    """

    cache_hit_cycles: float = 70.0
    row_hit_cycles: float = 200.0
    row_conflict_cycles: float = 330.0
    noise_stddev: float = 8.0
    refresh_interval_cycles: float | None = None

    def __post_init__(self) -> None:
        if not self.cache_hit_cycles < self.row_hit_cycles < self.row_conflict_cycles:
            raise ValueError("latency classes must be ordered hit < row hit < conflict")
        if self.noise_stddev < 0:
            raise ValueError("noise stddev must be >= 0")
        if self.refresh_interval_cycles is not None and self.refresh_interval_cycles <= 0:
            raise ValueError("refresh interval must be positive")

    def mean(self, cls: LatencyClass) -> float:
        return {
            LatencyClass.CACHE_HIT: self.cache_hit_cycles,
            LatencyClass.ROW_HIT: self.row_hit_cycles,
            LatencyClass.ROW_CONFLICT: self.row_conflict_cycles,
        }[cls]

    def conflict_threshold(self) -> float:
        return (self.row_hit_cycles + self.row_conflict_cycles) / 2.0

    def hit_threshold(self) -> float:
        return (self.cache_hit_cycles + self.row_hit_cycles) / 2.0


class DramState:
    """Mutable simulated machine: per-bank open rows and a simulated clock.

    Single-owner: one mutator at a time. Parallel experiments take separate
    instances with distinct seeds.
    """

    def __init__(self, config: DramConfig, timing: TimingModel | None = None, seed: int = 0):
        self.config = config
        self.timing = timing if timing is not None else TimingModel()
        self.rng = np.random.default_rng(seed)
        self.open_rows: dict[int, int] = {}
        self.now_cycles = 0.0
        self._fn_masks = [f.mask.value for f in config.functions]
        self._row_bits = config.row_bits
        interval = self.timing.refresh_interval_cycles
        self._next_refresh = interval if interval is not None else float("inf")

    def _decode_fast(self, addr: int) -> tuple[int, int]:
        bank = 0
        for i, m in enumerate(self._fn_masks):
            bank |= ((m & addr).bit_count() & 1) << i
        return bank, _gather_bits(addr, self._row_bits)

    def _noise(self) -> float:
        sigma = self.timing.noise_stddev
        if sigma == 0.0:
            return 0.0
        draw = self.rng.standard_normal() * sigma
        return float(np.clip(draw, -4.0 * sigma, 4.0 * sigma))

    def _latency(self, cls: LatencyClass) -> float:
        return self.timing.mean(cls) + self._noise()

    def _maybe_refresh(self) -> None:
        interval = self.timing.refresh_interval_cycles
        if interval is None:
            return
        if self.now_cycles >= self._next_refresh:
            self.open_rows.clear()
            periods = int(self.now_cycles // interval) + 1
            self._next_refresh = periods * interval

    def access(self, addr: int, cached: bool = False) -> float:
        """One memory access; returns its latency and advances the clock.

        Cached accesses never reach DRAM and leave every row buffer as-is.
        Uncached accesses hit the open row, activate into a pre-charged bank
        at row-hit cost, or pre-charge + activate on a conflict; afterwards
        the accessed row is the bank's open row.
        """
        _check_addr(addr)
        self._maybe_refresh()
        if cached:
            latency = self._latency(LatencyClass.CACHE_HIT)
        else:
            bank, row = self._decode_fast(addr)
            open_row = self.open_rows.get(bank)
            if open_row is None or open_row == row:
                latency = self._latency(LatencyClass.ROW_HIT)
            else:
                latency = self._latency(LatencyClass.ROW_CONFLICT)
            self.open_rows[bank] = row
        self.now_cycles += latency
        return latency

    def access_class(self, addr: int) -> LatencyClass:
        """Class of the next uncached access to addr, without performing it."""
        bank, row = self._decode_fast(addr)
        open_row = self.open_rows.get(bank)
        if open_row is None or open_row == row:
            return LatencyClass.ROW_HIT
        return LatencyClass.ROW_CONFLICT

    def refresh(self) -> None:
        """Return every bank to the pre-charged state. Idempotent."""
        self.open_rows.clear()

    def advance(self, cycles: float) -> None:
        """Let simulated time pass without touching DRAM."""
        if cycles < 0:
            raise ValueError("cannot advance backwards")
        self.now_cycles += cycles
        self._maybe_refresh()

"""HyperLogLog counters with a fixed, portable 64-bit hash.

Hashing uses the SplitMix64 finalizer (Steele, Lea & Flood; the variant in
``java.util.SplittableRandom``). An item ``x`` hashes to
``mix64(x XOR mix64(seed XOR GOLDEN))`` where all arithmetic is modulo 2**64.
This is fixed for all versions of this package so register contents are
reproducible across platforms.
"""

from __future__ import annotations

import math

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

MIN_LOG2M = 4
MAX_LOG2M = 16

# 2**-k for every representable register value.
_INV_POW2 = np.ldexp(1.0, -np.arange(0, 66))


class IncompatibleCounters(ValueError):
    pass


def _mix64_int(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def hash64(ids, seed: int) -> np.ndarray:
    """Seeded 64-bit hash of nonnegative integer ids (vectorized)."""
    key = np.uint64(_mix64_int(seed ^ GOLDEN))
    z = np.asarray(ids).astype(np.uint64) ^ key
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _bit_length(w: np.ndarray) -> np.ndarray:
    w = w.copy()
    for shift in (1, 2, 4, 8, 16, 32):
        w |= w >> np.uint64(shift)
    return np.bitwise_count(w).astype(np.int64)


def register_updates(ids, log2m: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Register index and value each id would write.

    The index is the low ``log2m`` bits of the hash; the value is one plus
    the number of leading zeros in the remaining ``64 - log2m`` bits.
    """
    h = hash64(ids, seed)
    index = (h & np.uint64((1 << log2m) - 1)).astype(np.int64)
    w = h >> np.uint64(log2m)
    rho = (64 - log2m) - _bit_length(w) + 1
    return index, rho.astype(np.uint8)


def alpha(m: int) -> float:
    if m == 16:
        return 0.673
    if m == 32:
        return 0.697
    if m == 64:
        return 0.709
    return 0.7213 / (1.0 + 1.079 / m)


def estimate_registers(registers: np.ndarray) -> np.ndarray | float:
    """HyperLogLog estimate for one register array or a stack of them.

    Uses the raw harmonic-mean estimate, switching to linear counting when
    the raw value is at most ``2.5 m`` and some register is still zero.
    """
    regs = np.asarray(registers)
    single = regs.ndim == 1
    regs = np.atleast_2d(regs)
    m = regs.shape[1]
    denom = _INV_POW2[regs].sum(axis=1)
    raw = alpha(m) * m * m / denom
    zeros = (regs == 0).sum(axis=1)
    small = (raw <= 2.5 * m) & (zeros > 0)
    est = raw.copy()
    if small.any():
        est[small] = m * np.log(m / zeros[small])
    return float(est[0]) if single else est


class HllCounter:
    """A HyperLogLog counter with ``2**log2m`` registers.

    Two counters can be merged only when they share ``log2m`` and ``seed``.
    """

    __slots__ = ("log2m", "seed", "registers")

    def __init__(self, log2m: int = 10, seed: int = 0, registers: np.ndarray | None = None):
        if not MIN_LOG2M <= log2m <= MAX_LOG2M:
            raise ValueError(f"log2m={log2m} outside [{MIN_LOG2M}, {MAX_LOG2M}]")
        self.log2m = log2m
        self.seed = int(seed) & _MASK64
        if registers is None:
            registers = np.zeros(1 << log2m, dtype=np.uint8)
        else:
            registers = np.array(registers, dtype=np.uint8)
            if registers.shape != (1 << log2m,):
                raise ValueError("register array has the wrong length")
        self.registers = registers

    @property
    def m(self) -> int:
        return 1 << self.log2m

    def copy(self) -> "HllCounter":
        return HllCounter(self.log2m, self.seed, self.registers)

    def add(self, item: int) -> "HllCounter":
        """Add one item in place; returns ``self``."""
        return self.update([item])

    def update(self, items) -> "HllCounter":
        items = np.asarray(items, dtype=np.uint64).ravel()
        if items.size:
            index, rho = register_updates(items, self.log2m, self.seed)
            np.maximum.at(self.registers, index, rho)
        return self

    def compatible(self, other: "HllCounter") -> bool:
        return self.log2m == other.log2m and self.seed == other.seed

    def union(self, other: "HllCounter") -> "HllCounter":
        """New counter sketching the union of both input sets."""
        if not self.compatible(other):
            raise IncompatibleCounters(
                f"cannot merge (log2m={self.log2m}, seed={self.seed}) "
                f"with (log2m={other.log2m}, seed={other.seed})"
            )
        return HllCounter(self.log2m, self.seed, np.maximum(self.registers, other.registers))

    __or__ = union

    def estimate(self) -> float:
        return estimate_registers(self.registers)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HllCounter):
            return NotImplemented
        return self.compatible(other) and np.array_equal(self.registers, other.registers)

    def __repr__(self) -> str:
        return f"HllCounter(log2m={self.log2m}, seed={self.seed}, estimate={self.estimate():.1f})"


def standard_error(log2m: int) -> float:
    """Asymptotic relative standard error ``1.04 / sqrt(m)``."""
    return 1.04 / math.sqrt(1 << log2m)

"""Factorization shapes and the mixed-radix bijection between global and
local basis indices.

The convention is big-endian: for dims (d_1, ..., d_K) the first local
index is the most significant digit, i = i_1*d_2*...*d_K + ... + i_K.
Subsystems are subsets of the K factor positions; ``split_index`` sends a
global index to its (subsystem, complement) digit pair and ``merge_index``
inverts that.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConfigError, IndexOutOfRange

__all__ = [
    "FactorizationShape",
    "SubsystemMask",
    "encode",
    "decode",
    "split_index",
    "merge_index",
    "natural_state_lower_bound",
    "orthant_sphere_area",
]


@dataclass(frozen=True)
class FactorizationShape:
    """Ordered local dimensions (d_1, ..., d_K), each at least 2."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 1:
            raise ConfigError("a factorization needs at least one factor")
        if any(d < 2 for d in dims):
            raise ConfigError(f"every local dimension must be >= 2, got {dims}")

    @cached_property
    def total(self) -> int:
        return math.prod(self.dims)

    @property
    def k(self) -> int:
        return len(self.dims)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = [1] * self.k
        for pos in range(self.k - 2, -1, -1):
            out[pos] = out[pos + 1] * self.dims[pos + 1]
        return tuple(out)

    @cached_property
    def _digit_table(self) -> np.ndarray:
        idx = np.arange(self.total)
        cols = [(idx // s) % d for s, d in zip(self.strides, self.dims)]
        table = np.stack(cols, axis=1)
        table.setflags(write=False)
        return table

    def digit_table(self) -> np.ndarray:
        """Read-only (N, K) table; row i equals decode(self, i)."""
        return self._digit_table

    @classmethod
    def parse(cls, text: str) -> "FactorizationShape":
        """Accept "2x3x2" and the power form "2^12"."""
        text = text.strip().lower()
        m = re.fullmatch(r"(\d+)\^(\d+)", text)
        if m:
            base, exp = int(m.group(1)), int(m.group(2))
            if exp < 1:
                raise ConfigError(f"exponent must be >= 1 in {text!r}")
            return cls((base,) * exp)
        try:
            dims = tuple(int(p) for p in text.split("x"))
        except ValueError as exc:
            raise ConfigError(f"cannot parse shape {text!r}") from exc
        return cls(dims)

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True)
class SubsystemMask:
    """A subset of the K factor positions (bit p set = position p included)."""

    mask: int
    shape: FactorizationShape

    def __post_init__(self) -> None:
        if not 0 <= self.mask < 1 << self.shape.k:
            raise ConfigError(
                f"mask 0b{self.mask:b} does not address {self.shape.k} positions"
            )

    @classmethod
    def from_positions(cls, shape: FactorizationShape, positions) -> "SubsystemMask":
        mask = 0
        for p in positions:
            p = int(p)
            if not 0 <= p < shape.k:
                raise ConfigError(f"position {p} outside 0..{shape.k - 1}")
            mask |= 1 << p
        return cls(mask, shape)

    @classmethod
    def parse(cls, shape: FactorizationShape, text: str) -> "SubsystemMask":
        """Comma list of 1-based factor positions, e.g. "1,3,5"."""
        try:
            positions = [int(p) - 1 for p in text.split(",") if p.strip()]
        except ValueError as exc:
            raise ConfigError(f"cannot parse subsystem positions {text!r}") from exc
        return cls.from_positions(shape, positions)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.shape.k) if self.mask >> p & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_proper(self) -> bool:
        return 0 < self.mask < (1 << self.shape.k) - 1

    def complement(self) -> "SubsystemMask":
        return SubsystemMask(self.mask ^ ((1 << self.shape.k) - 1), self.shape)

    @cached_property
    def dim(self) -> int:
        """Dimension of the subsystem: product of its local dimensions."""
        return math.prod(self.shape.dims[p] for p in self.positions)


def encode(shape: FactorizationShape, local_indices) -> int:
    """Global index of a tuple of local indices (big-endian mixed radix)."""
    locs = tuple(local_indices)
    if len(locs) != shape.k:
        raise IndexOutOfRange(f"expected {shape.k} local indices, got {len(locs)}")
    total = 0
    for pos, (i, d, s) in enumerate(zip(locs, shape.dims, shape.strides)):
        i = int(i)
        if not 0 <= i < d:
            raise IndexOutOfRange(f"local index {i} at position {pos} outside [0, {d})")
        total += i * s
    return total


def decode(shape: FactorizationShape, index: int) -> tuple[int, ...]:
    """Local indices of a global index; inverse of :func:`encode`."""
    index = int(index)
    if not 0 <= index < shape.total:
        raise IndexOutOfRange(f"index {index} outside [0, {shape.total})")
    return tuple((index // s) % d for s, d in zip(shape.strides, shape.dims))


def split_index(shape: FactorizationShape, mask: SubsystemMask, index: int) -> tuple[int, int]:
    """Send a global index to its (subsystem, complement) digit pair.

    Each half is re-encoded big-endian over its positions in ascending
    order; the map index -> (row, col) is a bijection onto the product of
    the two subsystem dimension ranges.
    """
    locs = decode(shape, index)
    row = col = 0
    for pos in range(shape.k):
        if mask.mask >> pos & 1:
            row = row * shape.dims[pos] + locs[pos]
        else:
            col = col * shape.dims[pos] + locs[pos]
    return row, col


def _digits_of(value: int, dims: list[int]) -> list[int]:
    total = math.prod(dims)
    if not 0 <= value < total:
        raise IndexOutOfRange(f"index {value} outside [0, {total})")
    out = []
    for d in reversed(dims):
        out.append(value % d)
        value //= d
    return out[::-1]


def merge_index(shape: FactorizationShape, mask: SubsystemMask, row: int, col: int) -> int:
    """Inverse of :func:`split_index`."""
    inside = mask.positions
    outside = mask.complement().positions
    digits_in = _digits_of(int(row), [shape.dims[p] for p in inside])
    digits_out = _digits_of(int(col), [shape.dims[p] for p in outside])
    locs = [0] * shape.k
    for p, v in zip(inside, digits_in):
        locs[p] = v
    for p, v in zip(outside, digits_out):
        locs[p] = v
    return encode(shape, locs)


def natural_state_lower_bound(n: int) -> int:
    """Lower bound on the number of distinct states reachable from
    integer-component vectors of a given width: 2**n - 2, the count of
    nontrivial subsets (exact big-integer arithmetic)."""
    if n < 2:
        raise ConfigError(f"dimension must be >= 2, got {n}")
    return (1 << n) - 2


def orthant_sphere_area(n: int) -> float:
    """Area of the part of the unit sphere in the nonnegative orthant of
    R^n: n * pi**(n/2) / (2**n * Gamma(n/2 + 1)).

    Evaluated through the log-Gamma function so large n cannot overflow.
    """
    if n < 1:
        raise ConfigError(f"dimension must be >= 1, got {n}")
    log_area = (
        math.log(n)
        + 0.5 * n * math.log(math.pi)
        - n * math.log(2.0)
        - math.lgamma(0.5 * n + 1.0)
    )
    return math.exp(log_area)

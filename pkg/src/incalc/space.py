"""Weighted sample spaces and fixed-width incidence bit vectors.

An incidence is the set of sample-space points at which a sentence is true,
stored as an integer bitmask alongside its width.  Bit k corresponds to
point k; character k of the text encoding is '1' exactly when point k is a
member, so the leftmost character is point 0.  That order is part of the
on-disk format and must not change.

Weights are exact rationals.  A probability read off an incidence is the
sum of the weights of its member points, so downstream identities hold as
equalities rather than to within a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import WidthMismatchError


def _as_weight(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("weights must be exact: use Fraction, int, or a string like '1/3'")
    return Fraction(value)


@dataclass(frozen=True)
class Incidence:
    """A subset of a sample space's points, as a bitmask bounded by width."""

    bits: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bitmask out of range for width {self.width}")

    @classmethod
    def empty(cls, width: int) -> "Incidence":
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "Incidence":
        return cls((1 << width) - 1, width)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> "Incidence":
        bits = 0
        for k in indices:
            if not 0 <= k < width:
                raise ValueError(f"point index {k} out of range for width {width}")
            bits |= 1 << k
        return cls(bits, width)

    @classmethod
    def from_bitstring(cls, text: str, width: int) -> "Incidence":
        """Decode a '0'/'1' string; its length must equal the width."""
        if len(text) != width:
            raise ValueError(f"bit string has length {len(text)}, expected {width}")
        bits = 0
        for k, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << k
            elif ch != "0":
                raise ValueError(f"illegal character {ch!r} in bit string")
        return cls(bits, width)

    def to_bitstring(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(self.width))

    def to_point_set(self) -> str:
        """Render as a point-set literal, e.g. '{3,4}' or '{}'."""
        return "{" + ",".join(str(k) for k in self.indices()) + "}"

    def indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.width) if self.bits >> k & 1)

    def count(self) -> int:
        return self.bits.bit_count()

    def _check_width(self, other: "Incidence") -> None:
        if self.width != other.width:
            raise WidthMismatchError(f"widths differ: {self.width} vs {other.width}")

    def complement(self) -> "Incidence":
        return Incidence(~self.bits & (1 << self.width) - 1, self.width)

    def __invert__(self) -> "Incidence":
        return self.complement()

    def __and__(self, other: "Incidence") -> "Incidence":
        self._check_width(other)
        return Incidence(self.bits & other.bits, self.width)

    def __or__(self, other: "Incidence") -> "Incidence":
        self._check_width(other)
        return Incidence(self.bits | other.bits, self.width)

    def __sub__(self, other: "Incidence") -> "Incidence":
        self._check_width(other)
        return Incidence(self.bits & ~other.bits, self.width)

    def is_subset(self, other: "Incidence") -> bool:
        self._check_width(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other: "Incidence") -> bool:
        return self.is_subset(other)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.width and self.bits >> index & 1 == 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return self.to_bitstring()


def parse_incidence_text(text: str, width: int) -> Incidence:
    """Parse either encoding of an incidence: a bit string, or a point-set
    literal such as '{0,2,5}' (zero-based indices, '{}' for empty)."""
    t = text.strip()
    if t.startswith("{"):
        if not t.endswith("}"):
            raise ValueError(f"unterminated point set: {text!r}")
        inner = t[1:-1].strip()
        if not inner:
            return Incidence.empty(width)
        try:
            indices = [int(part.strip()) for part in inner.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad point set: {text!r}") from exc
        return Incidence.from_indices(indices, width)
    return Incidence.from_bitstring(t, width)


class Point(NamedTuple):
    index: int
    weight: Fraction


@dataclass(frozen=True)
class SampleSpace:
    """A finite set of points, each carrying a non-negative rational weight.

    Weights must sum to exactly 1; individual points may have weight zero.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        coerced = tuple(_as_weight(v) for v in self.weights)
        object.__setattr__(self, "weights", coerced)
        if not coerced:
            raise ValueError("a sample space needs at least one point")
        if any(v < 0 for v in coerced):
            raise ValueError("weights must be non-negative")
        total = sum(coerced)
        if total != 1:
            raise ValueError(f"weights must sum to 1, got {total}")

    @classmethod
    def uniform(cls, size: int) -> "SampleSpace":
        if size < 1:
            raise ValueError(f"size must be >= 1, got {size}")
        return cls((Fraction(1, size),) * size)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(Point(k, v) for k, v in enumerate(self.weights))

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    def empty(self) -> Incidence:
        return Incidence.empty(self.size)

    def full(self) -> Incidence:
        return Incidence.full(self.size)

    def incidence(self, indices: Iterable[int]) -> Incidence:
        return Incidence.from_indices(indices, self.size)

    def weight_of(self, inc: Incidence) -> Fraction:
        """Total weight of the incidence's members; the whole space has
        weight 1, so this is the probability of any sentence whose
        incidence this is."""
        if inc.width != self.size:
            raise WidthMismatchError(f"incidence width {inc.width} != space size {self.size}")
        return sum((self.weights[k] for k in inc.indices()), Fraction(0))


class StorageCost(NamedTuple):
    numeric_bits: int
    incidence_bits: int


def storage_costs(propositions: int, digits: int) -> StorageCost:
    """Bits needed to represent a joint distribution over `propositions`
    atoms to `digits` decimal places, two ways.

    Storing one probability per conjunction of literals takes 10*digits
    bits for each of the 2**propositions conjunctions; storing one
    incidence bit vector per atom over a 10**digits-point space takes
    propositions * 10**digits bits and the rest is recomputed by set
    operations.
    """
    if propositions < 1:
        raise ValueError("need at least one proposition")
    if digits < 1:
        raise ValueError("need at least one digit of precision")
    return StorageCost(10 * digits * 2**propositions, propositions * 10**digits)

"""Tropical semifield monomials and ground rings between Z and ZP.

A :class:`TropMonomial` is an element of ``Trop(z1, ..., zm)``: an integer
exponent vector, multiplied by adding exponents and "added" by taking the
componentwise minimum.  A :class:`GroundRing` says which generators are
invertible, so it decides whether a monomial is an element of the ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when values over different generator counts are combined."""


@dataclass(frozen=True)
class TropMonomial:
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))

    @classmethod
    def one(cls, m: int) -> TropMonomial:
        return cls((0,) * m)

    @classmethod
    def generator(cls, i: int, m: int) -> TropMonomial:
        """The generator ``z_{i+1}`` (0-based ``i``) of ``Trop(z1..zm)``."""
        if not 0 <= i < m:
            raise IndexError(f"generator index {i} out of range for m={m}")
        return cls(tuple(1 if j == i else 0 for j in range(m)))

    @property
    def m(self) -> int:
        return len(self.exps)

    def _check(self, other: TropMonomial) -> None:
        if self.m != other.m:
            raise DimensionError(f"generator counts differ: {self.m} vs {other.m}")

    def __mul__(self, other: TropMonomial) -> TropMonomial:
        self._check(other)
        return TropMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: TropMonomial) -> TropMonomial:
        return self * other.inverse()

    def __pow__(self, e: int) -> TropMonomial:
        return TropMonomial(tuple(a * e for a in self.exps))

    def inverse(self) -> TropMonomial:
        return TropMonomial(tuple(-a for a in self.exps))

    def oplus(self, other: TropMonomial) -> TropMonomial:
        self._check(other)
        return TropMonomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def oplus_one(self) -> TropMonomial:
        """``self ⊕ 1``."""
        return TropMonomial(tuple(min(a, 0) for a in self.exps))

    def extend(self, extra: int = 1, exps: Sequence[int] | None = None) -> TropMonomial:
        """Append ``extra`` generator slots (zero exponents unless given)."""
        tail = tuple(exps) if exps is not None else (0,) * extra
        if len(tail) != extra:
            raise DimensionError("wrong number of appended exponents")
        return TropMonomial(self.exps + tail)

    def is_one(self) -> bool:
        return not any(self.exps)

    def __str__(self) -> str:
        return render_monomial(self)


def trop_mul(a: TropMonomial, b: TropMonomial) -> TropMonomial:
    return a * b


def trop_add(a: TropMonomial, b: TropMonomial) -> TropMonomial:
    return a.oplus(b)


class RingKind(Enum):
    FULL_LAURENT = "zp"
    POLYNOMIAL = "zp+"
    LOCALIZED = "localized"


@dataclass(frozen=True)
class GroundRing:
    """A ground ring ``Z[z1..zm][z_s^{-1} : s in inverted]``.

    ``inverted`` holds 0-based generator indices and is only meaningful for
    ``LOCALIZED``.  ``LOCALIZED`` with an empty set acts as ``POLYNOMIAL``.
    """

    kind: RingKind
    inverted: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind is not RingKind.LOCALIZED and self.inverted:
            raise ValueError("only LOCALIZED rings carry an inverted set")
        object.__setattr__(self, "inverted", frozenset(self.inverted))

    @classmethod
    def full(cls) -> GroundRing:
        return cls(RingKind.FULL_LAURENT)

    @classmethod
    def polynomial(cls) -> GroundRing:
        return cls(RingKind.POLYNOMIAL)

    @classmethod
    def localized(cls, inverted: Iterable[int]) -> GroundRing:
        return cls(RingKind.LOCALIZED, frozenset(inverted))

    def is_inverted(self, i: int) -> bool:
        if self.kind is RingKind.FULL_LAURENT:
            return True
        return i in self.inverted

    def extend(self, new_generator: int) -> GroundRing:
        """The ring with generator ``new_generator`` also inverted."""
        if self.kind is RingKind.FULL_LAURENT:
            return self
        return GroundRing.localized(self.inverted | {new_generator})

    def __str__(self) -> str:
        if self.kind is RingKind.FULL_LAURENT:
            return "zp"
        if not self.inverted:
            return "zp+"
        return "zp+:" + ",".join(f"z{i + 1}" for i in sorted(self.inverted))


def parse_ring(text: str) -> GroundRing:
    """Parse ``zp``, ``zp+`` or ``zp+:z2,z5``."""
    text = text.strip()
    if text == "zp":
        return GroundRing.full()
    if text == "zp+":
        return GroundRing.polynomial()
    if text.startswith("zp+:"):
        gens = []
        for tok in text[4:].split(","):
            tok = tok.strip()
            match = re.fullmatch(r"z(\d+)", tok)
            if not match or int(match.group(1)) < 1:
                raise ValueError(f"bad generator {tok!r} in ring {text!r}")
            gens.append(int(match.group(1)) - 1)
        return GroundRing.localized(gens)
    raise ValueError(f"unknown ground ring {text!r} (expected zp, zp+ or zp+:z1,...)")


def in_ground_ring(a: TropMonomial, r: GroundRing) -> bool:
    return all(e >= 0 or r.is_inverted(i) for i, e in enumerate(a.exps))


def lp_conditions_hold(y: Sequence[TropMonomial], r: GroundRing) -> bool:
    """Check ``y_i/(1⊕y_i)`` and ``1/(1⊕y_i)`` lie in ``r`` for every ``y_i``."""
    for yi in y:
        denom = yi.oplus_one()
        if not (in_ground_ring(yi / denom, r) and in_ground_ring(denom.inverse(), r)):
            return False
    return True


def missing_inverses(a: TropMonomial, r: GroundRing) -> frozenset[int]:
    """Generators that would have to be inverted for ``a`` to lie in ``r``."""
    return frozenset(
        i for i, e in enumerate(a.exps) if e < 0 and not r.is_inverted(i)
    )


def render_monomial(a: TropMonomial) -> str:
    parts = []
    for i, e in enumerate(a.exps):
        if e == 0:
            continue
        parts.append(f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


_FACTOR = re.compile(r"z(\d+)(?:\^(-?\d+))?")


def parse_monomial(text: str, m: int) -> TropMonomial:
    text = text.strip()
    exps = [0] * m
    if text == "1":
        return TropMonomial(tuple(exps))
    for factor in text.split("*"):
        match = _FACTOR.fullmatch(factor.strip())
        if not match:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        idx = int(match.group(1)) - 1
        if not 0 <= idx < m:
            raise DimensionError(f"generator z{idx + 1} out of range for m={m}")
        exps[idx] += int(match.group(2)) if match.group(2) is not None else 1
    return TropMonomial(tuple(exps))

"""Element subsets: the carrier for ideals, annihilators and primes.

A subset is a boolean membership mask over a ring's element indices.
Masks are immutable; equality/hashing go through the canonical integer
key (bit i = membership of element i), which also defines the canonical
ordering of ideal lists.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


class ElementSubset:
    __slots__ = ("ring", "mask", "_key")

    def __init__(self, ring, mask):
        mask = np.ascontiguousarray(mask, dtype=bool)
        if mask.shape != (ring.size,):
            raise DomainError(f"mask length {mask.shape} does not match ring size {ring.size}")
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self._key = None

    @classmethod
    def from_indices(cls, ring, indices) -> "ElementSubset":
        mask = np.zeros(ring.size, dtype=bool)
        for i in indices:
            i = int(i)
            if not 0 <= i < ring.size:
                raise DomainError(f"element index {i} out of range for ring of size {ring.size}")
            mask[i] = True
        return cls(ring, mask)

    @classmethod
    def zero_ideal(cls, ring) -> "ElementSubset":
        return cls.from_indices(ring, [ring.zero])

    @classmethod
    def whole_ring(cls, ring) -> "ElementSubset":
        return cls(ring, np.ones(ring.size, dtype=bool))

    @property
    def key(self) -> int:
        """Mask as an integer with element 0 in the least significant bit."""
        if self._key is None:
            packed = np.packbits(self.mask, bitorder="little").tobytes()
            self._key = int.from_bytes(packed, "little")
        return self._key

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def mask_u8(self) -> np.ndarray:
        return self.mask.view(np.uint8)

    def mask_hex(self) -> str:
        return np.packbits(self.mask, bitorder="little").tobytes().hex()

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, index: int) -> bool:
        return bool(self.mask[int(index)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSubset)
            and self.ring is other.ring
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.key))

    def __le__(self, other: "ElementSubset") -> bool:
        return bool(np.all(self.mask <= other.mask))

    def __and__(self, other: "ElementSubset") -> "ElementSubset":
        return ElementSubset(self.ring, self.mask & other.mask)

    def __or__(self, other: "ElementSubset") -> "ElementSubset":
        return ElementSubset(self.ring, self.mask | other.mask)

    def is_zero(self) -> bool:
        return len(self) == 1 and self.ring.zero in self

    def is_whole(self) -> bool:
        return bool(self.mask.all())

    def is_ideal(self) -> bool:
        """Closed under add, neg, and two-sided multiplication by the ring."""
        r = self.ring
        m = self.members()
        if m.size == 0 or not self.mask[r.zero]:
            return False
        if not self.mask[r.add[np.ix_(m, m)]].all():
            return False
        if not self.mask[r.neg[m]].all():
            return False
        if not self.mask[r.mul[m, :]].all():
            return False
        return bool(self.mask[r.mul[:, m]].all())

    def require_ideal(self, what: str = "subset") -> "ElementSubset":
        if not self.is_ideal():
            raise DomainError(f"{what} is not a two-sided ideal")
        return self

    def minimal_generators(self) -> list[int]:
        """Small deterministic generating set, ascending by index."""
        from .ideals import principal_ideal_mask

        r = self.ring
        gens: list[int] = []
        running = np.zeros(r.size, dtype=bool)
        running[r.zero] = True
        if self.is_zero():
            return []
        for a in self.members():
            a = int(a)
            if running[a]:
                continue
            gens.append(a)
            running |= principal_ideal_mask(r, a)
            from .ideals import additive_closure_mask

            running = additive_closure_mask(r, running)
            if running.sum() == self.mask.sum() and (running == self.mask).all():
                break
        return gens

    def describe(self) -> str:
        gens = self.minimal_generators()
        if not gens:
            return "0"
        return "<" + ",".join(self.ring.element_name(g) for g in gens) + ">"

    def __repr__(self) -> str:
        return f"ElementSubset({self.ring.spec or self.ring.size}, size={len(self)})"

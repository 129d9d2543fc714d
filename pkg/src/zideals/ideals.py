"""Two-sided ideal enumeration, primes, and the minimal-prime operators.

The lattice is built by closing the distinct principal ideals under
pairwise sums; the 2^n subset scan stays available as an independent
oracle for rings of at most 16 elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, DomainError, InternalConsistencyError
from .rings import FiniteRing
from .subsets import ElementSubset

DEFAULT_IDEAL_CAP = 4096
SUBSET_SCAN_LIMIT = 16


def principal_data(r: FiniteRing):
    """Cached per-element triples: masks of RaR, l(RaR), r(l(RaR))."""
    return r.cache("principal", lambda: _kernels.principal_triples(r.add, r.mul, r.zero))


def principal_ideal_mask(r: FiniteRing, a: int) -> np.ndarray:
    return principal_data(r)[0][int(a)].view(bool)


def additive_closure_mask(r: FiniteRing, mask: np.ndarray) -> np.ndarray:
    out = _kernels.subgroup_closure(r.add, np.ascontiguousarray(mask, dtype=np.uint8), r.zero)
    return out.view(bool)


def generated_ideal(r: FiniteRing, gens) -> ElementSubset:
    """Smallest two-sided ideal containing the generators."""
    mask = np.zeros(r.size, dtype=bool)
    mask[r.zero] = True
    pr = principal_data(r)[0]
    for g in gens:
        g = int(g)
        if not 0 <= g < r.size:
            raise DomainError(f"generator {g} out of range")
        mask |= pr[g].view(bool)
    return ElementSubset(r, additive_closure_mask(r, mask))


def sum_ideal_masks(r: FiniteRing, masks) -> np.ndarray:
    """Mask of the ideal sum; sums of ideals only need additive closure."""
    acc = np.zeros(r.size, dtype=bool)
    acc[r.zero] = True
    for m in masks:
        acc |= np.asarray(m, dtype=bool)
    return additive_closure_mask(r, acc)


def ideal_product_mask(r: FiniteRing, mask_i: np.ndarray, mask_j: np.ndarray) -> np.ndarray:
    gen = _kernels.pairwise_product_mask(
        r.mul, np.flatnonzero(mask_i), np.flatnonzero(mask_j))
    return additive_closure_mask(r, gen.view(bool))


@dataclass(eq=False)
class IdealLattice:
    ring: FiniteRing
    ideals: list[ElementSubset]
    leq: np.ndarray  # bool [k,k], leq[i,j] <=> ideals[i] <= ideals[j]

    def __len__(self) -> int:
        return len(self.ideals)

    def index_of(self, subset: ElementSubset) -> int:
        if "index" not in self.__dict__:
            self.__dict__["index"] = {s.key: i for i, s in enumerate(self.ideals)}
        idx = self.__dict__["index"].get(subset.key)
        if idx is None:
            raise DomainError("subset is not an ideal of this ring")
        return idx

    def zero_index(self) -> int:
        return self.index_of(ElementSubset.zero_ideal(self.ring))

    def whole_index(self) -> int:
        return self.index_of(ElementSubset.whole_ring(self.ring))

    def proper_indices(self) -> list[int]:
        whole = self.whole_index()
        return [i for i in range(len(self.ideals)) if i != whole]


def all_ideals(r: FiniteRing, ideal_cap: int = DEFAULT_IDEAL_CAP) -> IdealLattice:
    def build():
        pr = principal_data(r)[0]
        distinct = {}
        zero_mask = np.zeros(r.size, dtype=bool)
        zero_mask[r.zero] = True
        for m in (zero_mask, *np.unique(pr, axis=0).view(bool)):
            s = ElementSubset(r, m)
            distinct[s.key] = s
        frontier = list(distinct.values())
        while frontier:
            fresh = []
            current = list(distinct.values())
            for s in frontier:
                for t in current:
                    u = ElementSubset(r, sum_ideal_masks(r, (s.mask, t.mask)))
                    if u.key not in distinct:
                        distinct[u.key] = u
                        fresh.append(u)
                        if len(distinct) > ideal_cap:
                            raise BudgetExceededError(
                                f"ideal count exceeded the cap {ideal_cap}")
            frontier = fresh
        ideals = sorted(distinct.values(), key=lambda s: s.key)
        m = np.stack([s.mask for s in ideals]).astype(np.float32)
        sizes = m.sum(axis=1)
        leq = (m @ m.T) >= sizes[:, None] - 0.5
        return IdealLattice(r, ideals, leq)

    return r.cache("lattice", build)


def brute_force_ideal_masks(r: FiniteRing) -> list[int]:
    """Oracle: bitmask of every subset that is an ideal, by full 2^n scan."""
    if r.size > SUBSET_SCAN_LIMIT:
        raise BudgetExceededError(
            f"subset scan is 2^{r.size}; reserved for rings of size <= {SUBSET_SCAN_LIMIT}")
    flags = _kernels.ideal_subset_flags(r.add, r.mul, r.zero)
    return [int(m) for m in np.flatnonzero(flags)]


# ---------------------------------------------------------------------------
# primes

@dataclass(eq=False)
class PrimeSpectrum:
    ring: FiniteRing
    lattice: IdealLattice
    primes: list[int]          # lattice indices, ascending
    minimal_primes: list[int]  # inclusion-minimal members of `primes`

    def minimal_masks(self) -> np.ndarray:
        return np.stack([self.lattice.ideals[i].mask for i in self.minimal_primes])


def is_prime_ideal(r: FiniteRing, i: ElementSubset) -> bool:
    """aRb <= I forces a or b into I; tested element-wise over pairs outside I."""
    i.require_ideal("prime candidate")
    if i.is_whole():
        raise DomainError("primality is only defined for proper ideals")
    w = _kernels.prime_witness(r.mul, r.mul_t, i.mask_u8())
    return w < 0


def minimal_primes(r: FiniteRing) -> PrimeSpectrum:
    def build():
        lat = all_ideals(r)
        whole = lat.whole_index()
        primes = [
            k for k in range(len(lat))
            if k != whole and _kernels.prime_witness(
                r.mul, r.mul_t, lat.ideals[k].mask_u8()) < 0
        ]
        prime_set = set(primes)
        minimal = [
            p for p in primes
            if not any(q != p and lat.leq[q, p] for q in prime_set)
        ]
        return PrimeSpectrum(r, lat, primes, minimal)

    return r.cache("spectrum", build)


def _prime_membership(r: FiniteRing):
    """Per element, the set of minimal primes containing it, as an int bitmask."""
    def build():
        spec = minimal_primes(r)
        if not spec.minimal_primes:
            raise InternalConsistencyError("a finite ring with identity has a prime ideal")
        masks = spec.minimal_masks()
        p = masks.shape[0]
        sigs = [0] * r.size
        for b in range(p):
            bit = 1 << b
            for e in np.flatnonzero(masks[b]):
                sigs[e] |= bit
        return masks, sigs, (1 << p) - 1

    return r.cache("prime_membership", build)


def pa_mask_for_signature(r: FiniteRing, sig: int) -> np.ndarray:
    """Intersection of the minimal primes selected by the signature bits."""
    masks, _, _ = _prime_membership(r)
    cache = r.cache("pa_by_sig", dict)
    hit = cache.get(sig)
    if hit is None:
        if sig == 0:
            hit = np.ones(r.size, dtype=bool)  # empty intersection convention
        else:
            hit = np.ones(r.size, dtype=bool)
            for b in range(masks.shape[0]):
                if sig >> b & 1:
                    hit &= masks[b]
        hit.setflags(write=False)
        cache[sig] = hit
    return hit


def element_signature(r: FiniteRing, a: int) -> int:
    return _prime_membership(r)[1][int(a)]


def P_of(r: FiniteRing, a) -> ElementSubset:
    """Intersection of the minimal primes containing the whole set; R if none does."""
    _, sigs, full = _prime_membership(r)
    sig = full
    for e in a:
        sig &= sigs[int(e)]
    return ElementSubset(r, pa_mask_for_signature(r, sig))


def prime_radical(r: FiniteRing) -> ElementSubset:
    return P_of(r, [r.zero])


def is_semiprime(r: FiniteRing) -> bool:
    """Radical test, cross-checked against 'I^2 = 0 implies I = 0'."""
    def build():
        by_radical = prime_radical(r).is_zero()
        lat = all_ideals(r)
        by_nilpotency = True
        for s in lat.ideals:
            if s.is_zero():
                continue
            sq = ideal_product_mask(r, s.mask, s.mask)
            if sq.sum() == 1:
                by_nilpotency = False
                break
        if by_radical != by_nilpotency:
            raise InternalConsistencyError(
                f"semiprimeness disagrees on {r.spec_or_size()}: "
                f"radical={by_radical} nilpotent-ideal={by_nilpotency}")
        return by_radical

    return r.cache("semiprime", build)


def is_reduced(r: FiniteRing) -> bool:
    idx = np.arange(r.size)
    squares = r.mul[idx, idx]
    nilpotent = (squares == r.zero) & (idx != r.zero)
    return not bool(nilpotent.any())


def sqrt_ideal(r: FiniteRing, i: ElementSubset) -> ElementSubset:
    """{x : some power of x lands in I}; a plain set, not necessarily an ideal."""
    i.require_ideal("radical argument")
    out = np.zeros(r.size, dtype=bool)
    for x in r.elements():
        p = x
        for _ in range(r.size):
            if i.mask[p]:
                out[x] = True
                break
            p = int(r.mul[p, x])
    return ElementSubset(r, out)


def minimal_generators(r: FiniteRing, subset: ElementSubset) -> list[int]:
    return subset.minimal_generators()

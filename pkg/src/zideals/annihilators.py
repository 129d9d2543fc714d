"""Left/right annihilators, the r(l(.)) closure, and annihilator-sum structure.

The fixed points of the r(l(.)) closure are the right annihilator ideals;
a ring where r(I)+r(J) is always such a fixed point admits a largest
annihilator ideal inside every ideal, computed here by the principal-sum
formula.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernels
from .errors import DomainError, HypothesisNotMetError, InternalConsistencyError
from .ideals import (additive_closure_mask, all_ideals, generated_ideal,
                     ideal_product_mask, is_semiprime, principal_data,
                     sum_ideal_masks)
from .reports import FAIL, PASS, VerificationReport, ideal_witness
from .rings import FiniteRing
from .subsets import ElementSubset


def _member_array(r: FiniteRing, s) -> np.ndarray:
    if isinstance(s, ElementSubset):
        return s.members()
    return np.asarray(sorted(int(x) for x in s), dtype=np.int64)


def left_ann(r: FiniteRing, s) -> ElementSubset:
    """{x : x.s = 0 for all s in S}."""
    m = _member_array(r, s)
    return ElementSubset(r, _kernels.ann_scan(r.mul, m, r.zero).view(bool))


def right_ann(r: FiniteRing, s) -> ElementSubset:
    """{y : s.y = 0 for all s in S}."""
    m = _member_array(r, s)
    return ElementSubset(r, _kernels.ann_scan(r.mul_t, m, r.zero).view(bool))


def rl_closure_mask(r: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """r(l(S)) as a raw mask."""
    l = _kernels.ann_scan(r.mul, np.flatnonzero(mask), r.zero)
    return _kernels.ann_scan(r.mul_t, np.flatnonzero(l), r.zero).view(bool)


class AnnihilatorClosurePair:
    """An ideal with its r(l(.)) closure; fixed means the ideal is its own closure."""

    __slots__ = ("ideal", "closure", "is_fixed")

    def __init__(self, ideal: ElementSubset, closure: ElementSubset):
        self.ideal = ideal
        self.closure = closure
        self.is_fixed = ideal == closure


def closure_A(r: FiniteRing, i: ElementSubset) -> AnnihilatorClosurePair:
    """Smallest right annihilator ideal containing i, via r(l(i)).

    Cross-checks the principal-join route: the closure must equal the
    join (in the annihilator lattice) of r(l(RaR)) over a in i.
    """
    i.require_ideal("closure argument")
    closure = ElementSubset(r, rl_closure_mask(r, i.mask))
    rl = principal_data(r)[2]
    summed = additive_closure_mask(r, rl[i.members()].any(axis=0))
    join = rl_closure_mask(r, summed)
    if not np.array_equal(join, closure.mask):
        raise InternalConsistencyError(
            f"r(l(I)) disagrees with the principal join on {r.spec_or_size()}")
    return AnnihilatorClosurePair(i, closure)


def is_right_annihilator_ideal(r: FiniteRing, i: ElementSubset) -> bool:
    return closure_A(r, i).is_fixed


def annihilator_ideal_indices(r: FiniteRing) -> list[int]:
    """Lattice indices of the r(l(.))-fixed ideals, ascending."""
    def build():
        lat = all_ideals(r)
        return [k for k, s in enumerate(lat.ideals)
                if np.array_equal(rl_closure_mask(r, s.mask), s.mask)]

    return r.cache("ann_indices", build)


def right_ann_of_ideals(r: FiniteRing) -> list[np.ndarray]:
    """r(I) masks aligned with the ideal lattice."""
    def build():
        lat = all_ideals(r)
        return [right_ann(r, s).mask for s in lat.ideals]

    return r.cache("r_of_ideals", build)


def is_SA_ring(r: FiniteRing) -> VerificationReport:
    """Every r(I)+r(J) must be r(K) for some ideal K, i.e. fixed under r(l(.))."""
    t0 = time.perf_counter()
    lat = all_ideals(r)
    rann = right_ann_of_ideals(r)
    witnesses = []
    for a in range(len(lat)):
        for b in range(a, len(lat)):
            x = sum_ideal_masks(r, (rann[a], rann[b]))
            if not np.array_equal(rl_closure_mask(r, x), x):
                witnesses.append({
                    "ideal_I": ideal_witness(r, lat.ideals[a]),
                    "ideal_J": ideal_witness(r, lat.ideals[b]),
                    "sum": ideal_witness(r, ElementSubset(r, x)),
                })
                break
        if witnesses:
            break
    verdict = FAIL if witnesses else PASS
    r._derived["sa_verdict"] = not witnesses
    return VerificationReport(
        ring_spec=r.spec_or_size(), check_id="sa-ring", verdict=verdict,
        witnesses=witnesses, details={"ideal_count": len(lat)},
        timing_ms=(time.perf_counter() - t0) * 1e3)


def is_sa(r: FiniteRing) -> bool:
    if "sa_verdict" not in r._derived:
        is_SA_ring(r)
    return r._derived["sa_verdict"]


def largest_contained_annihilator(r: FiniteRing, i: ElementSubset) -> ElementSubset:
    """Sum of the principal annihilator ideals r(l(RaR)) lying inside i.

    Only meaningful when annihilator sums are annihilators; refuses to run
    otherwise rather than return something the theory does not back.
    """
    i.require_ideal("largest-annihilator argument")
    if not is_sa(r):
        raise HypothesisNotMetError(
            f"{r.spec_or_size()} is not a right SA-ring; no largest "
            "contained annihilator ideal is guaranteed")
    rl = principal_data(r)[2]
    inside = np.flatnonzero((rl.view(bool) <= i.mask[None, :]).all(axis=1))
    out = ElementSubset(r, sum_ideal_masks(r, rl[inside].view(bool)) if inside.size
                        else np.eye(1, r.size, r.zero, dtype=bool)[0])
    if not np.array_equal(rl_closure_mask(r, out.mask), out.mask):
        raise InternalConsistencyError("principal-sum output is not an annihilator ideal")
    if not out <= i:
        raise InternalConsistencyError("principal-sum output escapes the ideal")
    lat = all_ideals(r)
    for k in annihilator_ideal_indices(r):
        s = lat.ideals[k]
        if s <= i and not s <= out:
            raise InternalConsistencyError(
                "an annihilator ideal inside i is missing from the principal sum")
    return out


def is_essential_ideal(r: FiniteRing, i: ElementSubset) -> bool:
    """i meets every nonzero ideal; for semiprime rings must agree with l(i)=0."""
    i.require_ideal("essential candidate")
    lat = all_ideals(r)
    essential = True
    for s in lat.ideals:
        if s.is_zero():
            continue
        if int((i.mask & s.mask).sum()) <= 1:
            essential = False
            break
    if is_semiprime(r):
        by_ann = left_ann(r, i).is_zero()
        if by_ann != essential:
            raise InternalConsistencyError(
                f"essentiality disagrees with l(I)=0 on semiprime {r.spec_or_size()}")
    return essential


def is_idempotent_generated(r: FiniteRing, i: ElementSubset) -> bool:
    i.require_ideal("idempotent-generated candidate")
    pr = principal_data(r)[0]
    return any(np.array_equal(pr[int(e)].view(bool), i.mask) for e in r.idempotents())


def is_semicentral(r: FiniteRing, e: int, side: str) -> bool:
    """Left: Re == eRe; right: eR == eRe."""
    e = int(e)
    if r.mul[e, e] != e:
        raise DomainError(f"element {r.element_name(e)} is not idempotent")
    col = r.mul[:, e]
    row = r.mul[e, :]
    ere = r.mul[e, col]
    if side == "left":
        return set(col.tolist()) == set(ere.tolist())
    if side == "right":
        return set(row.tolist()) == set(ere.tolist())
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def l_product_vs_intersection(r: FiniteRing):
    """Does l(IJ) = l(I&J) hold for every ideal pair?  Returns (holds, witness)."""
    lat = all_ideals(r)
    for a in range(len(lat)):
        for b in range(a, len(lat)):
            ma, mb = lat.ideals[a].mask, lat.ideals[b].mask
            prod = ideal_product_mask(r, ma, mb)
            li = left_ann(r, np.flatnonzero(prod))
            lj = left_ann(r, np.flatnonzero(ma & mb))
            if li != lj:
                return False, (lat.ideals[a], lat.ideals[b])
    return True, None


def ann_shift_lemma_holds(r: FiniteRing):
    """For semiprime rings: l(I) <= l(a) forces l(Iy) <= l(ay) for every y."""
    lat = all_ideals(r)
    for s in lat.ideals:
        li = left_ann(r, s).mask
        for a in r.elements():
            la = (r.mul[:, a] == r.zero)
            if not (li <= la).all():
                continue
            for y in r.elements():
                iy = np.unique(r.mul[s.members(), y])
                l_iy = _kernels.ann_scan(r.mul, iy.astype(np.int64), r.zero).view(bool)
                ay = int(r.mul[a, y])
                l_ay = (r.mul[:, ay] == r.zero)
                if not (l_iy <= l_ay).all():
                    return False, (s, int(a), int(y))
    return True, None

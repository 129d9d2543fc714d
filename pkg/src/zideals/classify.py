"""Ideal classifiers built on the minimal-prime operators.

An ideal absorbs P_a for each of its elements (the z-degree-1 notion), or
P_F for every subset F of bounded size (degree n), or for all sizes at
once; the annihilator-side analogue absorbs r(l(RaR)).  The verification
suites tie these classes together on semiprime and reduced rings.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .annihilators import left_ann, right_ann
from .errors import BudgetExceededError
from .ideals import (all_ideals, element_signature, is_reduced, is_semiprime,
                     minimal_primes, pa_mask_for_signature, principal_data,
                     P_of, prime_radical)
from .reports import (FAIL, HYPOTHESIS_NOT_MET, PASS, VerificationReport,
                      element_witness, ideal_witness)
from .rings import FiniteRing
from .subsets import ElementSubset

DEFAULT_SUBSET_BUDGET = 2_000_000
DEFAULT_PROFILE_CAP = 4


def _witness_order(r: FiniteRing, i: ElementSubset):
    """Members with zero scanned last: a nonzero violator is the useful witness."""
    members = [int(a) for a in i.members() if int(a) != r.zero]
    members.append(r.zero)
    return members


def is_z0_ideal(r: FiniteRing, i: ElementSubset):
    """(verdict, witness): P_a <= i must hold for every a in i."""
    i.require_ideal("z-degree-1 candidate")
    for a in _witness_order(r, i):
        pa = pa_mask_for_signature(r, element_signature(r, a))
        if not (pa <= i.mask).all():
            return False, a
    return True, None


def _distinct_signatures(r: FiniteRing, i: ElementSubset) -> dict[int, int]:
    """signature -> representative element, for the members of i."""
    reps: dict[int, int] = {}
    for a in i.members():
        sig = element_signature(r, int(a))
        reps.setdefault(sig, int(a))
    return reps


def zn_enumeration_count(distinct: int, n: int) -> int:
    k = min(n, distinct)
    return sum(math.comb(distinct, j) for j in range(1, k + 1))


def is_zn0_ideal(r: FiniteRing, i: ElementSubset, n: int,
                 budget: int = DEFAULT_SUBSET_BUDGET):
    """(verdict, witness): P_F <= i for every F <= i with at most n elements.

    P_F only depends on which minimal primes contain all of F, so the sweep
    enumerates subsets of distinct prime-membership signatures instead of
    raw element subsets; that reduction is exact, and the budget guards the
    reduced enumeration.
    """
    i.require_ideal("z-degree-n candidate")
    if n < 1:
        raise ValueError("subset size bound must be >= 1")
    reps = _distinct_signatures(r, i)
    sigs = sorted(reps)
    count = zn_enumeration_count(len(sigs), n)
    if count > budget:
        raise BudgetExceededError(
            f"z-degree sweep needs {count} signature subsets, above the budget {budget}")
    seen: dict[int, bool] = {}
    for k in range(1, min(n, len(sigs)) + 1):
        for combo in itertools.combinations(sigs, k):
            sig = combo[0]
            for s in combo[1:]:
                sig &= s
            ok = seen.get(sig)
            if ok is None:
                ok = bool((pa_mask_for_signature(r, sig) <= i.mask).all())
                seen[sig] = ok
            if not ok:
                return False, [reps[s] for s in combo]
    return True, None


def is_sz0_ideal(r: FiniteRing, i: ElementSubset,
                 budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """z-degree n for every n; in a finite ring n = |i| already decides it."""
    verdict, _ = is_zn0_ideal(r, i, max(1, len(i)), budget=budget)
    return verdict


def is_right_d_ideal(r: FiniteRing, i: ElementSubset):
    """(verdict, witness): r(l(RaR)) <= i must hold for every a in i."""
    i.require_ideal("d-ideal candidate")
    rl = principal_data(r)[2].view(bool)
    for a in _witness_order(r, i):
        if not (rl[a] <= i.mask).all():
            return False, a
    return True, None


@dataclass
class IdealClassification:
    ideal: ElementSubset
    is_z0: bool
    zn0_profile: dict[int, bool]
    is_sz0: bool
    is_right_d: bool
    witnesses: dict = field(default_factory=dict)

    def to_json_dict(self, ring) -> dict:
        return {
            "ideal": ideal_witness(ring, self.ideal),
            "is_z0": self.is_z0,
            "zn0_profile": {str(k): v for k, v in self.zn0_profile.items()},
            "is_sz0": self.is_sz0,
            "is_right_d": self.is_right_d,
            "witnesses": self.witnesses,
        }


def classify_ideal(r: FiniteRing, i: ElementSubset,
                   profile_cap: int = DEFAULT_PROFILE_CAP,
                   budget: int = DEFAULT_SUBSET_BUDGET) -> IdealClassification:
    witnesses: dict = {}
    z0, wz = is_z0_ideal(r, i)
    if wz is not None:
        witnesses["z0"] = element_witness(r, wz)
    profile: dict[int, bool] = {}
    for n in range(1, profile_cap + 1):
        verdict, wn = is_zn0_ideal(r, i, n, budget=budget)
        profile[n] = verdict
        if wn is not None and "zn0" not in witnesses:
            witnesses["zn0"] = {"n": n, "subset": [element_witness(r, a) for a in wn]}
    sz0 = is_sz0_ideal(r, i, budget=budget)
    rd, wd = is_right_d_ideal(r, i)
    if wd is not None:
        witnesses["right_d"] = element_witness(r, wd)
    return IdealClassification(i, z0, profile, sz0, rd, witnesses)


# ---------------------------------------------------------------------------
# verification suites

def verify_semiprime_equivalences(r: FiniteRing) -> VerificationReport:
    """Five statements that must all hold or all fail together:

    1. P_a <= r(l(RaR)) for every a,
    2. the ring is semiprime,
    3. P_b <= P_a forces l(RaR) <= l(RbR),
    4. every right d-ideal absorbs the P_a of its members,
    5. every right annihilator ideal does too.
    """
    t0 = time.perf_counter()
    spec = r.spec_or_size()
    _, la_rows, rl_rows = principal_data(r)
    la_rows = la_rows.view(bool)
    rl_rows = rl_rows.view(bool)
    statements: dict[str, bool] = {}
    witnesses = []
    details: dict = {}

    s1_witness = None
    for a in r.elements():
        pa = pa_mask_for_signature(r, element_signature(r, a))
        if not (pa <= rl_rows[a]).all():
            s1_witness = a
            break
    statements["pa-below-principal-closure"] = s1_witness is None
    if s1_witness is not None:
        details["statement1_witness"] = element_witness(r, s1_witness)

    statements["semiprime"] = is_semiprime(r)

    # group elements by (P_a, l(RaR)); the pair condition only sees classes
    classes: dict[tuple[int, bytes], int] = {}
    for a in r.elements():
        key = (element_signature(r, a), la_rows[a].tobytes())
        classes.setdefault(key, a)
    s3_witness = None
    for (sig_a, la_a), a in classes.items():
        pa = pa_mask_for_signature(r, sig_a)
        for (sig_b, la_b), b in classes.items():
            pb = pa_mask_for_signature(r, sig_b)
            if (pb <= pa).all() and not (la_rows[a] <= la_rows[b]).all():
                s3_witness = (a, b)
                break
        if s3_witness:
            break
    statements["pa-order-reverses-annihilators"] = s3_witness is None
    if s3_witness:
        details["statement3_witness"] = [element_witness(r, e) for e in s3_witness]

    lat = all_ideals(r)
    s4_witness = s5_witness = None
    for s in lat.ideals:
        z0, _ = is_z0_ideal(r, s)
        if not z0:
            if s4_witness is None and is_right_d_ideal(r, s)[0]:
                s4_witness = s
            if s5_witness is None and np.array_equal(
                    right_ann(r, left_ann(r, s)).mask, s.mask):
                s5_witness = s
    statements["d-ideals-are-z0"] = s4_witness is None
    if s4_witness is not None:
        details["statement4_witness"] = ideal_witness(r, s4_witness)
    statements["annihilator-ideals-are-z0"] = s5_witness is None
    if s5_witness is not None:
        details["statement5_witness"] = ideal_witness(r, s5_witness)

    values = set(statements.values())
    verdict = PASS if len(values) == 1 else FAIL
    if verdict == FAIL:
        witnesses.append({"disagreeing_statements": statements})
    details["statements"] = statements
    return VerificationReport(
        ring_spec=spec, check_id="semiprime-equivalences", verdict=verdict,
        hypotheses=[("semiprime", statements["semiprime"])],
        witnesses=witnesses, details=details,
        timing_ms=(time.perf_counter() - t0) * 1e3)


def verify_reduced_identities(r: FiniteRing) -> VerificationReport:
    """On reduced rings: P_a = r(l(RaR)) = r(l(a)); the z-degree-1 and d
    classes coincide; a principal ideal is an annihilator ideal exactly
    when it absorbs its members' P_a."""
    t0 = time.perf_counter()
    spec = r.spec_or_size()
    reduced = is_reduced(r)
    if not reduced:
        return VerificationReport(
            ring_spec=spec, check_id="reduced-identities",
            verdict=HYPOTHESIS_NOT_MET, hypotheses=[("reduced", False)],
            timing_ms=(time.perf_counter() - t0) * 1e3)
    pr_rows, _, rl_rows = principal_data(r)
    rl_rows = rl_rows.view(bool)
    witnesses = []
    for a in r.elements():
        pa = pa_mask_for_signature(r, element_signature(r, a))
        single = right_ann(r, left_ann(r, [a])).mask
        if not (np.array_equal(pa, rl_rows[a]) and np.array_equal(pa, single)):
            witnesses.append({"kind": "pointwise-identity", **element_witness(r, a)})
            break
    lat = all_ideals(r)
    for s in lat.ideals:
        if is_z0_ideal(r, s)[0] != is_right_d_ideal(r, s)[0]:
            witnesses.append({"kind": "class-mismatch", **ideal_witness(r, s)})
            break
    for a in r.elements():
        principal = ElementSubset(r, pr_rows[a].view(bool))
        fixed = np.array_equal(rl_rows[a], principal.mask)
        if fixed != is_z0_ideal(r, principal)[0]:
            witnesses.append({"kind": "principal-annihilator-vs-z0",
                              **element_witness(r, a)})
            break
    return VerificationReport(
        ring_spec=spec, check_id="reduced-identities",
        verdict=FAIL if witnesses else PASS,
        hypotheses=[("reduced", True)], witnesses=witnesses,
        details={"elements": r.size, "ideals": len(lat)},
        timing_ms=(time.perf_counter() - t0) * 1e3)


def verify_prime_intersection(r: FiniteRing) -> VerificationReport:
    """Reduced rings: if I & P absorbs its P_a (P prime), then I or P does;
    for primes off a chain, both do."""
    t0 = time.perf_counter()
    spec = r.spec_or_size()
    if not is_reduced(r):
        return VerificationReport(
            ring_spec=spec, check_id="prime-intersection",
            verdict=HYPOTHESIS_NOT_MET, hypotheses=[("reduced", False)],
            timing_ms=(time.perf_counter() - t0) * 1e3)
    lat = all_ideals(r)
    spect = minimal_primes(r)
    z0 = {k: is_z0_ideal(r, lat.ideals[k])[0] for k in range(len(lat))}
    witnesses = []
    pairs = 0
    for k in range(len(lat)):
        for p in spect.primes:
            meet = lat.ideals[k] & lat.ideals[p]
            pairs += 1
            if is_z0_ideal(r, meet)[0] and not (z0[k] or z0[p]):
                witnesses.append({"ideal": ideal_witness(r, lat.ideals[k]),
                                  "prime": ideal_witness(r, lat.ideals[p])})
    for p in spect.primes:
        for q in spect.primes:
            if p >= q or lat.leq[p, q] or lat.leq[q, p]:
                continue
            meet = lat.ideals[p] & lat.ideals[q]
            if is_z0_ideal(r, meet)[0] and not (z0[p] and z0[q]):
                witnesses.append({"prime_P": ideal_witness(r, lat.ideals[p]),
                                  "prime_Q": ideal_witness(r, lat.ideals[q])})
    return VerificationReport(
        ring_spec=spec, check_id="prime-intersection",
        verdict=FAIL if witnesses else PASS,
        hypotheses=[("reduced", True)], witnesses=witnesses,
        details={"pairs_checked": pairs},
        timing_ms=(time.perf_counter() - t0) * 1e3)


def z0_ideals(r: FiniteRing) -> list[ElementSubset]:
    lat = all_ideals(r)
    return [s for s in lat.ideals if is_z0_ideal(r, s)[0]]

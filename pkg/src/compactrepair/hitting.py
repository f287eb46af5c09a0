"""Exact minimum hitting sets over coset families, and the tolerance bounds.

The failure tolerance of a collection of repair groups is |MHS| - 1: an
adversary must hit every group to make the symbol unrepairable.  Finding a
minimum hitting set is NP-hard in general; at desk scale (universe within
the field cap, up to a few thousand sets) every instance here is solved
exactly:

  * a greedy max-coverage pass supplies an incumbent, and a maximal
    pairwise-disjoint subfamily supplies a lower bound; when the two meet
    (subfield-coset partitions, singleton families) optimality is certified
    with no further work,
  * otherwise the instance is handed to a 0/1 integer program (HiGHS via
    scipy.optimize.milp), whose branch-and-cut closes the integrality gaps
    that defeat plain combinatorial bounds on these very regular families.

If the solver's node budget runs out, the best incumbent is returned
flagged method="greedy-upper-only"; proven optima carry method="exact".
Witnesses are reproducible for fixed inputs, but only size and the hitting
property are contractual.

For a single subspace seed, |MHS| is sandwiched between
ceil((q^ell - 1)/(q^delta - 1)), by double counting element occurrences,
and (q^(ell-delta+1) - 1)/(q - 1), the minimum number of lines meeting
every delta-dimensional subspace.  Two seed shapes have exact values:
multiplicative subfield cosets (their cosets tile the nonzero elements,
giving the lower bound) and seeds that are subspaces over the subfield of
order q^(ell-delta) (rescaling collapses the sandwich to q^(ell-delta)+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .errors import BudgetExceededError, EmptyFamilyError
from .subspaces import Subspace, base_of

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class HittingResult:
    size: int
    witness: tuple[int, ...]
    method: str  # "exact" | "greedy-upper-only"
    tolerance: int


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    exact: int | None
    case: str  # "subfield-coset" | "nested-subspace" | "generic"


def _family_sets(family) -> list[frozenset[int]]:
    raw = getattr(family, "sets", family)
    return [frozenset(s) for s in raw]


def _family_universe(family, sets) -> frozenset[int]:
    uni = getattr(family, "universe", None)
    if uni is None:
        uni = frozenset().union(*sets)
    return frozenset(uni)


def _greedy_hitting(sets, elements, emask, full):
    picked = []
    unhit = full
    while unhit:
        best_e, best_c = None, 0
        for e in elements:
            c = (emask[e] & unhit).bit_count()
            if c > best_c:
                best_e, best_c = e, c
        picked.append(best_e)
        unhit &= ~emask[best_e]
    return picked


def _packing_bound(sets, emask, full) -> int:
    """Size of a greedy maximal pairwise-disjoint subfamily."""
    count = 0
    avail = full
    while avail:
        low = avail & -avail
        i = low.bit_length() - 1
        count += 1
        mask = 0
        for e in sets[i]:
            mask |= emask[e]
        avail &= ~mask
    return count


def min_hitting_set(family, budget: int = DEFAULT_NODE_BUDGET) -> HittingResult:
    """Exact minimum hitting set of a family of sets."""
    sets = _family_sets(family)
    if not sets:
        raise EmptyFamilyError("cannot hit an empty family")
    if any(not s for s in sets):
        raise ValueError("a family containing the empty set has no hitting set")
    # Duplicates do not change the optimum; drop them, keeping first-seen order.
    sets = list(dict.fromkeys(sets))
    elements = sorted(frozenset().union(*sets))
    emask = {e: 0 for e in elements}
    for i, s in enumerate(sets):
        for e in s:
            emask[e] |= 1 << i
    full = (1 << len(sets)) - 1

    greedy = _greedy_hitting(sets, elements, emask, full)
    lower = _packing_bound(sets, emask, full)
    if len(greedy) == lower:
        witness = tuple(sorted(greedy))
        return HittingResult(len(greedy), witness, "exact", len(greedy) - 1)

    index = {e: i for i, e in enumerate(elements)}
    a = np.zeros((len(sets), len(elements)))
    for r, s in enumerate(sets):
        for e in s:
            a[r, index[e]] = 1.0
    res = milp(
        c=np.ones(len(elements)),
        constraints=LinearConstraint(a, lb=1.0),
        integrality=np.ones(len(elements)),
        bounds=Bounds(0.0, 1.0),
        options={"node_limit": budget},
    )
    candidate = None
    if res.x is not None:
        candidate = sorted(e for e in elements if res.x[index[e]] > 0.5)
        if any(s.isdisjoint(candidate) for s in sets):
            candidate = None
    if res.status == 0 and candidate is not None:
        witness = tuple(candidate)
        return HittingResult(len(witness), witness, "exact", len(witness) - 1)
    # Budget exhausted (or solver gave up): report the best upper bound seen.
    if candidate is not None and len(candidate) < len(greedy):
        best = candidate
    else:
        best = sorted(greedy)
    witness = tuple(best)
    return HittingResult(len(witness), witness, "greedy-upper-only", len(witness) - 1)


def tolerance(family, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Failures tolerated by the family: |MHS| - 1."""
    return min_hitting_set(family, budget=budget).size - 1


def verify_tolerance_exhaustive(family, e: int, budget: int = 10**7) -> bool:
    """True iff every e-subset of the universe leaves some set untouched.

    Raises BudgetExceededError when C(|universe|, e) exceeds the budget;
    callers wanting larger e should fall back to Monte Carlo sampling.
    """
    sets = _family_sets(family)
    if not sets:
        raise EmptyFamilyError("cannot verify an empty family")
    universe = sorted(_family_universe(family, sets))
    if e < 0 or e > len(universe):
        raise ValueError(f"need 0 <= e <= {len(universe)}, got {e}")
    patterns = comb(len(universe), e)
    if patterns > budget:
        raise BudgetExceededError(
            f"{patterns} failure patterns exceed the budget of {budget}"
        )
    for pattern in combinations(universe, e):
        failed = frozenset(pattern)
        if not any(s.isdisjoint(failed) for s in sets):
            return False
    return True


def bounds(q: int, ell: int, delta: int) -> BoundsReport:
    """Sandwich bounds on |MHS| of a single-seed coset family."""
    if delta < 1 or delta > ell:
        raise ValueError(f"need 1 <= delta <= ell, got delta={delta}, ell={ell}")
    lower = -(-(q**ell - 1) // (q**delta - 1))
    upper = (q ** (ell - delta + 1) - 1) // (q - 1)
    return BoundsReport(lower, upper, None, "generic")


def special_case(S: Subspace) -> tuple[int, str] | None:
    """Exact |MHS| and case tag when the seed matches a solved shape."""
    q = S.q
    ell = S.ell
    delta = S.dim
    m = base_of(S)
    if m == delta:
        # S is a multiplicative coset of the subfield of order q^delta:
        # its cosets tile the nonzero elements.
        return (q**ell - 1) // (q**delta - 1), "subfield-coset"
    e = ell - delta
    if e >= 1 and m % e == 0:
        # S is a subspace over the order-q^e subfield; rescaling the bound
        # parameters to that subfield collapses the sandwich.
        return q**e + 1, "nested-subspace"
    return None


def exact_special_case(S: Subspace) -> int | None:
    """Exact |MHS(C(S*))| when a special case applies, else None."""
    hit = special_case(S)
    return hit[0] if hit else None


def bounds_for_seed(S: Subspace) -> BoundsReport:
    """Sandwich bounds enriched with the exact special-case value if any."""
    base = bounds(S.q, S.ell, S.dim)
    hit = special_case(S)
    if hit is None:
        return base
    value, tag = hit
    assert base.lower <= value <= base.upper
    return BoundsReport(base.lower, base.upper, value, tag)

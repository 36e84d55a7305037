"""Independent certification of partitions and a brute-force exact oracle.

``verify_partition`` recomputes everything from the interval list alone:
it expands every interval into its member masks, sorts them, and checks
that no mask repeats (disjointness, with the offending pair on failure)
and that every subset of [n] of size >= d appears (coverage, streamed by
size, with the first missing set on failure).

``exact_sdepth`` is the cross-check oracle for tiny instances.  It shares
nothing with the block-structure or lifting machinery: for a descending
trial target t it runs a backtracking exact-cover search assigning every
subset of size below t to an interval with upper size at least t (sets of
size >= t can always self-cover), and returns the largest feasible t.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from . import bitops
from .builder import (
    DEFAULT_SWEEP_CAP,
    MATERIALIZE_LIMIT,
    IntervalPartition,
    build_partition,
    build_partition_k3,
    certify_layered,
)
from .core import (
    CircularSet,
    RegimeDecomposition,
    conjectured_sdepth,
    k3_band_exact,
    regime_of,
    sdepth_upper_bound,
)
from .errors import (
    InternalCheckError,
    InvalidPartitionError,
    PreconditionViolatedError,
)

DEFAULT_ORACLE_BUDGET = 3_000_000


@dataclass(frozen=True)
class VerificationVerdict:
    disjoint: bool
    covers: bool
    min_upper_size: int
    interval_count: int
    overlap_witness: Optional[tuple[int, int, CircularSet]]
    uncovered_witness: Optional[CircularSet]

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covers


def verify_partition(p: IntervalPartition) -> VerificationVerdict:
    """Check disjointness and coverage of a claimed partition from scratch."""
    n, d = p.n, p.d
    if n > MATERIALIZE_LIMIT:
        raise PreconditionViolatedError(
            f"verification enumerates all subsets of [{n}]; beyond desk scale"
        )
    count = len(p)
    if count == 0:
        witness = CircularSet(n, range(1, d + 1))
        return VerificationVerdict(True, False, 0, 0, None, witness)

    dtype = bitops.mask_dtype(n)
    nontrivial = p.lowers != p.uppers
    nt_idx = np.nonzero(nontrivial)[0]
    t_idx = np.nonzero(~nontrivial)[0]

    diffs = bitops.popcounts(p.uppers[nt_idx] & ~p.lowers[nt_idx]).astype(np.int64)
    volumes = np.left_shift(1, diffs)

    def expand():
        lo_arr = p.lowers[nt_idx].tolist()
        up_arr = p.uppers[nt_idx].tolist()
        for lo, up in zip(lo_arr, up_arr):
            diff = up & ~lo
            sub = diff
            while True:
                yield lo | sub
                if not sub:
                    break
                sub = (sub - 1) & diff

    members = np.concatenate(
        [
            np.fromiter(expand(), dtype=dtype, count=int(volumes.sum())),
            p.lowers[t_idx],
        ]
    )
    owners = np.concatenate(
        [np.repeat(nt_idx.astype(np.int64), volumes), t_idx.astype(np.int64)]
    )
    order = np.argsort(members, kind="stable")
    sorted_members = members[order]

    disjoint = True
    overlap_witness = None
    dup = np.nonzero(sorted_members[1:] == sorted_members[:-1])[0]
    if dup.size:
        k = int(dup[0])
        i, j = int(owners[order[k]]), int(owners[order[k + 1]])
        witness = CircularSet.from_mask(n, int(sorted_members[k]))
        disjoint = False
        overlap_witness = (min(i, j), max(i, j), witness)

    covers = True
    uncovered_witness = None
    masks, pops = bitops.all_masks(n)
    for size in range(d, n + 1):
        sel = masks[pops == size]
        present = bitops.member_lookup(sel, sorted_members)
        if not present.all():
            covers = False
            missing = sel[~present][0]
            uncovered_witness = CircularSet.from_mask(n, int(missing))
            break

    return VerificationVerdict(
        disjoint,
        covers,
        p.min_upper_size(),
        count,
        overlap_witness,
        uncovered_witness,
    )


def sdepth_of_partition(p: IntervalPartition) -> int:
    """The certified lower bound a verified partition yields: its minimum
    upper-endpoint size."""
    verdict = verify_partition(p)
    if not verdict.ok:
        raise InvalidPartitionError(
            f"partition failed verification (disjoint={verdict.disjoint}, "
            f"covers={verdict.covers})"
        )
    return verdict.min_upper_size


def render_stanley_decomposition(p: IntervalPartition) -> str:
    """One summand per interval: the monomial supported on the lower
    endpoint times the polynomial subring on the upper endpoint's
    variables.  Summand order matches interval order."""
    verdict = verify_partition(p)
    if not verdict.ok:
        raise InvalidPartitionError("refusing to render an unverified partition")
    lines = []
    lo_list = p.lowers.tolist()
    up_list = p.uppers.tolist()
    for lo, up in zip(lo_list, up_list):
        mono = []
        x = lo
        while x:
            b = x & -x
            mono.append(f"x{b.bit_length()}")
            x ^= b
        ring = []
        x = up
        while x:
            b = x & -x
            ring.append(f"x{b.bit_length()}")
            x ^= b
        lines.append("*".join(mono) + " · K[" + ",".join(ring) + "]")
    return "\n".join(lines)


class _BudgetHit(Exception):
    pass


def exact_sdepth(
    n: int,
    d: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
    counting_prune: bool = True,
) -> int | None:
    """Exact maximum, over all interval partitions of the poset, of the
    minimum upper-endpoint size.  Recommended for n <= 7.

    Descends the trial target from n; the first feasible target is the
    answer (a partition with minimum >= t also witnesses every smaller
    target).  The budget counts search nodes and candidate constructions
    across the whole descent; when it runs out the result is None, which
    is distinct from a definite answer.  ``counting_prune`` exists so
    tests can cross-check the pruned search against plain exhaustion.
    """
    if d < 1 or d > n:
        raise PreconditionViolatedError(f"need 1 <= d <= n, got n={n}, d={d}")
    work = [budget]
    try:
        for t in range(n, d, -1):
            if _cover_feasible(n, d, t, work, counting_prune):
                return t
    except _BudgetHit:
        return None
    return d


def _cover_feasible(
    n: int, d: int, t: int, work: list[int], counting_prune: bool = True
) -> bool:
    """Is there a disjoint interval cover, with every upper size >= t, of
    all subsets of size in [d, t-1]?  Sets of size >= t self-cover, so
    this is exactly feasibility of target t.

    Two sound prunes on top of the plain backtracking:

    * dead check: every still-uncovered constrained set must retain a
      candidate interval disjoint from the selection (a watched index
      makes the common case one probe);
    * counting: an interval with lower size a that covers x subsets of
      size sigma < t contains at least x * (t - sigma) / (sigma + 1 - a)
      subsets of size sigma + 1, all of them currently uncovered, and
      a >= d, so (sigma+1-d) * U[sigma+1] >= (t-sigma) * U[sigma] must
      hold for the uncovered counts U of every completable state.

    The counting prune only removes provably dead branches; the search
    stays exhaustive (cross-checked against prune-free runs on small n).
    """
    constrained: list[tuple[int, tuple[int, ...]]] = []
    for size in range(d, t):
        for combo in combinations(range(1, n + 1), size):
            constrained.append((bitops.mask_of(combo), combo))
    if not constrained:
        return True

    # uncovered[sz - d] counts uncovered sets of each size d..t.
    uncovered = [comb(n, sz) for sz in range(d, t + 1)]
    span = len(uncovered)

    cand_cache: dict[int, list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}

    def candidates(dmask: int, dmembers: tuple[int, ...]):
        cached = cand_cache.get(dmask)
        if cached is not None:
            return cached
        rest = [x for x in range(1, n + 1) if not dmask >> (x - 1) & 1]
        out = []
        for asize in range(d, len(dmembers) + 1):
            for alow in combinations(dmembers, asize):
                amask = bitops.mask_of(alow)
                for bsize in range(t, n + 1):
                    for extra in combinations(rest, bsize - len(dmembers)):
                        work[0] -= 1
                        if work[0] < 0:
                            raise _BudgetHit
                        bmask = dmask | bitops.mask_of(extra)
                        diff = bmask & ~amask
                        mems = []
                        hist = [0] * span
                        sub = diff
                        while True:
                            m = amask | sub
                            mems.append(m)
                            size = m.bit_count()
                            if size <= t:
                                hist[size - d] += 1
                            if not sub:
                                break
                            sub = (sub - 1) & diff
                        out.append((tuple(mems), tuple(hist)))
        cand_cache[dmask] = out
        return out

    covered: set[int] = set()
    watch: dict[int, int] = {}

    def extend() -> bool:
        work[0] -= 1
        if work[0] < 0:
            raise _BudgetHit
        if counting_prune:
            for i in range(span - 1):
                if (i + 1) * uncovered[i + 1] < (t - d - i) * uncovered[i]:
                    return False
        target = None
        for dmask, dmembers in constrained:
            if dmask not in covered:
                target = (dmask, dmembers)
                break
        if target is None:
            return True
        for dmask, dmembers in constrained:
            if dmask in covered:
                continue
            cl = candidates(dmask, dmembers)
            w = watch.get(dmask, 0)
            if covered.isdisjoint(cl[w][0]):
                continue
            for k in range(1, len(cl)):
                idx = (w + k) % len(cl)
                if covered.isdisjoint(cl[idx][0]):
                    watch[dmask] = idx
                    break
            else:
                return False
        for mems, hist in candidates(*target):
            if covered.isdisjoint(mems):
                covered.update(mems)
                for i, c in enumerate(hist):
                    uncovered[i] -= c
                if extend():
                    return True
                covered.difference_update(mems)
                for i, c in enumerate(hist):
                    uncovered[i] += c
        return False

    return extend()


@dataclass(frozen=True)
class SdepthReport:
    """Everything the package can say about one (n, d) instance."""

    n: int
    d: int
    conjectured: int
    upper_bound_formula: int
    certified_lower: int | None
    oracle_exact: int | None
    regime: RegimeDecomposition
    certification: str

    def __post_init__(self):
        if self.certified_lower is not None and self.certified_lower > self.upper_bound_formula:
            raise InternalCheckError(
                f"certified lower bound {self.certified_lower} exceeds the "
                f"upper bound {self.upper_bound_formula}"
            )
        if self.oracle_exact is not None:
            if self.oracle_exact > self.upper_bound_formula or (
                self.certified_lower is not None
                and self.certified_lower > self.oracle_exact
            ):
                raise InternalCheckError(
                    "oracle value falls outside the certified bounds"
                )

    @property
    def verified(self) -> bool:
        return self.certified_lower == self.upper_bound_formula


def sdepth_report(
    n: int,
    d: int,
    with_oracle: bool = False,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    cap: int = DEFAULT_SWEEP_CAP,
) -> SdepthReport:
    """Assemble the report: closed-form values plus the best certified
    lower bound the builder can produce within ``cap``.

    On the band 4d+3 <= n <= 5d+3 the dedicated construction pins the
    exact value d + 3 (built and verified at the left end, carried across
    the band by containment monotonicity), so the certified bound is at
    least that there.
    """
    reg = regime_of(n, d)
    conjectured = conjectured_sdepth(n, d)
    upper = sdepth_upper_bound(n, d)
    certified: int | None = None
    how = "none"
    full_ok = n <= MATERIALIZE_LIMIT and comb(n, (n + 1) // 2) <= cap
    k3_here = n == 4 * d + 3
    if full_ok:
        part, _ = build_partition_k3(d) if k3_here else build_partition(n, d)
        verdict = verify_partition(part)
        if not verdict.ok:
            raise InternalCheckError("builder produced an unverifiable partition")
        certified = verdict.min_upper_size
        how = "construction-k3" if k3_here else "construction"
    else:
        cert = certify_layered(n, d, cap=cap, use_k3=k3_here)
        if cert is not None:
            certified = cert.min_upper_size
            how = "layered" if cert.exact else "layered-floor"
    band = k3_band_exact(n, d)
    if band is not None and (certified is None or band > certified):
        certified = band
        how = "k3-band" if how == "none" else f"{how}+k3-band"
    oracle = exact_sdepth(n, d, budget=oracle_budget) if with_oracle else None
    return SdepthReport(n, d, conjectured, upper, certified, oracle, reg, how)

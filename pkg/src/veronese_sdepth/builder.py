"""Layer-by-layer construction of interval partitions of the (n, d) poset.

The poset consists of every subset of [n] of size at least d.  The builder
stacks interval families level by level, keeps an interval only when its
lower endpoint is not already covered, and completes the remainder with
singleton intervals [D, D]:

  TrivialRange (d <= n <= 2d)  everything trivial.
  K1                           one family at density 2.
  K2                           density 3, then a filtered level at density 2.
  Mid (3 <= k, n <= threshold) density k+1, then k-1 filtered levels at k.
  Large (n > threshold)        density k+1, then s filtered levels at s+1,
                               s = large_n_density_shift(n, d).

Selection makes every set of the visited sizes covered, so the trivial
remainder starts at the next size up; disjointness of a kept interval
against earlier layers follows from the families' closure property (for
the base family) and the cross-level disjointness hypotheses, which for
the filtered layers of one plan reduce to the levels being increasing at
a common density.

Candidate lower endpoints run in lexicographic order within each layer
and the trivial completion is emitted in increasing size then
lexicographic order, so identical inputs produce byte-identical
partitions.  Bulk storage is two parallel mask arrays; levels are
materialized one size at a time rather than holding the whole poset as
objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import bitops
from .core import (
    CircularSet,
    Regime,
    RegimeDecomposition,
    large_n_density_shift,
    regime_of,
)
from .errors import (
    InternalCheckError,
    InvalidPartitionError,
    PreconditionViolatedError,
)
from .lifting import (
    IntervalFamily,
    PosetInterval,
    closure_upper_mask,
    is_covered,
    validate_lift_params,
)

DEFAULT_SWEEP_CAP = 5_000_000

# Full materialization enumerates all 2^n masks.
MATERIALIZE_LIMIT = 26


@dataclass(frozen=True)
class LayerTrace:
    tag: str
    level_size: int
    density: int
    candidates: int
    selected: int
    discarded: int

    def __post_init__(self):
        if self.selected + self.discarded != self.candidates:
            raise InternalCheckError("layer trace counts are inconsistent")


@dataclass(frozen=True)
class BuilderTrace:
    layers: tuple[LayerTrace, ...]
    trivial_count: int | None


class IntervalPartition:
    """An ordered list of intervals over [n], stored as parallel mask arrays.

    Equality compares (n, d, regime, interval sequence); per-interval layer
    provenance is bookkeeping and not part of the value (the file format
    does not carry it).
    """

    def __init__(
        self,
        n: int,
        d: int,
        regime: RegimeDecomposition,
        lowers: np.ndarray,
        uppers: np.ndarray,
        layer_ids: np.ndarray,
        layer_tags: tuple[str, ...],
    ):
        if not (len(lowers) == len(uppers) == len(layer_ids)):
            raise InvalidPartitionError("parallel interval arrays differ in length")
        if len(lowers):
            if np.any(lowers & ~uppers):
                raise InvalidPartitionError("a lower endpoint is not inside its upper")
            if n < 8 * lowers.dtype.itemsize and np.any(uppers >> n):
                raise InvalidPartitionError(f"an interval leaves the universe [{n}]")
            if int(bitops.popcounts(lowers).min()) < d:
                raise InvalidPartitionError(f"a lower endpoint is smaller than d={d}")
        self.n = n
        self.d = d
        self.regime = regime
        self.lowers = lowers
        self.uppers = uppers
        self.layer_ids = layer_ids
        self.layer_tags = layer_tags

    def __len__(self) -> int:
        return len(self.lowers)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalPartition):
            return NotImplemented
        return (
            self.n == other.n
            and self.d == other.d
            and self.regime == other.regime
            and np.array_equal(self.lowers, other.lowers)
            and np.array_equal(self.uppers, other.uppers)
        )

    def interval(self, i: int) -> PosetInterval:
        return PosetInterval(
            CircularSet.from_mask(self.n, int(self.lowers[i])),
            CircularSet.from_mask(self.n, int(self.uppers[i])),
        )

    def __iter__(self) -> Iterator[PosetInterval]:
        for i in range(len(self)):
            yield self.interval(i)

    def layer_tag(self, i: int) -> str:
        return self.layer_tags[int(self.layer_ids[i])]

    def min_upper_size(self) -> int:
        if not len(self):
            return 0
        return int(bitops.popcounts(self.uppers).min())


@dataclass(frozen=True)
class LayeredCertificate:
    """Outcome of building only the layered part, with the trivial remainder
    implicit: every set the layers left uncovered self-covers, so the
    partition exists without being materialized.  ``exact`` is False when
    the scan for the smallest uncovered size hit the enumeration cap and
    ``min_upper_size`` is a (still valid) conservative floor."""

    n: int
    d: int
    regime: RegimeDecomposition
    min_upper_size: int
    exact: bool
    trace: BuilderTrace


def _plan_for(reg: RegimeDecomposition) -> list[tuple[int, int]]:
    n, d, k = reg.n, reg.d, reg.k
    if reg.regime is Regime.TRIVIAL_RANGE:
        return []
    if reg.regime is Regime.K1:
        return [(d, 1)]
    if reg.regime is Regime.K2:
        return [(d, 2), (d + 1, 1)]
    if reg.regime is Regime.MID:
        return [(d, k)] + [(d + l, k - 1) for l in range(1, k)]
    s = large_n_density_shift(n, d)
    return [(d, k)] + [(d + q, s) for q in range(1, s + 1)]


def _check_plan(plan: Sequence[tuple[int, int]]) -> None:
    # Filtered layers must share one density with strictly increasing levels:
    # cross-level disjointness at a common density needs only that ordering.
    levels = [lv for lv, _ in plan]
    if levels != sorted(set(levels)):
        raise InternalCheckError("layer levels must be strictly increasing")
    if len({s for _, s in plan[1:]}) > 1:
        raise InternalCheckError("filtered layers must share a single density")


def _run_layers(
    n: int, plan: Sequence[tuple[int, int]], ensure_after_first: tuple[int, ...] = ()
) -> tuple[list[IntervalFamily], set[int], list[LayerTrace]]:
    """Select intervals layer by layer.

    Returns the selected families, the set of every mask covered by a
    selected interval, and per-layer counts.  A repeated member mask means
    two selected intervals overlap, which the construction forbids; that
    is detected via the set-size delta and reported as an internal error.
    """
    _check_plan(plan)
    covered: set[int] = set()
    layers: list[IntervalFamily] = []
    traces: list[LayerTrace] = []
    for idx, (level, s) in enumerate(plan):
        validate_lift_params(n, level, s)
        table: dict[int, int] = {}
        candidates = 0
        volume = 1 << s
        for combo in combinations(range(1, n + 1), level):
            candidates += 1
            mask = 0
            for x in combo:
                mask |= 1 << (x - 1)
            if idx and mask in covered:
                continue
            upper = closure_upper_mask(n, level, s, combo)
            table[mask] = upper
            before = len(covered)
            diff = upper & ~mask
            sub = diff
            while True:
                covered.add(mask | sub)
                if not sub:
                    break
                sub = (sub - 1) & diff
            if len(covered) - before != volume:
                raise InternalCheckError(
                    f"interval at {combo} overlaps an earlier selection"
                )
        tag = f"I[{n},{level},{s + 1}]"
        layers.append(IntervalFamily(n, level, table, tag))
        traces.append(
            LayerTrace(tag, level, s + 1, candidates, len(table), candidates - len(table))
        )
        if idx == 0:
            for size in ensure_after_first:
                for combo in combinations(range(1, n + 1), size):
                    if bitops.mask_of(combo) not in covered:
                        raise InternalCheckError(
                            f"size-{size} set {combo} escaped the base layer"
                        )
    return layers, covered, traces


def _trivial_completion(
    n: int, d: int, covered: set[int]
) -> np.ndarray:
    """Masks of every uncovered poset element, increasing size then
    lexicographic within each size."""
    dtype = bitops.mask_dtype(n)
    masks, pops = bitops.all_masks(n)
    if covered:
        table = np.fromiter(covered, dtype=dtype, count=len(covered))
        table.sort()
    else:
        table = np.empty(0, dtype=dtype)
    parts = []
    for size in range(d, n + 1):
        sel = masks[pops == size]
        sel = sel[~bitops.member_lookup(sel, table)]
        parts.append(bitops.lex_sorted(sel, n))
    return np.concatenate(parts) if parts else np.empty(0, dtype=dtype)


def _assemble(
    n: int,
    d: int,
    reg: RegimeDecomposition,
    plan: Sequence[tuple[int, int]],
    ensure_after_first: tuple[int, ...],
    expected_min: tuple[str, int],
) -> tuple[IntervalPartition, BuilderTrace]:
    if n > MATERIALIZE_LIMIT:
        raise PreconditionViolatedError(
            f"materializing all subsets of [{n}] is beyond desk scale; "
            "use certify_layered for the bound"
        )
    layers, covered, traces = _run_layers(n, plan, ensure_after_first)
    trivial = _trivial_completion(n, d, covered)
    dtype = bitops.mask_dtype(n)
    lo_parts, up_parts, id_parts = [], [], []
    for li, fam in enumerate(layers):
        lo_parts.append(np.fromiter(fam.table.keys(), dtype=dtype, count=len(fam.table)))
        up_parts.append(np.fromiter(fam.table.values(), dtype=dtype, count=len(fam.table)))
        id_parts.append(np.full(len(fam.table), li, dtype=np.int16))
    lo_parts.append(trivial)
    up_parts.append(trivial)
    id_parts.append(np.full(len(trivial), len(layers), dtype=np.int16))
    part = IntervalPartition(
        n,
        d,
        reg,
        np.concatenate(lo_parts),
        np.concatenate(up_parts),
        np.concatenate(id_parts),
        tuple(fam.label for fam in layers) + ("trivial",),
    )
    kind, bound = expected_min
    got = part.min_upper_size()
    if (kind == "eq" and got != bound) or (kind == "ge" and got < bound):
        raise InternalCheckError(
            f"built partition has min upper size {got}, expected {kind} {bound}"
        )
    return part, BuilderTrace(tuple(traces), int(len(trivial)))


def build_partition(n: int, d: int) -> tuple[IntervalPartition, BuilderTrace]:
    """Construct and fully materialize the partition for (n, d).

    The minimum upper-endpoint size comes out as d in the trivial range,
    d + k through the Mid regime, and at least d + 1 + s beyond the
    threshold.
    """
    reg = regime_of(n, d)
    plan = _plan_for(reg)
    if reg.regime is Regime.TRIVIAL_RANGE:
        expected = ("eq", d)
    elif reg.regime is Regime.LARGE:
        expected = ("ge", d + 1 + large_n_density_shift(n, d))
    else:
        expected = ("eq", d + reg.k)
    return _assemble(n, d, reg, plan, (), expected)


def build_partition_k3(d: int) -> tuple[IntervalPartition, BuilderTrace]:
    """The dedicated construction at n = 4d + 3: the base family at
    density 4 (which covers every (d+1)-set, asserted with zero
    exceptions), a filtered level at d+2 with density 2, and a trivial
    remainder from size d + 3 up.  Minimum upper size is exactly d + 3."""
    if d < 1:
        raise PreconditionViolatedError(f"need d >= 1, got {d}")
    n = 4 * d + 3
    reg = regime_of(n, d)
    plan = [(d, 3), (d + 2, 1)]
    return _assemble(n, d, reg, plan, (d + 1,), ("eq", d + 3))


def coverage_query(dset: CircularSet, selected_layers) -> bool:
    """True iff some interval in the selected layers contains ``dset``.

    Probes every layer's lower-endpoint table with the subsets of ``dset``
    at that layer's lower size and tests the upper endpoint.
    """
    return any(is_covered(dset, fam) for fam in selected_layers)


def certify_layered(
    n: int, d: int, cap: int = DEFAULT_SWEEP_CAP, use_k3: bool = False
) -> LayeredCertificate | None:
    """Build and check only the layered part; the trivial remainder stays
    implicit.

    Sound because a singleton [D, D] for an uncovered D meets no other
    interval (an interval containing D would have covered it), so the
    layered selection plus implicit singletons is a partition whose
    minimum upper size is the smaller of the layered minimum and the
    smallest uncovered size.  Returns None when even the layered sweep
    would exceed ``cap`` enumerated subsets.
    """
    reg = regime_of(n, d)
    if use_k3:
        if n != 4 * d + 3:
            raise PreconditionViolatedError("the k3 construction needs n = 4d + 3")
        plan = [(d, 3), (d + 2, 1)]
        ensure = (d + 1,)
        floor = d + 3
    else:
        plan = _plan_for(reg)
        ensure = ()
        floor = d + len(plan)
    estimated = sum(comb(n, level) * ((1 << s) + 1) for level, s in plan)
    if estimated > cap:
        return None
    layers, covered, traces = _run_layers(n, plan, ensure)
    upper_sizes = [fam.upper_size() for fam in layers if len(fam)]
    layered_min = min(upper_sizes) if upper_sizes else None
    if covered:
        dtype = bitops.mask_dtype(n)
        arr = np.fromiter(covered, dtype=dtype, count=len(covered))
        hist = np.bincount(bitops.popcounts(arr).astype(np.int64), minlength=n + 1)
    else:
        hist = np.zeros(n + 1, dtype=np.int64)
    value, exact = layered_min, True
    for size in range(floor, n + 1):
        total = comb(n, size)
        if total > cap:
            value = size if value is None else min(value, size)
            exact = False
            break
        if int(hist[size]) < total:
            value = size if value is None else min(value, size)
            break
    if value is None:
        raise InternalCheckError("layered selection claims to cover the whole poset")
    return LayeredCertificate(
        n, d, reg, value, exact, BuilderTrace(tuple(traces), None)
    )

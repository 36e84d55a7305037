"""Lifting subsets of [n] into a larger circle and the interval families
that fall out.

A level set A of size ``level_size`` in [n] is padded with the run
n+1, ..., 2n - level_size to an n-set on the circle [m], m = (n+1)s + n.
Closing the lifted set at density s+1 and intersecting back with [n]
yields the interval [A, f(A~) & [n]] of upper size level_size + s.  One
interval per level set gives a pairwise-disjoint family with the closure
property: a set not covered by the family has no covered superset.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .blocks import BlockStructure, Density, block_structure, chain_walk
from .core import CircularBlock, CircularSet
from .errors import (
    InternalCheckError,
    PreconditionViolatedError,
    SizeMismatchError,
    SOutOfRangeError,
    UniverseMismatchError,
)


@dataclass(frozen=True)
class LiftParams:
    """Validated parameters of one lift: circle sizes and multiplicity."""

    n: int
    level_size: int
    s: int
    m: int


def validate_lift_params(n: int, level_size: int, s: int) -> LiftParams:
    """Check admissibility of (n, level_size, s) and compute m = (n+1)s + n.

    s must satisfy s <= floor((n - level_size) / (level_size + 1)); then
    m > n, (s+1) * n <= m - 1 and
    (m - n) / (s + 1) <= n - level_size < m - n all hold, and a violation
    of any of them is an internal error.
    """
    if not 1 <= level_size < n:
        raise PreconditionViolatedError(
            f"need 1 <= level_size < n, got level_size={level_size}, n={n}"
        )
    if s < 1:
        raise PreconditionViolatedError(f"need s >= 1, got {s}")
    cap = (n - level_size) // (level_size + 1)
    if s > cap:
        raise SOutOfRangeError(
            f"s={s} exceeds floor((n - level_size)/(level_size + 1)) = {cap}"
        )
    m = (n + 1) * s + n
    if not (m > n and (s + 1) * n <= m - 1):
        raise InternalCheckError(f"lift size checks failed for n={n}, s={s}")
    if not ((n + 1) * s <= (n - level_size) * (s + 1) and n - level_size < m - n):
        raise InternalCheckError(
            f"padding bounds failed for n={n}, level_size={level_size}, s={s}"
        )
    return LiftParams(n, level_size, s, m)


@dataclass(frozen=True)
class PosetInterval:
    """The interval [lower, upper] = all sets C with lower <= C <= upper."""

    lower: CircularSet
    upper: CircularSet

    def __post_init__(self):
        if self.lower.universe != self.upper.universe:
            raise UniverseMismatchError(
                f"interval endpoints on different circles: "
                f"{self.lower.universe} vs {self.upper.universe}"
            )
        if not self.lower.is_subset_of(self.upper):
            raise PreconditionViolatedError(
                f"lower {self.lower.members} is not a subset of upper {self.upper.members}"
            )

    @property
    def universe(self) -> int:
        return self.lower.universe

    @property
    def volume(self) -> int:
        return 1 << (len(self.upper) - len(self.lower))

    def contains(self, c: CircularSet) -> bool:
        if c.universe != self.universe:
            raise UniverseMismatchError(
                f"universe {c.universe} vs {self.universe}"
            )
        return self.lower.mask & ~c.mask == 0 and c.mask & ~self.upper.mask == 0

    def intersects(self, other: "PosetInterval") -> bool:
        """Nonempty intersection test via the least common element: the
        intervals meet iff lower | lower' fits under both uppers."""
        both = self.lower.mask | other.lower.mask
        return both & ~self.upper.mask == 0 and both & ~other.upper.mask == 0

    def member_masks(self) -> Iterator[int]:
        diff = self.upper.mask & ~self.lower.mask
        sub = diff
        while True:
            yield self.lower.mask | sub
            if not sub:
                return
            sub = (sub - 1) & diff


def lift(a: CircularSet, params: LiftParams) -> CircularSet:
    """Pad ``a`` with the run n+1, ..., 2n - level_size inside [m]."""
    if a.universe != params.n:
        raise UniverseMismatchError(
            f"set lives on [{a.universe}], lift expects [{params.n}]"
        )
    if len(a) != params.level_size:
        raise SizeMismatchError(
            f"expected a set of size {params.level_size}, got {len(a)}"
        )
    n = params.n
    padded = a.members + tuple(range(n + 1, 2 * n - params.level_size + 1))
    lifted = CircularSet(params.m, padded)
    assert len(lifted) == n
    return lifted


def closure_upper_mask(n: int, level_size: int, s: int, members: tuple[int, ...]) -> int:
    """Fast path for the lifted closure: upper endpoint of [A, f(A~) & [n]]
    as a bitmask, without building intermediate objects.

    Checks the structural facts that make the construction sound: the
    closure of the lifted set has exactly n + s elements, none of the gap
    positions lands in the padding, and the upper endpoint has size
    level_size + s.
    """
    m = (n + 1) * s + n
    elems = list(members) + list(range(n + 1, 2 * n - level_size + 1))
    chain = chain_walk(m, elems, s + 1, 1)
    mask = 0
    for x in members:
        mask |= 1 << (x - 1)
    gap_total = 0
    for start, blen, glen in chain:
        if not glen:
            continue
        gap_total += glen
        gs = start - 1 + blen
        for off in range(glen):
            pos = (gs + off) % m + 1
            if pos > n:
                raise InternalCheckError(
                    f"gap position {pos} fell inside the padding (n={n}, m={m})"
                )
            mask |= 1 << (pos - 1)
    if len(elems) + gap_total != n + s:
        raise InternalCheckError(
            f"lifted closure has size {len(elems) + gap_total}, expected {n + s}"
        )
    if mask.bit_count() != level_size + s:
        raise InternalCheckError(
            f"upper endpoint has size {mask.bit_count()}, expected {level_size + s}"
        )
    return mask


def lifted_closure(a: CircularSet, params: LiftParams) -> PosetInterval:
    """The interval [A, f(A~) & [n]] for a level set A.

    Computes the block structure of the lifted set at density s + 1 (fully
    validated), asserts the padding stayed gap-free and the cardinality
    identities, and returns the interval over [n].
    """
    lifted = lift(a, params)
    n, s = params.n, params.s
    bs = block_structure(lifted, Density(s + 1))
    gap = bs.gap_positions()
    if len(lifted) + len(gap) != n + s:
        raise InternalCheckError(
            f"closure size {len(lifted) + len(gap)}, expected {n + s}"
        )
    if any(pos > n for pos in gap):
        raise InternalCheckError("padding contributed a gap position")
    upper = CircularSet(n, set(a.members) | gap)
    if len(upper) != params.level_size + s:
        raise InternalCheckError(
            f"upper endpoint size {len(upper)}, expected {params.level_size + s}"
        )
    return PosetInterval(a, upper)


class IntervalFamily:
    """A family of intervals with a common lower-endpoint size, stored as a
    lower-mask -> upper-mask table so coverage probes cost one lookup per
    lower-size subset of the probed set."""

    def __init__(self, n: int, lower_size: int, table: dict[int, int], label: str):
        self.n = n
        self.lower_size = lower_size
        self.table = table
        self.label = label

    @classmethod
    def from_intervals(cls, intervals: Iterable[PosetInterval], label: str = "family"):
        table: dict[int, int] = {}
        n = None
        size = None
        for iv in intervals:
            if n is None:
                n, size = iv.universe, len(iv.lower)
            if iv.universe != n:
                raise UniverseMismatchError("mixed universes in one family")
            if len(iv.lower) != size:
                raise SizeMismatchError("mixed lower sizes in one family")
            table[iv.lower.mask] = iv.upper.mask
        if n is None:
            raise PreconditionViolatedError("empty interval family")
        return cls(n, size, table, label)

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self) -> Iterator[PosetInterval]:
        for lo, up in self.table.items():
            yield PosetInterval(
                CircularSet.from_mask(self.n, lo), CircularSet.from_mask(self.n, up)
            )

    def upper_size(self) -> int:
        if not self.table:
            return self.lower_size
        return next(iter(self.table.values())).bit_count()

    def covers_mask(self, mask: int, members: tuple[int, ...]) -> bool:
        if len(members) < self.lower_size:
            return False
        table = self.table
        for combo in combinations(members, self.lower_size):
            key = 0
            for x in combo:
                key |= 1 << (x - 1)
            up = table.get(key)
            if up is not None and mask & ~up == 0:
                return True
        return False


def interval_family(n: int, d: int, l: int, s: int) -> IntervalFamily:
    """One interval per (d+l)-subset of [n], upper size d + l + s; the
    family is pairwise disjoint.  Lower endpoints run in lexicographic
    order."""
    level = d + l
    validate_lift_params(n, level, s)
    table: dict[int, int] = {}
    for combo in combinations(range(1, n + 1), level):
        key = 0
        for x in combo:
            key |= 1 << (x - 1)
        table[key] = closure_upper_mask(n, level, s, combo)
    return IntervalFamily(n, level, table, f"I[{n},{level},{s + 1}]")


def _as_families(family) -> list[IntervalFamily]:
    if isinstance(family, IntervalFamily):
        return [family]
    items = list(family)
    if all(isinstance(x, IntervalFamily) for x in items):
        return items
    groups: dict[int, list[PosetInterval]] = {}
    for iv in items:
        groups.setdefault(len(iv.lower), []).append(iv)
    return [
        IntervalFamily.from_intervals(ivs, label=f"size{size}")
        for size, ivs in sorted(groups.items())
    ]


def is_covered(dset: CircularSet, family) -> bool:
    """True iff some interval [A, B] of the family has A <= dset <= B.

    Decided by probing the lower-endpoint table with every lower-size
    subset of ``dset``.
    """
    for fam in _as_families(family):
        if fam.n != dset.universe:
            raise UniverseMismatchError(
                f"set on [{dset.universe}], family on [{fam.n}]"
            )
        if fam.covers_mask(dset.mask, dset.members):
            return True
    return False


def check_superset_closure(dset: CircularSet, family) -> bool:
    """For an uncovered set, verify no superset is covered either.

    Supersets are enumerated up to the family's largest upper size; larger
    sets cannot fit inside any interval.
    """
    fams = _as_families(family)
    if is_covered(dset, fams):
        raise PreconditionViolatedError(
            f"{dset.members} is covered; the closure check applies to uncovered sets"
        )
    n = dset.universe
    top = max(f.upper_size() for f in fams)
    outside = [x for x in range(1, n + 1) if x not in dset]
    for extra in range(1, top - len(dset) + 1):
        for added in combinations(outside, extra):
            sup = CircularSet(n, dset.members + added)
            if is_covered(sup, fams):
                return False
    return True


def check_mixed_density_disjoint(a: CircularSet, b: CircularSet, delta, eta) -> bool:
    """Disjointness of [A, f_delta(A)] and [B, f_eta(B)] at two densities.

    True iff the implication holds: whenever |f_eta(B)| - |B| <= eta - 1
    and A is not contained in B, the two intervals are disjoint.  Vacuously
    true when the hypothesis fails.
    """
    from .blocks import f_delta as closure

    a._same_universe(b)
    delta = Density.coerce(delta)
    eta = Density.coerce(eta)
    if len(a) > len(b):
        raise PreconditionViolatedError("need |A| <= |B|")
    if not delta.at_least(eta):
        raise PreconditionViolatedError("need delta >= eta")
    fb = closure(b, eta)
    tight = (len(fb) - len(b)) * eta.den <= eta.num - eta.den
    a_outside = bool(a.mask & ~b.mask)
    if not (tight and a_outside):
        return True
    fa = closure(a, delta)
    both = a.mask | b.mask
    meet = both & ~fa.mask == 0 and both & ~fb.mask == 0
    return not meet


def check_cross_level_disjoint(
    c: CircularSet, dset: CircularSet, d: int, q: int, l: int, delta: int, eta: int
) -> bool:
    """Disjointness of the lifted intervals of C (|C| = d+q, density delta)
    and D (|D| = d+l, density eta) across two levels.

    Hypotheses, each checked and reported on failure: 0 <= q <= l,
    2 <= eta <= delta (a unit density degenerates the lift),
    eta <= floor((n+1)/(d+l+1)), delta <= floor((n+1)/(d+q+1)), and
    (d+l+1) * eta >= (d+q+1) * delta.  True iff: D not covered by C's
    interval implies the two intervals are disjoint.
    """
    c._same_universe(dset)
    n = c.universe
    failed = []
    if not (isinstance(delta, int) and isinstance(eta, int)):
        failed.append("delta and eta must be integers")
    if not 0 <= q <= l:
        failed.append(f"0 <= q <= l fails (q={q}, l={l})")
    if len(c) != d + q:
        failed.append(f"|C| = {len(c)} != d+q = {d + q}")
    if len(dset) != d + l:
        failed.append(f"|D| = {len(dset)} != d+l = {d + l}")
    if not (isinstance(eta, int) and eta >= 2) or not (isinstance(delta, int) and delta >= eta):
        failed.append(f"need 2 <= eta <= delta, got eta={eta}, delta={delta}")
    else:
        if eta > (n + 1) // (d + l + 1):
            failed.append(f"eta={eta} exceeds floor((n+1)/(d+l+1))")
        if delta > (n + 1) // (d + q + 1):
            failed.append(f"delta={delta} exceeds floor((n+1)/(d+q+1))")
        if (d + l + 1) * eta < (d + q + 1) * delta:
            failed.append(
                f"(d+l+1)*eta = {(d + l + 1) * eta} < (d+q+1)*delta = {(d + q + 1) * delta}"
            )
    if failed:
        raise PreconditionViolatedError("; ".join(failed))
    interval_c = lifted_closure(c, validate_lift_params(n, d + q, delta - 1))
    if interval_c.contains(dset):
        return True
    interval_d = lifted_closure(dset, validate_lift_params(n, d + l, eta - 1))
    return not interval_c.intersects(interval_d)


def extended_block_structure(
    lifted: CircularSet, target_m: int, eta
) -> BlockStructure:
    """Enlarge, within the block structure of a lifted set on [m'], the
    single block holding the padding by the extra positions m'+1, ...,
    target_m, leaving every other segment (and every gap) unchanged.

    The returned structure lives on [target_m] and is not itself a valid
    block structure in the density sense; its gaps are the object of
    interest and coincide with the original ones.
    """
    m_prime = lifted.universe
    if target_m < m_prime:
        raise PreconditionViolatedError(
            f"target universe {target_m} smaller than current {m_prime}"
        )
    bs = block_structure(lifted, eta)
    if target_m == m_prime:
        return bs
    grow = target_m - m_prime
    idx = next(
        (i for i, b in enumerate(bs.blocks) if m_prime in b),
        None,
    )
    if idx is None:
        raise PreconditionViolatedError(
            f"position {m_prime} lies in a gap; there is no padding block to extend"
        )
    blocks = []
    gaps: list[CircularBlock | None] = []
    for i, (b, g) in enumerate(zip(bs.blocks, bs.gaps)):
        length = b.length + grow if i == idx else b.length
        blocks.append(CircularBlock(target_m, b.start, length))
        gaps.append(None if g is None else CircularBlock(target_m, g.start, g.length))
    return BlockStructure(target_m, bs.density, tuple(blocks), tuple(gaps))

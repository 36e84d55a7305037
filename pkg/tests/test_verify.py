import numpy as np
import pytest

from veronese_sdepth import (
    CircularSet,
    IntervalPartition,
    InvalidPartitionError,
    build_partition,
    build_partition_k3,
    conjectured_sdepth,
    exact_sdepth,
    regime_of,
    render_stanley_decomposition,
    sdepth_of_partition,
    sdepth_report,
    verify_partition,
)


def small_partition():
    part, _ = build_partition(5, 2)
    return part


def drop_interval(p, idx):
    keep = np.ones(len(p), dtype=bool)
    keep[idx] = False
    return IntervalPartition(
        p.n, p.d, p.regime, p.lowers[keep], p.uppers[keep], p.layer_ids[keep], p.layer_tags
    )


def duplicate_interval(p, idx):
    return IntervalPartition(
        p.n,
        p.d,
        p.regime,
        np.concatenate([p.lowers, p.lowers[idx : idx + 1]]),
        np.concatenate([p.uppers, p.uppers[idx : idx + 1]]),
        np.concatenate([p.layer_ids, p.layer_ids[idx : idx + 1]]),
        p.layer_tags,
    )


def shrink_upper(p, idx):
    uppers = p.uppers.copy()
    lo, up = int(p.lowers[idx]), int(p.uppers[idx])
    removable = up & ~lo
    assert removable
    uppers[idx] = up ^ (removable & -removable)
    return IntervalPartition(
        p.n, p.d, p.regime, p.lowers.copy(), uppers, p.layer_ids.copy(), p.layer_tags
    )


class TestVerifyPartition:
    def test_built_partition_verifies(self):
        verdict = verify_partition(small_partition())
        assert verdict.ok and verdict.disjoint and verdict.covers
        assert verdict.min_upper_size == 3
        assert verdict.interval_count == 16
        assert verdict.overlap_witness is None and verdict.uncovered_witness is None

    def test_dropped_interval_reported_uncovered(self):
        p = small_partition()
        verdict = verify_partition(drop_interval(p, len(p) - 1))
        assert verdict.disjoint and not verdict.covers
        assert verdict.uncovered_witness is not None
        witness = verdict.uncovered_witness
        assert witness == CircularSet.from_mask(p.n, int(p.lowers[len(p) - 1]))

    def test_duplicated_interval_reported_overlapping(self):
        p = small_partition()
        verdict = verify_partition(duplicate_interval(p, 0))
        assert not verdict.disjoint and verdict.covers
        i, j, witness = verdict.overlap_witness
        assert (i, j) == (0, len(p))
        assert witness == p.interval(0).lower

    def test_shrunk_upper_reported_uncovered(self):
        p = small_partition()
        verdict = verify_partition(shrink_upper(p, 0))
        assert verdict.disjoint and not verdict.covers
        assert verdict.uncovered_witness is not None

    def test_empty_partition(self):
        p = small_partition()
        empty = IntervalPartition(
            5,
            2,
            p.regime,
            p.lowers[:0],
            p.uppers[:0],
            p.layer_ids[:0],
            ("trivial",),
        )
        verdict = verify_partition(empty)
        assert not verdict.covers and verdict.min_upper_size == 0


class TestSdepthOfPartition:
    def test_values(self):
        assert sdepth_of_partition(small_partition()) == 3
        assert sdepth_of_partition(build_partition(4, 2)[0]) == 2
        assert sdepth_of_partition(build_partition_k3(1)[0]) == 4

    def test_rejects_invalid(self):
        broken = drop_interval(small_partition(), 3)
        with pytest.raises(InvalidPartitionError):
            sdepth_of_partition(broken)


class TestRender:
    def test_summand_format(self):
        p = small_partition()
        lines = render_stanley_decomposition(p).splitlines()
        assert len(lines) == len(p)
        assert lines[0] == "x1*x2 · K[x1,x2,x5]"
        assert lines[-1] == "x1*x2*x3*x4*x5 · K[x1,x2,x3,x4,x5]"

    def test_trivial_summand(self):
        part, _ = build_partition(3, 3)
        assert render_stanley_decomposition(part) == "x1*x2*x3 · K[x1,x2,x3]"

    def test_refuses_invalid(self):
        with pytest.raises(InvalidPartitionError):
            render_stanley_decomposition(drop_interval(small_partition(), 0))


class TestExactOracle:
    def test_tiny_values(self):
        assert exact_sdepth(3, 1) == 2
        assert exact_sdepth(4, 2) == 2
        assert exact_sdepth(5, 2) == 3

    def test_budget_exhaustion_is_none(self):
        assert exact_sdepth(6, 1, budget=5) is None

    def test_agreement_with_formula_through_seven(self):
        for n in range(1, 7):
            for d in range(1, n + 1):
                assert exact_sdepth(n, d) == conjectured_sdepth(n, d)
        assert exact_sdepth(7, 1) == 4
        assert exact_sdepth(7, 2) == 3

    def test_counting_prune_is_conservative(self):
        for n in range(1, 6):
            for d in range(1, n + 1):
                assert exact_sdepth(n, d) == exact_sdepth(n, d, counting_prune=False)

    def test_never_above_builder_certificate(self):
        for n in range(2, 7):
            for d in range(1, n + 1):
                part, _ = build_partition(n, d)
                assert sdepth_of_partition(part) <= exact_sdepth(n, d)


class TestSdepthReport:
    def test_small_instance_verified(self):
        rep = sdepth_report(5, 2, with_oracle=True)
        assert rep.certified_lower == rep.conjectured == rep.oracle_exact == 3
        assert rep.verified and rep.certification == "construction"

    def test_band_lifts_certificate(self):
        rep = sdepth_report(8, 1)
        assert rep.certified_lower == 4 and rep.verified
        assert "k3-band" in rep.certification

    def test_k3_path(self):
        rep = sdepth_report(7, 1)
        assert rep.certified_lower == 4 and rep.certification == "construction-k3"

    def test_layered_path(self):
        rep = sdepth_report(29, 1)
        assert rep.certified_lower == 6 and rep.upper_bound_formula == 15
        assert not rep.verified and rep.certification == "layered"

    def test_bounds_ordering_enforced(self):
        rep = sdepth_report(9, 1, with_oracle=False)
        assert rep.certified_lower <= rep.upper_bound_formula
        assert rep.regime == regime_of(9, 1)
        assert rep.conjectured == conjectured_sdepth(9, 1)

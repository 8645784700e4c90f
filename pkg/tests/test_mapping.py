"""Mapping core: offset removal, quantization, closed-form encode, the
brute-force projection oracle, and decoding."""

import math

import numpy as np
import pytest

from ajscc import (
    MappingParams,
    NormalizedReading,
    ParameterError,
    RangeError,
    SensorReading,
    decode,
    decode_many,
    encode,
    encode_bruteforce,
    encode_many,
    project_bruteforce_many,
    quantize_level,
    remove_offset,
    s_max,
)
from ajscc.mapping import quantize_level_many


def random_params(rng: np.random.Generator) -> MappingParams:
    """Valid random parameter set with a strictly positive connector length."""
    delta_h = rng.uniform(0.05, 0.8)
    num_levels = int(rng.integers(1, 16))
    h_offset = rng.uniform(-1.0, 1.0)
    h_span = (num_levels - 1) * delta_h + rng.uniform(0.0, delta_h)
    t_offset = rng.uniform(-1.0, 2.0)
    t_span = rng.uniform(0.5, 4.0)
    gain = rng.uniform(0.05, 1.0)
    return MappingParams(
        delta_h=delta_h,
        v_r=gain * t_span,
        num_levels=num_levels,
        gain=gain,
        connector_len=rng.uniform(0.01, delta_h),
        t_offset=t_offset,
        t_max_raw=t_offset + t_span,
        h_offset=h_offset,
        h_max_raw=h_offset + h_span + 1e-12,
    )


class TestParams:
    def test_paper_values(self, params):
        assert params.t_span == 2.25
        assert params.h_span == 3.0
        assert params.pitch == 0.75

    @pytest.mark.parametrize(
        "field,value",
        [
            ("delta_h", 0.0),
            ("v_r", -1.0),
            ("num_levels", 0),
            ("gain", 0.0),
            ("connector_len", -0.1),
        ],
    )
    def test_invalid_fields_rejected(self, params, field, value):
        kwargs = {**params.__dict__, field: value}
        with pytest.raises(ParameterError):
            MappingParams(**kwargs)

    def test_gain_span_consistency_enforced(self, params):
        with pytest.raises(ParameterError):
            MappingParams(**{**params.__dict__, "gain": 0.3})

    def test_levels_must_fit_humidity_span(self, params):
        with pytest.raises(ParameterError):
            MappingParams(**{**params.__dict__, "num_levels": 12})


class TestRemoveOffset:
    def test_low_endpoints(self, params):
        norm = remove_offset(SensorReading(1.375, 0.8), params)
        assert norm.v_t0 == 0.0 and norm.v_h0 == 0.0

    def test_high_endpoints(self, params):
        norm = remove_offset(SensorReading(3.625, 3.8), params)
        assert norm.v_t0 == 2.25 and norm.v_h0 == 3.0

    def test_interior_point(self, params):
        norm = remove_offset(SensorReading(2.5, 2.3), params)
        assert norm.v_t0 == pytest.approx(1.125, abs=1e-12)
        assert norm.v_h0 == pytest.approx(1.5, abs=1e-12)

    def test_out_of_range_names_field(self, params):
        with pytest.raises(RangeError, match="v_t"):
            remove_offset(SensorReading(1.0, 2.0), params)
        with pytest.raises(RangeError, match="v_h"):
            remove_offset(SensorReading(2.0, 4.0), params)


class TestQuantizeLevel:
    def test_linear_region_point(self, params):
        assert quantize_level(0.76, params) == 4

    def test_origin(self, params):
        assert quantize_level(0.0, params) == 1

    def test_boundary_tie_goes_to_lower_level(self, params):
        # 0.45 sits exactly between the level-2 and level-3 centers.
        assert quantize_level(0.45, params) == 2

    def test_matches_explicit_nearest_center_scan(self, params):
        # Independent check: compare distances to every center, ties -> lower.
        rng = np.random.default_rng(42)
        centers = np.arange(params.num_levels) * params.delta_h
        for v_h0 in rng.uniform(0.0, params.h_span, 5000):
            d = np.abs(v_h0 - centers)
            expected = int(np.argmin(d)) + 1  # argmin takes first (lower) on ties
            assert quantize_level(float(v_h0), params) == expected

    def test_out_of_range(self, params):
        with pytest.raises(RangeError, match="v_h0"):
            quantize_level(3.2, params)
        with pytest.raises(RangeError, match="v_h0"):
            quantize_level(-0.01, params)


class TestEncode:
    def test_origin(self, params):
        value = encode(NormalizedReading(0.0, 0.0), params)
        assert value.s == 0.0 and value.level == 1 and value.parity == "odd"

    def test_level4_closed_form(self, params):
        # Point on level 4: s = 3*(v_r + delta_h) + (v_r - gain*v_t0).
        v_t0 = 0.7
        value = encode(NormalizedReading(v_t0, 0.9), params)
        assert value.level == 4 and value.parity == "even"
        assert value.s == 3 * (0.45 + 0.3) + (0.45 - params.gain * v_t0)

    def test_worked_example_against_oracle(self, params):
        value = encode(NormalizedReading(1.0, 0.9), params)
        assert value.s == pytest.approx(2.50, abs=1e-12)
        oracle = encode_bruteforce(NormalizedReading(1.0, 0.9), params, 1e-4)
        assert abs(value.s - oracle.s) <= params.gain * 1e-4 + 1e-9
        assert oracle.level == value.level == 4

    def test_range_errors_propagate(self, params):
        with pytest.raises(RangeError):
            encode(NormalizedReading(-0.1, 0.0), params)


class TestBruteforceOracle:
    def test_origin(self, params):
        value = encode_bruteforce(NormalizedReading(0.0, 0.0), params, 1e-3)
        assert value.s == 0.0 and value.level == 1

    def test_bad_grid_step(self, params):
        with pytest.raises(ParameterError):
            encode_bruteforce(NormalizedReading(0.0, 0.0), params, 0.0)

    def test_midway_tie_matches_quantizer(self, params):
        # Exactly between level centers the oracle takes the smaller arc
        # length, which is the lower level, same as quantize_level.
        v_h0 = 0.45
        oracle = encode_bruteforce(NormalizedReading(1.3, v_h0), params, 1e-3)
        assert oracle.level == quantize_level(v_h0, params) == 2

    def test_fast_batch_equals_exhaustive_scan(self, params):
        rng = np.random.default_rng(7)
        vt = rng.uniform(0.0, params.t_span, 300)
        vh = rng.uniform(0.0, params.h_span, 300)
        # Adversarial points: exact level boundaries and exact grid samples.
        vt = np.concatenate([vt, [0.0, params.t_span, 0.5e-3 * 31, 1.125]])
        vh = np.concatenate([vh, [0.45, 0.15, params.h_span, 0.0]])
        grid_step = 1e-3
        s_fast, lev_fast = project_bruteforce_many(vt, vh, params, grid_step)
        for i in range(vt.size):
            slow = encode_bruteforce(NormalizedReading(float(vt[i]), float(vh[i])), params, grid_step)
            assert s_fast[i] == slow.s, (vt[i], vh[i])
            assert lev_fast[i] == slow.level

    def test_connector_samples_change_nothing_away_from_edges(self, params):
        rng = np.random.default_rng(11)
        for _ in range(200):
            vt = float(rng.uniform(0.05, params.t_span - 0.05))
            vh = float(rng.uniform(0.0, params.h_span))
            plain = encode_bruteforce(NormalizedReading(vt, vh), params, 1e-3)
            with_conn = encode_bruteforce(
                NormalizedReading(vt, vh), params, 1e-3, include_connectors=True
            )
            assert with_conn.s == plain.s

    def test_oracle_agreement_random_sample(self, params):
        rng = np.random.default_rng(3)
        n = 20000
        vt = rng.uniform(0.0, params.t_span, n)
        vh = rng.uniform(0.0, params.h_span, n)
        grid_step = 1e-4
        s_fast, lev_fast = project_bruteforce_many(vt, vh, params, grid_step)
        s_enc, lev_enc = encode_many(vt, vh, params)
        assert np.max(np.abs(s_fast - s_enc)) <= params.gain * grid_step + 1e-9
        # Levels agree except within a grid step of tie boundaries.
        u = vh / params.delta_h
        near_tie = np.min(np.abs(u - (np.round(u - 0.5) + 0.5)), axis=0) < grid_step
        assert np.all((lev_fast == lev_enc) | near_tie)


class TestDecode:
    def test_zero(self, params):
        d = decode(0.0, params)
        assert d.v_t0_hat == 0.0 and d.v_h0_hat == 0.0 and d.level_hat == 1
        assert not d.on_connector

    def test_inverse_of_worked_example(self, params):
        d = decode(2.50, params)
        assert d.v_t0_hat == pytest.approx(1.0, abs=1e-12)
        assert d.v_h0_hat == 3 * params.delta_h
        assert d.level_hat == 4 and not d.on_connector

    def test_connector_region_past_midpoint(self, params):
        # r = 0.70 > v_r, past the connector midpoint 0.60: level 4, max v_t0.
        d = decode(2.20, params)
        assert d.on_connector
        assert d.level_hat == 4
        assert d.v_t0_hat == params.t_span

    def test_connector_region_before_midpoint(self, params):
        # r = 0.50 in (v_r, v_r + connector_len/2]: stay on the lower level.
        d = decode(2.00, params)
        assert d.on_connector and d.level_hat == 3
        assert d.v_t0_hat == params.t_span

    def test_connector_after_even_level_sits_at_zero_volts(self, params):
        # Between levels 2 and 3 the connector is on the left edge.
        s = 1 * params.pitch + params.v_r + 0.1
        d = decode(s, params)
        assert d.on_connector and d.v_t0_hat == 0.0

    def test_clamps_above_smax(self, params):
        assert decode(s_max(params) + 1.0, params) == decode(s_max(params), params)
        assert decode(1e9, params) == decode(s_max(params), params)
        assert decode(-3.0, params) == decode(0.0, params)

    def test_non_finite_rejected(self, params):
        with pytest.raises(ParameterError):
            decode(math.nan, params)
        with pytest.raises(ParameterError):
            decode(math.inf, params)


class TestSMax:
    def test_single_line(self, params):
        p = MappingParams(**{**params.__dict__, "num_levels": 1})
        assert s_max(p) == p.v_r

    def test_paper_value_and_encode_cross_check(self, params):
        assert s_max(params) == 7.95
        # The far end of the top (odd) line is (t_span, h_span-ish top).
        top = encode(NormalizedReading(params.t_span, 3.0), params)
        assert top.level == 11
        assert top.s == s_max(params)

    def test_two_lines_no_connector(self):
        p = MappingParams(
            delta_h=0.5, v_r=1.0, num_levels=2, gain=1.0, connector_len=0.0,
            t_offset=0.0, t_max_raw=1.0, h_offset=0.0, h_max_raw=1.0,
        )
        assert s_max(p) == 2.0


class TestInvariants:
    def test_noiseless_roundtrip(self, params):
        rng = np.random.default_rng(5)
        vt = rng.uniform(0.0, params.t_span, 50000)
        vh = rng.uniform(0.0, params.h_span, 50000)
        s, levels = encode_many(vt, vh, params)
        vt_hat, vh_hat, lev_hat, on_conn = decode_many(s, params)
        assert np.max(np.abs(vt_hat - vt)) <= 1e-9
        assert np.max(np.abs(vh_hat - vh)) <= params.delta_h / 2
        assert np.array_equal(vh_hat, (levels - 1) * params.delta_h)
        assert np.array_equal(lev_hat, levels)
        assert not np.any(on_conn)

    def test_roundtrip_random_param_sets(self):
        rng = np.random.default_rng(99)
        for _ in range(25):
            p = random_params(rng)
            vt = rng.uniform(0.0, p.t_span, 2000)
            vh = rng.uniform(0.0, p.h_span, 2000)
            s, _ = encode_many(vt, vh, p)
            vt_hat, vh_hat, _, _ = decode_many(s, p)
            assert np.max(np.abs(vt_hat - vt)) <= 1e-9
            assert np.max(np.abs(vh_hat - vh)) <= p.delta_h / 2 + 1e-12

    def test_output_range(self, params):
        rng = np.random.default_rng(6)
        vt = rng.uniform(0.0, params.t_span, 50000)
        vh = rng.uniform(0.0, params.h_span, 50000)
        s, _ = encode_many(vt, vh, params)
        assert np.all(s >= 0.0)
        assert np.all(s <= s_max(params))

    def test_parity_slopes(self, params):
        # At fixed v_h0 inside one level, s is affine in v_t0 with slope
        # +gain on odd levels and -gain on even levels.
        rng = np.random.default_rng(8)
        for level in range(1, params.num_levels + 1):
            v_h0 = (level - 1) * params.delta_h
            t = np.sort(rng.uniform(0.0, params.t_span, 50))
            s, _ = encode_many(t, np.full(50, v_h0), params)
            slopes = np.diff(s) / np.diff(t)
            expected = params.gain if level % 2 == 1 else -params.gain
            assert np.max(np.abs(slopes - expected)) < 1e-9

    def test_traversal_monotonicity(self, params):
        rng = np.random.default_rng(9)
        for v_t0 in rng.uniform(0.0, params.t_span, 20):
            centers = np.arange(params.num_levels) * params.delta_h
            s, _ = encode_many(np.full(params.num_levels, v_t0), centers, params)
            assert np.all(np.diff(s) > 0)

    def test_scalar_and_batch_encode_agree(self, params):
        rng = np.random.default_rng(10)
        vt = rng.uniform(0.0, params.t_span, 200)
        vh = rng.uniform(0.0, params.h_span, 200)
        s, levels = encode_many(vt, vh, params)
        for i in range(200):
            value = encode(NormalizedReading(float(vt[i]), float(vh[i])), params)
            assert value.s == s[i] and value.level == levels[i]

    def test_quantize_batch_matches_scalar(self, params):
        grid = np.linspace(0.0, params.h_span, 1001)
        batch = quantize_level_many(grid, params)
        assert all(quantize_level(float(v), params) == batch[i] for i, v in enumerate(grid))

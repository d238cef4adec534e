"""Renderer tests: exact point pipeline, rasterization, PPM output."""

from fractions import Fraction
from itertools import product

import pytest

from tileconn.lattice import CharPoly, standard_digits
from tileconn.render import (
    ImageGrid,
    RenderConfig,
    _round_half_away,
    _scaled_points,
    attractor_points,
    count_components,
    default_filename,
    point_envelope,
    rasterize,
    write_image,
)


def oracle_points(cfg):
    """Independent finite-depth point set: sum of inverse-matrix powers
    applied to each digit, in exact rational arithmetic."""
    p, q = cfg.poly.p, cfg.poly.q
    inv = ((Fraction(-p, q), Fraction(1)), (Fraction(-1, q), Fraction(0)))

    def apply(m, vec):
        return (m[0][0] * vec[0] + m[0][1] * vec[1], m[1][0] * vec[0] + m[1][1] * vec[1])

    out = []
    for word in product(cfg.digits, repeat=cfg.depth):
        total = (Fraction(0), Fraction(0))
        for d in reversed(word):  # innermost digit first
            total = apply(inv, (d.l + total[0], d.k + total[1]))
        out.append(total)
    return out


class TestConfig:
    def test_rejects_shallow_depth(self):
        with pytest.raises(ValueError):
            RenderConfig(CharPoly(0, 3), standard_digits(1), depth=0)

    def test_rejects_tiny_image(self):
        with pytest.raises(ValueError):
            RenderConfig(CharPoly(0, 3), standard_digits(1), width=8)

    def test_rejects_bad_margin(self):
        with pytest.raises(ValueError):
            RenderConfig(CharPoly(0, 3), standard_digits(1), margin=0.5)

    def test_default_filename(self):
        assert default_filename(CharPoly(1, -3), -2, 9) == "tile_p1_q-3_k-2_d9.ppm"


class TestPoints:
    @pytest.mark.parametrize("depth", [1, 2, 4])
    def test_point_count(self, depth):
        cfg = RenderConfig(CharPoly(1, 3), standard_digits(1), depth=depth)
        assert len(attractor_points(cfg)) == 3**depth

    @pytest.mark.parametrize("p,q,k", [(0, 3, 1), (1, 3, 2), (2, 3, -1), (1, -3, 1)])
    def test_matches_rational_oracle(self, p, q, k):
        cfg = RenderConfig(CharPoly(p, q), standard_digits(k), depth=3)
        nums, den = _scaled_points(cfg, budget=10**6)
        fast = sorted((Fraction(a, den), Fraction(b, den)) for a, b in nums)
        assert fast == sorted(oracle_points(cfg))

    def test_budget_enforced(self):
        cfg = RenderConfig(CharPoly(0, 3), standard_digits(1), depth=5)
        with pytest.raises(ValueError):
            attractor_points(cfg, budget=3**5 - 1)
        assert len(attractor_points(cfg, budget=3**5)) == 3**5

    @pytest.mark.parametrize("p,q,k", [(0, 3, 1), (3, 3, 2), (1, -3, -1)])
    def test_envelope_contains_all_points(self, p, q, k):
        cfg = RenderConfig(CharPoly(p, q), standard_digits(k), depth=6)
        x_max, y_max = point_envelope(cfg)
        nums, den = _scaled_points(cfg, budget=10**6)
        for a, b in nums:
            assert abs(Fraction(a, den)) <= x_max
            assert abs(Fraction(b, den)) <= y_max


class TestRounding:
    def test_half_away_from_zero(self):
        assert _round_half_away(1, 2) == 1
        assert _round_half_away(-1, 2) == -1
        assert _round_half_away(3, 2) == 2
        assert _round_half_away(-3, 2) == -2
        assert _round_half_away(7, 3) == 2
        assert _round_half_away(-7, 3) == -2
        assert _round_half_away(0, 5) == 0

    def test_error_at_most_half(self):
        for num in range(-50, 51):
            for den in (1, 2, 3, 7):
                r = _round_half_away(num, den)
                assert abs(Fraction(num, den) - r) <= Fraction(1, 2)


class TestRasterize:
    def test_deterministic(self):
        cfg = RenderConfig(CharPoly(1, 3), standard_digits(2), depth=6, width=64, height=64)
        assert rasterize(cfg).pixels == rasterize(cfg).pixels

    def test_coincident_points_share_a_pixel(self):
        # a single repeated digit collapses every word to one point
        cfg = RenderConfig(CharPoly(1, 3), [(0, 0)], depth=4, width=16, height=16)
        grid = rasterize(cfg)
        assert sum(grid.pixels) == 1

    def test_degenerate_bbox_centered(self):
        cfg = RenderConfig(CharPoly(1, 3), [(0, 0)], depth=2, width=16, height=16)
        grid = rasterize(cfg)
        col = _round_half_away(15, 2)
        row = 15 - _round_half_away(15, 2)
        assert grid.at(col, row) == 1

    def test_all_pixels_inside_grid(self):
        cfg = RenderConfig(CharPoly(3, 3), standard_digits(-2), depth=6, width=48, height=32)
        grid = rasterize(cfg)
        assert len(grid.pixels) == 48 * 32
        assert sum(grid.pixels) > 0


class TestWriteImage:
    def test_ppm_bytes(self, tmp_path):
        grid = ImageGrid(2, 2, bytearray([1, 0, 0, 1]))
        path = tmp_path / "out.ppm"
        write_image(grid, path)
        data = path.read_bytes()
        assert data.startswith(b"P6\n2 2\n255\n")
        body = data[len(b"P6\n2 2\n255\n"):]
        assert len(body) == 12
        assert body == b"\x00\x00\x00\xff\xff\xff\xff\xff\xff\x00\x00\x00"

    def test_roundtrip_size(self, tmp_path):
        cfg = RenderConfig(CharPoly(0, 3), standard_digits(1), depth=5, width=32, height=24)
        path = tmp_path / "tile.ppm"
        write_image(rasterize(cfg), path)
        assert path.stat().st_size == len(b"P6\n32 24\n255\n") + 32 * 24 * 3


class TestComponents:
    def test_empty_grid(self):
        assert count_components(ImageGrid(4, 4, bytearray(16))) == 0

    def test_diagonal_pixels_connectivity(self):
        pixels = bytearray(16)
        pixels[0] = 1  # (0, 0)
        pixels[5] = 1  # (1, 1)
        grid = ImageGrid(4, 4, pixels)
        assert count_components(grid, connectivity=8) == 1
        assert count_components(grid, connectivity=4) == 2

    def test_rejects_bad_connectivity(self):
        with pytest.raises(ValueError):
            count_components(ImageGrid(4, 4, bytearray(16)), connectivity=6)

    def test_unit_scale_connected_raster(self):
        cfg = RenderConfig(CharPoly(0, 3), standard_digits(1), depth=8, width=64, height=64)
        assert count_components(rasterize(cfg)) == 1

    def test_scale_two_fragments(self):
        cfg = RenderConfig(CharPoly(0, 3), standard_digits(2), depth=8, width=64, height=64)
        assert count_components(rasterize(cfg)) >= 2

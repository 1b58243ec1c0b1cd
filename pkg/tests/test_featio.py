"""Tests for the on-disk formats."""

import numpy as np
import pytest

from cepfront import FileFormatError, PipelineConfig, config_fingerprint, extract, synth_tone
from cepfront.featio import (
    FEATURE_CODES,
    parse_config_file,
    parse_score_file,
    read_feature_file,
    render_grayscale,
    write_feature_csv,
    write_feature_file,
    write_pgm,
)


@pytest.fixture
def features():
    return extract(synth_tone(800.0, 0.3), "spncc")


class TestFeatureFile:
    def test_roundtrip_bit_exact(self, tmp_path, features):
        path = tmp_path / "a.feat"
        write_feature_file(path, features)
        loaded = read_feature_file(path)
        np.testing.assert_array_equal(
            loaded.values, np.asarray(features.values, dtype="<f4")
        )
        assert loaded.feature_type == "spncc"
        assert loaded.fingerprint == features.fingerprint
        # second write of the parsed matrix reproduces the same bytes
        path2 = tmp_path / "b.feat"
        write_feature_file(path2, loaded)
        assert path.read_bytes() == path2.read_bytes()

    def test_header_layout(self, tmp_path, features):
        path = tmp_path / "a.feat"
        write_feature_file(path, features)
        blob = path.read_bytes()
        assert blob[:4] == b"FEAT"
        assert blob[4] == 1
        assert blob[5] == FEATURE_CODES["spncc"]
        assert len(blob) == 22 + 4 * features.num_frames * features.num_coeffs

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.feat"
        path.write_bytes(b"NOPE" + bytes(18))
        with pytest.raises(FileFormatError):
            read_feature_file(path)

    def test_truncated_payload(self, tmp_path, features):
        path = tmp_path / "trunc.feat"
        write_feature_file(path, features)
        path.write_bytes(path.read_bytes()[:-5])
        with pytest.raises(FileFormatError):
            read_feature_file(path)

    def test_csv_matches_values(self, tmp_path, features):
        path = tmp_path / "a.csv"
        write_feature_csv(path, features)
        loaded = np.loadtxt(path, delimiter=",")
        np.testing.assert_allclose(loaded, features.values, rtol=1e-15)


class TestRenderGrayscale:
    def test_orientation_low_channel_at_bottom(self):
        values = np.array([[0.0, 1.0], [0.0, 1.0], [0.0, 1.0]])  # 3 frames, 2 channels
        image = render_grayscale(values)
        assert image.shape == (2, 3)
        assert np.all(image[-1] == 0)  # channel 0 renders on the bottom row
        assert np.all(image[0] == 255)

    def test_constant_matrix_renders_black(self):
        image = render_grayscale(np.full((4, 3), 7.0))
        assert image.dtype == np.uint8
        assert np.all(image == 0)

    def test_full_range_used(self):
        rng = np.random.default_rng(0)
        image = render_grayscale(rng.normal(size=(50, 20)))
        assert image.min() == 0
        assert image.max() == 255


class TestPgm:
    def test_header_and_payload(self, tmp_path):
        image = np.arange(12, dtype=np.uint8).reshape(3, 4)
        path = tmp_path / "img.pgm"
        write_pgm(path, image)
        blob = path.read_bytes()
        assert blob.startswith(b"P5\n4 3\n255\n")
        assert blob[len(b"P5\n4 3\n255\n"):] == image.tobytes()


class TestScoreFile:
    def test_parse_with_comments(self, tmp_path):
        path = tmp_path / "scores.txt"
        path.write_text(
            "# header comment\n"
            "target 1.25\n"
            "\n"
            "nontarget -0.5  # inline comment\n"
        )
        labels, scores = parse_score_file(path)
        np.testing.assert_array_equal(labels, [True, False])
        np.testing.assert_array_equal(scores, [1.25, -0.5])

    def test_bad_label_reports_line(self, tmp_path):
        path = tmp_path / "scores.txt"
        path.write_text("target 1.0\nimpostor 0.3\n")
        with pytest.raises(FileFormatError, match=":2:"):
            parse_score_file(path)

    def test_bad_score_reports_line(self, tmp_path):
        path = tmp_path / "scores.txt"
        path.write_text("target one\n")
        with pytest.raises(FileFormatError, match=":1:"):
            parse_score_file(path)


class TestConfigFile:
    def test_defaults_from_empty_file(self, tmp_path):
        path = tmp_path / "empty.cfg"
        path.write_text("# nothing here\n")
        assert parse_config_file(path) == PipelineConfig()

    def test_overrides_reach_nested_configs(self, tmp_path):
        path = tmp_path / "tuned.cfg"
        path.write_text(
            "pcen.alpha = 0.5\n"
            "frontend.num_filters = 40\n"
            "num_ceps = 20\n"
            "apply_dct = false\n"
            "mean_power.mu_init = first_frame_mean\n"
            "medium_time.bypass = true\n"
        )
        cfg = parse_config_file(path)
        assert cfg.pcen.alpha == 0.5
        assert cfg.frontend.num_filters == 40
        assert cfg.num_ceps == 20
        assert cfg.apply_dct is False
        assert cfg.mean_power.mu_init is None
        assert cfg.medium_time.bypass is True
        assert config_fingerprint(cfg) != config_fingerprint(PipelineConfig())

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "typo.cfg"
        path.write_text("pcen.alpa = 0.5\n")
        with pytest.raises(FileFormatError, match="unknown key"):
            parse_config_file(path)

    def test_bad_value_reports_line(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("num_ceps = thirty\n")
        with pytest.raises(FileFormatError, match=":1:"):
            parse_config_file(path)

    def test_fixed_mu_init(self, tmp_path):
        path = tmp_path / "mu.cfg"
        path.write_text("mean_power.mu_init = 2.5\n")
        assert parse_config_file(path).mean_power.mu_init == 2.5

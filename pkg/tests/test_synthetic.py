import numpy as np
import pytest

from emofuse.synthetic import SyntheticConfig, gen_synthetic
from oracles import linear_probe_accuracy


def test_counts():
    data = gen_synthetic(SyntheticConfig(seed=1, n_per_class_per_session=5, dim=8))
    manifest = data.manifest
    assert len(manifest) == 100
    sessions = manifest.sessions()
    labels = manifest.labels()
    for s in range(1, 6):
        assert (sessions == s).sum() == 20
    for c in range(4):
        assert (labels == c).sum() == 25
    for s in (data.text, data.speech, data.video):
        assert len(s) == 100
        assert s.dim == 8
        assert s.ids == manifest.ids


def test_bitwise_reproducibility():
    cfg = SyntheticConfig(seed=99, n_per_class_per_session=3, dim=10)
    a = gen_synthetic(cfg)
    b = gen_synthetic(cfg)
    assert a.manifest.rows == b.manifest.rows
    for m in ("text", "speech", "video"):
        assert getattr(a, m).vectors.tobytes() == getattr(b, m).vectors.tobytes()


def test_seed_changes_output():
    a = gen_synthetic(SyntheticConfig(seed=1, n_per_class_per_session=2, dim=6))
    b = gen_synthetic(SyntheticConfig(seed=2, n_per_class_per_session=2, dim=6))
    assert a.text.vectors.tobytes() != b.text.vectors.tobytes()


def test_source_records_seed_and_algorithm():
    cfg = SyntheticConfig(seed=123, n_per_class_per_session=2, dim=6)
    data = gen_synthetic(cfg)
    assert "pcg64" in data.manifest.source
    assert "seed=123" in data.manifest.source


def test_strong_separation_supports_linear_probe():
    # separation = 10 x noise; a linear probe must hit >= 0.99 per modality.
    cfg = SyntheticConfig(
        seed=2024,
        n_per_class_per_session=5,
        dim=12,
        class_separation=10.0,
        modality_noise=(1.0, 1.0, 1.0),
        modality_informative_fraction=(0.5, 0.5, 0.5),
    )
    data = gen_synthetic(cfg)
    y = data.manifest.labels()
    for m in ("text", "speech", "video"):
        X = getattr(data, m).vectors.astype(np.float64)
        assert linear_probe_accuracy(X, y) >= 0.99


def test_zero_informative_fraction_is_pure_noise():
    cfg = SyntheticConfig(
        seed=5,
        n_per_class_per_session=10,
        dim=8,
        class_separation=10.0,
        modality_informative_fraction=(0.5, 0.5, 0.0),
    )
    data = gen_synthetic(cfg)
    y = data.manifest.labels()
    acc = linear_probe_accuracy(data.video.vectors.astype(np.float64), y)
    assert acc < 0.6  # near chance on 200 rows; 0.25 expected, margin for overfit


def test_config_validation():
    with pytest.raises(ValueError):
        SyntheticConfig(n_per_class_per_session=0)
    with pytest.raises(ValueError):
        SyntheticConfig(dim=0)
    with pytest.raises(ValueError):
        SyntheticConfig(class_separation=0.0)
    with pytest.raises(ValueError):
        SyntheticConfig(modality_noise=(1.0, -1.0, 1.0))
    with pytest.raises(ValueError):
        SyntheticConfig(modality_informative_fraction=(0.5, 0.5, 1.5))

import pytest

from emofuse import SyntheticConfig, TrainConfig, align, gen_synthetic
from emofuse.classifiers import GbtConfig, MlpConfig, SvmConfig

# Strongly separated desk-scale dataset: 100 utterances, 12 dims/modality.
SMALL_SYNTH = SyntheticConfig(
    seed=20240811,
    n_per_class_per_session=5,
    dim=12,
    class_separation=8.0,
    modality_noise=(1.0, 1.0, 1.0),
    modality_informative_fraction=(0.5, 0.5, 0.5),
)

# Desk-scale training config: enough capacity for the 12-dim fixtures while
# keeping the whole suite fast.
FAST_TRAIN = TrainConfig(
    seed=3,
    svm=SvmConfig(c_penalty=1.0, tolerance=1e-3, max_iterations=2000),
    mlp=MlpConfig(hidden_width=32, learning_rate=0.05, epochs=40, batch_size=32),
    gbt=GbtConfig(rounds=20, max_depth=3, shrinkage=0.3),
)


@pytest.fixture(scope="session")
def small_data():
    return gen_synthetic(SMALL_SYNTH)


@pytest.fixture(scope="session")
def small_dataset(small_data):
    return align(small_data.manifest, small_data.text, small_data.speech, small_data.video)

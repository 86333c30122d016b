"""emofuse: early/late multimodal fusion and classification engine.

Combines text, speech and video representation vectors by concatenation,
summation or elementwise product, classifies the result with a linear SVM,
a 2-layer neural network or gradient-boosted trees, and evaluates the full
strategy grid under session-holdout 5-fold cross-validation.
"""

from .align import AlignedDataset, AlignmentError, ExtraRecordsError, MissingModalityError, align
from .classifiers import (
    GbtConfig,
    GbtModel,
    MlpConfig,
    MlpModel,
    SvmConfig,
    SvmModel,
    TrainConfig,
    load_model,
    mlp_grad_check,
    predict,
    predict_proba,
    save_model,
    train,
    train_gbt,
    train_mlp,
    train_svm,
)
from .dataset import (
    CLASS_WORDS,
    EmotionClass,
    Manifest,
    ManifestStats,
    UtteranceMeta,
    label_map,
    manifest_stats,
    read_manifest,
    write_manifest,
)
from .embio import (
    EmbeddingFormatError,
    EmbeddingRecord,
    EmbeddingSet,
    read_embeddings,
    write_embeddings,
)
from .evaluation import (
    ClassifierCvResult,
    CvReport,
    FoldSpec,
    MetricsReport,
    confusion_matrix,
    metrics,
    run_cv,
    session_folds,
    unimodal_probe_cv,
)
from .fusion import (
    ALL_STRATEGIES,
    FusedVector,
    FusionLevel,
    FusionOperator,
    FusionStrategy,
    early_fuse,
    late_fuse,
)
from .pca import PcaProjection, pca_project
from .synthetic import SyntheticConfig, gen_synthetic

__version__ = "0.1.0"

"""emofuse-extractor: turns an IEMOCAP-style corpus into the fusion
engine's inputs: manifest CSVs, video cut lists, and EMB1 representation
plus probability files from fine-tuned transformer checkpoints."""

from .configs import (
    AudioSettings,
    DEFAULT_CHECKPOINTS,
    FinetuneConfig,
    VideoSettings,
    config_from_json,
    config_to_json,
    default_config,
    load_config,
    save_config,
)
from .emb1 import write_emb1
from .export import ExportResult, export_embeddings
from .finetune import (
    Example,
    FinetuneOutcome,
    MODEL_SELECTION_SPLIT,
    Split,
    finetune,
    fold_split,
    load_checkpoint,
    load_metadata,
)
from .iemocap import (
    CutListEntry,
    ExtractionResult,
    ParseError,
    Utterance,
    build_manifest,
    load_frames,
    load_waveform,
    write_cut_list_csv,
    write_manifest_csv,
)
from .labels import CLASS_WORDS, IEMOCAP_LABEL_TABLE, map_label
from .preprocess import SpeechPreprocessor, TextPreprocessor, VideoPreprocessor

__version__ = "0.1.0"

import shutil
import wave
import zlib
from pathlib import Path

import numpy as np
import pytest
import torch

from emofuse_extractor import build_manifest

FIXTURE_ROOT = Path(__file__).resolve().parent.parent / "fixtures" / "iemocap_mini"


class ToyTokenizer:
    """Deterministic whitespace tokenizer with a CRC-hashed vocabulary;
    stands in for a pretrained tokenizer in offline tests."""

    def __init__(self, vocab_size=64):
        self.vocab_size = vocab_size

    def _encode(self, text, max_length):
        ids = [1]  # summary token
        for word in text.lower().split():
            ids.append(2 + zlib.crc32(word.encode()) % (self.vocab_size - 2))
            if len(ids) >= max_length:
                break
        return ids

    def __call__(self, texts, padding=True, truncation=True, max_length=32,
                 return_tensors="pt"):
        encoded = [self._encode(t, max_length) for t in texts]
        longest = max(len(e) for e in encoded)
        input_ids = torch.zeros((len(encoded), longest), dtype=torch.long)
        attention_mask = torch.zeros((len(encoded), longest), dtype=torch.long)
        for i, ids in enumerate(encoded):
            input_ids[i, : len(ids)] = torch.tensor(ids)
            attention_mask[i, : len(ids)] = 1
        return {"input_ids": input_ids, "attention_mask": attention_mask}


def write_wav(path, samples, rate=16_000):
    pcm = (np.clip(samples, -1.0, 1.0) * 32767).astype("<i2")
    with wave.open(str(path), "wb") as fh:
        fh.setnchannels(1)
        fh.setsampwidth(2)
        fh.setframerate(rate)
        fh.writeframes(pcm.tobytes())


@pytest.fixture(scope="session")
def corpus_root():
    return FIXTURE_ROOT


@pytest.fixture(scope="session")
def corpus_with_media(tmp_path_factory):
    """Fixture corpus plus synthesized per-utterance audio and frame files."""
    root = tmp_path_factory.mktemp("iemocap") / "corpus"
    shutil.copytree(FIXTURE_ROOT, root)
    result = build_manifest(root)
    rng = np.random.default_rng(0)
    for utt in result.utterances:
        wav_dir = root / f"Session{utt.session}" / "sentences" / "wav" / utt.dialog_id
        frame_dir = root / f"Session{utt.session}" / "sentences" / "frames" / utt.dialog_id
        wav_dir.mkdir(parents=True, exist_ok=True)
        frame_dir.mkdir(parents=True, exist_ok=True)
        duration = min(utt.end - utt.start, 0.4)
        t = np.arange(int(16_000 * duration)) / 16_000
        tone = 0.4 * np.sin(2 * np.pi * (120 + 40 * utt.label) * t)
        write_wav(wav_dir / f"{utt.utterance_id}.wav", tone + rng.normal(0, 0.02, t.size))
        frames = rng.integers(0, 256, size=(8, 16, 16, 3), dtype=np.uint8)
        np.save(frame_dir / f"{utt.utterance_id}.npy", frames)
    return root


@pytest.fixture()
def tiny_text_model():
    from transformers import BertConfig, BertForSequenceClassification

    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=64, hidden_size=32, num_hidden_layers=1, num_attention_heads=2,
        intermediate_size=64, max_position_embeddings=64, num_labels=4,
    )
    return BertForSequenceClassification(config)


@pytest.fixture()
def tiny_text_model_768():
    from transformers import BertConfig, BertForSequenceClassification

    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=64, hidden_size=768, num_hidden_layers=1, num_attention_heads=4,
        intermediate_size=256, max_position_embeddings=64, num_labels=4,
    )
    return BertForSequenceClassification(config)


@pytest.fixture()
def tiny_speech_model():
    from transformers import Wav2Vec2Config, Wav2Vec2ForSequenceClassification

    torch.manual_seed(0)
    config = Wav2Vec2Config(
        hidden_size=32, num_hidden_layers=1, num_attention_heads=2,
        intermediate_size=64, conv_dim=(16, 16), conv_stride=(5, 2),
        conv_kernel=(10, 3), num_feat_extract_layers=2, num_labels=4,
    )
    return Wav2Vec2ForSequenceClassification(config)


@pytest.fixture()
def tiny_video_model():
    from transformers import VideoMAEConfig, VideoMAEForVideoClassification

    torch.manual_seed(0)
    config = VideoMAEConfig(
        image_size=16, patch_size=8, num_channels=3, num_frames=4, tubelet_size=2,
        hidden_size=32, num_hidden_layers=1, num_attention_heads=2,
        intermediate_size=64, num_labels=4,
    )
    return VideoMAEForVideoClassification(config)

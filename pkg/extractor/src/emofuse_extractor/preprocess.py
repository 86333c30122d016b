"""Per-modality batch preprocessors turning raw payloads into model inputs.

Each preprocessor is a callable (payloads, train) -> dict of tensors whose
keys match the model's forward signature (input_ids / input_values /
pixel_values).  Augmentation only happens with train=True, so inference
passes are deterministic.
"""

from __future__ import annotations

import numpy as np
import torch

from .configs import AudioSettings, VideoSettings

__all__ = ["TextPreprocessor", "SpeechPreprocessor", "VideoPreprocessor"]

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)


class TextPreprocessor:
    """Wraps any HF-style tokenizer callable."""

    def __init__(self, tokenizer, max_length: int = 128):
        self.tokenizer = tokenizer
        self.max_length = max_length

    def __call__(self, texts, train: bool = False) -> dict:
        encoding = self.tokenizer(
            list(texts),
            padding=True,
            truncation=True,
            max_length=self.max_length,
            return_tensors="pt",
        )
        return dict(encoding)


class SpeechPreprocessor:
    """16 kHz waveforms: cap at max_seconds, per-utterance zero-mean unit
    variance, zero-pad the batch with an attention mask."""

    def __init__(self, audio: AudioSettings | None = None):
        self.audio = audio or AudioSettings()

    def __call__(self, waveforms, train: bool = False) -> dict:
        max_samples = int(self.audio.sample_rate * self.audio.max_seconds)
        prepared = []
        for wav in waveforms:
            wav = np.asarray(wav, dtype=np.float32)
            if wav.ndim != 1 or wav.size == 0:
                raise ValueError("waveform must be a non-empty 1-D array")
            wav = wav[:max_samples]
            wav = (wav - wav.mean()) / np.sqrt(wav.var() + 1e-7)
            prepared.append(wav)
        longest = max(w.size for w in prepared)
        batch = np.zeros((len(prepared), longest), dtype=np.float32)
        mask = np.zeros((len(prepared), longest), dtype=np.int64)
        for i, wav in enumerate(prepared):
            batch[i, : wav.size] = wav
            mask[i, : wav.size] = 1
        return {
            "input_values": torch.from_numpy(batch),
            "attention_mask": torch.from_numpy(mask),
        }


class VideoPreprocessor:
    """Clip frames (T, H, W, 3) uint8 at the configured frame rate: sample
    num_frames evenly, mirror horizontally with the configured probability
    during training, scale to [0, 1] and normalize per channel."""

    def __init__(
        self,
        num_frames: int,
        video: VideoSettings | None = None,
        mean=IMAGENET_MEAN,
        std=IMAGENET_STD,
        seed: int = 0,
    ):
        self.num_frames = num_frames
        self.video = video or VideoSettings()
        self.mean = np.asarray(mean, dtype=np.float32)
        self.std = np.asarray(std, dtype=np.float32)
        self._rng = np.random.default_rng(seed)

    def __call__(self, clips, train: bool = False) -> dict:
        batch = []
        for clip in clips:
            clip = np.asarray(clip)
            if clip.ndim != 4 or clip.shape[-1] != 3:
                raise ValueError(f"expected (T, H, W, 3) frames, got {clip.shape}")
            if clip.shape[0] < 1:
                raise ValueError("clip has no frames")
            indices = np.linspace(0, clip.shape[0] - 1, self.num_frames).round().astype(int)
            frames = clip[indices].astype(np.float32)
            if train and self._rng.random() < self.video.mirror_probability:
                frames = frames[:, :, ::-1, :]
            if self.video.normalize_pixels:
                frames = frames / 255.0
                frames = (frames - self.mean) / self.std
            batch.append(np.ascontiguousarray(frames.transpose(0, 3, 1, 2)))
        pixel_values = torch.from_numpy(np.stack(batch))  # (B, T, C, H, W)
        return {"pixel_values": pixel_values}

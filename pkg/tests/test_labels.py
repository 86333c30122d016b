import pytest

from emofuse.dataset import (
    CLASS_WORDS,
    EmotionClass,
    Manifest,
    UtteranceMeta,
    label_map,
)

# The 11-label fixture an imbalanced source corpus would present.
ELEVEN_LABELS = [
    "neutral", "anger", "sadness", "happiness", "excited", "frustration",
    "surprise", "fear", "disgust", "other", "xxx",
]


def test_canonical_codes_are_alphabetical():
    assert [c.value for c in EmotionClass] == [0, 1, 2, 3]
    assert [c.word for c in EmotionClass] == ["angry", "happy", "neutral", "sad"]


def test_excited_merges_into_happy():
    assert label_map("excited") is EmotionClass.HAPPY


def test_identity_words():
    assert label_map("neutral") is EmotionClass.NEUTRAL
    assert label_map("angry") is EmotionClass.ANGRY
    assert label_map("anger") is EmotionClass.ANGRY
    assert label_map("sad") is EmotionClass.SAD
    assert label_map("sadness") is EmotionClass.SAD
    assert label_map("happiness") is EmotionClass.HAPPY


def test_unknown_labels_excluded():
    assert label_map("frustration") is None
    assert label_map("") is None
    assert label_map("xxx") is None


def test_case_insensitive_and_stripped():
    assert label_map("  Excited ") is EmotionClass.HAPPY
    assert label_map("NEUTRAL") is EmotionClass.NEUTRAL


def test_eleven_label_fixture_keeps_exactly_four_classes():
    rows = []
    for i, raw in enumerate(ELEVEN_LABELS):
        mapped = label_map(raw)
        if mapped is None:
            continue
        rows.append(UtteranceMeta(f"u{i}", 1 + i % 5, raw, mapped))
    manifest = Manifest(rows=tuple(rows))
    kept_classes = {r.emotion for r in manifest}
    assert kept_classes == set(EmotionClass)
    assert len(manifest) == 5  # 4 class words + excited


def test_total_and_idempotent_on_image():
    for word in CLASS_WORDS:
        mapped = label_map(word)
        assert mapped is not None
        assert label_map(mapped.word) is mapped


def test_custom_table_override():
    table = {"exc": EmotionClass.HAPPY, "neu": EmotionClass.NEUTRAL}
    assert label_map("exc", table) is EmotionClass.HAPPY
    assert label_map("excited", table) is None


def test_meta_validation():
    with pytest.raises(ValueError):
        UtteranceMeta("", 1, "neutral", EmotionClass.NEUTRAL)
    with pytest.raises(ValueError):
        UtteranceMeta("u1", 6, "neutral", EmotionClass.NEUTRAL)
    with pytest.raises(ValueError):
        Manifest(
            rows=(
                UtteranceMeta("u1", 1, "neutral", EmotionClass.NEUTRAL),
                UtteranceMeta("u1", 2, "sad", EmotionClass.SAD),
            )
        )

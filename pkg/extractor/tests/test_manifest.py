import shutil

import pytest

from emofuse.dataset import EmotionClass, manifest_stats, read_manifest
from emofuse_extractor import (
    ParseError,
    build_manifest,
    map_label,
    write_cut_list_csv,
    write_manifest_csv,
)


def test_session1_fixture_keeps_four_class_subset(corpus_root):
    result = build_manifest(corpus_root, sessions=(1,))
    # 5 turns, one labeled "fru" which is outside the four classes.
    assert len(result.utterances) == 4
    assert result.skipped_turns == 1
    raw_labels = {u.raw_label for u in result.utterances}
    assert raw_labels == {"neu", "exc", "ang", "sad"}


def test_excited_maps_to_happy(corpus_root):
    result = build_manifest(corpus_root, sessions=(1,))
    excited = [u for u in result.utterances if u.raw_label == "exc"]
    assert len(excited) == 1
    assert excited[0].label == 1  # happy
    assert map_label("exc") == 1
    assert map_label("excited") == 1


def test_full_fixture_spans_five_sessions(corpus_root):
    result = build_manifest(corpus_root)
    assert len(result.utterances) == 20
    assert {u.session for u in result.utterances} == {1, 2, 3, 4, 5}
    assert result.skipped_turns == 1
    # Every class appears in every session (fixture construction).
    for s in range(1, 6):
        labels = {u.label for u in result.utterances if u.session == s}
        assert labels == {0, 1, 2, 3}


def test_manifest_csv_passes_engine_validation(corpus_root, tmp_path):
    result = build_manifest(corpus_root)
    path = tmp_path / "manifest.csv"
    write_manifest_csv(result.utterances, path)
    manifest = read_manifest(path)  # engine-side reader validates
    assert len(manifest) == 20
    excited_rows = [r for r in manifest if r.raw_label == "exc"]
    assert excited_rows[0].emotion is EmotionClass.HAPPY
    stats = manifest_stats(manifest)
    assert stats.total == 20


def test_cut_list_timing_and_paths(corpus_root, tmp_path):
    result = build_manifest(corpus_root)
    assert len(result.cut_list) == len(result.utterances)
    by_id = {u.utterance_id: u for u in result.utterances}
    for entry in result.cut_list:
        assert 0.0 <= entry.start < entry.end
        assert entry.output_path.endswith(f"{entry.utterance_id}.mp4")
        # Timing comes from the transcript turn.
        utt = by_id[entry.utterance_id]
        assert entry.start == utt.start and entry.end == utt.end
    path = tmp_path / "cuts.csv"
    write_cut_list_csv(result.cut_list, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "dialog_id,utterance_id,start_s,end_s,output_path"
    assert len(lines) == 21


def test_malformed_transcript_reports_file_and_line(corpus_root, tmp_path):
    broken = tmp_path / "broken"
    shutil.copytree(corpus_root, broken)
    target = (
        broken / "Session1" / "dialog" / "transcriptions" / "Ses01F_impro01.txt"
    )
    content = target.read_text().splitlines()
    content.insert(2, "this line has no timing bracket")
    target.write_text("\n".join(content) + "\n")
    with pytest.raises(ParseError) as excinfo:
        build_manifest(broken, sessions=(1,))
    message = str(excinfo.value)
    assert "Ses01F_impro01.txt" in message
    assert ":3" in message


def test_labeled_turn_missing_from_transcript_errors(corpus_root, tmp_path):
    broken = tmp_path / "broken2"
    shutil.copytree(corpus_root, broken)
    target = (
        broken / "Session1" / "dialog" / "transcriptions" / "Ses01F_impro01.txt"
    )
    lines = target.read_text().splitlines()
    target.write_text("\n".join(lines[1:]) + "\n")  # drop the first turn
    with pytest.raises(ParseError):
        build_manifest(broken, sessions=(1,))


def test_missing_sessions_rejected(tmp_path):
    with pytest.raises(ParseError):
        build_manifest(tmp_path)

"""Batch entry points: python -m emofuse_extractor <command>.

`manifest` walks an IEMOCAP-style corpus and writes the engine's manifest
CSV plus the video cut list; `config` writes a modality's fine-tuning
configuration (the published defaults) as a declarative JSON file.
Fine-tuning and export run through the Python API (one fine-tune per
process; they need checkpoint access).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .configs import default_config, save_config
from .iemocap import ParseError, build_manifest, write_cut_list_csv, write_manifest_csv


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="emofuse-extractor")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("manifest", help="build manifest CSV + cut list from a corpus")
    p.add_argument("--root", required=True, help="dataset root (Session1..Session5)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--sessions", help="comma-separated subset, e.g. 1,2,3")
    p.add_argument("--cut-root", default="cuts", help="prefix for cut output paths")

    p = sub.add_parser("config", help="write a modality's default fine-tune config")
    p.add_argument("--modality", required=True, choices=("text", "speech", "video"))
    p.add_argument("--checkpoint", help="override the default checkpoint name")
    p.add_argument("--out", required=True, help="output JSON file")

    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "manifest":
            sessions = None
            if args.sessions:
                sessions = tuple(int(s) for s in args.sessions.split(","))
            result = build_manifest(args.root, sessions=sessions, cut_root=args.cut_root)
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            write_manifest_csv(result.utterances, out / "manifest.csv")
            write_cut_list_csv(result.cut_list, out / "cuts.csv")
            print(
                f"wrote {len(result.utterances)} manifest rows and "
                f"{len(result.cut_list)} cut entries to {out} "
                f"({result.skipped_turns} turns skipped)"
            )
        else:
            cfg = default_config(args.modality, checkpoint=args.checkpoint)
            save_config(cfg, args.out)
            print(f"wrote {args.modality} fine-tune config to {args.out}")
        return 0
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

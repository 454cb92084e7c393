"""Command-line entry point: probe --model <id-or-path> --mode bos|empty --out <file>."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ProbeConfig, ProbeError, probe_model

_MODE_FLAGS = {"bos": "bos_only", "empty": "empty"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probe",
        description="Dump a model's no-prompt first-token probability distribution.",
    )
    parser.add_argument("--model", required=True, help="model id or local path")
    parser.add_argument("--mode", choices=sorted(_MODE_FLAGS), default="bos",
                        help="context: the BOS token alone, or a zero-length input")
    parser.add_argument("--top-k", type=int, default=None,
                        help="keep only the k most probable entries (sparse dump)")
    parser.add_argument("--temperature", type=float, default=1.0)
    parser.add_argument("--out", required=True, type=Path)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = ProbeConfig(
            model=args.model,
            context_mode=_MODE_FLAGS[args.mode],
            top_k=args.top_k,
            temperature=args.temperature,
            out=args.out,
        )
        summary = probe_model(config)
    except (ProbeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {summary['out']}: {summary['entries']} entries over "
        f"{summary['vocab_size']} ids, dense={summary['dense']}, "
        f"mass={summary['mass']:.9f}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

    magnv <scenario> (--config PATH | --preset NAME) [--out DIR] [--workers N]

Exit codes: 0 success, 2 configuration or input problems, 3 a physics
error (no resonance in bracket, field past the band edge, and so on).
Errors are emitted as a single JSON record on stderr so callers can
parse them.
"""

import argparse
import json
import sys
from importlib import resources

from . import pipeline
from ._version import __version__
from .config import SCENARIOS, RunConfig
from .errors import ConfigError, PhysicsError

PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")


def _emit_error(kind, message, field=None):
    record = {"error": {"type": kind, "message": message}}
    if field is not None:
        record["error"]["field"] = field
    print(json.dumps(record), file=sys.stderr)


def load_preset(name):
    """Parsed JSON document of a packaged preset."""
    if name not in PRESETS:
        raise ConfigError(
            "preset", f"unknown preset '{name}'; available: "
            + ", ".join(PRESETS))
    text = resources.files("magnv").joinpath(
        "presets", f"{name}.json").read_text()
    return json.loads(text)


def _load_document(args):
    if args.preset:
        return load_preset(args.preset)
    try:
        with open(args.config) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read '{args.config}': {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in '{args.config}': {exc}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magnv",
        description="Magnon-mediated two-qubit dynamics: dispersion, "
                    "couplings, resonance, evolution, steady states, sweeps.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("scenario", choices=SCENARIOS,
                        help="what to compute; overrides the config's own "
                             "scenario field")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="path to a JSON run description")
    source.add_argument("--preset", help="packaged example config "
                        f"({', '.join(PRESETS)})")
    parser.add_argument("--out", help="output directory (default from the "
                        "config, falling back to ./out)")
    parser.add_argument("--workers", type=int, default=None,
                        help="sweep processes (default: one per core)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        doc = _load_document(args)
        if not isinstance(doc, dict):
            raise ConfigError("config", "top level must be a JSON object")
        doc["scenario"] = args.scenario
        cfg = RunConfig.from_dict(doc)
        pipeline.run(cfg, out_dir=args.out, workers=args.workers)
    except ConfigError as exc:
        _emit_error("config", exc.message, field=exc.field)
        return 2
    except PhysicsError as exc:
        _emit_error("physics", str(exc))
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

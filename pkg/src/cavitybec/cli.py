"""Command-line front end for configuration-driven sweeps.

Usage::

    cavitybec run CONFIG [--out PREFIX] [--threshold] [--quiet]

Exit codes: 0 success, 2 a point failed to converge (or no threshold could be
bracketed with ``--threshold``), 3 the sweep entered a dynamically unstable
region, 4 malformed configuration.
"""

import argparse
from pathlib import Path
import sys

from .errors import BracketError, CavityBECError, ConfigError, UnstableCavityError
from .sweep import (
    EXIT_BAD_CONFIG,
    EXIT_NO_CONVERGE,
    EXIT_OK,
    EXIT_UNSTABLE,
    parse_config,
    run_sweep,
    threshold_only,
    write_csv,
)


def _parser():
    parser = argparse.ArgumentParser(
        prog="cavitybec",
        description="Mean-field, Bogoliubov spectrum and entanglement sweeps for a "
                    "transversally pumped BEC in a cavity.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the sweep described by a config file")
    run.add_argument("config", type=Path, help="TOML run configuration")
    run.add_argument("--out", metavar="PREFIX",
                     help="CSV output prefix (overrides 'output' in the config)")
    run.add_argument("--threshold", action="store_true",
                     help="only bisect for the self-organization threshold")
    run.add_argument("--quiet", action="store_true", help="suppress the summary")
    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    say = (lambda *a: None) if args.quiet else (lambda *a: print(*a, file=sys.stderr))

    try:
        config = parse_config(args.config.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"cavitybec: cannot read config: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except ConfigError as exc:
        print(f"cavitybec: {args.config}: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    if args.threshold:
        try:
            y_c = threshold_only(config)
        except ConfigError as exc:
            print(f"cavitybec: {exc}", file=sys.stderr)
            return EXIT_BAD_CONFIG
        except BracketError as exc:
            print(f"cavitybec: {exc}", file=sys.stderr)
            return EXIT_NO_CONVERGE
        except UnstableCavityError as exc:
            print(f"cavitybec: threshold search failed: {exc}", file=sys.stderr)
            return EXIT_UNSTABLE
        except CavityBECError as exc:
            print(f"cavitybec: threshold search failed: {exc}", file=sys.stderr)
            return EXIT_NO_CONVERGE
        print(f"{y_c:.17g}")
        return EXIT_OK

    prefix = args.out or config.output or str(args.config.with_suffix(""))
    result = run_sweep(config)
    out_path = Path(prefix + ".csv")
    write_csv(result, out_path)
    say(f"wrote {out_path}")
    say(result.summary())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

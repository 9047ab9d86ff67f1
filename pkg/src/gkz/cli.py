"""Command-line entry point.

    gkz <command> [--input FILE | --preset NAME ARGS...] [--format json|text|dot]
        [--seed N] [--twist-d D] [--group SL2|PGL2]

Exit codes: 0 on success, 2 for domain errors (including schema errors in
the input), 64 for usage errors.
"""

import argparse
import sys

from .errors import GkzError, UnsupportedFormat
from .report import COMMANDS, FORMATS, UsageError, emit, parse_input, parse_problem, run

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gkz", description="Wall crossings and exceptional collections "
                                       "for torus and SL2 quotients.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="problem file (JSON); '-' for stdin")
    src.add_argument("--preset", nargs="+", metavar=("NAME", "ARGS"),
                     help="named example followed by its parameters")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist-d", type=int, default=None, dest="twist_d")
    p.add_argument("--group", choices=("SL2", "PGL2"), default=None)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.preset:
            problem = parse_problem({"preset": {"name": args.preset[0],
                                                "parameters": args.preset[1:]}})
        else:
            problem = parse_input(args.input)
        report = run(problem, args.command, args.seed, args.twist_d, args.group)
        text = emit(report, args.format)
    except (UsageError, UnsupportedFormat) as exc:
        sys.stderr.write(f"gkz: usage error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"gkz: cannot read input: {exc}\n")
        return EXIT_USAGE
    except (GkzError, ValueError) as exc:
        sys.stderr.write(f"gkz: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())

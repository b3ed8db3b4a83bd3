#!/usr/bin/env python3
"""
Command-line front end for the tiling-code examples.

    python -m execution.suspfactor verify --example 1 --samples 1000 --seed 7
    python -m execution.suspfactor witness --example 1 --radius 5
    python -m execution.suspfactor lengths --example 3 --bound 50
    python -m execution.suspfactor render --example 4 --rho 1/7 --s 0 --L 3 --format text
    python -m execution.suspfactor fixtures --example 5

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 non-generic input.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from dotenv import load_dotenv

from execution.exactreal import QLin, starting_precision
from execution.rendering import FORMATS, build_patches, to_pdf, to_svg, to_text
from execution.report_pdf import generate_report_pdf
from execution.symbolic import BoundaryHit, genericity_check
from execution.tiling_examples import EXAMPLE_IDS, ParameterViolation, build_example
from execution.verification import (
    DEFAULT_MAX_RADIUS, DEFAULT_SAMPLES, DEFAULT_SEED, VerificationSuite,
    lengths_report, witness_report,
)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BOUNDARY = 3


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='suspfactor',
        description='Exact checks of factor maps between tiling dynamical systems'
    )
    parser.add_argument('--quiet', action='store_true', help='Suppress status lines on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    def with_example(p):
        p.add_argument('--example', type=int, required=True, choices=EXAMPLE_IDS,
                       help='Example number')
        p.add_argument('--out', default=None, help='Output file (default: stdout)')
        return p

    verify = with_example(sub.add_parser('verify', help='Run the verification suite'))
    verify.add_argument('--samples', type=positive, default=DEFAULT_SAMPLES)
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED)
    verify.add_argument('--max-radius', type=non_negative, default=DEFAULT_MAX_RADIUS,
                        help='Largest window radius probed for locality')
    verify.add_argument('--pdf', default=None, help='Also write the report as PDF')
    verify.add_argument('--timing', action='store_true',
                        help='Record wall-clock duration (breaks byte-identical reports)')

    witness = with_example(sub.add_parser('witness', help='Search a non-locality witness'))
    witness.add_argument('--radius', type=non_negative, required=True)
    witness.add_argument('--probes', type=positive, default=200)
    witness.add_argument('--seed', type=int, default=DEFAULT_SEED)

    lengths = with_example(sub.add_parser('lengths', help='Scan tile-length coincidences'))
    lengths.add_argument('--bound', type=positive, default=50)

    render = with_example(sub.add_parser('render', help='Render a patch and its image'))
    render.add_argument('--rho', type=rational, required=True)
    render.add_argument('--s', type=rational, default=Fraction(0))
    render.add_argument('--L', type=rational, default=Fraction(3))
    render.add_argument('--format', choices=FORMATS, default='text')

    with_example(sub.add_parser('fixtures', help='Print the expected fixtures'))
    return parser


def emit(text: str, out, status) -> None:
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
        status(f"✓ Saved to: {out}")
    else:
        sys.stdout.write(text)


def run_verify(args, bundle, status) -> int:
    status(f"Verifying example {args.example} ({args.samples} samples, seed {args.seed})...")
    started = time.perf_counter()
    suite = VerificationSuite(bundle, args.samples, args.seed, args.max_radius, log=status)
    report = suite.run()
    if args.timing:
        report.duration = time.perf_counter() - started
    emit(report.dumps(), args.out, status)
    if args.pdf:
        generate_report_pdf(report, args.pdf)
        status(f"✓ PDF report: {args.pdf}")
    status(f"{'✓' if report.status == 'pass' else '✗'} Example {args.example}: {report.status}")
    return EXIT_PASS if report.status == 'pass' else EXIT_FAILURE


def run_witness(args, bundle, status) -> int:
    status(f"Searching radius-{args.radius} witness for example {args.example}...")
    report = witness_report(bundle, args.radius, args.probes, args.seed)
    emit(report.dumps(), args.out, status)
    if report.results['witness'] is None:
        status("none")
    return EXIT_PASS if report.status == 'pass' else EXIT_FAILURE


def run_lengths(args, bundle, status) -> int:
    status(f"Scanning tile-length sums up to {args.bound} for example {args.example}...")
    report = lengths_report(bundle, args.bound)
    emit(report.dumps(), args.out, status)
    status(f"✓ {len(report.results['coincidences'])} coincidences ({report.results['family']})")
    return EXIT_PASS if report.status == 'pass' else EXIT_FAILURE


def run_render(args, bundle, status) -> int:
    conflict = genericity_check(QLin.rational(args.rho), bundle.source)
    if conflict is not None:
        raise BoundaryHit(QLin.rational(args.rho), conflict.n, conflict.boundary)
    pair = build_patches(bundle, args.rho, args.s, args.L)
    if args.format == 'pdf':
        if not args.out:
            raise ValueError("--format pdf needs --out")
        to_pdf(pair, args.out)
        status(f"✓ Saved to: {args.out}")
        return EXIT_PASS
    if args.format == 'svg':
        text = to_svg(pair)
    elif args.format == 'json':
        text = json.dumps(pair.to_json(), indent=2, sort_keys=True) + '\n'
    else:
        text = to_text(pair)
    emit(text, args.out, status)
    return EXIT_PASS


def run_fixtures(args, bundle, status) -> int:
    emit(json.dumps(bundle.fixtures.to_json(), indent=2, sort_keys=True) + '\n', args.out, status)
    return EXIT_PASS


COMMANDS = {
    'verify': run_verify,
    'witness': run_witness,
    'lengths': run_lengths,
    'render': run_render,
    'fixtures': run_fixtures,
}


def main(argv=None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    def status(message: str) -> None:
        if not args.quiet:
            print(message, file=sys.stderr, flush=True)

    try:
        starting_precision()
        bundle = build_example(args.example)
        return COMMANDS[args.command](args, bundle, status)
    except BoundaryHit as e:
        status(f"✗ Non-generic input: {e}")
        return EXIT_BOUNDARY
    except ParameterViolation as e:
        status(f"✗ {e}")
        return EXIT_USAGE
    except ValueError as e:
        status(f"✗ {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())

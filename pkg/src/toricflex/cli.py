"""Command-line interface.

Exit codes are a stable contract: 0 success, 1 invalid fan, 2 parse or
usage error, 3 hypothesis failure (degenerate or non-smooth input where
the cover construction needs both), 4 certificate verification failure.
Machine-readable payloads go to stdout (or --output); everything else
goes to stderr.  The path "-" means the standard stream.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cover import (
    build_cover,
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
)
from .errors import (
    BadConeError,
    BadParameterError,
    CertificateFormatError,
    DegenerateError,
    FanFormatError,
    InvalidFanError,
    NotSmoothError,
)
from .fans import (
    Fan,
    FanReport,
    fan_affine_space,
    fan_from_json,
    fan_hirzebruch,
    fan_product,
    fan_projective_space,
    fan_punctured_affine,
    fan_to_json,
    report_to_dict,
    star_subdivision,
    validate_fan,
)

EXIT_OK = 0
EXIT_INVALID_FAN = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3
EXIT_VERIFY_FAILED = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _fail(code: int, message: str) -> int:
    print(f"toricflex: {message}", file=sys.stderr)
    return code


def _load_fan(path: str) -> Fan:
    return fan_from_json(_read_text(path))


def _summary(report: FanReport) -> str:
    return ", ".join(
        (
            "valid" if report.valid else "invalid",
            "smooth" if report.smooth else "not smooth",
            "nondegenerate" if report.nondegenerate else "degenerate",
            "complete" if report.complete else "not complete",
        )
    )


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        fan = _load_fan(args.input)
    except (OSError, FanFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    report = validate_fan(fan)
    print(_summary(report))
    for line in report.diagnostics:
        print(f"toricflex: finding: {line}", file=sys.stderr)
    return EXIT_OK if report.valid else EXIT_INVALID_FAN


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        fan = _load_fan(args.input)
    except (OSError, FanFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    report = validate_fan(fan)
    try:
        _write_text(args.output, json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    return EXIT_OK if report.valid else EXIT_INVALID_FAN


def _cmd_cover(args: argparse.Namespace) -> int:
    try:
        fan = _load_fan(args.input)
    except (OSError, FanFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    try:
        cert = build_cover(fan)
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    except (NotSmoothError, DegenerateError) as exc:
        return _fail(EXIT_HYPOTHESIS, f"hypothesis failure: {exc}")
    if args.verbose:
        kinds = ", ".join(sorted({ch.kind for ch in cert.charts}))
        print(
            f"toricflex: built {len(cert.charts)} charts ({kinds}); "
            f"a_covered = {cert.a_covered}",
            file=sys.stderr,
        )
    try:
        _write_text(args.output, certificate_to_json(cert))
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        fan = _load_fan(args.input)
    except (OSError, FanFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    try:
        cert = certificate_from_json(_read_text(args.cert))
    except (OSError, CertificateFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    report = verify_certificate(fan, cert)
    for line in report.findings:
        print(f"toricflex: finding: {line}", file=sys.stderr)
    if report.passed:
        if args.verbose:
            print("toricflex: certificate verified", file=sys.stderr)
        return EXIT_OK
    return _fail(EXIT_VERIFY_FAILED, f"verification failed with {len(report.findings)} findings")


def _cmd_example(args: argparse.Namespace) -> int:
    params = args.param or []
    try:
        if args.name == "product":
            if len(params) != 2:
                return _fail(EXIT_USAGE, "example product needs two --param values")
            fan = fan_product(
                fan_projective_space(params[0]), fan_projective_space(params[1])
            )
        else:
            if len(params) != 1:
                return _fail(EXIT_USAGE, f"example {args.name} needs one --param value")
            builder = {
                "affine": fan_affine_space,
                "projective": fan_projective_space,
                "hirzebruch": fan_hirzebruch,
                "punctured": fan_punctured_affine,
            }[args.name]
            fan = builder(params[0])
    except BadParameterError as exc:
        return _fail(EXIT_USAGE, str(exc))
    if args.verbose:
        print(
            f"toricflex: {args.name} fan with {len(fan.rays)} rays and "
            f"{len(fan.max_cones)} maximal cones",
            file=sys.stderr,
        )
    try:
        _write_text(args.output, fan_to_json(fan))
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    return EXIT_OK


def _parse_cone(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok.strip()) for tok in text.split(","))
    except ValueError:
        raise BadConeError(
            f"--cone expects comma-separated ray indices, got {text!r}"
        ) from None


def _cmd_subdivide(args: argparse.Namespace) -> int:
    try:
        fan = _load_fan(args.input)
    except (OSError, FanFormatError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except InvalidFanError as exc:
        return _fail(EXIT_INVALID_FAN, str(exc))
    report = validate_fan(fan)
    if not report.valid:
        for line in report.diagnostics:
            print(f"toricflex: finding: {line}", file=sys.stderr)
        return _fail(EXIT_INVALID_FAN, "refusing to subdivide an invalid fan")
    try:
        child = star_subdivision(fan, _parse_cone(args.cone))
    except BadConeError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except NotSmoothError as exc:
        return _fail(EXIT_HYPOTHESIS, f"hypothesis failure: {exc}")
    if args.verbose:
        print(
            f"toricflex: added ray {child.rays[-1]}; fan now has "
            f"{len(child.max_cones)} maximal cones",
            file=sys.stderr,
        )
    try:
        _write_text(args.output, fan_to_json(child))
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    return EXIT_OK


def _add_verbose(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--verbose", action="store_true", help="extra progress notes on stderr")


def _add_input(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", default="-", help="fan file, or - for stdin (default)")


def _add_output(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--output", default="-", help="destination file, or - for stdout (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricflex",
        description="Fan toolkit: validation, star subdivisions, and flexibility cover certificates.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("validate", help="check the fan axioms; exit 0 iff valid")
    _add_input(sub)
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_validate)

    sub = commands.add_parser("analyze", help="write the full fan report as JSON")
    _add_input(sub)
    _add_output(sub)
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_analyze)

    sub = commands.add_parser("cover", help="build a flexibility cover certificate")
    _add_input(sub)
    _add_output(sub)
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_cover)

    sub = commands.add_parser("verify", help="independently check a cover certificate")
    _add_input(sub)
    sub.add_argument("--cert", required=True, help="certificate file, or - for stdin")
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_verify)

    sub = commands.add_parser("example", help="write a named example fan")
    sub.add_argument(
        "--name",
        required=True,
        choices=["affine", "projective", "hirzebruch", "product", "punctured"],
    )
    sub.add_argument(
        "--param",
        action="append",
        type=int,
        help="integer parameter; repeat for product (two projective factors)",
    )
    _add_output(sub)
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_example)

    sub = commands.add_parser("subdivide", help="star subdivision at a cone of the fan")
    _add_input(sub)
    sub.add_argument("--cone", required=True, help="comma-separated ray indices, e.g. 0,2")
    _add_output(sub)
    _add_verbose(sub)
    sub.set_defaults(handler=_cmd_subdivide)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help; keep its code.
        return int(exc.code or 0)
    return args.handler(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

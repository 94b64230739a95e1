"""Command-line entry point.

Exit codes: 0 on success, 2 on a domain or parse error, 3 when two routes to
the same invariant disagree (or a verification suite fails).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from .dsl import FORMATS, SUITES, parse
from .errors import ConsistencyError, DomainError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CONSISTENCY = 3


def execute(line: str, fmt: str | None = None) -> tuple[int, str]:
    """Run one command line and return ``(exit_code, output)``.  Never raises."""
    from .report import run

    try:
        cmd = parse(line)
        if fmt is not None:
            cmd = replace(cmd, format=fmt)
        rep = run(cmd)
    except ConsistencyError as exc:
        return EXIT_CONSISTENCY, f"consistency error: {exc}"
    except DomainError as exc:
        return EXIT_DOMAIN, f"error: {exc}"
    code = EXIT_OK if rep.ok or cmd.verb != "verify" else EXIT_CONSISTENCY
    return code, rep.render(cmd.format)


def _is_error(out: str) -> bool:
    return out.startswith(("error:", "consistency error:"))


def read_batch(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    return [ln for ln in lines if ln and not ln.startswith("#")]


def run_batch(lines: list[str], fmt: str | None = None, jobs: int = 1) -> list[tuple[int, str]]:
    """Evaluate independent commands; results come back in input order."""
    if jobs <= 1:
        return [execute(ln, fmt) for ln in lines]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda ln: execute(ln, fmt), lines))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hrhlab",
        description="Exact HRH levels, spectra, Bernstein-Sato roots and local cohomology invariants.",
    )
    ap.add_argument("command", nargs="*", help='a command such as "hrh bp(2,2,2,2)"')
    ap.add_argument("--format", choices=FORMATS, default=None, help="output format (default: text)")
    ap.add_argument("--batch", metavar="FILE", help="run one command per line of FILE")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for --batch")
    ap.add_argument("--suite", choices=SUITES, default=None, help="run a verification suite")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.batch:
        if args.command or args.suite:
            print("error: --batch takes no inline command", file=sys.stderr)
            return EXIT_DOMAIN
        try:
            lines = read_batch(args.batch)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        results = run_batch(lines, args.format, args.jobs)
        for code, out in results:
            print(out, file=sys.stderr if _is_error(out) else sys.stdout)
        return max((code for code, _ in results), default=EXIT_OK)

    line = " ".join(args.command)
    if args.suite:
        if line and not line.startswith("verify"):
            print("error: --suite only applies to verify", file=sys.stderr)
            return EXIT_DOMAIN
        line = f"verify --suite={args.suite}"
    if not line:
        build_parser().print_usage(sys.stderr)
        return EXIT_DOMAIN
    code, out = execute(line, args.format)
    print(out, file=sys.stderr if _is_error(out) else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())

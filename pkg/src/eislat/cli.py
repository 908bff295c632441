"""Command-line verification harness."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .report import Report, VerificationRecord, emit_report

log = logging.getLogger("eislat")

SUITES = ("codes", "root-lattices", "niemeier", "model", "invariant-subspaces", "root-derivation",
          "y555", "null-types")


@dataclass
class Options:
    closure_cap: int = 200_000
    enum_cap: int = 10**6
    jobs: int = 1
    embeddings: int = 3

    def config(self) -> dict:
        return {"closure_cap": self.closure_cap, "enum_cap": self.enum_cap, "jobs": self.jobs,
                "embeddings": self.embeddings}


def _guarded(section: str, fn: Callable[[], list[VerificationRecord]]) -> list[VerificationRecord]:
    """Run one section; resource caps and hard failures become failed checks."""
    from .groups import ClosureCapExceeded
    from .reduction import EnumerationCapExceeded
    log.info("running %s", section)
    try:
        return fn()
    except (ClosureCapExceeded, EnumerationCapExceeded) as exc:
        return [VerificationRecord(f"{section}.cap", "completed within the configured cap", "completed",
                                   f"cap {exc.cap} exceeded with {exc.partial} found", section)]
    except (AssertionError, ValueError) as exc:
        return [VerificationRecord(f"{section}.error", "section ran to completion", "completed",
                                   f"{type(exc).__name__}: {exc}", section)]


def _sections(name: str, opt: Options) -> list[tuple[str, Callable[[], list[VerificationRecord]]]]:
    from . import catalog, model
    from .codes import standard_code_checks

    def progress(msg: str) -> None:
        log.info(msg)

    M = model.build_model
    if name == "codes":
        return [("codes.standard", standard_code_checks), ("codes.plane", lambda: model.code_checks(M()))]
    if name == "root-lattices":
        return [(f"root_lattice.{k.value}", lambda k=k: catalog.root_lattice_checks(k, opt.closure_cap))
                for k in catalog.RootLatticeKind]
    if name == "niemeier":
        return [(f"niemeier.{k}", lambda k=k: catalog.niemeier_checks(k, opt.enum_cap))
                for k in catalog.NIEMEIER_KINDS]
    if name == "model":
        return [("model", lambda: model.verify_model(M()))]
    if name == "invariant-subspaces":
        return [("invariant", lambda: model.invariant_subspace_scan(M(), opt.jobs, progress))]
    if name == "root-derivation":
        return [("derive", lambda: model.root_derivation(M()))]
    if name == "y555":
        return [("y555", lambda: model.y555_suite(M(), opt.embeddings))]
    if name == "null-types":
        return [("leech", lambda: catalog.leech_checks(M())),
                ("null", lambda: catalog.null_type_checks(M(), opt.enum_cap, progress))]
    if name == "all":
        return [s for n in SUITES for s in _sections(n, opt)]
    raise ValueError(f"unknown suite {name!r}")


def run_suite(name: str, options: Options | None = None) -> Report:
    opt = options or Options()
    sections = _sections(name, opt)
    t0 = time.perf_counter()
    checks: list[VerificationRecord] = []
    for sec, fn in sections:
        checks += _guarded(sec, fn)
    return Report(name, __version__, opt.config(), checks, time.perf_counter() - t0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eislat", description="Verify the Eisenstein lattice computations.")
    p.add_argument("suite", choices=SUITES + ("all",), help="suite to run")
    p.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    p.add_argument("-o", "--output", help="write the report to this file instead of stdout")
    p.add_argument("--closure-cap", type=int, default=200_000, help="maximum matrix group size")
    p.add_argument("--enum-cap", type=int, default=10**6, help="maximum number of enumerated vectors")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes for the subspace scan")
    p.add_argument("--embeddings", type=int, default=3, help="Y555 embeddings per colouring to check")
    p.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("closure_cap", "enum_cap", "jobs", "embeddings"):
        if getattr(args, flag) < 1:
            parser.error(f"--{flag.replace('_', '-')} must be positive")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(message)s")
    opt = Options(args.closure_cap, args.enum_cap, args.jobs, args.embeddings)
    report = run_suite(args.suite, opt)
    data = emit_report(report, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

"""The ``vendsim`` command line.

Exit status: 0 on success, 1 when a scripted run has failing expectations,
2 for unreadable or invalid input files, bad configuration and write errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from ..analysis import resource_report, to_dot
from ..billing import ledger_from_trace, reconcile, render_bill, save_bill
from ..controller import ControllerConfig, build_controller, resolve_config
from ..core.kernel import ExpectationError, run
from ..core.trace import Trace
from ..errors import VendsimError
from ..stimulus import parse_stimulus
from ..waveform import trace_to_vcd, write_vcd
from .repl import ReplSession


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECTATIONS = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="controller configuration file (YAML)")
    common.add_argument("-v", "--verbose", action="store_true", help="log debug output to stderr")

    parser = argparse.ArgumentParser(prog="vendsim", description="Vending controller simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", parents=[common], help="simulate a stimulus script")
    run_cmd.add_argument("--stimulus", required=True, help="stimulus script")
    run_cmd.add_argument("--vcd", help="write the waveform to this file")
    run_cmd.add_argument("--vcd-date", help="text for the waveform $date section")
    run_cmd.add_argument("--bill", help="write the session bill (JSON) to this file")
    run_cmd.add_argument("--audit", action="store_true", help="print the money-flow reconciliation")
    run_cmd.set_defaults(handler=cmd_run)

    repl_cmd = sub.add_parser("repl", parents=[common], help="step the controller interactively")
    repl_cmd.set_defaults(handler=cmd_repl)

    analyze_cmd = sub.add_parser("analyze", parents=[common], help="export the state graph and resources")
    analyze_cmd.add_argument("--dot", help="write the state graph in dot format to this file")
    analyze_cmd.add_argument("--report", action="store_true", help="print the resource report")
    analyze_cmd.add_argument("--json", action="store_true", help="print the report as JSON")
    analyze_cmd.set_defaults(handler=cmd_analyze)
    return parser


def _load_config(args: argparse.Namespace, err: TextIO) -> Optional[ControllerConfig]:
    try:
        return resolve_config(args.config)
    except VendsimError as e:
        err.write(f"vendsim: {e}\n")
        return None


def cmd_run(args: argparse.Namespace) -> int:
    """Simulate a stimulus script against the configured controller."""
    out, err = sys.stdout, sys.stderr
    config = _load_config(args, err)
    if config is None:
        return EXIT_USAGE

    try:
        text = Path(args.stimulus).read_text(encoding="utf-8")
    except OSError as e:
        err.write(f"vendsim: cannot read stimulus {args.stimulus}: {e.strerror or e}\n")
        return EXIT_USAGE
    except UnicodeDecodeError as e:
        err.write(
            f"vendsim: cannot read stimulus {args.stimulus}: not valid UTF-8 ({e.reason} at byte {e.start})\n"
        )
        return EXIT_USAGE

    try:
        machine = build_controller(config.catalog, config.capacity)
        program = parse_stimulus(text, machine)
    except VendsimError as e:
        err.write(f"{args.stimulus}: {e}\n")
        return EXIT_USAGE

    status = EXIT_OK
    try:
        trace = run(machine, program)
    except ExpectationError as e:
        trace = e.trace
        status = EXIT_EXPECTATIONS
    _print_expectations(trace, out)

    try:
        if args.vcd:
            with open(args.vcd, "wb") as f:
                size = write_vcd(trace_to_vcd(trace, machine, date=args.vcd_date), f)
            logger.info(f"Wrote {size} bytes of waveform to {args.vcd}")
        if args.bill:
            bill = render_bill(ledger_from_trace(trace, config.catalog), config.currency)
            save_bill(bill, args.bill)
            logger.info(f"Wrote bill to {args.bill}")
    except OSError as e:
        err.write(f"vendsim: cannot write output: {e}\n")
        return EXIT_USAGE

    if args.audit:
        flow = reconcile(trace, config.catalog, since=_session_start(trace))
        verdict = "balanced" if flow.balanced else "UNBALANCED"
        out.write(
            f"money taken_in={flow.taken_in} dispensed={flow.dispensed} change={flow.change} "
            f"returned={flow.returned} held={flow.held} {verdict}\n"
        )
    return status


def _print_expectations(trace: Trace, out: TextIO) -> None:
    for check in trace.checks:
        if check.passed:
            out.write(f"ok   @{check.cycle} {check.port}={check.expected}\n")
        else:
            out.write(f"FAIL @{check.cycle} {check.port}: expected {check.expected}, got {check.actual}\n")
    out.write(
        f"{len(trace)} cycles, final state {trace.final_state}, "
        f"{len(trace.checks)} expectation(s), {len(trace.failures())} failed\n"
    )


def _session_start(trace: Trace) -> int:
    """First cycle after the last reset cycle of the trace."""
    start = 0
    for record in trace:
        if record.inputs.get("reset", 0):
            start = record.cycle + 1
    return start


def cmd_repl(args: argparse.Namespace) -> int:
    """Step the controller from commands read on stdin."""
    out, err = sys.stdout, sys.stderr
    config = _load_config(args, err)
    if config is None:
        return EXIT_USAGE
    return ReplSession(config).run(sys.stdin, out)


def cmd_analyze(args: argparse.Namespace) -> int:
    """Export the controller's state graph and resource report."""
    out, err = sys.stdout, sys.stderr
    config = _load_config(args, err)
    if config is None:
        return EXIT_USAGE

    try:
        machine = build_controller(config.catalog, config.capacity)
    except VendsimError as e:
        err.write(f"vendsim: {e}\n")
        return EXIT_USAGE

    if args.dot:
        try:
            Path(args.dot).write_text(to_dot(machine), encoding="utf-8")
        except OSError as e:
            err.write(f"vendsim: cannot write {args.dot}: {e.strerror or e}\n")
            return EXIT_USAGE
        logger.info(f"Wrote state graph to {args.dot}")

    if args.report or args.json or not args.dot:
        report = resource_report(machine)
        out.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
    )
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import Any, Callable, TextIO

from .analysis import (
    PROPERTY_IDS,
    PreimageCatalog,
    build_catalog,
    check_property,
    conjecture_scan,
    missing_values,
    singleton_values,
    smallest_preimage,
    verify_paper_tables,
)
from .bounds import omega_class_bound, omega_class_members, primorial_index_bound, verify_primorial_growth
from .config import OUTPUT_FORMATS, PhiTildeConfig, load_config
from .errors import PhiTildeError, UsageError
from .models import (
    VerificationOutcome,
    conjecture_report_to_dict,
    coprime_set_to_dict,
    outcome_to_dict,
    preimage_report_to_dict,
    record_to_dict,
)
from .output import OutputEnvelope, render
from .phitilde import enumerate_E, phi_tilde
from .sieve import PrimeList, SieveTables, build_sieve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class _Session:
    """Config, prime list and lazily built tables shared by one invocation."""

    def __init__(self, config: PhiTildeConfig):
        self.config = config
        self.primes = PrimeList(config.sieve.max_prime_index)
        self._tables: SieveTables | None = None

    def tables(self, at_least: int = 0) -> SieveTables:
        limit = max(self.config.sieve.default_limit, at_least)
        if self._tables is None or self._tables.limit < limit:
            logger.info("building sieve tables to %d", limit)
            self._tables = build_sieve(
                limit,
                max_limit=self.config.sieve.max_limit,
                memory_budget_bytes=self.config.sieve.memory_budget_bytes,
            )
        return self._tables

    def catalog(self, max_k: int) -> PreimageCatalog:
        return build_catalog(
            max_k,
            self.tables(),
            segment_size=self.config.sieve.segment_size,
            threads=self.config.scan.threads,
            max_scan_bound=self.config.scan.max_bound,
            primes=self.primes,
        )


def _at_least(minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"expected an integer >= {minimum}, got {text!r}") from exc
        if value < minimum:
            raise argparse.ArgumentTypeError(f"expected an integer >= {minimum}, got {value}")
        return value

    return parse


_positive = _at_least(1)
_non_negative = _at_least(0)


def _add_global_flags(parser: argparse.ArgumentParser, *, suppress: bool) -> None:
    def default(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=default(None), help="Output format (default json)")
    parser.add_argument("--sieve-limit", type=_positive, default=default(None), help="In-memory sieve limit (default 1000000)")
    parser.add_argument("--threads", type=_positive, default=default(None), help="Cap on internal scan parallelism")
    parser.add_argument("--config", default=default(None), help="Path to a phitilde.yaml config file")
    parser.add_argument("--quiet", action="store_true", default=default(False), help="Only log warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phitilde", description="Compute phi_tilde, its preimages and a regression suite over published tables.")
    _add_global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_flags(shared, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[shared], help=help_text)

    add("value", "phi, pi, omega and phi_tilde of n").add_argument("n", type=_positive)
    add("enumerate", "List the set E_n").add_argument("n", type=_positive)
    table = add("table", "Records for every n in [from, to]")
    table.add_argument("start", type=_positive, metavar="from")
    table.add_argument("stop", type=_positive, metavar="to")
    add("preimage", "Certified preimage set s(k)").add_argument("k", type=_positive)
    for name, help_text in (
        ("smallest", "Smallest preimage of every k <= K"),
        ("missing", "Values k <= K with no preimage"),
        ("singletons", "Values k <= K with exactly one preimage"),
        ("conjecture-scan", "Density of missing values up to K"),
    ):
        add(name, help_text).add_argument("--max-k", type=_positive, required=True)
    add("verify-paper", "Check every published table and observation")
    props = add("props", "Exhaustive property checks")
    props.add_argument("--id", dest="property_id", choices=[*PROPERTY_IDS, "all"], required=True)
    props.add_argument("--limit", type=_positive, required=True)
    add("primorial-growth", "Check Q_i growth and phi_tilde along primorials").add_argument(
        "--max-i", type=_at_least(3), required=True
    )
    omega_class = add("omega-class", "The finite set A(a, b) = {n : phi_tilde(n) = a, omega(n) = b}")
    omega_class.add_argument("a", type=_positive)
    omega_class.add_argument("b", type=_non_negative)
    add("primorial-index", "Smallest M with phi_tilde(N_j) > n for all j >= M").add_argument("n", type=_non_negative)
    return parser


def _overall(outcomes: list[VerificationOutcome]) -> str:
    return "pass" if all(item.passed for item in outcomes) else "fail"


def _cmd_value(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    record = phi_tilde(args.n, session.tables(args.n))
    return OutputEnvelope("value", {"n": args.n}, record_to_dict(record))


def _cmd_enumerate(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    members = enumerate_E(args.n, session.tables(args.n))
    return OutputEnvelope("enumerate", {"n": args.n}, coprime_set_to_dict(members))


def _cmd_table(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    if args.start > args.stop:
        raise UsageError(f"table range is empty: from={args.start} > to={args.stop}")
    tables = session.tables(args.stop)
    rows = [record_to_dict(phi_tilde(n, tables)) for n in range(args.start, args.stop + 1)]
    return OutputEnvelope("table", {"from": args.start, "to": args.stop}, rows)


def _cmd_preimage(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    report = session.catalog(args.k).report(args.k, session.primes)
    return OutputEnvelope("preimage", {"k": args.k}, preimage_report_to_dict(report))


def _cmd_smallest(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    catalog = session.catalog(args.max_k)
    tables = session.tables()
    rows = [{"k": k, "n": smallest_preimage(k, tables, catalog)} for k in range(1, args.max_k + 1)]
    return OutputEnvelope("smallest", {"max_k": args.max_k}, rows)


def _cmd_missing(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    found = missing_values(args.max_k, session.tables(), session.catalog(args.max_k))
    return OutputEnvelope("missing", {"max_k": args.max_k}, {"max_k": args.max_k, "missing": found, "count": len(found)})


def _cmd_singletons(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    found = singleton_values(args.max_k, session.tables(), session.catalog(args.max_k))
    return OutputEnvelope(
        "singletons", {"max_k": args.max_k}, {"max_k": args.max_k, "singletons": found, "count": len(found)}
    )


def _cmd_verify_paper(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    tables = session.tables()
    outcomes = verify_paper_tables(tables, catalog=None, data_dir=session.config.golden.data_dir)
    errata = sum(1 for item in outcomes if item.note)
    logger.info("%d claims checked, %d failed, %d errata", len(outcomes), sum(not o.passed for o in outcomes), errata)
    return OutputEnvelope("verify-paper", {}, [outcome_to_dict(item) for item in outcomes], _overall(outcomes))


def _cmd_props(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    tables = session.tables(args.limit)
    ids = PROPERTY_IDS if args.property_id == "all" else (args.property_id,)
    outcomes = [check_property(property_id, args.limit, tables) for property_id in ids]
    return OutputEnvelope(
        "props",
        {"id": args.property_id, "limit": args.limit},
        [outcome_to_dict(item) for item in outcomes],
        _overall(outcomes),
    )


def _cmd_primorial_growth(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    outcome = verify_primorial_growth(
        args.max_i,
        session.tables(),
        pi_cap=session.config.prime_count.feasibility_cap,
        max_index=session.config.primorial.max_index,
        primes=session.primes,
    )
    return OutputEnvelope("primorial-growth", {"max_i": args.max_i}, outcome_to_dict(outcome), _overall([outcome]))


def _cmd_conjecture_scan(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    report = conjecture_scan(args.max_k, session.tables(), session.catalog(args.max_k))
    return OutputEnvelope("conjecture-scan", {"max_k": args.max_k}, conjecture_report_to_dict(report))


def _cmd_omega_class(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    bound = omega_class_bound(args.a, args.b, session.primes) if args.b >= 1 else 1
    members = omega_class_members(args.a, args.b, session.tables(bound), session.primes)
    return OutputEnvelope(
        "omega-class",
        {"a": args.a, "b": args.b},
        {"a": args.a, "b": args.b, "bound": bound, "members": list(members)},
    )


def _cmd_primorial_index(args: argparse.Namespace, session: _Session) -> OutputEnvelope:
    index = primorial_index_bound(
        args.n,
        session.tables(),
        pi_cap=session.config.prime_count.feasibility_cap,
        max_index=session.config.primorial.max_index,
        primes=session.primes,
    )
    ceiling = max(4, args.n)
    return OutputEnvelope(
        "primorial-index",
        {"n": args.n},
        {"n": args.n, "index": index, "ceiling": ceiling, "within_ceiling": index <= ceiling},
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, _Session], OutputEnvelope]] = {
    "value": _cmd_value,
    "enumerate": _cmd_enumerate,
    "table": _cmd_table,
    "preimage": _cmd_preimage,
    "smallest": _cmd_smallest,
    "missing": _cmd_missing,
    "singletons": _cmd_singletons,
    "verify-paper": _cmd_verify_paper,
    "props": _cmd_props,
    "primorial-growth": _cmd_primorial_growth,
    "conjecture-scan": _cmd_conjecture_scan,
    "omega-class": _cmd_omega_class,
    "primorial-index": _cmd_primorial_index,
}


def _with_cli_overrides(config: PhiTildeConfig, args: argparse.Namespace) -> PhiTildeConfig:
    if args.sieve_limit is not None:
        config = replace(
            config,
            sieve=replace(
                config.sieve,
                default_limit=args.sieve_limit,
                max_limit=max(config.sieve.max_limit, args.sieve_limit),
            ),
        )
    if args.threads is not None:
        config = replace(config, scan=replace(config.scan, threads=args.threads))
    if args.format is not None:
        config = replace(config, output=replace(config.output, format=args.format))
    return config


def run(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        config = _with_cli_overrides(load_config(args.config), args)
        envelope = COMMANDS[args.command](args, _Session(config))
    except UsageError as exc:
        print(f"phitilde: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PhiTildeError, OSError) as exc:
        print(f"phitilde: error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        # Malformed config file values.
        print(f"phitilde: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(render(envelope, config.output.format, indent=config.output.indent), file=out)
    return EXIT_FAILED if envelope.status == "fail" else EXIT_OK


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())

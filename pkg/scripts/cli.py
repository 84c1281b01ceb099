#!/usr/bin/env python3
"""
Reflectrace: trace decompositions of Coxeter groups, checked exactly.

Builds the Grothendieck construction of T -> Tr(W_T) over the spherical
subsets of a Coxeter system and tests it against conjugacy in W.

CLI Tool with subcommands:
    facets:       Spherical subsets and facets in a ball
    trace:        Trace decomposition of one finite parabolic
    hocolim:      Components and fundamental groups of the construction
    verify:       Full theorem check with report and exit status
    decompose:    The decomposition in disjoint-union notation
    witness-pi0:  Pairwise non-conjugate translations (affine type)
    check-lemma:  Star reindexing check for one spherical subset
    claims:       All secondary claims in one table
    list-systems: Shipped system configs

Usage:
    reflectrace verify affine_a2 [--radius R] [--json out.json]
    reflectrace decompose path/to/system.cfg
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

# Rich library for consistent, professional UX
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from reflectrace import __version__
from reflectrace.cache import BallCache
from reflectrace.conj import ConjugacyOracle
from reflectrace.config import ReflectraceConfig, SystemConfig, list_shipped_systems, load_system
from reflectrace.coxeter import CayleyBall, CoxeterSystem
from reflectrace.errors import ConfigError, ReflectraceError
from reflectrace.facets import facets_in_ball, spherical_subsets
from reflectrace.hocolim import compute_hocolim
from reflectrace.parabolics import ParabolicCache, trace_decomposition
from reflectrace.presentations import default_names
from reflectrace.report import EXIT_CODES, FAIL, PASS, decomposition, overall_status
from reflectrace.verify import lemma_groupoid_check, pi0_infinite_witness, run_claims, verify_system

# Initialize Rich console
console = Console()
err_console = Console(stderr=True)

USAGE_ERROR = 2

STATUS_STYLE = {
    PASS: "green",
    FAIL: "bold red",
    "unknown": "yellow",
    "Verified": "bold green",
    "VerifiedWithUnknowns": "bold yellow",
    "Failed": "bold red",
}


def _styled(status: str) -> str:
    style = STATUS_STYLE.get(status, "white")
    return f"[{style}]{status}[/{style}]"


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _load(args) -> tuple:
    """System config, built system and effective runtime config for a command."""
    system_config = load_system(args.config)
    config = system_config.apply_to(ReflectraceConfig.from_env())
    if args.no_cache:
        config.use_cache = False
    return system_config, system_config.build(), config


def _open_ball(sys_: CoxeterSystem, config: ReflectraceConfig) -> CayleyBall:
    if config.use_cache:
        cached = BallCache(config.cache_dir).load(sys_, config.ball_cap)
        if cached is not None:
            return cached
    return CayleyBall(sys_, config.ball_cap)


def _store_ball(sys_: CoxeterSystem, config: ReflectraceConfig, ball: CayleyBall) -> None:
    if config.use_cache and ball.radius > 0:
        BallCache(config.cache_dir).save(sys_, ball)


def _parse_subset(sys_: CoxeterSystem, text: str) -> frozenset:
    names = text.replace(",", " ").split()
    try:
        return frozenset(sys_.generator_index(name) for name in names)
    except KeyError as e:
        raise ConfigError(str(e.args[0]), None, "--subset") from None


def _subset_names(sys_: CoxeterSystem, T) -> str:
    return "{" + ", ".join(sys_.generators[s] for s in sorted(T)) + "}"


def _header(title: str, system_config: SystemConfig, sys_: CoxeterSystem) -> None:
    info_table = Table(show_header=False, box=None, padding=(0, 2))
    info_table.add_row("[bold]System:[/bold]", f"[cyan]{sys_.name}[/cyan]")
    info_table.add_row("[bold]Type:[/bold]", f"[cyan]{sys_.type_class}[/cyan]")
    info_table.add_row("[bold]Generators:[/bold]", f"[cyan]{' '.join(system_config.generators)}[/cyan]")
    console.print(Panel(info_table, title=f"[bold cyan]{title}[/bold cyan]", border_style="cyan"))


# --- commands ---

def cmd_facets(args) -> int:
    system_config, sys_, config = _load(args)
    _header("Facets", system_config, sys_)
    poset = spherical_subsets(sys_)

    table = Table(title="Spherical subsets (faces of the fundamental chamber)")
    table.add_column("T")
    table.add_column("|W_T|", justify="right")
    parabolics = ParabolicCache(sys_, config.ball_cap)
    for T in poset.nodes:
        table.add_row(_subset_names(sys_, T), str(parabolics[T].order))
    console.print(table)

    ball = _open_ball(sys_, config)
    facets = facets_in_ball(sys_, args.radius, poset=poset, cayley=ball)
    _store_ball(sys_, config, ball)
    table = Table(title=f"Facets with coset representative of length <= {args.radius}")
    table.add_column("type")
    table.add_column("coset rep")
    for f in facets:
        table.add_row(_subset_names(sys_, f.type), sys_.word_names(f.coset_rep.word))
    console.print(table)
    console.print(f"[green]{len(facets)} facets[/green]")
    return 0


def cmd_trace(args) -> int:
    system_config, sys_, config = _load(args)
    T = _parse_subset(sys_, args.subset)
    _header(f"Trace of W_{_subset_names(sys_, T)}", system_config, sys_)
    group = ParabolicCache(sys_, config.ball_cap)[T]
    trace = trace_decomposition(group)

    table = Table(title=f"|W_T| = {group.order}, {len(trace.summands)} conjugacy classes")
    table.add_column("representative")
    table.add_column("class size", justify="right")
    table.add_column("|C(w)|", justify="right")
    for summand in trace.summands:
        table.add_row(sys_.word_names(summand.representative.word),
                      str(len(summand.class_elements)), str(len(summand.centralizer)))
    console.print(table)
    return 0


def cmd_hocolim(args) -> int:
    system_config, sys_, config = _load(args)
    _header("Grothendieck construction", system_config, sys_)
    with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                  console=err_console, transient=True) as progress:
        progress.add_task(description="Building components and presentations...", total=None)
        result = compute_hocolim(sys_, coset_cap=config.coset_cap, ball_cap=config.ball_cap)

    gc = result.category
    console.print(f"[bold]{len(gc.objects)}[/bold] objects, [bold]{len(gc.morphisms)}[/bold] morphisms, "
                  f"[bold]{len(result.components)}[/bold] components")
    table = Table(title="Components")
    table.add_column("#", justify="right")
    table.add_column("base")
    table.add_column("objects", justify="right")
    table.add_column("pi_1")
    table.add_column("presentation")
    for cp in result.presentations:
        P = cp.simplified
        table.add_row(str(cp.component.index), gc.describe_object(cp.component.base),
                      str(cp.component.size), cp.recognized.render(), P.describe(default_names(P.generator_count)))
    console.print(table)
    return 0


def cmd_decompose(args) -> int:
    _, sys_, config = _load(args)
    result = compute_hocolim(sys_, coset_cap=config.coset_cap, ball_cap=config.ball_cap)
    console.print(decomposition([cp.recognized.render() for cp in result.presentations]))
    return 0


def cmd_verify(args) -> int:
    system_config, sys_, config = _load(args)
    if args.radius is not None:
        config.conj_radius = args.radius
    _header("Theorem check", system_config, sys_)

    ball = _open_ball(sys_, config)
    with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                  console=err_console, transient=True) as progress:
        progress.add_task(description="Verifying...", total=None)
        report = verify_system(sys_, config, cayley=ball, claims=not args.skip_claims)
    _store_ball(sys_, config, ball)

    table = Table(title="Components")
    table.add_column("#", justify="right")
    table.add_column("base")
    table.add_column("objects", justify="right")
    table.add_column("pi_1")
    table.add_column("expected")
    table.add_column("full")
    table.add_column("faithful")
    table.add_column("status")
    for c in report.components:
        table.add_row(str(c.index), c.base, str(c.objects), c.recognized, c.expected or "-",
                      _styled(c.fullness), _styled(c.faithfulness), _styled(c.status))
    console.print(table)
    _print_claims(report.claims)
    console.print(f"\n{report.decomposition()}")

    if args.json:
        directory = os.path.dirname(os.path.abspath(args.json))
        os.makedirs(directory, exist_ok=True)
        with open(args.json, "w", encoding="utf-8") as f:
            f.write(report.to_json())
        console.print(f"[dim]Report written to {args.json}[/dim]")

    console.print(Panel(_styled(report.overall), title=f"[bold]{sys_.name}[/bold]", border_style="cyan"))
    return report.exit_code


def _print_claims(claims) -> None:
    table = Table(title="Checks")
    table.add_column("check")
    table.add_column("status")
    table.add_column("notes")
    for name, claim in claims.items():
        table.add_row(name, _styled(claim.status), "; ".join(claim.messages[:3]))
    console.print(table)


def cmd_witness_pi0(args) -> int:
    system_config, sys_, config = _load(args)
    _header("Translation classes", system_config, sys_)
    ball = _open_ball(sys_, config)
    oracle = ConjugacyOracle(sys_, config.order_cap, config.fold_cap, cayley=ball, ball_cap=config.ball_cap)
    result = pi0_infinite_witness(sys_, args.n, oracle=oracle, ball_cap=config.ball_cap)
    _store_ball(sys_, config, ball)

    table = Table(title=f"{len(result.witnesses)} pairwise non-conjugate translations")
    table.add_column("#", justify="right")
    table.add_column("word")
    for k, w in enumerate(result.witnesses, start=1):
        table.add_row(str(k), sys_.word_names(w.word))
    console.print(table)
    console.print(f"Components of the construction: [bold]{result.component_count}[/bold]")
    console.print(f"Status: {_styled(result.status)}")
    return EXIT_CODES[overall_status([result.status])]


def cmd_check_lemma(args) -> int:
    system_config, sys_, config = _load(args)
    T = _parse_subset(sys_, args.subset)
    _header(f"Star reindexing at {_subset_names(sys_, T)}", system_config, sys_)
    ball = _open_ball(sys_, config)
    claim = lemma_groupoid_check(sys_, T, args.L, cayley=ball, ball_cap=config.ball_cap)
    _store_ball(sys_, config, ball)
    for key, value in claim.details.items():
        console.print(f"[bold]{key}:[/bold] {value}")
    for message in claim.messages:
        console.print(f"[red]{message}[/red]")
    console.print(f"Status: {_styled(claim.status)}")
    return EXIT_CODES[overall_status([claim.status])]


def cmd_claims(args) -> int:
    system_config, sys_, config = _load(args)
    _header("Secondary claims", system_config, sys_)
    ball = _open_ball(sys_, config)
    oracle = ConjugacyOracle(sys_, config.order_cap, config.fold_cap, cayley=ball, ball_cap=config.ball_cap)
    claims = run_claims(sys_, config, oracle=oracle)
    _store_ball(sys_, config, ball)
    _print_claims(claims)
    overall = overall_status(c.status for c in claims.values())
    console.print(Panel(_styled(overall), border_style="cyan"))
    return EXIT_CODES[overall]


def cmd_list_systems(args) -> int:
    table = Table(title="Shipped systems")
    table.add_column("name")
    table.add_column("type")
    table.add_column("generators")
    for name, path in list_shipped_systems():
        system_config = SystemConfig.load(str(path))
        table.add_row(name, system_config.build().type_class, " ".join(system_config.generators))
    console.print(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflectrace",
        description="Reflectrace: trace decompositions of Coxeter groups, checked exactly",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-cache", action="store_true", help="Do not read or write the ball cache")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    system = argparse.ArgumentParser(add_help=False, parents=[common])
    system.add_argument("config", help="System config file or shipped system name (e.g. affine_a2)")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # --- FACETS COMMAND ---
    p = subparsers.add_parser("facets", parents=[system], help="Spherical subsets and facets in a ball")
    p.add_argument("--radius", "-L", type=int, default=2, help="Coset representative length bound")
    p.set_defaults(func=cmd_facets)

    # --- TRACE COMMAND ---
    p = subparsers.add_parser("trace", parents=[system], help="Trace decomposition of a finite parabolic")
    p.add_argument("--subset", required=True, help="Generator names, comma or space separated")
    p.set_defaults(func=cmd_trace)

    # --- HOCOLIM COMMAND ---
    p = subparsers.add_parser("hocolim", parents=[system], help="Components and fundamental groups")
    p.set_defaults(func=cmd_hocolim)

    # --- VERIFY COMMAND ---
    p = subparsers.add_parser("verify", parents=[system], help="Full theorem check")
    p.add_argument("--radius", type=int, help="Conjugator search radius")
    p.add_argument("--json", help="Write the JSON report to this path")
    p.add_argument("--skip-claims", action="store_true", help="Only the theorem checks")
    p.set_defaults(func=cmd_verify)

    # --- DECOMPOSE COMMAND ---
    p = subparsers.add_parser("decompose", parents=[system], help="Print the decomposition")
    p.set_defaults(func=cmd_decompose)

    # --- WITNESS-PI0 COMMAND ---
    p = subparsers.add_parser("witness-pi0", parents=[system], help="Non-conjugate translations")
    p.add_argument("-n", type=int, default=10, help="Number of witnesses")
    p.set_defaults(func=cmd_witness_pi0)

    # --- CHECK-LEMMA COMMAND ---
    p = subparsers.add_parser("check-lemma", parents=[system], help="Star reindexing check")
    p.add_argument("--subset", default="", help="Generator names, comma or space separated")
    p.add_argument("-L", type=int, default=4, help="Ball radius")
    p.set_defaults(func=cmd_check_lemma)

    # --- CLAIMS COMMAND ---
    p = subparsers.add_parser("claims", parents=[system], help="All secondary claims")
    p.set_defaults(func=cmd_claims)

    # --- LIST-SYSTEMS COMMAND ---
    p = subparsers.add_parser("list-systems", parents=[common], help="Shipped system configs")
    p.set_defaults(func=cmd_list_systems)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        parser.print_help(sys.stderr)
        return USAGE_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return USAGE_ERROR

    _configure_logging(args.verbose)
    for flag in ("radius", "n", "L"):
        value = getattr(args, flag, None)
        if value is not None and value < (1 if flag == "n" else 0):
            err_console.print(f"[bold red]Invalid --{flag}: {value}[/bold red]")
            return USAGE_ERROR
    try:
        return args.func(args)
    except ReflectraceError as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

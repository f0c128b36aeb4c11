"""
The `zap` command line.

Exit codes:
    solve   10 SAT, 20 UNSAT, 0 when the branch budget runs out
    check   0 when every decider agrees, 1 otherwise
    all     2 on unreadable or invalid input
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import click
import yaml
from pydantic import ValidationError

from zap_cli import __version__
from zap_cli.models import SolverConfig, ZapFile, read_theory, render, write_zap
from zap_engine import (
    ParityConstraint,
    QuantifiedClause,
    ResolventWitness,
    check_resolvent,
    encode_cardinality,
    encode_clique_coloring,
    encode_parity,
    encode_pigeonhole,
    expand_theory,
    format_cycles,
    format_dimacs,
    rbl_solve,
    resolve_augmented,
)
from zap_engine.augmented import DEFAULT_INSTANCE_CAP
from zap_engine.encoders import encode_parity_theory, encode_qprop_theory, random_parity_theory
from zap_engine.errors import BudgetExceeded, TooManyInstances, ZapError
from zap_engine.oracle import DPLL_VAR_BUDGET, dpll_solve

logger = logging.getLogger(__name__)

EXIT_SAT = 10
EXIT_UNSAT = 20


class InputError(click.ClickException):
    """Unreadable or invalid input."""

    exit_code = 2


def _read(path: Path) -> ZapFile:
    try:
        return read_theory(Path(path).read_text())
    except (ZapError, ValidationError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text)
        logger.info("Wrote %s", output)


def _lit_key(lit: int):
    return abs(lit), lit < 0


@click.group()
@click.version_option(__version__, prog_name="zap")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging on stderr")
def main(verbose: int) -> None:
    """Augmented-clause SAT: solve, expand, encode, check, resolve and inspect theories."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="YAML solver configuration")
@click.option("--relevance", type=int, help="Relevance bound k (default 3)")
@click.option("--branch", type=click.Choice(["pos-unsat", "first"]), help="Branch heuristic")
@click.option("--seed", type=int, help="Tie-breaking seed")
@click.option("--expansion-cap", type=int, help="Largest instance table kept per clause")
@click.option("--enum-threshold", type=int, help="Group order below which subgroup search may enumerate")
@click.option("--max-branches", type=int, help="Give up after this many branches")
@click.option("--stats", is_flag=True, help="Print key=value solver counters")
@click.pass_context
def solve(ctx, path, config_path, relevance, branch, seed, expansion_cap, enum_threshold, max_branches, stats):
    """Solve a zap file or DIMACS CNF."""
    zap = _read(path)
    try:
        config = SolverConfig.from_yaml(config_path) if config_path else SolverConfig()
        config = config.merged(
            relevance=relevance, branch=branch, seed=seed, expansion_cap=expansion_cap,
            enum_threshold=enum_threshold, max_branches=max_branches,
        )
        clauses = zap.to_augmented()
    except (ZapError, ValidationError, yaml.YAMLError) as exc:
        raise InputError(str(exc)) from None

    try:
        result = rbl_solve(clauses, zap.num_vars, config.to_options())
    except BudgetExceeded as exc:
        logger.warning("%s", exc)
        click.echo("s UNKNOWN")
        ctx.exit(0)

    model = None
    if result.satisfiable:
        model = [v if value else -v for v, value in sorted(result.model.items())]
    status = "SATISFIABLE" if result.satisfiable else "UNSATISFIABLE"
    click.echo(render("stats.j2", status=status, model=model, stats=result.stats.as_dict() if stats else {}), nl=False)
    ctx.exit(EXIT_SAT if result.satisfiable else EXIT_UNSAT)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout")
@click.option("--cap", type=int, default=DEFAULT_INSTANCE_CAP, show_default=True, help="Largest ground clause count")
def expand(path, output, cap):
    """Write the ground instances of every clause as DIMACS CNF."""
    zap = _read(path)
    try:
        ground = expand_theory(zap.to_augmented(), cap)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    comments = zap.comments + [f"expanded from {Path(path).name}: {len(zap.clauses)} augmented clauses"]
    _emit(format_dimacs(zap.num_vars, ground, comments), output)


# -- encode -------------------------------------------------------------------

output_option = click.option(
    "-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout"
)


def _write_theory(clauses, num_vars: int, comments: List[str], output: Optional[Path]) -> None:
    _emit(write_zap(ZapFile.from_augmented(clauses, num_vars, comments)), output)


def _names(names: dict) -> List[str]:
    return [f"var {v} {name}" for v, name in sorted(names.items())]


@main.group()
def encode():
    """Write a zap file for a problem family."""


@encode.command()
@click.option("--holes", type=int, required=True, help="Number of holes n (n + 1 pigeons)")
@output_option
def pigeonhole(holes, output):
    """Pigeonhole principle: n + 1 pigeons do not fit in n holes."""
    try:
        theory = encode_pigeonhole(holes)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    comments = [f"pigeonhole, {holes + 1} pigeons, {holes} holes"] + _names(theory.names)
    _write_theory(theory.clauses, theory.num_vars, comments, output)


@encode.command()
@click.option("--nodes", type=int, required=True, help="Graph nodes m")
@click.option("--colors", type=int, required=True, help="Colors n (the clique has n + 1 members)")
@output_option
def clique(nodes, colors, output):
    """Clique coloring: an (n + 1)-clique that is n-colorable."""
    try:
        theory = encode_clique_coloring(nodes, colors)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    comments = [f"clique coloring, {nodes} nodes, {colors} colors"] + _names(theory.names)
    _write_theory(theory.clauses, theory.num_vars, comments, output)


@encode.command()
@click.option("--vars", "num", type=int, required=True, help="Variables x1..xm")
@click.option("--at-least", "k", type=int, required=True, help="Threshold k")
@output_option
def cardinality(num, k, output):
    """At least k of x1..xm are true."""
    try:
        ac = encode_cardinality(num, k)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    _write_theory([ac], num, [f"at least {k} of x1..x{num}"], output)


@encode.command()
@click.option("--vars", "num", type=int, required=True, help="Variables x1..xk")
@click.option("--rhs", type=click.IntRange(0, 1), required=True, help="Right-hand side mod 2")
@click.option("--compact", is_flag=True, help="One flip pair plus Sym on the variables")
@output_option
def parity(num, rhs, compact, output):
    """x1 + ... + xk = rhs (mod 2)."""
    try:
        constraint = ParityConstraint(tuple(range(1, num + 1)), rhs)
        ac = encode_parity(constraint, num, compact=compact)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    _write_theory([ac], num, [str(constraint)], output)


@encode.command("random-parity")
@click.option("--vars", "num", type=int, required=True, help="Variable count")
@click.option("--constraints", type=int, required=True, help="Constraint count")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--compact", is_flag=True, help="One flip pair plus Sym per constraint")
@output_option
def random_parity(num, constraints, seed, compact, output):
    """Seeded random parity theory."""
    try:
        theory = random_parity_theory(num, constraints, seed=seed)
        clauses = encode_parity_theory(theory, num, compact=compact)
    except ZapError as exc:
        raise InputError(str(exc)) from None
    comments = [f"random parity, seed {seed}"] + [str(c) for c in theory]
    _write_theory(clauses, num, comments, output)


@encode.command()
@click.argument("spec", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@output_option
def qprop(spec, output):
    """
    Universally quantified clauses from YAML.

    SPEC holds one clause (`variables`, `literals`) or a `clauses:` list of them.
    """
    try:
        with open(spec) as f:
            data = yaml.safe_load(f)
        items = data["clauses"] if isinstance(data, dict) and "clauses" in data else [data]
        quantified = [QuantifiedClause.from_dict(item) for item in items]
        encodings = encode_qprop_theory(quantified)
    except (ZapError, yaml.YAMLError, TypeError) as exc:
        raise InputError(f"{spec}: {exc}") from None
    vocab = encodings[0].vocabulary
    comments = [str(q) for q in quantified] + _names(vocab.names())
    _write_theory([e.clause for e in encodings], vocab.num_atoms, comments, output)


# -- check / resolve / group ----------------------------------------------------


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--seed", type=int, help="Tie-breaking seed for the solver runs")
@click.option("--cap", type=int, default=DEFAULT_INSTANCE_CAP, show_default=True, help="Largest ground expansion")
@click.pass_context
def check(ctx, path, seed, cap):
    """Cross-check the solver against its ground expansion and DPLL."""
    zap = _read(path)
    try:
        clauses = zap.to_augmented()
        ground = expand_theory(clauses, cap)
    except ZapError as exc:
        raise InputError(str(exc)) from None

    verdicts = {}
    augmented = rbl_solve(clauses, zap.num_vars, seed=seed)
    verdicts["rbl"] = augmented.status
    verdicts["rbl_ground"] = rbl_solve(ground, zap.num_vars, seed=seed).status
    if zap.num_vars <= DPLL_VAR_BUDGET:
        verdicts["dpll"] = dpll_solve([c.literals for c in ground], zap.num_vars).status
    else:
        click.echo(f"dpll=skipped ({zap.num_vars} variables)")

    agree = len(set(verdicts.values())) == 1
    if augmented.satisfiable and not all(c.is_satisfied_by(augmented.model) for c in ground):
        click.echo("model=invalid")
        agree = False
    for name, status in verdicts.items():
        click.echo(f"{name}={status}")
    click.echo(f"agree={'yes' if agree else 'no'}")
    ctx.exit(0 if agree else 1)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--witness", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Zap file whose two clauses carry the witness subgroups")
def resolve(path, witness):
    """Resolve the two clauses of PATH and print the resolvent(s) as a zap file."""
    zap = _read(path)
    if len(zap.clauses) != 2:
        raise InputError(f"{path}: expected exactly two clauses, found {len(zap.clauses)}")
    try:
        a, b = zap.to_augmented()
        results = [(resolve_augmented(a, b), "canonical resolvent")]
        if witness is not None:
            w = _read(witness)
            if len(w.clauses) != 2 or w.num_vars != zap.num_vars:
                raise InputError(f"{witness}: expected two clauses over {zap.num_vars} variables")
            h1, h2 = (ac.group for ac in w.to_augmented())
            given = ResolventWitness(h1, h2)
            resolvent = resolve_augmented(a, b, given)
            verdict = "ok" if check_resolvent(resolvent, a, b, given) else "failed"
            results.append((resolvent, f"witness resolvent, check {verdict}"))
    except ZapError as exc:
        raise InputError(str(exc)) from None

    comments = []
    for resolvent, label in results:
        comments.append(f"clause {len(comments) + 1}: {label}, group order {resolvent.group.order()}")
    click.echo(write_zap(ZapFile.from_augmented([r for r, _ in results], zap.num_vars, comments)), nl=False)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--cap", type=int, default=DEFAULT_INSTANCE_CAP, show_default=True, help="Largest instance count to report")
def group(path, cap):
    """Print order, generators and orbit partition of each clause's group."""
    zap = _read(path)
    try:
        clauses = zap.to_augmented()
    except ZapError as exc:
        raise InputError(str(exc)) from None
    reports = []
    for ac in clauses:
        G = ac.group
        orbits = sorted((sorted(o, key=_lit_key) for o in G.orbits() if len(o) > 1), key=lambda o: _lit_key(o[0]))
        try:
            instances = str(len(ac.instances(cap)))
        except TooManyInstances:
            instances = f">{cap}"
        reports.append({
            "base": ac.base,
            "order": G.order(),
            "generators": [format_cycles(g) for g in G.generators],
            "instances": instances,
            "fixed": sum(1 for o in G.orbits() if len(o) == 1),
            "orbits": orbits,
        })
    click.echo(render("group_report.j2", clauses=reports), nl=False)


if __name__ == "__main__":
    main()

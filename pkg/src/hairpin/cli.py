"""Command line front end (``hairpin``)."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from hairpin import harness
from hairpin.hairpin_ops import InvalidStep, Semantics, SubstringState, format_steps, parse_steps, replay_path
from hairpin.lift4 import lift
from hairpin.reduction import build_reduction
from hairpin.solver import BUDGET_ENV, BudgetExceeded, PruneWindow, hdd
from hairpin.strand import ParseError, format_strand_text, parse_strand_text

SEMANTICS = click.option(
    "--semantics",
    type=click.Choice([s.value for s in Semantics]),
    default=Semantics.MODIFIED.value,
    show_default=True,
    help="Deletion semantics.",
)
MAX_STATES = click.option(
    "--max-states",
    type=int,
    default=None,
    help=f"Per-solve budget of expanded states (default: ${BUDGET_ENV} or 200000000).",
)
TIMEOUT = click.option("--timeout", type=float, default=None, help="Per-solve wall-clock ceiling in seconds.")


def _read_strand(path: str):
    try:
        return parse_strand_text(Path(path).read_text())
    except (OSError, ParseError) as exc:
        raise click.ClickException(str(exc)) from exc


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


@click.group()
def main() -> None:
    """Exact hairpin deletion distances and the LCS reduction."""


@main.command()
@click.argument("S", default="")
@click.argument("T", default="")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True,
              help="Directory receiving x.txt, y.txt and instance.json.")
def reduce(s: str, t: str, out: str) -> None:
    """Build x and y for ternary strings S and T."""
    try:
        inst = build_reduction(s, t)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    (d / "x.txt").write_text(format_strand_text(inst.x))
    (d / "y.txt").write_text(format_strand_text(inst.y))
    (d / "instance.json").write_text(inst.sidecar_json())
    click.echo(json.dumps({"len_x": len(inst.x), "len_y": len(inst.y),
                           "predicted_hdd": inst.sidecar()["predicted_hdd"]}))


@main.command()
@click.argument("x_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("y_file", type=click.Path(exists=True, dir_okay=False))
@SEMANTICS
@MAX_STATES
@TIMEOUT
@click.option("--window", nargs=2, type=int, default=None, metavar="I_MAX J_MIN",
              help="Only search states with i <= I_MAX and j >= J_MIN.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the witness here, one 'L <len>' / 'R <len>' step per line.")
def solve(x_file, y_file, semantics, max_states, timeout, window, out) -> None:
    """Print the deletion distance from X to Y as JSON."""
    x, y = _read_strand(x_file), _read_strand(y_file)
    if x.alphabet != y.alphabet:
        raise click.ClickException("x and y use different alphabets")
    win = PruneWindow(*window) if window else None
    try:
        res = hdd(x, y, Semantics(semantics), win, max_states, timeout)
    except BudgetExceeded as exc:
        click.echo(json.dumps({"error": str(exc), **exc.partial.to_json()}))
        sys.exit(2)
    click.echo(json.dumps(res.to_json()))
    if out and res.witness is not None:
        Path(out).write_text(format_steps(res.witness.steps))


@main.command()
@click.argument("x_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("witness_file", type=click.Path(exists=True, dir_okay=False))
@SEMANTICS
@click.option("--start", nargs=2, type=int, default=None, metavar="I J",
              help="Start state (default: the whole strand).")
def replay(x_file, witness_file, semantics, start) -> None:
    """Replay a witness on X and print the final state and substring."""
    x = _read_strand(x_file)
    try:
        steps = parse_steps(Path(witness_file).read_text())
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    st = SubstringState(*start) if start else SubstringState(1, len(x))
    try:
        end = replay_path(x, st, steps, Semantics(semantics))
    except (InvalidStep, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(json.dumps({"i": end.i, "j": end.j, "steps": len(steps), "result": str(x.sub(end.i, end.j))}))


@main.command()
@click.option("--exhaustive", nargs=2, type=int, default=None, metavar="LS LT",
              help="Every pair with |S| <= LS and |T| <= LT.")
@click.option("--random", "rand", nargs=2, type=int, default=None, metavar="COUNT MAX_LEN",
              help="COUNT seeded random pairs with lengths up to MAX_LEN.")
@click.option("--min-len", type=int, default=0, show_default=True, help="Minimum length for --random.")
@click.option("--seed", type=int, default=0, show_default=True)
@MAX_STATES
@TIMEOUT
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON Lines output (default stdout).")
@click.option("--no-timing", is_flag=True, help="Omit wall-clock fields for byte-stable output.")
def verify(exhaustive, rand, min_len, seed, max_states, timeout, workers, out, no_timing) -> None:
    """Check the closed-form distance on a grid of reductions.

    Exit status is 1 if any instance mismatches and 2 if some instance ran
    out of budget without any mismatch.
    """
    if (exhaustive is None) == (rand is None):
        raise click.UsageError("give exactly one of --exhaustive or --random")
    pairs = harness.exhaustive_grid(*exhaustive) if exhaustive else \
        harness.random_grid(rand[0], rand[1], seed, min_len)
    sink = open(out, "w") if out and out != "-" else None
    bad = budget = 0
    try:
        for rec in harness.run_verification(pairs, max_states, timeout, seed, workers):
            line = rec.to_json(timing=not no_timing) + "\n"
            if sink:
                sink.write(line)
            else:
                click.echo(line, nl=False)
            bad += rec.status == "mismatch"
            budget += rec.status == "budget"
    finally:
        if sink:
            sink.close()
    click.echo(f"{len(pairs)} instances, {bad} mismatches, {budget} over budget", err=True)
    sys.exit(1 if bad else 2 if budget else 0)


@main.command()
@MAX_STATES
def lemmas(max_states) -> None:
    """Solver checks of every closed-form cost, one PASS/FAIL line each."""
    failed = 0
    for group, checks in harness.all_lemma_checks(max_states):
        click.echo(f"# {group}")
        for c in checks:
            click.echo(c.line())
            failed += not c.passed
    click.echo(f"{failed} failed", err=True)
    sys.exit(1 if failed else 0)


def _size(value: str) -> tuple[int, int]:
    try:
        a, b = value.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise click.BadParameter(f"expected LSxLT, got {value!r}") from None


@main.command()
@click.option("--size", "sizes", multiple=True, default=("1x1", "2x2", "3x3"), show_default=True,
              help="Instance shape |S|x|T|; repeatable.")
@click.option("--repetitions", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@MAX_STATES
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV output (default stdout).")
@click.option("--no-timing", is_flag=True, help="Omit the wall-clock column for byte-stable output.")
def bench(sizes, repetitions, seed, max_states, out, no_timing) -> None:
    """Time the windowed solver on random reductions and write CSV."""
    pairs = harness.bench_instances([_size(s) for s in sizes], repetitions, seed)
    try:
        records = harness.run_bench(pairs, max_states)
    except BudgetExceeded as exc:
        raise click.ClickException(str(exc)) from exc
    _write(out, harness.bench_csv(records, timing=not no_timing))


@main.command("lift")
@click.argument("in_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output strand file (default stdout).")
def lift_cmd(in_file, out) -> None:
    """Lift a binary strand to the 4-symbol alphabet."""
    s = _read_strand(in_file)
    try:
        res = lift(s)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    _write(out, f"# mid={res.mid}\n" + format_strand_text(res.lifted))


if __name__ == "__main__":
    main()

# sidorenko_toolkit.py
# Command-line front end: counts, Sidorenko checks, lemma audits and corpus searches.

import click
import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from src.config import DEFAULT_MAX_EVALUATIONS, GUARD_ENVVARS
from src.errors import InstanceTooLargeError, ParseError, UnsupportedSizeError
from src.report import summary_table, write_report
from src.runner import (
    COMMANDS,
    EXIT_GUARD,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    RunConfig,
    run,
)


class ToolkitCommand(click.Command):
    """Click command whose usage errors exit with status 1 rather than 2."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            status = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(status or EXIT_OK)


def exit_status_for(exc):
    """Exit status for an error raised while loading or evaluating instances."""
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (InstanceTooLargeError, UnsupportedSizeError)):
        return EXIT_GUARD
    return EXIT_USAGE


@click.command(cls=ToolkitCommand)
@click.argument('command', type=click.Choice(COMMANDS))
@click.option('--h-graph6', type=str, help="Pattern graph H as a graph6 string")
@click.option('--g-graph6', type=str, help="Target graph G as a graph6 string")
@click.option('--h-file', type=click.Path(dir_okay=False), help="File holding the pattern graph(s) H")
@click.option('--g-file', type=click.Path(dir_okay=False), multiple=True, help="Graph6 stream or edge-list file of target graphs")
@click.option('--n', type=int, help="Target vertex count for the dependent-random-choice audit")
@click.option('--k', type=int, help="Also report per-vertex deficient tuple counts at this tuple length")
@click.option('--r', type=int, help="Highest tensor power to follow for the apex theorem")
@click.option('--max-vertices', type=int, help="Largest apex graph enumerated by search")
@click.option('--random', 'random_spec', type=str, help="Seeded random corpus N,P_NUM/P_DEN,COUNT")
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=0, help="Random seed")
@click.option('--sample-count', type=int, help="Monte Carlo samples per anchor for embed-verify")
@click.option('--guard', type=int, envvar=GUARD_ENVVARS, default=DEFAULT_MAX_EVALUATIONS, show_default=True,
              help="Largest number of map evaluations or search nodes per instance")
@click.option('--out', type=click.Path(dir_okay=False), help="Write the report here instead of stdout")
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default='json', help="Report format")
@click.option('--strict', is_flag=True, help="Stop at the first lemma violation")
@click.option('--no-timestamp', is_flag=True, help="Leave the timestamp out of the report")
@click.option('--jobs', type=int, default=1, help="Worker processes (-1 for all cores)")
def main(command, h_graph6, g_graph6, h_file, g_file, n, k, r, max_vertices, random_spec, seed,
         sample_count, guard, out, fmt, strict, no_timestamp, jobs):
    '''Runs COMMAND on every (H, G) instance and writes an exact report.'''
    config = RunConfig(
        command=command,
        h_graph6=h_graph6,
        g_graph6=g_graph6,
        h_file=h_file,
        g_files=tuple(g_file),
        n=n,
        k=k,
        r=r,
        max_vertices=max_vertices,
        random=random_spec,
        seed=seed,
        sample_count=sample_count,
        guard=guard,
        out=out,
        fmt=fmt,
        strict=strict,
        timestamp=not no_timestamp,
        jobs=jobs,
    )

    try:
        outcome = run(config)
        text = write_report(outcome.envelope, out, fmt)
    except (ValueError, OSError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return exit_status_for(exc)

    if not out:
        click.echo(text, nl=False)
    else:
        click.echo(f"Report written to {out}", err=True)

    min_slack = outcome.envelope["summary"].get("min_slack_by_h")
    if command == "search" and min_slack:
        click.echo(summary_table(min_slack), err=True)
    return outcome.status


if __name__ == '__main__':
    main()

# make_corpus.py
# Writes graph6 corpora: every small graph from the atlas, seeded random graphs,
# and every apex bipartite graph up to a size.

import click
import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from src.graph_core import all_graphs, emit_graph6
from src.hom_count import enumerate_apex_bipartite
from src.runner import parse_random_spec, random_corpus


def write_stream(graphs, path):
    """Write ``graphs`` to ``path`` as a graph6 stream, one per line."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="ascii") as f:
        for G in graphs:
            f.write(emit_graph6(G) + "\n")
    click.echo(f"Wrote {len(graphs)} graphs to {path}", err=True)


@click.command()
@click.option('--max-vertices', type=click.IntRange(1, 7), help="Largest atlas graph to include")
@click.option('--min-vertices', type=click.IntRange(1, 7), default=1, help="Smallest atlas graph to include")
@click.option('--random', 'random_specs', type=str, multiple=True, help="Random block N,P_NUM/P_DEN,COUNT (repeatable)")
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=0, help="Random seed for the first block")
@click.option('--apex-max-vertices', type=click.IntRange(2, 8), help="Also write every apex bipartite H up to this size")
@click.option('--write-to', type=str, help="Directory where the corpora will be written", required=True)
def main(max_vertices, min_vertices, random_specs, seed, apex_max_vertices, write_to):
    '''Builds the graph corpora consumed by sidorenko_toolkit.py.'''
    os.makedirs(write_to, exist_ok=True)

    if max_vertices is not None:
        write_stream(all_graphs(max_vertices, min_vertices), os.path.join(write_to, f"atlas_{min_vertices}_{max_vertices}.g6"))

    # Each block continues the seed sequence where the previous block stopped.
    offset = seed
    graphs = []
    for spec in random_specs:
        N, p, count = parse_random_spec(spec)
        graphs.extend(random_corpus(N, p, count, offset))
        offset = (offset + count) % 2**64
    if graphs:
        write_stream(graphs, os.path.join(write_to, f"random_seed{seed}.g6"))

    if apex_max_vertices is not None:
        apex = [H.as_graph() for H in enumerate_apex_bipartite(apex_max_vertices)]
        write_stream(apex, os.path.join(write_to, f"apex_{apex_max_vertices}.g6"))


if __name__ == '__main__':
    main()

import os

# Command 1: Build the graph corpora
command_1 = """
python scripts/make_corpus.py \
  --max-vertices 6 \
  --random "8,1/2,50" \
  --random "10,1/2,150" \
  --seed 2024 \
  --write-to "data/corpus"
"""

# Command 2: Small patterns for the tensor sweep and 500 random graphs on at most 8 vertices
command_2 = """
python scripts/make_corpus.py \
  --max-vertices 4 \
  --random "6,1/2,150" \
  --random "7,1/2,150" \
  --random "8,1/2,200" \
  --seed 8 \
  --write-to "data/corpus"
"""

# Command 3: Sweep every apex H on at most 6 vertices over the small-graph corpus
command_3 = """
python scripts/sidorenko_toolkit.py search \
  --max-vertices 6 \
  --g-file "data/corpus/atlas_1_6.g6" \
  --no-timestamp \
  --jobs -1 \
  --out "results/search_atlas.json"
"""

# Command 4: Same sweep over the random corpus
command_4 = """
python scripts/sidorenko_toolkit.py search \
  --max-vertices 6 \
  --g-file "data/corpus/random_seed2024.g6" \
  --no-timestamp \
  --jobs -1 \
  --out "results/search_random.json"
"""

# Commands 5-8: Dependent-random-choice audit of the small and random graphs for n = 1..4
drc_commands = [
    f"""
python scripts/sidorenko_toolkit.py drc \
  --n {n} \
  --g-file "data/corpus/atlas_1_6.g6" \
  --g-file "data/corpus/random_seed8.g6" \
  --no-timestamp \
  --jobs -1 \
  --format csv \
  --out "results/drc_n{n}.csv"
"""
    for n in range(1, 5)
]

# Command 9: Apex lower bound for C4 on random graphs
command_9 = """
python scripts/sidorenko_toolkit.py embed-verify \
  --h-graph6 "Cr" \
  --random "8,1/2,20" \
  --seed 7 \
  --sample-count 10000 \
  --no-timestamp \
  --out "results/embed_c4.json"
"""

# Command 10: Tensor multiplicativity for every pattern on at most 4 vertices
command_10 = """
python scripts/sidorenko_toolkit.py tensor \
  --h-file "data/corpus/atlas_1_4.g6" \
  --random "4,1/2,20" \
  --seed 11 \
  --no-timestamp \
  --jobs -1 \
  --out "results/tensor_small.json"
"""

# Command 11: Tensor powers for the path on three vertices
command_11 = """
python scripts/sidorenko_toolkit.py tensor \
  --h-graph6 "Bg" \
  --random "4,1/2,6" \
  --r 2 \
  --no-timestamp \
  --out "results/tensor_p3.json"
"""

# Execute all commands
commands = [command_1, command_2, command_3, command_4, *drc_commands, command_9, command_10, command_11]

for i, cmd in enumerate(commands, 1):
    print(f"Running Command {i}...")
    result = os.system(cmd)
    if result != 0:
        print(f"Error occurred while running Command {i}. Exiting...")
        exit(1)
    print(f"Command {i} executed successfully.\n")

#!/usr/bin/env python3
"""Random-instance sweep: set-splitting answers vs. gadget square roots.

For each sampled valid instance, decide it by brute force, build the
gadget graph, run the square-root solver, and require the two verdicts to
match.  On YES instances the constructed root and the extracted partition
are verified as well.  Prints one line per instance and a summary table.
"""

import argparse
import random
import sys
import time

from sqroot import (
    SetSplitInstance,
    SolveConfig,
    partition_to_root,
    root_to_partition,
    setsplit_to_graph,
    solve_setsplit_bruteforce,
    solve_square_root,
    validate_instance,
    verify_partition,
    verify_square_root,
)


def random_valid_instance(rng, max_elements, max_subsets):
    while True:
        n = rng.randint(3, max_elements)
        k = rng.randint(1, max_subsets)
        elements = [f"e{i}" for i in range(n)]
        collection = tuple(
            tuple(sorted(rng.sample(elements, rng.randint(3, min(n, 4)))))
            for _ in range(k)
        )
        inst = SetSplitInstance(tuple(elements), collection)
        if not validate_instance(inst):
            return inst


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=100)
    parser.add_argument("--max-elements", type=int, default=6)
    parser.add_argument("--max-subsets", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget-nodes", type=int, default=SolveConfig().budget_nodes)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    stats = {"yes": 0, "no": 0, "mismatch": 0, "inconclusive": 0}
    total_nodes = 0
    t_start = time.perf_counter()

    for idx in range(args.instances):
        inst = random_valid_instance(rng, args.max_elements, args.max_subsets)
        witness = solve_setsplit_bruteforce(inst)
        gg = setsplit_to_graph(inst)
        outcome = solve_square_root(gg.graph, SolveConfig(args.budget_nodes))
        total_nodes += outcome.nodes_explored

        if outcome.kind == "inconclusive":
            verdict = "INCONCLUSIVE"
            stats["inconclusive"] += 1
        elif (witness is not None) != (outcome.kind == "root"):
            verdict = "MISMATCH"
            stats["mismatch"] += 1
        elif witness is not None:
            built = partition_to_root(gg, witness)
            extracted = root_to_partition(gg, outcome.root)
            assert verify_square_root(built, gg.graph)
            assert verify_partition(inst, extracted)
            verdict = "yes"
            stats["yes"] += 1
        else:
            verdict = "no"
            stats["no"] += 1

        print(
            f"[{idx:4d}] |S|={len(inst.ground_set)} |C|={len(inst.collection)} "
            f"gadget n={gg.graph.n} m={gg.graph.m} nodes={outcome.nodes_explored} "
            f"-> {verdict}"
        )

    elapsed = time.perf_counter() - t_start
    print()
    print(f"instances    {args.instances}")
    print(f"yes          {stats['yes']}")
    print(f"no           {stats['no']}")
    print(f"mismatch     {stats['mismatch']}")
    print(f"inconclusive {stats['inconclusive']}")
    print(f"total nodes  {total_nodes}")
    print(f"elapsed      {elapsed:.2f}s")
    return 1 if stats["mismatch"] or stats["inconclusive"] else 0


if __name__ == "__main__":
    sys.exit(main())

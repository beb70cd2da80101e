"""Time the compiled and pure-Python kernels on tree-ideal complexes.

    python benchmarks/bench_kernels.py [--max-vertices 9] [--repeat 3]

Inputs are the complexes of tree ideals of path and star trees, whose
facets are bitmasks over 2|E| variables.
"""

import argparse
import timeit

from stacked_sr import graph_core as gc
from stacked_sr import tree_ideal as ti
from stacked_sr.kernels import implementations


def workloads(n):
    for shape, tree in (("path", gc.path_tree(n)), ("star", gc.star_tree(n))):
        x = ti.tree_complex(gc.DirectedTree(tree))
        facets = list(x.facet_masks)
        full = (1 << len(x.ground)) - 1
        complements = [full & ~m for m in facets]
        pairs = [1 << (2 * i) | 1 << (2 * i + 1) for i in range(len(tree.edge_ids))]
        yield f"{shape}{n}", {
            "minimal_transversals": lambda k, c=complements: k.minimal_transversals(c),
            "all_faces": lambda k, f=facets: k.all_faces(f),
            "face_counts": lambda k, f=facets: k.face_counts(f),
            "cuts_squarefree": lambda k, f=facets: [
                k.cuts_squarefree(f, 1 << i, 1 << j)
                for i in range(len(x.ground)) for j in range(i)
            ],
            "forest_criterion": lambda k, f=facets, p=pairs: k.forest_criterion(f, p),
        }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-vertices", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = implementations()
    if "cython" not in impls:
        print("compiled kernels not built; timing the Python kernels only")
    names = sorted(impls)
    print(f"{'input':10s} {'kernel':22s} " + " ".join(f"{n:>10s}" for n in names) + "   speedup")
    for n in range(4, args.max_vertices + 1):
        for label, ops in workloads(n):
            for op, call in ops.items():
                results, times = {}, {}
                for name in names:
                    k = impls[name]
                    results[name] = call(k)
                    times[name] = min(timeit.repeat(lambda: call(k), number=1, repeat=args.repeat))
                if len({repr(r) for r in results.values()}) != 1:
                    raise SystemExit(f"kernels disagree on {op} for {label}")
                row = " ".join(f"{times[name] * 1e3:9.2f}ms" for name in names)
                ratio = times["python"] / times["cython"] if "cython" in times else 1.0
                print(f"{label:10s} {op:22s} {row}   {ratio:6.1f}x")


if __name__ == "__main__":
    main()

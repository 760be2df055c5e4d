#!/usr/bin/env python3
"""Regenerate the graph6 corpora under corpus/.

Requires networkx and pynauty. Output is canonically labelled and sorted, so
reruns are byte-identical.

    python3 scripts/gen_corpus.py
"""
import os
import random

import networkx as nx
import pynauty

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")


def to_nauty(g):
    n = g.number_of_nodes()
    adj = {v: sorted(g.neighbors(v)) for v in range(n)}
    return pynauty.Graph(n, adjacency_dict=adj)


def canonical(g):
    lab = pynauty.canon_label(to_nauty(g))
    # canon_label gives the vertex placed at each new position
    inv = {old: new for new, old in enumerate(lab)}
    h = nx.Graph()
    h.add_nodes_from(range(g.number_of_nodes()))
    h.add_edges_from((inv[u], inv[v]) for u, v in g.edges())
    return h


def g6(g):
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def all_graphs(max_n):
    levels = {1: [nx.empty_graph(1)]}
    for n in range(2, max_n + 1):
        seen = {}
        for base in levels[n - 1]:
            for mask in range(1 << (n - 1)):
                h = base.copy()
                h.add_node(n - 1)
                h.add_edges_from((i, n - 1) for i in range(n - 1) if mask >> i & 1)
                cert = pynauty.certificate(to_nauty(h))
                if cert not in seen:
                    seen[cert] = canonical(h)
        levels[n] = list(seen.values())
    return levels


def write(name, lines):
    with open(os.path.join(OUT, name), "w") as f:
        for line in lines:
            f.write(line + "\n")


def main():
    levels = all_graphs(8)
    for n, graphs in levels.items():
        conn = sorted(g6(g) for g in graphs if nx.is_connected(g))
        write(f"connected_n{n}.g6", conn)
        print(f"n={n}: {len(graphs)} graphs, {len(conn)} connected")

    for n in range(1, 13):
        trees = [nx.empty_graph(1)] if n == 1 else list(nx.nonisomorphic_trees(n))
        write(f"trees_n{n}.g6", sorted(g6(canonical(t)) for t in trees))
        print(f"trees n={n}: {len(trees)}")

    # Reference encodings from an independent encoder (networkx).
    rng = random.Random(20190917)
    rows = []
    sizes = list(range(0, 51)) + [62, 63, 64, 100, 258, 300]
    for n in sizes:
        for p in (0.0, 0.2, 0.5, 1.0) if n <= 50 else (0.3,):
            g = nx.gnp_random_graph(n, p, seed=rng.randrange(1 << 30))
            edges = ";".join(f"{u}-{v}" for u, v in sorted(tuple(sorted(e)) for e in g.edges()))
            rows.append(f"{n}\t{edges}\t{g6(g)}")
    write("graph6_reference.tsv", rows)
    print(f"reference rows: {len(rows)}")


if __name__ == "__main__":
    main()

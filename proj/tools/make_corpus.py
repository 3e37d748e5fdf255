#!/usr/bin/env python3
"""Writes graph6 corpora of all connected unlabeled graphs on 2..7 vertices.

Usage: make_corpus.py OUTDIR
Produces connected_n2_6.g6 (143 graphs) and connected_n7.g6 (853 graphs).
"""
import sys
from pathlib import Path

import networkx as nx


def main() -> int:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    out.mkdir(parents=True, exist_ok=True)
    small, seven = [], []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < 2 or not nx.is_connected(g):
            continue
        line = nx.to_graph6_bytes(g, header=False).decode().strip()
        (seven if n == 7 else small).append(line)
    (out / "connected_n2_6.g6").write_text("\n".join(small) + "\n")
    (out / "connected_n7.g6").write_text("\n".join(seven) + "\n")
    print(len(small), len(seven))
    return 0


if __name__ == "__main__":
    sys.exit(main())

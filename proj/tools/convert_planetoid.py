# Copyright 2026 The amgae Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convert Planetoid citation data (ind.<name>.* pickles) to the amgae layout.

Usage:
    python3 convert_planetoid.py --raw planetoid/data --name cora --out data/cora

Writes edges.tsv, attributes.txt (sparse, binary bag-of-words) and labels.tsv.
Test nodes are reordered by ind.<name>.test.index. In Citeseer some test
indices are missing; those nodes get zero features and class 0, which keeps
the published node count of 3327.
"""

import argparse
import pathlib
import pickle
import sys

import numpy as np
import scipy.sparse as sp


def load_part(raw, name, part):
    path = raw / f"ind.{name}.{part}"
    with open(path, "rb") as f:
        if part == "test.index":
            return [int(line) for line in f.read().decode().split()]
        return pickle.load(f, encoding="latin1")


def assemble(raw, name):
    x, y, tx, ty, allx, ally, graph = (
        load_part(raw, name, p) for p in ("x", "y", "tx", "ty", "allx", "ally", "graph"))
    test_index = load_part(raw, name, "test.index")
    test_sorted = np.sort(test_index)

    lo, hi = int(test_sorted[0]), int(test_sorted[-1])
    if hi - lo + 1 != len(test_index):
        # Pad the test block so every index in [lo, hi] has a row.
        tx_full = sp.lil_matrix((hi - lo + 1, tx.shape[1]))
        tx_full[test_sorted - lo, :] = tx
        ty_full = np.zeros((hi - lo + 1, ty.shape[1]))
        ty_full[test_sorted - lo, :] = ty
        tx, ty = tx_full, ty_full

    features = sp.vstack((allx, tx)).tolil()
    features[test_index, :] = features[test_sorted, :]
    labels = np.vstack((ally, ty))
    labels[test_index, :] = labels[test_sorted, :]

    n = features.shape[0]
    edges = set()
    for src, dsts in graph.items():
        for dst in dsts:
            if src != dst and src < n and dst < n:
                edges.add((min(src, dst), max(src, dst)))
    return features.tocsr(), labels.argmax(axis=1), sorted(edges)


def write(out, features, labels, edges):
    out.mkdir(parents=True, exist_ok=True)
    n, d = features.shape
    with open(out / "edges.tsv", "w") as f:
        f.writelines(f"{a}\t{b}\n" for a, b in edges)
    with open(out / "attributes.txt", "w") as f:
        f.write(f"# num_nodes={n} num_dims={d}\n")
        for i in range(n):
            row = features.getrow(i)
            cols = sorted(zip(row.indices, row.data))
            f.write(f"{i}\t" + ",".join(f"{j}:{v:g}" for j, v in cols) + "\n")
    with open(out / "labels.tsv", "w") as f:
        f.write(f"# num_classes={int(labels.max()) + 1}\n")
        f.writelines(f"{i}\t{c}\n" for i, c in enumerate(labels))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--raw", type=pathlib.Path, required=True,
                        help="directory with the ind.<name>.* files")
    parser.add_argument("--name", required=True, help="cora, citeseer or pubmed")
    parser.add_argument("--out", type=pathlib.Path, required=True)
    args = parser.parse_args(argv)
    features, labels, edges = assemble(args.raw, args.name)
    write(args.out, features, labels, edges)
    print(f"{args.out}: {features.shape[0]} nodes, {len(edges)} edges, "
          f"{features.shape[1]} dims, {int(labels.max()) + 1} classes", file=sys.stderr)


if __name__ == "__main__":
    main()

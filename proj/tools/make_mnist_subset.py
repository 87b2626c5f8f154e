#!/usr/bin/env python3
"""Build a small MNIST split in IDX format from the 5000-sample CSV that ships
with mlxtend (mlxtend/data/data/mnist_5k.csv.gz).

The CSV is grouped by class, so the rows are shuffled with a fixed seed before
being split into a training prefix and a test suffix. Output files are gzipped
IDX files with the standard MNIST magic numbers.

    python3 tools/make_mnist_subset.py path/to/mnist_5k.csv.gz data/mnist5k
"""

import argparse
import gzip
import pathlib
import struct

import numpy as np


def write_images(path, images):
    n, rows, cols = images.shape
    with gzip.GzipFile(path, "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, n, rows, cols))
        f.write(images.astype(np.uint8).tobytes())


def write_labels(path, labels):
    with gzip.GzipFile(path, "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(labels.astype(np.uint8).tobytes())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv")
    parser.add_argument("out_dir")
    parser.add_argument("--train", type=int, default=4000)
    parser.add_argument("--seed", type=int, default=20240607)
    args = parser.parse_args()

    table = np.loadtxt(args.csv, delimiter=",")
    pixels = table[:, :-1].astype(np.uint8).reshape(-1, 28, 28)
    labels = table[:, -1].astype(np.uint8)

    order = np.random.RandomState(args.seed).permutation(len(labels))
    pixels, labels = pixels[order], labels[order]

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t = args.train
    write_images(out / "train-images-idx3-ubyte.gz", pixels[:t])
    write_labels(out / "train-labels-idx1-ubyte.gz", labels[:t])
    write_images(out / "test-images-idx3-ubyte.gz", pixels[t:])
    write_labels(out / "test-labels-idx1-ubyte.gz", labels[t:])
    print(f"wrote {t} training and {len(labels) - t} test images to {out}")


if __name__ == "__main__":
    main()

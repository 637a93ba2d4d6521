#!/usr/bin/env python3
"""Convert the per-class JSON dump shipped by the `fashion-mnist` npm package
into IDX files (train/test split per class: first N for training, rest test).

usage: fmnist_json_to_idx.py <clothes_dir> <out_dir> [--train-per-class 6000]
"""
import argparse
import json
import pathlib
import struct


def write_idx_images(path, images, rows, cols):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), rows, cols))
        for img in images:
            f.write(bytes(img))


def write_idx_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("clothes_dir")
    ap.add_argument("out_dir")
    ap.add_argument("--train-per-class", type=int, default=6000)
    args = ap.parse_args()

    src = pathlib.Path(args.clothes_dir)
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    train, test = [], []
    for label in range(10):
        data = json.loads((src / f"{label}.json").read_text())["data"]
        kept = [img for img in data if len(img) == 28 * 28]
        if len(kept) != len(data):
            print(f"class {label}: skipped {len(data) - len(kept)} malformed records")
        for i, img in enumerate(kept):
            (train if i < args.train_per_class else test).append((label, img))

    # interleave classes so the files are not sorted by label
    def interleave(items):
        by_class = [[x for x in items if x[0] == c] for c in range(10)]
        result = []
        for i in range(max(len(b) for b in by_class)):
            for b in by_class:
                if i < len(b):
                    result.append(b[i])
        return result

    for name, items in (("train", interleave(train)), ("t10k", interleave(test))):
        write_idx_images(out / f"{name}-images-idx3-ubyte", [x[1] for x in items], 28, 28)
        write_idx_labels(out / f"{name}-labels-idx1-ubyte", [x[0] for x in items])
        print(f"{name}: {len(items)} images")


if __name__ == "__main__":
    main()

"""Convert labeled CSV datasets into the points/labels pair the tools expect.

Most UCI-style downloads are a single delimited file with the class in
the first or last column, sometimes split across train and test files.
This strips the label column, concatenates the inputs in the order
given, and writes <prefix>.csv (features, one row per point) next to
<prefix>.labels (one integer per line, classes remapped to 0..C-1 in
order of first appearance, so letter classes work too).

Examples:
    python3 demos/prepare_uci.py pendigits.tra pendigits.tes \\
        --label-col last --out data/pendigits
    python3 demos/prepare_uci.py letter-recognition.data \\
        --label-col first --out data/letters
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from propclust import save_labels


def read_rows(path, delimiter, skip_header):
    rows = []
    with open(path, encoding="utf-8") as f:
        for _ in range(skip_header):
            next(f, None)
        for line_no, line in enumerate(f, start=skip_header + 1):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(delimiter)]
            if len(parts) < 2:
                raise SystemExit(f"{path} line {line_no}: need features and a label")
            rows.append(parts)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inputs", nargs="+", help="raw delimited files, concatenated in order")
    ap.add_argument("--out", required=True, help="output prefix, writes <out>.csv and <out>.labels")
    ap.add_argument("--label-col", choices=("first", "last"), default="last")
    ap.add_argument("--delimiter", default=",")
    ap.add_argument("--skip-header", type=int, default=0, metavar="N",
                    help="lines to drop from the top of every input")
    args = ap.parse_args(argv)

    rows = []
    for p in args.inputs:
        rows.extend(read_rows(p, args.delimiter, args.skip_header))
    if not rows:
        raise SystemExit("no data rows found")
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise SystemExit(f"ragged input: expected {width} columns, saw {len(r)}")

    if args.label_col == "first":
        raw_labels = [r[0] for r in rows]
        feats = [r[1:] for r in rows]
    else:
        raw_labels = [r[-1] for r in rows]
        feats = [r[:-1] for r in rows]

    seen = {}
    labels = np.array([seen.setdefault(v, len(seen)) for v in raw_labels], dtype=np.int64)
    points = np.array(feats, dtype=np.float32)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(f"{out}.csv", points, delimiter=",", fmt="%.9g")
    save_labels(labels, f"{out}.labels")
    print(f"{out}.csv: {points.shape[0]} points x {points.shape[1]} features")
    print(f"{out}.labels: {len(seen)} classes")
    return 0


if __name__ == "__main__":
    sys.exit(main())

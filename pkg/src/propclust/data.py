"""Point-set container and file loaders.

Three on-disk formats are understood:

    csv        one point per row, comma-separated numbers, optional single
               header line (detected: any non-numeric token in line 1)
    idx_ubyte  big-endian idx format: magic 0x00000803, dims (n, rows, cols),
               uint8 payload; images are flattened to d = rows * cols
    fvecs      little-endian records of int32 dim followed by dim float32s

Label files are either idx (magic 0x00000801) or text with one integer per
line.  Labels are always remapped to 0..C-1 in first-occurrence order.
"""

import struct
from dataclasses import dataclass, field

import numpy as np

FORMATS = ("csv", "idx_ubyte", "fvecs")


@dataclass
class PointSet:
    """n points in d dimensions, float32 rows, optionally with true labels."""

    points: np.ndarray
    name: str = ""
    true_labels: np.ndarray | None = None

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float32)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"points must be a nonempty 2-d array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain non-finite values")
        pts.flags.writeable = False
        self.points = pts
        if self.true_labels is not None:
            lab = np.asarray(self.true_labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise ValueError(
                    f"true_labels length {lab.shape} does not match n={pts.shape[0]}"
                )
            lab.flags.writeable = False
            self.true_labels = lab

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]


def load_points(path, fmt="csv", name=None):
    """Read a point file in the given format into a PointSet."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "csv":
        pts = _read_csv(path)
    elif fmt == "idx_ubyte":
        pts = _read_idx_images(path)
    else:
        pts = _read_fvecs(path)
    return PointSet(pts, name=name if name is not None else str(path))


def _read_csv(path):
    rows = []
    d = None
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = line.split(",")
            try:
                vals = [float(t) for t in tokens]
            except ValueError:
                if lineno == 1:
                    continue  # header line
                raise ValueError(f"{path}: line {lineno}: non-numeric value") from None
            if d is None:
                d = len(vals)
            elif len(vals) != d:
                raise ValueError(
                    f"{path}: line {lineno}: expected {d} values, got {len(vals)}"
                )
            for v in vals:
                if not np.isfinite(v):
                    raise ValueError(f"{path}: line {lineno}: non-finite value")
            rows.append(vals)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return np.asarray(rows, dtype=np.float32)


_IDX_IMAGES = 0x00000803
_IDX_LABELS = 0x00000801


def _read_idx_images(path):
    with open(path, "rb") as f:
        head = f.read(16)
        if len(head) < 16:
            raise ValueError(f"{path}: truncated idx header")
        magic, n, rows, cols = struct.unpack(">IIII", head)
        if magic != _IDX_IMAGES:
            raise ValueError(f"{path}: bad idx image magic 0x{magic:08x}")
        payload = np.frombuffer(f.read(), dtype=np.uint8)
    if payload.size != n * rows * cols:
        raise ValueError(
            f"{path}: expected {n * rows * cols} bytes of pixels, got {payload.size}"
        )
    return payload.reshape(n, rows * cols).astype(np.float32)


def _read_fvecs(path):
    raw = np.fromfile(path, dtype=np.uint8)
    if raw.size < 4:
        raise ValueError(f"{path}: empty fvecs file")
    d = int(np.frombuffer(raw[:4], dtype="<i4")[0])
    if d <= 0:
        raise ValueError(f"{path}: bad fvecs dimension {d}")
    record = 4 * (d + 1)
    if raw.size % record != 0:
        raise ValueError(f"{path}: size {raw.size} not a multiple of record size {record}")
    as_int = raw.view("<i4").reshape(-1, d + 1)
    if not np.all(as_int[:, 0] == d):
        bad = int(np.argmax(as_int[:, 0] != d))
        raise ValueError(f"{path}: record {bad} has dimension {as_int[bad, 0]}, expected {d}")
    return raw.view("<f4").reshape(-1, d + 1)[:, 1:].astype(np.float32)


def load_labels(path):
    """Read integer labels (idx label file or one-int-per-line text).

    Values are remapped to 0..C-1 preserving first-occurrence order.
    """
    with open(path, "rb") as f:
        head = f.read(8)
    if len(head) == 8 and struct.unpack(">I", head[:4])[0] == _IDX_LABELS:
        with open(path, "rb") as f:
            _, n = struct.unpack(">II", f.read(8))
            payload = np.frombuffer(f.read(), dtype=np.uint8)
        if payload.size != n:
            raise ValueError(f"{path}: expected {n} labels, got {payload.size}")
        raw = payload.astype(np.int64)
    else:
        vals = []
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    vals.append(int(line))
                except ValueError:
                    raise ValueError(f"{path}: line {lineno}: not an integer") from None
        if not vals:
            raise ValueError(f"{path}: no labels")
        raw = np.asarray(vals, dtype=np.int64)
    return remap_labels(raw)


def remap_labels(raw):
    """Map arbitrary integer labels to 0..C-1 in first-occurrence order."""
    raw = np.asarray(raw, dtype=np.int64)
    mapping = {}
    out = np.empty(raw.shape[0], dtype=np.int64)
    for i, v in enumerate(raw.tolist()):
        if v not in mapping:
            mapping[v] = len(mapping)
        out[i] = mapping[v]
    return out


def save_points_csv(ps, path):
    """Write a PointSet as CSV. %.9g round-trips float32 exactly."""
    with open(path, "w", encoding="utf-8") as f:
        for row in ps.points:
            f.write(",".join("%.9g" % v for v in row))
            f.write("\n")


def save_labels(labels, path):
    with open(path, "w", encoding="utf-8") as f:
        for v in np.asarray(labels).tolist():
            f.write(f"{int(v)}\n")


def sniff_format(path):
    """Guess a point-file format from the file name."""
    s = str(path).lower()
    if s.endswith(".fvecs"):
        return "fvecs"
    if "ubyte" in s or s.endswith(".idx") or s.endswith(".idx3"):
        return "idx_ubyte"
    return "csv"

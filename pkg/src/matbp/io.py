"""On-disk formats: dataset CSV, weight files, metric CSVs and run manifests.

Numbers are written with 17 significant digits in exponent form
(``format(v, ".16e")``), which round-trips float64 exactly and does not depend
on the locale.

Weight file::

    dims=2,3,3,2
    <w_1>
    ...
    <w_p>

one value per line in weight-vector order: layer 1 first, each layer's
matrix stacked column by column (bias column last).

Manifest: one ``key=value`` pair per line.
"""

import csv
from pathlib import Path

import numpy as np

from .cost import TrainingSet, WeightVector


class FormatError(ValueError):
    """A file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, path, message, line=None):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


def fmt(v):
    return format(float(v), ".16e")


def write_dataset(path, D):
    n0, nk = D.X.shape[1], D.Y.shape[1]
    header = [f"x{i + 1}" for i in range(n0)] + [f"y{j + 1}" for j in range(nk)]
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for x, y in D:
            w.writerow([fmt(v) for v in (*x, *y)])


def read_dataset(path):
    """Read a dataset CSV with ``x1..xn`` then ``y1..ym`` columns."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise FormatError(path, "empty file", 1)
    header = [h.strip() for h in rows[0]]
    xcols = [i for i, h in enumerate(header) if h.startswith("x")]
    ycols = [i for i, h in enumerate(header) if h.startswith("y")]
    if not xcols or not ycols or len(xcols) + len(ycols) != len(header):
        raise FormatError(path, f"header must name x* then y* columns, got {header}", 1)
    X, Y = [], []
    for lineno, r in enumerate(rows[1:], start=2):
        if not r:
            continue
        if len(r) != len(header):
            raise FormatError(path, f"expected {len(header)} fields, got {len(r)}", lineno)
        try:
            vals = [float(v) for v in r]
        except ValueError as exc:
            raise FormatError(path, str(exc), lineno) from None
        if not np.all(np.isfinite(vals)):
            raise FormatError(path, "non-finite value", lineno)
        X.append([vals[i] for i in xcols])
        Y.append([vals[i] for i in ycols])
    if not X:
        raise FormatError(path, "no data rows")
    return TrainingSet(np.array(X), np.array(Y))


def write_weights(path, wv):
    with open(path, "w") as f:
        f.write("dims=" + ",".join(str(d) for d in wv.dims) + "\n")
        for v in wv.data:
            f.write(fmt(v) + "\n")


def read_weights(path):
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("dims="):
        raise FormatError(path, "first line must be dims=n0,...,nk", 1)
    try:
        dims = tuple(int(d) for d in lines[0][5:].split(","))
    except ValueError:
        raise FormatError(path, "bad dims header", 1) from None
    values = []
    for lineno, text in enumerate(lines[1:], start=2):
        if not text.strip():
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise FormatError(path, f"not a number: {text!r}", lineno) from None
    try:
        return WeightVector(np.array(values), dims)
    except ValueError as exc:
        raise FormatError(path, str(exc)) from None


def write_metrics(path, record):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["iter", "cost", "grad_norm", "accuracy"])
        for j in range(len(record)):
            w.writerow([j, fmt(record.cost[j]), fmt(record.grad_norm[j]), fmt(record.accuracy[j])])


def write_wide(path, values, prefix):
    """One row per iteration, one column per weight-vector coordinate."""
    values = np.asarray(values)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["iter"] + [f"{prefix}{i + 1}" for i in range(values.shape[1])])
        for j, r in enumerate(values):
            w.writerow([j] + [fmt(v) for v in r])


def write_manifest(path, items):
    with open(path, "w") as f:
        for key, value in items.items():
            f.write(f"{key}={value}\n")


def read_manifest(path):
    items = {}
    for lineno, text in enumerate(Path(path).read_text().splitlines(), start=1):
        if not text.strip() or text.startswith("#"):
            continue
        key, sep, value = text.partition("=")
        if not sep:
            raise FormatError(path, f"expected key=value, got {text!r}", lineno)
        items[key.strip()] = value.strip()
    return items

"""Text formats for data sets, edge lists, matrices, spectra and results.

All floats are written with 17 significant digits in scientific notation so
files round-trip exactly and compare byte-for-byte across runs.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidData, InvalidEdgeList
from .graph import SimilarityGraph, as_dataset, from_edge_list

FLOAT_FMT = "%.17e"


def _fmt(x) -> str:
    return FLOAT_FMT % float(x)


def read_csv_dataset(path) -> np.ndarray:
    """Header-less CSV, one sample of ``d`` floats per line."""
    try:
        X = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except ValueError as exc:
        raise InvalidData(f"{path}: {exc}") from exc
    return as_dataset(X)


def write_csv_dataset(path, data):
    X = as_dataset(data)
    with open(path, "w") as fh:
        for row in X:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def parse_edge_list(text: str, n: int | None = None) -> SimilarityGraph:
    """Parse lines ``i j w`` with 1-based node indices.

    Blank lines and ``#`` comments are skipped. The node count defaults to
    the largest index seen.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidEdgeList(f"line {lineno}: expected 'i j w', got {raw!r}")
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise InvalidEdgeList(f"line {lineno}: {exc}") from exc
        if i < 1 or j < 1:
            raise InvalidEdgeList(f"line {lineno}: indices are 1-based")
        edges.append((i - 1, j - 1, w))
    if n is None:
        n = max((max(i, j) + 1 for i, j, _ in edges), default=0)
    return from_edge_list(n, edges)


def read_edge_list(path, n: int | None = None) -> SimilarityGraph:
    return parse_edge_list(Path(path).read_text(), n)


def write_edge_list(path, g: SimilarityGraph):
    with open(path, "w") as fh:
        for i, j, w in g.edges():
            fh.write(f"{i + 1} {j + 1} {_fmt(w)}\n")


def write_matrix(path, M):
    """Plain-text rows of floats, space separated."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    with open(path, "w") as fh:
        for row in M:
            fh.write(" ".join(_fmt(v) for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    return np.loadtxt(path, dtype=float, ndmin=2)


def write_spectrum(path, spec):
    """One line per eigenpair: the eigenvalue followed by the eigenvector entries."""
    with open(path, "w") as fh:
        for u, lam in enumerate(spec.eigenvalues):
            vec = spec.eigenvectors[:, u]
            fh.write(" ".join([_fmt(lam)] + [_fmt(v) for v in vec]) + "\n")


def read_spectrum(path):
    rows = np.loadtxt(path, dtype=float, ndmin=2)
    return rows[:, 0], rows[:, 1:].T


def write_trajectory(path, times, H):
    """CSV rows ``t, h_1, ..., h_N``."""
    with open(path, "w") as fh:
        for t, h in zip(times, H):
            fh.write(",".join([_fmt(t)] + [_fmt(v) for v in h]) + "\n")


def write_embedding(path, coords):
    """CSV rows ``sample_index, y_1, ..., y_m`` for an ``(m, N)`` coordinate matrix.

    Sample indices are 1-based, like node indices in edge lists.
    """
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    with open(path, "w") as fh:
        for i in range(coords.shape[1]):
            fh.write(",".join([str(i + 1)] + [_fmt(v) for v in coords[:, i]]) + "\n")


def read_embedding(path) -> np.ndarray:
    rows = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    return rows[:, 1:].T


def write_lpp_model(path, model):
    """Text model: ``m``, expansion spec, then one projection vector per line."""
    exp = model.expansion
    if exp is None:
        spec = "none"
    elif isinstance(exp, (int, np.integer)):
        spec = f"monomial {int(exp)}"
    else:
        spec = f"callable {getattr(exp, '__name__', 'custom')}"
    with open(path, "w") as fh:
        fh.write(f"m {model.m}\n")
        fh.write(f"n_features {model.n_features}\n")
        fh.write(f"expansion {spec}\n")
        fh.write("eigenvalues " + " ".join(_fmt(v) for v in model.eigenvalues) + "\n")
        for u in range(model.m):
            fh.write(" ".join(_fmt(v) for v in model.projections[:, u]) + "\n")


def read_lpp_model(path):
    from .embed import LppModel

    lines = Path(path).read_text().splitlines()
    m = int(lines[0].split()[1])
    n_features = int(lines[1].split()[1])
    spec = lines[2].split()[1:]
    if spec[0] == "none":
        expansion = None
    elif spec[0] == "monomial":
        expansion = int(spec[1])
    else:
        raise InvalidData(f"cannot restore expansion {' '.join(spec)!r} from file")
    eigenvalues = np.array([float(v) for v in lines[3].split()[1:]])
    Z = np.array([[float(v) for v in line.split()] for line in lines[4 : 4 + m]]).T
    return LppModel(Z, eigenvalues, n_features, expansion)


def write_clusters(path, labels):
    """CSV rows ``sample_index, label``, both 1-based."""
    with open(path, "w") as fh:
        for i, lab in enumerate(labels):
            fh.write(f"{i + 1},{int(lab) + 1}\n")


def read_clusters(path) -> np.ndarray:
    """0-based labels from a ``sample_index, label`` file."""
    rows = np.loadtxt(path, delimiter=",", dtype=int, ndmin=2)
    return rows[:, -1] - 1


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")

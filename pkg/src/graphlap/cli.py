"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 invalid recipe or argument,
4 numerical failure, 5 disconnected graph rejected.
On failure a single JSON line ``{"error": <name>, "message": ..., "exit_code": ...}``
is written to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import io
from .cluster import adjusted_rand_index, spectral_cluster
from .diffusion import trajectory
from .eigen import generalized_eig, hat_spectrum, kernel_multiplicity, sym_eig
from .embed import lem_embed, lpp_fit, lpp_transform
from .errors import GraphLapError, InvalidData, InvalidRecipe, UsageError
from .graph import GraphRecipe, SimilarityGraph
from .laplacian import degree_vector, laplacian, random_walk_normalized, sym_normalized
from .plot import emit_scatter_svg

COMMANDS = ("graph", "embed-lem", "embed-lpp", "cluster", "diffuse", "spectrum")

EXIT_CODES = """exit codes:
  0  success
  2  parse error (unreadable input, malformed CSV or edge list, bad flags)
  3  invalid recipe or argument (graph parameters, m/K out of range)
  4  numerical failure (isolated node, singular constraint, no convergence)
  5  disconnected graph rejected by Laplacian eigenmaps
"""


@dataclass
class RunConfig:
    command: str = "spectrum"
    input: Optional[str] = None
    output: Optional[str] = None
    format: Optional[str] = None
    graph: str = "full"
    epsilon: Optional[float] = None
    neighbors: Optional[int] = None
    knn_mode: str = "symmetric"
    weighting: str = "gaussian"
    sigma: Optional[float] = 1.0
    m: int = 2
    k: int = 2
    seed: int = 0
    kind: str = "generalized"
    matrix: str = "weights"
    expansion_degree: int = 1
    transform: Optional[str] = None
    model_output: Optional[str] = None
    metrics: Optional[str] = None
    reference: Optional[str] = None
    h0: Optional[str] = None
    times: str = "0,1,2,5,10"
    method: str = "analytic"
    dt: Optional[float] = None
    kernel_tol: Optional[float] = None
    plot: Optional[str] = None

    def recipe(self) -> GraphRecipe:
        return GraphRecipe(
            method=self.graph,
            epsilon=self.epsilon,
            k=self.neighbors,
            knn_mode=self.knn_mode,
            weighting=self.weighting,
            sigma=self.sigma,
        )

    def validate(self):
        if self.command not in COMMANDS:
            raise InvalidRecipe(f"unknown command {self.command!r}")
        if self.input is None:
            raise InvalidData("--input is required")
        if self.output is None:
            raise InvalidData("--output is required")
        if self.m < 1:
            raise InvalidRecipe("--m must be >= 1")
        if self.k < 1:
            raise InvalidRecipe("--k must be >= 1")
        if self.kind not in ("ordinary", "generalized", "normalized"):
            raise InvalidRecipe(f"unknown spectrum kind {self.kind!r}")
        if self.matrix not in ("weights", "degrees", "laplacian", "sym-normalized", "random-walk", "edges"):
            raise InvalidRecipe(f"unknown matrix {self.matrix!r}")
        if self.method not in ("analytic", "discrete"):
            raise InvalidRecipe(f"unknown diffusion method {self.method!r}")
        if self.method == "discrete" and not (self.dt is not None and self.dt > 0):
            raise InvalidRecipe("discrete diffusion needs --dt > 0")
        if self.expansion_degree not in (1, 2):
            raise InvalidRecipe("--expansion-degree must be 1 or 2")
        if self.format not in (None, "csv", "edges"):
            raise InvalidRecipe(f"unknown input format {self.format!r}")

    def input_format(self) -> str:
        if self.format:
            return self.format
        suffix = Path(self.input).suffix.lower()
        if suffix == ".csv":
            return "csv"
        if suffix == ".edges":
            return "edges"
        raise InvalidData(f"cannot infer format of {self.input!r}; pass --format")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="graphlap",
        description="Similarity graphs, Laplacian spectra, embeddings, clustering and heat diffusion.",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS
    for name in COMMANDS:
        p = sub.add_parser(name, epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter, argument_default=S)
        p.add_argument("--input", help="data CSV (.csv) or 1-based edge list (.edges)")
        p.add_argument("--output", help="output file")
        p.add_argument("--format", choices=["csv", "edges"], help="override input format detection")
        p.add_argument("--config", default=None, help="JSON file with option defaults")
        p.add_argument("--dump-config", action="store_true", default=False, help="print the resolved configuration and exit")
        g = p.add_argument_group("graph recipe (CSV input)")
        g.add_argument("--graph", choices=["epsilon", "knn", "full"])
        g.add_argument("--epsilon", type=float)
        g.add_argument("--neighbors", type=int, help="k for k-NN graphs")
        g.add_argument("--knn-mode", dest="knn_mode", choices=["mutual", "symmetric"])
        g.add_argument("--weighting", choices=["binary", "gaussian"])
        g.add_argument("--sigma", type=float)
        p.add_argument("--plot", help="write an SVG scatter plot here")
        if name == "graph":
            p.add_argument("--matrix", help="weights, degrees, laplacian, sym-normalized, random-walk or edges")
        if name == "spectrum":
            p.add_argument("--kind", choices=["ordinary", "generalized", "normalized"])
            p.add_argument("--kernel-tol", dest="kernel_tol", type=float)
        if name in ("embed-lem", "embed-lpp"):
            p.add_argument("--m", type=int, help="target dimension")
        if name == "embed-lpp":
            p.add_argument("--expansion-degree", dest="expansion_degree", type=int)
            p.add_argument("--transform", help="CSV of new samples to map instead of the training data")
            p.add_argument("--model-output", dest="model_output")
        if name == "cluster":
            p.add_argument("--k", type=int, help="number of clusters")
            p.add_argument("--seed", type=int)
            p.add_argument("--metrics", help="metrics JSON path (default: output with .json suffix)")
            p.add_argument("--reference", help="reference labels, CSV 'index,label'")
        if name == "diffuse":
            p.add_argument("--h0", help="initial heat, one value per line (default: unit heat on node 1)")
            p.add_argument("--times", help="comma-separated sample times")
            p.add_argument("--method", choices=["analytic", "discrete"])
            p.add_argument("--dt", type=float)
    return parser


def resolve_config(argv) -> tuple[RunConfig, bool]:
    """Merge defaults, an optional JSON config file and explicit flags (highest priority)."""
    args = vars(build_parser().parse_args(argv))
    dump = args.pop("dump_config", False)
    config_path = args.pop("config", None)
    values = {}
    if config_path:
        try:
            values.update(json.loads(Path(config_path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidData(f"cannot read config {config_path}: {exc}") from exc
        known = {f.name for f in fields(RunConfig)}
        unknown = set(values) - known
        if unknown:
            raise InvalidData(f"unknown config keys: {sorted(unknown)}")
    values.update(args)
    return RunConfig(**values), dump


def _load_graph(cfg: RunConfig):
    """Return ``(graph, data)``; ``data`` is None for edge-list input."""
    if not Path(cfg.input).exists():
        raise InvalidData(f"input file {cfg.input!r} does not exist")
    if cfg.input_format() == "edges":
        return io.read_edge_list(cfg.input), None
    X = io.read_csv_dataset(cfg.input)
    recipe = cfg.recipe()
    recipe.validate(X.shape[0])
    return recipe.build(X), X


def _read_vector(path) -> np.ndarray:
    text = Path(path).read_text().replace(",", " ")
    try:
        return np.array([float(v) for v in text.split()])
    except ValueError as exc:
        raise InvalidData(f"{path}: {exc}") from exc


def _read_labels(path) -> np.ndarray:
    rows = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    return rows[:, -1].astype(int)


def _run_graph(cfg, g: SimilarityGraph, X):
    if cfg.matrix == "edges":
        io.write_edge_list(cfg.output, g)
        return
    M = {
        "weights": lambda: g.weights,
        "degrees": lambda: degree_vector(g)[None, :],
        "laplacian": lambda: laplacian(g),
        "sym-normalized": lambda: sym_normalized(g),
        "random-walk": lambda: random_walk_normalized(g),
    }[cfg.matrix]()
    io.write_matrix(cfg.output, M)


def _run_spectrum(cfg, g, X):
    L = laplacian(g)
    if cfg.kind == "ordinary":
        spec = sym_eig(L)
    else:
        d = degree_vector(g)
        spec = generalized_eig(L, d)
        if cfg.kind == "normalized":
            spec = hat_spectrum(spec, d)
    io.write_spectrum(cfg.output, spec)
    sys.stdout.write(f"kernel_multiplicity {kernel_multiplicity(spec, cfg.kernel_tol)}\n")


def _run_embed_lem(cfg, g, X):
    emb = lem_embed(g, cfg.m)
    io.write_embedding(cfg.output, emb.coords)
    if cfg.plot:
        emit_scatter_svg(emb.coords, None, cfg.plot)


def _run_embed_lpp(cfg, g, X):
    if X is None:
        raise InvalidRecipe("embed-lpp needs vectorial CSV input")
    expansion = None if cfg.expansion_degree == 1 else cfg.expansion_degree
    model = lpp_fit(X, g, cfg.m, expansion)
    if cfg.transform:
        coords = lpp_transform(model, io.read_csv_dataset(cfg.transform)).coords
    else:
        coords = model.train_embedding
    io.write_embedding(cfg.output, coords)
    if cfg.model_output:
        io.write_lpp_model(cfg.model_output, model)
    if cfg.plot:
        emit_scatter_svg(coords, None, cfg.plot)


def _run_cluster(cfg, g, X):
    result = spectral_cluster(g, cfg.k, cfg.seed)
    io.write_clusters(cfg.output, result.labels)
    metrics = {
        "inertia": result.inertia,
        "iterations": result.iterations,
        "n_clusters": cfg.k,
        "seed": cfg.seed,
    }
    if cfg.reference:
        metrics["ari_vs_reference"] = adjusted_rand_index(_read_labels(cfg.reference), result.labels)
    io.write_json(cfg.metrics or str(Path(cfg.output).with_suffix(".json")), metrics)
    if cfg.plot:
        if X is not None and X.shape[1] <= 2:
            emit_scatter_svg(X.T, result.labels, cfg.plot)
        else:
            from .cluster import spectral_coordinates

            T = spectral_coordinates(g, cfg.k).T
            emit_scatter_svg(T[: min(2, T.shape[0])], result.labels, cfg.plot)


def _run_diffuse(cfg, g, X):
    n = g.n_nodes
    if cfg.h0:
        h0 = _read_vector(cfg.h0)
    else:
        h0 = np.zeros(n)
        h0[0] = 1.0
    try:
        times = np.array([float(t) for t in cfg.times.split(",")])
    except ValueError as exc:
        raise InvalidData(f"bad --times {cfg.times!r}") from exc
    H = trajectory(laplacian(g), h0, times, cfg.method, cfg.dt)
    io.write_trajectory(cfg.output, times, H)


RUNNERS = {
    "graph": _run_graph,
    "spectrum": _run_spectrum,
    "embed-lem": _run_embed_lem,
    "embed-lpp": _run_embed_lpp,
    "cluster": _run_cluster,
    "diffuse": _run_diffuse,
}


def run(cfg: RunConfig) -> int:
    cfg.validate()
    g, X = _load_graph(cfg)
    RUNNERS[cfg.command](cfg, g, X)
    return 0


def _fail(name: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": name, "message": message, "exit_code": code}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    try:
        cfg, dump = resolve_config(argv)
        if dump:
            sys.stdout.write(json.dumps(asdict(cfg), indent=2, sort_keys=True) + "\n")
            return 0
        return run(cfg)
    except SystemExit as exc:
        return int(exc.code or 0)
    except GraphLapError as exc:
        return _fail(type(exc).__name__, str(exc), exc.exit_code)
    except OSError as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except ValueError as exc:
        return _fail(type(exc).__name__, str(exc), 3)


if __name__ == "__main__":
    sys.exit(main())

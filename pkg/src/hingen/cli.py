"""Command line: ``hingen analyze | generate | validate | fidelity | preset``.

Exit codes: 0 success, 2 bad input, 3 internal invariant failure.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .export import write_graph, write_outputs
from .graph import InvariantError
from .metrics import compare_distributions, fidelity, read_predictions
from .params import ConfigError, GeneratorParams, apply_override
from .pipeline import StageError, generate
from .presets import get_preset, reference_graph
from .reference import ReferenceProfile, edge_files_in, estimate_params, ingest_reference, profile
from .schema import Schema, SchemaError
from .textio import FormatError

USER_ERRORS = (ConfigError, SchemaError, FormatError, FileNotFoundError, IsADirectoryError, KeyError, ValueError)


class ExitError(click.ClickException):
    def __init__(self, message, code):
        super().__init__(message)
        self.exit_code = code


def _fail(exc):
    if isinstance(exc, InvariantError):
        raise ExitError(f"internal invariant violated: {exc}", 3)
    if isinstance(exc, StageError):
        code = 2 if isinstance(exc.cause, (SchemaError, ConfigError, ValueError)) and not isinstance(exc.cause, InvariantError) else 3
        raise ExitError(str(exc), code)
    raise ExitError(str(exc), 2)


@click.group()
@click.version_option(package_name="hingen")
def main():
    """Synthetic heterogeneous networks with ground-truth explanation motifs."""


def summary_text(prof: ReferenceProfile, g=None) -> str:
    lines = [f"target type: {prof.schema.target_type} ({prof.target_count} nodes)"]
    if g is not None:
        lines.append("nodes by type: " + ", ".join(f"{t}={g.count(t)}" for t in prof.schema.node_types))
        lines.append(f"edges: {g.num_edges}")
    lines.append("labels: " + ", ".join(f"{y}={c}" for y, c in prof.label_counts.items()))
    for t, d in prof.degree_dists.items():
        hist = " ".join(f"{k}:{p:.4f}" for k, p in d.histogram.items())
        lines.append(f"P^{t}(k): {hist}")
    lines.append("degree caps: " + ", ".join(f"{k}={v}" for k, v in prof.degree_caps.items()))
    return "\n".join(lines) + "\n"


@main.command()
@click.option("--schema", "schema_path", required=True, type=click.Path(dir_okay=False))
@click.option("--edges", "edges_dir", required=True, type=click.Path(file_okay=False))
@click.option("--labels", "labels_path", type=click.Path(dir_okay=False))
@click.option("--nodes", "nodes_path", type=click.Path(dir_okay=False),
              help="Node table (id, type). Defaults to nodes.tsv in or next to the edges directory.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def analyze(schema_path, edges_dir, labels_path, nodes_path, out_path):
    """Profile a reference network: degree histograms, caps, label counts."""
    try:
        schema = Schema.load(schema_path)
        if not os.path.isdir(edges_dir):
            raise FileNotFoundError(f"edges directory {edges_dir} does not exist")
        edge_paths = edge_files_in(edges_dir)
        if not edge_paths:
            raise FormatError(edges_dir, 0, "no <edge type>.tsv files found")
        if nodes_path is None:
            for cand in (os.path.join(edges_dir, "nodes.tsv"), os.path.join(os.path.dirname(os.path.abspath(edges_dir)), "nodes.tsv")):
                if os.path.isfile(cand):
                    nodes_path = cand
                    break
            else:
                raise FileNotFoundError("no nodes.tsv found; pass --nodes")
        edge_paths.pop("nodes", None)
        g, _ = ingest_reference(schema, nodes_path, edge_paths, labels_path)
        prof = profile(g)
    except USER_ERRORS as exc:
        _fail(exc)
    prof.save(out_path)
    text = summary_text(prof, g)
    stem, _ = os.path.splitext(out_path)
    with open(stem + ".summary.txt", "w", encoding="utf-8") as fh:
        fh.write(text)
    click.echo(text, nl=False)


def load_config(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(path, exc.lineno, exc.msg) from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - {"schema", "generator", "io"}
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    io = cfg.get("io", {})
    if set(io) - {"out", "profile"}:
        raise ConfigError(f"unknown io keys: {sorted(set(io) - {'out', 'profile'})}")
    return cfg


def resolve_params(cfg: dict, prof: ReferenceProfile, overrides=()) -> GeneratorParams:
    """Defaults estimated from the profile, then the config's generator section, then --set."""
    if "schema" in cfg and Schema.from_dict(cfg["schema"]) != prof.schema:
        raise ConfigError("config schema differs from the profile's schema")
    merged = estimate_params(prof).to_dict()
    for k, v in cfg.get("generator", {}).items():
        if k not in merged:
            raise ConfigError(f"unknown generator key {k!r}")
        merged[k] = v
    for item in overrides:
        apply_override(merged, item)
    if isinstance(merged.get("caps"), str):
        if merged["caps"] == "reference":
            merged["caps"] = dict(prof.degree_caps)
        elif merged["caps"] == "none":
            merged["caps"], merged["prune"] = {}, False
        else:
            raise ConfigError("caps must be a table, 'reference' or 'none'")
    params = GeneratorParams.from_dict(merged)
    params.validate(prof.schema)
    return params


@main.command("generate")
@click.option("--config", "config_path", type=click.Path(dir_okay=False))
@click.option("--profile", "profile_path", type=click.Path(dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False))
@click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE",
              help="Override a generator setting, e.g. q.actor=0 or seed=7. Repeatable.")
@click.option("--verify", is_flag=True, help="Check invariants at every stage boundary.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
              help="Threads used to build label clusters; output does not depend on it.")
def generate_cmd(config_path, profile_path, out_dir, overrides, verify, workers):
    """Generate a synthetic network and write all artifacts to --out."""
    try:
        cfg = load_config(config_path) if config_path else {}
        profile_path = profile_path or cfg.get("io", {}).get("profile")
        out_dir = out_dir or cfg.get("io", {}).get("out")
        if not profile_path:
            raise ConfigError("no profile given (--profile or io.profile)")
        if not out_dir:
            raise ConfigError("no output directory given (--out or io.out)")
        prof = ReferenceProfile.load(profile_path)
        params = resolve_params(cfg, prof, overrides)
        res = generate(params, prof, verify=verify, workers=workers)
    except (InvariantError, StageError) as exc:
        _fail(exc)
    except USER_ERRORS as exc:
        _fail(exc)
    manifest = write_outputs(res, out_dir)
    gt = manifest["ground_truth"]
    click.echo(
        f"wrote {out_dir}: {manifest['final']['nodes']} nodes, {manifest['final']['edges']} edges, "
        f"{manifest['final']['components']} components, motifs intact {gt['intact_fraction']:.3f}"
    )


@main.command()
@click.option("--profile", "profiles", multiple=True, required=True, type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def validate(profiles, as_json):
    """Compare the target-degree distributions of two profiles (synthetic first)."""
    if len(profiles) != 2:
        raise ExitError("validate needs exactly two --profile options", 2)
    try:
        a, b = (ReferenceProfile.load(p) for p in profiles)
        report = compare_distributions(a, b)
    except USER_ERRORS as exc:
        _fail(exc)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
        return
    for t, c in report.per_type.items():
        click.echo(f"{t}\tTV={c.tv:.6f}\tKS={c.ks:.6f}")


@main.command("fidelity")
@click.option("--preds", "preds_path", required=True, type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def fidelity_cmd(preds_path, as_json):
    """Fidelity of motif-only predictions against full-graph predictions."""
    try:
        labels, full, motif = read_predictions(preds_path)
        score = fidelity(full, motif)
    except USER_ERRORS as exc:
        _fail(exc)
    if as_json:
        click.echo(json.dumps({"fidelity": score, "nodes": len(full), "labels": labels}))
    else:
        click.echo(f"{score:.12g}")


@main.command()
@click.argument("name")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--targets", type=int, help="Number of target nodes (default: the dataset's size).")
@click.option("--seed", type=int, default=0, show_default=True)
def preset(name, out_dir, targets, seed):
    """Write a toy reference dataset with a built-in schema (imdb, acm, dblp)."""
    try:
        g = reference_graph(get_preset(name), targets, seed)
    except USER_ERRORS as exc:
        _fail(exc)
    write_graph(g, out_dir)
    click.echo(f"wrote {out_dir}: {g.num_nodes} nodes, {g.num_edges} edges")


if __name__ == "__main__":
    sys.exit(main())

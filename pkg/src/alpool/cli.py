"""Command-line entry points: bench, compare, serve, gen."""

from __future__ import annotations

import dataclasses
import json
import os

import click
import numpy as np

from .datasets import DatasetConfig, generate
from .harness import (compare_strategies, config_from_file, curve_to_csv,
                      report_to_json, run_session)


@click.group()
def main():
    """Pool-based active learning benchmarks and annotation service."""


@main.command()
@click.argument("config_path", type=click.Path(exists=True))
@click.option("--out", "out_dir", default="runs", show_default=True,
              help="Results directory root.")
def bench(config_path, out_dir):
    """Run one ExperimentConfig file across its seeds; write per-seed CSVs."""
    config = config_from_file(config_path)
    run_dir = os.path.join(out_dir, config.name, config.strategy)
    os.makedirs(run_dir, exist_ok=True)
    for seed in config.seeds:
        curve, _ = run_session(config, seed)
        path = os.path.join(run_dir, f"{seed}.csv")
        with open(path, "w") as fh:
            fh.write(curve_to_csv(curve, config.strategy, seed))
        click.echo(f"seed {seed}: final accuracy "
                   f"{curve.accuracies()[-1]:.4f} -> {path}")


@main.command()
@click.argument("config_paths", nargs=-1, required=True,
                type=click.Path(exists=True))
@click.option("--out", "out_dir", default="runs", show_default=True)
@click.option("--target", type=float, default=None,
              help="Accuracy target for labels-to-target reporting.")
def compare(config_paths, out_dir, target):
    """Compare >= 2 strategy configs sharing a dataset and seed list."""
    configs = [config_from_file(p) for p in config_paths]
    report = compare_strategies(configs, target_accuracy=target)
    run_dir = os.path.join(out_dir, configs[0].name)
    os.makedirs(run_dir, exist_ok=True)
    for cfg, result in zip(configs, report.results):
        strat_dir = os.path.join(run_dir, cfg.strategy)
        os.makedirs(strat_dir, exist_ok=True)
        for seed, curve in zip(result.seeds, result.curves):
            with open(os.path.join(strat_dir, f"{seed}.csv"), "w") as fh:
                fh.write(curve_to_csv(curve, cfg.strategy, seed))
        click.echo(f"{cfg.strategy}: mean AULC {result.mean_aulc:.2f}")
    with open(os.path.join(run_dir, "report.json"), "w") as fh:
        fh.write(report_to_json(report))
    click.echo(f"report -> {os.path.join(run_dir, 'report.json')}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=None,
              help="Session snapshot directory (env OL_DATA_DIR overrides).")
def serve(port, host, data_dir):
    """Start the HTTP annotation service."""
    import uvicorn

    from .gateway import create_app
    uvicorn.run(create_app(data_dir=data_dir), host=host, port=port)


@main.command()
@click.option("--kind", type=click.Choice(["blobs", "qubit", "qudit"]),
              default="qubit", show_default=True)
@click.option("--n-pool", default=2000, show_default=True)
@click.option("--n-test", default=500, show_default=True)
@click.option("--n-classes", default=2, show_default=True)
@click.option("--qudit-dim", default=2, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", default="dataset.json", show_default=True)
def gen(kind, n_pool, n_test, n_classes, qudit_dim, seed, out_path):
    """Emit a generated dataset (features + ground truth) to a JSON file."""
    cfg = DatasetConfig(kind=kind, n_pool=n_pool, n_test=n_test,
                        n_classes=n_classes, qudit_dim=qudit_dim)
    ds = generate(cfg, seed)
    doc = {
        "config": dataclasses.asdict(cfg),
        "seed": seed,
        "n_classes": ds.n_classes,
        "pool": [
            {"id": s.id, "features": [float(v) for v in s.features],
             "label": ds.pool_labels[s.id]}
            for s in sorted(ds.pool.samples.values(), key=lambda s: s.id)
        ],
        "test": [
            {"features": [float(v) for v in x], "label": int(y)}
            for x, y in zip(ds.test_features, ds.test_labels)
        ],
    }
    with open(out_path, "w") as fh:
        json.dump(doc, fh)
    click.echo(f"{kind} dataset ({n_pool} pool / {n_test} test) -> {out_path}")


if __name__ == "__main__":
    main()

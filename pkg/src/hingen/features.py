"""Target-node features drawn from per-label Gaussians."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import TypedGraph


@dataclass
class FeatureSpec:
    """Isotropic feature model.

    A node labelled ``y`` gets ``x ~ N(centers[y], alpha * I)`` and every
    centre is ``N(0, beta * I)``. Larger ``beta / alpha`` means better
    separated classes.
    """

    dim: int
    alpha: float
    beta: float
    centers: dict[str, np.ndarray]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("feature dimension must be >= 1")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")
        for y, mu in self.centers.items():
            if np.shape(mu) != (self.dim,):
                raise ValueError(f"centre for {y!r} has shape {np.shape(mu)}, expected ({self.dim},)")


def sample_centers(labels, dim: int, beta: float, rng) -> dict[str, np.ndarray]:
    if not beta > 0:
        raise ValueError("beta must be positive")
    labels = [str(y) for y in labels]
    draws = rng.normal(0.0, np.sqrt(beta), size=(len(labels), dim))
    return {y: draws[i] for i, y in enumerate(labels)}


def sample_features(g: TypedGraph, spec: FeatureSpec, rng, mode: str = "product"):
    """(node ids, matrix) for every target node, rows in ascending id order.

    Multi-label nodes use the product of their label Gaussians (mean of the
    centres, variance alpha/|L|) or, with ``mode="mixture"``, one label's
    Gaussian picked uniformly.
    """
    ids = sorted(g.nodes(g.schema.target_type))
    missing = [v for v in ids if not g.labels.get(v)]
    if missing:
        raise ValueError(f"{len(missing)} target nodes have no label (first: {missing[0]})")
    if mode not in ("product", "mixture"):
        raise ValueError(f"unknown multi-label mode {mode!r}")
    z = rng.standard_normal(size=(len(ids), spec.dim))
    pick = rng.random(len(ids)) if mode == "mixture" else None
    out = np.empty_like(z)
    for row, v in enumerate(ids):
        labs = sorted(g.labels[v])
        if len(labs) == 1:
            mu, var = spec.centers[labs[0]], spec.alpha
        elif mode == "product":
            mu = np.mean([spec.centers[y] for y in labs], axis=0)
            var = spec.alpha / len(labs)
        else:
            mu = spec.centers[labs[min(int(pick[row] * len(labs)), len(labs) - 1)]]
            var = spec.alpha
        out[row] = mu + np.sqrt(var) * z[row]
    return np.array(ids, dtype=np.int64), out


def nearest_centroid_accuracy(x, y, rng, train_frac=0.5) -> float:
    """Fit class means on a random half, score the other half by nearest mean."""
    y = np.asarray(y)
    order = rng.permutation(len(y))
    cut = int(len(y) * train_frac)
    tr, te = order[:cut], order[cut:]
    classes = np.unique(y[tr])
    means = np.stack([x[tr][y[tr] == c].mean(axis=0) for c in classes])
    d = ((x[te][:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
    return float((classes[d.argmin(axis=1)] == y[te]).mean())

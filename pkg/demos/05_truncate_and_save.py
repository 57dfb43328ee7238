"""Compressing a model by dropping small corrections, then saving it.

Every correction basis peaks at 1, so the evaluation error after truncation
is bounded by the sum of the removed weights.
"""
import tempfile
from pathlib import Path

import numpy as np

from perceptlet import Perceptlet, fit_boundary, grid_nodes, load_model, save_model, truncate

pr = 7
target = lambda x: 0.5 + 0.35 * np.sin(2 * x) + 0.05 * np.sin(9 * x)
samples = [(float(c), target(float(c))) for c in grid_nodes(pr)]
model, _ = fit_boundary(samples, pr, Perceptlet.linear())
xs = np.linspace(-1, 1, 2001)

for eps in (1e-4, 1e-3, 1e-2):
    small, rep = truncate(model, eps)
    actual = np.max(np.abs(small(xs) - model(xs)))
    print(f"eps {eps:g}: kept {len(small.weights):>2}/{len(model.weights)} weights, "
          f"error {actual:.2e} <= bound {rep.error_bound:.2e}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    save_model(model, path)
    back = load_model(path)
    print("saved", path.stat().st_size, "bytes; reload identical:", dict(back.weights) == dict(model.weights))

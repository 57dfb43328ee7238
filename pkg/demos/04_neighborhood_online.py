"""Learning from samples anywhere in [-1, 1], in batch and as a stream.

Noisy observations of a smooth curve are fitted in neighborhood mode, then
the same stream is fed one sample at a time to an online automaton.
"""
import numpy as np

from perceptlet import Automaton, AutomatonConfig, Perceptlet, fit_neighborhood

rng = np.random.default_rng(7)
target = lambda x: 0.5 + 0.3 * np.tanh(3 * x)
xs = rng.uniform(-1, 1, 300)
ys = np.clip(target(xs) + rng.normal(0, 0.02, xs.size), 0, 1)
samples = list(zip(xs, ys))
grid = np.linspace(-1, 1, 401)

model, report = fit_neighborhood(samples, 5, Perceptlet.sin())
print(f"neighborhood fit: {report.sweeps} sweeps, converged {report.converged}")
print(f"  max error against the clean curve {np.max(np.abs(model(grid) - target(grid))):.4f}")

auto = Automaton(AutomatonConfig(Perceptlet.sin(), 5, mode="online"))
for i, s in enumerate(samples, start=1):
    auto.observe(s)
    if i in (10, 50, 300):
        err = np.max(np.abs(auto.model(grid) - target(grid)))
        print(f"online after {i:>3} samples: max error {err:.4f}")

# unbounded inputs are squashed with tanh on both the learning and the recall side
real = Automaton(AutomatonConfig(Perceptlet.linear(), 4, mode="neighborhood", input_map="tanh"))
real.fit([(t, 0.5 + 0.4 * np.tanh(t)) for t in np.linspace(-4, 4, 60)])
print("tanh-mapped automaton at t=2.5:", round(real.realize(2.5).final, 6),
      "expected", round(0.5 + 0.4 * np.tanh(2.5), 6))

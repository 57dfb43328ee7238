"""Learning the weights of a perception model.

Two regimes:

* Boundary samples sit exactly on the dyadic grid nodes. Weights follow from
  the nodal values by a single coarse-to-fine cascade and reproduce every
  sample exactly (:func:`fit_boundary`).
* Neighborhood samples sit anywhere in [-1, 1]. Each basis fits the residual
  left by the other levels by per-basis recursive least squares
  (:func:`fit_neighborhood`), or incrementally one sample at a time
  (:class:`OnlineTrainer`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .basis import BasisId, Perceptlet, bases_up_to, centers_at_level, eval_basis
from .errors import GridError, PerceptionDomainError
from .logic import NULL
from .model import PerceptionModel, basis_count, evaluate, range_violations, realize_all_levels

GRID_TOL = 1e-9

BOUNDARY = "boundary"
NEIGHBORHOOD = "neighborhood"
ONLINE = "online"


@dataclass(frozen=True)
class Sample:
    x: float
    y: float

    def __post_init__(self):
        if self.x is NULL or self.y is NULL:
            raise PerceptionDomainError("null perceptions carry no information to learn from")
        x, y = float(self.x), float(self.y)
        if not -1.0 <= x <= 1.0:
            raise PerceptionDomainError(f"sample x={x!r} outside perception space [-1, +1]")
        if not 0.0 <= y <= 1.0:
            raise PerceptionDomainError(f"sample y={y!r} outside logical space [0, 1]")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def as_samples(samples) -> list[Sample]:
    """Accept ``Sample`` objects, ``(x, y)`` pairs or an ``(n, 2)`` array."""
    return [s if isinstance(s, Sample) else Sample(*s) for s in samples]


@dataclass
class FitReport:
    epochs_used: int
    max_residual: float
    per_level_residuals: list[float]
    mode: str
    sweeps: int = 1
    converged: bool = True
    warnings: list[str] = field(default_factory=list)


# -- grid bookkeeping ---------------------------------------------------------

def node_at(x: float, pr: int) -> Optional[BasisId]:
    """The basis centered at ``x`` on the resolution-``pr`` grid, or ``None``."""
    scale = 2 ** max(pr - 2, 0)
    if pr == 1:
        k = round(x)
        if abs(x - k) > GRID_TOL or abs(k) != 1:
            return None
        return BasisId(1, Fraction(k))
    k = round(x * scale)
    if abs(x - k / scale) > GRID_TOL:
        return None
    c = Fraction(k, scale)
    if abs(c) == 1:
        return BasisId(1, c)
    if c == 0:
        return BasisId(2, c)
    return BasisId(1 + c.denominator.bit_length(), c)


def _nodes_or_raise(samples, pr):
    nodes, off = [], []
    for s in samples:
        node = node_at(s.x, pr)
        if node is None:
            off.append(s.x)
        nodes.append(node)
    if off:
        raise GridError(
            f"{len(off)} sample(s) off the level-{pr} grid, e.g. x={off[0]!r}",
            off_grid=off,
        )
    return nodes


def is_hierarchical_order(samples, pr: int) -> bool:
    """True when samples arrive grouped by non-decreasing level."""
    levels = [n.level for n in _nodes_or_raise(as_samples(samples), pr)]
    return all(a <= b for a, b in zip(levels, levels[1:]))


def _count_epochs(stream: list[BasisId], pr: int) -> int:
    """Passes over ``stream`` needed to learn the grid level by level.

    A node is learned only once every coarser level is complete; nodes met
    too early wait for the next pass.
    """
    remaining = {k: set(centers_at_level(k)) for k in range(1, pr + 1)}
    level, passes = 1, 0
    while level <= pr:
        passes += 1
        for node in stream:
            if node.level == level:
                remaining[level].discard(node.center)
                while level <= pr and not remaining[level]:
                    level += 1
    return passes


def _residuals(model, xs, ys):
    if len(xs) == 0:
        return [0.0] * model.pr
    est = realize_all_levels(model, np.asarray(xs))
    return [float(np.max(np.abs(ys - est[k]))) for k in range(model.pr)]


# -- boundary learning -----------------------------------------------------------

def fit_boundary(samples, pr: int, perceptlet: Perceptlet):
    """Fit from samples covering every node of the resolution-``pr`` grid.

    Returns ``(model, report)``. Duplicated nodes keep the last value.
    Raises :class:`GridError` for off-grid samples or missing nodes.
    """
    samples = as_samples(samples)
    basis_count(pr)
    nodes = _nodes_or_raise(samples, pr)

    values, last_seen, warnings = {}, {}, []
    for i, (node, s) in enumerate(zip(nodes, samples)):
        if node in values:
            warnings.append(f"duplicate sample at x={float(node.center)!r}; keeping the last one")
        values[node] = s.y
        last_seen[node] = i
    missing = [b.center for b in bases_up_to(pr) if b not in values]
    if missing:
        listed = ", ".join(str(c) for c in missing)
        raise GridError(f"missing grid node(s) at level {pr}: {listed}", missing=missing)

    lo, hi = BasisId(1, -1), BasisId(1, 1)
    model = PerceptionModel(perceptlet, pr, {lo: values[lo], hi: values[hi]})
    for k in range(2, pr + 1):
        # same-level corrections vanish at each other's centers, so the
        # level-(k-1) estimate is the right baseline for all of them
        ws = dict(model.weights)
        centers = centers_at_level(k)
        coarse = evaluate(model, np.array([float(c) for c in centers]), k - 1)
        for c, est in zip(centers, coarse.tolist()):
            b = BasisId(k, c)
            ws[b] = values[b] - est
        model = model.with_weights(ws)

    stream = [node for node, _ in sorted(last_seen.items(), key=lambda kv: kv[1])]
    epochs = _count_epochs(stream, pr)
    xs = np.array([s.x for s in samples])
    ys = np.array([s.y for s in samples])
    # duplicates that lost to a later sample are not part of the fit
    keep = np.array([last_seen[n] == i for i, n in enumerate(nodes)])
    per_level = _residuals(model, xs[keep], ys[keep])
    warnings += range_violations(model)
    return model, FitReport(epochs, per_level[-1], per_level, BOUNDARY, warnings=warnings)


# -- recursive least squares per basis --------------------------------------------

@dataclass(frozen=True)
class RlsState:
    """Running estimate of one basis weight.

    ``L`` is the learning indicator ``1 / sum(b(x_i)**2)`` over absorbed
    samples. The default instance is the uninitialized state.
    """

    w_hat: float = 0.0
    L: float = math.inf
    n: int = 0

    @property
    def initialized(self) -> bool:
        return self.n > 0


UNINITIALIZED = RlsState()


def rls_init(activation: float, y: float) -> RlsState:
    if activation == 0.0:
        return UNINITIALIZED
    return RlsState(y / activation, 1.0 / (activation * activation), 1)


def rls_update(state: RlsState, activation: float, y: float) -> RlsState:
    """Absorb one sample. Inactive bases (zero activation) are left unchanged."""
    if activation == 0.0:
        return state
    if not state.initialized:
        return rls_init(activation, y)
    L = state.L / (1.0 + activation * activation * state.L)
    gain = activation * L
    w = state.w_hat + gain * (y - activation * state.w_hat)
    return RlsState(w, L, state.n + 1)


def batch_weight(pairs) -> float:
    """Closed-form least-squares weight ``sum(b*y) / sum(b**2)``."""
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    b, y = arr[:, 0], arr[:, 1]
    den = float(np.dot(b, b))
    if den == 0.0:
        raise PerceptionDomainError("weight undefined: the basis is never activated")
    return float(np.dot(b, y)) / den


def _rls_fold(acts, targets) -> RlsState:
    """``rls_update`` folded over a stream, on plain floats for speed."""
    w, L, n = 0.0, math.inf, 0
    for a, t in zip(acts.tolist(), targets.tolist()):
        if a == 0.0:
            continue
        if n == 0:
            w, L = t / a, 1.0 / (a * a)
        else:
            L = L / (1.0 + a * a * L)
            w = w + a * L * (t - a * w)
        n += 1
    return RlsState(w, L, n) if n else UNINITIALIZED


# -- neighborhood learning -----------------------------------------------------------

def fit_neighborhood(samples, pr: int, perceptlet: Perceptlet, max_sweeps: int = 1000,
                     tol: float = 1e-14):
    """Fit from samples anywhere in [-1, 1] by a level cascade.

    Each sweep visits levels 1..pr in order. Level k is refit against the
    residual ``y - (contribution of all other levels)``: the two level-1
    weights jointly by least squares (minimum norm if singular), every
    higher basis on its own by recursive least squares. The first sweep is
    the plain coarse-to-fine cascade; later sweeps refine until no weight
    moves by more than ``tol``, which converges to the joint least-squares
    fit. ``max_sweeps=1`` gives the single cascade.

    Returns ``(model, report)``.
    """
    samples = as_samples(samples)
    if not samples:
        raise PerceptionDomainError("cannot fit an empty sample set")
    if max_sweeps < 1:
        raise PerceptionDomainError("max_sweeps must be >= 1")
    basis_count(pr)
    xs = np.array([s.x for s in samples])
    ys = np.array([s.y for s in samples])
    bases = bases_up_to(pr)
    A = np.column_stack([eval_basis(perceptlet, b, xs) for b in bases])
    by_level = [np.array([j for j, b in enumerate(bases) if b.level == k]) for k in range(1, pr + 1)]
    active = [np.flatnonzero(A[:, j]) for j in range(len(bases))]

    w = np.zeros(len(bases))
    fitted = A @ w
    sweeps, converged = 0, False
    while sweeps < max_sweeps:
        sweeps += 1
        before = w.copy()
        for level, idx in enumerate(by_level, start=1):
            cols = A[:, idx]
            target = ys - (fitted - cols @ w[idx])
            if level == 1:
                new = np.linalg.lstsq(cols, target, rcond=None)[0]
            else:
                new = np.array([_rls_fold(A[active[j], j], target[active[j]]).w_hat for j in idx])
            fitted = fitted + cols @ (new - w[idx])
            w[idx] = new
        if np.max(np.abs(w - before)) <= tol:
            converged = True
            break

    model = PerceptionModel(perceptlet, pr, dict(zip(bases, w.tolist())))
    per_level = _residuals(model, xs, ys)
    warnings = range_violations(model)
    if max_sweeps > 1 and not converged:
        warnings.append(f"refinement did not settle within {max_sweeps} sweeps")
    report = FitReport(sweeps * pr, per_level[-1], per_level, NEIGHBORHOOD,
                       sweeps=sweeps, converged=converged or max_sweeps == 1, warnings=warnings)
    return model, report


class OnlineTrainer:
    """Incremental training, one sample at a time.

    Each observation runs through the levels in ascending order. The level-1
    pair is kept as the exact least-squares fit of everything seen so far;
    each higher basis active at the sample takes one recursive least-squares
    step toward the residual left by the current coarser levels.

    Single writer: do not share one trainer between threads.
    """

    def __init__(self, perceptlet: Perceptlet, pr: int):
        basis_count(pr)
        self.perceptlet = perceptlet
        self.pr = pr
        self.bases = bases_up_to(pr)
        self.states = {b: UNINITIALIZED for b in self.bases if b.level >= 2}
        self._gram = np.zeros((2, 2))
        self._rhs = np.zeros(2)
        self._weights = {b: 0.0 for b in self.bases}
        self.n_observed = 0

    def observe(self, sample) -> None:
        sample = sample if isinstance(sample, Sample) else Sample(*sample)
        x, y = sample.x, sample.y
        acts = {b: eval_basis(self.perceptlet, b, x) for b in self.bases}

        lo, hi = BasisId(1, -1), BasisId(1, 1)
        a1 = np.array([acts[lo], acts[hi]])
        self._gram += np.outer(a1, a1)
        self._rhs += a1 * y
        w1 = np.linalg.lstsq(self._gram, self._rhs, rcond=None)[0]
        self._weights[lo], self._weights[hi] = float(w1[0]), float(w1[1])

        estimate = float(a1 @ w1)
        for k in range(2, self.pr + 1):
            residual = y - estimate
            for b in self.bases:
                if b.level != k or acts[b] == 0.0:
                    continue
                self.states[b] = rls_update(self.states[b], acts[b], residual)
                self._weights[b] = self.states[b].w_hat
            estimate += sum(self._weights[b] * acts[b] for b in self.bases if b.level == k)
        self.n_observed += 1

    def observe_all(self, samples: Iterable) -> None:
        for s in samples:
            self.observe(s)

    @property
    def model(self) -> PerceptionModel:
        """A frozen snapshot of the current weights."""
        return PerceptionModel(self.perceptlet, self.pr, self._weights)


def fit_online(samples, pr: int, perceptlet: Perceptlet):
    """Stream ``samples`` once through an :class:`OnlineTrainer`.

    Returns ``(model, report)`` like the batch fits.
    """
    samples = as_samples(samples)
    if not samples:
        raise PerceptionDomainError("cannot fit an empty sample set")
    trainer = OnlineTrainer(perceptlet, pr)
    trainer.observe_all(samples)
    model = trainer.model
    per_level = _residuals(model, np.array([s.x for s in samples]), np.array([s.y for s in samples]))
    return model, FitReport(1, per_level[-1], per_level, ONLINE, warnings=range_violations(model))

"""Multi-resolution perception models.

A model stores one weight per basis. Level-1 weights are the function values
at -1 and +1; every weight of level >= 2 is a correction, the residual
between a nodal value and the coarser approximation at that node. The
estimate at level ``k`` is

    f_k(x) = sum over bases of level <= k of  weight * basis(x)

so ``f_k = f_{k-1} + d_k`` where ``d_k`` collects the level-k terms.
Bases with no stored weight count as zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .basis import CUSTOM, BasisId, Perceptlet, _as_domain, bases_up_to, eval_basis
from .errors import ModelFormatError, PerceptionDomainError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class PerceptionModel:
    perceptlet: Perceptlet
    pr: int
    weights: Mapping[BasisId, float] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.pr, (int, np.integer)) or self.pr < 1:
            raise PerceptionDomainError(f"perception resolution must be >= 1, got {self.pr!r}")
        clean = {}
        for key, w in dict(self.weights).items():
            if not isinstance(key, BasisId):
                key = BasisId(*key)
            if key.level > self.pr:
                raise PerceptionDomainError(f"{key} exceeds resolution {self.pr}")
            clean[key] = float(w)
        object.__setattr__(self, "pr", int(self.pr))
        object.__setattr__(self, "weights", MappingProxyType(dict(sorted(clean.items()))))

    def weight(self, level, center) -> float:
        return self.weights.get(BasisId(level, Fraction(center)), 0.0)

    def with_weights(self, weights) -> "PerceptionModel":
        return PerceptionModel(self.perceptlet, self.pr, weights)

    def level_weights(self, k) -> dict[BasisId, float]:
        return {b: w for b, w in self.weights.items() if b.level == k}

    @property
    def is_complete(self) -> bool:
        return len(self.weights) == basis_count(self.pr)

    def __call__(self, x, up_to_level=None):
        return evaluate(self, x, self.pr if up_to_level is None else up_to_level)


def _check_level(model, k, lowest=1):
    if not isinstance(k, (int, np.integer)) or not lowest <= k <= model.pr:
        raise PerceptionDomainError(f"level must be in [{lowest}, {model.pr}], got {k!r}")


def _level_sum(model, arr, k):
    total = np.zeros(np.shape(arr))
    for b, w in model.weights.items():
        if b.level == k and w != 0.0:
            total = total + w * eval_basis(model.perceptlet, b, arr)
    return total


def _out(values, like):
    return float(values) if np.ndim(like) == 0 else values


def evaluate(model: PerceptionModel, x, up_to_level: int):
    """Estimate at level ``up_to_level``. Not clamped to [0, 1]."""
    _check_level(model, up_to_level)
    arr = _as_domain(x)
    total = np.zeros(np.shape(arr))
    for k in range(1, up_to_level + 1):
        total = total + _level_sum(model, arr, k)
    return _out(total, x)


def realize_all_levels(model: PerceptionModel, x):
    """Estimates ``[f_1(x), ..., f_pr(x)]``.

    For array ``x`` the result has shape ``(pr,) + x.shape``.
    """
    arr = _as_domain(x)
    out = np.empty((model.pr,) + np.shape(arr))
    total = np.zeros(np.shape(arr))
    for k in range(1, model.pr + 1):
        total = total + _level_sum(model, arr, k)
        out[k - 1] = total
    if np.ndim(x) == 0:
        return [float(v) for v in out]
    return out


def level_difference(model: PerceptionModel, x, k: int):
    """Contribution of the level-k corrections, ``f_k(x) - f_{k-1}(x)``."""
    _check_level(model, k, lowest=2)
    arr = _as_domain(x)
    return _out(_level_sum(model, arr, k), x)


def basis_count(pr: int) -> int:
    """Number of bases (and grid nodes) through resolution ``pr``."""
    if not isinstance(pr, (int, np.integer)) or pr < 1:
        raise PerceptionDomainError(f"perception resolution must be >= 1, got {pr!r}")
    if pr == 1:
        return 2
    return 2 ** (pr - 1) + 1


def resolution_for(n_samples: int) -> int:
    """Resolution whose grid has exactly ``n_samples`` nodes."""
    n = n_samples
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise PerceptionDomainError(f"need an integer sample count >= 2, got {n!r}")
    m = n - 1
    if m & (m - 1):
        raise PerceptionDomainError(
            f"{n} samples do not fill a dyadic grid (N-1 = {m} is not a power of two); "
            "pad the samples to 2**(pr-1)+1 grid nodes or fit in neighborhood mode"
        )
    return m.bit_length()  # 1 + log2(N - 1)


@dataclass(frozen=True)
class TruncationReport:
    removed: int
    error_bound: float


def truncate(model: PerceptionModel, epsilon: float):
    """Drop correction weights with magnitude below ``epsilon``.

    Level-1 weights are always kept. Each correction basis peaks at 1, so the
    evaluation error is at most the sum of the removed magnitudes.
    Returns ``(model, TruncationReport)``.
    """
    if not epsilon >= 0:
        raise PerceptionDomainError(f"epsilon must be >= 0, got {epsilon!r}")
    kept, removed = {}, []
    for b, w in model.weights.items():
        if b.level >= 2 and abs(w) < epsilon:
            removed.append(abs(w))
        else:
            kept[b] = w
    return model.with_weights(kept), TruncationReport(len(removed), math.fsum(removed))


def range_violations(model: PerceptionModel) -> list[str]:
    """Weights outside their nominal range: [0, 1] at level 1, [-1, 1] above."""
    out = []
    for b, w in model.weights.items():
        lo = 0.0 if b.level == 1 else -1.0
        if not lo <= w <= 1.0:
            out.append(f"weight {w!r} at {b} outside [{lo:g}, 1]")
    return out


def full_model(perceptlet: Perceptlet, pr: int, weights=()) -> PerceptionModel:
    """Model with every basis through ``pr`` present, zero unless given."""
    ws = {b: 0.0 for b in bases_up_to(pr)}
    ws.update({(k if isinstance(k, BasisId) else BasisId(*k)): v for k, v in dict(weights).items()})
    return PerceptionModel(perceptlet, pr, ws)


def to_perception_space(y_real):
    """Squash a real quantity into (-1, 1) with tanh."""
    y = np.asarray(y_real, dtype=float)
    if not np.all(np.isfinite(y)):
        raise PerceptionDomainError("tanh mapping needs finite inputs")
    return _out(np.tanh(y), y_real)


def from_perception_space(x):
    """Inverse of :func:`to_perception_space`; defined on the open interval."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(np.abs(arr) < 1.0)):
        raise PerceptionDomainError("inverse tanh needs x strictly inside (-1, 1)")
    return _out(0.5 * np.log((1.0 + arr) / (1.0 - arr)), x)


def model_to_dict(model: PerceptionModel) -> dict:
    if model.perceptlet.kind == CUSTOM:
        raise ModelFormatError("models over custom perceptlets cannot be serialized")
    return {
        "version": FORMAT_VERSION,
        "perceptlet": model.perceptlet.kind,
        "pr": model.pr,
        "weights": [
            {"level": b.level, "center_num": b.center.numerator,
             "center_den": b.center.denominator, "w": w}
            for b, w in model.weights.items()
        ],
    }


def _require(doc, key, types):
    if key not in doc:
        raise ModelFormatError(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, types):
        raise ModelFormatError(f"field {key!r} has wrong type {type(v).__name__}")
    return v


def model_from_dict(doc) -> PerceptionModel:
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    version = _require(doc, "version", int)
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model version {version}; this reader handles {FORMAT_VERSION}")
    family = _require(doc, "perceptlet", str)
    try:
        perceptlet = Perceptlet.from_name(family)
    except PerceptionDomainError as exc:
        raise ModelFormatError(str(exc)) from None
    pr = _require(doc, "pr", int)
    if pr < 1:
        raise ModelFormatError(f"pr must be >= 1, got {pr}")
    weights = {}
    for i, rec in enumerate(_require(doc, "weights", list)):
        if not isinstance(rec, dict):
            raise ModelFormatError(f"weights[{i}] is not an object")
        try:
            level = _require(rec, "level", int)
            num = _require(rec, "center_num", int)
            den = _require(rec, "center_den", int)
            w = _require(rec, "w", (int, float))
        except ModelFormatError as exc:
            raise ModelFormatError(f"weights[{i}]: {exc}") from None
        if den <= 0 or den & (den - 1):
            raise ModelFormatError(f"weights[{i}]: center {num}/{den} is not dyadic")
        if not math.isfinite(w):
            raise ModelFormatError(f"weights[{i}]: weight is not finite")
        if level > pr:
            raise ModelFormatError(f"weights[{i}]: level {level} exceeds pr {pr}")
        try:
            key = BasisId(level, Fraction(num, den))
        except PerceptionDomainError as exc:
            raise ModelFormatError(f"weights[{i}]: {exc}") from None
        if key in weights:
            raise ModelFormatError(f"weights[{i}]: duplicate basis {key}")
        weights[key] = float(w)
    return PerceptionModel(perceptlet, pr, weights)

"""The perception automaton: decomposition, learning and realization.

Decomposition turns an input into the activations of every basis that is
excited by it. Learning sets the weights from samples (see
:mod:`perceptlet.learner`). Realization replays the stored weights level by
level and never touches them.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .basis import BasisId, Perceptlet, bases_up_to, eval_basis
from .errors import ModelFormatError, PerceptionDomainError
from .learner import (BOUNDARY, NEIGHBORHOOD, ONLINE, OnlineTrainer, Sample, fit_boundary,
                      fit_neighborhood, fit_online)
from .model import (PerceptionModel, model_from_dict, model_to_dict, realize_all_levels,
                    to_perception_space, truncate)

TANH = "tanh"
MODES = (BOUNDARY, NEIGHBORHOOD, ONLINE)


class Activation(NamedTuple):
    basis: BasisId
    value: float


@dataclass(frozen=True)
class AutomatonConfig:
    perceptlet: Perceptlet
    pr: int
    mode: str = BOUNDARY
    input_map: Optional[str] = None
    truncate_epsilon: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.pr, int) or self.pr < 1:
            raise PerceptionDomainError(f"pr must be an integer >= 1, got {self.pr!r}")
        if self.mode not in MODES:
            raise PerceptionDomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.input_map not in (None, TANH):
            raise PerceptionDomainError(f"unknown input mapping {self.input_map!r}")
        if self.truncate_epsilon is not None and not self.truncate_epsilon >= 0:
            raise PerceptionDomainError("truncation epsilon must be >= 0")

    def map_input(self, x):
        return to_perception_space(x) if self.input_map == TANH else x


def decompose(config: AutomatonConfig, x) -> list[Activation]:
    """Excited bases at ``x``, ordered by level then center."""
    x = float(config.map_input(x))
    out = []
    for b in bases_up_to(config.pr):
        v = eval_basis(config.perceptlet, b, x)
        if v != 0.0:
            out.append(Activation(b, v))
    return out


class Realization(NamedTuple):
    levels: list
    final: float


def realize(model: PerceptionModel, x, config: Optional[AutomatonConfig] = None) -> Realization:
    """Per-level estimates ``f_1..f_pr`` at ``x`` and the finest one."""
    if config is not None:
        x = config.map_input(x)
    levels = realize_all_levels(model, float(x))
    return Realization(levels, levels[-1])


def timing_estimate(config: AutomatonConfig, node_delay: float) -> float:
    """Response time of a pass through all levels, one node delay per level."""
    if not node_delay > 0:
        raise PerceptionDomainError(f"node delay must be positive, got {node_delay!r}")
    return config.pr * node_delay


class Automaton:
    """Ties a configuration to a model and its training lifecycle.

    ``fit`` replaces the model in batch; ``observe`` feeds an online stream.
    Any configured input mapping is applied on both the training and the
    realization side.
    """

    def __init__(self, config: AutomatonConfig):
        self.config = config
        self.model: Optional[PerceptionModel] = None
        self.report = None
        self._trainer = None

    def _sample(self, s):
        x, y = (s.x, s.y) if isinstance(s, Sample) else s
        return Sample(self.config.map_input(x), y)

    def _finish(self, model):
        eps = self.config.truncate_epsilon
        if eps is not None:
            model, _ = truncate(model, eps)
        return model

    def fit(self, samples) -> PerceptionModel:
        samples = [self._sample(s) for s in samples]
        cfg = self.config
        if cfg.mode == BOUNDARY:
            model, self.report = fit_boundary(samples, cfg.pr, cfg.perceptlet)
        elif cfg.mode == NEIGHBORHOOD:
            model, self.report = fit_neighborhood(samples, cfg.pr, cfg.perceptlet)
        else:
            model, self.report = fit_online(samples, cfg.pr, cfg.perceptlet)
        self.model = self._finish(model)
        return self.model

    def observe(self, sample) -> PerceptionModel:
        if self._trainer is None:
            self._trainer = OnlineTrainer(self.config.perceptlet, self.config.pr)
        self._trainer.observe(self._sample(sample))
        self.model = self._finish(self._trainer.model)
        return self.model

    def decompose(self, x):
        return decompose(self.config, x)

    def realize(self, x) -> Realization:
        if self.model is None:
            raise PerceptionDomainError("the automaton has not learned anything yet")
        return realize(self.model, x, self.config)


def dumps_model(model: PerceptionModel) -> str:
    return json.dumps(model_to_dict(model), indent=1) + "\n"


def loads_model(text: str) -> PerceptionModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from None
    return model_from_dict(doc)


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_model(model: PerceptionModel, destination) -> None:
    atomic_write(destination, dumps_model(model))


def load_model(source) -> PerceptionModel:
    with open(source, encoding="utf-8") as fh:
        return loads_model(fh.read())


def realize_grid(model: PerceptionModel, density: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grid over [-1, 1] and the ``(pr, density)`` per-level estimates."""
    if density < 2:
        raise PerceptionDomainError("grid density must be >= 2")
    xs = np.linspace(-1.0, 1.0, density)
    return xs, realize_all_levels(model, xs)

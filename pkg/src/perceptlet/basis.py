"""Percept-let basis families and the level/center indexed hierarchy.

A family is fixed by its father function ``b(x)`` on [-1, +1], rising from 0
at -1 through 1/2 at 0 to 1 at +1. The mother is ``1 - b(x)``. The daughter
joins a compressed father on [-1, 0] to a compressed mother on (0, 1], giving
a bump that peaks at 1 at x = 0 and vanishes at x = +-1.

Bases are indexed by ``BasisId(level, center)``:

* level 1: centers -1 (mother) and +1 (father)
* level 2: center 0 (daughter)
* level i >= 3: the 2**(i-2) odd multiples of 2**-(i-2) inside (-1, 1);
  the basis is the daughter scaled by 2**(i-2) and shifted to its center,
  zero outside its support.

Centers are exact ``Fraction`` values so grid membership is decided exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import PerceptionDomainError

LINEAR = "linear"
SIN = "sin"
CUSTOM = "custom"

_VALIDATION_TOL = 1e-9
_MONOTONE_GRID = 1001
_FD_STEP = 1e-5
_SMOOTHNESS_TOL = 1e-6


def _linear_father(x):
    return 0.5 * (1.0 + x)


def _sin_father(x):
    return 0.5 * (1.0 + np.sin(0.5 * np.pi * x))


@dataclass(frozen=True)
class Perceptlet:
    """A basis family. Build with :meth:`linear`, :meth:`sin` or :meth:`custom`."""

    kind: str
    fn: Callable = field(compare=False, repr=False)
    name: Optional[str] = None

    @classmethod
    def linear(cls):
        return cls(LINEAR, _linear_father)

    @classmethod
    def sin(cls):
        return cls(SIN, _sin_father)

    @classmethod
    def custom(cls, fn, name=None):
        """Wrap ``fn``, a father function mapping [-1, 1] into [0, 1].

        ``fn`` should accept numpy arrays; scalar-only callables are vectorized.
        """
        return cls(CUSTOM, fn, name or getattr(fn, "__name__", "custom"))

    @classmethod
    def from_name(cls, name):
        if name == LINEAR:
            return cls.linear()
        if name == SIN:
            return cls.sin()
        raise PerceptionDomainError(f"unknown perceptlet family {name!r}; expected 'linear' or 'sin'")

    def raw(self, x):
        """Father function without domain checks."""
        x = np.asarray(x, dtype=float)
        try:
            out = self.fn(x)
        except (TypeError, ValueError):
            out = np.vectorize(self.fn, otypes=[float])(x)
        return np.asarray(out, dtype=float)


def _as_domain(x):
    arr = np.asarray(x, dtype=float)
    if arr.size and (np.any(np.isnan(arr)) or arr.min() < -1.0 or arr.max() > 1.0):
        bad = arr[(arr < -1.0) | (arr > 1.0) | np.isnan(arr)].ravel()[0]
        raise PerceptionDomainError(f"x={float(bad)!r} outside perception space [-1, +1]")
    return arr


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def eval_father(p: Perceptlet, x):
    arr = _as_domain(x)
    return _out(p.raw(arr), x)


def eval_mother(p: Perceptlet, x):
    arr = _as_domain(x)
    return _out(1.0 - p.raw(arr), x)


def _daughter(p, u):
    # u already inside [-1, 1]
    left = u <= 0.0
    out = np.empty_like(u)
    out[left] = p.raw(2.0 * u[left] + 1.0)
    out[~left] = 1.0 - p.raw(2.0 * u[~left] - 1.0)
    return out


def eval_daughter(p: Perceptlet, x):
    arr = np.atleast_1d(_as_domain(x))
    return _out(_daughter(p, arr).reshape(np.shape(x)), x)


@dataclass(frozen=True, order=True)
class BasisId:
    level: int
    center: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))
        if not is_valid_basis(self.level, self.center):
            raise PerceptionDomainError(
                f"no basis at level {self.level} with center {self.center}"
            )

    def __repr__(self):
        return f"BasisId({self.level}, {self.center})"

    @property
    def half_width(self) -> Fraction:
        """Half the support length for levels >= 3."""
        return Fraction(1, 2 ** (self.level - 2))


def is_valid_basis(level, center) -> bool:
    if not isinstance(level, (int, np.integer)) or level < 1:
        return False
    c = Fraction(center)
    if level == 1:
        return c in (-1, 1)
    if level == 2:
        return c == 0
    scale = 2 ** (level - 2)
    k = c * scale
    return k.denominator == 1 and k.numerator % 2 == 1 and abs(c) < 1


def centers_at_level(level: int) -> list[Fraction]:
    if not isinstance(level, (int, np.integer)) or level < 1:
        raise PerceptionDomainError(f"level must be an integer >= 1, got {level!r}")
    if level == 1:
        return [Fraction(-1), Fraction(1)]
    if level == 2:
        return [Fraction(0)]
    scale = 2 ** (level - 2)
    return [Fraction(k, scale) for k in range(-scale + 1, scale, 2)]


def bases_up_to(pr: int) -> list[BasisId]:
    """All basis ids of levels 1..pr, ordered by level then center."""
    return [BasisId(i, c) for i in range(1, pr + 1) for c in centers_at_level(i)]


def grid_nodes(pr: int) -> list[Fraction]:
    """The sorted dyadic nodes of resolution ``pr``; one per basis."""
    return sorted(b.center for b in bases_up_to(pr))


def eval_basis(p: Perceptlet, basis: BasisId, x):
    arr = _as_domain(x)
    level, center = basis.level, basis.center
    if level == 1:
        f = p.raw(arr)
        return _out(f if center > 0 else 1.0 - f, x)
    if level == 2:
        return eval_daughter(p, x)
    u = np.atleast_1d((2 ** (level - 2)) * (arr - float(center)))
    out = np.zeros_like(u)
    inside = np.abs(u) <= 1.0
    out[inside] = _daughter(p, u[inside])
    return _out(out.reshape(np.shape(x)), x)


@dataclass
class ValidationReport:
    """Per-condition outcome of :func:`validate_perceptlet`.

    ``smooth_boundaries`` (derivative matching at +-1) is informational and
    does not affect :attr:`ok`.
    """

    zero_at_minus_one: bool
    one_at_plus_one: bool
    half_at_zero: bool
    non_decreasing: bool
    in_unit_range: bool
    smooth_boundaries: bool
    boundary_slopes: tuple[float, float]
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.zero_at_minus_one and self.one_at_plus_one and self.half_at_zero
                and self.non_decreasing and self.in_unit_range)


def _slope(p, x0):
    h = _FD_STEP
    try:
        with np.errstate(all="ignore"):
            fwd, bwd = p.raw(x0 + h), p.raw(x0 - h)
        if np.isfinite(fwd) and np.isfinite(bwd):
            return float((fwd - bwd) / (2 * h))
    except (ValueError, ArithmeticError):
        pass
    # evaluator undefined past the boundary: second-order one-sided stencil
    d = -h if x0 > 0 else h
    f0, f1, f2 = (float(p.raw(x0 + i * d)) for i in range(3))
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * d)


def validate_perceptlet(p: Perceptlet) -> ValidationReport:
    msgs = []
    grid = np.linspace(-1.0, 1.0, _MONOTONE_GRID)
    vals = p.raw(grid)
    b_lo, b_mid, b_hi = (float(v) for v in p.raw(np.array([-1.0, 0.0, 1.0])))

    a = abs(b_lo) <= _VALIDATION_TOL
    b = abs(b_hi - 1.0) <= _VALIDATION_TOL
    c = abs(b_mid - 0.5) <= _VALIDATION_TOL
    d = bool(np.all(np.diff(vals) >= -_VALIDATION_TOL))
    in_range = bool(np.all((vals >= -_VALIDATION_TOL) & (vals <= 1.0 + _VALIDATION_TOL)))
    if not a:
        msgs.append(f"b(-1) = {b_lo!r}, expected 0")
    if not b:
        msgs.append(f"b(+1) = {b_hi!r}, expected 1")
    if not c:
        msgs.append(f"b(0) = {b_mid!r}, expected 1/2")
    if not d:
        i = int(np.argmin(np.diff(vals)))
        msgs.append(f"b decreases between x={grid[i]:.4g} and x={grid[i + 1]:.4g}")
    if not in_range:
        msgs.append("b leaves [0, 1] on the domain")

    # father'(x) must equal mother'(-x) at x = +-1, i.e. b'(1) == -b'(-1)
    s_hi, s_lo = _slope(p, 1.0), _slope(p, -1.0)
    e = abs(s_hi + s_lo) <= _SMOOTHNESS_TOL and math.isfinite(s_hi + s_lo)
    return ValidationReport(a, b, c, d, in_range, e, (s_lo, s_hi), msgs)

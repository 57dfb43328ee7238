"""Perception logic: the C-bit algebra.

A C-bit holds two belonging degrees at once: ``l_pos`` to the extreme +1 and
``l_neg`` to the extreme -1, with ``l_pos + l_neg == 1``. Its perception value
(the norm) is ``l_pos - l_neg`` in [-1, +1]. A separate ``NULL`` state stands
for a passive observable that carries no components at all.

Operators on ``NULL``: it is absorbing for AND, the identity for OR, and has
no tensor product.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import PerceptionDomainError

SUM_TOL = 1e-12


class NullCbit:
    """The passive (null) state. Use the module singleton ``NULL``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NULL"

    def __reduce__(self):
        return (NullCbit, ())


NULL = NullCbit()


@dataclass(frozen=True)
class Cbit:
    l_pos: float
    l_neg: float

    def __post_init__(self):
        lp, ln = float(self.l_pos), float(self.l_neg)
        for name, v in (("l_pos", lp), ("l_neg", ln)):
            if not (-SUM_TOL <= v <= 1.0 + SUM_TOL):
                raise PerceptionDomainError(f"{name}={v!r} outside [0, 1]")
        total = lp + ln
        if abs(total - 1.0) > SUM_TOL:
            raise PerceptionDomainError(
                f"belonging degrees must sum to 1, got {lp!r} + {ln!r} = {total!r}"
            )
        if total != 1.0:
            lp, ln = lp / total, ln / total
        object.__setattr__(self, "l_pos", min(max(lp, 0.0), 1.0))
        object.__setattr__(self, "l_neg", min(max(ln, 0.0), 1.0))

    @property
    def perception(self) -> float:
        return self.l_pos - self.l_neg

    def __iter__(self):
        yield self.l_pos
        yield self.l_neg


CbitLike = Union[Cbit, NullCbit]


@dataclass(frozen=True)
class Association:
    """Output belonging degrees observed at input +1 and at input -1."""

    w_pos: float
    w_neg: float

    def __post_init__(self):
        for name in ("w_pos", "w_neg"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise PerceptionDomainError(f"{name}={v!r} outside [0, 1]")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class Tensor2:
    """Joint belonging of two observables over the bases (+x+y, +x-y, -x+y, -x-y)."""

    pp: float
    pn: float
    np_: float
    nn: float

    def as_tuple(self):
        return (self.pp, self.pn, self.np_, self.nn)


def _check_perception(x, name="x"):
    x = float(x)
    if not -1.0 <= x <= 1.0:
        raise PerceptionDomainError(f"{name}={x!r} outside perception space [-1, +1]")
    return x


def cbit_from_perception(x) -> CbitLike:
    if x is NULL:
        return NULL
    x = _check_perception(x)
    return Cbit(0.5 * (1.0 + x), 0.5 * (1.0 - x))


def perception_of(c: CbitLike):
    if c is NULL:
        return NULL
    return c.l_pos - c.l_neg


def complement(c: CbitLike) -> CbitLike:
    if c is NULL:
        return NULL
    return Cbit(c.l_neg, c.l_pos)


def cbit_or(c1: CbitLike, c2: CbitLike) -> CbitLike:
    """Average of the two C-bits. A null operand contributes nothing."""
    if c1 is NULL:
        return c2
    if c2 is NULL:
        return c1
    return Cbit(0.5 * (c1.l_pos + c2.l_pos), 0.5 * (c1.l_neg + c2.l_neg))


def cbit_and(c1: CbitLike, c2: CbitLike) -> CbitLike:
    """Product norm: ``perception_of(c1 & c2) == perception_of(c1) * perception_of(c2)``."""
    if c1 is NULL or c2 is NULL:
        return NULL
    return Cbit(
        c1.l_pos * c2.l_pos + c1.l_neg * c2.l_neg,
        c1.l_pos * c2.l_neg + c1.l_neg * c2.l_pos,
    )


def tensor(c1: CbitLike, c2: CbitLike) -> Tensor2:
    if c1 is NULL or c2 is NULL:
        raise PerceptionDomainError("tensor product is undefined for the null state")
    return Tensor2(
        c1.l_pos * c2.l_pos,
        c1.l_pos * c2.l_neg,
        c1.l_neg * c2.l_pos,
        c1.l_neg * c2.l_neg,
    )


def apply_association(w: Association, c: CbitLike) -> CbitLike:
    """Map an input C-bit through an association.

    The second output component is the complement ``1 - l_y``, which keeps the
    result a valid C-bit.
    """
    if c is NULL:
        return NULL
    l_y = w.w_pos * c.l_pos + w.w_neg * c.l_neg
    l_y = min(max(l_y, 0.0), 1.0)
    return Cbit(l_y, 1.0 - l_y)


def estimate_association(l_y_at_pos, l_y_at_neg) -> Association:
    """Read an association off the output observed at the two input extremes."""
    for name, v in (("l_y_at_pos", l_y_at_pos), ("l_y_at_neg", l_y_at_neg)):
        if not 0.0 <= float(v) <= 1.0:
            raise PerceptionDomainError(f"{name}={float(v)!r} outside [0, 1]")
    return Association(l_y_at_pos, l_y_at_neg)


def subspace_coordinates(x) -> tuple[float, float]:
    """Relative coordinates of ``x`` in the right half [0, 1] and left half [-1, 0].

    Returns ``(x_right, x_left)``; the coordinate of the half not containing
    ``x`` is 0. ``x == 0`` belongs to the right half, giving ``(-1.0, 0.0)``.
    """
    x = _check_perception(x)
    if x >= 0.0:
        return 2.0 * x - 1.0, 0.0
    return 0.0, 2.0 * x + 1.0

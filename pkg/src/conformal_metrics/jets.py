"""Order-3 jet arithmetic for analytic maps.

A jet carries the value and the first three raw derivatives of an analytic
map at a fixed base point.  Order 3 is the smallest truncation closed under
composition that still determines both the pre-Schwarzian f''/f' and the
Schwarzian f'''/f' - (3/2)(f''/f')^2.  Derivatives are stored raw, not as
Taylor coefficients.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import NotLocallyUnivalentError

__all__ = ["Jet3", "compose", "scale", "pre_schwarzian", "schwarzian"]


@dataclass(frozen=True, slots=True)
class Jet3:
    """Value and first three derivatives of an analytic map at a point."""

    f0: complex
    f1: complex
    f2: complex
    f3: complex

    def __post_init__(self):
        for v in (self.f0, self.f1, self.f2, self.f3):
            if not (cmath.isfinite(complex(v))):
                raise ValueError("jet entries must be finite")

    @property
    def locally_univalent(self) -> bool:
        return self.f1 != 0


def compose(outer: Jet3, inner: Jet3) -> Jet3:
    """Jet of f o g from the jet of f at g(z) and the jet of g at z.

    Order-3 chain rule (Faa di Bruno with raw derivatives):
      h1 = f1 g1,  h2 = f2 g1^2 + f1 g2,  h3 = f3 g1^3 + 3 f2 g1 g2 + f1 g3.
    """
    g1, g2, g3 = inner.f1, inner.f2, inner.f3
    return Jet3(
        outer.f0,
        outer.f1 * g1,
        outer.f2 * g1 * g1 + outer.f1 * g2,
        outer.f3 * g1 ** 3 + 3 * outer.f2 * g1 * g2 + outer.f1 * g3,
    )


def scale(c: complex, j: Jet3) -> Jet3:
    """Every entry multiplied by c (the jet of c*f)."""
    return Jet3(c * j.f0, c * j.f1, c * j.f2, c * j.f3)


def pre_schwarzian(j: Jet3) -> complex:
    """f''/f' at the base point.  Requires local univalence (f' != 0)."""
    if j.f1 == 0:
        raise NotLocallyUnivalentError("pre-Schwarzian undefined: f' = 0")
    return j.f2 / j.f1


def schwarzian(j: Jet3) -> complex:
    """f'''/f' - (3/2)(f''/f')^2 at the base point.  Requires f' != 0."""
    if j.f1 == 0:
        raise NotLocallyUnivalentError("Schwarzian undefined: f' = 0")
    t = j.f2 / j.f1
    return j.f3 / j.f1 - 1.5 * t * t

"""Catalog of hyperbolic plane regions.

Each domain answers membership, Euclidean boundary distance, hyperbolic
density (curvature -4 normalization throughout: lambda_disk(z) = 1/(1-|z|^2))
and produces boundary samples.  Densities of the two slit domains are obtained
by pulling the disk density back through explicit conformal maps; everything
else is closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import (
    MapNotUnivalentError,
    MembershipUndecidableError,
    NoDensityRouteError,
    OutsideDomainError,
    SingularPointError,
)

__all__ = [
    "Domain",
    "unit_disk",
    "punctured_disk",
    "upper_half_plane",
    "koebe_slit_plane",
    "slit_disk",
    "log_strip",
    "image_domain",
    "contains",
    "boundary_distance",
    "hyperbolic_density",
    "pushforward_density",
    "image_boundary_distance",
    "boundary_samples",
    "simply_connected",
]

# Truncation radius for sampling unbounded boundary components.
SLIT_TRUNCATION_RADIUS = 1e6


@dataclass(frozen=True)
class Domain:
    """A hyperbolic region identified by a catalog tag plus parameters."""

    kind: str
    params: tuple = ()
    # Opaque payload for image domains: (map, base, boundary_samples).
    payload: Any = field(default=None, compare=False)

    def __repr__(self):
        if self.params:
            return f"Domain({self.kind}, {self.params})"
        return f"Domain({self.kind})"


def unit_disk() -> Domain:
    return Domain("unit_disk")


def punctured_disk() -> Domain:
    return Domain("punctured_disk")


def upper_half_plane() -> Domain:
    return Domain("upper_half_plane")


def koebe_slit_plane() -> Domain:
    """The plane minus the ray (-inf, -1/4]; the image of the disk under the
    Koebe function."""
    return Domain("koebe_slit_plane")


def slit_disk(center: complex = 0j) -> Domain:
    """center + (unit disk minus the radius (-1, 0]).

    The single-valuedness base for c*Log(z - center).
    """
    return Domain("slit_disk", (complex(center),))


def log_strip(c: complex = 1 + 0j) -> Domain:
    """c times the half-strip {Re w < 0, |Im w| < pi}; the image of the slit
    disk under c*Log."""
    if c == 0:
        raise ValueError("log_strip scale must be nonzero")
    return Domain("log_strip", (complex(c),))


def image_domain(f, base: Domain, boundary_samples_count: int) -> Domain:
    """Image of `base` under a univalent map, known only through boundary
    samples."""
    if not f.univalent:
        raise MapNotUnivalentError("image domains require a univalent map")
    if boundary_samples_count < 64:
        raise ValueError("image domains need at least 64 boundary samples")
    return Domain("image", (boundary_samples_count,), payload=(f, base))


# ---------------------------------------------------------------------------
# membership

def _dist_to_segment(z: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((z - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def contains(D: Domain, z: complex) -> bool:
    """True iff z is an interior point of D."""
    z = complex(z)
    kind = D.kind
    if kind == "unit_disk":
        return abs(z) < 1.0
    if kind == "punctured_disk":
        return z != 0 and abs(z) < 1.0
    if kind == "upper_half_plane":
        return z.imag > 0.0
    if kind == "koebe_slit_plane":
        return not (z.imag == 0.0 and z.real <= -0.25)
    if kind == "slit_disk":
        u = z - D.params[0]
        return abs(u) < 1.0 and not (u.imag == 0.0 and u.real <= 0.0)
    if kind == "log_strip":
        u = z / D.params[0]
        return u.real < 0.0 and abs(u.imag) < math.pi
    if kind == "image":
        raise MembershipUndecidableError(
            "membership of a raw point in a sampled image domain is undecidable"
        )
    raise ValueError(f"unknown domain kind {kind!r}")


def _require_inside(D: Domain, z: complex):
    if not contains(D, z):
        raise OutsideDomainError(f"{z} is not an interior point of {D}")


# ---------------------------------------------------------------------------
# boundary distance

def boundary_distance(D: Domain, z: complex) -> float:
    """Euclidean distance from z to the boundary of D (closed forms, except
    for sampled image domains)."""
    z = complex(z)
    kind = D.kind
    if kind == "image":
        f, base = D.payload
        bs = boundary_samples(D, D.params[0])
        return min(abs(z - b) for b in bs)
    _require_inside(D, z)
    if kind == "unit_disk":
        return 1.0 - abs(z)
    if kind == "punctured_disk":
        return min(abs(z), 1.0 - abs(z))
    if kind == "upper_half_plane":
        return z.imag
    if kind == "koebe_slit_plane":
        if z.real >= -0.25:
            return abs(z + 0.25)
        return abs(z.imag)
    if kind == "slit_disk":
        u = z - D.params[0]
        return min(1.0 - abs(u), _dist_to_segment(u, -1.0 + 0j, 0j))
    if kind == "log_strip":
        c = D.params[0]
        u = z / c
        return abs(c) * min(-u.real, math.pi - u.imag, math.pi + u.imag)
    raise ValueError(f"unknown domain kind {kind!r}")


# ---------------------------------------------------------------------------
# hyperbolic density

def _koebe_jet1(z: complex) -> complex:
    return (1 + z) / (1 - z) ** 3


def _koebe_inverse(w: complex) -> complex:
    # Solve w*z^2 - (2w+1)*z + w = 0 for the root inside the disk.  The
    # principal sqrt is safe: 4w+1 hits the cut only on the excluded ray.
    if w == 0:
        return 0j
    return (2 * w + 1 - cmath.sqrt(4 * w + 1)) / (2 * w)


def _slit_disk_preimage(u: complex):
    """Conformal map of the slit disk onto the disk, with derivative.

    Chain: u -> s = sqrt(-u) (branch arg in (0, 2pi)) onto the upper half
    disk, s -> t = -(s + 1/s)/2 onto the upper half plane, t -> (t-i)/(t+i)
    onto the disk.  Returns (value, derivative).
    """
    v = -u
    th = cmath.phase(v)
    if th <= 0.0:
        th += 2 * math.pi
    s = cmath.exp(0.5 * (math.log(abs(v)) + 1j * th))
    t = -(s + 1 / s) / 2
    zeta = (t - 1j) / (t + 1j)
    ds = -1 / (2 * s)
    dt = -(1 - 1 / (s * s)) / 2
    dzeta = 2j / (t + 1j) ** 2
    return zeta, dzeta * dt * ds


def hyperbolic_density(D: Domain, z: complex) -> float:
    """Poincare density of D at z, curvature -4 normalization."""
    z = complex(z)
    kind = D.kind
    if kind in ("image", "log_strip"):
        # no conformal route back to the disk is stored for these
        raise NoDensityRouteError(f"no conformal route to the disk for {D}")
    _require_inside(D, z)
    if kind == "unit_disk":
        return 1.0 / (1.0 - abs(z) ** 2)
    if kind == "punctured_disk":
        r = abs(z)
        return 1.0 / (2.0 * r * math.log(1.0 / r))
    if kind == "upper_half_plane":
        return 1.0 / (2.0 * z.imag)
    if kind == "koebe_slit_plane":
        z0 = _koebe_inverse(z)
        return (1.0 / (1.0 - abs(z0) ** 2)) / abs(_koebe_jet1(z0))
    if kind == "slit_disk":
        zeta, dphi = _slit_disk_preimage(z - D.params[0])
        den = 1.0 - abs(zeta) ** 2
        if den <= 0.0:
            # interior per `contains`, but so close to the slit that the
            # uniformizing preimage rounds onto the unit circle
            raise SingularPointError(
                "point too close to the slit for the density route"
            )
        return abs(dphi) / den
    raise NoDensityRouteError(f"no conformal route to the disk for {D}")


def pushforward_density(f, base: Domain, z: complex) -> float:
    """lambda of f(base) at the point f(z), via conformal invariance:
    lambda_{f(D)}(f(z)) = lambda_D(z) / |f'(z)|."""
    from .errors import SingularPointError

    _require_inside(base, z)
    j = f.jet(z)
    if j.f1 == 0:
        raise SingularPointError(f"f'({z}) = 0")
    return hyperbolic_density(base, z) / abs(j.f1)


# ---------------------------------------------------------------------------
# image boundary distance

def image_boundary_distance(f, base: Domain, z: complex, n: int = 4096) -> float:
    """delta of f(base) at f(z).

    Exact when the image domain is in the catalog; otherwise the minimum
    distance to n mapped boundary samples (an upper approximation that
    converges as n grows).
    """
    if not f.univalent:
        raise MapNotUnivalentError(f"{f.kind} is not univalent")
    _require_inside(base, z)
    w = f.value(z)
    if f.image_domain is not None:
        return boundary_distance(f.image_domain, w)
    if n < 64:
        raise ValueError("need at least 64 boundary samples")
    best = math.inf
    for b in boundary_samples(base, n):
        try:
            fb = f.value_unchecked(b)
        except (ArithmeticError, ValueError):
            continue  # essential singularity on the boundary: skip
        if not cmath.isfinite(fb):
            continue
        d = abs(w - fb)
        if d < best:
            best = d
    if not math.isfinite(best):
        raise ValueError("no usable boundary samples")
    return best


# ---------------------------------------------------------------------------
# boundary sampling

def _geometric_ray(n: int, radius: float) -> np.ndarray:
    """n offsets along [0, radius] starting at 0 with geometric spacing."""
    if n == 1:
        return np.array([0.0])
    return (radius + 1.0) ** (np.arange(n) / (n - 1)) - 1.0


def boundary_samples(D: Domain, n: int) -> list[complex]:
    """n points approximately equidistributed over the boundary components."""
    if n < 1:
        raise ValueError("need n >= 1")
    kind = D.kind
    if kind == "unit_disk":
        th = 2 * math.pi * np.arange(n) / n
        return [cmath.rect(1.0, t) for t in th]
    if kind == "punctured_disk":
        return [0j] + boundary_samples(unit_disk(), n - 1) if n > 1 else [0j]
    if kind == "upper_half_plane":
        half = (n - 1) // 2
        pos = _geometric_ray(half + 1, SLIT_TRUNCATION_RADIUS)
        xs = sorted(set(np.concatenate([-pos, pos]).tolist()))[: max(n, 1)]
        return [complex(x, 0.0) for x in xs]
    if kind == "koebe_slit_plane":
        offs = _geometric_ray(n, SLIT_TRUNCATION_RADIUS)
        return [complex(-0.25 - t, 0.0) for t in offs]
    if kind == "slit_disk":
        c = D.params[0]
        ncirc = (n + 1) // 2
        nseg = n - ncirc
        pts = [c + p for p in boundary_samples(unit_disk(), ncirc)]
        if nseg:
            pts += [c + complex(-t, 0.0) for t in np.linspace(0.0, 1.0, nseg)]
        return pts
    if kind == "log_strip":
        c = D.params[0]
        nwall = (n + 2) // 3
        nray = (n - nwall) // 2
        pts = [c * complex(0.0, y) for y in np.linspace(-math.pi, math.pi, nwall)]
        ray = _geometric_ray(max(nray, 1), SLIT_TRUNCATION_RADIUS)
        pts += [c * complex(-t, math.pi) for t in ray]
        pts += [c * complex(-t, -math.pi) for t in ray]
        return pts[:n] if len(pts) > n else pts
    if kind == "image":
        f, base = D.payload
        out = []
        for b in boundary_samples(base, n):
            try:
                fb = f.value_unchecked(b)
            except (ArithmeticError, ValueError):
                continue
            if cmath.isfinite(fb):
                out.append(fb)
        return out
    raise ValueError(f"unknown domain kind {kind!r}")


# ---------------------------------------------------------------------------
# structural queries and vectorized helpers for the geodesic solver

def simply_connected(D: Domain) -> bool:
    return D.kind != "punctured_disk"


def has_closed_form_delta(D: Domain) -> bool:
    return D.kind != "image"


def bounding_box(D: Domain):
    """(xmin, xmax, ymin, ymax) for bounded catalog domains, else None."""
    if D.kind in ("unit_disk", "punctured_disk"):
        return (-1.0, 1.0, -1.0, 1.0)
    if D.kind == "slit_disk":
        c = D.params[0]
        return (c.real - 1.0, c.real + 1.0, c.imag - 1.0, c.imag + 1.0)
    return None


def contains_vec(D: Domain, z: np.ndarray) -> np.ndarray:
    kind = D.kind
    if kind == "unit_disk":
        return np.abs(z) < 1.0
    if kind == "punctured_disk":
        return (np.abs(z) < 1.0) & (z != 0)
    if kind == "upper_half_plane":
        return z.imag > 0.0
    if kind == "koebe_slit_plane":
        return ~((z.imag == 0.0) & (z.real <= -0.25))
    if kind == "slit_disk":
        u = z - D.params[0]
        return (np.abs(u) < 1.0) & ~((u.imag == 0.0) & (u.real <= 0.0))
    if kind == "log_strip":
        u = z / D.params[0]
        return (u.real < 0.0) & (np.abs(u.imag) < math.pi)
    raise MembershipUndecidableError(f"no vectorized membership for {D}")


def delta_vec(D: Domain, z: np.ndarray) -> np.ndarray:
    """Vectorized boundary distance; assumes all points are interior."""
    kind = D.kind
    if kind == "unit_disk":
        return 1.0 - np.abs(z)
    if kind == "punctured_disk":
        r = np.abs(z)
        return np.minimum(r, 1.0 - r)
    if kind == "upper_half_plane":
        return z.imag.copy() if np.iscomplexobj(z) else np.imag(z)
    if kind == "koebe_slit_plane":
        return np.where(z.real >= -0.25, np.abs(z + 0.25), np.abs(z.imag))
    if kind == "slit_disk":
        u = z - D.params[0]
        t = np.clip(-u.real, 0.0, 1.0)
        seg = np.abs(u + t)
        return np.minimum(1.0 - np.abs(u), seg)
    if kind == "log_strip":
        c = D.params[0]
        u = z / c
        return np.abs(c) * np.minimum(
            -u.real, np.minimum(math.pi - u.imag, math.pi + u.imag)
        )
    raise NoDensityRouteError(f"no vectorized delta for {D}")


def density_vec(D: Domain, z: np.ndarray) -> np.ndarray:
    """Vectorized hyperbolic density where a closed form exists; falls back
    to the scalar route otherwise."""
    kind = D.kind
    if kind == "unit_disk":
        return 1.0 / (1.0 - np.abs(z) ** 2)
    if kind == "punctured_disk":
        r = np.abs(z)
        return 1.0 / (2.0 * r * np.log(1.0 / r))
    if kind == "upper_half_plane":
        return 1.0 / (2.0 * z.imag)
    return np.array([hyperbolic_density(D, w) for w in np.ravel(z)]).reshape(
        np.shape(z)
    )

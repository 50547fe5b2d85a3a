"""The bound-checking engine.

Every inequality the library knows about is evaluated over deterministic,
seeded sample sets; results come back as a BoundReport with margins, extremal
witnesses and an explicit violation list.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from . import domains, maps, metrics
from .domains import Domain
from .errors import (
    ConformalMetricsError,
    NotLocallyUnivalentError,
    OutsideDomainError,
    SingularPointError,
)
from .jets import pre_schwarzian, schwarzian, compose
from .maps import AnalyticMap
from .parallel import ordered_map

__all__ = [
    "SampleSet",
    "BoundReport",
    "distortion_ratio",
    "check_pointwise_bounds",
    "punctured_disk_ratio",
    "check_distance_comparison",
    "check_log_construction",
    "check_composition_laws",
    "check_covering_identity",
    "estimate_uniformity_constant",
    "lambda_lower_violation_witness",
    "random_map_pair",
    "BOUND_KINDS",
]

# Default violation tolerances, split by how delta of the image is computed.
RTOL_CLOSED_FORM = 1e-9
RTOL_SAMPLED = 2e-2


@dataclass(frozen=True)
class SampleSet:
    """Reproducible sample specification."""

    seed: int
    count: int
    strategy: str = "uniform_disk"  # uniform_disk | radial_line |
                                    # near_boundary | near_puncture
    eps: float | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.strategy in ("near_boundary", "near_puncture"):
            e = self.eps if self.eps is not None else 1e-6
            if not (0 < e < 0.5):
                raise ValueError("eps must lie in (0, 1/2)")

    def disk_points(self) -> list[complex]:
        """Sample points in the unit disk according to the strategy."""
        rng = random.Random(self.seed)
        out = []
        while len(out) < self.count:
            th = rng.uniform(-math.pi, math.pi)
            if self.strategy == "uniform_disk":
                z = cmath.rect(math.sqrt(rng.random()), th)
            elif self.strategy == "radial_line":
                z = complex(rng.uniform(1e-3, 1 - 1e-3), 0.0)
            elif self.strategy == "near_boundary":
                e = self.eps if self.eps is not None else 1e-6
                s = math.exp(rng.uniform(math.log(e), math.log(0.5)))
                z = cmath.rect(1.0 - s, th)
            elif self.strategy == "near_puncture":
                e = self.eps if self.eps is not None else 1e-6
                r = math.exp(rng.uniform(math.log(e), math.log(0.5)))
                z = cmath.rect(r, th)
            else:
                raise ValueError(f"unknown strategy {self.strategy!r}")
            if z != 0:
                out.append(z)
        return out

    def points(self, D: Domain) -> list[complex]:
        """Samples inside D: disk samples pushed through the catalog map
        onto non-disk domains."""
        base = self.disk_points()
        kind = D.kind
        if kind in ("unit_disk", "punctured_disk"):
            return base
        if kind == "upper_half_plane":
            return [1j * (1 + z) / (1 - z) for z in base]
        if kind == "koebe_slit_plane":
            return [z / (1 - z) ** 2 for z in base]
        if kind == "slit_disk":
            c = D.params[0]
            rng = random.Random(self.seed + 1)
            out = []
            i = 0
            while len(out) < self.count:
                z = base[i % len(base)] if i < len(base) else cmath.rect(
                    math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi)
                )
                i += 1
                if domains.contains(D, z + c):
                    out.append(z + c)
            return out
        raise ValueError(f"no sampling strategy for domain kind {kind!r}")


@dataclass
class BoundReport:
    kind: str
    constants: dict
    samples_checked: int
    min_ratio: float
    max_ratio: float
    argmin: complex
    argmax: complex
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "constants": self.constants,
            "samples_checked": self.samples_checked,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "argmin": [self.argmin.real, self.argmin.imag],
            "argmax": [self.argmax.real, self.argmax.imag],
            "violations": [
                {"z": [v["z"].real, v["z"].imag], "lhs": v["lhs"], "rhs": v["rhs"]}
                for v in self.violations
            ],
            "skipped": [
                {"z": [s["z"].real, s["z"].imag], "reason": s["reason"]}
                for s in self.skipped
            ],
        }


# ---------------------------------------------------------------------------
# pointwise quantities

def distortion_ratio(f: AnalyticMap, D: Domain, z: complex,
                     n_boundary: int = 4096) -> float:
    """|f'(z)| / delta_{f(D)}(f(z)), the quantity all the sharp bounds
    control."""
    j = f.jet(z)
    if j.f1 == 0:
        raise SingularPointError(f"f'({z}) = 0")
    return abs(j.f1) / domains.image_boundary_distance(f, D, z, n_boundary)


def punctured_disk_ratio(z: complex) -> float:
    """2 log(1/|z|) / (1 - |z|): the unbounded ratio witnessing that the
    simply-connected bounds fail on the punctured disk."""
    r = abs(complex(z))
    if not (0 < r < 1):
        raise OutsideDomainError("need 0 < |z| < 1")
    return 2.0 * math.log(1.0 / r) / (1.0 - r)


# ---------------------------------------------------------------------------
# pointwise bound checks

BOUND_KINDS = (
    "thm21", "lemma31", "lambda_delta", "koebe_distortion",
    "osgood_T", "osgood_T_delta", "lehto_S", "gehring_S", "thm41", "cor43",
)

_NEEDS_SIMPLY_CONNECTED = {"thm21", "koebe_distortion", "lehto_S", "osgood_T"}
_NEEDS_MAP = set(BOUND_KINDS) - {"lambda_delta"}


def _bound_window(kind: str, Q: float | None) -> tuple[float, float]:
    if kind == "thm21":
        return 1.0, 4.0
    if kind == "lemma31":
        return 0.25, 4.0
    if kind in ("lambda_delta", "koebe_distortion"):
        return 0.25, 1.0
    if kind == "osgood_T":
        return 0.0, 8.0
    if kind == "osgood_T_delta":
        return 0.0, 4.0
    if kind == "lehto_S":
        return 0.0, 12.0
    if kind == "gehring_S":
        return 0.0, 6.0
    if kind == "thm41":
        if Q is None:
            raise ValueError("thm41 needs the uniformity constant Q")
        return 0.25, 4.0 * Q
    if kind == "cor43":
        return 0.125, 8.0
    raise ValueError(f"unknown bound kind {kind!r}")


def check_pointwise_bounds(f: AnalyticMap | None, D: Domain,
                           samples: SampleSet, kind: str,
                           Q: float | None = None,
                           n_boundary: int = 4096,
                           rtol: float | None = None,
                           constants_override: dict | None = None) -> BoundReport:
    """Evaluate one named inequality at every sample; see BOUND_KINDS.

    The recorded per-sample value is normalized so the window constants are
    scale free (e.g. thm21 records ratio/lambda with window [1, 4]).
    """
    if kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {kind!r}")
    if kind in _NEEDS_MAP and f is None:
        raise ValueError(f"kind {kind!r} requires a map")
    if kind in _NEEDS_SIMPLY_CONNECTED and not domains.simply_connected(D):
        raise ValueError(f"kind/domain mismatch: {kind} needs a simply "
                         f"connected domain, got {D.kind}")
    if kind in _NEEDS_SIMPLY_CONNECTED and f is not None and not f.univalent:
        raise ValueError(f"kind/domain mismatch: {kind} needs a univalent map")

    closed_form = kind in ("lambda_delta", "osgood_T", "osgood_T_delta",
                           "lehto_S", "gehring_S") or (
        f is not None and f.image_domain is not None
        and domains.has_closed_form_delta(f.image_domain)
    )
    if rtol is None:
        rtol = RTOL_CLOSED_FORM if closed_form else RTOL_SAMPLED
    lo, hi = _bound_window(kind, Q)
    constants = {"lower": lo, "upper": hi, "rtol": rtol,
                 "delta_route": "closed_form" if closed_form else "sampled"}
    if Q is not None:
        constants["Q"] = Q
    if constants_override:
        constants.update(constants_override)
        lo, hi = constants["lower"], constants["upper"]

    def evaluate(z):
        t = None
        try:
            lam = None
            delta = None
            if kind in ("thm21", "thm41", "cor43", "lambda_delta",
                        "osgood_T", "lehto_S"):
                lam = domains.hyperbolic_density(D, z)
            if kind in ("lemma31", "lambda_delta", "osgood_T_delta",
                        "gehring_S"):
                delta = domains.boundary_distance(D, z)
            if kind == "lambda_delta":
                v = lam * delta
            elif kind in ("thm21", "thm41", "cor43"):
                v = distortion_ratio(f, D, z, n_boundary) / lam
                if kind == "cor43":
                    t = abs(pre_schwarzian(f.jet(z))) / lam
            elif kind == "lemma31":
                v = distortion_ratio(f, D, z, n_boundary) * delta
            elif kind == "koebe_distortion":
                j = f.jet(z)
                v = domains.image_boundary_distance(f, D, z, n_boundary) / (
                    (1.0 - abs(z) ** 2) * abs(j.f1)
                )
            elif kind == "osgood_T":
                v = abs(pre_schwarzian(f.jet(z))) / lam
            elif kind == "osgood_T_delta":
                v = abs(pre_schwarzian(f.jet(z))) * delta
            elif kind == "lehto_S":
                v = abs(schwarzian(f.jet(z))) / lam ** 2
            else:  # gehring_S
                v = abs(schwarzian(f.jet(z))) * delta ** 2
        except (NotLocallyUnivalentError, SingularPointError,
                OutsideDomainError) as exc:
            return ("skip", z, str(exc), None)
        return ("ok", z, v, t)

    values = []
    skipped = []
    extra_violations = []
    for status, z, payload, t in ordered_map(evaluate, samples.points(D)):
        if status == "ok":
            values.append((payload, z))
            if t is not None and t > 8.0 + rtol:
                extra_violations.append({"z": z, "lhs": t, "rhs": 8.0})
        else:
            skipped.append({"z": z, "reason": payload})

    if not values:
        raise ConformalMetricsError("all samples were skipped")
    vmin, zmin = min(values, key=lambda t: t[0])
    vmax, zmax = max(values, key=lambda t: t[0])
    violations = [
        {"z": z, "lhs": v, "rhs": lo} for v, z in values if v < lo - rtol
    ] + [
        {"z": z, "lhs": v, "rhs": hi} for v, z in values if v > hi + rtol
    ] + extra_violations
    return BoundReport(kind, constants, len(values), vmin, vmax, zmin, zmax,
                       violations, skipped)


# ---------------------------------------------------------------------------
# distance comparison (quasihyperbolic vs hyperbolic)

def check_distance_comparison(f: AnalyticMap, pre_pairs,
                              cfg: metrics.SolverConfig | None = None) -> BoundReport:
    """k_{f(D)}(f(z1), f(z2)) / h_D(z1, z2) against the window [1, 4]."""
    cfg = cfg or metrics.SolverConfig()
    if f.image_domain is None or not domains.has_closed_form_delta(f.image_domain):
        raise ValueError("distance comparison needs a closed-form image domain")
    lo_slack = 1e-3 + 4 * cfg.tolerance
    hi_slack = 1e-2 + 4 * cfg.tolerance
    values = []
    for z1, z2 in pre_pairs:
        h = metrics.hyperbolic_distance_disk(z1, z2)
        if h == 0.0:
            values.append((1.0, complex(z1)))  # coincident pair, by convention
            continue
        k, _ = metrics.quasihyperbolic_distance(
            f.image_domain, f.value(z1), f.value(z2), cfg
        )
        values.append((k / h, complex(z1)))
    vmin, zmin = min(values, key=lambda t: t[0])
    vmax, zmax = max(values, key=lambda t: t[0])
    violations = [
        {"z": z, "lhs": v, "rhs": 1.0} for v, z in values if v < 1.0 - lo_slack
    ] + [
        {"z": z, "lhs": v, "rhs": 4.0} for v, z in values if v > 4.0 + hi_slack
    ]
    constants = {"lower": 1.0, "upper": 4.0,
                 "lower_slack": lo_slack, "upper_slack": hi_slack}
    return BoundReport("cor22", constants, len(values), vmin, vmax,
                       zmin, zmax, violations)


# ---------------------------------------------------------------------------
# logarithm construction (necessity mechanism)

def check_log_construction(D: Domain, z0: complex, c: complex = 1.0) -> BoundReport:
    """Distortion ratio of f = c Log(z - zeta0) with zeta0 = the slit
    endpoint (the puncture / slit tip of D).

    The slit of the single-valuedness base is taken opposite to z0, so the
    image is the half-strip c * {Re w < 0, |Im w| < pi} with f(z0) on its
    center line; delta of the image is then |c| * min(log(1/|z0 - zeta0|),
    pi).  The reported ratios are invariant under rescaling c.
    """
    if D.kind not in ("punctured_disk", "slit_disk"):
        raise ValueError("log construction is defined on punctured-disk or "
                         "slit-disk bases")
    z0 = complex(z0)
    if not domains.contains(D, z0):
        raise OutsideDomainError(f"{z0} not interior to {D}")
    zeta0 = D.params[0] if D.kind == "slit_disk" else 0j
    c = complex(c)
    if c == 0:
        raise ValueError("scale c must be nonzero")
    u = z0 - zeta0
    fprime = abs(c) / abs(u)
    delta_image = abs(c) * min(math.log(1.0 / abs(u)), math.pi)
    r = fprime / delta_image
    a = r * domains.boundary_distance(D, z0)
    b = r / domains.hyperbolic_density(D, z0)
    constants = {
        "zeta0": [zeta0.real, zeta0.imag],
        "c": [c.real, c.imag],
        "fprime_abs": fprime,
        "delta_image": delta_image,
        "ratio_times_delta": a,
        "ratio_over_lambda": b,
    }
    return BoundReport("log_construction", constants, 1, b, b, z0, z0)


# ---------------------------------------------------------------------------
# transformation laws and the covering identity

def check_composition_laws(f: AnalyticMap, g: AnalyticMap,
                           samples: SampleSet, rtol: float = 1e-11) -> BoundReport:
    """T_{f o g} = (T_f o g) g' + T_g and S_{f o g} = (S_f o g) g'^2 + S_g,
    checked with exact jets at every sample."""
    values = []
    skipped = []
    for z in samples.points(g.base_domain):
        try:
            jg = g.jet(z)
            jf = f.jet(jg.f0)
            jh = compose(jf, jg)
            t_direct = pre_schwarzian(jh)
            t_law = pre_schwarzian(jf) * jg.f1 + pre_schwarzian(jg)
            s_direct = schwarzian(jh)
            s_law = schwarzian(jf) * jg.f1 ** 2 + schwarzian(jg)
        except (NotLocallyUnivalentError, SingularPointError,
                OutsideDomainError) as exc:
            skipped.append({"z": z, "reason": str(exc)})
            continue
        dev_t = abs(t_direct - t_law) / max(1.0, abs(t_direct))
        # S is a difference of terms of size |T|^2, so that is the scale on
        # which float cancellation happens and the right normalizer
        dev_s = abs(s_direct - s_law) / max(1.0, abs(s_direct),
                                            abs(t_direct) ** 2)
        values.append((max(dev_t, dev_s), z))
    if not values:
        raise ConformalMetricsError("all samples were skipped")
    vmin, zmin = min(values, key=lambda t: t[0])
    vmax, zmax = max(values, key=lambda t: t[0])
    violations = [{"z": z, "lhs": v, "rhs": rtol}
                  for v, z in values if v > rtol]
    return BoundReport("composition_laws", {"rtol": rtol}, len(values),
                       vmin, vmax, zmin, zmax, violations, skipped)


def check_covering_identity(samples: SampleSet, rtol: float = 1e-10,
                            max_radius: float = 0.95) -> BoundReport:
    """lambda_{D*}(p(z)) |p'(z)| (1 - |z|^2) = 1 for the punctured-disk
    covering p(z) = exp((z+1)/(z-1)).

    Samples with |z| > max_radius are skipped: there |p(z)| is so close to 0
    or 1 that the log in the density loses the relative accuracy the check
    asserts.
    """
    p = maps.punctured_disk_covering_map()
    dstar = domains.punctured_disk()
    values = []
    skipped = []
    for z in samples.disk_points():
        if abs(z) > max_radius:
            skipped.append({"z": z, "reason": "near-boundary precision"})
            continue
        j = p.jet(z)
        if abs(j.f0) < 1e-300:
            skipped.append({"z": z, "reason": "covering value underflow"})
            continue
        v = domains.hyperbolic_density(dstar, j.f0) * abs(j.f1) * (
            1.0 - abs(z) ** 2
        )
        values.append((v, z))
    if not values:
        raise ConformalMetricsError("all samples were skipped")
    vmin, zmin = min(values, key=lambda t: t[0])
    vmax, zmax = max(values, key=lambda t: t[0])
    violations = [{"z": z, "lhs": v, "rhs": 1.0}
                  for v, z in values if abs(v - 1.0) > rtol]
    return BoundReport("covering_identity", {"target": 1.0, "rtol": rtol},
                       len(values), vmin, vmax, zmin, zmax, violations,
                       skipped)


# ---------------------------------------------------------------------------
# uniformity constant

def estimate_uniformity_constant(D: Domain, samples: SampleSet) -> float:
    """Empirical Q-hat = max over samples of 1/(lambda_D delta_D); converges
    to the domain constant of uniformity from below (infinite supremum for
    non-uniformly-perfect domains such as the punctured disk)."""
    best = 0.0
    for z in samples.points(D):
        q = 1.0 / (domains.hyperbolic_density(D, z)
                   * domains.boundary_distance(D, z))
        if q > best:
            best = q
    return best


def lambda_lower_violation_witness(c: float) -> complex:
    """A point of the punctured disk where lambda < c/delta fails, for any
    fixed c > 0: any |z| < e^{-4/c} works; return e^{-4/c - 1}."""
    if c <= 0:
        raise ValueError("c must be positive")
    return complex(math.exp(-4.0 / c - 1.0), 0.0)


# ---------------------------------------------------------------------------
# random catalog pairs for the transformation-law sweep

def random_map_pair(rng: random.Random):
    """(f, g) with g a disk automorphism (or identity) and f any disk-based
    catalog map, so f o g is always well formed."""
    def rand_mobius():
        a = cmath.rect(math.sqrt(rng.random()) * 0.9,
                       rng.uniform(-math.pi, math.pi))
        return maps.mobius_map(a, rng.uniform(-math.pi, math.pi))

    g = rand_mobius() if rng.random() < 0.8 else maps.identity_map()
    pick = rng.randrange(6)
    if pick == 0:
        f = maps.identity_map()
    elif pick == 1:
        f = maps.koebe_map()
    elif pick == 2:
        f = rand_mobius()
    elif pick == 3:
        f = maps.cayley_map()
    elif pick == 4:
        f = maps.power_map(rng.randrange(2, 5))
    else:
        f = maps.punctured_disk_covering_map()
    return f, g

"""Upper bounds on weighted norms of ambiguity functions.

For unit-norm ``g``, ``gamma`` and a weight ``C``, every ``p >= max(1, 2/r)`` gives

    sum |A|^r C  <=  (2 / (r p))^(1/p) * ||C||_(p/(p-1))

(Hölder followed by Lieb's inequality at exponent ``r p``). The functions here
evaluate that bound, minimise it over ``p`` (in closed form for Gaussian and
indicator weights, numerically otherwise) and check the equality conditions.
All bound values are the un-rooted quantity ``|| |A|^r C ||_1``.
"""

from dataclasses import dataclass, field
import logging
import math

import numpy as np

from .errors import (
    DegenerateCertificateError,
    DegenerateInputError,
    DomainError,
    NoClosedFormError,
    UnsupportedOrderError,
    WeightNormDivergenceError,
)
from .phase_plane import cross_ambiguity, surface_lp_norm, weighted_r_norm
from .signal_core import lp_norm
from .weights import GaussianWeight, IndicatorWeight, weight_lq_norm

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
CERT_FLOOR = 1e-12


def holder_conjugate(s):
    if s == 1:
        return math.inf
    if math.isinf(s):
        return 1.0
    return s / (s - 1.0)


def _sharp_constant(s):
    """Babenko-Beckner constant ``s^(1/2s) * s'^(-1/2s')``; equals 1 at s = 1."""
    if s == 1:
        return 1.0
    sc = holder_conjugate(s)
    return s ** (1.0 / (2.0 * s)) * sc ** (-1.0 / (2.0 * sc))


def lieb_constant(p, a, b):
    """Sharp constant ``H(p, a, b)`` in ``||A_{g gamma}||_p^p <= H ||g||_a^p ||gamma||_b^p``.

    Requires ``2 < p < inf``, ``1/a + 1/b = 1`` and ``p/(p-1) <= a, b <= p``.
    The third Young factor is taken at the conjugate of ``p/q``, which is what
    makes ``H(p, 2, 2) = 2/p``.
    """
    p, a, b = float(p), float(a), float(b)
    if not (2.0 < p < math.inf):
        raise DomainError(f"Lieb's inequality needs 2 < p < inf, got p = {p}")
    q = p / (p - 1.0)
    eps = 1e-12
    if not (q - eps <= a <= p + eps and q - eps <= b <= p + eps):
        raise DomainError(f"need {q} <= a, b <= {p}; got a = {a}, b = {b}")
    if abs(1.0 / a + 1.0 / b - 1.0) > eps:
        raise DomainError(f"need 1/a + 1/b = 1; got a = {a}, b = {b}")
    a_q = max(a / q, 1.0)
    b_q = max(b / q, 1.0)
    young = _sharp_constant(a_q) * _sharp_constant(b_q) * _sharp_constant(holder_conjugate(p / q))
    return _sharp_constant(q) ** p * young ** (p / q)


def _self_test():
    for p in (2.5, 3.0, 4.0, 6.0, 10.0):
        h = lieb_constant(p, 2.0, 2.0)
        if abs(h - 2.0 / p) > 1e-9 * (2.0 / p):
            raise RuntimeError(
                f"lieb_constant({p}, 2, 2) = {h!r} differs from 2/p; constant convention has drifted"
            )


_self_test()


def lieb_bound_check(g, gamma, p, a, b, grid=None):
    """Both sides of Lieb's inequality: ``(||A||_p^p, H(p,a,b) ||g||_a^p ||gamma||_b^p)``."""
    h = lieb_constant(p, a, b)
    surface = cross_ambiguity(g, gamma, grid)
    lhs = surface_lp_norm(surface, p) ** p
    rhs = h * lp_norm(g, a) ** p * lp_norm(gamma, b) ** p
    return lhs, rhs


def p_floor(r):
    r = float(r)
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"r must be positive and finite, got {r}")
    return max(1.0, 2.0 / r)


def main_bound(r, p, c):
    """``(2/(r p))^(1/p) * ||C||_(p/(p-1))``, valid for ``p >= max(1, 2/r)``."""
    pf = p_floor(r)
    p = float(p)
    if not (p >= pf * (1.0 - 1e-12)) or math.isinf(p):
        raise DomainError(f"p = {p} is infeasible; need finite p >= {pf}")
    p = max(p, pf)
    q = holder_conjugate(p)
    return (2.0 / (r * p)) ** (1.0 / p) * weight_lq_norm(c, q)


def gaussian_bound_slope(r, p, alpha):
    """Derivative of the Gaussian-weight bound in p: ``f(p)/p^2 * ln(r(p-1)/(2 alpha))``."""
    f = main_bound(r, p, GaussianWeight(alpha))
    return f / p ** 2 * math.log(r * (p - 1.0) / (2.0 * alpha))


@dataclass(frozen=True)
class BoundReport:
    bound_value: float
    p_opt: float
    branch: str
    feasible_interior: bool
    tight: bool
    r: float
    weight: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "bound_value": self.bound_value,
            "p_opt": self.p_opt,
            "branch": self.branch,
            "feasible_interior": self.feasible_interior,
            "tight": self.tight,
            "r": self.r,
            "weight": dict(self.weight),
        }


@dataclass(frozen=True)
class EqualityCertificate:
    lambda_: float
    max_relative_residual: float
    p: float
    r: float
    n_points: int = 0


def _positive(name, v):
    v = float(v)
    if not (v > 0 and math.isfinite(v)):
        raise DomainError(f"{name} must be positive and finite, got {v}")
    return v


def best_bound_gaussian(r, alpha):
    r = _positive("r", r)
    alpha = _positive("alpha", alpha)
    desc = {"type": "gaussian", "alpha": alpha}
    if alpha >= (2.0 - r) / 2.0:
        return BoundReport(2 * alpha / (2 * alpha + r), 2 * alpha / r + 1.0,
                           "interior", True, True, r, desc)
    h = 1.0 - r / 2.0
    return BoundReport(alpha ** (r / 2.0) * h ** h, 2.0 / r, "boundary", False, False, r, desc)


def best_bound_indicator(r, area_u):
    r = _positive("r", r)
    area_u = _positive("area", area_u)
    r_star = max(r, 2.0)
    desc = {"type": "indicator", "area": area_u}
    if area_u <= 2.0 * math.e / r_star:
        return BoundReport(math.exp(-r * area_u / (2.0 * math.e)), 2.0 * math.e / (r * area_u),
                           "interior", True, False, r, desc)
    return BoundReport((2.0 / (r_star * area_u)) ** (r / r_star), r_star / r,
                       "boundary", False, False, r, desc)


def best_bound_closed(r, c):
    """Closed-form optimum for Gaussian and indicator weights."""
    if isinstance(c, GaussianWeight):
        return best_bound_gaussian(r, c.alpha)
    if isinstance(c, IndicatorWeight):
        rep = best_bound_indicator(r, c.area)
        return BoundReport(rep.bound_value, rep.p_opt, rep.branch, rep.feasible_interior,
                           rep.tight, rep.r, c.describe())
    raise NoClosedFormError(f"no closed-form bound for {type(c).__name__}")


def _tight_at(r, p, c):
    if not isinstance(c, GaussianWeight) or p <= 1.0:
        return False
    a = c.alpha
    return a >= (2.0 - r) / 2.0 and abs(p - (2 * a / r + 1.0)) <= 1e-9 * p


def bound_at(r, p, c):
    """Report for the bound at a fixed exponent ``p``."""
    value = main_bound(r, p, c)
    pf = p_floor(r)
    at_floor = abs(p - pf) <= 1e-12 * pf
    return BoundReport(value, float(p), "boundary" if at_floor else "interior",
                       not at_floor, _tight_at(r, p, c), float(r), c.describe())


def golden_section(f, a, b, rtol=1e-10):
    """Minimiser of a unimodal ``f`` on ``[a, b]`` to relative tolerance ``rtol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > rtol * (abs(a) + abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return c if fc <= fd else d


def best_bound_numeric(r, c, p_max=1024.0, n_scan=257):
    """Minimise ``main_bound(r, p, c)`` over ``[max(1, 2/r), p_max]``.

    A log-spaced scan locates the best grid point, then golden-section search
    refines inside the neighbouring bracket to relative tolerance 1e-10 in p.
    """
    r = _positive("r", r)
    pf = p_floor(r)
    p_max = float(p_max)
    if not p_max > pf:
        raise DomainError(f"p_max = {p_max} must exceed the feasibility floor {pf}")

    def f(p):
        v = main_bound(r, p, c)
        if not math.isfinite(v):
            raise WeightNormDivergenceError(f"weight norm diverges at q = {holder_conjugate(p)}")
        return v

    ps = np.geomspace(pf, p_max, n_scan)
    ps[0], ps[-1] = pf, p_max
    vals = np.array([f(p) for p in ps])
    i = int(np.argmin(vals))
    lo, hi = ps[max(i - 1, 0)], ps[min(i + 1, n_scan - 1)]
    p_star = golden_section(f, lo, hi)
    best_p, best_v = p_star, f(p_star)
    for edge in (pf, p_max):
        v = f(edge)
        if v <= best_v:
            best_p, best_v = edge, v
    if best_p == p_max:
        log.warning("bound minimiser sits at p_max = %g; the optimum may lie beyond it", p_max)
    at_floor = best_p - pf <= 1e-9 * pf
    if at_floor:
        best_p = pf
    tight = False
    if isinstance(c, GaussianWeight):
        tight = best_bound_gaussian(r, c.alpha).tight
    return BoundReport(float(best_v), float(best_p), "boundary" if at_floor else "interior",
                       not at_floor, tight, r, c.describe())


def equality_certificate(s, c, r, p):
    """Fit ``C = lambda |A|^(r(p-1))`` (the Hölder equality condition) in log space."""
    r = _positive("r", r)
    p = float(p)
    if not p > 1:
        raise DomainError(f"equality certificate needs p > 1, got {p}")
    k = r * (p - 1.0)
    cvals, _ = c.rasterize(s.grid)
    mag = s.magnitude
    use = (mag > CERT_FLOOR) & (cvals > CERT_FLOOR)
    if not use.any():
        raise DegenerateCertificateError("no grid points where both |A| and C exceed 1e-12")
    log_lambda = float(np.mean(np.log(cvals[use]) - k * np.log(mag[use])))
    lam = math.exp(log_lambda)
    resid = np.abs(cvals[use] - lam * mag[use] ** k).max() / cvals.max()
    return EqualityCertificate(lam, float(resid), p, r, int(use.sum()))


def renyi_entropy(s, c, r):
    """``log(sum |A|^r C dx) / (1 - r)``."""
    r = _positive("r", r)
    if r == 1.0:
        raise UnsupportedOrderError("Renyi entropy of order 1 is not supported")
    val = weighted_r_norm(s, c, r)
    if not val > 0:
        raise DegenerateInputError("weighted norm is zero; entropy undefined")
    return math.log(val) / (1.0 - r)


__all__ = [
    "BoundReport", "EqualityCertificate",
    "best_bound_closed", "best_bound_gaussian", "best_bound_indicator", "best_bound_numeric",
    "bound_at", "equality_certificate", "gaussian_bound_slope", "golden_section",
    "holder_conjugate", "lieb_bound_check", "lieb_constant", "main_bound", "p_floor",
    "renyi_entropy",
]

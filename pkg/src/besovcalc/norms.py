"""Function norms by quadrature: sup norm, derivative-sup integral, and the
vertical-line seminorm paired with it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceSuspicion, UnboundedSuspicion
from .functions import AnalyticFunction
from .quadrature import (
    DEFAULT_CONFIG,
    DecayEnvelope,
    PowerEnvelope,
    QuadratureConfig,
    golden_max,
    integrate_halfline,
    integrate_line,
    sup_on_vertical_line,
)

__all__ = [
    "NormReport",
    "hinf_norm",
    "b0_norm",
    "b_norm",
    "e0_norm",
    "deriv_sup_at",
    "line_sup_modulus",
]

_BOUNDARY_OFFSET = 1e-6


@dataclass
class NormReport:
    value: float
    error_bound: float
    pieces: dict = field(default_factory=dict)
    certified: bool = True

    def to_json(self) -> str:
        return json.dumps(
            {
                "value": self.value,
                "error_bound": self.error_bound,
                "pieces": self.pieces,
                "certified": self.certified,
            },
            sort_keys=True,
        )

    def __float__(self):
        return self.value


def deriv_sup_at(f: AnalyticFunction, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """sup over y of |f'(x+iy)| with the function's declared line envelope."""

    def phi(ys):
        return np.abs(f.deriv(x + 1j * np.asarray(ys, dtype=float)))

    return sup_on_vertical_line(
        phi, f.profiles.deriv_line(x), cfg, window=f.profiles.window
    )


def line_sup_modulus(
    f: AnalyticFunction, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """sup over y of |f(x+iy)| on a vertical line with Re = x > -left_bound."""
    if x <= -f.left_bound:
        raise DivergenceSuspicion(
            f"line Re = {x} lies outside the declared analyticity strip"
        )

    def phi(ys):
        return np.abs(f(x + 1j * np.asarray(ys, dtype=float)))

    env = f.profiles.modulus_line(max(x, _BOUNDARY_OFFSET))
    sup = sup_on_vertical_line(phi, env, cfg, window=f.profiles.window)
    value = sup.value
    if f.value_at_infinity is not None:
        value = max(value, abs(f.value_at_infinity))
    return value


def hinf_norm(f: AnalyticFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """Supremum norm, evaluated on the line Re z = 1e-6 by the maximum principle."""
    x0 = _BOUNDARY_OFFSET

    def phi(ys):
        return np.abs(f(x0 + 1j * np.asarray(ys, dtype=float)))

    sup = sup_on_vertical_line(phi, f.profiles.modulus_line(x0), cfg, window=f.profiles.window)
    value = sup.value
    if f.value_at_infinity is not None:
        value = max(value, abs(f.value_at_infinity))
    xs = np.geomspace(1e-2, 1e3, 11)
    ys = np.linspace(-40.0, 40.0, 17)
    interior = float(np.max(np.abs(f((xs[:, None] + 1j * ys[None, :]).ravel()))))
    if interior > 1.01 * value:
        raise UnboundedSuspicion(
            f"interior sample {interior:.6g} exceeds boundary estimate {value:.6g}"
        )
    value = max(value, interior)
    err = max(cfg.abs_tol, 2.0 * _BOUNDARY_OFFSET * value)
    return NormReport(value, err, {"hinf": value}, certified=sup.stabilized)


def _fitted_outer_envelope(sup_fn, cfg) -> tuple[DecayEnvelope, bool]:
    """Power-law fit of the outer integrand decay, with a safety factor.

    Used only when a function carries no integrable certified envelope; the
    resulting norm is flagged non-certified.
    """
    xs = np.geomspace(8.0, 4096.0, 10)
    vals = np.array([sup_fn(x) for x in xs])
    good = vals > 1e-250
    if good.sum() < 4:
        return PowerEnvelope(p=2.0, c=1e-250, t0=xs[0]), False
    p = -np.polyfit(np.log(xs[good]), np.log(vals[good]), 1)[0]
    if p <= 1.05:
        raise DivergenceSuspicion(
            f"outer integrand decays like x^-{p:.3f}; the norm integral looks divergent"
        )
    p_safe = max(1.05, p * 0.9)
    c = 10.0 * float(np.max(vals * xs[: len(vals)] ** p_safe))
    return PowerEnvelope(p=p_safe, c=c, t0=float(xs[0])), True


def b0_norm(f: AnalyticFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """Integral over x > 0 of the vertical-line supremum of |f'|."""
    sup_cache: dict[float, float] = {}

    def sup_at(x: float) -> float:
        got = sup_cache.get(x)
        if got is None:
            got = deriv_sup_at(f, x, cfg).value
            sup_cache[x] = got
        return got

    def integrand(xs):
        return np.array([sup_at(float(x)) for x in np.asarray(xs, dtype=float)])

    env = f.profiles.deriv_outer
    certified = True
    if not env.integrable:
        env, _ = _fitted_outer_envelope(sup_at, cfg)
        certified = False
    res = integrate_halfline(integrand, env, cfg, tail_tol=max(cfg.abs_tol, 1e-9))
    if not res.converged:
        raise DivergenceSuspicion("derivative-sup integral failed to converge")
    value = float(np.real(res.value))
    return NormReport(value, res.error, {"b0": value, "tail": res.tail_error}, certified)


def b_norm(f: AnalyticFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    hi = hinf_norm(f, cfg)
    b0 = b0_norm(f, cfg)
    return NormReport(
        hi.value + b0.value,
        hi.error_bound + b0.error_bound,
        {"hinf": hi.value, "b0": b0.value},
        certified=hi.certified and b0.certified,
    )


def _e0_at(f: AnalyticFunction, x: float, cfg: QuadratureConfig) -> float:
    env = f.profiles.deriv_line(x)
    if not env.integrable:
        raise DivergenceSuspicion(
            "vertical-line integral of |f'| has no integrable envelope; "
            "the function is not in the dual class"
        )

    def integrand(ys):
        return np.abs(f.deriv(x + 1j * np.asarray(ys, dtype=float)))

    # the x-multiplier amplifies absolute errors, so tighten with 1/x
    local = cfg.with_tolerances(abs_tol=cfg.abs_tol / max(x, 1.0))
    res = integrate_line(
        integrand, env, local, tail_tol=max(cfg.abs_tol, 1e-9) / max(x, 1.0), strict=False
    )
    return x * float(np.real(res.value))


def e0_norm(f: AnalyticFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """sup over x > 0 of x * integral over y of |f'(x+iy)|, on a geometric grid."""
    if f.deriv_fn is not None:
        probe = complex(f.deriv(1.0 + 0j))
        if probe == 0 and complex(f.deriv(2.0 + 0.7j)) == 0:
            return NormReport(0.0, cfg.abs_tol, {"e0": 0.0}, True)
    us = np.arange(-20.0, 20.5, 1.0)
    vals = np.array([_e0_at(f, float(2.0**u), cfg) for u in us])
    k = int(vals.argmax())
    lo = us[max(k - 1, 0)]
    hi = us[min(k + 1, len(us) - 1)]
    u_best, v_best = golden_max(
        lambda u: _e0_at(f, float(2.0**u), cfg), lo, hi, cfg.sup_refine_rounds
    )
    value = max(float(vals[k]), v_best)
    err = max(cfg.abs_tol, cfg.rel_tol * value) + 4.0 * value / 2.0**20
    report = NormReport(value, err, {"e0": value, "argmax_x": float(2.0**u_best)}, True)
    if k in (0, len(us) - 1):
        report.certified = bool(vals[k] <= 1.0000001 * value)
    return report

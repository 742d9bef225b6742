"""Holomorphic functions on the right half-plane: catalog, algebra, derivatives.

Every function carries vectorized evaluators for f and f', its value at
infinity when known, and certified decay envelopes used by the norm and
integration machinery: envelopes in y along vertical lines Re = x, and
envelopes in x for the line suprema of |f| and |f'|.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import InvalidParameter, NonConvergence, RangeViolation, UnknownSpec
from .quadrature import (
    ConstEnvelope,
    DecayEnvelope,
    ExpEnvelope,
    PowerEnvelope,
    QuadratureConfig,
    ResolventEnvelope,
    StretchedExpEnvelope,
    SumEnvelope,
    DEFAULT_CONFIG,
)

__all__ = [
    "AnalyticFunction",
    "HalfLineMeasure",
    "DecayProfile",
    "BernsteinFunction",
    "Profiles",
    "make_catalog",
    "parse_function_spec",
    "parse_complex",
    "deriv_fallback",
    "cauchy_derivatives",
    "add",
    "mul",
    "scale",
    "shift",
    "dilate",
    "reciprocal",
    "power",
    "const",
    "exp_decay",
    "resolvent",
    "cayley_pow",
    "eta",
    "exp_inv_shift",
    "vitse_reg",
    "laplace_transform",
    "band_function",
    "bernstein_resolvent",
]


# ---------------------------------------------------------------------------
# Measures, decay profiles, Bernstein generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfLineMeasure:
    """Bounded measure on [0, inf): point atoms plus an optional named density.

    density is None or a tuple:
      ("exp", coeff, rate)        coeff * exp(-rate*t) dt on [0, inf), rate > 0
      ("lebesgue", coeff, a, b)   coeff * dt on [a, b]
    """

    atoms: tuple[tuple[float, complex], ...] = ()
    density: tuple | None = None

    def __post_init__(self):
        for t, _ in self.atoms:
            if t < 0:
                raise InvalidParameter("atom locations must be >= 0")
        if self.density is not None:
            kind = self.density[0]
            if kind == "exp":
                _, _, rate = self.density
                if rate <= 0:
                    raise InvalidParameter("exponential density needs rate > 0")
            elif kind == "lebesgue":
                _, _, a, b = self.density
                if not 0 <= a < b:
                    raise InvalidParameter("lebesgue density needs 0 <= a < b")
            else:
                raise InvalidParameter(f"unknown density kind {kind!r}")

    def total_variation(self) -> float:
        tv = sum(abs(c) for _, c in self.atoms)
        if self.density is not None:
            if self.density[0] == "exp":
                _, coeff, rate = self.density
                tv += abs(coeff) / rate
            else:
                _, coeff, a, b = self.density
                tv += abs(coeff) * (b - a)
        return tv

    def mass_at_zero(self) -> complex:
        return sum(c for t, c in self.atoms if t == 0.0)


@dataclass(frozen=True)
class DecayProfile:
    """Nonincreasing majorant h(t) of boundary decay, with an integrable envelope."""

    h: Callable[[np.ndarray], np.ndarray]
    envelope: DecayEnvelope

    def validate(self, grid: np.ndarray | None = None) -> None:
        ts = np.geomspace(1e-3, 1e3, 61) if grid is None else grid
        vals = np.asarray(self.h(ts), dtype=float)
        if np.any(np.diff(vals) > 1e-12 * (1 + vals[:-1])):
            raise InvalidParameter("decay profile must be nonincreasing")
        if np.any(vals < 0):
            raise InvalidParameter("decay profile must be nonnegative")


@dataclass(frozen=True)
class BernsteinFunction:
    """f(z) = a + b z + sum c_k (1 - exp(-z s_k)) with a, b, c_k >= 0, s_k > 0."""

    a: float = 0.0
    b: float = 0.0
    jumps: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InvalidParameter("Bernstein function needs a, b >= 0")
        for s, c in self.jumps:
            if s <= 0 or c < 0:
                raise InvalidParameter("jump measure needs locations > 0, weights >= 0")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.a + self.b * z
        for s, c in self.jumps:
            out = out + c * (1.0 - np.exp(-z * s))
        return out

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, self.b, dtype=complex)
        for s, c in self.jumps:
            out = out + c * s * np.exp(-z * s)
        return out

    def limit_at_infinity(self) -> float:
        if self.b > 0:
            return math.inf
        return self.a + sum(c for _, c in self.jumps)

    def validate_monotone(self) -> None:
        xs = np.geomspace(1e-3, 1e3, 200)
        f = self(xs).real
        fp = self.deriv(xs).real
        if np.any(f <= 0) and (self.a > 0 or self.b > 0 or self.jumps):
            if np.any(f < -1e-14):
                raise InvalidParameter("Bernstein function must be positive on (0, inf)")
        if np.any(np.diff(f) < -1e-12):
            raise InvalidParameter("Bernstein function must be increasing on (0, inf)")
        if np.any(np.diff(fp) > 1e-12 * (1 + fp[:-1])):
            raise InvalidParameter("Bernstein derivative must be decreasing on (0, inf)")


# ---------------------------------------------------------------------------
# Analytic functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Profiles:
    """Certified envelope bundle for one analytic function.

    deriv_line(x) bounds y -> |f'(x+iy)|; modulus_line(x) bounds y -> |f(x+iy)|;
    deriv_outer bounds x -> sup_y |f'(x+iy)|; modulus_outer bounds the modulus
    supremum.  window is an initial half-width for supremum grids; e0_upper,
    when set, certifies sup_x x * int |f'(x+iy)| dy <= e0_upper.
    """

    deriv_line: Callable[[float], DecayEnvelope]
    modulus_line: Callable[[float], DecayEnvelope]
    deriv_outer: DecayEnvelope
    modulus_outer: DecayEnvelope
    window: float = 8.0
    e0_upper: float | None = None


@dataclass(frozen=True)
class AnalyticFunction:
    """A holomorphic function on Re z > -left_bound with metadata for quadrature.

    summands, when present, give an exact decomposition f = sum of parts whose
    envelopes have narrower frequency bands; linear operations (the pairing and
    the operator calculus) may integrate the parts separately.
    """

    eval_fn: Callable[[np.ndarray], np.ndarray]
    deriv_fn: Callable[[np.ndarray], np.ndarray] | None
    profiles: Profiles
    value_at_infinity: complex | None = None
    class_flags: frozenset = frozenset()
    label: str = "f"
    left_bound: float = 0.0
    infinity_certified: bool = True
    decay_profile: DecayProfile | None = None
    summands: tuple["AnalyticFunction", ...] | None = None

    def __call__(self, z):
        scalar = np.isscalar(z)
        out = self.eval_fn(np.asarray(z, dtype=complex))
        return complex(out) if scalar and np.ndim(out) == 0 else out

    def deriv(self, z, cfg: QuadratureConfig = DEFAULT_CONFIG):
        scalar = np.isscalar(z)
        za = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.deriv_fn is not None:
            out = self.deriv_fn(za)
        else:
            out = np.array([deriv_fallback(self, w, cfg) for w in za])
        out = out.reshape(np.shape(np.asarray(z)))
        return complex(out) if scalar else out

    def infinity(self) -> complex:
        """f(infinity), estimated from far samples when not supplied."""
        if self.value_at_infinity is not None:
            return self.value_at_infinity
        v1, v2 = complex(self(2.0**11)), complex(self(2.0**12))
        return 2 * v2 - v1  # first-order Richardson in 1/x

    def has_flag(self, name: str) -> bool:
        return any(f[0] == name for f in self.class_flags)

    def flag(self, name: str):
        for f in self.class_flags:
            if f[0] == name:
                return f
        return None

    def relabel(self, label: str) -> "AnalyticFunction":
        return replace(self, label=label)


def _vec(fn):
    def wrapped(z):
        return fn(np.asarray(z, dtype=complex))

    return wrapped


# ---------------------------------------------------------------------------
# Fallback differentiation (Cauchy circle, trapezoid with node doubling)
# ---------------------------------------------------------------------------


def cauchy_derivatives(
    f: AnalyticFunction | Callable,
    z: complex,
    order: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    radius: float | None = None,
    use_deriv: bool = False,
) -> np.ndarray:
    """Derivatives f^(1..order)(z) from trapezoid sums on a circle of radius Re z / 2.

    Node count starts at 64 and doubles until the relative change of every
    requested derivative drops below the configured tolerance.
    """
    z = complex(z)
    if z.real <= 0:
        raise InvalidParameter("Cauchy-circle differentiation needs Re z > 0")
    r = 0.5 * z.real if radius is None else radius
    if isinstance(f, AnalyticFunction):
        base = f.deriv_fn if (use_deriv and f.deriv_fn is not None) else f.eval_fn
    else:
        base = f
    prev = None
    n = 64
    for _ in range(12):
        theta = 2.0 * np.pi * np.arange(n) / n
        w = np.exp(1j * theta)
        vals = np.asarray(base(z + r * w))
        if not np.all(np.isfinite(vals)):
            raise NonConvergence("non-finite samples on the differentiation circle")
        coeffs = np.fft.fft(vals) / n  # c_j ~ f^(j)(z) r^j / j!
        ders = np.array(
            [coeffs[j] * math.factorial(j) / r**j for j in range(1, order + 1)]
        )
        if prev is not None:
            scale_ref = np.maximum(np.abs(ders), 1e-300)
            if np.all(np.abs(ders - prev) <= cfg.rel_tol * scale_ref + cfg.abs_tol):
                return ders
        prev = ders
        n *= 2
    raise NonConvergence("circle derivative did not stabilise after max doublings")


def deriv_fallback(
    f: AnalyticFunction, z: complex, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> complex:
    """First derivative by the Cauchy-circle rule at radius Re z / 2."""
    return complex(cauchy_derivatives(f, z, 1, cfg)[0])


# ---------------------------------------------------------------------------
# Catalog members
# ---------------------------------------------------------------------------

_ZERO_ENV = PowerEnvelope(p=2.0, c=0.0)


def const(c: complex) -> AnalyticFunction:
    c = complex(c)
    prof = Profiles(
        deriv_line=lambda x: _ZERO_ENV,
        modulus_line=lambda x: ConstEnvelope(c=abs(c)),
        deriv_outer=_ZERO_ENV,
        modulus_outer=ConstEnvelope(c=abs(c)),
        e0_upper=0.0,
    )
    return AnalyticFunction(
        eval_fn=_vec(lambda z: np.full_like(z, c)),
        deriv_fn=_vec(lambda z: np.zeros_like(z)),
        profiles=prof,
        value_at_infinity=c,
        class_flags=frozenset({("IN_LM",)}),
        label=f"const({c:g})" if c.imag == 0 else f"const({c})",
        left_bound=math.inf,
    )


def exp_decay(a: float) -> AnalyticFunction:
    """e_a(z) = exp(-a z) for real a >= 0."""
    a = complex(a)
    if a.imag != 0 or a.real < 0:
        raise InvalidParameter("exp catalog member needs real a >= 0")
    a = a.real
    if a == 0:
        return const(1.0)
    prof = Profiles(
        deriv_line=lambda x: ConstEnvelope(c=a * math.exp(-a * x), freq_lo=-a, freq_hi=-a),
        modulus_line=lambda x: ConstEnvelope(c=math.exp(-a * x), freq_lo=-a, freq_hi=-a),
        deriv_outer=ExpEnvelope(a=a, c=a),
        modulus_outer=ExpEnvelope(a=a, c=1.0),
        window=3.0 * 2.0 * math.pi / a,
    )
    return AnalyticFunction(
        eval_fn=_vec(lambda z: np.exp(-a * z)),
        deriv_fn=_vec(lambda z: -a * np.exp(-a * z)),
        profiles=prof,
        value_at_infinity=0.0,
        class_flags=frozenset({("IN_LM",), ("EXTENDS_LEFT", math.inf)}),
        label=f"exp(a={a:g})",
        left_bound=math.inf,
    )


def resolvent(a: complex) -> AnalyticFunction:
    """r_a(z) = (z + a)^(-1) for a in the closed right half-plane."""
    a = complex(a)
    if a.real < 0:
        raise InvalidParameter("resolvent catalog member needs Re a >= 0")
    if a == 0:
        raise InvalidParameter("resolvent pole must not sit at the origin")
    s, c0 = a.real, abs(a.imag)

    def dl(x):
        return ResolventEnvelope(m=1.0, shift=x + s, t0=0.0).off_center(c0)

    prof = Profiles(
        deriv_line=dl,
        modulus_line=lambda x: PowerEnvelope(p=1.0, c=2.0, t0=max(2 * (c0 + x + s), 1.0)),
        deriv_outer=PowerEnvelope(p=2.0, c=1.0, t0=1e-6),
        modulus_outer=PowerEnvelope(p=1.0, c=1.0, t0=1e-6),
        window=max(8.0, 4.0 * c0),
        e0_upper=math.pi,
    )
    flags = {("EXTENDS_LEFT", s)} if s > 0 else set()
    if s > 0:
        flags.add(("IN_LM",))
    return AnalyticFunction(
        eval_fn=_vec(lambda z: 1.0 / (z + a)),
        deriv_fn=_vec(lambda z: -1.0 / (z + a) ** 2),
        profiles=prof,
        value_at_infinity=0.0,
        class_flags=frozenset(flags),
        label=f"resolvent(a={a})",
        left_bound=s,
    )


def cayley_pow(n: int) -> AnalyticFunction:
    """((z-1)/(z+1))^n, n >= 1."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter("cayley power needs integer n >= 1")
    n = int(n)

    def ev(z):
        return ((z - 1.0) / (z + 1.0)) ** n

    def dv(z):
        w = (z - 1.0) / (z + 1.0)
        return 2.0 * n * w ** (n - 1) / (z + 1.0) ** 2

    prof = Profiles(
        deriv_line=lambda x: ResolventEnvelope(m=2.0 * n, shift=x + 1.0),
        modulus_line=lambda x: ConstEnvelope(c=1.0),
        deriv_outer=PowerEnvelope(p=2.0, c=2.0 * n, t0=2.0 * n),
        modulus_outer=ConstEnvelope(c=1.0),
        window=max(8.0, 2.0 * n),
    )
    return AnalyticFunction(
        eval_fn=_vec(ev),
        deriv_fn=_vec(dv),
        profiles=prof,
        value_at_infinity=1.0,
        class_flags=frozenset({("IN_LM",), ("EXTENDS_LEFT", 1.0)}),
        label=f"cayley(n={n})",
        left_bound=1.0,
    )


def _eta_eval(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 0.25
    zs = z[small]
    # series of (1 - exp(-z))/z around 0
    acc = np.zeros_like(zs)
    term = np.ones_like(zs)
    for k in range(1, 18):
        term = term * (-zs) / (k + 1) if k > 1 else (-zs) / 2.0
        if k == 1:
            acc = 1.0 + term
        else:
            acc = acc + term
    out[small] = acc
    zb = z[~small]
    out[~small] = (1.0 - np.exp(-zb)) / zb
    return out


def _eta_deriv(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 0.25
    zs = z[small]
    # series of d/dz (1-exp(-z))/z = sum_{k>=1} k (-1)^k z^(k-1) / (k+1)!
    acc = np.zeros_like(zs)
    pw = np.ones_like(zs)
    for k in range(1, 18):
        acc = acc + k * (-1) ** k * pw / math.factorial(k + 1)
        pw = pw * zs
    out[small] = acc
    zb = z[~small]
    out[~small] = (np.exp(-zb) * (1.0 + zb) - 1.0) / zb**2
    return out


def eta(delta: float = 1.0) -> AnalyticFunction:
    """(1 - exp(-z))/z, the Laplace transform of Lebesgue measure on [0, 1]."""

    def dl(x):
        return SumEnvelope.of(
            PowerEnvelope(p=2.0, c=2.0, t0=max(2.0 * (1.0 + x), 2.0)),
            PowerEnvelope(
                p=1.0, c=math.exp(-x), t0=max(2.0 * (1.0 + x), 2.0), freq_lo=-1.0, freq_hi=-1.0
            ),
        )

    prof = Profiles(
        deriv_line=dl,
        # frequency content spans [-1, 0]: never a single-frequency factor
        modulus_line=lambda x: PowerEnvelope(
            p=1.0, c=2.0, t0=max(x, 1.0), freq_lo=-1.0, freq_hi=0.0
        ),
        deriv_outer=PowerEnvelope(p=2.0, c=1.0, t0=1.0),
        modulus_outer=PowerEnvelope(p=1.0, c=1.0, t0=1e-6),
        window=24.0,
    )
    base = AnalyticFunction(
        eval_fn=_eta_eval,
        deriv_fn=_eta_deriv,
        profiles=prof,
        value_at_infinity=0.0,
        class_flags=frozenset({("IN_LM",), ("EXTENDS_LEFT", math.inf)}),
        label="eta",
        left_bound=math.inf,
    )
    if delta == 1.0:
        return base
    if delta <= 0:
        raise InvalidParameter("eta dilation needs delta > 0")
    return dilate(base, delta).relabel(f"eta(delta={delta:g})")


def exp_inv_shift(t: float) -> AnalyticFunction:
    """exp(-t/(z+1)), t > 0."""
    if t <= 0:
        raise InvalidParameter("exp_inv_shift needs t > 0")

    def ev(z):
        return np.exp(-t / (z + 1.0))

    def dv(z):
        return t * np.exp(-t / (z + 1.0)) / (z + 1.0) ** 2

    # t0 >= t/6 keeps the phase of exp(-t/(z+1)) inside the slow-variation
    # contract assumed by oscillatory tail corrections in products
    prof = Profiles(
        deriv_line=lambda x: ResolventEnvelope(m=t, shift=x + 1.0, t0=t / 6.0),
        modulus_line=lambda x: ConstEnvelope(c=1.0, t0=t / 6.0),
        deriv_outer=PowerEnvelope(p=2.0, c=t, t0=1.0),
        modulus_outer=ConstEnvelope(c=1.0),
    )
    return AnalyticFunction(
        eval_fn=_vec(ev),
        deriv_fn=_vec(dv),
        profiles=prof,
        value_at_infinity=1.0,
        class_flags=frozenset({("IN_LM",), ("EXTENDS_LEFT", 1.0)}),
        label=f"expinv(t={t:g})",
        left_bound=1.0,
    )


def vitse_reg(t: float) -> AnalyticFunction:
    """(z/(z+1))^2 exp(-t/z), t > 0; the regularised inverse-exponential."""
    if t <= 0:
        raise InvalidParameter("vitse_reg needs t > 0")

    def ev(z):
        return (z / (z + 1.0)) ** 2 * np.exp(-t / z)

    def dv(z):
        return (t + (t + 2.0) * z) / (1.0 + z) ** 3 * np.exp(-t / z)

    prof = Profiles(
        deriv_line=lambda x: ResolventEnvelope(m=t + 2.0, shift=x + 1.0, t0=t / 6.0),
        modulus_line=lambda x: ConstEnvelope(c=1.0, t0=t / 6.0),
        deriv_outer=PowerEnvelope(p=2.0, c=t + 2.0, t0=1.0),
        modulus_outer=ConstEnvelope(c=1.0),
        window=max(8.0, 4.0 * math.sqrt(t)),
    )
    return AnalyticFunction(
        eval_fn=_vec(ev),
        deriv_fn=_vec(dv),
        profiles=prof,
        value_at_infinity=1.0,
        class_flags=frozenset({("IN_LM",)}),
        label=f"vitse(t={t:g})",
        left_bound=0.0,
    )


def _laplace_summands(atoms, dens) -> tuple["AnalyticFunction", ...]:
    parts: list[AnalyticFunction] = []
    zero_mass = sum(c for t, c in atoms if t == 0.0)
    if zero_mass != 0:
        parts.append(const(zero_mass))
    for t, c in atoms:
        if t > 0 and c != 0:
            parts.append(scale(exp_decay(t), c))
    if dens is not None:
        if dens[0] == "exp":
            _, coeff, rate = dens
            parts.append(scale(resolvent(rate), coeff))
        else:
            _, coeff, a, b = dens
            w = b - a
            core = dilate(eta(), w) if a == 0 else mul(exp_decay(a), dilate(eta(), w))
            parts.append(scale(core, coeff * w))
    return tuple(parts)


def laplace_transform(measure: HalfLineMeasure) -> AnalyticFunction:
    """Laplace transform of a bounded measure: atoms plus optional density."""
    atoms = tuple((float(t), complex(c)) for t, c in measure.atoms)
    dens = measure.density

    def ev(z):
        out = np.zeros_like(z)
        for t, c in atoms:
            out = out + c * np.exp(-t * z)
        if dens is not None:
            if dens[0] == "exp":
                _, coeff, rate = dens
                out = out + coeff / (z + rate)
            else:
                _, coeff, a, b = dens
                w = b - a
                out = out + coeff * w * np.exp(-a * z) * _eta_eval(w * z)
        return out

    def dv(z):
        out = np.zeros_like(z)
        for t, c in atoms:
            out = out - c * t * np.exp(-t * z)
        if dens is not None:
            if dens[0] == "exp":
                _, coeff, rate = dens
                out = out - coeff / (z + rate) ** 2
            else:
                _, coeff, a, b = dens
                w = b - a
                e = np.exp(-a * z)
                out = out + coeff * w * e * (-a * _eta_eval(w * z) + w * _eta_deriv(w * z))
        return out

    pos_taus = sorted(t for t, c in atoms if t > 0 and c != 0)
    freq_hi = -pos_taus[0] if pos_taus else 0.0
    freq_lo = -pos_taus[-1] if pos_taus else 0.0

    def dl(x):
        parts = []
        amp = sum(abs(c) * t * math.exp(-t * x) for t, c in atoms)
        if amp > 0:
            parts.append(ConstEnvelope(c=amp, freq_lo=freq_lo, freq_hi=freq_hi))
        if dens is not None:
            if dens[0] == "exp":
                _, coeff, rate = dens
                parts.append(ResolventEnvelope(m=abs(coeff), shift=x + rate))
            else:
                _, coeff, a, b = dens
                parts.append(
                    SumEnvelope.of(
                        PowerEnvelope(p=2.0, c=2.0 * abs(coeff), t0=max(2 * (b + x), 2.0)),
                        PowerEnvelope(
                            p=1.0,
                            c=abs(coeff) * (math.exp(-a * x) + math.exp(-b * x)),
                            t0=max(2 * (b + x), 2.0),
                            freq_lo=-b,
                            freq_hi=-a,
                        ),
                    )
                )
        return SumEnvelope.of(*parts) if parts else _ZERO_ENV

    def ml(x):
        amp = sum(abs(c) * math.exp(-t * x) for t, c in atoms)
        lo = freq_lo
        hi = freq_hi
        if dens is not None or any(t == 0.0 and c != 0 for t, c in atoms):
            hi = 0.0
            if dens is not None and dens[0] == "lebesgue":
                lo = min(lo, -dens[3])
        return ConstEnvelope(
            c=amp + (measure.total_variation() - sum(abs(c) for _, c in atoms)),
            freq_lo=lo,
            freq_hi=hi,
        )

    outer_parts = []
    if pos_taus:
        amp = sum(abs(c) * t for t, c in atoms if t > 0)
        outer_parts.append(ExpEnvelope(a=pos_taus[0], c=amp))
    if dens is not None:
        if dens[0] == "exp":
            outer_parts.append(PowerEnvelope(p=2.0, c=abs(dens[1]), t0=1e-6))
        else:
            _, coeff, a, b = dens
            if a > 0:
                outer_parts.append(ExpEnvelope(a=a, c=abs(coeff) * b * (b - a)))
            else:
                outer_parts.append(PowerEnvelope(p=2.0, c=abs(coeff), t0=1e-6))
    deriv_outer = SumEnvelope.of(*outer_parts) if outer_parts else _ZERO_ENV

    min_scale = pos_taus[0] if pos_taus else 1.0
    gaps = [b - a for a, b in zip(pos_taus, pos_taus[1:]) if b > a]
    beat = min(gaps) if gaps else min_scale
    lb = math.inf
    if dens is not None and dens[0] == "exp":
        lb = dens[2]
    prof = Profiles(
        deriv_line=dl,
        modulus_line=ml,
        deriv_outer=deriv_outer,
        modulus_outer=ConstEnvelope(c=measure.total_variation()),
        window=max(8.0, 3.0 * 2.0 * math.pi / min(min_scale, beat)),
    )
    parts = _laplace_summands(atoms, dens)
    return AnalyticFunction(
        eval_fn=_vec(ev),
        deriv_fn=_vec(dv),
        profiles=prof,
        value_at_infinity=measure.mass_at_zero(),
        class_flags=frozenset({("IN_LM",)}),
        label="laplace(...)",
        left_bound=lb,
        summands=parts if len(parts) >= 2 else None,
    )


def band_function(eps: float, sigma: float, coeffs=None) -> AnalyticFunction:
    """Finite exponential sum with rates in [eps, sigma]: sum c_j exp(-tau_j z)."""
    if not 0 < eps < sigma:
        raise InvalidParameter("band needs 0 < eps < sigma")
    if coeffs is None:
        coeffs = [(eps, 1.0), (sigma, -1.0)]
    taus = [float(t) for t, _ in coeffs]
    if any(t < eps - 1e-12 or t > sigma + 1e-12 for t in taus):
        raise InvalidParameter("band rates must lie in [eps, sigma]")
    f = laplace_transform(HalfLineMeasure(atoms=tuple((t, complex(c)) for t, c in coeffs)))
    flags = set(f.class_flags) | {("BAND", eps, sigma), ("EXTENDS_LEFT", math.inf)}
    return replace(
        f,
        class_flags=frozenset(flags),
        label=f"band(eps={eps:g},sigma={sigma:g})",
        left_bound=math.inf,
    )


def bernstein_resolvent(
    fb: BernsteinFunction, alpha: float, beta: float, theta: float, lam: complex
) -> AnalyticFunction:
    """(lam + fb(z^alpha)^beta)^(-1) on the half-plane."""
    if not 0 < alpha < 1:
        raise InvalidParameter("needs alpha in (0, 1)")
    if not 1 < beta <= 1.0 / alpha + 1e-12:
        raise InvalidParameter("needs beta in (1, 1/alpha]")
    if not 0 < theta < math.pi / 2:
        raise InvalidParameter("needs theta in (0, pi/2)")
    lam = complex(lam)
    if lam == 0 or abs(cmath.phase(lam)) >= theta:
        raise InvalidParameter("lambda must lie in the open sector of half-angle theta")
    fb.validate_monotone()
    c_a = math.cos(alpha * math.pi / 2.0)
    kappa = math.cos((alpha * beta * math.pi / 2.0 + theta) / 2.0)

    def g(z):
        return fb(np.power(z, alpha)) ** beta

    def ev(z):
        return 1.0 / (lam + g(z))

    def dv(z):
        w = np.power(z, alpha)
        return (
            -alpha
            * beta
            * fb(w) ** (beta - 1.0)
            * fb.deriv(w)
            * np.power(z, alpha - 1.0)
            / (lam + fb(w) ** beta) ** 2
        )

    L = fb.limit_at_infinity()
    f_inf = 0.0 if math.isinf(L) else 1.0 / (lam + L**beta)

    def s_bound(x: float) -> float:
        u = c_a * x**alpha
        return float(
            alpha
            * beta
            * fb.deriv(np.array([u + 0j]))[0].real
            / (kappa**2 * (abs(lam) + fb(np.array([u + 0j]))[0].real ** beta) ** (1 + 1 / beta))
        )

    if fb.b > 0:
        c_pow = (
            alpha
            * beta
            * (fb.b + sum(c * s for s, c in fb.jumps))
            / (kappa**2 * (fb.b * c_a) ** (beta + 1.0))
        )
        deriv_outer = PowerEnvelope(p=1.0 + alpha * beta, c=c_pow, t0=1.0)
    elif fb.jumps:
        s_min = min(s for s, _ in fb.jumps)
        d0 = sum(c * s for s, c in fb.jumps)
        c_st = alpha * beta * d0 / (kappa**2 * abs(lam) ** (1 + 1 / beta))
        deriv_outer = StretchedExpEnvelope(alpha=alpha, rho=s_min * c_a, c=c_st, t0=1e-6)
    else:
        return const(1.0 / (lam + fb.a**beta))

    # the degenerate band [-eps, 0] marks sub-linear phase content: products
    # never qualify for single-frequency tail corrections
    prof = Profiles(
        deriv_line=lambda x: PowerEnvelope(
            p=1.0 - alpha,
            c=s_bound(x) + 1e-300,
            t0=max(x, 1.0),
            freq_lo=-1e-9,
            freq_hi=0.0,
        ),
        modulus_line=lambda x: ConstEnvelope(
            c=1.0 / (kappa * abs(lam)), freq_lo=-1e-9, freq_hi=0.0
        ),
        deriv_outer=deriv_outer,
        modulus_outer=ConstEnvelope(c=1.0 / (kappa * abs(lam))),
    )
    return AnalyticFunction(
        eval_fn=_vec(ev),
        deriv_fn=_vec(dv),
        profiles=prof,
        value_at_infinity=f_inf,
        class_flags=frozenset(),
        label=f"bernstein_res(alpha={alpha:g},beta={beta:g})",
        left_bound=0.0,
    )


# ---------------------------------------------------------------------------
# Algebra of functions
# ---------------------------------------------------------------------------


def _global_modulus_bound(f: AnalyticFunction) -> float | None:
    env = f.profiles.modulus_outer
    if isinstance(env, ConstEnvelope):
        return env.c
    return None


def _merge_left(f, g):
    return min(f.left_bound, g.left_bound)


def _flags_binary(f, g, *, band_rule):
    flags = set()
    if f.has_flag("IN_LM") and g.has_flag("IN_LM"):
        flags.add(("IN_LM",))
    ef, eg = f.flag("EXTENDS_LEFT"), g.flag("EXTENDS_LEFT")
    if ef and eg:
        flags.add(("EXTENDS_LEFT", min(ef[1], eg[1])))
    bf, bg = f.flag("BAND"), g.flag("BAND")
    if bf and bg:
        merged = band_rule(bf, bg)
        if merged is not None:
            flags.add(merged)
    return frozenset(flags)


def add(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    fi, gi = f.value_at_infinity, g.value_at_infinity
    prof = Profiles(
        deriv_line=lambda x: SumEnvelope.of(f.profiles.deriv_line(x), g.profiles.deriv_line(x)),
        modulus_line=lambda x: SumEnvelope.of(
            f.profiles.modulus_line(x), g.profiles.modulus_line(x)
        ),
        deriv_outer=SumEnvelope.of(f.profiles.deriv_outer, g.profiles.deriv_outer),
        modulus_outer=SumEnvelope.of(f.profiles.modulus_outer, g.profiles.modulus_outer),
        window=max(f.profiles.window, g.profiles.window),
        e0_upper=(
            f.profiles.e0_upper + g.profiles.e0_upper
            if f.profiles.e0_upper is not None and g.profiles.e0_upper is not None
            else None
        ),
    )
    return AnalyticFunction(
        eval_fn=lambda z: f.eval_fn(z) + g.eval_fn(z),
        deriv_fn=(
            (lambda z: f.deriv_fn(z) + g.deriv_fn(z))
            if f.deriv_fn is not None and g.deriv_fn is not None
            else None
        ),
        profiles=prof,
        value_at_infinity=fi + gi if fi is not None and gi is not None else None,
        class_flags=_flags_binary(
            f,
            g,
            band_rule=lambda bf, bg: ("BAND", min(bf[1], bg[1]), max(bf[2], bg[2])),
        ),
        label=f"({f.label}+{g.label})",
        left_bound=_merge_left(f, g),
        infinity_certified=f.infinity_certified and g.infinity_certified,
        summands=(f.summands or (f,)) + (g.summands or (g,)),
    )


def mul(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    from .quadrature import envelope_product

    fi, gi = f.value_at_infinity, g.value_at_infinity
    fp, gp = f.profiles, g.profiles
    prof = Profiles(
        deriv_line=lambda x: SumEnvelope.of(
            envelope_product(fp.deriv_line(x), gp.modulus_line(x)),
            envelope_product(fp.modulus_line(x), gp.deriv_line(x)),
        ),
        modulus_line=lambda x: envelope_product(fp.modulus_line(x), gp.modulus_line(x)),
        deriv_outer=SumEnvelope.of(
            envelope_product(fp.deriv_outer, gp.modulus_outer),
            envelope_product(fp.modulus_outer, gp.deriv_outer),
        ),
        modulus_outer=envelope_product(fp.modulus_outer, gp.modulus_outer),
        window=max(fp.window, gp.window),
        e0_upper=(
            fp.e0_upper * _global_modulus_bound(g) + gp.e0_upper * _global_modulus_bound(f)
            if None
            not in (fp.e0_upper, gp.e0_upper, _global_modulus_bound(f), _global_modulus_bound(g))
            else None
        ),
    )
    return AnalyticFunction(
        eval_fn=lambda z: f.eval_fn(z) * g.eval_fn(z),
        deriv_fn=(
            (lambda z: f.deriv_fn(z) * g.eval_fn(z) + f.eval_fn(z) * g.deriv_fn(z))
            if f.deriv_fn is not None and g.deriv_fn is not None
            else None
        ),
        profiles=prof,
        value_at_infinity=fi * gi if fi is not None and gi is not None else None,
        class_flags=_flags_binary(
            f, g, band_rule=lambda bf, bg: ("BAND", bf[1] + bg[1], bf[2] + bg[2])
        ),
        label=f"({f.label}*{g.label})",
        left_bound=_merge_left(f, g),
        infinity_certified=f.infinity_certified and g.infinity_certified,
    )


def scale(f: AnalyticFunction, c: complex) -> AnalyticFunction:
    c = complex(c)
    fp = f.profiles
    prof = Profiles(
        deriv_line=lambda x: fp.deriv_line(x).scaled(abs(c)),
        modulus_line=lambda x: fp.modulus_line(x).scaled(abs(c)),
        deriv_outer=fp.deriv_outer.scaled(abs(c)),
        modulus_outer=fp.modulus_outer.scaled(abs(c)),
        window=fp.window,
        e0_upper=fp.e0_upper * abs(c) if fp.e0_upper is not None else None,
    )
    return replace(
        f,
        eval_fn=lambda z: c * f.eval_fn(z),
        deriv_fn=(lambda z: c * f.deriv_fn(z)) if f.deriv_fn is not None else None,
        profiles=prof,
        value_at_infinity=(
            c * f.value_at_infinity if f.value_at_infinity is not None else None
        ),
        label=f"({c}*{f.label})",
        summands=(
            tuple(scale(s, c) for s in f.summands) if f.summands is not None else None
        ),
    )


def shift(f: AnalyticFunction, a: complex) -> AnalyticFunction:
    """z -> f(z + a) for Re a >= 0."""
    a = complex(a)
    if a.real < 0:
        raise InvalidParameter("shift needs Re a >= 0")
    fp = f.profiles
    off = abs(a.imag)
    prof = Profiles(
        deriv_line=lambda x: fp.deriv_line(x + a.real).off_center(off),
        modulus_line=lambda x: fp.modulus_line(x + a.real).off_center(off),
        deriv_outer=fp.deriv_outer,
        modulus_outer=fp.modulus_outer,
        window=fp.window + 2 * off,
        e0_upper=fp.e0_upper,
    )
    flags = {fl for fl in f.class_flags if fl[0] not in ("EXTENDS_LEFT", "BAND")}
    ef = f.flag("EXTENDS_LEFT")
    if ef:
        flags.add(("EXTENDS_LEFT", ef[1] + a.real))
    bf = f.flag("BAND")
    if bf:
        flags.add(bf)
    return replace(
        f,
        eval_fn=lambda z: f.eval_fn(np.asarray(z, dtype=complex) + a),
        deriv_fn=(
            (lambda z: f.deriv_fn(np.asarray(z, dtype=complex) + a))
            if f.deriv_fn is not None
            else None
        ),
        profiles=prof,
        class_flags=frozenset(flags),
        label=f"shift({f.label},{a})",
        left_bound=f.left_bound + a.real,
        summands=(
            tuple(shift(s, a) for s in f.summands) if f.summands is not None else None
        ),
    )


def dilate(f: AnalyticFunction, b: float) -> AnalyticFunction:
    """z -> f(b z) for b > 0."""
    if b <= 0:
        raise InvalidParameter("dilate needs b > 0")
    fp = f.profiles
    prof = Profiles(
        deriv_line=lambda x: fp.deriv_line(b * x).dilated_arg(b).scaled(b),
        modulus_line=lambda x: fp.modulus_line(b * x).dilated_arg(b),
        deriv_outer=fp.deriv_outer.dilated_arg(b).scaled(b),
        modulus_outer=fp.modulus_outer.dilated_arg(b),
        window=fp.window / b,
        e0_upper=fp.e0_upper,
    )
    flags = {fl for fl in f.class_flags if fl[0] not in ("EXTENDS_LEFT", "BAND")}
    ef = f.flag("EXTENDS_LEFT")
    if ef:
        flags.add(("EXTENDS_LEFT", ef[1] / b))
    bf = f.flag("BAND")
    if bf:
        flags.add(("BAND", bf[1] * b, bf[2] * b))
    return replace(
        f,
        eval_fn=lambda z: f.eval_fn(b * np.asarray(z, dtype=complex)),
        deriv_fn=(
            (lambda z: b * f.deriv_fn(b * np.asarray(z, dtype=complex)))
            if f.deriv_fn is not None
            else None
        ),
        profiles=prof,
        class_flags=frozenset(flags),
        label=f"dilate({f.label},{b:g})",
        left_bound=f.left_bound / b,
        summands=(
            tuple(dilate(s, b) for s in f.summands) if f.summands is not None else None
        ),
    )


def _sample_grid(f: AnalyticFunction) -> np.ndarray:
    xs = np.geomspace(1e-3, 1e3, 25)
    ys = np.linspace(-60.0, 60.0, 41)
    zs = (xs[:, None] + 1j * ys[None, :]).ravel()
    return np.asarray(f.eval_fn(zs))


def reciprocal(f: AnalyticFunction, lower_bound: float = 1e-9) -> AnalyticFunction:
    """1/f; requires |f| bounded away from zero on a sample grid."""
    vals = _sample_grid(f)
    m = float(np.min(np.abs(vals)))
    if f.value_at_infinity is not None:
        m = min(m, abs(f.value_at_infinity))
    if m <= lower_bound:
        raise RangeViolation(f"reciprocal needs |f| >= m > 0; sampled minimum {m:.3e}")
    fp = f.profiles
    prof = Profiles(
        deriv_line=lambda x: fp.deriv_line(x).scaled(1.0 / m**2),
        modulus_line=lambda x: ConstEnvelope(c=1.0 / m),
        deriv_outer=fp.deriv_outer.scaled(1.0 / m**2),
        modulus_outer=ConstEnvelope(c=1.0 / m),
        window=fp.window,
    )
    fi = f.value_at_infinity
    return AnalyticFunction(
        eval_fn=lambda z: 1.0 / f.eval_fn(z),
        deriv_fn=(
            (lambda z: -f.deriv_fn(z) / f.eval_fn(z) ** 2) if f.deriv_fn is not None else None
        ),
        profiles=prof,
        value_at_infinity=1.0 / fi if fi not in (None, 0) else None,
        label=f"(1/{f.label})",
        left_bound=0.0,
        infinity_certified=f.infinity_certified and fi not in (None, 0),
    )


def power(f: AnalyticFunction, beta: float) -> AnalyticFunction:
    """f**beta (principal branch); range must avoid the negative real axis."""
    vals = _sample_grid(f)
    args = np.angle(vals[np.abs(vals) > 0])
    if args.size and np.max(np.abs(args)) > math.pi - 0.05:
        raise RangeViolation("power needs the sampled range inside the slit plane")
    m = float(np.min(np.abs(vals)))
    if beta < 1 and m <= 1e-9:
        raise RangeViolation("fractional power needs |f| bounded away from zero")
    big = _global_modulus_bound(f)
    if big is None:
        big = float(np.max(np.abs(vals))) * 2.0
    amp = abs(beta) * (big ** (beta - 1.0) if beta >= 1 else m ** (beta - 1.0))
    fp = f.profiles
    prof = Profiles(
        deriv_line=lambda x: fp.deriv_line(x).scaled(amp),
        modulus_line=lambda x: ConstEnvelope(c=big**beta if beta >= 0 else m**beta),
        deriv_outer=fp.deriv_outer.scaled(amp),
        modulus_outer=ConstEnvelope(c=big**beta if beta >= 0 else m**beta),
        window=fp.window,
    )
    fi = f.value_at_infinity
    return AnalyticFunction(
        eval_fn=lambda z: np.power(f.eval_fn(z), beta),
        deriv_fn=(
            (lambda z: beta * np.power(f.eval_fn(z), beta - 1.0) * f.deriv_fn(z))
            if f.deriv_fn is not None
            else None
        ),
        profiles=prof,
        value_at_infinity=fi**beta if fi is not None and (fi != 0 or beta > 0) else None,
        label=f"({f.label}**{beta:g})",
        left_bound=0.0,
        infinity_certified=f.infinity_certified,
    )


# ---------------------------------------------------------------------------
# Spec-string parsing
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise InvalidParameter("empty complex literal")
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise InvalidParameter(f"bad complex literal {text!r}") from exc


def _split_top(s: str, seps: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in seps:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_pair_list(text: str) -> list[tuple[float, complex]]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidParameter(f"expected a [...] list, got {text!r}")
    items = _split_top(body[1:-1], ",")
    # items like "(0" "1)" got split if tuples are flat; re-pair by parentheses
    pairs: list[tuple[float, complex]] = []
    buf: list[str] = []
    for it in items:
        buf.append(it)
        joined = ",".join(buf)
        if joined.count("(") == joined.count(")"):
            inner = joined.strip()
            if inner.startswith("(") and inner.endswith(")"):
                inner = inner[1:-1]
            nums = _split_top(inner, ",")
            if len(nums) != 2:
                raise InvalidParameter(f"expected (location, weight) pairs in {text!r}")
            pairs.append((float(parse_complex(nums[0]).real), parse_complex(nums[1])))
            buf = []
    if buf:
        raise InvalidParameter(f"unbalanced tuple in {text!r}")
    return pairs


def _parse_density(text: str):
    s = text.strip().lower()
    if s in ("", "none"):
        return None
    coeff = 1.0 + 0j
    if "*" in s:
        pre, s = s.split("*", 1)
        coeff = parse_complex(pre)
    if s.startswith("exp"):
        rate = 1.0
        m = re.match(r"exp\((.*)\)$", s)
        if m:
            arg = m.group(1)
            rate = float(arg.split("=")[-1]) if arg else 1.0
        return ("exp", coeff, rate)
    if s.startswith("lebesgue"):
        a, b = 0.0, 1.0
        m = re.match(r"lebesgue\((.*)\)$", s)
        if m and m.group(1):
            nums = _split_top(m.group(1), ",")
            if len(nums) != 2:
                raise InvalidParameter(f"lebesgue density needs two endpoints: {text!r}")
            a, b = float(nums[0]), float(nums[1])
        return ("lebesgue", coeff, a, b)
    raise InvalidParameter(f"unknown density spec {text!r}")


def _parse_args(body: str) -> tuple[list[str], dict[str, str]]:
    positional, named = [], {}
    for part in _split_top(body, ",;"):
        if "=" in part and part.split("=", 1)[0].strip().replace("_", "").isalpha():
            k, v = part.split("=", 1)
            named[k.strip().lower()] = v.strip()
        else:
            positional.append(part)
    return positional, named


def make_catalog(spec) -> AnalyticFunction:
    """Build a catalog function from a spec string or return it unchanged."""
    if isinstance(spec, AnalyticFunction):
        return spec
    return parse_function_spec(str(spec))


def parse_function_spec(text: str) -> AnalyticFunction:
    s = text.strip()
    m = re.match(r"^([a-zA-Z_][a-zA-Z0-9_]*)\s*(\((.*)\))?$", s, re.DOTALL)
    if not m:
        raise UnknownSpec(f"cannot parse function spec {text!r}")
    name = m.group(1).lower()
    body = m.group(3) or ""
    pos, kw = _parse_args(body)

    def num(key, idx=0, default=None):
        if key in kw:
            return parse_complex(kw[key])
        if idx < len(pos):
            return parse_complex(pos[idx])
        if default is not None:
            return default
        raise InvalidParameter(f"{name} spec needs parameter {key!r}")

    if name == "const":
        return const(num("c", 0, 1.0))
    if name == "exp":
        return exp_decay(float(num("a", 0).real) if num("a", 0).imag == 0 else num("a", 0))
    if name == "resolvent":
        return resolvent(num("a", 0))
    if name == "cayley":
        return cayley_pow(int(num("n", 0).real))
    if name == "eta":
        return eta(float(num("delta", 0, 1.0).real))
    if name == "expinv":
        return exp_inv_shift(float(num("t", 0).real))
    if name == "vitse":
        return vitse_reg(float(num("t", 0).real))
    if name == "laplace":
        atoms = _parse_pair_list(kw["atoms"]) if "atoms" in kw else []
        dens = _parse_density(kw.get("density", "none"))
        return laplace_transform(HalfLineMeasure(atoms=tuple(atoms), density=dens))
    if name == "band":
        eps = float(num("eps", 0).real)
        sigma = float(num("sigma", 1).real)
        coeffs = _parse_pair_list(kw["coeffs"]) if "coeffs" in kw else None
        return band_function(eps, sigma, coeffs)
    if name == "bernstein_res":
        jumps = (
            tuple((float(t), float(c.real)) for t, c in _parse_pair_list(kw["atoms"]))
            if "atoms" in kw
            else ()
        )
        fb = BernsteinFunction(
            a=float(num("a", default=0.0).real),
            b=float(num("b", default=0.0).real),
            jumps=jumps,
        )
        return bernstein_resolvent(
            fb,
            alpha=float(num("alpha").real),
            beta=float(num("beta").real),
            theta=float(num("theta").real),
            lam=num("lambda", default=None) if "lambda" in kw else num("lam"),
        )
    raise UnknownSpec(f"unknown function family {name!r}")

"""Finite-dimensional operator calculus: resolvents, semigroups, the resolvent
double-integral calculus, the Hille-Phillips route, and eigen oracles."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    IntegralNotNormConvergent,
    InvalidParameter,
    NotDiagonalizable,
    ProfileDivergence,
    SingularShift,
    SpectrumError,
    UnknownSpec,
)
from .functions import AnalyticFunction, HalfLineMeasure, cauchy_derivatives, parse_complex
from .quadrature import (
    DEFAULT_CONFIG,
    ExpEnvelope,
    PowerEnvelope,
    QuadratureConfig,
    envelope_product,
    golden_max,
    integrate_halfline,
    integrate_interval,
    integrate_line,
)

__all__ = [
    "MatrixOperator",
    "OperatorProfile",
    "ApplyReport",
    "resolvent_matrix",
    "semigroup",
    "profile",
    "apply_calculus",
    "apply_calculus_report",
    "hp_apply",
    "oracle_apply",
    "semigroup_reconstruct_check",
    "parse_operator_spec",
    "read_matrix_text",
    "format_matrix_text",
    "random_normal_operator",
    "random_sectorial_operator",
    "jordan_operator",
]

_MAX_DIM = 64
_EIG_TOL = 1e-7


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    order = np.argsort(values.real * 1e6 + values.imag)
    groups: list[list[int]] = []
    for i in order:
        for gr in groups:
            if abs(values[i] - values[gr[0]]) <= tol:
                gr.append(int(i))
                break
        else:
            groups.append([int(i)])
    return groups


@dataclass
class MatrixOperator:
    """Dense square matrix with spectrum in the closed right half-plane.

    Purely imaginary eigenvalues must be semisimple; defective matrices are
    admitted only when every eigenvalue carries a single Jordan block.
    """

    matrix: np.ndarray
    label: str = "A"
    eigenvalues: np.ndarray = field(init=False)
    eigenvectors: np.ndarray | None = field(init=False, default=None)
    diagonalizable: bool = field(init=False, default=True)
    jordan_blocks: list[tuple[complex, int]] | None = field(init=False, default=None)
    norm2: float = field(init=False, default=0.0)
    _profile_cache: "OperatorProfile | None" = field(init=False, default=None, repr=False)

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidParameter("operator matrix must be square")
        if a.shape[0] > _MAX_DIM:
            raise InvalidParameter(f"matrix size capped at {_MAX_DIM}x{_MAX_DIM}")
        self.matrix = a
        self.norm2 = float(np.linalg.norm(a, 2)) if a.size else 0.0
        scale = max(1.0, self.norm2)
        lam, vecs = np.linalg.eig(a)
        if np.any(lam.real < -1e-9 * scale):
            bad = lam[lam.real < -1e-9 * scale][0]
            raise SpectrumError(f"eigenvalue {bad} lies in the open left half-plane")
        self.eigenvalues = lam
        groups = _cluster(lam, _EIG_TOL * scale)
        blocks: list[tuple[complex, int]] = []
        semisimple = True
        single_blocks = True
        for gr in groups:
            lam0 = complex(np.mean(lam[gr]))
            alg = len(gr)
            if alg == 1:
                blocks.append((lam0, 1))
                continue
            geo = a.shape[0] - np.linalg.matrix_rank(
                a - lam0 * np.eye(a.shape[0]), tol=1e-8 * scale
            )
            if geo == alg:
                blocks.append((lam0, 1))
                continue
            semisimple = False
            if abs(lam0.real) <= 1e-9 * scale:
                raise SpectrumError(
                    f"non-semisimple eigenvalue {lam0} on the imaginary axis: "
                    "the semigroup would be unbounded"
                )
            if geo == 1:
                blocks.append((lam0, alg))
            else:
                single_blocks = False
        self.diagonalizable = semisimple
        if semisimple:
            self.eigenvectors = vecs
            self.jordan_blocks = [(complex(v), 1) for v in lam]
        elif single_blocks:
            self.jordan_blocks = blocks
        else:
            self.jordan_blocks = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def spectral_abscissa_min(self) -> float:
        return float(np.min(self.eigenvalues.real)) if self.n else 0.0

    def profile(self, cfg: QuadratureConfig = DEFAULT_CONFIG) -> "OperatorProfile":
        if self._profile_cache is None:
            self._profile_cache = profile(self, cfg)
        return self._profile_cache


@dataclass
class OperatorProfile:
    K: float
    M: float
    gamma_hat: float
    gamma_weak_sample: float
    gamma_argmax_alpha: float = 1.0


def resolvent_matrix(A: MatrixOperator, z: complex) -> np.ndarray:
    """(zI + A)^(-1) by LU solve with a residual check."""
    z = complex(z)
    if np.min(np.abs(z + A.eigenvalues)) <= 1e-12 * max(1.0, abs(z), A.norm2):
        raise SingularShift(f"-z = {-z} meets the spectrum")
    m = z * np.eye(A.n) + A.matrix
    x = np.linalg.solve(m, np.eye(A.n))
    resid = float(np.linalg.norm(m @ x - np.eye(A.n)))
    if resid > 1e-10 * max(np.linalg.cond(m), 1.0) + 1e-12:
        raise SingularShift(f"resolvent solve residual {resid:.2e} too large")
    return x


def _resolvents_squared(A: MatrixOperator, zs: np.ndarray) -> np.ndarray:
    """Batched (z_k I + A)^(-2)."""
    eye = np.eye(A.n, dtype=complex)
    mats = zs[:, None, None] * eye[None, :, :] + A.matrix[None, :, :]
    inv = np.linalg.inv(mats)
    return inv @ inv


def semigroup(A: MatrixOperator, t: float) -> np.ndarray:
    """exp(-t A) by scaling-and-squaring Pade approximation."""
    if t < 0:
        raise InvalidParameter("semigroup time must be >= 0")
    return scipy.linalg.expm(-t * A.matrix)


# ---------------------------------------------------------------------------
# Operator profile: K, M, gamma bracket
# ---------------------------------------------------------------------------


def _semigroup_sup(A: MatrixOperator) -> float:
    if A.n == 0:
        return 1.0
    scale = max(1.0, A.norm2)
    k_lo, k_hi = -12, 8
    best = 1.0
    best_t = 0.0
    prev_best = -1.0
    for _ in range(12):
        ts = 2.0 ** np.arange(k_lo, k_hi, 0.25)
        norms = np.array([np.linalg.norm(semigroup(A, t), 2) for t in ts])
        if not np.all(np.isfinite(norms)):
            raise ProfileDivergence(
                "semigroup norm overflows on the settling grid; operator rejected"
            )
        cand = float(norms.max())
        if cand > best:
            best = cand
            best_t = float(ts[int(norms.argmax())])
        # settled when the top of the grid no longer contributes new growth
        tail_max = float(norms[ts >= ts[-1] / 16.0].max())
        if tail_max <= best * (1.0 + 1e-9) and cand <= prev_best * (1.0 + 1e-9):
            break
        prev_best = cand
        k_hi += 6
        if k_hi > 44:
            if tail_max >= best * 0.999 and norms[-1] >= 0.999 * tail_max and best > 1e6:
                raise ProfileDivergence("semigroup norm grid never settles")
            break
    if best_t > 0:
        _, v = golden_max(
            lambda u: float(np.linalg.norm(semigroup(A, math.exp(u)), 2)),
            math.log(best_t) - 0.3,
            math.log(best_t) + 0.3,
            40,
        )
        best = max(best, v)
    return max(best, 1.0)


def _sectoriality_sup(A: MatrixOperator) -> float:
    lam = A.eigenvalues
    scale = max(1.0, A.norm2)
    if np.any((np.abs(lam.real) <= 1e-9 * scale) & (np.abs(lam) > 1e-9 * scale)):
        return math.inf

    def phi(y: float) -> float:
        z = 1j * y
        if abs(z) <= 1e-30:
            return 0.0 if np.min(np.abs(lam)) > 1e-9 else 1.0
        m = z * np.eye(A.n) + A.matrix
        return abs(z) * np.linalg.norm(np.linalg.solve(m, np.eye(A.n)), 2)

    ys = np.concatenate(
        [-np.geomspace(1e-6, 1e3 * scale, 60)[::-1], [0.0], np.geomspace(1e-6, 1e3 * scale, 60)]
    )
    vals = np.array([phi(y) for y in ys])
    best = max(float(vals.max()), 1.0)
    k = int(vals.argmax())
    if 0 < k < len(ys) - 1 and ys[k - 1] < ys[k + 1]:
        _, v = golden_max(phi, float(ys[k - 1]), float(ys[k + 1]), 48)
        best = max(best, v)
    return best


def _gamma_inner(
    A: MatrixOperator,
    alpha: float,
    cfg: QuadratureConfig,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
):
    """alpha * int over beta of ||(alpha+i beta+A)^(-2)|| (and weak samples)."""
    t0 = 2.0 * (alpha + A.norm2) + 1.0
    env = PowerEnvelope(p=2.0, c=4.0, t0=t0)
    eps = max(cfg.abs_tol, 5e-8) / max(alpha, 1.0)
    local = cfg.with_tolerances(abs_tol=eps, rel_tol=1e-6)

    if pairs is None:

        def integrand(betas):
            r2 = _resolvents_squared(A, alpha + 1j * np.asarray(betas, dtype=float))
            return np.linalg.svd(r2, compute_uv=False)[:, 0]

        res = integrate_line(integrand, env, local, tail_tol=eps, strict=False)
        return alpha * float(np.real(res.value))

    xs, ys = pairs

    def integrand(betas):
        r2 = _resolvents_squared(A, alpha + 1j * np.asarray(betas, dtype=float))
        opn = np.linalg.svd(r2, compute_uv=False)[:, 0]
        weak = np.abs(np.einsum("kij,jp,ip->kp", r2, xs, ys.conj()))
        return np.concatenate([opn[:, None], weak], axis=1)

    res = integrate_line(integrand, env, local, tail_tol=eps, strict=False)
    vals = alpha * np.real(res.value)
    return float(vals[0]), vals[1:]


def profile(A: MatrixOperator, cfg: QuadratureConfig = DEFAULT_CONFIG, seed: int = 42):
    """Semigroup bound, sectoriality constant, and the gamma bracket."""
    K = _semigroup_sup(A)
    M = _sectoriality_sup(A)
    rng = np.random.default_rng(seed)
    npairs = 200
    xs = rng.normal(size=(A.n, npairs)) + 1j * rng.normal(size=(A.n, npairs))
    ys = rng.normal(size=(A.n, npairs)) + 1j * rng.normal(size=(A.n, npairs))
    xs /= np.linalg.norm(xs, axis=0, keepdims=True)
    ys /= np.linalg.norm(ys, axis=0, keepdims=True)

    alphas = 2.0 ** np.arange(-20.0, 21.0, 1.0)
    weak_alphas = set(np.arange(-20.0, 21.0, 2.0))
    weak_best = np.zeros(npairs)
    vals = []
    for a in alphas:
        if math.log2(a) in weak_alphas:
            v, w = _gamma_inner(A, float(a), cfg, pairs=(xs, ys))
            weak_best = np.maximum(weak_best, w)
        else:
            v = _gamma_inner(A, float(a), cfg)
        vals.append(v)
    vals = np.array(vals)
    k = int(vals.argmax())
    u_best = math.log2(alphas[k])
    lo = math.log2(alphas[max(k - 1, 0)])
    hi = math.log2(alphas[min(k + 1, len(alphas) - 1)])
    u_ref, v_ref = golden_max(
        lambda u: _gamma_inner(A, float(2.0**u), cfg), lo, hi, cfg.sup_refine_rounds
    )
    sup_val = max(float(vals[k]), float(v_ref))
    gamma_hat = (2.0 / math.pi) * sup_val
    gamma_weak = (2.0 / math.pi) * float(weak_best.max())
    return OperatorProfile(
        K=K,
        M=M,
        gamma_hat=gamma_hat,
        gamma_weak_sample=gamma_weak,
        gamma_argmax_alpha=float(2.0 ** (u_ref if v_ref >= vals[k] else u_best)),
    )


# ---------------------------------------------------------------------------
# The resolvent double-integral calculus
# ---------------------------------------------------------------------------


@dataclass
class ApplyReport:
    value: np.ndarray
    error: float
    extrapolated: bool = False
    n_evals: int = 0


def _sup_deriv_cap(f: AnalyticFunction) -> float:
    env = f.profiles.deriv_outer
    t0 = max(env.t0, 1e-3)
    return env.bound(t0)


def _apply_direct(
    A: MatrixOperator, f: AnalyticFunction, cfg: QuadratureConfig, apply_tol: float
) -> ApplyReport:
    prof = A.profile(cfg)
    gamma_scale = 0.5 * math.pi * prof.gamma_hat
    env_outer = f.profiles.deriv_outer.scaled(gamma_scale)
    if not env_outer.integrable:
        raise IntegralNotNormConvergent(
            "no integrable derivative envelope for the outer integral"
        )
    inner_err = [0.0]
    n_evals = [0]

    def inner(alpha: float) -> np.ndarray:
        t0 = 2.0 * (alpha + A.norm2) + 1.0
        env_r = PowerEnvelope(p=2.0, c=4.0, t0=t0)
        env = envelope_product(env_r, f.profiles.deriv_line(alpha))
        eps = apply_tol / (12.0 * (1.0 + alpha) ** 2)
        local = cfg.with_tolerances(abs_tol=eps, rel_tol=1e-7)

        def integrand(betas):
            betas = np.asarray(betas, dtype=float)
            r2 = _resolvents_squared(A, alpha - 1j * betas)
            fp = np.asarray(f.deriv(alpha + 1j * betas))
            return r2 * fp[:, None, None]

        res = integrate_line(integrand, env, local, tail_tol=eps, strict=False)
        inner_err[0] += alpha * res.error
        n_evals[0] += res.n_evals
        return res.value

    def outer_integrand(alphas):
        return np.array([a * inner(float(a)) for a in np.asarray(alphas, dtype=float)])

    local_outer = cfg.with_tolerances(abs_tol=apply_tol / 4.0, rel_tol=1e-6)
    res = integrate_halfline(
        outer_integrand, env_outer, local_outer, tail_tol=apply_tol / 8.0, strict=False
    )
    value = f.infinity() * np.eye(A.n) - (2.0 / math.pi) * res.value
    err = (2.0 / math.pi) * (res.error + inner_err[0])
    return ApplyReport(value=value, error=err, n_evals=n_evals[0])


def apply_calculus_report(
    A: MatrixOperator,
    f: AnalyticFunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    apply_tol: float = 1e-5,
) -> ApplyReport:
    """f(A) = f(inf) I - (2/pi) * double integral of alpha (alpha-i beta+A)^(-2) f'.

    Requires min Re spectrum > 0 or a finite sectoriality constant; otherwise
    the operator is shifted right by eps = 1e-3, 1e-4 and the results are
    Richardson-extrapolated back (flagged in the report).
    """
    if f.summands is not None and len(f.summands) >= 2:
        # exact linear split; narrow frequency bands integrate much faster
        reports = [apply_calculus_report(A, s, cfg, apply_tol) for s in f.summands]
        return ApplyReport(
            value=sum(r.value for r in reports),
            error=sum(r.error for r in reports),
            extrapolated=any(r.extrapolated for r in reports),
            n_evals=sum(r.n_evals for r in reports),
        )
    scale = max(1.0, A.norm2)
    if A.spectral_abscissa_min() > 1e-9 * scale or math.isfinite(A.profile(cfg).M):
        return _apply_direct(A, f, cfg, apply_tol)
    eps1, eps2 = 1e-3, 1e-4
    a1 = MatrixOperator(A.matrix + eps1 * np.eye(A.n), label=f"{A.label}+{eps1:g}")
    a2 = MatrixOperator(A.matrix + eps2 * np.eye(A.n), label=f"{A.label}+{eps2:g}")
    r1 = _apply_direct(a1, f, cfg, apply_tol)
    r2 = _apply_direct(a2, f, cfg, apply_tol)
    value = (eps1 * r2.value - eps2 * r1.value) / (eps1 - eps2)
    err = r1.error + r2.error + float(np.max(np.abs(r1.value - r2.value)))
    return ApplyReport(value=value, error=err, extrapolated=True, n_evals=r1.n_evals + r2.n_evals)


def apply_calculus(
    A: MatrixOperator,
    f: AnalyticFunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    apply_tol: float = 1e-5,
) -> np.ndarray:
    return apply_calculus_report(A, f, cfg, apply_tol).value


def hp_apply(
    A: MatrixOperator, mu: HalfLineMeasure, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """sum c_k exp(-t_k A) + int exp(-t A) density(t) dt."""
    out = np.zeros((A.n, A.n), dtype=complex)
    for t, c in mu.atoms:
        out += c * semigroup(A, t)
    if mu.density is not None:
        K = A.profile(cfg).K

        def integrand(ts):
            ts = np.asarray(ts, dtype=float)
            return np.array([dens_val(t) * semigroup(A, t) for t in ts])

        if mu.density[0] == "exp":
            _, coeff, rate = mu.density

            def dens_val(t):
                return coeff * math.exp(-rate * t)

            env = ExpEnvelope(a=rate, c=abs(coeff) * K)
            res = integrate_halfline(integrand, env, cfg, strict=False)
        else:
            _, coeff, a, b = mu.density

            def dens_val(t):
                return coeff

            res = integrate_interval(integrand, a, b, cfg)
        out += res.value
    return out


def oracle_apply(
    A: MatrixOperator, f: AnalyticFunction, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Ground truth from the eigendecomposition or single-Jordan-block Taylor form."""
    if A.diagonalizable:
        fl = np.asarray(f(A.eigenvalues))
        v = A.eigenvectors
        return v @ np.diag(fl) @ np.linalg.inv(v)
    if A.jordan_blocks is None:
        raise NotDiagonalizable(
            "oracle supports diagonalizable matrices or one Jordan block per eigenvalue"
        )
    p_cols = []
    blocks = []
    n = A.n
    for lam, m in A.jordan_blocks:
        base = A.matrix - lam * np.eye(n)
        # Jordan chain: kernel vector, then iterated preimages
        _, s, vh = np.linalg.svd(base)
        v1 = vh[-1].conj()
        chain = [v1]
        for _ in range(m - 1):
            w, *_ = np.linalg.lstsq(base, chain[-1], rcond=None)
            chain.append(w)
        p_cols.extend(chain)
        blocks.append((lam, m))
    P = np.array(p_cols).T
    if np.linalg.cond(P) > 1e12:
        raise NotDiagonalizable("Jordan chain basis is numerically singular")
    J = np.zeros((n, n), dtype=complex)
    pos = 0
    for lam, m in blocks:
        fl = complex(f(lam))
        J[pos, pos] = fl
        if m > 1:
            ders = cauchy_derivatives(f, lam, m - 1, cfg)
            for j in range(1, m):
                coef = ders[j - 1] / math.factorial(j)
                for i in range(m - j):
                    J[pos + i, pos + i + j] = coef
            for i in range(1, m):
                J[pos + i, pos + i] = fl
        pos += m
    return P @ J @ np.linalg.inv(P)


def semigroup_reconstruct_check(
    A: MatrixOperator,
    t: float,
    x: np.ndarray,
    xstar: np.ndarray,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> float:
    """Residual of the weak semigroup reconstruction from the squared resolvent.

    Evaluates (1/(2 pi t)) int <(alpha+i beta+A)^(-2) x, x*> e^((alpha+i beta)t) d beta
    at alpha = 1/t and compares with <exp(-tA) x, x*>.
    """
    if t <= 0:
        raise InvalidParameter("needs t > 0")
    x = np.asarray(x, dtype=complex)
    xstar = np.asarray(xstar, dtype=complex)
    alpha = 1.0 / t

    def integrand(betas):
        betas = np.asarray(betas, dtype=float)
        r2 = _resolvents_squared(A, alpha + 1j * betas)
        vals = np.einsum("kij,j,i->k", r2, x, xstar.conj())
        return vals * np.exp((alpha + 1j * betas) * t)

    amp = 4.0 * math.e * float(np.linalg.norm(x) * np.linalg.norm(xstar))
    env = PowerEnvelope(
        p=2.0, c=amp, t0=2.0 * (alpha + A.norm2) + 1.0, freq_lo=t, freq_hi=t
    )
    res = integrate_line(integrand, env, cfg, tail_tol=1e-8, strict=False)
    lhs = complex(res.value) / (2.0 * math.pi * t)
    rhs = complex(xstar.conj() @ (semigroup(A, t) @ x))
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Parsing and IO
# ---------------------------------------------------------------------------


def read_matrix_text(text: str, label: str = "A") -> MatrixOperator:
    """Plain-text format: first line n, then n rows of complex entries re+imi."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InvalidParameter("empty matrix text")
    n = int(lines[0].strip())
    if len(lines) != n + 1:
        raise InvalidParameter(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        entries = [parse_complex(tok) for tok in ln.split()]
        if len(entries) != n:
            raise InvalidParameter(f"row with {len(entries)} entries, expected {n}")
        rows.append(entries)
    return MatrixOperator(np.array(rows, dtype=complex), label=label)


def format_matrix_text(m: np.ndarray) -> str:
    m = np.asarray(m, dtype=complex)
    lines = [str(m.shape[0])]
    for row in m:
        lines.append(" ".join(f"{v.real:.17g}{v.imag:+.17g}i" for v in row))
    return "\n".join(lines) + "\n"


def random_normal_operator(
    n: int, seed: int, box: tuple[float, float, float, float] = (0.5, 5.0, -5.0, 5.0)
) -> MatrixOperator:
    rng = np.random.default_rng(seed)
    re = rng.uniform(box[0], box[1], n)
    im = rng.uniform(box[2], box[3], n)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, _ = np.linalg.qr(g)
    a = q @ np.diag(re + 1j * im) @ q.conj().T
    return MatrixOperator(a, label=f"normal_random({n},seed={seed})")


def random_sectorial_operator(n: int, seed: int, angle: float) -> MatrixOperator:
    if not 0 <= angle < math.pi / 2:
        raise InvalidParameter("sector half-angle must be in [0, pi/2)")
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(math.log(0.2), math.log(8.0), n))
    phi = rng.uniform(-angle, angle, n)
    lam = r * np.exp(1j * phi)
    v = np.eye(n) + 0.3 * np.triu(rng.normal(size=(n, n)), 1)
    a = v @ np.diag(lam) @ np.linalg.inv(v)
    return MatrixOperator(a, label=f"sectorial_random({n},seed={seed})")


def jordan_operator(lam: complex, m: int) -> MatrixOperator:
    a = np.diag(np.full(m, complex(lam))) + np.diag(np.ones(m - 1), 1) if m > 1 else np.array(
        [[complex(lam)]]
    )
    return MatrixOperator(a, label=f"jordan({lam},{m})")


def parse_operator_spec(text: str) -> MatrixOperator:
    s = text.strip()
    if s.startswith("file:"):
        with open(s[5:], "r", encoding="utf-8") as fh:
            return read_matrix_text(fh.read(), label=s)
    m = re.match(r"^([a-zA-Z_][a-zA-Z0-9_]*)\s*\((.*)\)$", s, re.DOTALL)
    if not m:
        raise UnknownSpec(f"cannot parse operator spec {text!r}")
    name = m.group(1).lower()
    body = m.group(2)
    from .functions import _split_top

    parts = _split_top(body, ",;")
    named = {}
    positional = []
    for p in parts:
        if "=" in p and p.split("=", 1)[0].strip().isidentifier():
            k, v = p.split("=", 1)
            named[k.strip().lower()] = v.strip()
        else:
            positional.append(p)

    def grab(key, idx, default=None):
        if key in named:
            return named[key]
        if idx < len(positional):
            return positional[idx]
        if default is not None:
            return default
        raise InvalidParameter(f"operator spec {name} needs {key}")

    if name == "diag":
        vals = [parse_complex(p) for p in positional] + [
            parse_complex(v) for k, v in named.items()
        ]
        return MatrixOperator(np.diag(np.array(vals, dtype=complex)), label=s)
    if name == "jordan":
        lam = parse_complex(grab("lambda", 0))
        mm = int(float(grab("m", 1)))
        return jordan_operator(lam, mm)
    if name == "normal_random":
        n = int(float(grab("n", 0)))
        seed = int(float(grab("seed", 1, "42")))
        box = (0.5, 5.0, -5.0, 5.0)
        if "box" in named:
            nums = [float(x) for x in named["box"].strip("[]").split(",")]
            if len(nums) != 4:
                raise InvalidParameter("spectrum box needs [re_min,re_max,im_min,im_max]")
            box = tuple(nums)  # type: ignore[assignment]
        return random_normal_operator(n, seed, box)
    if name == "sectorial_random":
        n = int(float(grab("n", 0)))
        seed = int(float(grab("seed", 1, "42")))
        angle = float(grab("angle", 2, str(math.pi / 6)))
        return random_sectorial_operator(n, seed, angle)
    raise UnknownSpec(f"unknown operator family {name!r}")

"""Numerical roots of characteristic polynomials and closed-form coefficients.

Roots come from Aberth-Ehrlich simultaneous iteration followed by a Newton
polish.  Multiplicity and the root ``-1`` are never judged numerically; those
decisions use the exact routines in :mod:`randsub.charpoly`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .charpoly import (
    IntPolynomial,
    characteristic_poly,
    eval_integer,
    lagrange_bound,
    square_free_test,
)
from .errors import IllConditionedError, RootSolverError
from .recurrence import SequenceRun, SubtractionSet

DEFAULT_ROOT_TOL = 1e-12
DEFAULT_UNIT_EPS = 1e-8
MAX_ITER = 500
STEP_TOL = 1e-14
# fixed angular offset of the starting circle; breaks conjugate symmetry
START_OFFSET = 0.4
DEFAULT_MAX_CONDITION = 1e12


@njit(cache=True)
def _horner2(c, z):
    # c ascending; returns p(z), p'(z)
    p = 0j
    dp = 0j
    for i in range(c.size - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[i]
    return p, dp


@njit(cache=True)
def _aberth(c, z, max_iter, step_tol):
    d = z.size
    max_step = np.inf
    for it in range(max_iter):
        max_step = 0.0
        for i in range(d):
            p, dp = _horner2(c, z[i])
            if p == 0:
                continue
            s = 0j
            for j in range(d):
                if j != i:
                    s += 1.0 / (z[i] - z[j])
            if dp == 0:
                w = p / (1.0 - p * s) if s != 0 else p
            else:
                ratio = p / dp
                w = ratio / (1.0 - ratio * s)
            z[i] -= w
            step = abs(w) / max(1.0, abs(z[i]))
            if step > max_step:
                max_step = step
        if max_step < step_tol:
            return it + 1, max_step
    return -1, max_step


@njit(cache=True)
def _polish(c, z, sweeps):
    res = np.empty(z.size)
    for i in range(z.size):
        p, dp = _horner2(c, z[i])
        best = abs(p)
        for _ in range(sweeps):
            if dp == 0 or best == 0:
                break
            cand = z[i] - p / dp
            pc, dpc = _horner2(c, cand)
            if abs(pc) < best:
                z[i] = cand
                best = abs(pc)
                p, dp = pc, dpc
            else:
                break
        res[i] = best
    return res


@dataclass(frozen=True)
class ComplexRoot:
    re: float
    im: float
    residual: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    def to_dict(self) -> dict:
        return {"re": self.re, "im": self.im, "modulus": self.modulus, "residual": self.residual}


def _starting_points(coeffs: np.ndarray) -> np.ndarray:
    d = coeffs.size - 1
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (1.0 / d) if coeffs[0] != 0 else 1.0
    angles = 2.0 * np.pi * np.arange(d) / d + START_OFFSET
    return radius * np.exp(1j * angles)


def find_roots_array(
    p: IntPolynomial, tol: float = DEFAULT_ROOT_TOL, max_iter: int = MAX_ITER
) -> tuple[np.ndarray, np.ndarray]:
    """Roots and residuals as numpy arrays (the fast path used by scans)."""
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    c = np.array([float(x) for x in p.coeffs])
    z = _starting_points(c)
    iters, last_step = _aberth(c, z, max_iter, STEP_TOL)
    res = _polish(c, z, 3)
    if iters < 0 and not np.all(res <= tol):
        raise RootSolverError(
            f"Aberth iteration did not converge in {max_iter} sweeps "
            f"(last step {last_step:.3e})",
            residuals=res.tolist(),
        )
    if not np.all(res <= tol):
        raise RootSolverError(
            f"root residuals up to {res.max():.3e} exceed tol={tol:.1e}",
            residuals=res.tolist(),
        )
    return z, res


def find_roots(p: IntPolynomial, tol: float = DEFAULT_ROOT_TOL) -> list[ComplexRoot]:
    """All ``deg p`` complex roots, each with ``|p(z)| <= tol``.

    Deterministic: starting points sit on a circle of radius
    ``(|c_0|/|c_d|)^(1/d)`` at fixed angles.
    """
    z, res = find_roots_array(p, tol)
    return [ComplexRoot(float(v.real), float(v.imag), float(r)) for v, r in zip(z, res)]


@dataclass(frozen=True)
class RootAnalysis:
    roots: list[ComplexRoot]
    max_modulus: float
    has_minus_one: bool
    unit_roots: list[ComplexRoot]
    spectral_gap: float
    square_free: bool
    lagrange_bound: float
    minus_one_index: int | None = None

    @property
    def degree(self) -> int:
        return len(self.roots)

    def to_dict(self, include_roots: bool = True) -> dict:
        out = {
            "degree": self.degree,
            "max_modulus": self.max_modulus,
            "has_minus_one": self.has_minus_one,
            "unit_root_count": len(self.unit_roots),
            "spectral_gap": self.spectral_gap,
            "square_free": self.square_free,
            "lagrange_bound": self.lagrange_bound,
        }
        if include_roots:
            out["roots"] = [r.to_dict() for r in self.roots]
        return out


def _nearest(zs, target: complex) -> int:
    return int(np.argmin(np.abs(np.asarray(zs) - target)))


def analyze_roots(
    S: SubtractionSet,
    eps: float = DEFAULT_UNIT_EPS,
    tol: float = DEFAULT_ROOT_TOL,
    check_square_free: bool = True,
) -> RootAnalysis:
    """Numerical roots of ``chi_S`` combined with the exact checks.

    ``spectral_gap`` is the largest modulus once the root at ``-1`` (if any)
    is set aside; it bounds how fast the non-oscillating part decays.
    """
    chi = characteristic_poly(S)
    roots = find_roots(chi, tol)
    zs = np.array([r.value for r in roots])
    mods = np.abs(zs)
    max_mod = float(mods.max())
    bound = lagrange_bound(chi)
    if max_mod > bound + eps:
        raise RootSolverError(
            f"root modulus {max_mod!r} exceeds the Lagrange bound {bound} for {S}",
            residuals=[r.residual for r in roots],
        )
    has_m1 = eval_integer(chi, -1) == 0
    m1 = _nearest(zs, -1) if has_m1 else None
    others = np.delete(mods, m1) if m1 is not None else mods
    gap = float(others.max()) if others.size else 0.0
    unit = [r for r, m in zip(roots, mods) if abs(m - 1.0) <= eps]
    sq = square_free_test(chi) if check_square_free else True
    return RootAnalysis(
        roots=roots,
        max_modulus=max_mod,
        has_minus_one=has_m1,
        unit_roots=unit,
        spectral_gap=gap,
        square_free=sq,
        lagrange_bound=bound,
        minus_one_index=m1,
    )


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """``a_n = sum_i alpha_i z_i^n + 1/2`` in double precision."""

    roots: np.ndarray
    alphas: np.ndarray
    residual_norm: float
    condition: float
    minus_one_index: int | None = None
    method: str = "dense"
    extra: dict = field(default_factory=dict)

    @property
    def alpha_at_minus_one(self) -> complex | None:
        if self.minus_one_index is None:
            return None
        return complex(self.alphas[self.minus_one_index])

    def reconstruct(self, n: int) -> float:
        return float((self.alphas * self.roots**n).sum().real) + 0.5

    def reconstruct_range(self, n_max: int) -> np.ndarray:
        powers = np.ones_like(self.roots)
        out = np.empty(n_max + 1)
        for n in range(n_max + 1):
            out[n] = (self.alphas * powers).sum().real + 0.5
            powers = powers * self.roots
        return out


def _lagrange_solve(zs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    # alpha_j = sum_n L_{j,n} rhs_n with L_j = f / ((x - z_j) f'(z_j)), f monic
    f = np.poly(zs)[::-1]  # ascending
    K = zs.size
    alphas = np.empty(K, dtype=complex)
    for j, zj in enumerate(zs):
        # synthetic division of f by (x - z_j)
        q = np.empty(K, dtype=complex)
        carry = f[K]
        for i in range(K, 0, -1):
            if i < K:
                carry = f[i] + zj * carry
            q[i - 1] = carry
        fprime = np.prod(zj - np.delete(zs, j))
        alphas[j] = (q * rhs).sum() / fprime
    return alphas


def closed_form_coefficients(
    S: SubtractionSet,
    run: SequenceRun,
    tol: float = DEFAULT_ROOT_TOL,
    max_condition: float | None = DEFAULT_MAX_CONDITION,
    method: str = "dense",
) -> ClosedFormCoefficients:
    """Solve the Vandermonde system ``sum_i alpha_i z_i^n = a_n - 1/2``, ``n < k_max``.

    ``method="dense"`` uses ``numpy.linalg.solve``; ``"lagrange"`` inverts the
    Vandermonde matrix through the Lagrange basis polynomials instead.
    Raises :class:`IllConditionedError` when the condition number exceeds
    ``max_condition`` (pass ``None`` to only report it).
    """
    K = S.k_max
    if run.n_max < K - 1:
        raise ValueError(f"run must cover indices 0..{K - 1}")
    chi = characteristic_poly(S)
    zs, _ = find_roots_array(chi, tol)
    rhs = np.array([float(run.values[n]) - 0.5 for n in range(K)])
    V = np.vander(zs, K, increasing=True).T  # V[n, j] = z_j^n
    cond = float(np.linalg.cond(V))
    if max_condition is not None and cond > max_condition:
        raise IllConditionedError(
            f"Vandermonde condition {cond:.3e} exceeds {max_condition:.1e} for {S}", cond
        )
    if method == "dense":
        alphas = np.linalg.solve(V, rhs.astype(complex))
    elif method == "lagrange":
        alphas = _lagrange_solve(zs, rhs.astype(complex))
    else:
        raise ValueError(f"unknown method {method!r}")
    resid = float(np.max(np.abs(V @ alphas - rhs)))
    m1 = _nearest(zs, -1) if eval_integer(chi, -1) == 0 else None
    return ClosedFormCoefficients(
        roots=zs,
        alphas=alphas,
        residual_norm=resid,
        condition=cond,
        minus_one_index=m1,
        method=method,
    )

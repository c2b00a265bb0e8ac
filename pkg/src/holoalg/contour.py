"""Algebra-valued contour integration, winding data, and Cauchy formulas.

Paths are piecewise-C1 with closed-form kinds (circles and polylines carry
exact derivatives); user-sampled paths are accepted as dense polylines when
flagged smooth.  Integration is composite Gauss-Legendre of order 16 with
interval halving (absolute per-coordinate tolerance, overridable through the
HOLOALG_TOL environment variable).  The generalized index is computed two
independent ways: winding numbers of the spectral projections by adaptive
angle summation, and direct quadrature of the reproducing kernel; the two
must agree to 1e-8 on admissible points.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import Algebra, Element
from .crsystem import FunctionSampler, gcru_residual
from .decomposition import Decomposition, artin_decompose
from .errors import (
    IndexNotInvertible,
    NotAdmissible,
    NotAUnit,
    NotSmooth,
    QuadratureNoConvergence,
    WindingUnresolved,
)
from .morphism import Factorization, Morphism, factor
from .series import PowerSeries

ENDPOINT_TOL = 1e-12
ADMISSIBILITY_RESOLUTION = 1e-4   # path-parameter sampling resolution
WINDING_MAX_POINTS = 2_000_000
WINDING_INTEGER_TOL = 0.05
QUAD_MAX_DEPTH = 20

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def quad_tolerance(tol: float | None = None) -> float:
    if tol is not None:
        return tol
    env = os.environ.get("HOLOALG_TOL")
    return float(env) if env else 1e-10


# ---------------------------------------------------------------------------
# paths and cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleSegment:
    """t |-> center + radius * exp(2 pi i turns t) * direction, t in [0, 1]."""

    algebra: Algebra
    center: np.ndarray
    radius: float
    turns: int
    direction: np.ndarray

    def points(self, ts: np.ndarray) -> np.ndarray:
        phase = np.exp(2j * np.pi * self.turns * ts)
        return self.center[:, None] + self.radius * phase[None, :] * self.direction[:, None]

    def velocities(self, ts: np.ndarray) -> np.ndarray:
        phase = np.exp(2j * np.pi * self.turns * ts)
        coef = self.radius * 2j * np.pi * self.turns
        return coef * phase[None, :] * self.direction[:, None]

    @property
    def suggested_samples(self) -> int:
        return max(64, 32 * abs(self.turns))


@dataclass(frozen=True)
class LineSegment:
    algebra: Algebra
    start: np.ndarray
    end: np.ndarray

    def points(self, ts: np.ndarray) -> np.ndarray:
        return self.start[:, None] + ts[None, :] * (self.end - self.start)[:, None]

    def velocities(self, ts: np.ndarray) -> np.ndarray:
        return np.repeat((self.end - self.start)[:, None], len(ts), axis=1)

    @property
    def suggested_samples(self) -> int:
        return 16


@dataclass(frozen=True)
class Path:
    """A piecewise-C1 parametric path; closed-form kinds carry exact derivatives."""

    algebra: Algebra
    segments: tuple
    closed: bool
    kind: str
    smooth: bool = True
    meta: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        segs = self.segments
        for a, b in zip(segs, segs[1:]):
            gap = np.abs(a.points(np.array([1.0]))[:, 0] - b.points(np.array([0.0]))[:, 0]).max()
            if gap > ENDPOINT_TOL:
                raise ValueError(f"consecutive segments do not share endpoints (gap {gap:.2e})")
        if self.closed and segs:
            first = segs[0].points(np.array([0.0]))[:, 0]
            last = segs[-1].points(np.array([1.0]))[:, 0]
            if np.abs(first - last).max() > ENDPOINT_TOL:
                raise ValueError("closed path does not return to its start")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def circle(cls, center: Element, radius: float, turns: int = 1,
               direction: Element | None = None) -> "Path":
        algebra = center.algebra
        direction = direction if direction is not None else algebra.unit()
        seg = CircleSegment(algebra, center.coords.copy(), float(radius), int(turns),
                            direction.coords.copy())
        meta = {"center": center.coords, "radius": float(radius), "turns": int(turns),
                "direction": direction.coords}
        return cls(algebra, (seg,), closed=True, kind="circle", meta=meta)

    @classmethod
    def polyline(cls, points: Sequence[Element]) -> "Path":
        if len(points) < 2:
            raise ValueError("a polyline needs at least two points")
        algebra = points[0].algebra
        coords = [p.coords for p in points]
        closed = bool(np.abs(coords[0] - coords[-1]).max() <= ENDPOINT_TOL)
        segs = tuple(LineSegment(algebra, a.copy(), b.copy())
                     for a, b in zip(coords, coords[1:]))
        return cls(algebra, segs, closed=closed, kind="polyline",
                   meta={"points": [c for c in coords]})

    @classmethod
    def samples(cls, points: Sequence[Element], smooth: bool) -> "Path":
        path = cls.polyline(points)
        return cls(path.algebra, path.segments, path.closed, "samples", smooth,
                   {"points": [p.coords for p in points], "smooth": bool(smooth)})

    # -- operations -------------------------------------------------------------

    def require_smooth(self) -> None:
        if self.kind == "samples" and not self.smooth:
            raise NotSmooth("sampled path lacks the piecewise-C1 flag")

    def translate(self, w: Element) -> "Path":
        return self.map_linear(lambda c: c + w.coords, self.algebra)

    def pushforward(self, phi: Morphism) -> "Path":
        return self.map_linear(lambda c: phi.matrix @ c, phi.target)

    def map_linear(self, fn: Callable[[np.ndarray], np.ndarray], algebra: Algebra) -> "Path":
        segs = []
        for seg in self.segments:
            if isinstance(seg, CircleSegment):
                zero = np.zeros_like(seg.center)
                segs.append(CircleSegment(algebra, fn(seg.center), seg.radius, seg.turns,
                                          fn(seg.direction) - fn(zero)))
            else:
                segs.append(LineSegment(algebra, fn(seg.start), fn(seg.end)))
        return Path(algebra, tuple(segs), self.closed, self.kind, self.smooth)

    def reversed(self) -> "Path":
        segs = []
        for seg in reversed(self.segments):
            if isinstance(seg, CircleSegment):
                segs.append(CircleSegment(seg.algebra, seg.center, seg.radius,
                                          -seg.turns, seg.direction))
            else:
                segs.append(LineSegment(seg.algebra, seg.end, seg.start))
        return Path(self.algebra, tuple(segs), self.closed, self.kind, self.smooth)


@dataclass(frozen=True)
class Cycle:
    """Formal integer combination of closed paths."""

    terms: tuple[tuple[int, Path], ...]

    def __post_init__(self):
        for mult, path in self.terms:
            if not isinstance(mult, int):
                raise ValueError("multiplicities must be integers")
            if not path.closed:
                raise ValueError("every path in a cycle must be closed")

    @property
    def algebra(self) -> Algebra:
        return self.terms[0][1].algebra


def as_cycle(obj) -> Cycle:
    if isinstance(obj, Cycle):
        return obj
    if isinstance(obj, Path):
        return Cycle(((1, obj),))
    raise TypeError("expected a Path or a Cycle")


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _gl_panel(vec_fn, a: float, b: float) -> np.ndarray:
    ts = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
    vals = vec_fn(ts)
    return 0.5 * (b - a) * (vals @ _GL_WEIGHTS)


def _adaptive(vec_fn, a: float, b: float, tol: float, depth: int) -> np.ndarray:
    whole = _gl_panel(vec_fn, a, b)
    return _refine(vec_fn, a, b, whole, tol, depth)


def _refine(vec_fn, a, b, whole, tol, depth) -> np.ndarray:
    mid = 0.5 * (a + b)
    left = _gl_panel(vec_fn, a, mid)
    right = _gl_panel(vec_fn, mid, b)
    if np.abs(left + right - whole).max() < tol:
        return left + right
    if depth >= QUAD_MAX_DEPTH:
        raise QuadratureNoConvergence(f"interval halving exhausted depth {QUAD_MAX_DEPTH}")
    return (_refine(vec_fn, a, mid, left, tol / 2, depth + 1)
            + _refine(vec_fn, mid, b, right, tol / 2, depth + 1))


def length(path: Path, phi: Morphism, norm_kind: str = "frobenius",
           tol: float | None = None) -> float:
    """Arc length of the pushed path: integral of ||phi(gamma'(t))||."""
    path.require_smooth()
    tol = quad_tolerance(tol)
    tgt = phi.target
    total = 0.0
    for seg in path.segments:
        def speed(ts, seg=seg):
            vel = phi.matrix @ seg.velocities(ts)
            return np.array([[tgt.element(vel[:, i]).norm(norm_kind)
                              for i in range(len(ts))]])
        total += float(_adaptive(speed, 0.0, 1.0, tol, 0)[0].real)
    return total


def integrate(f, path: Path, phi: Morphism, tol: float | None = None) -> Element:
    """Contour integral of f(Z) dZ, i.e. integral of f(gamma(t)) phi(gamma'(t)) dt.

    Composite Gauss-Legendre (order 16) with interval halving to the given
    per-coordinate absolute tolerance.  The submultiplicative estimate
    ||integral|| <= sup ||f|| * L is verified on the computed result.
    """
    path.require_smooth()
    tol = quad_tolerance(tol)
    src, tgt = path.algebra, phi.target
    m = tgt.dim
    sup_f = 0.0

    total = np.zeros(m, dtype=complex)
    arc = 0.0
    for seg in path.segments:
        def integrand(ts, seg=seg):
            nonlocal sup_f
            pts = seg.points(ts)
            vel = phi.matrix @ seg.velocities(ts)
            out = np.empty((m + 1, len(ts)), dtype=complex)
            for i in range(len(ts)):
                fval = f(src.element(pts[:, i]))
                sup_f = max(sup_f, fval.norm("frobenius"))
                speed_el = tgt.element(vel[:, i])
                out[:m, i] = tgt.mul_coords(fval.coords, vel[:, i])
                out[m, i] = speed_el.norm("frobenius")
            return out

        chunk = _adaptive(integrand, 0.0, 1.0, tol, 0)
        total += chunk[:m]
        arc += float(chunk[m].real)

    result = tgt.element(total)
    bound = sup_f * arc
    if result.norm("frobenius") > bound * (1 + 1e-6) + 1e-9:
        raise RuntimeError(
            f"quadrature result violates the norm estimate "
            f"({result.norm('frobenius'):.3e} > {bound:.3e}); integrand is likely "
            "discontinuous on the path")
    return result


def integrate_cycle(f, cycle, phi: Morphism, tol: float | None = None) -> Element:
    cyc = as_cycle(cycle)
    out = phi.target.zero()
    for mult, path in cyc.terms:
        out = out + mult * integrate(f, path, phi, tol)
    return out


# -- batched coordinate kernels (vectorized over quadrature nodes) -----------

def _batch_mul(algebra: Algebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise algebra product of two (m, T) coordinate stacks."""
    return np.einsum("jki,jt,kt->it", algebra.alpha, a, b)


def _batch_regular(algebra: Algebra, x: np.ndarray) -> np.ndarray:
    """(m, T) coordinates -> (T, m, m) regular representations."""
    return np.einsum("jt,jki->tik", x, algebra.alpha)


def _batch_inv(algebra: Algebra, w: np.ndarray) -> np.ndarray:
    """Inverses of a (m, T) coordinate stack; same singularity rule as invert()."""
    from .algebra import SINGULAR_RATIO
    lams = _batch_regular(algebra, w)
    svals = np.linalg.svd(lams, compute_uv=False)
    if np.any(svals[:, 0] == 0) or np.any(svals[:, -1] < SINGULAR_RATIO * svals[:, 0]):
        raise NotAUnit("kernel hit a non-invertible value on the path")
    rhs = np.broadcast_to(algebra.unit_coords[:, None], (w.shape[1], algebra.dim, 1))
    return np.linalg.solve(lams, rhs)[:, :, 0].T


def _cauchy_kernel_integral(cycle: Cycle, Z0: Element, phi: Morphism, power: int = 1,
                            f=None, tol: float | None = None) -> Element:
    """Integral of f(W) phi(W - Z0)^(-power) dW over the cycle (f optional).

    Vectorized over the quadrature nodes; subject to the same norm-estimate
    post-check as the generic path integral.
    """
    tol = quad_tolerance(tol)
    tgt = phi.target
    m = tgt.dim
    total = np.zeros(m, dtype=complex)
    sup_f = 0.0
    arc = 0.0

    for mult, path in cycle.terms:
        path.require_smooth()
        src = path.algebra
        for seg in path.segments:
            def vec(ts, seg=seg):
                nonlocal sup_f
                pts = seg.points(ts)
                vel = phi.matrix @ seg.velocities(ts)
                w = phi.matrix @ (pts - Z0.coords[:, None])
                inv = _batch_inv(tgt, w)
                kernel = inv
                for _ in range(power - 1):
                    kernel = _batch_mul(tgt, kernel, inv)
                if f is not None:
                    fv = np.column_stack(
                        [f(src.element(pts[:, i])).coords for i in range(len(ts))])
                    kernel = _batch_mul(tgt, fv, kernel)
                sup_f = max(sup_f, float(
                    np.linalg.norm(_batch_regular(tgt, kernel), axis=(1, 2)).max()))
                out = np.empty((m + 1, len(ts)), dtype=complex)
                out[:m] = _batch_mul(tgt, kernel, vel)
                out[m] = np.linalg.norm(_batch_regular(tgt, vel), axis=(1, 2))
                return out

            chunk = _adaptive(vec, 0.0, 1.0, tol, 0)
            total += mult * chunk[:m]
            arc += abs(mult) * float(chunk[m].real)

    result = tgt.element(total)
    if result.norm("frobenius") > sup_f * arc * (1 + 1e-6) + 1e-9:
        raise RuntimeError("kernel quadrature violates the norm estimate")
    return result


# ---------------------------------------------------------------------------
# admissibility and the index
# ---------------------------------------------------------------------------

def _context(phi: Morphism, dec_source=None, dec_target=None, fact=None, seed: int = 0):
    dec_source = dec_source or artin_decompose(phi.source, seed=seed)
    dec_target = dec_target or artin_decompose(phi.target, seed=seed)
    fact = fact or factor(phi, dec_source, dec_target)
    return dec_source, dec_target, fact


@dataclass(frozen=True)
class AdmissibilityReport:
    """Clearances of the point's spectral parts from the projected supports."""

    admissible: bool
    active_components: tuple[int, ...]
    clearances: tuple[float, ...]
    thresholds: tuple[float, ...]


def admissibility(cycle, Z0: Element, phi: Morphism,
                  dec_source: Decomposition | None = None,
                  dec_target: Decomposition | None = None,
                  fact: Factorization | None = None, seed: int = 0) -> AdmissibilityReport:
    """Distance of each active spectral projection of Z0 to the projected cycle.

    Sampling density follows the path-parameter resolution 1e-4; a clearance
    is accepted only when it exceeds twice the local sample spacing, so
    points on (or numerically indistinguishable from) the projected support
    are forbidden.
    """
    cyc = as_cycle(cycle)
    dec_source, _, fact = _context(phi, dec_source, dec_target, fact, seed)
    active = fact.active_source_components
    total_points = int(round(1.0 / ADMISSIBILITY_RESOLUTION)) + 1

    clearances = []
    thresholds = []
    for k in active:
        row = dec_source.spectral_rows[k]
        w0 = complex(row @ Z0.coords)
        clearance = math.inf
        spacing = 0.0
        for _, path in cyc.terms:
            # The parameter resolution is spread over the whole path.
            per_seg = max(32, total_points // max(len(path.segments), 1))
            ts = np.linspace(0.0, 1.0, per_seg)
            for seg in path.segments:
                w = row @ seg.points(ts)
                clearance = min(clearance, float(np.abs(w - w0).min()))
                if len(w) > 1:
                    spacing = max(spacing, float(np.abs(np.diff(w)).max()))
        clearances.append(clearance)
        thresholds.append(2.0 * spacing)
    ok = all(c > t for c, t in zip(clearances, thresholds))
    return AdmissibilityReport(ok, active, tuple(clearances), tuple(thresholds))


@dataclass(frozen=True)
class SpectralIndex:
    """Integer winding data per target component, assembled in the target."""

    values: tuple[int, ...]
    element: Element


def _winding(path: Path, row: np.ndarray, w0: complex) -> int:
    """Winding number of the projected loop by adaptive angle summation."""
    total = 0.0
    budget = WINDING_MAX_POINTS
    for seg in path.segments:
        samples = seg.suggested_samples
        ts = np.linspace(0.0, 1.0, samples + 1)
        stack = [(ts[i], ts[i + 1]) for i in range(samples)]
        vals = {t: complex(row @ seg.points(np.array([t]))[:, 0]) - w0 for t in ts}

        while stack:
            t0, t1 = stack.pop()
            v0, v1 = vals[t0], vals[t1]
            inc = np.angle(v1 / v0) if v0 != 0 else math.nan
            if not math.isfinite(inc) or abs(inc) >= math.pi / 2:
                if budget <= 0:
                    raise WindingUnresolved("densification budget exhausted")
                tm = 0.5 * (t0 + t1)
                if t1 - t0 < 1e-14:
                    raise WindingUnresolved("projected point sits on the curve")
                vals[tm] = complex(row @ seg.points(np.array([tm]))[:, 0]) - w0
                stack.append((t0, tm))
                stack.append((tm, t1))
                budget -= 1
            else:
                total += inc
    winding = total / (2 * math.pi)
    nearest = round(winding)
    if abs(winding - nearest) > WINDING_INTEGER_TOL:
        raise WindingUnresolved(f"angle sum {winding} is not near an integer")
    return int(nearest)


def index_spectral(cycle, Z0: Element, phi: Morphism,
                   dec_source: Decomposition | None = None,
                   dec_target: Decomposition | None = None,
                   fact: Factorization | None = None, seed: int = 0) -> SpectralIndex:
    """Index as classical winding numbers of the spectral projections.

    Exact integers; the value for target component ell is the winding of
    sigma_{tau(ell)} of the cycle around sigma_{tau(ell)}(Z0).
    """
    cyc = as_cycle(cycle)
    dec_source, dec_target, fact = _context(phi, dec_source, dec_target, fact, seed)
    report = admissibility(cyc, Z0, phi, dec_source, dec_target, fact, seed)
    if not report.admissible:
        raise NotAdmissible(f"point is in the forbidden zone: {report}")

    values = []
    element = phi.target.zero()
    for ell in range(dec_target.count):
        k = fact.tau[ell]
        row = dec_source.spectral_rows[k]
        w0 = complex(row @ Z0.coords)
        wind = 0
        for mult, path in cyc.terms:
            wind += mult * _winding(path, row, w0)
        values.append(wind)
        element = element + wind * dec_target.idempotents[ell]
    return SpectralIndex(tuple(values), element)


def index_quadrature(cycle, Z0: Element, phi: Morphism,
                     tol: float | None = None) -> Element:
    """(1 / 2 pi i) times the integral of dZ / phi(Z - Z0) over the cycle."""
    out = _cauchy_kernel_integral(as_cycle(cycle), Z0, phi, power=1, tol=tol)
    return out * (1.0 / (2j * math.pi))


# ---------------------------------------------------------------------------
# Cauchy integral formulas
# ---------------------------------------------------------------------------

def _spot_check_holomorphy(f, cycle: Cycle, phi: Morphism) -> None:
    path = cycle.terms[0][1]
    seg = path.segments[0]
    src = path.algebra
    for t in (0.17, 0.43, 0.81):
        Z = src.element(seg.points(np.array([t]))[:, 0])
        sampler = f if isinstance(f, FunctionSampler) else FunctionSampler(f, src, phi.target)
        res = gcru_residual(sampler, phi, Z)
        if res > 1e-2:
            warnings.warn(f"integrand looks non-holomorphic near the path "
                          f"(residual {res:.2e}); Cauchy formulas may not apply",
                          stacklevel=3)
            return


def cif_value(f, cycle, Z0: Element, phi: Morphism, tol: float | None = None,
              solve: bool = False, spot_check: bool = True,
              seed: int = 0) -> Element:
    """(1 / 2 pi i) integral of f(Z) / phi(Z - Z0) dZ over the cycle.

    For holomorphic f this equals f(Z0) * Ind(cycle, Z0); with ``solve`` the
    index is computed spectrally and divided out (IndexNotInvertible when a
    component index is zero), returning f(Z0) itself.
    """
    cyc = as_cycle(cycle)
    if spot_check:
        _spot_check_holomorphy(f, cyc, phi)

    out = _cauchy_kernel_integral(cyc, Z0, phi, power=1, f=f, tol=tol)
    out = out * (1.0 / (2j * math.pi))
    if not solve:
        return out
    idx = index_spectral(cyc, Z0, phi, seed=seed)
    if any(v == 0 for v in idx.values):
        raise IndexNotInvertible(f"index {idx.values} has a zero component")
    return out * idx.element.invert()


def cif_derivative(f, cycle, Z0: Element, k: int, phi: Morphism,
                   tol: float | None = None, solve: bool = False,
                   spot_check: bool = True, seed: int = 0) -> Element:
    """(k! / 2 pi i) integral of f(W) / phi(W - Z0)^(k+1) dW; k = 0 is cif_value."""
    cyc = as_cycle(cycle)
    if spot_check:
        _spot_check_holomorphy(f, cyc, phi)

    out = _cauchy_kernel_integral(cyc, Z0, phi, power=k + 1, f=f, tol=tol)
    out = out * (math.factorial(k) / (2j * math.pi))
    if not solve:
        return out
    idx = index_spectral(cyc, Z0, phi, seed=seed)
    if any(v == 0 for v in idx.values):
        raise IndexNotInvertible(f"index {idx.values} has a zero component")
    return out * idx.element.invert()


def _scalar_circle_at(cycle: Cycle, Z0: Element) -> CircleSegment | None:
    """The unique scalar unit-direction circle centered at Z0, if that is the cycle."""
    if len(cycle.terms) != 1 or cycle.terms[0][0] != 1:
        return None
    path = cycle.terms[0][1]
    if len(path.segments) != 1 or not isinstance(path.segments[0], CircleSegment):
        return None
    seg = path.segments[0]
    if seg.turns != 1:
        return None
    if np.abs(seg.center - Z0.coords).max() > 1e-12:
        return None
    unit = path.algebra.unit_coords
    if np.abs(seg.direction - unit).max() > 1e-12:
        return None
    return seg


def taylor_from_contour(f, cycle, Z0: Element, K: int, phi: Morphism,
                        tol: float | None = None, seed: int = 0) -> PowerSeries:
    """Taylor coefficients B_k = f^(k)(Z0)/k! recovered from contour data.

    Requires an invertible index (all spectral windings nonzero); for scalar
    circles centered at Z0 the classical derivative bound
    ||f^(k)(Z0)|| <= k!/r^k sup ||f|| is verified on the result.
    """
    cyc = as_cycle(cycle)
    idx = index_spectral(cyc, Z0, phi, seed=seed)
    if any(v == 0 for v in idx.values):
        raise IndexNotInvertible(f"index {idx.values} has a zero component")
    inv_idx = idx.element.invert()

    coeffs = []
    for k in range(K + 1):
        raw = cif_derivative(f, cyc, Z0, k, phi, tol, spot_check=(k == 0))
        coeffs.append(raw * inv_idx * (1.0 / math.factorial(k)))

    circle = _scalar_circle_at(cyc, Z0)
    if circle is not None:
        ts = np.linspace(0.0, 1.0, 257)
        sup = max(f(cyc.terms[0][1].algebra.element(c)).norm("operator")
                  for c in circle.points(ts).T)
        for k, b in enumerate(coeffs):
            lhs = (math.factorial(k) * b).norm("operator")
            bound = math.factorial(k) * sup / circle.radius ** k
            if lhs > bound * (1 + 1e-6) + 1e-9:
                raise RuntimeError(
                    f"derivative bound violated at order {k}: {lhs:.3e} > {bound:.3e}")
    return PowerSeries.polynomial(phi, Z0, coeffs)


def goursat_residual(f, triangle: tuple[Element, Element, Element], phi: Morphism,
                     tol: float | None = None) -> float:
    """Norm of the integral of f over a triangle boundary; ~0 for holomorphic f."""
    a, b, c = triangle
    path = Path.polyline([a, b, c, a])
    return integrate(f, path, phi, tol).norm("frobenius")


@dataclass(frozen=True)
class HomologicalReport:
    """Residuals of the cycle-level reproducing formula at a point."""

    index: SpectralIndex
    cif_residual: float
    integral_norm: float


def homological_cif_check(f, cycle, Z0: Element, phi: Morphism,
                          tol: float | None = None, seed: int = 0) -> HomologicalReport:
    """Check f(Z0) * Ind = (1/2 pi i) int f/phi(W - Z0) dW over a 1-cycle.

    The caller asserts that the spectral projections of the cycle bound in
    the projected domain.  Also reports || int_Gamma f dW ||, which vanishes
    for spectrally null-homologous cycles.
    """
    cyc = as_cycle(cycle)
    idx = index_spectral(cyc, Z0, phi, seed=seed)
    rhs = cif_value(f, cyc, Z0, phi, tol, spot_check=False)
    lhs = f(Z0) * idx.element
    residual = (lhs - rhs).norm("frobenius")
    plain = integrate_cycle(f, cyc, phi, tol).norm("frobenius")
    return HomologicalReport(idx, residual, plain)

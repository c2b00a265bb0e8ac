"""Nilradical, orthogonal idempotents, local factors, spectra, and profiles.

The decomposition pipeline:

1. nilradical = kernel of the trace Gram form G_{jk} = tr(lambda(a_j a_k));
2. in the semisimple quotient, diagonalize a generic element to obtain the
   complete system of orthogonal idempotents;
3. lift each idempotent along the nilradical with the refinement
   e <- 3e^2 - 2e^3 (quadratic convergence, pure algebra operations);
4. derive component bases, maximal-ideal bases and the spectral functionals
   sigma_k from the lifted idempotents.

All randomness is behind an explicit seed so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Element
from .errors import ClusteringAmbiguous, NotAUnit, NotNilpotent

NIL_RANK_TOL = 1e-10
CLUSTER_TOL = 1e-8
IDEMPOTENT_TOL = 1e-12
MAX_RETRIES = 3


def _null_space(mat: np.ndarray, tol: float = NIL_RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``mat``."""
    if mat.size == 0:
        return np.zeros((mat.shape[1], 0), dtype=complex)
    _, s, vh = np.linalg.svd(mat)
    cutoff = tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def _column_space(mat: np.ndarray, tol: float = NIL_RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical column space of ``mat``."""
    if mat.size == 0 or mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    cutoff = tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return u[:, :rank]


def nilradical(algebra: Algebra) -> np.ndarray:
    """Coordinate basis (columns) of the ideal of nilpotent elements.

    Kernel of the trace Gram form of the regular representation; every
    returned vector is verified nilpotent (x^n ~ 0).
    """
    n = algebra.dim
    lams = algebra.tensor.basis_matrices()
    gram = np.einsum("jab,kba->jk", lams, lams)
    basis = _null_space(gram)
    for col in basis.T:
        x = algebra.element(col)
        power = x
        for _ in range(n - 1):
            power = power * x
        if power.coord_norm() > 1e-10:
            raise NotNilpotent("trace-form kernel vector failed the nilpotency check")
    return basis


@dataclass(frozen=True)
class Decomposition:
    """Complete system of orthogonal idempotents and its derived data.

    ``spectral_rows[k]`` is the row of the algebra map sigma_k : C^n -> C,
    so ``sigma_k(z) = spectral_rows[k] @ z.coords``.
    """

    algebra: Algebra
    idempotents: tuple[Element, ...]
    component_bases: tuple[np.ndarray, ...]
    maximal_ideal_bases: tuple[np.ndarray, ...]
    spectral_rows: np.ndarray
    nilradical_basis: np.ndarray

    @property
    def count(self) -> int:
        return len(self.idempotents)

    @property
    def component_dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.component_bases)

    def sigma(self, z: Element, k: int) -> complex:
        return complex(self.spectral_rows[k] @ z.coords)

    def spectrum(self, z: Element) -> np.ndarray:
        return self.spectral_rows @ z.coords

    def project(self, z: Element, k: int) -> Element:
        """pr_k(z) = z * I_k, kept inside the ambient coordinates."""
        return z * self.idempotents[k]

    def nilpotent_part(self, z: Element, k: int) -> Element:
        """pr_k(z) minus its scalar part; lives in the k-th maximal ideal."""
        return self.project(z, k) - self.sigma(z, k) * self.idempotents[k]

    def component_coords(self, z: Element, k: int) -> np.ndarray:
        """Coordinates of pr_k(z) in the k-th component basis."""
        basis = self.component_bases[k]
        return basis.conj().T @ self.project(z, k).coords

    def from_component_coords(self, coords: np.ndarray, k: int) -> Element:
        return self.algebra.element(self.component_bases[k] @ coords)

    def direct_sum_norm(self, z: Element) -> float:
        """max_k of the operator norm of the multiplication action on A_k."""
        lam = z.regular_matrix()
        best = 0.0
        for basis in self.component_bases:
            action = basis.conj().T @ lam @ basis
            best = max(best, float(np.linalg.norm(action, 2)))
        return best


def _quotient_setup(algebra: Algebra, nil_basis: np.ndarray):
    """Complement basis of the nilradical and the projection solving along it."""
    n = algebra.dim
    complement = _null_space(nil_basis.conj().T) if nil_basis.shape[1] else np.eye(n, dtype=complex)
    mixed = np.column_stack([complement, nil_basis])
    mixed_inv = np.linalg.inv(mixed)
    m = complement.shape[1]

    def project(coords: np.ndarray) -> np.ndarray:
        return (mixed_inv @ coords)[:m]

    return complement, project


def artin_decompose(algebra: Algebra, seed: int = 0) -> Decomposition:
    """Split the algebra into its local factors.

    The component count M is the number of distinct eigenvalues of the
    generic element's multiplication matrix on the semisimple quotient;
    a clustering closer than 1e-8 triggers up to three seeded retries
    before :class:`ClusteringAmbiguous` is raised.
    """
    n = algebra.dim
    nil_basis = nilradical(algebra)
    complement, project = _quotient_setup(algebra, nil_basis)
    m = complement.shape[1]

    if m == 1:
        # Local algebra: the only idempotent is 1.
        idempotents = (algebra.unit(),)
        return _finish(algebra, nil_basis, idempotents)

    rng = np.random.default_rng(seed)
    last_gap = math.inf
    for _ in range(MAX_RETRIES):
        g = algebra.random_element(rng)
        # Multiplication by g on the quotient.
        action = np.column_stack(
            [project(algebra.mul_coords(g.coords, complement[:, j])) for j in range(m)])
        evals, evecs = np.linalg.eig(action)
        gaps = np.abs(evals[:, None] - evals[None, :])
        gap = gaps[~np.eye(m, dtype=bool)].min() if m > 1 else math.inf
        last_gap = min(last_gap, gap)
        if gap <= CLUSTER_TOL:
            continue
        idempotents = []
        for k in range(m):
            v = evecs[:, k]
            # The eigenspace is a line through the quotient idempotent: v^2 = c v.
            vv = project(algebra.mul_coords(complement @ v, complement @ v))
            c = (v.conj() @ vv) / (v.conj() @ v)
            e_bar = v / c
            e = algebra.element(complement @ e_bar)
            idempotents.append(_lift_idempotent(e))
        return _finish(algebra, nil_basis, tuple(idempotents))
    raise ClusteringAmbiguous(
        f"generic-element eigenvalues stayed within {last_gap:.3e} after {MAX_RETRIES} retries")


def _lift_idempotent(e: Element, max_iters: int = 80) -> Element:
    """Refine e <- 3e^2 - 2e^3 until ||e^2 - e|| < 1e-12.

    Terminates because the defect e^2 - e lies in the nilpotent ideal.
    """
    for _ in range(max_iters):
        e2 = e * e
        if (e2 - e).coord_norm() < IDEMPOTENT_TOL:
            return e
        e = 3 * e2 - 2 * (e2 * e)
    raise ClusteringAmbiguous("idempotent refinement failed to converge")


def _finish(algebra: Algebra, nil_basis: np.ndarray,
            idempotents: tuple[Element, ...]) -> Decomposition:
    component_bases = []
    ideal_bases = []
    rows = []
    for e in idempotents:
        lam_e = e.regular_matrix()
        comp = _column_space(lam_e)
        if nil_basis.shape[1]:
            ideal = _column_space(lam_e @ nil_basis)
        else:
            ideal = np.zeros((algebra.dim, 0), dtype=complex)
        # sigma(a_j): decompose a_j * e = sigma(a_j) e + (ideal part).
        frame = np.column_stack([e.coords.reshape(-1, 1), ideal])
        sol, *_ = np.linalg.lstsq(frame, lam_e, rcond=None)
        rows.append(sol[0])
        component_bases.append(comp)
        ideal_bases.append(ideal)

    order = _component_order(rows, component_bases)
    idempotents = tuple(idempotents[k] for k in order)
    component_bases = tuple(component_bases[k] for k in order)
    ideal_bases = tuple(ideal_bases[k] for k in order)
    spectral_rows = np.array([rows[k] for k in order])
    return Decomposition(algebra, idempotents, component_bases, ideal_bases,
                         spectral_rows, nil_basis)


def _component_order(rows, bases) -> list[int]:
    """Deterministic, seed-independent component ordering."""
    def key(k):
        row = np.round(rows[k], 8)
        return (-bases[k].shape[1], tuple(zip(row.real.tolist(), row.imag.tolist())))
    return sorted(range(len(rows)), key=key)


def spectrum(z: Element, dec: Decomposition) -> np.ndarray:
    """(sigma_1(z), ..., sigma_M(z)); as a multiset these are the eigenvalues
    of lambda(z) with the component dimensions as multiplicities."""
    return dec.spectrum(z)


@dataclass(frozen=True)
class ComponentProfile:
    height: int
    widths: tuple[int, ...]
    filtering_basis: np.ndarray  # columns, deepest ideal power first, unit last


@dataclass(frozen=True)
class Profile:
    components: tuple[ComponentProfile, ...]

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(c.height for c in self.components)


def profile(algebra: Algebra, dec: Decomposition) -> Profile:
    """Heights, widths, and a filtering basis for every local factor.

    The height nu is the smallest power annihilating the maximal ideal;
    widths are d_i = dim m^i - dim m^(i+1).  The filtering basis columns are
    ordered by decreasing ideal power (vectors of m^(nu-1) first, the
    component unit last).
    """
    comps = []
    for k in range(dec.count):
        ideal = dec.maximal_ideal_bases[k]
        layers = [ideal]
        while layers[-1].shape[1]:
            prev = layers[-1]
            products = np.column_stack(
                [algebra.mul_coords(ideal[:, a], prev[:, b])
                 for a in range(ideal.shape[1]) for b in range(prev.shape[1])]
            ) if prev.shape[1] else prev
            layers.append(_column_space(products))
        height = len(layers)  # m^height = 0, m^(height-1) != 0
        dims = [layer.shape[1] for layer in layers]
        widths = tuple(dims[i] - dims[i + 1] for i in range(height - 1))

        # Extend a basis of m^(i+1) to m^i, walking from the deepest layer out,
        # so the columns come out in decreasing ideal-power order (unit last).
        chosen: list[np.ndarray] = []
        for i in range(height - 2, -1, -1):
            layer = layers[i]
            for j in range(layer.shape[1]):
                v = layer[:, j]
                if chosen:
                    frame = np.column_stack(chosen)
                    v = v - frame @ (frame.conj().T @ v)
                if np.linalg.norm(v) > NIL_RANK_TOL:
                    chosen.append(v / np.linalg.norm(v))
        chosen.append(dec.idempotents[k].coords)
        comps.append(ComponentProfile(height, widths, np.column_stack(chosen)))
    return Profile(tuple(comps))


def invert_via_series(z: Element, dec: Decomposition) -> Element:
    """Inverse through the terminating geometric series on each local factor.

    Per component, z = s (1 + X/s) with s = sigma_k(z) and nilpotent X, so
    z^{-1} = s^{-1} sum_{j<nu} (-X/s)^j.  Must agree with the linear-solve
    inverse to 1e-10 (tested invariant).
    """
    algebra = dec.algebra
    out = algebra.zero()
    for k in range(dec.count):
        s = dec.sigma(z, k)
        if abs(s) < 1e-14:
            raise NotAUnit(f"component {k} has zero spectral part")
        x = dec.nilpotent_part(z, k)
        term = dec.idempotents[k]  # (-X/s)^0 restricted to the component
        acc = algebra.zero()
        for _ in range(algebra.dim):
            acc = acc + term
            term = term * x * (-1.0 / s)
            if term.coord_norm() < 1e-16:
                break
        out = out + (1.0 / s) * acc
    return out


def unit_group_coords(u: Element, dec: Decomposition) -> list[tuple[complex, Element]]:
    """Split a unit into (scalar, nilpotent-logarithm) pairs per local factor.

    Per component, u = s (1 + x/s) with s = sigma_k(u); the second entry is
    log(1 + x/s) computed by the terminating alternating series.  The inverse
    map is :func:`unit_group_exp`.
    """
    algebra = dec.algebra
    parts = []
    for k in range(dec.count):
        s = dec.sigma(u, k)
        if abs(s) < 1e-14:
            raise NotAUnit(f"component {k} has zero spectral part")
        y = dec.nilpotent_part(u, k) * (1.0 / s)  # x/s, nilpotent
        log_term = algebra.zero()
        power = y
        for j in range(1, algebra.dim + 1):
            log_term = log_term + ((-1) ** (j + 1) / j) * power
            power = power * y
            if power.coord_norm() < 1e-16:
                break
        parts.append((s, log_term))
    return parts


def unit_group_exp(parts: list[tuple[complex, Element]], dec: Decomposition) -> Element:
    """Reconstruct the unit from its (scalar, logarithm) pairs."""
    algebra = dec.algebra
    out = algebra.zero()
    for k, (s, log_term) in enumerate(parts):
        exp_term = dec.idempotents[k]
        power = dec.idempotents[k]
        fact = 1.0
        for j in range(1, algebra.dim + 1):
            power = power * log_term
            fact *= j
            exp_term = exp_term + (1.0 / fact) * power
            if power.coord_norm() / fact < 1e-16:
                break
        out = out + s * exp_term
    return out

"""Finite-dimensional commutative associative unital C-algebras.

An algebra is defined on C^n by its structure constants alpha^i_{jk},
stored as ``alpha[j, k, i]`` so that the product of basis vectors is

    a_j * a_k = sum_i alpha[j, k, i] * a_i.

:func:`build_algebra` validates commutativity and associativity of the
tensor and solves the unit-law linear system for the coordinates of 1.
Elements are immutable coordinate vectors supporting ring arithmetic, the
regular representation, inversion, norms and the spectral radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlgebraMismatch,
    DecompositionRequired,
    NoUnit,
    NotAssociative,
    NotAUnit,
    NotCommutative,
)

# Absolute tolerance for the defining identities on user-provided tensors.
IDENTITY_TOL = 1e-12
# Residual bound for the least-squares unit solve.
UNIT_RESIDUAL_TOL = 1e-10
# Singular-value ratio below which the regular representation counts as singular.
SINGULAR_RATIO = 1e-12

NORM_KINDS = ("frobenius", "operator", "direct-sum")


def _as_complex_vector(coords: Iterable, dim: int | None = None) -> np.ndarray:
    v = np.asarray(coords, dtype=complex).reshape(-1)
    if dim is not None and v.shape != (dim,):
        raise ValueError(f"expected a coordinate vector of length {dim}, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class StructureTensor:
    """The cube of structure constants defining an algebra on C^n.

    ``alpha[j, k, i]`` is the coefficient of the i-th basis vector in the
    product a_j * a_k.
    """

    dim: int
    alpha: np.ndarray
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        alpha = np.asarray(self.alpha, dtype=complex)
        if alpha.shape != (self.dim,) * 3:
            raise ValueError(f"alpha must have shape {(self.dim,) * 3}, got {alpha.shape}")
        alpha = alpha.copy()
        alpha.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)
        labels = tuple(self.basis_labels) or tuple(f"a{i + 1}" for i in range(self.dim))
        if len(labels) != self.dim:
            raise ValueError("need one basis label per dimension")
        object.__setattr__(self, "basis_labels", labels)

    def check_commutative(self, tol: float = IDENTITY_TOL) -> None:
        gap = np.abs(self.alpha - self.alpha.transpose(1, 0, 2))
        if gap.max() > tol:
            j, k, i = np.unravel_index(int(np.argmax(gap)), gap.shape)
            raise NotCommutative(
                f"alpha^{i + 1}_{{{j + 1},{k + 1}}} != alpha^{i + 1}_{{{k + 1},{j + 1}}} "
                f"(difference {gap[j, k, i]:.3e})"
            )

    def check_associative(self, tol: float = IDENTITY_TOL) -> None:
        # sum_r alpha^r_{jk} alpha^i_{rl}  vs  sum_r alpha^r_{kl} alpha^i_{jr}
        lhs = np.einsum("jkr,rli->jkli", self.alpha, self.alpha)
        rhs = np.einsum("klr,jri->jkli", self.alpha, self.alpha)
        gap = np.abs(lhs - rhs)
        if gap.max() > tol:
            j, k, l, i = np.unravel_index(int(np.argmax(gap)), gap.shape)
            raise NotAssociative(
                f"associativity fails at (i,j,k,l)=({i + 1},{j + 1},{k + 1},{l + 1}) "
                f"(difference {gap[j, k, l, i]:.3e})"
            )

    def basis_matrices(self) -> np.ndarray:
        """Regular representations lambda(a_j), stacked as shape (n, n, n)."""
        # lambda(a_j)[i, k] = alpha^i_{jk}
        return self.alpha.transpose(0, 2, 1)


class Algebra:
    """A validated algebra: tensor + unit coordinates + preferred norm kind."""

    def __init__(self, tensor: StructureTensor, unit_coords: np.ndarray,
                 chosen_norm: str = "frobenius"):
        if chosen_norm not in NORM_KINDS:
            raise ValueError(f"chosen_norm must be one of {NORM_KINDS}")
        self.tensor = tensor
        self.unit_coords = _as_complex_vector(unit_coords, tensor.dim)
        self.unit_coords.flags.writeable = False
        self.chosen_norm = chosen_norm

    # -- basic data ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.tensor.dim

    @property
    def alpha(self) -> np.ndarray:
        return self.tensor.alpha

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return self.tensor.basis_labels

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={list(self.basis_labels)})"

    def compatible(self, other: "Algebra") -> bool:
        if self is other:
            return True
        return self.dim == other.dim and np.array_equal(self.alpha, other.alpha)

    # -- element constructors -------------------------------------------------

    def element(self, coords: Iterable) -> "Element":
        return Element(self, _as_complex_vector(coords, self.dim))

    def zero(self) -> "Element":
        return self.element(np.zeros(self.dim))

    def unit(self) -> "Element":
        return Element(self, self.unit_coords.copy())

    def scalar(self, z: complex) -> "Element":
        return Element(self, complex(z) * self.unit_coords)

    def basis_element(self, i: int) -> "Element":
        coords = np.zeros(self.dim, dtype=complex)
        coords[i] = 1.0
        return Element(self, coords)

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> "Element":
        coords = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return self.element(scale * coords)

    # -- raw coordinate operations (used by Element and the other modules) ----

    def mul_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("jki,j,k->i", self.alpha, a, b)

    def regular_matrix(self, coords: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by the element: lambda(a)[i,k] = sum_j a^j alpha^i_{jk}."""
        return np.einsum("j,jki->ik", coords, self.alpha)


def build_algebra(tensor: StructureTensor, chosen_norm: str = "frobenius") -> Algebra:
    """Validate a structure tensor and solve for the unit coordinates.

    Raises :class:`NotCommutative` / :class:`NotAssociative` naming the first
    violated identity, or :class:`NoUnit` when the stacked unit-law system
    ``sum_r eps^r alpha^i_{rk} = sum_r eps^r alpha^i_{kr} = delta^i_k`` has
    least-squares residual above ``1e-10``.
    """
    tensor.check_commutative()
    tensor.check_associative()

    n = tensor.dim
    # Rows indexed by (i, k) for each of the two sides of the unit law.
    left = tensor.alpha.transpose(2, 1, 0).reshape(n * n, n)    # [ (i,k), r ] = alpha^i_{rk}
    right = tensor.alpha.transpose(2, 0, 1).reshape(n * n, n)   # [ (i,k), r ] = alpha^i_{kr}
    system = np.vstack([left, right])
    target = np.concatenate([np.eye(n, dtype=complex).reshape(-1)] * 2)
    eps, *_ = np.linalg.lstsq(system, target, rcond=None)
    residual = np.abs(system @ eps - target).max()
    if residual > UNIT_RESIDUAL_TOL:
        raise NoUnit(f"unit-law system inconsistent (residual {residual:.3e})")
    return Algebra(tensor, eps, chosen_norm)


@dataclass(frozen=True)
class Element:
    """A coordinate vector relative to an algebra's basis."""

    algebra: Algebra
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        coords = _as_complex_vector(self.coords, self.algebra.dim)
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    def __repr__(self):
        terms = []
        for c, lab in zip(self.coords, self.algebra.basis_labels):
            if c != 0:
                terms.append(f"({c:.6g})*{lab}")
        return " + ".join(terms) if terms else "0"

    # -- ring arithmetic -------------------------------------------------------

    def _check(self, other: "Element") -> None:
        if not self.algebra.compatible(other.algebra):
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.coords + other.coords)
        if isinstance(other, (int, float, complex)):
            return Element(self.algebra, self.coords + other * self.algebra.unit_coords)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __sub__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.coords - other.coords)
        if isinstance(other, (int, float, complex)):
            return Element(self.algebra, self.coords - other * self.algebra.unit_coords)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        if isinstance(other, (int, float, complex)):
            return Element(self.algebra, complex(other) * self.coords)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Element(self.algebra, complex(other) * self.coords)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Element):
            return self * other.invert()
        if isinstance(other, (int, float, complex)):
            return Element(self.algebra, self.coords / complex(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.invert() * complex(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = self.algebra.unit()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Element) and self.algebra.compatible(other.algebra)
                and np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((id(self.algebra), self.coords.tobytes()))

    def isclose(self, other: "Element", tol: float = 1e-10) -> bool:
        self._check(other)
        return bool(np.abs(self.coords - other.coords).max() <= tol)

    # -- linear-algebraic views ------------------------------------------------

    def regular_matrix(self) -> np.ndarray:
        """The regular representation lambda(a); multiplicative and unital."""
        return self.algebra.regular_matrix(self.coords)

    def invert(self) -> "Element":
        """Solve lambda(z) w = 1 for the multiplicative inverse.

        Invertibility is decided by the singular-value ratio of lambda(z)
        (scale invariant, unlike the determinant).
        """
        lam = self.regular_matrix()
        svals = np.linalg.svd(lam, compute_uv=False)
        if svals[0] == 0 or svals[-1] / svals[0] < SINGULAR_RATIO:
            raise NotAUnit("regular representation is singular")
        w = np.linalg.solve(lam, self.algebra.unit_coords)
        return Element(self.algebra, w)

    def is_unit(self) -> bool:
        lam = self.regular_matrix()
        svals = np.linalg.svd(lam, compute_uv=False)
        return bool(svals[0] > 0 and svals[-1] / svals[0] >= SINGULAR_RATIO)

    def spectral_radius(self) -> float:
        """Largest eigenvalue modulus of the regular representation."""
        return float(np.abs(np.linalg.eigvals(self.regular_matrix())).max())

    def norm(self, kind: str | None = None, decomposition=None) -> float:
        """Submultiplicative norm of the element.

        ``frobenius``  : Frobenius norm of lambda(z);
        ``operator``   : spectral (operator 2-)norm of lambda(z), unital;
        ``direct-sum`` : max over local components of the operator norm of the
                         component action; needs ``decomposition``.
        """
        kind = kind or self.algebra.chosen_norm
        if kind == "frobenius":
            return float(np.linalg.norm(self.regular_matrix(), "fro"))
        if kind == "operator":
            return float(np.linalg.norm(self.regular_matrix(), 2))
        if kind == "direct-sum":
            if decomposition is None:
                raise DecompositionRequired("direct-sum norm needs a decomposition")
            return decomposition.direct_sum_norm(self)
        raise ValueError(f"unknown norm kind {kind!r}")

    def coord_norm(self) -> float:
        """Euclidean norm of the raw coordinates (a vector norm, not an algebra norm)."""
        return float(np.linalg.norm(self.coords))


def mul(a: Element, b: Element) -> Element:
    """Product of two elements of the same algebra."""
    return a * b


def regular_representation(a: Element) -> np.ndarray:
    return a.regular_matrix()


def invert(z: Element) -> Element:
    return z.invert()


def spectral_radius(z: Element) -> float:
    return z.spectral_radius()


def norm(z: Element, kind: str | None = None, decomposition=None) -> float:
    return z.norm(kind, decomposition)


def rebase_matrix(algebra: Algebra, first: np.ndarray | None = None) -> np.ndarray:
    """A change-of-basis matrix whose first column is the unit.

    Returns U (n x n, columns = new basis vectors in old coordinates) with
    U[:, 0] = unit coordinates, completed greedily with standard basis
    vectors.  Coordinates transform by z_old = U @ z_new.
    """
    n = algebra.dim
    first = algebra.unit_coords if first is None else _as_complex_vector(first, n)
    cols = [first]
    for i in range(n):
        if len(cols) == n:
            break
        candidate = np.zeros(n, dtype=complex)
        candidate[i] = 1.0
        trial = np.column_stack(cols + [candidate])
        if np.linalg.matrix_rank(trial, tol=1e-10) == len(cols) + 1:
            cols.append(candidate)
    U = np.column_stack(cols)
    if U.shape[1] != n:
        raise ValueError("could not complete the unit to a basis")
    return U


def transform_tensor(tensor: StructureTensor, U: np.ndarray,
                     labels: Sequence[str] | None = None) -> StructureTensor:
    """Structure constants in the new basis a'_j = sum_r U[r, j] a_r."""
    n = tensor.dim
    U = np.asarray(U, dtype=complex)
    V = np.linalg.inv(U)
    # a'_j a'_k = sum_{r,s} U_{rj} U_{sk} a_r a_s = sum_i (...) a_i, then a_i = sum_m V_{mi} a'_m.
    new_alpha = np.einsum("rj,sk,rsi,mi->jkm", U, U, tensor.alpha, V)
    return StructureTensor(n, new_alpha, tuple(labels) if labels else ())

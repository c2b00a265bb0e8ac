"""Ready-made algebras used throughout the tests and documentation."""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, StructureTensor, build_algebra


def complex_line() -> Algebra:
    """C itself, as a 1-dimensional algebra."""
    return build_algebra(StructureTensor(1, np.ones((1, 1, 1)), ("1",)))


def dual_numbers() -> Algebra:
    """C[eps] with eps^2 = 0, basis (1, eps)."""
    alpha = np.zeros((2, 2, 2), dtype=complex)
    alpha[0, 0, 0] = 1
    alpha[0, 1, 1] = 1
    alpha[1, 0, 1] = 1
    return build_algebra(StructureTensor(2, alpha, ("1", "eps")))


def split_complex() -> Algebra:
    """C[j] with j^2 = 1, basis (1, j)."""
    alpha = np.zeros((2, 2, 2), dtype=complex)
    alpha[0, 0, 0] = 1
    alpha[0, 1, 1] = 1
    alpha[1, 0, 1] = 1
    alpha[1, 1, 0] = 1
    return build_algebra(StructureTensor(2, alpha, ("1", "j")))


def complex_as_plane() -> Algebra:
    """C presented on the basis (1, i) with i^2 = -1 (two-dimensional tensor)."""
    alpha = np.zeros((2, 2, 2), dtype=complex)
    alpha[0, 0, 0] = 1
    alpha[0, 1, 1] = 1
    alpha[1, 0, 1] = 1
    alpha[1, 1, 0] = -1
    return build_algebra(StructureTensor(2, alpha, ("1", "i")))


def truncated_polynomials(height: int) -> Algebra:
    """C[t]/(t^height), basis (1, t, ..., t^(height-1))."""
    n = height
    alpha = np.zeros((n, n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            if j + k < n:
                alpha[j, k, j + k] = 1
    labels = tuple("1" if i == 0 else f"t^{i}" if i > 1 else "t" for i in range(n))
    return build_algebra(StructureTensor(n, alpha, labels))


def bidual() -> Algebra:
    """C[x,y]/(x^2, y^2), basis (1, x, y, xy): local of height 3, widths (2, 1)."""
    alpha = np.zeros((4, 4, 4), dtype=complex)
    table = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3,
             (1, 2): 3}  # x * y = xy; squares of x, y, xy vanish
    for (j, k), i in table.items():
        alpha[j, k, i] = 1
        alpha[k, j, i] = 1
    return build_algebra(StructureTensor(4, alpha, ("1", "x", "y", "xy")))


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Block-diagonal direct sum of two algebras."""
    n, m = a.dim, b.dim
    alpha = np.zeros((n + m,) * 3, dtype=complex)
    alpha[:n, :n, :n] = a.alpha
    alpha[n:, n:, n:] = b.alpha
    labels = tuple(f"{lab}(+)" for lab in a.basis_labels) + tuple(
        f"(+){lab}" for lab in b.basis_labels)
    return build_algebra(StructureTensor(n + m, alpha, labels))
